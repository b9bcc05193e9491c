use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("edge index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("invalid edge subset {subset:?}: {reason}")]
    InvalidSubset { subset: Vec<usize>, reason: String },

    #[error("isotropic vector (v.v = {0}), no orthogonal reduction exists")]
    Isotropic(C64),

    #[error("degenerate frame: leading Gram minor of order {minor} vanishes")]
    DegenerateFrame { minor: usize },

    #[error("degenerate target Gram matrix: leading minor of order {minor} vanishes")]
    DegenerateGram { minor: usize },

    #[error("unknown channel label `{0}`")]
    UnknownChannel(String),

    #[error("off the Minkowski branch: {0}")]
    Branch(String),

    #[error("outside the cut support: {0}")]
    Support(String),

    #[error("singular cut: {0}")]
    SingularCut(String),

    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("no closed form: {0}")]
    NoClosedForm(String),

    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LengthMismatch(..) => "length_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::InvalidConfig(_) => "invalid_config",
            Error::InvalidSubset { .. } => "invalid_subset",
            Error::Isotropic(_) => "isotropic",
            Error::DegenerateFrame { .. } => "degenerate_frame",
            Error::DegenerateGram { .. } => "degenerate_gram",
            Error::UnknownChannel(_) => "unknown_channel",
            Error::Branch(_) => "branch",
            Error::Support(_) => "support",
            Error::SingularCut(_) => "singular_cut",
            Error::Divergent(_) => "divergent",
            Error::NoClosedForm(_) => "no_closed_form",
            Error::NoConvergence(_) => "no_convergence",
        }
    }

    /// True for errors caused by malformed input rather than by the kinematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::LengthMismatch(..)
                | Error::IndexOutOfRange { .. }
                | Error::InvalidConfig(_)
                | Error::InvalidSubset { .. }
                | Error::UnknownChannel(_)
        )
    }
}
