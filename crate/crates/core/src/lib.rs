//! Analytic structure of massive one-loop integrals: Landau surfaces, pinch points,
//! vanishing spheres and cut discontinuities, with brute-force numeric cross-checks.
//!
//! All vector products are bilinear (`k^2 = sum k_i^2`), never Hermitian.

pub mod cut;
pub mod error;
pub mod frame;
pub mod kinematics;
pub mod landau;
pub mod oracle;
pub mod pinch;
pub mod quadrature;
pub mod strata;

mod serde_util;

pub use error::{Error, Result};
pub use kinematics::{contract, dot, gram_det, kallen, KinematicConfig};
pub use num_complex::Complex64 as C64;

/// A complex D-vector; component 0 is the first coordinate.
pub type CVec = Vec<C64>;

/// Absolute and relative tolerance pair.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tol {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { abs: 1e-9, rel: 1e-9 }
    }
}

impl Tol {
    pub fn uniform(t: f64) -> Self {
        Tol { abs: t, rel: t }
    }

    /// `|x| <= abs + rel * scale`
    pub fn is_zero(&self, x: f64, scale: f64) -> bool {
        x.abs() <= self.abs + self.rel * scale.abs()
    }
}
