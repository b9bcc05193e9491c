//! Momentum arithmetic, Gram data, channel invariants and edge contraction.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{CVec, Error, Result, C64};

/// Bilinear product `sum a_i b_i`.
pub fn dot(a: &[C64], b: &[C64]) -> Result<C64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(bdot(a, b))
}

#[inline]
pub(crate) fn bdot(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn sq(a: &[C64]) -> C64 {
    bdot(a, a)
}

/// Euclidean norm squared of the components, `sum |a_i|^2`.
#[inline]
pub(crate) fn norm2(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

pub(crate) fn add(a: &[C64], b: &[C64]) -> CVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[C64], b: &[C64]) -> CVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn scale(a: &[C64], s: C64) -> CVec {
    a.iter().map(|x| x * s).collect()
}

pub(crate) fn mat_vec(m: &DMatrix<C64>, v: &[C64]) -> CVec {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)] * v[c]).sum())
        .collect()
}

pub(crate) fn mat_t_vec(m: &DMatrix<C64>, v: &[C64]) -> CVec {
    (0..m.ncols())
        .map(|c| (0..m.nrows()).map(|r| m[(r, c)] * v[r]).sum())
        .collect()
}

pub fn gram_matrix(vs: &[CVec]) -> Result<DMatrix<C64>> {
    if let Some(first) = vs.first() {
        for v in vs {
            if v.len() != first.len() {
                return Err(Error::LengthMismatch(first.len(), v.len()));
            }
        }
    }
    let m = vs.len();
    Ok(DMatrix::from_fn(m, m, |i, j| bdot(&vs[i], &vs[j])))
}

/// Determinant of the pairwise dot products; 1 for an empty list.
pub fn gram_det(vs: &[CVec]) -> Result<C64> {
    if vs.is_empty() {
        return Ok(C64::new(1.0, 0.0));
    }
    Ok(gram_matrix(vs)?.determinant())
}

/// Källén function.
pub fn kallen(a: C64, b: C64, c: C64) -> C64 {
    a * a + b * b + c * c - 2.0 * (a * b + b * c + c * a)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct RawConfig {
    n: usize,
    #[serde(rename = "D")]
    d: usize,
    masses: Vec<f64>,
    momenta: Vec<CVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    regulators: Option<Vec<C64>>,
}

/// One-loop cycle graph with `n` edges in dimension `d`.
///
/// Edge `i` carries momentum `k + P^(i)` with `P^(i) = p_1 + ... + p_{i-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct KinematicConfig {
    n: usize,
    d: usize,
    masses: Vec<f64>,
    momenta: Vec<CVec>,
    regulators: Vec<C64>,
}

impl TryFrom<RawConfig> for KinematicConfig {
    type Error = Error;

    fn try_from(r: RawConfig) -> Result<Self> {
        if r.n != r.masses.len() {
            return Err(Error::InvalidConfig(format!(
                "n = {} but {} masses given",
                r.n,
                r.masses.len()
            )));
        }
        let cfg = KinematicConfig::new(r.d, r.masses, r.momenta)?;
        match r.regulators {
            Some(reg) => cfg.with_regulators(reg),
            None => Ok(cfg),
        }
    }
}

impl From<KinematicConfig> for RawConfig {
    fn from(c: KinematicConfig) -> Self {
        let default = c.regulators.iter().all(|l| *l == C64::new(1.0, 0.0));
        RawConfig {
            n: c.n,
            d: c.d,
            masses: c.masses,
            momenta: c.momenta,
            regulators: (!default).then_some(c.regulators),
        }
    }
}

impl KinematicConfig {
    /// `n` is `masses.len()`; `momenta` must hold `n - 1` vectors of length `d`.
    pub fn new(d: usize, masses: Vec<f64>, momenta: Vec<CVec>) -> Result<Self> {
        let n = masses.len();
        if n < 2 {
            return Err(Error::InvalidConfig(format!("n = {n}, need at least 2 edges")));
        }
        if d < 1 {
            return Err(Error::InvalidConfig("D must be at least 1".into()));
        }
        if d + 1 < n {
            return Err(Error::InvalidConfig(format!(
                "D = {d} < n - 1 = {}, no linearly independent momenta exist",
                n - 1
            )));
        }
        if let Some(m) = masses.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
            return Err(Error::InvalidConfig(format!("masses must be positive, got {m}")));
        }
        if momenta.len() != n - 1 {
            return Err(Error::InvalidConfig(format!(
                "expected {} momenta for {n} masses, got {}",
                n - 1,
                momenta.len()
            )));
        }
        for (i, p) in momenta.iter().enumerate() {
            if p.len() != d {
                return Err(Error::InvalidConfig(format!(
                    "momentum p_{} has {} components, D = {d}",
                    i + 1,
                    p.len()
                )));
            }
            if p.iter().any(|z| !z.is_finite()) {
                return Err(Error::InvalidConfig(format!("momentum p_{} not finite", i + 1)));
            }
        }
        Ok(KinematicConfig {
            n,
            d,
            masses,
            momenta,
            regulators: vec![C64::new(1.0, 0.0); n],
        })
    }

    /// Reads the config JSON schema.
    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn with_regulators(mut self, regulators: Vec<C64>) -> Result<Self> {
        if regulators.len() != self.n {
            return Err(Error::InvalidConfig(format!(
                "expected {} regulators, got {}",
                self.n,
                regulators.len()
            )));
        }
        self.regulators = regulators;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// `m_i` for `i` in `1..=n`.
    pub fn mass(&self, i: usize) -> f64 {
        self.masses[i - 1]
    }

    pub fn momenta(&self) -> &[CVec] {
        &self.momenta
    }

    pub fn regulators(&self) -> &[C64] {
        &self.regulators
    }

    /// `P^(i)` for `i` in `1..=n`.
    pub fn partial_sum(&self, i: usize) -> Result<CVec> {
        if i < 1 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let mut acc = vec![C64::new(0.0, 0.0); self.d];
        for p in &self.momenta[..i - 1] {
            for (a, x) in acc.iter_mut().zip(p) {
                *a += x;
            }
        }
        Ok(acc)
    }

    /// `[P^(1), ..., P^(n)]`.
    pub fn partial_sums(&self) -> Vec<CVec> {
        let mut out = Vec::with_capacity(self.n);
        let mut acc = vec![C64::new(0.0, 0.0); self.d];
        out.push(acc.clone());
        for p in &self.momenta {
            acc = add(&acc, p);
            out.push(acc.clone());
        }
        out
    }

    /// Largest momentum or mass magnitude, at least 1e-300.
    pub fn scale(&self) -> f64 {
        let p = self.momenta.iter().map(|v| norm2(v).sqrt()).fold(0.0, f64::max);
        let m = self.masses.iter().cloned().fold(0.0, f64::max);
        p.max(m).max(1e-300)
    }

    pub fn gram_det(&self) -> C64 {
        gram_det(&self.momenta).expect("momenta share a length")
    }

    /// Nonzero Gram determinant relative to `scale^(2(n-1))`.
    pub fn in_tn(&self, tol: f64) -> bool {
        let s = self.scale().powi(2 * (self.n as i32 - 1));
        self.gram_det().norm() > tol * s
    }

    pub fn is_real(&self) -> bool {
        self.momenta.iter().flatten().all(|z| z.im == 0.0)
    }

    /// Same masses, new momenta.
    pub fn with_momenta(&self, momenta: Vec<CVec>) -> Result<Self> {
        let d = momenta.first().map_or(self.d, |p| p.len());
        let c = KinematicConfig::new(d, self.masses.clone(), momenta)?;
        c.with_regulators(self.regulators.clone())
    }

    pub fn with_masses(&self, masses: Vec<f64>) -> Result<Self> {
        let c = KinematicConfig::new(self.d, masses, self.momenta.clone())?;
        c.with_regulators(self.regulators.clone())
    }

    /// Applies `p -> M p` to every momentum.
    pub fn transformed(&self, m: &DMatrix<C64>) -> Result<Self> {
        if m.nrows() != self.d || m.ncols() != self.d {
            return Err(Error::LengthMismatch(m.nrows(), self.d));
        }
        self.with_momenta(self.momenta.iter().map(|p| mat_vec(m, p)).collect())
    }

    /// Zero-pads (or drops vanishing trailing components) to dimension `d`.
    pub fn with_dimension(&self, d: usize) -> Result<Self> {
        let mut momenta = self.momenta.clone();
        for p in momenta.iter_mut() {
            if d < p.len() && p[d..].iter().any(|z| *z != C64::new(0.0, 0.0)) {
                return Err(Error::InvalidConfig(format!(
                    "cannot drop to D = {d}: momenta have nonzero components beyond it"
                )));
            }
            p.resize(d, C64::new(0.0, 0.0));
        }
        let c = KinematicConfig::new(d, self.masses.clone(), momenta)?;
        c.with_regulators(self.regulators.clone())
    }
}

pub(crate) fn check_subset(n: usize, subset: &[usize], min_len: usize) -> Result<()> {
    let bad = |reason: &str| Error::InvalidSubset {
        subset: subset.to_vec(),
        reason: reason.into(),
    };
    if subset.len() < min_len {
        return Err(bad(&format!("need at least {min_len} edges")));
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("must be strictly ascending"));
    }
    if subset.iter().any(|&i| i < 1 || i > n) {
        return Err(bad(&format!("edges must lie in 1..={n}")));
    }
    Ok(())
}

/// Contracts every edge not in `subset`.
///
/// For `subset = {i_1 < ... < i_m}` the new momenta are
/// `(p_I)_l = p_{i_l} + ... + p_{i_{l+1} - 1}` and the masses are `m_{i_l}`.
/// The loop momentum of the result is `k + P^(i_1)`.
pub fn contract(config: &KinematicConfig, subset: &[usize]) -> Result<KinematicConfig> {
    check_subset(config.n, subset, 2)?;
    let ps = config.partial_sums();
    let momenta = subset.windows(2).map(|w| sub(&ps[w[1] - 1], &ps[w[0] - 1])).collect();
    let masses = subset.iter().map(|&i| config.mass(i)).collect();
    let regs = subset.iter().map(|&i| config.regulators[i - 1]).collect();
    KinematicConfig::new(config.d, masses, momenta)?.with_regulators(regs)
}

/// A channel label together with the momenta summed into it (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Channel {
    pub label: String,
    pub momenta: Vec<usize>,
}

/// Fixed channel set for `n` edges: every `p_i^2` and `(p_i + p_j)^2`.
///
/// Uses the letters s..x for `n <= 4` and `q{i}`, `q{i}_{j}` otherwise.
pub fn channel_set(n: usize) -> Vec<Channel> {
    let ch = |label: &str, momenta: &[usize]| Channel {
        label: label.into(),
        momenta: momenta.to_vec(),
    };
    match n {
        2 => vec![ch("s", &[1])],
        3 => vec![ch("s", &[1]), ch("t", &[2]), ch("u", &[1, 2])],
        4 => vec![
            ch("s", &[1]),
            ch("t", &[2]),
            ch("u", &[3]),
            ch("v", &[1, 2]),
            ch("w", &[1, 3]),
            ch("x", &[2, 3]),
        ],
        _ => {
            let mut out: Vec<Channel> = (1..n).map(|i| ch(&format!("q{i}"), &[i])).collect();
            for i in 1..n {
                for j in i + 1..n {
                    out.push(ch(&format!("q{i}_{j}"), &[i, j]));
                }
            }
            out
        }
    }
}

/// Channel invariants stored as raw squares `q^2 = dot(q, q)`.
///
/// `mandelstam` gives `-q^2`, the sign used by the bubble, triangle and box formulas.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    n: usize,
    squares: BTreeMap<String, C64>,
}

impl Invariants {
    pub fn from_momenta(momenta: &[CVec]) -> Self {
        let n = momenta.len() + 1;
        let squares = channel_set(n)
            .into_iter()
            .map(|c| {
                let q = c
                    .momenta
                    .iter()
                    .skip(1)
                    .fold(momenta[c.momenta[0] - 1].clone(), |acc, &i| add(&acc, &momenta[i - 1]));
                (c.label, sq(&q))
            })
            .collect();
        Invariants { n, squares }
    }

    /// From `q^2` values; every label of `channel_set(n)` must be present.
    pub fn from_squares<'a>(n: usize, values: impl IntoIterator<Item = (&'a str, C64)>) -> Result<Self> {
        let squares: BTreeMap<String, C64> = values.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let labels: Vec<String> = channel_set(n).into_iter().map(|c| c.label).collect();
        for k in squares.keys() {
            if !labels.contains(k) {
                return Err(Error::UnknownChannel(k.clone()));
            }
        }
        for l in &labels {
            match squares.get(l) {
                None => return Err(Error::InvalidConfig(format!("missing invariant `{l}`"))),
                Some(v) if !v.is_finite() => return Err(Error::InvalidConfig(format!("invariant `{l}` not finite"))),
                _ => {}
            }
        }
        Ok(Invariants { n, squares })
    }

    /// From `-q^2` values.
    pub fn from_mandelstam<'a>(n: usize, values: impl IntoIterator<Item = (&'a str, C64)>) -> Result<Self> {
        Self::from_squares(n, values.into_iter().map(|(k, v)| (k, -v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn square(&self, label: &str) -> Result<C64> {
        self.squares
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownChannel(label.into()))
    }

    pub fn mandelstam(&self, label: &str) -> Result<C64> {
        Ok(-self.square(label)?)
    }

    pub fn set_mandelstam(&mut self, label: &str, value: C64) -> Result<()> {
        match self.squares.get_mut(label) {
            Some(v) => {
                *v = -value;
                Ok(())
            }
            None => Err(Error::UnknownChannel(label.into())),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, C64)> {
        self.squares.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// `G_ij = p_i . p_j` implied by the invariants.
    pub fn gram(&self) -> DMatrix<C64> {
        let m = self.n - 1;
        let mut single = vec![C64::new(0.0, 0.0); m];
        let chans = channel_set(self.n);
        for c in chans.iter().filter(|c| c.momenta.len() == 1) {
            single[c.momenta[0] - 1] = self.squares[&c.label];
        }
        let mut g = DMatrix::from_fn(m, m, |i, j| if i == j { single[i] } else { C64::new(0.0, 0.0) });
        for c in chans.iter().filter(|c| c.momenta.len() == 2) {
            let (i, j) = (c.momenta[0] - 1, c.momenta[1] - 1);
            let v = (self.squares[&c.label] - single[i] - single[j]) * 0.5;
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
        g
    }
}

/// Triangular-frame momenta (`(p_i)_j = 0` for `j >= i`) reproducing `targets`.
///
/// Complex `L L^T` factorization of the Gram matrix with principal square roots.
pub fn momenta_from_invariants(n: usize, d: usize, targets: &Invariants) -> Result<Vec<CVec>> {
    if targets.n != n {
        return Err(Error::InvalidConfig(format!(
            "invariants are for n = {}, not {n}",
            targets.n
        )));
    }
    if d + 1 < n {
        return Err(Error::InvalidConfig(format!("D = {d} < n - 1")));
    }
    let g = targets.gram();
    let m = n - 1;
    let scale = (0..m).map(|i| g[(i, i)].norm()).fold(0.0, f64::max).max(1e-300);
    let mut l = DMatrix::<C64>::zeros(m, m);
    for j in 0..m {
        let mut piv = g[(j, j)];
        for k in 0..j {
            piv -= l[(j, k)] * l[(j, k)];
        }
        if piv.norm() <= 1e-13 * scale {
            return Err(Error::DegenerateGram { minor: j + 1 });
        }
        // drop a signed zero so the principal branch is used
        let ljj = C64::new(piv.re, piv.im + 0.0).sqrt();
        l[(j, j)] = ljj;
        for i in j + 1..m {
            let mut v = g[(i, j)];
            for k in 0..j {
                v -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = v / ljj;
        }
    }
    Ok((0..m)
        .map(|i| {
            let mut p = vec![C64::new(0.0, 0.0); d];
            for (k, pk) in p.iter_mut().enumerate().take(i + 1) {
                *pk = l[(i, k)];
            }
            p
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn r(v: &[f64]) -> CVec {
        v.iter().map(|x| c(*x, 0.0)).collect()
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(&r(&[1.0, 0.0]), &r(&[0.0, 1.0])).unwrap(), c(0.0, 0.0));
        let i = vec![c(0.0, 1.0), c(0.0, 0.0)];
        assert_eq!(dot(&i, &i).unwrap(), c(-1.0, 0.0));
        assert_eq!(dot(&r(&[1.0, 2.0, 3.0]), &r(&[4.0, 5.0, 6.0])).unwrap(), c(32.0, 0.0));
        assert!(matches!(
            dot(&r(&[1.0]), &r(&[1.0, 2.0])),
            Err(Error::LengthMismatch(1, 2))
        ));
    }

    #[test]
    fn gram_examples() {
        assert_eq!(gram_det(&[]).unwrap(), c(1.0, 0.0));
        assert_eq!(gram_det(&[r(&[1.0, 0.0])]).unwrap(), c(1.0, 0.0));
        assert!(gram_det(&[r(&[1.0, 0.0]), r(&[1.0, 0.0])]).unwrap().norm() < 1e-15);
    }

    #[test]
    fn kallen_examples() {
        let (m1, m2) = (1.3, 0.4);
        let t = c((m1 + m2) * (m1 + m2), 0.0);
        assert!(kallen(t, c(m1 * m1, 0.0), c(m2 * m2, 0.0)).norm() < 1e-14);
        let (b, cc) = (c(2.0, 1.0), c(-0.5, 3.0));
        assert!((kallen(c(0.0, 0.0), b, cc) - (b - cc) * (b - cc)).norm() < 1e-14);
        assert_eq!(kallen(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)), c(-8.0, 0.0));
    }

    #[test]
    fn partial_sums() {
        let e0 = r(&[1.0, 0.0, 0.0]);
        let cfg = KinematicConfig::new(3, vec![1.0; 4], vec![e0.clone(); 3]).unwrap();
        assert_eq!(cfg.partial_sum(1).unwrap(), r(&[0.0, 0.0, 0.0]));
        assert_eq!(cfg.partial_sum(2).unwrap(), e0);
        assert_eq!(cfg.partial_sum(4).unwrap(), r(&[3.0, 0.0, 0.0]));
        assert!(cfg.partial_sum(0).is_err());
        assert!(cfg.partial_sum(5).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(KinematicConfig::new(2, vec![1.0, 0.0], vec![r(&[1.0, 0.0])]).is_err());
        assert!(KinematicConfig::new(2, vec![1.0], vec![]).is_err());
        assert!(KinematicConfig::new(1, vec![1.0; 3], vec![r(&[1.0]), r(&[2.0])]).is_err());
        assert!(KinematicConfig::new(2, vec![1.0; 2], vec![r(&[1.0])]).is_err());
    }

    #[test]
    fn json_roundtrip_and_missing_field() {
        let js = r#"{"n":2,"D":2,"masses":[1.0,2.0],"momenta":[[[0.0,2.0],[0.0,0.0]]]}"#;
        let cfg = KinematicConfig::from_json(js).unwrap();
        assert_eq!(cfg.momenta()[0][0], c(0.0, 2.0));
        let back = serde_json::to_string(&cfg).unwrap();
        assert_eq!(KinematicConfig::from_json(&back).unwrap(), cfg);
        let err = KinematicConfig::from_json(r#"{"n":2,"D":2,"momenta":[]}"#).unwrap_err();
        assert!(err.to_string().contains("masses"));
        let err = KinematicConfig::from_json(r#"{"n":3,"D":2,"masses":[1.0,2.0],"momenta":[[[1.0,0.0],[0.0,0.0]]]}"#);
        assert!(err.is_err());
    }

    #[test]
    fn contract_examples() {
        let p: Vec<CVec> = (0..3).map(|i| r(&[1.0 + i as f64, 2.0 * i as f64, 0.5, 1.0])).collect();
        let cfg = KinematicConfig::new(4, vec![1.0, 2.0, 3.0, 4.0], p.clone()).unwrap();
        assert_eq!(contract(&cfg, &[1, 2, 3, 4]).unwrap(), cfg);
        let c24 = contract(&cfg, &[2, 4]).unwrap();
        assert_eq!(c24.momenta()[0], add(&p[1], &p[2]));
        assert_eq!(c24.masses(), &[2.0, 4.0]);
        let c13 = contract(&cfg, &[1, 3]).unwrap();
        assert_eq!(c13.momenta()[0], add(&p[0], &p[1]));
        assert_eq!(c13.masses(), &[1.0, 3.0]);
        assert!(contract(&cfg, &[2]).is_err());
        assert!(contract(&cfg, &[3, 2]).is_err());
    }

    #[test]
    fn contract_triangle() {
        let p = vec![r(&[1.0, 0.0]), r(&[0.3, 2.0])];
        let cfg = KinematicConfig::new(2, vec![1.0; 3], p.clone()).unwrap();
        let c = contract(&cfg, &[1, 3]).unwrap();
        assert_eq!(c.momenta(), &[add(&p[0], &p[1])]);
    }

    #[test]
    fn bubble_inverse_kinematics() {
        let inv = Invariants::from_mandelstam(2, [("s", c(4.0, 0.0))]).unwrap();
        let p = momenta_from_invariants(2, 3, &inv).unwrap();
        assert_eq!(p, vec![vec![c(0.0, 2.0), c(0.0, 0.0), c(0.0, 0.0)]]);
    }

    #[test]
    fn degenerate_targets() {
        let inv = Invariants::from_squares(3, [("s", c(1.0, 0.0)), ("t", c(1.0, 0.0)), ("u", c(4.0, 0.0))]).unwrap();
        assert!(matches!(
            momenta_from_invariants(3, 2, &inv),
            Err(Error::DegenerateGram { minor: 2 })
        ));
    }

    #[test]
    fn invariant_labels() {
        assert!(Invariants::from_squares(3, [("s", c(1.0, 0.0))]).is_err());
        assert!(Invariants::from_squares(2, [("z", c(1.0, 0.0))]).is_err());
        assert_eq!(channel_set(5).len(), 10);
        assert_eq!(channel_set(4).len(), 6);
    }
}
