//! Homogeneous quadrics `Q_i`, the reduction functions `f_{i,j}`, rank tests,
//! stratum membership and Wick-rotation checks.
//!
//! Points are homogeneous `[u : k]`:
//!
//! ```text
//! Q_i(u, k)    = (k + u P^(i))^2 + u^2 m_i^2
//! f_{i,j}(u, k) = 2 (P^(j) - P^(i)).(k + u P^(i)) + u ((P^(j) - P^(i))^2 - m_i^2 + m_j^2)
//! ```
//!
//! so that `Q_j - Q_i = u f_{i,j}`.

use nalgebra::DMatrix;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::kinematics::{add, bdot, check_subset, norm2, scale, sq, sub};
use crate::{CVec, Error, KinematicConfig, Result, C64};

/// Homogeneous coordinates `[u : k]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjPoint {
    pub u: C64,
    pub k: CVec,
}

impl ProjPoint {
    pub fn new(u: C64, k: CVec) -> Self {
        ProjPoint { u, k }
    }

    pub fn finite(k: CVec) -> Self {
        ProjPoint {
            u: C64::new(1.0, 0.0),
            k,
        }
    }

    pub fn scaled(&self, l: C64) -> Self {
        ProjPoint {
            u: self.u * l,
            k: scale(&self.k, l),
        }
    }

    fn norm(&self) -> f64 {
        (self.u.norm_sqr() + norm2(&self.k)).sqrt()
    }

    /// Representative with `|u|^2 + |k|^2 = 1`.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scaled(C64::new(1.0 / n, 0.0))
    }
}

fn check_edge(config: &KinematicConfig, i: usize) -> Result<()> {
    if i < 1 || i > config.n() {
        Err(Error::IndexOutOfRange {
            index: i,
            n: config.n(),
        })
    } else {
        Ok(())
    }
}

fn q_with(pi: &[C64], m: f64, pt: &ProjPoint) -> C64 {
    let v: CVec = pt.k.iter().zip(pi).map(|(k, p)| k + pt.u * p).collect();
    sq(&v) + pt.u * pt.u * m * m
}

fn f_with(pi: &[C64], pj: &[C64], mi: f64, mj: f64, pt: &ProjPoint) -> C64 {
    let delta = sub(pj, pi);
    let v: CVec = pt.k.iter().zip(pi).map(|(k, p)| k + pt.u * p).collect();
    2.0 * bdot(&delta, &v) + pt.u * (sq(&delta) - mi * mi + mj * mj)
}

#[allow(non_snake_case)]
pub fn Q(config: &KinematicConfig, i: usize, point: &ProjPoint) -> Result<C64> {
    check_edge(config, i)?;
    if point.k.len() != config.dim() {
        return Err(Error::LengthMismatch(point.k.len(), config.dim()));
    }
    Ok(q_with(&config.partial_sum(i)?, config.mass(i), point))
}

pub fn f(config: &KinematicConfig, i: usize, j: usize, point: &ProjPoint) -> Result<C64> {
    check_edge(config, i)?;
    check_edge(config, j)?;
    if point.k.len() != config.dim() {
        return Err(Error::LengthMismatch(point.k.len(), config.dim()));
    }
    let (pi, pj) = (config.partial_sum(i)?, config.partial_sum(j)?);
    Ok(f_with(&pi, &pj, config.mass(i), config.mass(j), point))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rank {
    pub rank: usize,
    pub independent: bool,
}

/// Numeric rank of `{k + P^(i)}` for `i` in `subset`; singular values below
/// `1e-8 * sigma_max` count as zero.
pub fn general_position(config: &KinematicConfig, subset: &[usize], k: &[C64]) -> Result<Rank> {
    check_subset(config.n(), subset, 1)?;
    if k.len() != config.dim() {
        return Err(Error::LengthMismatch(k.len(), config.dim()));
    }
    let ps = config.partial_sums();
    let cols: Vec<CVec> = subset.iter().map(|&i| add(k, &ps[i - 1])).collect();
    let mat = DMatrix::from_fn(config.dim(), cols.len(), |r, c| cols[c][r]);
    let sv = mat.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let rank = if smax == 0.0 {
        0
    } else {
        sv.iter().filter(|s| **s > 1e-8 * smax).count()
    };
    Ok(Rank {
        rank,
        independent: rank == subset.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stratum {
    /// Finite part (`u != 0`) of the stratum of `I`.
    AFin,
    /// Part at infinity (`u = 0`).
    AInf,
    /// On `B_I` but a strict non-vanishing condition sits within tolerance of zero.
    Boundary,
    None,
}

/// Classifies `point` against the stratum of `subset`, with `i1 = min(subset)`.
///
/// On `B_I` means `Q_{i1} = 0` and `f_{i1,i} = 0` for the other `i` in the
/// subset. The stratum additionally needs `Q_i != 0` for `i < i1` and
/// `f_{i1,i} != 0` for `i > i1` outside the subset.
pub fn stratum_membership(config: &KinematicConfig, subset: &[usize], point: &ProjPoint, tol: f64) -> Result<Stratum> {
    check_subset(config.n(), subset, 1)?;
    if point.k.len() != config.dim() {
        return Err(Error::LengthMismatch(point.k.len(), config.dim()));
    }
    let pt = point.normalized();
    let ps = config.partial_sums();
    let sc = {
        let p = ps.iter().map(|v| norm2(v)).fold(0.0, f64::max);
        let m = config.masses().iter().map(|m| m * m).fold(0.0, f64::max);
        1.0 + p.max(m)
    };
    let zero = |z: C64| z.norm() <= tol * sc;
    let i1 = subset[0];
    let p1 = &ps[i1 - 1];
    let m1 = config.mass(i1);
    if !zero(q_with(p1, m1, &pt)) {
        return Ok(Stratum::None);
    }
    for &i in &subset[1..] {
        if !zero(f_with(p1, &ps[i - 1], m1, config.mass(i), &pt)) {
            return Ok(Stratum::None);
        }
    }
    let mut strict = Vec::new();
    for i in 1..i1 {
        strict.push(q_with(&ps[i - 1], config.mass(i), &pt));
    }
    for i in i1 + 1..=config.n() {
        if !subset.contains(&i) {
            strict.push(f_with(p1, &ps[i - 1], m1, config.mass(i), &pt));
        }
    }
    if strict.iter().any(|v| zero(*v)) {
        return Ok(Stratum::Boundary);
    }
    Ok(if pt.u.norm() <= tol {
        Stratum::AInf
    } else {
        Stratum::AFin
    })
}

/// `M_I(s)`: multiply coordinates in `coords` by `exp(i pi s / 2)`.
pub fn wick_rotate(v: &[C64], coords: &[usize], s: f64) -> CVec {
    let ph = C64::from_polar(1.0, std::f64::consts::FRAC_PI_2 * s);
    v.iter()
        .enumerate()
        .map(|(j, x)| if coords.contains(&j) { x * ph } else { *x })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct WickPoint {
    pub s: f64,
    pub min_abs_q: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct WickProfile {
    pub coords: Vec<usize>,
    pub samples_per_s: usize,
    pub profile: Vec<WickPoint>,
    /// Smallest `|Q_l|` over all samples and edges.
    pub min_abs_q: f64,
}

/// Minimum of `|Q_l|` over edges and real projective points `[u : k]` (with
/// `u >= 0`, `u^2 + k^2 = 1`) after rotating momenta and `k` by `M_I(s)`.
///
/// The sample set holds the points `[1 : -P^(l)]` (normalized) plus `samples`
/// seeded uniform points of the half-sphere.
pub fn wick_check(
    config: &KinematicConfig,
    coords: &[usize],
    s_values: &[f64],
    samples: usize,
    seed: u64,
) -> Result<WickProfile> {
    if !config.is_real() {
        return Err(Error::InvalidConfig("Wick check needs real Euclidean momenta".into()));
    }
    let d = config.dim();
    if let Some(c) = coords.iter().find(|c| **c >= d) {
        return Err(Error::InvalidConfig(format!("coordinate {c} outside 0..{d}")));
    }
    let ps = config.partial_sums();
    let mut points: Vec<ProjPoint> = ps
        .iter()
        .map(|p| ProjPoint::finite(scale(p, C64::new(-1.0, 0.0))).normalized())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        // Gaussian direction in R^{D+1}, folded to u >= 0
        let mut g: Vec<f64> = (0..=d).map(|_| gaussian(&mut rng)).collect();
        g[0] = g[0].abs();
        let pt = ProjPoint::new(C64::new(g[0], 0.0), g[1..].iter().map(|x| C64::new(*x, 0.0)).collect());
        points.push(pt.normalized());
    }
    let profile: Vec<WickPoint> = s_values
        .par_iter()
        .map(|&s| {
            let rps: Vec<CVec> = ps.iter().map(|p| wick_rotate(p, coords, s)).collect();
            let min = points
                .iter()
                .map(|pt| {
                    let rp = ProjPoint::new(pt.u, wick_rotate(&pt.k, coords, s));
                    (0..config.n())
                        .map(|l| q_with(&rps[l], config.masses()[l], &rp).norm())
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(f64::INFINITY, f64::min);
            WickPoint { s, min_abs_q: min }
        })
        .collect();
    let min_abs_q = profile.iter().map(|p| p.min_abs_q).fold(f64::INFINITY, f64::min);
    Ok(WickProfile {
        coords: coords.to_vec(),
        samples_per_s: points.len(),
        profile,
        min_abs_q,
    })
}

pub(crate) fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tri() -> KinematicConfig {
        KinematicConfig::new(
            3,
            vec![1.0, 1.5, 0.8],
            vec![
                vec![c(0.2, 1.0), c(0.5, 0.0), c(0.1, -0.3)],
                vec![c(-0.7, 0.1), c(0.3, 0.9), c(1.0, 0.0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn q_examples() {
        let cfg = tri();
        let zero = ProjPoint::finite(vec![c(0.0, 0.0); 3]);
        assert!((Q(&cfg, 1, &zero).unwrap() - 1.0).norm() < 1e-15);
        let k = vec![c(0.3, 0.1), c(-1.0, 0.0), c(0.0, 2.0)];
        let inf = ProjPoint::new(c(0.0, 0.0), k.clone());
        assert_eq!(Q(&cfg, 2, &inf).unwrap(), sq(&k));
        let pt = ProjPoint::new(c(0.7, -0.2), k);
        let q1 = Q(&cfg, 3, &pt).unwrap();
        let q2 = Q(&cfg, 3, &pt.scaled(c(2.0, 0.0))).unwrap();
        assert!((q2 - 4.0 * q1).norm() < 1e-13 * q1.norm());
        assert!(Q(&cfg, 4, &pt).is_err());
    }

    #[test]
    fn f_examples() {
        let cfg = tri();
        let k = vec![c(0.3, 0.1), c(-1.0, 0.0), c(0.0, 2.0)];
        let inf = ProjPoint::new(c(0.0, 0.0), k.clone());
        let delta = sub(&cfg.partial_sum(3).unwrap(), &cfg.partial_sum(1).unwrap());
        assert!((f(&cfg, 1, 3, &inf).unwrap() - 2.0 * bdot(&delta, &k)).norm() < 1e-14);
        let pt = ProjPoint::new(c(0.7, -0.2), k);
        assert_eq!(f(&cfg, 2, 2, &pt).unwrap(), c(0.0, 0.0));
        let lhs = Q(&cfg, 3, &pt).unwrap() - Q(&cfg, 1, &pt).unwrap();
        assert!((lhs - pt.u * f(&cfg, 1, 3, &pt).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn singleton_rank() {
        let cfg = tri();
        let r = general_position(&cfg, &[2], &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(
            r,
            Rank {
                rank: 1,
                independent: true
            }
        );
    }

    #[test]
    fn real_point_is_off_strata() {
        let cfg = KinematicConfig::new(
            2,
            vec![1.0, 1.0, 2.0],
            vec![vec![c(1.0, 0.0), c(0.5, 0.0)], vec![c(-0.3, 0.0), c(1.1, 0.0)]],
        )
        .unwrap();
        let pt = ProjPoint::finite(vec![c(0.4, 0.0), c(-2.0, 0.0)]);
        for s in [vec![1], vec![2], vec![1, 2], vec![1, 2, 3]] {
            assert_eq!(stratum_membership(&cfg, &s, &pt, 1e-9).unwrap(), Stratum::None);
        }
    }

    #[test]
    fn point_on_first_quadric() {
        let cfg = tri();
        // k = (i m1, 0, 0): Q_1 = -m1^2 + m1^2 = 0
        let pt = ProjPoint::finite(vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(stratum_membership(&cfg, &[1], &pt, 1e-9).unwrap(), Stratum::AFin);
    }

    #[test]
    fn isotropic_point_at_infinity() {
        let cfg = tri();
        // stratum of {1, 2} at infinity: k^2 = 0 and k.P^(2) = 0
        let p2 = cfg.partial_sum(2).unwrap();
        let a = p2.clone();
        // k = r e + g with e, g orthogonal to p2; r from k^2 = 0
        let e = vec![a[1], -a[0], c(0.0, 0.0)];
        let g = vec![a[2], c(0.0, 0.0), -a[0]];
        let (ee, eg, gg) = (sq(&e), bdot(&e, &g), sq(&g));
        let r = (-eg + (eg * eg - ee * gg).sqrt()) / ee;
        let k: CVec = e.iter().zip(&g).map(|(ei, gi)| r * ei + gi).collect();
        let pt = ProjPoint::new(c(0.0, 0.0), k);
        assert_eq!(stratum_membership(&cfg, &[1, 2], &pt, 1e-9).unwrap(), Stratum::AInf);
    }

    #[test]
    fn wick_start_is_euclidean() {
        let cfg = KinematicConfig::new(
            2,
            vec![1.0, 1.0, 2.0],
            vec![vec![c(1.0, 0.0), c(0.5, 0.0)], vec![c(-0.3, 0.0), c(1.1, 0.0)]],
        )
        .unwrap();
        let w = wick_check(&cfg, &[0], &[0.0, 0.5, 0.9], 200, 7).unwrap();
        assert!(w.min_abs_q > 0.0);
        assert_eq!(w.profile.len(), 3);
        let again = wick_check(&cfg, &[0], &[0.0, 0.5, 0.9], 200, 7).unwrap();
        assert_eq!(w.min_abs_q, again.min_abs_q);
    }
}
