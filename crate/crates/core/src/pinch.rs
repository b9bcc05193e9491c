//! Pinch point `A`, vanishing-sphere radius and Landau multipliers.
//!
//! In a triangular frame (`(p_i)_j = 0` for `j >= i`) the on-shell conditions
//! minus the first one are linear in `k` and fix `A` component by component:
//!
//! ```text
//! A_0 = -(p_1^2 - m_1^2 + m_2^2) / (2 (p_1)_0)
//! A_i = -(2 kbar_i . P^(i+2) + P^(i+2)^2 - m_1^2 + m_{i+2}^2) / (2 (p_{i+1})_i)
//! r^2 = -m_1^2 - A.A
//! ```
//!
//! where `kbar_i = (A_0, ..., A_{i-1}, 0, ...)`.

use serde::Serialize;

use crate::frame::{triangular_frame, FrameReduction};
use crate::kinematics::{add, bdot, check_subset, contract, norm2, sq, sub};
use crate::{CVec, Error, KinematicConfig, Result, C64};

/// Relative size below which a frame diagonal counts as zero.
pub const DIAGONAL_GUARD: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct PinchData {
    /// Edges of the original graph this pinch belongs to.
    pub subset: Vec<usize>,
    /// Pinch point in the reduced frame; components `n-1..` vanish.
    pub a: CVec,
    pub r_squared: C64,
    pub frame: FrameReduction,
    /// The pinch point as a loop momentum of the config the pinch was requested on.
    pub loop_momentum: CVec,
    /// `P^(i)` of the (contracted) graph in the reduced frame.
    pub partial_sums: Vec<CVec>,
    pub masses: Vec<f64>,
}

impl PinchData {
    /// `2 A.P^(i) + P^(i)^2 + m_i^2 - m_1^2` for each edge of the (contracted) graph.
    pub fn identity_residuals(&self) -> Vec<C64> {
        let m1 = self.masses[0] * self.masses[0];
        self.partial_sums
            .iter()
            .zip(&self.masses)
            .map(|(p, m)| 2.0 * bdot(&self.a, p) + sq(p) + m * m - m1)
            .collect()
    }

    pub fn sphere(&self) -> VanishingSphere {
        let n = self.masses.len();
        VanishingSphere {
            center: self.a.clone(),
            radius_squared: self.r_squared,
            free_components: (n - 1, self.a.len()),
        }
    }

    /// `r^2` real and positive, with imaginary part below `1e-9 |r^2|`.
    pub fn on_minkowski_branch(&self) -> bool {
        on_positive_branch(self.r_squared)
    }
}

pub(crate) fn on_positive_branch(r2: C64) -> bool {
    r2.re > 0.0 && r2.im.abs() <= 1e-9 * r2.norm()
}

/// Sphere of radius `sqrt(radius_squared)` around `center` in the coordinates
/// `free_components.0 .. free_components.1` of the reduced frame.
#[derive(Clone, Debug, Serialize)]
pub struct VanishingSphere {
    pub center: CVec,
    pub radius_squared: C64,
    pub free_components: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaSolution {
    /// One entry per edge, zero outside the subset; sums to one.
    pub alpha: Vec<C64>,
    /// `(i, Q_i(1, k))` for each `i` in the subset.
    pub on_shell: Vec<(usize, C64)>,
    /// Largest component of `sum alpha_i (k + P^(i))`.
    pub vector_residual: f64,
}

impl AlphaSolution {
    pub fn max_on_shell(&self) -> f64 {
        self.on_shell.iter().map(|(_, q)| q.norm()).fold(0.0, f64::max)
    }
}

fn guard(x: C64, scale: f64, minor: usize) -> Result<C64> {
    if x.norm() < DIAGONAL_GUARD * scale {
        Err(Error::DegenerateFrame { minor })
    } else {
        Ok(x)
    }
}

/// Pinch point and radius of the full graph; reduces the frame first if needed.
pub fn pinch_point(config: &KinematicConfig) -> Result<PinchData> {
    let n = config.n();
    let d = config.dim();
    let frame = triangular_frame(config.momenta())?;
    let p = &frame.reduced;
    let scale = config.scale();
    let msq: Vec<f64> = config.masses().iter().map(|m| m * m).collect();

    let mut ps = Vec::with_capacity(n);
    ps.push(vec![C64::new(0.0, 0.0); d]);
    for pi in p {
        let next = add(ps.last().unwrap(), pi);
        ps.push(next);
    }

    let mut a = vec![C64::new(0.0, 0.0); d];
    let p10 = guard(p[0][0], scale, 1)?;
    a[0] = -(sq(&p[0]) - msq[0] + msq[1]) / (2.0 * p10);
    for i in 1..n - 1 {
        // a holds kbar_i here: entries i.. are still zero
        let big_p = &ps[i + 1];
        let diag = guard(p[i][i], scale, i + 1)?;
        a[i] = -(2.0 * bdot(&a, big_p) + sq(big_p) - msq[0] + msq[i + 1]) / (2.0 * diag);
    }
    let r_squared = -msq[0] - sq(&a);
    let loop_momentum = frame.apply_inverse(&a);
    Ok(PinchData {
        subset: (1..=n).collect(),
        a,
        r_squared,
        frame,
        loop_momentum,
        partial_sums: ps,
        masses: config.masses().to_vec(),
    })
}

/// `pinch_point(contract(config, subset))`, with `loop_momentum` shifted back to
/// the loop momentum of `config`.
pub fn subset_pinch(config: &KinematicConfig, subset: &[usize]) -> Result<PinchData> {
    let small = contract(config, subset)?;
    let mut data = pinch_point(&small)?;
    let shift = config.partial_sum(subset[0])?;
    data.loop_momentum = sub(&data.loop_momentum, &shift);
    data.subset = subset.to_vec();
    Ok(data)
}

/// Landau multipliers for loop momentum `k` (frame of `config`) and edges `subset`.
///
/// Solves `k = -sum alpha_i P^(i)`, `sum alpha_i = 1` by back-substitution in the
/// triangular frame of the contracted graph.
pub fn solve_alpha(config: &KinematicConfig, subset: &[usize], k: &[C64]) -> Result<AlphaSolution> {
    check_subset(config.n(), subset, 1)?;
    if k.len() != config.dim() {
        return Err(Error::LengthMismatch(k.len(), config.dim()));
    }
    let n = config.n();
    let ps = config.partial_sums();
    let mut alpha = vec![C64::new(0.0, 0.0); n];
    if subset.len() == 1 {
        alpha[subset[0] - 1] = C64::new(1.0, 0.0);
    } else {
        let small = contract(config, subset)?;
        let frame = triangular_frame(small.momenta())?;
        let scale = small.scale();
        let w = frame.apply(&add(k, &ps[subset[0] - 1]));
        // v[l] = P_I^(l+2) in the reduced frame, l = 0..m-2
        let mut v: Vec<CVec> = Vec::new();
        let mut acc = vec![C64::new(0.0, 0.0); config.dim()];
        for q in &frame.reduced {
            acc = add(&acc, q);
            v.push(acc.clone());
        }
        let m = subset.len();
        let mut a = vec![C64::new(0.0, 0.0); m - 1];
        for c in (0..m - 1).rev() {
            let mut rhs = -w[c];
            for l in c + 1..m - 1 {
                rhs -= a[l] * v[l][c];
            }
            a[c] = rhs / guard(v[c][c], scale, c + 1)?;
        }
        let rest: C64 = a.iter().sum();
        alpha[subset[0] - 1] = 1.0 - rest;
        for (l, &i) in subset[1..].iter().enumerate() {
            alpha[i - 1] = a[l];
        }
    }
    let on_shell = subset
        .iter()
        .map(|&i| {
            let kp = add(k, &ps[i - 1]);
            let m = config.mass(i);
            (i, sq(&kp) + m * m)
        })
        .collect();
    let mut total = vec![C64::new(0.0, 0.0); config.dim()];
    for &i in subset {
        let kp = add(k, &ps[i - 1]);
        for (t, x) in total.iter_mut().zip(kp) {
            *t += alpha[i - 1] * x;
        }
    }
    let vector_residual = total.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(AlphaSolution {
        alpha,
        on_shell,
        vector_residual,
    })
}

/// Scale used for relative comparisons of `r^2`: the largest squared mass or momentum.
pub fn r2_scale(config: &KinematicConfig) -> f64 {
    let s = config.scale();
    let p = config.momenta().iter().map(|v| norm2(v)).fold(0.0, f64::max);
    (s * s).max(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kallen;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn bubble_at_threshold() {
        let cfg = KinematicConfig::new(2, vec![1.0, 1.0], vec![vec![c(0.0, 2.0), c(0.0, 0.0)]]).unwrap();
        let p = pinch_point(&cfg).unwrap();
        assert!((p.a[0] - c(0.0, -1.0)).norm() < 1e-15);
        assert!(p.r_squared.norm() < 1e-15);
    }

    #[test]
    fn bubble_radius_formula() {
        let p1 = vec![c(0.3, 1.7), c(-0.4, 0.2), c(1.1, 0.0)];
        let cfg = KinematicConfig::new(3, vec![0.7, 1.9], vec![p1.clone()]).unwrap();
        let pd = pinch_point(&cfg).unwrap();
        let s = sq(&p1);
        let want = -kallen(-s, c(0.49, 0.0), c(1.9 * 1.9, 0.0)) / (4.0 * s);
        assert!((pd.r_squared - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn triangle_identity() {
        let cfg = KinematicConfig::new(
            3,
            vec![1.0, 1.5, 0.8],
            vec![
                vec![c(0.2, 1.0), c(0.5, 0.0), c(0.1, -0.3)],
                vec![c(-0.7, 0.1), c(0.3, 0.9), c(1.0, 0.0)],
            ],
        )
        .unwrap();
        let p = pinch_point(&cfg).unwrap();
        assert!(p.identity_residuals().iter().all(|r| r.norm() < 1e-12));
        assert!(p.a[2].norm() == 0.0);
    }

    #[test]
    fn full_subset_is_plain_pinch() {
        let cfg = KinematicConfig::new(
            2,
            vec![1.0, 1.5, 0.8],
            vec![vec![c(1.0, 0.0), c(0.5, 0.0)], vec![c(-0.7, 0.0), c(2.0, 0.0)]],
        )
        .unwrap();
        let a = pinch_point(&cfg).unwrap();
        let b = subset_pinch(&cfg, &[1, 2, 3]).unwrap();
        assert_eq!(a.r_squared, b.r_squared);
        assert_eq!(a.loop_momentum, b.loop_momentum);
    }

    #[test]
    fn alpha_at_bubble_threshold() {
        let (m1, m2) = (1.0, 2.0);
        let e = m1 + m2;
        let p1 = vec![c(0.0, e), c(0.0, 0.0)];
        let cfg = KinematicConfig::new(2, vec![m1, m2], vec![p1.clone()]).unwrap();
        let s = sq(&p1);
        let a2 = (-(m1 * m1) / s).sqrt();
        let k: CVec = p1.iter().map(|x| -a2 * x).collect();
        let sol = solve_alpha(&cfg, &[1, 2], &k).unwrap();
        assert!((sol.alpha[1] - a2).norm() < 1e-14);
        assert!(sol.max_on_shell() < 1e-12);
        assert!(sol.vector_residual < 1e-12);
    }

    #[test]
    fn alpha_off_surface() {
        let cfg = KinematicConfig::new(
            3,
            vec![1.0, 1.5, 0.8],
            vec![
                vec![c(0.2, 1.0), c(0.5, 0.0), c(0.1, -0.3)],
                vec![c(-0.7, 0.1), c(0.3, 0.9), c(1.0, 0.0)],
            ],
        )
        .unwrap();
        let p = pinch_point(&cfg).unwrap();
        let sol = solve_alpha(&cfg, &[1, 2, 3], &p.loop_momentum).unwrap();
        assert!(sol.vector_residual < 1e-12);
        assert!(sol.max_on_shell() > 1e-3);
        let sum: C64 = sol.alpha.iter().sum();
        assert!((sum - 1.0).norm() < 1e-14);
    }
}
