//! Cut discontinuities.
//!
//! The cut integral of a subset `I` (with `m = |I|` edges) is
//!
//! ```text
//! cut_I = int d^D k  prod_{i in I} delta(Q_i)  /  prod_{j not in I} Q_j^{lambda_j}
//! ```
//!
//! over the real cycle of the reduced frame. The discontinuity is
//! `N (2 pi i)^m cut_I`; everything here reports `N = 1` and keeps `cut_I`
//! separately, since `N` is not determined.
//!
//! In the reduced frame of the contracted graph the `m - 1` differences
//! `Q_i - Q_{i1}` are linear and triangular, and the last delta is radial:
//!
//! ```text
//! cut_I = r^{D-m-1} / (2 prod_{l=1}^{m-1} |2 (p_l)_{l-1}|) * int_{S^{D-m}} F(A + r w) dw
//! ```

use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::frame::triangular_frame;
use crate::kinematics::{add, check_subset, contract, norm2, sq, sub};
use crate::pinch::{on_positive_branch, pinch_point, r2_scale};
use crate::quadrature::{integrate_sphere, sphere_area, sphere_rule, SphereIntegral, SphereOptions};
use crate::{kallen, CVec, Error, KinematicConfig, Result, C64};

#[derive(Clone, Debug, Serialize)]
pub struct CutResult {
    pub subset: Vec<usize>,
    pub m: usize,
    #[serde(rename = "D")]
    pub dim: usize,
    pub method: &'static str,
    /// `N`-independent cut integral.
    pub cut_integral: C64,
    /// `(2 pi i)^m cut_integral`, the discontinuity with `N = 1`.
    #[serde(rename = "value_N1")]
    pub value_n1: C64,
    pub prefactor_note: String,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<SphereIntegral>,
}

/// `(2 pi i)^m`.
pub fn prefactor(m: usize) -> C64 {
    C64::new(0.0, 2.0 * PI).powi(m as i32)
}

fn result(subset: Vec<usize>, dim: usize, method: &'static str, cut: C64, mut warnings: Vec<String>) -> CutResult {
    let m = subset.len();
    if dim.is_multiple_of(2) {
        warnings.push(format!("D = {dim} is even; the discontinuity formula assumes odd D"));
    }
    CutResult {
        subset,
        m,
        dim,
        method,
        cut_integral: cut,
        value_n1: prefactor(m) * cut,
        prefactor_note: format!("value_N1 = N * (2 pi i)^{m} * cut_integral with N = 1"),
        warnings,
        quadrature: None,
    }
}

fn require_unit_regulators(config: &KinematicConfig) -> Result<()> {
    if config.regulators().iter().any(|l| *l != C64::new(1.0, 0.0)) {
        return Err(Error::NoClosedForm("closed forms assume unit propagator powers".into()));
    }
    Ok(())
}

/// Bubble discontinuity in closed form:
///
/// ```text
/// -pi^{(D+3)/2} / (2^{D-4} Gamma((D-1)/2)) * lambda(-p^2, m1^2, m2^2)^{(D-3)/2} / (-p^2)^{D/2-1}
/// ```
///
/// Needs the radius squared real and non-negative.
pub fn disc_bubble_closed(config: &KinematicConfig) -> Result<CutResult> {
    if config.n() != 2 {
        return Err(Error::NoClosedForm(format!(
            "bubble formula needs n = 2, got {}",
            config.n()
        )));
    }
    let d = config.dim();
    if d < 2 {
        return Err(Error::NoClosedForm("bubble cut needs D >= 2".into()));
    }
    let pd = pinch_point(config)?;
    let tiny = pd.r_squared.norm() <= 1e-12 * r2_scale(config);
    if !(pd.on_minkowski_branch() || tiny) {
        return Err(Error::Branch(format!("r^2 = {} is not real positive", pd.r_squared)));
    }
    let s = -sq(&config.momenta()[0]);
    let (m1, m2) = (config.mass(1), config.mass(2));
    let lam = kallen(s, C64::new(m1 * m1, 0.0), C64::new(m2 * m2, 0.0));
    let df = d as f64;
    let lam_pow = if d == 3 {
        C64::new(1.0, 0.0)
    } else {
        lam.powf(0.5 * (df - 3.0))
    };
    let value =
        -PI.powf(0.5 * (df + 3.0)) / (2f64.powf(df - 4.0) * gamma(0.5 * (df - 1.0))) * lam_pow / s.powf(0.5 * df - 1.0);
    let mut r = result(vec![1, 2], d, "closed", C64::new(0.0, 0.0), vec![]);
    r.value_n1 = value;
    r.cut_integral = value / prefactor(2);
    Ok(r)
}

/// `ln(B + a) - ln(B - a)`; odd in `a`.
pub fn log_difference(b: C64, a: C64) -> C64 {
    (b + a).ln() - (b - a).ln()
}

/// `int_{-1}^{1} (1 - x^2)^nu / (B + a x) dx` for `nu = two_nu / 2 >= -1/2`, `|B| > a > 0`.
pub fn angular_j(two_nu: i32, b: f64, a: f64) -> f64 {
    match two_nu {
        -1 => b.signum() * PI / (b * b - a * a).sqrt(),
        0 => log_difference(C64::new(b, 0.0), C64::new(a, 0.0)).re / a,
        _ => {
            let nu = 0.5 * two_nu as f64;
            let beta = PI.sqrt() * gamma(nu) / gamma(nu + 0.5);
            (1.0 - b * b / (a * a)) * angular_j(two_nu - 2, b, a) + b / (a * a) * beta
        }
    }
}

struct TriangleFrame {
    p10: C64,
    p20: C64,
    p21: C64,
    p1sq: C64,
    p12sq: C64,
    msq: [f64; 3],
}

fn triangle_frame(config: &KinematicConfig) -> Result<TriangleFrame> {
    if config.n() != 3 {
        return Err(Error::NoClosedForm(format!(
            "triangle formula needs n = 3, got {}",
            config.n()
        )));
    }
    if config.dim() < 3 {
        return Err(Error::NoClosedForm("triangle cuts need D >= 3".into()));
    }
    require_unit_regulators(config)?;
    let fr = triangular_frame(config.momenta())?;
    let p = &fr.reduced;
    let m = config.masses();
    Ok(TriangleFrame {
        p10: p[0][0],
        p20: p[1][0],
        p21: p[1][1],
        p1sq: sq(&p[0]),
        p12sq: sq(&add(&p[0], &p[1])),
        msq: [m[0] * m[0], m[1] * m[1], m[2] * m[2]],
    })
}

fn is_real(z: C64, scale: f64) -> bool {
    z.im.abs() <= 1e-9 * (z.norm() + scale)
}

/// Two-edge cut `{1, 2}` of the triangle:
///
/// ```text
/// cut = r2^{D-3} / (4 |(p1)_0|) * S_{D-3} * J_{(D-4)/2}(B, 2 r2 |(p2)_1|)
/// B   = (p1+p2)^2 - m1^2 + m3^2 - ((p1)_0 + (p2)_0) / (p1)_0 * (p1^2 - m1^2 + m2^2)
/// ```
///
/// At `D = 4` this is `S_1 r2 / (4 |(p1)_0| a) (ln(B + a) - ln(B - a))`.
pub fn disc_triangle_2cut(config: &KinematicConfig) -> Result<CutResult> {
    let t = triangle_frame(config)?;
    let d = config.dim();
    let sc = r2_scale(config);
    let [m1, m2, m3] = t.msq;
    let a0 = -(t.p1sq - m1 + m2) / (2.0 * t.p10);
    let r2sq = -m1 - a0 * a0;
    if !on_positive_branch(r2sq) {
        return Err(Error::Branch(format!(
            "two-edge radius squared {r2sq} is not real positive"
        )));
    }
    let b = t.p12sq - m1 + m3 - (t.p10 + t.p20) / t.p10 * (t.p1sq - m1 + m2);
    if !is_real(b, sc) || !is_real(t.p21, sc.sqrt()) {
        return Err(Error::Branch(
            "momenta are not Minkowski-real in the reduced frame".into(),
        ));
    }
    let r = r2sq.re.sqrt();
    let a = 2.0 * r * t.p21.norm();
    if b.re.abs() <= a * (1.0 + 1e-12) {
        return Err(Error::SingularCut(format!(
            "|B| = {} <= {a}: the third propagator vanishes on the cut sphere",
            b.re.abs()
        )));
    }
    let j = angular_j(d as i32 - 4, b.re, a);
    let cut = r.powi(d as i32 - 3) / (4.0 * t.p10.norm()) * sphere_area(d - 3) * j;
    Ok(result(vec![1, 2], d, "closed", C64::new(cut, 0.0), vec![]))
}

/// Three-edge cut of the triangle: `S_{D-3} r3^{D-4} / (8 |(p1)_0| |(p2)_1|)`.
pub fn disc_triangle_3cut(config: &KinematicConfig) -> Result<CutResult> {
    let t = triangle_frame(config)?;
    let d = config.dim();
    let pd = pinch_point(config)?;
    if !pd.on_minkowski_branch() {
        return Err(Error::Support(format!("r3^2 = {} is not positive", pd.r_squared)));
    }
    let r = pd.r_squared.re.sqrt();
    let cut = sphere_area(d - 3) * r.powi(d as i32 - 4) / (8.0 * t.p10.norm() * t.p21.norm());
    Ok(result(vec![1, 2, 3], d, "closed", C64::new(cut, 0.0), vec![]))
}

/// Non-cut propagator restricted to the cut sphere:
/// `Q_j = c0 + 2 r w.v + r^2` with `w` on the unit sphere.
struct Restricted {
    c0: C64,
    v: CVec,
    lambda: C64,
}

/// Cut integral of `subset` by quadrature over the real vanishing sphere.
pub fn cut_numeric(config: &KinematicConfig, subset: &[usize], opts: &SphereOptions) -> Result<CutResult> {
    check_subset(config.n(), subset, 2)?;
    let d = config.dim();
    let m = subset.len();
    if d < m {
        return Err(Error::Support(format!("D = {d} < |I| = {m}: no cut sphere")));
    }
    let small = contract(config, subset)?;
    let pd = pinch_point(&small)?;
    let r2 = pd.r_squared;
    if !is_real(r2, r2_scale(config)) {
        return Err(Error::Branch(format!("r^2 = {r2} is not real")));
    }
    if !on_positive_branch(r2) {
        return Err(Error::Support(format!("r^2 = {r2} <= 0: the cut sphere is empty")));
    }
    let r = r2.re.sqrt();
    let diag: f64 = (0..m - 1).map(|l| 2.0 * pd.frame.reduced[l][l].norm()).product();
    let jac = r.powi(d as i32 - m as i32 - 1) / (2.0 * diag);

    let ps = config.partial_sums();
    let shift = &ps[subset[0] - 1];
    let free = m - 1;
    let mut props = Vec::new();
    for j in (1..=config.n()).filter(|j| !subset.contains(j)) {
        let pj = pd.frame.apply(&sub(&ps[j - 1], shift));
        let c = add(&pd.a, &pj);
        let mj = config.mass(j);
        props.push(Restricted {
            c0: sq(&c) + mj * mj,
            v: c[free..].to_vec(),
            lambda: config.regulators()[j - 1],
        });
    }
    let sdim = d - m;
    let scale = r2_scale(config);
    for (idx, q) in props.iter().enumerate() {
        let j = (1..=config.n()).filter(|j| !subset.contains(j)).nth(idx).unwrap();
        let c = q.c0 + r * r;
        let vn = norm2(&q.v).sqrt();
        let real = is_real(c, scale) && q.v.iter().all(|z| is_real(*z, scale.sqrt()));
        let (lo, hi) = if sdim == 0 {
            let v0 = q.v[0].re;
            (c.re - 2.0 * r * v0.abs(), c.re + 2.0 * r * v0.abs())
        } else {
            (c.re - 2.0 * r * vn, c.re + 2.0 * r * vn)
        };
        let crosses = if sdim == 0 {
            lo.abs() <= 1e-12 * scale || hi.abs() <= 1e-12 * scale
        } else {
            lo <= 1e-12 * scale && hi >= -1e-12 * scale
        };
        if real && crosses {
            return Err(Error::SingularCut(format!("propagator {j} vanishes on the cut sphere")));
        }
        if !real {
            let rule = sphere_rule(sdim, 16);
            let min = rule
                .points
                .iter()
                .map(|w| (c + 2.0 * r * w.iter().zip(&q.v).map(|(x, y)| y * *x).sum::<C64>()).norm())
                .fold(f64::INFINITY, f64::min);
            if min <= 1e-12 * scale {
                return Err(Error::SingularCut(format!("propagator {j} vanishes on the cut sphere")));
            }
        }
    }
    let integrand = |w: &[f64]| -> C64 {
        props.iter().fold(C64::new(1.0, 0.0), |acc, q| {
            let dotv: C64 = w.iter().zip(&q.v).map(|(x, y)| y * *x).sum();
            let qv = q.c0 + 2.0 * r * dotv + r * r;
            if q.lambda == C64::new(1.0, 0.0) {
                acc / qv
            } else {
                acc * qv.powc(-q.lambda)
            }
        })
    };
    let integral = integrate_sphere(sdim, integrand, opts);
    let mut warnings = vec![];
    if !integral.converged {
        warnings.push("sphere quadrature hit the node cap before converging".into());
    }
    let cut = integral.value * jac;
    let mut res = result(subset.to_vec(), d, "numeric", cut, warnings);
    res.quadrature = Some(integral);
    Ok(res)
}

/// One composition `Disc_{j_i} o ... o Disc_{j_1}` with `j_1 < ... < j_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscTerm {
    pub loops: Vec<usize>,
}

impl std::fmt::Display for DiscTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.loops.iter().rev().map(|j| format!("Disc{j}")).collect();
        write!(f, "{}", parts.join("∘"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscExpansion {
    pub loops: usize,
    pub terms: Vec<DiscTerm>,
}

/// Discontinuity along the product of `k` simple loops: the sum over all
/// nonempty ascending index sets, ordered by size then lexicographically.
pub fn disc_expand(k: usize) -> DiscExpansion {
    let terms = if k == 0 {
        vec![]
    } else {
        let mut sets = crate::landau::subsets(k, 1);
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        sets.into_iter().map(|loops| DiscTerm { loops }).collect()
    };
    DiscExpansion { loops: k, terms }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn bubble(d: usize, s: f64, m: [f64; 2]) -> KinematicConfig {
        let mut p = vec![c(0.0, 0.0); d];
        p[0] = c(0.0, s.sqrt());
        KinematicConfig::new(d, m.to_vec(), vec![p]).unwrap()
    }

    #[test]
    fn bubble_worked_value() {
        let r = disc_bubble_closed(&bubble(3, 5.0, [1.0, 1.0])).unwrap();
        let want = -2.0 * PI.powi(3) / 5f64.sqrt();
        assert!((r.value_n1 - want).norm() < 1e-12 * want.abs());
        assert!((r.cut_integral.re - PI / (2.0 * 5f64.sqrt())).abs() < 1e-13);
    }

    #[test]
    fn bubble_threshold_d5() {
        let r = disc_bubble_closed(&bubble(5, 4.0, [1.0, 1.0])).unwrap();
        assert!(r.value_n1.norm() < 1e-12);
        // D = 3 keeps a finite value at the pseudo-threshold
        let r = disc_bubble_closed(&bubble(3, 1.0, [1.0, 2.0])).unwrap();
        assert!(r.value_n1.norm() > 1.0);
    }

    #[test]
    fn bubble_below_threshold_is_branch_error() {
        assert!(matches!(
            disc_bubble_closed(&bubble(3, 2.0, [1.0, 1.0])),
            Err(Error::Branch(_))
        ));
    }

    #[test]
    fn log_difference_is_odd() {
        let (b, a) = (c(3.0, 0.0), c(1.2, 0.0));
        assert!((log_difference(b, a) + log_difference(b, -a)).norm() < 1e-15);
    }

    #[test]
    fn j_recurrence_matches_quadrature() {
        use crate::quadrature::gauss_legendre;
        let (b, a) = (2.5, 1.1);
        for two_nu in [-1, 0, 1, 2, 3] {
            let nu = 0.5 * two_nu as f64;
            // x = sin(t) removes the endpoint behaviour
            let (ts, ws) = gauss_legendre(200, -PI / 2.0, PI / 2.0);
            let q: f64 = ts
                .iter()
                .zip(&ws)
                .map(|(t, w)| w * t.cos().powf(2.0 * nu + 1.0) / (b + a * t.sin()))
                .sum();
            assert!((angular_j(two_nu, b, a) - q).abs() < 1e-10 * q.abs(), "nu = {nu}");
        }
    }

    #[test]
    fn expansion_terms() {
        assert!(disc_expand(0).terms.is_empty());
        assert_eq!(disc_expand(1).terms, vec![DiscTerm { loops: vec![1] }]);
        let e = disc_expand(2);
        let labels: Vec<String> = e.terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(labels, vec!["Disc1", "Disc2", "Disc2∘Disc1"]);
        assert_eq!(disc_expand(3).terms.len(), 7);
    }
}
