//! Landau surfaces: per-subset radii, closed-form channel quadratics for the
//! triangle and the box, and numeric channel root search for any `n`.

#[rustfmt::skip]
mod box_coefficients;

use rayon::prelude::*;
use serde::Serialize;

use crate::kinematics::{momenta_from_invariants, Invariants};
use crate::pinch::{r2_scale, subset_pinch};
use crate::{Error, KinematicConfig, Result, C64};

#[derive(Clone, Debug, Serialize)]
pub struct LandauEntry {
    pub subset: Vec<usize>,
    pub r_squared: C64,
    pub on_surface: bool,
}

/// One entry per edge subset with at least two edges, in lexicographic order.
#[derive(Clone, Debug, Serialize)]
pub struct LandauScan {
    pub entries: Vec<LandauEntry>,
}

impl LandauScan {
    pub fn get(&self, subset: &[usize]) -> Option<&LandauEntry> {
        self.entries.iter().find(|e| e.subset == subset)
    }
}

/// All ascending subsets of `1..=n` with at least `min` elements, lexicographic.
pub fn subsets(n: usize, min: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u64..1 << n)
        .map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.len() >= min)
        .collect();
    out.sort();
    out
}

/// `r^2` for every subset; `on_surface` is `|r^2| < tol * scale^2`.
pub fn landau_scan(config: &KinematicConfig, tol: f64) -> Result<LandauScan> {
    let scale = r2_scale(config);
    let entries = subsets(config.n(), 2)
        .into_par_iter()
        .map(|s| {
            let p = subset_pinch(config, &s)?;
            let on_surface = p.r_squared.norm() < tol * scale;
            Ok(LandauEntry {
                subset: s,
                r_squared: p.r_squared,
                on_surface,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LandauScan { entries })
}

/// Threshold and pseudo-threshold `((m1 + m2)^2, (m1 - m2)^2)` in `-p^2`.
pub fn bubble_roots(m1: f64, m2: f64) -> (f64, f64) {
    ((m1 + m2) * (m1 + m2), (m1 - m2) * (m1 - m2))
}

/// `a y^2 + b y + c` in one channel invariant, with its roots.
#[derive(Clone, Debug, Serialize)]
pub struct ChannelQuadratic {
    pub channel: String,
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub roots: Vec<C64>,
}

impl ChannelQuadratic {
    pub fn eval(&self, y: C64) -> C64 {
        self.a * y * y + self.b * y + self.c
    }
}

fn cm(m: f64) -> C64 {
    C64::new(m, 0.0)
}

/// Triangle condition in `s` with `s = -p1^2`, `t = -p2^2`, `u = -(p1+p2)^2`.
///
/// Equals `-4 (p1)_0^2 (p2)_1^2 r3^2` in a triangular frame.
pub fn triangle_quadratic(t: C64, u: C64, masses: [f64; 3]) -> ChannelQuadratic {
    let [m1, m2, m3] = masses.map(|m| cm(m * m));
    let c = 2.0 * m1 * t + 2.0 * m2 * u - (t + m2 - m3) * (u + m1 - m3);
    let d = -m1 * (t - u).powi(2) - u * (m1 - m2).powi(2) + (m1 - m2) * (-t + u) * (u + m1 - m3);
    let disc = (c * c + 4.0 * m3 * d).sqrt();
    ChannelQuadratic {
        channel: "s".into(),
        a: -m3,
        b: c,
        c: d,
        roots: vec![(c + disc) / (2.0 * m3), (c - disc) / (2.0 * m3)],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoxChannel {
    S,
    V,
    W,
}

impl BoxChannel {
    pub fn label(self) -> &'static str {
        match self {
            BoxChannel::S => "s",
            BoxChannel::V => "v",
            BoxChannel::W => "w",
        }
    }
}

impl std::str::FromStr for BoxChannel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(BoxChannel::S),
            "v" => Ok(BoxChannel::V),
            "w" => Ok(BoxChannel::W),
            other => Err(Error::UnknownChannel(other.into())),
        }
    }
}

/// Box invariants as negative squares: `s = -p1^2`, `t = -p2^2`, `u = -p3^2`,
/// `v = -(p1+p2)^2`, `w = -(p1+p3)^2`, `x = -(p2+p3)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoxInvariants {
    pub s: C64,
    pub t: C64,
    pub u: C64,
    pub v: C64,
    pub w: C64,
    pub x: C64,
}

impl BoxInvariants {
    pub fn from_invariants(inv: &Invariants) -> Result<Self> {
        Ok(BoxInvariants {
            s: inv.mandelstam("s")?,
            t: inv.mandelstam("t")?,
            u: inv.mandelstam("u")?,
            v: inv.mandelstam("v")?,
            w: inv.mandelstam("w")?,
            x: inv.mandelstam("x")?,
        })
    }

    pub fn to_invariants(self) -> Invariants {
        let vals = [
            ("s", self.s),
            ("t", self.t),
            ("u", self.u),
            ("v", self.v),
            ("w", self.w),
            ("x", self.x),
        ];
        Invariants::from_mandelstam(4, vals).expect("complete box channel set")
    }

    pub fn set(&mut self, channel: BoxChannel, y: C64) {
        match channel {
            BoxChannel::S => self.s = y,
            BoxChannel::V => self.v = y,
            BoxChannel::W => self.w = y,
        }
    }
}

/// Box condition as a quadratic in `channel`; the channel's own entry in
/// `others` is ignored.
pub fn box_quadratic(channel: BoxChannel, others: &BoxInvariants, masses: [f64; 4]) -> ChannelQuadratic {
    let inv = [others.s, others.t, others.u, others.v, others.w, others.x];
    let m = masses.map(cm);
    let [a, b, c] = match channel {
        BoxChannel::S => box_coefficients::coeffs_s(inv, m),
        BoxChannel::V => box_coefficients::coeffs_v(inv, m),
        BoxChannel::W => box_coefficients::coeffs_w(inv, m),
    };
    let roots = if a.norm() <= 1e-14 * (b.norm() + c.norm()) {
        vec![-c / b]
    } else {
        let disc = (b * b - 4.0 * a * c).sqrt();
        vec![(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)]
    };
    ChannelQuadratic {
        channel: channel.label().into(),
        a,
        b,
        c,
        roots,
    }
}

#[derive(Clone, Debug)]
pub struct RootSearch {
    /// Grid intervals scanned for sign changes.
    pub steps: usize,
    /// Subset whose radius is tracked; `None` means all edges.
    pub subset: Option<Vec<usize>>,
    /// Allowed `|Im r^2|` relative to the `r^2` scale.
    pub imag_tol: f64,
}

impl Default for RootSearch {
    fn default() -> Self {
        RootSearch {
            steps: 400,
            subset: None,
            imag_tol: 1e-9,
        }
    }
}

/// `r^2` as a function of one channel (`-q^2` convention) with the others frozen.
pub fn r2_along_channel<'a>(
    config: &'a KinematicConfig,
    channel: &str,
    subset: &[usize],
) -> Result<impl Fn(f64) -> Result<C64> + Sync + 'a> {
    let base = Invariants::from_momenta(config.momenta());
    base.mandelstam(channel)?;
    let channel = channel.to_string();
    let subset = subset.to_vec();
    Ok(move |x: f64| {
        let mut inv = base.clone();
        inv.set_mandelstam(&channel, C64::new(x, 0.0))?;
        let p = momenta_from_invariants(config.n(), config.dim(), &inv)?;
        let cfg = config.with_momenta(p)?;
        Ok(subset_pinch(&cfg, &subset)?.r_squared)
    })
}

/// Real roots of `r^2` in `bracket` as the channel value varies.
///
/// Sign changes of `Re r^2` on a grid are refined by bisection; crossings
/// through poles are discarded.
pub fn channel_root_search(
    config: &KinematicConfig,
    channel: &str,
    bracket: (f64, f64),
    opts: &RootSearch,
) -> Result<Vec<f64>> {
    let subset: Vec<usize> = opts.subset.clone().unwrap_or_else(|| (1..=config.n()).collect());
    let f = r2_along_channel(config, channel, &subset)?;
    let (lo, hi) = bracket;
    if hi.partial_cmp(&lo) != Some(std::cmp::Ordering::Greater) {
        return Ok(vec![]);
    }
    let scale = r2_scale(config).max(lo.abs()).max(hi.abs());
    let real = |x: f64| -> Option<f64> {
        let v = f(x).ok()?;
        (v.is_finite() && v.im.abs() <= opts.imag_tol * (v.norm() + scale)).then_some(v.re)
    };
    let xs: Vec<f64> = (0..=opts.steps)
        .map(|k| lo + (hi - lo) * k as f64 / opts.steps as f64)
        .collect();
    let ys: Vec<Option<f64>> = xs.par_iter().map(|&x| real(x)).collect();

    let mut roots: Vec<f64> = Vec::new();
    for k in 0..opts.steps {
        let (Some(ya), Some(yb)) = (ys[k], ys[k + 1]) else {
            continue;
        };
        if ya == 0.0 {
            roots.push(xs[k]);
            continue;
        }
        if ya.signum() == yb.signum() || yb == 0.0 {
            if yb == 0.0 && k + 1 == opts.steps {
                roots.push(xs[k + 1]);
            }
            continue;
        }
        let (mut a, mut b, mut fa) = (xs[k], xs[k + 1], ya);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let Some(fm) = real(mid) else { break };
            if fm == 0.0 {
                a = mid;
                b = mid;
                break;
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        let root = 0.5 * (a + b);
        // a pole also changes sign; keep only genuine zeros
        if matches!(real(root), Some(v) if v.abs() < 1e-6 * scale) {
            roots.push(root);
        }
    }
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-9 * (1.0 + x.abs()));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kallen;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn bubble_roots_examples() {
        assert_eq!(bubble_roots(1.0, 1.0), (4.0, 0.0));
        let (t, p) = bubble_roots(1.0, 2.0);
        assert_eq!((t, p), (9.0, 1.0));
        assert_eq!(kallen(c(t), c(1.0), c(4.0)), c(0.0));
        assert_eq!(kallen(c(p), c(1.0), c(4.0)), c(0.0));
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(2, 2), vec![vec![1, 2]]);
        assert_eq!(subsets(3, 2).len(), 4);
        assert_eq!(subsets(4, 2).len(), 11);
    }

    #[test]
    fn triangle_roots_solve_quadratic() {
        let q = triangle_quadratic(c(2.3), c(-0.7), [1.0, 1.4, 0.6]);
        for r in &q.roots {
            assert!(q.eval(*r).norm() < 1e-10 * (1.0 + q.c.norm()));
        }
    }

    #[test]
    fn triangle_vertex_swap_symmetry() {
        // swapping edges 1 and 2 exchanges t and u and the first two masses
        let (t, u, s) = (c(1.7), c(-0.4), c(3.1));
        let q = triangle_quadratic(t, u, [0.8, 1.3, 0.5]);
        let r = triangle_quadratic(u, t, [1.3, 0.8, 0.5]);
        assert!((q.eval(s) - r.eval(s)).norm() < 1e-12);
    }

    #[test]
    fn box_roots_solve_quadratic() {
        let inv = BoxInvariants {
            s: c(1.0),
            t: c(2.0),
            u: c(0.5),
            v: c(-1.0),
            w: c(3.0),
            x: c(0.7),
        };
        for ch in [BoxChannel::S, BoxChannel::V, BoxChannel::W] {
            let q = box_quadratic(ch, &inv, [1.0, 1.2, 0.9, 1.1]);
            let sc = q.a.norm() + q.b.norm() + q.c.norm();
            for r in &q.roots {
                assert!(q.eval(*r).norm() < 1e-10 * sc * (1.0 + r.norm_sqr()));
            }
        }
    }

    #[test]
    fn empty_bracket() {
        let cfg = KinematicConfig::new(2, vec![1.0, 1.0], vec![vec![C64::new(0.0, 1.0), c(0.0)]]).unwrap();
        let r = channel_root_search(&cfg, "s", (0.5, 3.0), &RootSearch::default()).unwrap();
        assert!(r.is_empty());
        assert!(channel_root_search(&cfg, "s", (3.0, 0.5), &RootSearch::default())
            .unwrap()
            .is_empty());
    }
}
