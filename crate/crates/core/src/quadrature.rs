//! Gauss-Legendre rules on intervals and tensor rules on spheres.

use std::f64::consts::{PI, TAU};
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::C64;

/// Nodes and weights on `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let rule = GaussLegendre::new(NonZeroUsize::new(n.max(1)).unwrap());
    let (h, c) = (0.5 * (b - a), 0.5 * (b + a));
    rule.as_node_weight_pairs()
        .iter()
        .map(|(x, w)| (h * x + c, h * w))
        .unzip()
}

/// Area of the unit sphere `S^d` in `R^(d+1)`.
pub fn sphere_area(d: usize) -> f64 {
    let h = 0.5 * (d as f64 + 1.0);
    2.0 * PI.powf(h) / gamma(h)
}

/// Points of `S^d` with weights summing to its area.
#[derive(Clone, Debug)]
pub struct SphereRule {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

/// Hyperspherical tensor rule: `n` nodes per polar angle, `2n` for the azimuth.
pub fn sphere_rule(d: usize, n: usize) -> SphereRule {
    if d == 0 {
        return SphereRule {
            dim: 0,
            points: vec![vec![1.0], vec![-1.0]],
            weights: vec![1.0, 1.0],
        };
    }
    let (phi, wphi) = gauss_legendre(2 * n, 0.0, TAU);
    let (theta, wtheta) = gauss_legendre(n, 0.0, PI);
    // start with the circle in the last two coordinates, then prepend polar angles
    let mut points: Vec<Vec<f64>> = phi.iter().map(|p| vec![p.cos(), p.sin()]).collect();
    let mut weights = wphi;
    for level in 2..=d {
        let power = (level - 1) as i32;
        let mut np = Vec::with_capacity(points.len() * n);
        let mut nw = Vec::with_capacity(points.len() * n);
        for (t, wt) in theta.iter().zip(&wtheta) {
            let (ct, st) = (t.cos(), t.sin());
            let jac = wt * st.powi(power);
            for (p, w) in points.iter().zip(&weights) {
                let mut v = Vec::with_capacity(p.len() + 1);
                v.push(ct);
                v.extend(p.iter().map(|x| st * x));
                np.push(v);
                nw.push(jac * w);
            }
        }
        points = np;
        weights = nw;
    }
    SphereRule {
        dim: d,
        points,
        weights,
    }
}

/// Sum in a fixed binary-tree order.
pub fn pairwise_sum(v: &[C64]) -> C64 {
    match v.len() {
        0 => C64::new(0.0, 0.0),
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereIntegral {
    pub value: C64,
    pub nodes: usize,
    /// Relative change against the previous resolution.
    pub rel_change: f64,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct SphereOptions {
    pub start: usize,
    pub rel_tol: f64,
    pub max_nodes: usize,
}

impl Default for SphereOptions {
    fn default() -> Self {
        SphereOptions {
            start: 8,
            rel_tol: 1e-8,
            max_nodes: 1 << 22,
        }
    }
}

pub fn apply_rule<F>(rule: &SphereRule, f: &F) -> C64
where
    F: Fn(&[f64]) -> C64 + Sync,
{
    let vals: Vec<C64> = rule
        .points
        .par_iter()
        .zip(&rule.weights)
        .map(|(p, w)| f(p) * *w)
        .collect();
    pairwise_sum(&vals)
}

/// Integrates `f` over `S^d`, doubling the resolution until the relative change
/// drops below `rel_tol` or the node cap is reached.
pub fn integrate_sphere<F>(d: usize, f: F, opts: &SphereOptions) -> SphereIntegral
where
    F: Fn(&[f64]) -> C64 + Sync,
{
    if d == 0 {
        let rule = sphere_rule(0, 1);
        return SphereIntegral {
            value: apply_rule(&rule, &f),
            nodes: 2,
            rel_change: 0.0,
            converged: true,
        };
    }
    let mut n = opts.start.max(2);
    let mut prev = apply_rule(&sphere_rule(d, n), &f);
    loop {
        let next_n = 2 * n;
        let nodes = 2 * next_n.pow(d as u32);
        if nodes > opts.max_nodes {
            return SphereIntegral {
                value: prev,
                nodes: 2 * n.pow(d as u32),
                rel_change: f64::NAN,
                converged: false,
            };
        }
        let cur = apply_rule(&sphere_rule(d, next_n), &f);
        let change = (cur - prev).norm();
        let rel = change / cur.norm().max(1e-300);
        if rel < opts.rel_tol || change == 0.0 {
            return SphereIntegral {
                value: cur,
                nodes,
                rel_change: rel,
                converged: true,
            };
        }
        prev = cur;
        n = next_n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_areas() {
        assert!((sphere_area(0) - 2.0).abs() < 1e-14);
        assert!((sphere_area(1) - TAU).abs() < 1e-14);
        assert!((sphere_area(2) - 4.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn rule_points_on_sphere() {
        for d in 1..5 {
            let r = sphere_rule(d, 4);
            for p in &r.points {
                assert_eq!(p.len(), d + 1);
                let n: f64 = p.iter().map(|x| x * x).sum();
                assert!((n - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn second_moment() {
        // int x_0^2 over S^d = area / (d + 1)
        for d in 1..5 {
            let r = integrate_sphere(d, |p| C64::new(p[0] * p[0], 0.0), &SphereOptions::default());
            assert!((r.value.re - sphere_area(d) / (d as f64 + 1.0)).abs() < 1e-11);
        }
    }

    #[test]
    fn pairwise_matches_naive() {
        let v: Vec<C64> = (0..37).map(|i| C64::new(i as f64, -(i as f64) * 0.5)).collect();
        assert_eq!(pairwise_sum(&v), C64::new(666.0, -333.0));
    }
}
