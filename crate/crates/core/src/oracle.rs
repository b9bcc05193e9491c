//! Brute-force Euclidean integration of
//! `int d^D k / prod_i ((k + P^(i))^2 + m_i^2)^{lambda_i}`.
//!
//! Spherical coordinates around `k0 = -mean P^(i)` with the radius mapped by
//! `|k - k0| = c tan(theta)`, `theta in [0, pi/2)`. `D <= 4` uses the tensor
//! product of a Gauss-Legendre rule in `theta` and the hyperspherical rule on
//! `S^{D-1}`; higher `D` uses Monte Carlo stratified in `theta` with uniform
//! directions.

use std::f64::consts::FRAC_PI_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::kinematics::norm2;
use crate::quadrature::{gauss_legendre, pairwise_sum, sphere_rule};
use crate::strata::gaussian;
use crate::{CVec, Error, KinematicConfig, Result, C64};

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Radial nodes of the tensor rule; the angular rule uses `nodes / 2` per angle.
    pub nodes: usize,
    /// Monte Carlo samples when `D > 4`.
    pub samples: usize,
    pub seed: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            nodes: 64,
            samples: 1 << 20,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub value: C64,
    pub error_estimate: f64,
    pub method: &'static str,
    /// Nodes (tensor) or samples (Monte Carlo) at the reported resolution.
    pub evaluations: usize,
}

const MC_BATCHES: usize = 64;

struct Integrand<'a> {
    ps: Vec<CVec>,
    msq: Vec<f64>,
    lambdas: &'a [C64],
    center: Vec<f64>,
    c: f64,
    d: usize,
}

impl Integrand<'_> {
    fn new<'a>(config: &'a KinematicConfig, ps: Vec<CVec>) -> Integrand<'a> {
        let d = config.dim();
        let n = ps.len() as f64;
        let center: Vec<f64> = (0..d).map(|j| -ps.iter().map(|p| p[j].re).sum::<f64>() / n).collect();
        let spread: f64 = ps
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&center)
                    .map(|(x, k0): (&C64, &f64)| (x.re + k0).powi(2))
                    .sum::<f64>()
            })
            .sum::<f64>()
            / n;
        let c = (config.masses().iter().map(|m| m * m).sum::<f64>() / n + spread).sqrt();
        Integrand {
            ps,
            msq: config.masses().iter().map(|m| m * m).collect(),
            lambdas: config.regulators(),
            center,
            c,
            d,
        }
    }

    /// Integrand times `c^D tan^{D-1} sec^2`, at radius angle `theta` and direction `w`.
    fn eval(&self, theta: f64, w: &[f64]) -> C64 {
        let (t, cs) = (theta.tan(), theta.cos());
        let rad = self.c * t;
        let jac = self.c.powi(self.d as i32) * t.powi(self.d as i32 - 1) / (cs * cs);
        let mut acc = C64::new(jac, 0.0);
        for ((p, m2), l) in self.ps.iter().zip(&self.msq).zip(self.lambdas) {
            let q: C64 = w
                .iter()
                .zip(&self.center)
                .zip(p)
                .map(|((wj, k0), pj)| {
                    let x = pj + (rad * wj + k0);
                    x * x
                })
                .sum::<C64>()
                + m2;
            acc *= if *l == C64::new(1.0, 0.0) { q.inv() } else { q.powc(-l) };
        }
        acc
    }
}

fn tensor(f: &Integrand, n: usize) -> (C64, usize) {
    let (x, w) = gauss_legendre(n, 0.0, FRAC_PI_2);
    let rule = sphere_rule(f.d - 1, (n / 2).max(1));
    let rows: Vec<C64> = x
        .par_iter()
        .zip(&w)
        .map(|(t, wt)| {
            let vals: Vec<C64> = rule
                .points
                .iter()
                .zip(&rule.weights)
                .map(|(p, pw)| f.eval(*t, p) * (pw * wt))
                .collect();
            pairwise_sum(&vals)
        })
        .collect();
    (pairwise_sum(&rows), n * rule.points.len())
}

fn monte_carlo(f: &Integrand, samples: usize, seed: u64) -> (C64, f64) {
    let per = (samples / MC_BATCHES).max(2);
    let width = FRAC_PI_2 / MC_BATCHES as f64;
    let area = crate::quadrature::sphere_area(f.d - 1);
    let strata: Vec<(C64, f64)> = (0..MC_BATCHES)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (b as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let lo = b as f64 * width;
            let vals: Vec<C64> = (0..per)
                .map(|_| {
                    let mut w: Vec<f64> = (0..f.d).map(|_| gaussian(&mut rng)).collect();
                    let nrm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                    w.iter_mut().for_each(|x| *x /= nrm);
                    let u: f64 = rand::RngExt::random(&mut rng);
                    f.eval(lo + width * u, &w)
                })
                .collect();
            let mean = pairwise_sum(&vals) / per as f64;
            let var = vals.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / (per as f64 - 1.0);
            let vol = width * area;
            (mean * vol, var * vol * vol / per as f64)
        })
        .collect();
    let est: Vec<C64> = strata.iter().map(|s| s.0).collect();
    (pairwise_sum(&est), strata.iter().map(|s| s.1).sum::<f64>().sqrt())
}

fn check(config: &KinematicConfig) -> Result<()> {
    let total: f64 = config.regulators().iter().map(|l| l.re).sum();
    let d = config.dim() as f64;
    if 2.0 * total <= d {
        return Err(Error::Divergent(format!(
            "power counting: 2 Re(sum lambda) = {} <= D = {d}",
            2.0 * total
        )));
    }
    Ok(())
}

fn integrate(config: &KinematicConfig, ps: Vec<CVec>, opts: &OracleOptions) -> OracleResult {
    let d = config.dim();
    let f = Integrand::new(config, ps);
    if d <= 4 {
        let n = opts.nodes.max(4);
        let (hi, evaluations) = tensor(&f, n);
        let (lo, _) = tensor(&f, n / 2);
        OracleResult {
            value: hi,
            error_estimate: (hi - lo).norm(),
            method: "tensor",
            evaluations,
        }
    } else {
        let (value, err) = monte_carlo(&f, opts.samples, opts.seed);
        OracleResult {
            value,
            error_estimate: err,
            method: "monte_carlo",
            evaluations: opts.samples,
        }
    }
}

/// Direct integral over real `k`; momenta must be real and the integral convergent.
pub fn euclidean_integral(config: &KinematicConfig, opts: &OracleOptions) -> Result<OracleResult> {
    if !config.is_real() {
        return Err(Error::InvalidConfig("Euclidean oracle needs real momenta".into()));
    }
    check(config)?;
    Ok(integrate(config, config.partial_sums(), opts))
}

#[derive(Clone, Debug, Serialize)]
pub struct HolomorphyProbe {
    pub h: f64,
    /// `(f(p + h d) - f(p - h d)) / 2h`
    pub real_derivative: C64,
    /// `(f(p + i h d) - f(p - i h d)) / 2ih`
    pub imag_derivative: C64,
    /// `|real - imag| / |f(p)|`
    pub residual: f64,
    pub inconclusive: bool,
}

/// Cauchy-Riemann check along `direction` (one vector per external momentum).
///
/// All evaluations share one quadrature rule. Marked inconclusive when the
/// step can push a propagator's real part negative (`h |d| >= m / 2`).
pub fn holomorphy_probe(
    config: &KinematicConfig,
    direction: &[CVec],
    h: f64,
    opts: &OracleOptions,
) -> Result<HolomorphyProbe> {
    if direction.len() != config.momenta().len() {
        return Err(Error::LengthMismatch(direction.len(), config.momenta().len()));
    }
    if !config.is_real() {
        return Err(Error::InvalidConfig("probe must start from real momenta".into()));
    }
    check(config)?;
    // partial sums of the direction
    let mut dps = vec![vec![C64::new(0.0, 0.0); config.dim()]];
    for v in direction {
        if v.len() != config.dim() {
            return Err(Error::LengthMismatch(v.len(), config.dim()));
        }
        let next = crate::kinematics::add(dps.last().unwrap(), v);
        dps.push(next);
    }
    let inconclusive = dps
        .iter()
        .zip(config.masses())
        .any(|(dp, m)| h * norm2(dp).sqrt() >= 0.5 * m);
    let ps = config.partial_sums();
    let at = |z: C64| -> C64 {
        let shifted: Vec<CVec> = ps
            .iter()
            .zip(&dps)
            .map(|(p, dp)| p.iter().zip(dp).map(|(a, b)| a + z * b).collect())
            .collect();
        integrate(config, shifted, opts).value
    };
    let f0 = at(C64::new(0.0, 0.0));
    let hr = C64::new(h, 0.0);
    let hi = C64::new(0.0, h);
    let real_derivative = (at(hr) - at(-hr)) / (2.0 * hr);
    let imag_derivative = (at(hi) - at(-hi)) / (2.0 * hi);
    let residual = (real_derivative - imag_derivative).norm() / f0.norm();
    Ok(HolomorphyProbe {
        h,
        real_derivative,
        imag_derivative,
        residual,
        inconclusive,
    })
}
