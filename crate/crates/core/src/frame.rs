//! Complex orthogonal triangularization of momentum frames.
//!
//! `M^T M = 1` over the complex numbers (not unitary). The single-vector step
//! reduces the tail recursively and then closes with a 2x2 block
//! `[[a, b], [-b, a]] / sqrt(a^2 + b^2)`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::kinematics::{mat_vec, norm2, sq};
use crate::{CVec, Error, Result, C64};

/// A tail `w` counts as isotropic when `|w.w| < ISOTROPY * |w|^2`.
pub const ISOTROPY: f64 = 1e-12;

/// Coordinate swap applied during the recursion, as absolute indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Transposition {
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameReduction {
    #[serde(serialize_with = "crate::serde_util::matrix")]
    pub m: DMatrix<C64>,
    pub reduced: Vec<CVec>,
    pub permutations_applied: Vec<Transposition>,
}

impl FrameReduction {
    pub fn identity(vs: &[CVec]) -> Self {
        let d = vs.first().map_or(0, |v| v.len());
        FrameReduction {
            m: DMatrix::identity(d, d),
            reduced: vs.to_vec(),
            permutations_applied: vec![],
        }
    }

    pub fn apply(&self, v: &[C64]) -> CVec {
        mat_vec(&self.m, v)
    }

    /// `M^T v`, the inverse map.
    pub fn apply_inverse(&self, v: &[C64]) -> CVec {
        crate::kinematics::mat_t_vec(&self.m, v)
    }

    /// Largest entry of `M^T M - 1`.
    pub fn orthogonality_defect(&self) -> f64 {
        let d = self.m.nrows();
        let p = self.m.transpose() * &self.m;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let e = if i == j { p[(i, j)] - 1.0 } else { p[(i, j)] };
                worst = worst.max(e.norm());
            }
        }
        worst
    }
}

fn isotropic(w: &[C64]) -> bool {
    let n = norm2(w);
    n == 0.0 || sq(w).norm() < ISOTROPY * n
}

fn without(w: &[C64], i: usize) -> CVec {
    w.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| *x).collect()
}

fn embed(sub: DMatrix<C64>, d: usize) -> DMatrix<C64> {
    let k = d - sub.nrows();
    let mut out = DMatrix::identity(d, d);
    out.view_mut((k, k), (sub.nrows(), sub.ncols())).copy_from(&sub);
    out
}

/// Orthogonal `M` on `w` (absolute offset `offset`) with `M w = (c, 0, ..., 0)`.
fn single_block(w: &[C64], offset: usize, perms: &mut Vec<Transposition>) -> Result<DMatrix<C64>> {
    let n = w.len();
    let ident = DMatrix::identity(n, n);
    if n == 1 || norm2(&w[1..]) == 0.0 {
        return Ok(ident);
    }
    let mut w = w.to_vec();
    let mut perm = ident.clone();
    if isotropic(&w[1..]) {
        let i = (1..n)
            .find(|&i| !isotropic(&without(&w, i)))
            .ok_or_else(|| Error::Isotropic(sq(&w)))?;
        perm.swap_rows(0, i);
        w.swap(0, i);
        perms.push(Transposition {
            i: offset,
            j: offset + i,
        });
    }
    let tail = single_block(&w[1..], offset + 1, perms)?;
    let b = embed(tail, n);
    let wb = mat_vec(&b, &w);
    let (a, c) = (wb[0], wb[1]);
    let norm = (a * a + c * c).sqrt();
    if norm.norm() == 0.0 {
        return Err(Error::Isotropic(a * a + c * c));
    }
    let mut g = ident;
    g[(0, 0)] = a / norm;
    g[(0, 1)] = c / norm;
    g[(1, 0)] = -c / norm;
    g[(1, 1)] = a / norm;
    Ok(g * b * perm)
}

/// Reduces one anisotropic vector to `(sqrt(v.v), 0, ..., 0)`.
///
/// A vector whose tail is already zero is left alone (`M = 1`).
pub fn reduce_single(v: &[C64]) -> Result<FrameReduction> {
    if v.is_empty() || isotropic(v) {
        return Err(Error::Isotropic(sq(v)));
    }
    let mut perms = vec![];
    let m = single_block(v, 0, &mut perms)?;
    let reduced = vec![mat_vec(&m, v)];
    Ok(FrameReduction {
        m,
        reduced,
        permutations_applied: perms,
    })
}

/// Triangularizes `vs`: `(M v_i)_j = 0` for `j >= i` (1-based `i`).
///
/// Fails with the order of the first vanishing leading Gram minor.
pub fn reduce_frame(vs: &[CVec]) -> Result<FrameReduction> {
    let Some(first) = vs.first() else {
        return Ok(FrameReduction::identity(vs));
    };
    let d = first.len();
    for v in vs {
        if v.len() != d {
            return Err(Error::LengthMismatch(d, v.len()));
        }
    }
    if vs.len() > d {
        return Err(Error::DegenerateFrame { minor: d + 1 });
    }
    let mut m = DMatrix::identity(d, d);
    let mut perms = vec![];
    for (j, v) in vs.iter().enumerate() {
        let w = mat_vec(&m, v);
        let scale = norm2(&w).max(norm2(v));
        let tail = &w[j..];
        if scale == 0.0 || sq(tail).norm() < ISOTROPY * scale {
            return Err(Error::DegenerateFrame { minor: j + 1 });
        }
        let block = single_block(tail, j, &mut perms)?;
        m = embed(block, d) * m;
    }
    let reduced = vs.iter().map(|v| mat_vec(&m, v)).collect();
    Ok(FrameReduction {
        m,
        reduced,
        permutations_applied: perms,
    })
}

/// True when `(v_i)_j` vanishes (relative to `tol * scale`) for `j >= i` and the
/// diagonal entries do not.
pub fn is_triangular(vs: &[CVec], tol: f64) -> bool {
    let scale = vs.iter().map(|v| norm2(v).sqrt()).fold(0.0, f64::max);
    triangular_pattern(vs, tol, scale)
}

fn triangular_pattern(vs: &[CVec], tol: f64, scale: f64) -> bool {
    vs.iter().enumerate().all(|(idx, v)| {
        let i = idx + 1;
        v.len() >= i && v[i..].iter().all(|z| z.norm() <= tol * scale) && v[i - 1].norm() > tol * scale
    })
}

/// Returns `vs` unchanged with an identity frame when already triangular,
/// otherwise the reduction.
pub fn triangular_frame(vs: &[CVec]) -> Result<FrameReduction> {
    let scale = vs.iter().map(|v| norm2(v).sqrt()).fold(0.0, f64::max);
    if triangular_pattern(vs, 1e-14, scale) {
        Ok(FrameReduction::identity(vs))
    } else {
        reduce_frame(vs)
    }
}
