//! Box channel coefficients. a_y y^2 + b_y y + c_y vanishes exactly where the box
//! vanishing-sphere radius does, for y in {s, v, w}.
//!
//! Invariants are negative squares: s = -p1^2, t = -p2^2, u = -p3^2,
//! v = -(p1+p2)^2, w = -(p1+p3)^2, x = -(p2+p3)^2.
//! Polynomials are kept in their original grouping, not simplified.

use num_complex::Complex64 as C64;

pub(crate) fn coeffs_s(inv: [C64; 6], m: [C64; 4]) -> [C64; 3] {
    let [_, t, u, v, w, x] = inv;
    let [m1, m2, m3, m4] = m;
    // a_s
    let a = 1.0 / 16.0 * (m2.powi(4) - 2.0 * m2.powi(2) * (2.0 * m3.powi(2) - m4.powi(2) + t + u) + 4.0 * m3.powi(4) - 4.0 * m3.powi(2) * (m4.powi(2) + t + u - x) + (-m4.powi(2) + t + u).powi(2));
    // b_s
    let b = 1.0 / 8.0 * (m2.powi(2) * (m3.powi(2) * (-t - 3.0 * u + v + 3.0 * w + 2.0 * x) + m4.powi(2) * (2.0 * u - v - w - x) - 2.0 * t.powi(2) + t * (-4.0 * u + v + 2.0 * (w + x)) - 2.0 * u.powi(2) + u * (4.0 * v + w + x) - v * x) + m3.powi(2) * (2.0 * m3.powi(2) * (t + u - v - w - x) + 2.0 * x * (2.0 * t + 2.0 * u - v - w) - (3.0 * t + u) * (t + u - v - w) - 2.0 * x.powi(2)) + m4.powi(2) * (m3.powi(2) * (-t - 3.0 * u + 3.0 * v + w + 2.0 * x) + t * (-2.0 * v + w + x) + v * (u + x)) + m2.powi(4) * (t + 2.0 * u - w - x) + m1.powi(2) * (m2.powi(2) * (-t - 3.0 * u + x) + m4.powi(2) * (3.0 * t + u - x) + (t - u) * (-2.0 * m3.powi(2) + t + u - x)) - m4.powi(4) * (t + v) - x * (t.powi(2) + t * (u - v) + u * v) + t * (t + u) * (t + u - v - w));
    // c_s
    let c = 1.0 / 16.0 * (m2.powi(4) * (t.powi(2) + 4.0 * t * u - 2.0 * t * (w + x) + 4.0 * u.powi(2) - 4.0 * u * (v + w + x) + (w + x).powi(2)) + m1.powi(4) * (t.powi(2) - 2.0 * t * (u + x) + (u - x).powi(2)) + 2.0 * m1.powi(2) * (-m2.powi(2) * (t.powi(2) + t * (u - w - 2.0 * x) + 2.0 * u.powi(2) - u * (2.0 * v + w + 3.0 * x) + x * (w + x)) + m3.powi(2) * (-t.powi(2) + t * (v + w + x) + u.powi(2) - u * (v + w + x) + x * (w - v)) + m4.powi(2) * (t.powi(2) + t * (3.0 * u - v - 2.0 * w - x) + v * (x - u)) + t.powi(3) - t.powi(2) * (v + w + 2.0 * x) + t * (-u.powi(2) + u * (v + w - 2.0 * x) + x * (2.0 * v + w + x)) + v * x * (u - x)) - 2.0 * m2.powi(2) * (m4.powi(2) * (t.powi(2) + t * (2.0 * u - v - w - x) + v * (x - w)) + m3.powi(2) * (x * (t - u - v + w) - (t - 2.0 * u + w) * (t + u - v - w)) + t.powi(3) + t.powi(2) * (3.0 * u - v - 2.0 * (w + x)) + t * (2.0 * u.powi(2) - 4.0 * u * v - 3.0 * u * (w + x) + v * (w + 2.0 * x) + (w + x).powi(2)) + v * (-2.0 * u.powi(2) + 2.0 * u * (v + w + x) - x * (w + x))) + (m3.powi(2) * (-t - u + v + w) + m4.powi(2) * (t - v) + t * (t + u - v - w) + x * (v - t)).powi(2));
    [a, b, c]
}

pub(crate) fn coeffs_v(inv: [C64; 6], m: [C64; 4]) -> [C64; 3] {
    let [s, t, u, _, w, x] = inv;
    let [m1, m2, m3, m4] = m;
    // a_v
    let a = 1.0 / 16.0 * ((-m3.powi(2) + m4.powi(2) + t - x).powi(2) - 4.0 * m2.powi(2) * u);
    // b_v
    let b = 1.0 / 8.0 * (m2.powi(2) * (m3.powi(2) * (s - t + 2.0 * u - w + x) + m4.powi(2) * (-s + t + w - x) - x * (s + 2.0 * (t + u) - w) + s * t + 4.0 * s * u + t.powi(2) + 4.0 * t * u - t * w + 2.0 * u.powi(2) - 2.0 * u * w + x.powi(2)) + m4.powi(2) * (m3.powi(2) * (3.0 * s + 2.0 * t + u - w) + s * (-2.0 * t + u + x) + t * (-2.0 * t - u + w + 2.0 * x)) + m3.powi(2) * (m3.powi(2) * -(2.0 * s + t + u - w) + s * (3.0 * t + u - 2.0 * x) + x * (-2.0 * t - u + w) + 2.0 * t * (t + u - w)) - m4.powi(4) * (s + t) + m1.powi(2) * (m3.powi(2) * (t - u - x) - m4.powi(2) * (t + u - x) + 2.0 * m2.powi(2) * u - t.powi(2) + t * (u + 2.0 * x) + x * (u - x)) - 2.0 * m2.powi(4) * u + s * x * (t - u) - s * t * (t + u) - t * (t - x) * (t + u - w - x));
    // c_v
    let c = 1.0 / 16.0 * (-2.0 * m2.powi(2) * (m3.powi(2) * (2.0 * s.powi(2) + s * (t + 3.0 * u - 3.0 * w - 2.0 * x) - t.powi(2) + t * (u + x) + (u - w) * (2.0 * u - w - x)) + (s + t + 2.0 * u - w - x) * (m4.powi(2) * (t - s) + s * (t + u) + t * (t + u - w - x))) - 2.0 * m4.powi(2) * (m3.powi(2) * (2.0 * s.powi(2) + s * (t + 3.0 * u - w - 2.0 * x) + t * (t + u - w)) + (s - t) * (s * (t + u) + t * (t + u - w - x))) - 4.0 * m3.powi(2) * s.powi(2) * t - 4.0 * m3.powi(2) * s.powi(2) * u + 4.0 * m3.powi(2) * s.powi(2) * x + 4.0 * m3.powi(4) * s.powi(2) + 2.0 * m1.powi(2) * (m2.powi(2) * -(s * (t + 3.0 * u - x) + t.powi(2) + t * (u - w - 2.0 * x) + (u - x) * (2.0 * u - w - x)) + m3.powi(2) * (x * (t - u + w) - (t - u) * (2.0 * s + t + u - w)) + m4.powi(2) * (s * (3.0 * t + u - x) + t * (t + 3.0 * u - 2.0 * w - x)) + s * (t - u) * (t + u - x) + t * (x * (w - 2.0 * (t + u)) + (t - u) * (t + u - w) + x.powi(2))) - 6.0 * m3.powi(2) * s * t.powi(2) + m2.powi(4) * (s + t + 2.0 * u - w - x).powi(2) - 8.0 * m3.powi(2) * s * t * u + 6.0 * m3.powi(2) * s * t * w + 8.0 * m3.powi(2) * s * t * x + 4.0 * m3.powi(4) * s * t + m4.powi(4) * (s - t).powi(2) - 2.0 * m3.powi(2) * s * u.powi(2) + 2.0 * m3.powi(2) * s * u * w + 8.0 * m3.powi(2) * s * u * x + 4.0 * m3.powi(4) * s * u - 4.0 * m3.powi(2) * s * w * x - 4.0 * m3.powi(4) * s * w - 4.0 * m3.powi(2) * s * x.powi(2) - 4.0 * m3.powi(4) * s * x - 2.0 * m3.powi(2) * t.powi(3) + m1.powi(4) * (t.powi(2) - 2.0 * t * (u + x) + (u - x).powi(2)) - 4.0 * m3.powi(2) * t.powi(2) * u + 4.0 * m3.powi(2) * t.powi(2) * w + 2.0 * m3.powi(2) * t.powi(2) * x + m3.powi(4) * t.powi(2) - 2.0 * m3.powi(2) * t * u.powi(2) + 4.0 * m3.powi(2) * t * u * w + 2.0 * m3.powi(2) * t * u * x + 2.0 * m3.powi(4) * t * u - 2.0 * m3.powi(2) * t * w.powi(2) - 2.0 * m3.powi(2) * t * w * x - 2.0 * m3.powi(4) * t * w + m3.powi(4) * u.powi(2) - 2.0 * m3.powi(4) * u * w + m3.powi(4) * w.powi(2) + (s * (t + u) + t * (t + u - w - x)).powi(2));
    [a, b, c]
}

pub(crate) fn coeffs_w(inv: [C64; 6], m: [C64; 4]) -> [C64; 3] {
    let [s, t, u, v, _, x] = inv;
    let [m1, m2, m3, m4] = m;
    // a_w
    let a = 1.0 / 16.0 * (-2.0 * m2.powi(2) * (m3.powi(2) + t) + (t - m3.powi(2)).powi(2) + m2.powi(4));
    // b_w
    let b = 1.0 / 8.0 * (m2.powi(2) * (m4.powi(2) * (-s + t + v) + m3.powi(2) * (3.0 * s + 3.0 * u - v - x) + 2.0 * s * t + s * u + 2.0 * t.powi(2) + 3.0 * t * u - t * v - 2.0 * t * x - 2.0 * u * v + v * x) + m3.powi(2) * (m3.powi(2) * -(2.0 * s + t + u - v) + s * (3.0 * t + u - 2.0 * x) + 2.0 * t * (t + u - v) + x * (v - t)) + m2.powi(4) * -(s + t + 2.0 * u - x) + m4.powi(2) * (m3.powi(2) * (s + t - v) + t * (s - t + v)) + m1.powi(2) * (m2.powi(2) * (t + u - x) + m3.powi(2) * (t - u + x) + t * (-2.0 * m4.powi(2) - t + u + x)) - t * (s * (t + u) + t.powi(2) + t * (u - v - x) + v * x));
    // c_w
    let c = 1.0 / 16.0 * ((t.powi(2) - 2.0 * (u + x) * t + (u - x).powi(2)) * m1.powi(4) + 2.0 * ((t - v) * x.powi(2) + (s * (u - t) - 2.0 * t * (t + u) + (2.0 * t + u) * v) * x - (t.powi(2) + s * t + u * t + 2.0 * u.powi(2) + x.powi(2) + 3.0 * s * u - 2.0 * u * v - (s + 2.0 * t + 3.0 * u) * x) * m2.powi(2) - ((t - u) * (2.0 * s + t + u - v) + (-t + u + v) * x) * m3.powi(2) + (t.powi(2) + 3.0 * s * t + 3.0 * u * t - v * t + s * u - u * v - (s + t - v) * x) * m4.powi(2) + (t - u) * ((s + t) * (t + u) - t * v)) * m1.powi(2) + (s.powi(2) + 2.0 * t * s + 4.0 * u * s + t.powi(2) + 4.0 * u.powi(2) + x.powi(2) + 4.0 * t * u - 4.0 * u * v - 2.0 * (s + t + 2.0 * u) * x) * m2.powi(4) + 4.0 * s.powi(2) * m3.powi(4) + t.powi(2) * m3.powi(4) + u.powi(2) * m3.powi(4) + v.powi(2) * m3.powi(4) + 4.0 * s * t * m3.powi(4) + 4.0 * s * u * m3.powi(4) + 2.0 * t * u * m3.powi(4) - 4.0 * s * v * m3.powi(4) - 2.0 * t * v * m3.powi(4) - 2.0 * u * v * m3.powi(4) - 4.0 * s * x * m3.powi(4) + (s.powi(2) - 2.0 * (t + v) * s + (t - v).powi(2)) * m4.powi(4) + ((s + t) * (t + u) - t * v).powi(2) + (t - v).powi(2) * x.powi(2) - 2.0 * t.powi(3) * m3.powi(2) - 6.0 * s * t.powi(2) * m3.powi(2) - 2.0 * s * u.powi(2) * m3.powi(2) - 2.0 * t * u.powi(2) * m3.powi(2) - 2.0 * t * v.powi(2) * m3.powi(2) - 4.0 * s * x.powi(2) * m3.powi(2) - 4.0 * s.powi(2) * t * m3.powi(2) - 4.0 * s.powi(2) * u * m3.powi(2) - 4.0 * t.powi(2) * u * m3.powi(2) - 8.0 * s * t * u * m3.powi(2) + 4.0 * t.powi(2) * v * m3.powi(2) + 6.0 * s * t * v * m3.powi(2) + 2.0 * s * u * v * m3.powi(2) + 4.0 * t * u * v * m3.powi(2) + 4.0 * s.powi(2) * x * m3.powi(2) + 2.0 * t.powi(2) * x * m3.powi(2) + 2.0 * v.powi(2) * x * m3.powi(2) + 8.0 * s * t * x * m3.powi(2) + 8.0 * s * u * x * m3.powi(2) + 2.0 * t * u * x * m3.powi(2) - 4.0 * s * v * x * m3.powi(2) - 4.0 * t * v * x * m3.powi(2) - 2.0 * u * v * x * m3.powi(2) - 2.0 * ((t + u) * s.powi(2) + (2.0 * t - u) * v * s - (t + v) * x * s + (2.0 * s.powi(2) + (t + 3.0 * u - 3.0 * v - 2.0 * x) * s + (t - v) * (t + u - v)) * m3.powi(2) + (t - v) * ((t - v) * x - t * (t + u - v))) * m4.powi(2) - 2.0 * (t * (t - v) * (t + u - v) + s * (t.powi(2) + (u - v) * t + u * v)) * x - 2.0 * m2.powi(2) * (t.powi(3) + (3.0 * u - v - 2.0 * x) * t.powi(2) + (2.0 * u - x) * (u - 2.0 * v - x) * t + (2.0 * s.powi(2) + (t + 3.0 * u - v - 2.0 * x) * s - t.powi(2) + 2.0 * u * (u - v) - (u + v) * x + t * (u + v + x)) * m3.powi(2) + ((s - t + v) * x - (s - t) * (s + t + 2.0 * u - v)) * m4.powi(2) + s.powi(2) * (t + u) + v * (-2.0 * u.powi(2) + 2.0 * (v + x) * u - x.powi(2)) + s * (2.0 * t.powi(2) + (4.0 * u - v - 2.0 * x) * t + 2.0 * u.powi(2) + v * x - u * (4.0 * v + x))));
    [a, b, c]
}
