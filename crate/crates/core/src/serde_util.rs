use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::ser::SerializeSeq;
use serde::Serializer;

/// Row-major nested arrays of `[re, im]` pairs.
pub(crate) fn matrix<S: Serializer>(m: &DMatrix<C64>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for r in 0..m.nrows() {
        let row: Vec<C64> = m.row(r).iter().copied().collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}
