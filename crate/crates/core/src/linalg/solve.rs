use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rat_matrix::{RatMatrix, RatVec};
use crate::error::{Error, Result};

/// Basis of the right null space `{x : a x = 0}` over Q, read off the reduced
/// row echelon form (one vector per free column).
pub fn rational_kernel(a: &RatMatrix) -> Vec<RatVec> {
    let (r, pivots) = a.rref();
    let n = a.cols();
    let mut is_pivot = vec![None; n];
    for (row, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(row);
    }
    (0..n)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut x = vec![BigRational::zero(); n];
            x[free] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -r.get(row, free).clone();
            }
            x
        })
        .collect()
}

/// Solves `a x = b` over Q. Returns `None` iff the system is inconsistent;
/// otherwise a particular solution (free variables set to zero) and a basis of
/// the kernel of `a`.
pub fn rational_solve(a: &RatMatrix, b: &RatMatrix) -> Result<Option<(RatMatrix, Vec<RatVec>)>> {
    if a.rows() != b.rows() {
        return Err(Error::dims("rational_solve", a.shape(), b.shape()));
    }
    let (n, k) = (a.cols(), b.cols());
    let mut aug = RatMatrix::zeros(a.rows(), n + k);
    for r in 0..a.rows() {
        for c in 0..n {
            aug.set(r, c, a.get(r, c).clone());
        }
        for c in 0..k {
            aug.set(r, n + c, b.get(r, c).clone());
        }
    }
    let (red, pivots) = aug.rref();
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = RatMatrix::zeros(n, k);
    for (row, &p) in pivots.iter().enumerate() {
        for c in 0..k {
            x.set(p, c, red.get(row, n + c).clone());
        }
    }
    Ok(Some((x, rational_kernel(a))))
}
