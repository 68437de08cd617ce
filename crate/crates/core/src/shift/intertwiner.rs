use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, IntMatrix, IntVec};

/// Matrix of `X -> AX - XB` on `X` of shape `|A| x |B|`, flattened row-major.
pub fn intertwiner_operator(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    let (n, p) = (a.rows(), b.rows());
    let dim = n * p;
    let mut op = IntMatrix::zeros(dim, dim);
    for i in 0..n {
        for j in 0..p {
            let row = i * p + j;
            // (AX)_ij = sum_k A_ik X_kj
            for k in 0..n {
                let entry = op.get(row, k * p + j) + a.get(i, k);
                op.set(row, k * p + j, entry);
            }
            // (XB)_ij = sum_k X_ik B_kj
            for k in 0..p {
                let entry = op.get(row, i * p + k) - b.get(k, j);
                op.set(row, i * p + k, entry);
            }
        }
    }
    Ok(op)
}

/// Z-basis of the lattice `{R integral : AR = RB}`, LLL-reduced.
pub fn solve_intertwiners(a: &IntMatrix, b: &IntMatrix) -> Result<Vec<IntMatrix>> {
    let op = intertwiner_operator(a, b)?;
    Ok(integer_kernel(&op).into_iter().map(|v| unflatten(v, a.rows(), b.rows())).collect())
}

pub(crate) fn unflatten(v: IntVec, rows: usize, cols: usize) -> IntMatrix {
    IntMatrix::new(rows, cols, v).expect("length rows*cols")
}

/// `sum_i c_i basis_i` as a `shape` matrix; the empty sum is zero.
pub fn combine(shape: (usize, usize), basis: &[IntMatrix], coefficients: &[BigInt]) -> Result<IntMatrix> {
    if coefficients.len() != basis.len() {
        return Err(Error::LengthMismatch { expected: basis.len(), found: coefficients.len() });
    }
    let (rows, cols) = shape;
    let mut data = vec![BigInt::zero(); rows * cols];
    for (m, c) in basis.iter().zip(coefficients) {
        if m.shape() != shape {
            return Err(Error::dims("combine", shape, m.shape()));
        }
        if c.is_zero() {
            continue;
        }
        for (d, x) in data.iter_mut().zip(m.entries()) {
            *d += c * x;
        }
    }
    IntMatrix::new(rows, cols, data)
}
