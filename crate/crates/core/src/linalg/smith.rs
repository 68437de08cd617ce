use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::int_matrix::IntMatrix;

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Smith normal form by alternating row and column gcd elimination, always
/// pivoting on the smallest nonzero absolute value left in the active block.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&d, t..m, t..n) else {
            break;
        };
        move_pivot(&mut d, &mut u, &mut v, t, pi, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(d.get(i, t) / d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(d.get(t, j) / d.get(t, t));
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !d.get(t, j).is_zero();
            }
            if dirty {
                // A remainder survived; it is smaller than the pivot.
                let (pi, pj) = smallest_in_cross(&d, t);
                move_pivot(&mut d, &mut u, &mut v, t, pi, pj);
                continue;
            }
            // Row and column cleared. Enforce divisibility of the rest.
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, v, d }
}

fn smallest_nonzero(
    d: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn smallest_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let col = smallest_nonzero(d, t..d.rows(), t..t + 1);
    let row = smallest_nonzero(d, t..t + 1, t..d.cols());
    match (col, row) {
        (Some(c), Some(r)) => {
            if d.get(c.0, c.1).abs() <= d.get(r.0, r.1).abs() {
                c
            } else {
                r
            }
        }
        (Some(c), None) => c,
        (None, Some(r)) => r,
        (None, None) => (t, t),
    }
}

fn move_pivot(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize, i: usize, j: usize) {
    d.swap_rows(t, i);
    u.swap_rows(t, i);
    d.swap_cols(t, j);
    v.swap_cols(t, j);
}
