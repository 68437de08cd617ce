use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::int_matrix::IntMatrix;
use crate::error::{Error, Result};

pub type RatVec = Vec<BigRational>;

/// Dense row-major matrix of exact rationals. `BigRational` keeps every entry
/// in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidShape { rows, cols, len: data.len() });
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[RatVec]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidShape { rows: r, cols: c, len: rows.iter().map(Vec::len).sum() });
        }
        RatMatrix::new(r, c, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrices have at least one row and column");
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row_slice(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column_vec(&self, c: usize) -> RatVec {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<RatVec> {
        (0..self.rows).map(|r| self.row_slice(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        RatMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::dims("mul", self.shape(), rhs.shape()));
        }
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::dims("sub", self.shape(), rhs.shape()));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(BigRational::is_integer)
    }

    /// Integer matrix if every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        IntMatrix::new(self.rows, self.cols, self.data.iter().map(|x| x.to_integer()).collect()).ok()
    }

    /// Reduced row echelon form, together with the pivot column of each
    /// nonzero row.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in 0..m.cols {
                let x = m.get(row, c) * &inv;
                m.set(row, c, x);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in 0..m.cols {
                    let x = m.get(r, c) - &f * m.get(row, c);
                    m.set(r, c, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, BigRational::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl From<&IntMatrix> for RatMatrix {
    fn from(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row_slice(r).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_rat_vec(v: &[BigInt]) -> RatVec {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Integer vector if every entry is integral.
pub fn to_int_vec(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Least common multiple of the denominators of `v` (1 for an empty vector).
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Row vector times integer matrix, exactly.
pub fn rat_vec_mul(v: &[BigRational], m: &IntMatrix) -> Result<RatVec> {
    if v.len() != m.rows() {
        return Err(Error::dims("vec_mul", (1, v.len()), m.shape()));
    }
    let mut out = vec![BigRational::zero(); m.cols()];
    for (r, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (c, o) in out.iter_mut().enumerate() {
            let a = m.get(r, c);
            if !a.is_zero() {
                *o += x * BigRational::from_integer(a.clone());
            }
        }
    }
    Ok(out)
}
