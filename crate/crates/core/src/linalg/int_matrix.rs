use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer vector, used for column vectors acted on by `A^t` and for kernel
/// bases.
pub type IntVec = Vec<BigInt>;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidShape { rows, cols, len: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidShape { rows: r, cols: c, len: rows.iter().map(Vec::len).sum() });
        }
        let data = rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect();
        IntMatrix::new(r, c, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrices have at least one row and column");
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Single-column matrix holding `v`.
    pub fn column(v: &[BigInt]) -> Result<Self> {
        IntMatrix::new(v.len(), 1, v.to_vec())
    }

    /// Single-row matrix holding `v`.
    pub fn row(v: &[BigInt]) -> Result<Self> {
        IntMatrix::new(1, v.len(), v.to_vec())
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.data[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row_slice(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column_vec(&self, c: usize) -> IntVec {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<IntVec> {
        (0..self.rows).map(|r| self.row_slice(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        IntMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::dims("mul", self.shape(), rhs.shape()));
        }
        let mut data = vec![BigInt::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(IntMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<IntVec> {
        if self.cols != v.len() {
            return Err(Error::dims("mul_vec", self.shape(), (v.len(), 1)));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row_slice(r).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
            })
            .collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> Result<IntVec> {
        if self.rows != v.len() {
            return Err(Error::dims("vec_mul", (1, v.len()), self.shape()));
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += x * a;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    fn zip_with(&self, rhs: &IntMatrix, op: &'static str, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<IntMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::dims(op, self.shape(), rhs.shape()));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// `self^e` by repeated squaring; `e = 0` gives the identity.
    pub fn pow(&self, e: u32) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut result = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    /// Position of the first negative entry, if any.
    pub fn first_negative(&self) -> Option<(usize, usize)> {
        self.data.iter().position(Signed::is_negative).map(|i| (i / self.cols, i % self.cols))
    }

    /// Index of the first all-zero row.
    pub fn first_zero_row(&self) -> Option<usize> {
        (0..self.rows).find(|&r| self.row_slice(r).iter().all(Zero::is_zero))
    }

    pub fn row_sums(&self) -> IntVec {
        (0..self.rows).map(|r| self.row_slice(r).iter().sum()).collect()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let delta = k * &self.data[src * self.cols + c];
            self.data[dst * self.cols + c] += delta;
        }
    }

    /// col[dst] += k * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let delta = k * &self.data[r * self.cols + src];
            self.data[r * self.cols + dst] += delta;
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let x = std::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = -x;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (i, x) in self.row_slice(r).iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Shorthand for building integer vectors in tests and examples.
pub fn int_vec<T: Into<BigInt> + Copy>(xs: &[T]) -> IntVec {
    xs.iter().map(|&x| x.into()).collect()
}
