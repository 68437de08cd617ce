use crate::dimgroup::EssentialMatrix;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVec};

/// A pair `(v, k)` with `k` a residue mod `m`, naming a class of the
/// `Z/mZ`-graded group: `(v, k) ~ (w, l)` iff `(A^t)^p v = (A^t)^q w` for
/// some `p, q` with `p + k = q + l (mod m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZModClass {
    v: IntVec,
    k: u32,
    modulus: u32,
    matrix: EssentialMatrix,
}

impl ZModClass {
    pub fn new(matrix: &EssentialMatrix, v: IntVec, k: u32, modulus: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        if v.len() != matrix.size() {
            return Err(Error::LengthMismatch { expected: matrix.size(), found: v.len() });
        }
        Ok(ZModClass { v, k: k % modulus, modulus, matrix: matrix.clone() })
    }

    pub fn vector(&self) -> &[num_bigint::BigInt] {
        &self.v
    }

    pub fn residue(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `2 (|A| + m)`
    pub fn default_bound(&self) -> u32 {
        2 * (self.matrix.size() as u32 + self.modulus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZModEquality {
    Equal { p: u32, q: u32 },
    NotEqualWithinBound { bound: u32 },
}

/// Searches `p, q <= bound` in order of `p + q`, then `p`.
pub fn zmod_equal(a: &ZModClass, b: &ZModClass, bound: Option<u32>) -> Result<ZModEquality> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch { left: a.modulus, right: b.modulus });
    }
    if !a.matrix.same_as(&b.matrix) {
        return Err(Error::MatrixMismatch);
    }
    let bound = bound.unwrap_or_else(|| a.default_bound());
    let at = a.matrix.matrix().transpose();
    let orbit = |v: &IntVec| -> Result<Vec<IntVec>> {
        let mut out = vec![v.clone()];
        for _ in 0..bound {
            let next = at.mul_vec(&out[out.len() - 1])?;
            out.push(next);
        }
        Ok(out)
    };
    let (left, right) = (orbit(&a.v)?, orbit(&b.v)?);
    let m = u64::from(a.modulus);
    for total in 0..=2 * bound {
        for p in total.saturating_sub(bound)..=total.min(bound) {
            let q = total - p;
            if (u64::from(p) + u64::from(a.k)) % m != (u64::from(q) + u64::from(b.k)) % m {
                continue;
            }
            if left[p as usize] == right[q as usize] {
                return Ok(ZModEquality::Equal { p, q });
            }
        }
    }
    Ok(ZModEquality::NotEqualWithinBound { bound })
}

/// `A R B^(k m) = B R`, exactly as stated; both sides only typecheck when
/// `|A| = |B|`.
pub fn zmod_intertwiner_check(r: &IntMatrix, a: &EssentialMatrix, b: &EssentialMatrix, m: u32, k: u32) -> Result<bool> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if a.size() != b.size() {
        return Err(Error::dims("A R B^(km) = B R", a.shape(), b.shape()));
    }
    if r.shape() != (a.size(), b.size()) {
        return Err(Error::dims("R", (a.size(), b.size()), r.shape()));
    }
    let e = k.checked_mul(m).ok_or(Error::CoefficientOverflow)?;
    Ok(a.matrix().mul(r)?.mul(&b.matrix().pow(e)?)? == b.matrix().mul(r)?)
}

/// Least `k <= k_max` passing [`zmod_intertwiner_check`].
pub fn zmod_intertwiner_search(
    r: &IntMatrix,
    a: &EssentialMatrix,
    b: &EssentialMatrix,
    m: u32,
    k_max: u32,
) -> Result<Option<u32>> {
    for k in 0..=k_max {
        if zmod_intertwiner_check(r, a, b, m, k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
