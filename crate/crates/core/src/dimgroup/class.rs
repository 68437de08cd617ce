use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::EssentialMatrix;
use crate::error::{Error, Result};
use crate::linalg::IntVec;

/// A class `[v, k]` of the dimension group `G_A`, i.e. the image of `v` at
/// stage `k` of `Z^n --A^t--> Z^n --A^t--> ...`.
///
/// Two representatives name the same class when `(A^t)^(m-k) v` and
/// `(A^t)^(m-l) w` agree for some `m`; use [`DimClass::equal`], never
/// componentwise comparison.
#[derive(Clone)]
pub struct DimClass {
    v: IntVec,
    k: u32,
    matrix: EssentialMatrix,
}

/// Bounded semi-decision for membership in the positive cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeMembership {
    /// `(A^t)^j v` is entrywise nonnegative for this least `j`.
    InCone(u32),
    /// No nonnegative representative found up to this power.
    Unknown(u32),
}

impl DimClass {
    pub fn new(matrix: &EssentialMatrix, v: IntVec, k: u32) -> Result<Self> {
        if v.len() != matrix.size() {
            return Err(Error::LengthMismatch { expected: matrix.size(), found: v.len() });
        }
        Ok(DimClass { v, k, matrix: matrix.clone() })
    }

    pub fn zero(matrix: &EssentialMatrix) -> Self {
        DimClass { v: vec![BigInt::zero(); matrix.size()], k: 0, matrix: matrix.clone() }
    }

    /// `[e_i, 0]`
    pub fn generator(matrix: &EssentialMatrix, i: usize) -> Result<Self> {
        let n = matrix.size();
        if i >= n {
            return Err(Error::VertexOutOfRange { vertex: i, size: n });
        }
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::one();
        Ok(DimClass { v, k: 0, matrix: matrix.clone() })
    }

    pub fn vector(&self) -> &[BigInt] {
        &self.v
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn matrix(&self) -> &EssentialMatrix {
        &self.matrix
    }

    fn same_group(&self, other: &DimClass) -> Result<()> {
        if self.matrix.same_as(&other.matrix) {
            Ok(())
        } else {
            Err(Error::MatrixMismatch)
        }
    }

    /// Representative vector lifted to a later stage: `(A^t)^(m - k) v`.
    fn at_stage(&self, m: u32) -> IntVec {
        debug_assert!(m >= self.k);
        self.matrix.transpose_pow(m - self.k).mul_vec(&self.v).expect("length checked")
    }

    /// Quotient equality. The kernels of `(A^t)^j` stabilize by `j = |A|`,
    /// so the existential over `m` reduces to one test at a common stage.
    pub fn equal(&self, other: &DimClass) -> Result<bool> {
        self.same_group(other)?;
        let m = self.k.max(other.k);
        let d: IntVec = self.at_stage(m).into_iter().zip(other.at_stage(m)).map(|(a, b)| a - b).collect();
        let n = self.matrix.size() as u32;
        let killed = self.matrix.transpose_pow(n).mul_vec(&d)?;
        Ok(killed.iter().all(Zero::is_zero))
    }

    /// `[v, k] + [w, k'] = [(A^t)^k' v + (A^t)^k w, k + k']`
    pub fn add(&self, other: &DimClass) -> Result<DimClass> {
        self.same_group(other)?;
        let left = self.matrix.transpose_pow(other.k).mul_vec(&self.v)?;
        let right = self.matrix.transpose_pow(self.k).mul_vec(&other.v)?;
        Ok(DimClass {
            v: left.into_iter().zip(right).map(|(a, b)| a + b).collect(),
            k: self.k + other.k,
            matrix: self.matrix.clone(),
        })
    }

    pub fn neg(&self) -> DimClass {
        DimClass { v: self.v.iter().map(|x| -x).collect(), k: self.k, matrix: self.matrix.clone() }
    }

    /// `[v, k] -> [v, k + j]`: the same vector read at a later stage.
    pub fn delay(&self, j: u32) -> DimClass {
        DimClass { v: self.v.clone(), k: self.k + j, matrix: self.matrix.clone() }
    }

    /// Action of `x^power`: `x [v, k] = [A^t v, k]` and `x^-1 [v, k] = [v, k + 1]`.
    pub fn x_action(&self, power: i64) -> DimClass {
        if power >= 0 {
            let p = u32::try_from(power).expect("power fits in u32");
            DimClass {
                v: self.matrix.transpose_pow(p).mul_vec(&self.v).expect("length checked"),
                k: self.k,
                matrix: self.matrix.clone(),
            }
        } else {
            let p = u32::try_from(-power).expect("power fits in u32");
            self.delay(p)
        }
    }

    /// Looks for a nonnegative representative `[(A^t)^j v, k + j]` with
    /// `j <= max_power`.
    pub fn in_positive_cone(&self, max_power: u32) -> ConeMembership {
        let at = self.matrix.matrix().transpose();
        let mut w = self.v.clone();
        for j in 0..=max_power {
            if w.iter().all(|x| !x.is_negative()) {
                return ConeMembership::InCone(j);
            }
            if j < max_power {
                w = at.mul_vec(&w).expect("length checked");
            }
        }
        ConeMembership::Unknown(max_power)
    }

    /// Default cone bound, `50 |A|`.
    pub fn default_cone_bound(&self) -> u32 {
        50 * self.matrix.size() as u32
    }
}

/// `u_A = [(1, ..., 1), 0]`
pub fn order_unit(a: &EssentialMatrix) -> DimClass {
    DimClass { v: vec![BigInt::one(); a.size()], k: 0, matrix: a.clone() }
}

impl fmt::Debug for DimClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v.iter().map(ToString::to_string).collect();
        write!(f, "[({}), {}]", v.join(", "), self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn two() -> EssentialMatrix {
        EssentialMatrix::from_rows(&[vec![2]]).unwrap()
    }

    fn cls(a: &EssentialMatrix, v: &[i64], k: u32) -> DimClass {
        DimClass::new(a, int_vec(v), k).unwrap()
    }

    #[test]
    fn equality_examples() {
        let a = two();
        assert!(cls(&a, &[1], 0).equal(&cls(&a, &[2], 1)).unwrap());
        assert!(!cls(&a, &[1], 0).equal(&cls(&a, &[3], 0)).unwrap());
        let f = EssentialMatrix::from_rows(&[vec![1, 1], vec![1, 0]]).unwrap();
        let c = cls(&f, &[3, -2], 1);
        let shifted = c.x_action(4).delay(4);
        assert!(c.equal(&shifted).unwrap());
    }

    #[test]
    fn equality_needs_kernel_stabilization() {
        // A^t kills (1, -1) after one step: [(1,-1), 0] is the zero class.
        let a = EssentialMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(cls(&a, &[1, -1], 0).equal(&DimClass::zero(&a)).unwrap());
        assert!(!cls(&a, &[1, 0], 0).equal(&DimClass::zero(&a)).unwrap());
    }

    #[test]
    fn mismatched_groups() {
        let a = two();
        let b = EssentialMatrix::from_rows(&[vec![3]]).unwrap();
        assert_eq!(cls(&a, &[1], 0).equal(&cls(&b, &[1], 0)), Err(Error::MatrixMismatch));
        assert!(cls(&a, &[1], 0).add(&cls(&b, &[1], 0)).is_err());
        // Structurally equal matrices built separately name the same group.
        let a2 = two();
        assert!(cls(&a, &[1], 0).equal(&cls(&a2, &[1], 0)).unwrap());
    }

    #[test]
    fn addition_examples() {
        let a = two();
        let v = cls(&a, &[5], 0);
        let sum = v.add(&DimClass::zero(&a)).unwrap();
        assert_eq!(sum.vector(), v.vector());
        assert_eq!(sum.level(), 0);
        let s = cls(&a, &[1], 0).add(&cls(&a, &[1], 0)).unwrap();
        assert_eq!((s.vector().to_vec(), s.level()), (int_vec(&[2]), 0));
        let s = cls(&a, &[1], 0).add(&cls(&a, &[1], 1)).unwrap();
        assert_eq!((s.vector().to_vec(), s.level()), (int_vec(&[3]), 1));
        assert!(s.equal(&cls(&a, &[6], 2)).unwrap());
    }

    #[test]
    fn x_action_examples() {
        let a = two();
        let c = cls(&a, &[1], 0);
        assert_eq!(c.x_action(1).vector(), &int_vec(&[2])[..]);
        assert_eq!(c.x_action(0).vector(), c.vector());
        assert!(c.x_action(1).x_action(-1).equal(&c).unwrap());
        assert!(c.x_action(-1).x_action(1).equal(&c).unwrap());
    }

    #[test]
    fn cone_examples() {
        let f = EssentialMatrix::from_rows(&[vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(cls(&f, &[0, 2], 0).in_positive_cone(5), ConeMembership::InCone(0));
        assert_eq!(cls(&f, &[1, -1], 0).in_positive_cone(5), ConeMembership::InCone(1));
        assert_eq!(cls(&two(), &[-1], 0).in_positive_cone(10), ConeMembership::Unknown(10));
    }

    #[test]
    fn order_units() {
        assert_eq!(order_unit(&two()).vector(), &int_vec(&[1])[..]);
        let a3 = EssentialMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]).unwrap();
        let u = order_unit(&a3);
        assert_eq!(u.vector(), &int_vec(&[1, 1, 1])[..]);
        assert!(u.equal(&u.add(&DimClass::zero(&a3)).unwrap()).unwrap());
    }
}
