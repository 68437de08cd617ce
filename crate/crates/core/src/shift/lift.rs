use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dimgroup::{check_intertwiner, DimClass, EssentialMatrix};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A `Z[x, x^-1]`-module map `G_A -> G_B` given on generators:
/// `theta([e_i, 0]) = images[i]`, each with a nonnegative representative.
#[derive(Debug, Clone)]
pub struct GradedHomSpec {
    pub source: EssentialMatrix,
    pub target: EssentialMatrix,
    pub images: Vec<DimClass>,
}

impl GradedHomSpec {
    pub fn new(source: EssentialMatrix, target: EssentialMatrix, images: Vec<DimClass>) -> Result<Self> {
        let spec = GradedHomSpec { source, target, images };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.images.len() != self.source.size() {
            return Err(Error::MalformedSpec(format!(
                "{} generator images for {} source vertices",
                self.images.len(),
                self.source.size()
            )));
        }
        for (i, img) in self.images.iter().enumerate() {
            if !img.matrix().same_as(&self.target) {
                return Err(Error::MalformedSpec(format!("image {i} is not a class over the target matrix")));
            }
            if img.vector().iter().any(Signed::is_negative) {
                return Err(Error::MalformedSpec(format!("image {i} has a negative representative")));
            }
        }
        Ok(())
    }

    /// `theta([v, k]) = sum_i v_i theta([e_i, 0])`, read `k` stages later.
    pub fn evaluate(&self, c: &DimClass) -> Result<DimClass> {
        if !c.matrix().same_as(&self.source) {
            return Err(Error::MatrixMismatch);
        }
        let top = self.images.iter().map(DimClass::level).max().unwrap_or(0);
        let mut sum = vec![BigInt::zero(); self.target.size()];
        for (coeff, img) in c.vector().iter().zip(&self.images) {
            if coeff.is_zero() {
                continue;
            }
            let lifted = self.target.transpose_pow(top - img.level()).mul_vec(img.vector())?;
            for (s, x) in sum.iter_mut().zip(lifted) {
                *s += coeff * x;
            }
        }
        DimClass::new(&self.target, sum, top + c.level())
    }

    /// Spot check of `theta(x c) = x theta(c)` on one class.
    pub fn commutes_with_x(&self, c: &DimClass) -> Result<bool> {
        self.evaluate(&c.x_action(1))?.equal(&self.evaluate(c)?.x_action(1))
    }
}

/// `R` with `AR = RB` realizing a module map up to a degree shift:
/// `theta([v, k]) = [R^t v, k + shift]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftResult {
    pub r: IntMatrix,
    pub shift: u32,
    /// `sum_i l_i`
    pub s: u32,
    /// Least power of `B` that made `R` an intertwiner.
    pub ell: u32,
}

impl LiftResult {
    pub fn apply(&self, c: &DimClass, target: &EssentialMatrix) -> Result<DimClass> {
        DimClass::new(target, self.r.transpose().mul_vec(c.vector())?, c.level() + self.shift)
    }
}

/// Recovers a matrix from generator images.
///
/// Bringing every image to the common level `s = sum l_i` gives columns
/// `(B^t)^(s - l_i) v_i` of `R'^t`. Equivariance only holds after some power
/// of `B^t`; since the kernels of `(B^t)^l` stop growing at `l = |B|`, the
/// least such `l` is found by trying `0..=|B|`.
pub fn lift_hom_to_matrix(spec: &GradedHomSpec) -> Result<LiftResult> {
    spec.validate()?;
    let (n, p) = (spec.source.size(), spec.target.size());
    let s: u32 = spec.images.iter().map(DimClass::level).sum();
    let mut r_prime_t = IntMatrix::zeros(p, n);
    for (i, img) in spec.images.iter().enumerate() {
        let col = spec.target.transpose_pow(s - img.level()).mul_vec(img.vector())?;
        for (j, x) in col.into_iter().enumerate() {
            r_prime_t.set(j, i, x);
        }
    }
    let bt = spec.target.matrix().transpose();
    let at = spec.source.matrix().transpose();
    let mut defect = r_prime_t.mul(&at)?.sub(&bt.mul(&r_prime_t)?)?;
    let mut rt = r_prime_t;
    for ell in 0..=p as u32 {
        if defect.is_zero() {
            let r = rt.transpose();
            debug_assert!(check_intertwiner(spec.source.matrix(), &r, spec.target.matrix()).is_ok());
            return Ok(LiftResult { r, shift: s + ell, s, ell });
        }
        defect = bt.mul(&defect)?;
        rt = bt.mul(&rt)?;
    }
    Err(Error::NotAHomomorphism { max_power: p })
}

/// `theta_R([e_i, 0]) = [R^t e_i, 0]`
pub fn matrix_to_hom(r: &IntMatrix, a: &EssentialMatrix, b: &EssentialMatrix) -> Result<GradedHomSpec> {
    check_intertwiner(a.matrix(), r, b.matrix())?;
    if let Some((row, col)) = r.first_negative() {
        return Err(Error::NegativeEntry { row, col });
    }
    let images = (0..a.size()).map(|i| DimClass::new(b, r.row_slice(i).to_vec(), 0)).collect::<Result<_>>()?;
    GradedHomSpec::new(a.clone(), b.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn e(rows: &[Vec<i64>]) -> EssentialMatrix {
        EssentialMatrix::from_rows(rows).unwrap()
    }

    fn spec(a: &EssentialMatrix, b: &EssentialMatrix, images: &[(&[i64], u32)]) -> GradedHomSpec {
        let images = images.iter().map(|(v, l)| DimClass::new(b, int_vec(v), *l).unwrap()).collect();
        GradedHomSpec::new(a.clone(), b.clone(), images).unwrap()
    }

    #[test]
    fn doubling_with_delay() {
        let two = e(&[vec![2]]);
        let lift = lift_hom_to_matrix(&spec(&two, &two, &[(&[1], 1)])).unwrap();
        assert_eq!(
            (lift.r.clone(), lift.shift, lift.s, lift.ell),
            (IntMatrix::from_rows(&[vec![1]]).unwrap(), 1, 1, 0)
        );
    }

    #[test]
    fn identity_spec() {
        let f = e(&[vec![1, 1], vec![1, 0]]);
        let lift = lift_hom_to_matrix(&spec(&f, &f, &[(&[1, 0], 0), (&[0, 1], 0)])).unwrap();
        assert_eq!((lift.r, lift.shift), (IntMatrix::identity(2), 0));
    }

    #[test]
    fn two_into_all_ones() {
        let (two, ones) = (e(&[vec![2]]), e(&[vec![1, 1], vec![1, 1]]));
        let lift = lift_hom_to_matrix(&spec(&two, &ones, &[(&[1, 1], 0)])).unwrap();
        assert_eq!((lift.r.clone(), lift.shift), (IntMatrix::from_rows(&[vec![1, 1]]).unwrap(), 0));
        let back = matrix_to_hom(&lift.r, &two, &ones).unwrap();
        assert_eq!(back.images[0].vector(), &int_vec(&[1, 1])[..]);
    }

    #[test]
    fn equivariance_needs_a_power() {
        // theta([e_0,0]) = [(1,0),0] into all-ones is not equivariant as
        // written ((1,0)*2 != (1,1)), but agrees after one application of B^t.
        let (two, ones) = (e(&[vec![2]]), e(&[vec![1, 1], vec![1, 1]]));
        let lift = lift_hom_to_matrix(&spec(&two, &ones, &[(&[1, 0], 0)])).unwrap();
        assert_eq!((lift.r.clone(), lift.ell, lift.shift), (IntMatrix::from_rows(&[vec![1, 1]]).unwrap(), 1, 1));
        let theta = spec(&two, &ones, &[(&[1, 0], 0)]);
        let g = DimClass::generator(&two, 0).unwrap();
        assert!(lift.apply(&g, &ones).unwrap().equal(&theta.evaluate(&g).unwrap()).unwrap());
    }

    #[test]
    fn rejects_non_homomorphisms() {
        // [1] -> [2] with theta([1,0]) = [(1),0] would need 1 = 2 in G_[2].
        let (one, two) = (e(&[vec![1]]), e(&[vec![2]]));
        let bad = spec(&one, &two, &[(&[1], 0)]);
        assert_eq!(lift_hom_to_matrix(&bad), Err(Error::NotAHomomorphism { max_power: 1 }));
        assert!(!bad.commutes_with_x(&DimClass::generator(&one, 0).unwrap()).unwrap());
    }

    #[test]
    fn malformed_specs() {
        let two = e(&[vec![2]]);
        let neg = DimClass::new(&two, int_vec(&[-1]), 0).unwrap();
        assert!(matches!(GradedHomSpec::new(two.clone(), two.clone(), vec![neg]), Err(Error::MalformedSpec(_))));
        assert!(matches!(GradedHomSpec::new(two.clone(), two.clone(), vec![]), Err(Error::MalformedSpec(_))));
        assert_eq!(
            matrix_to_hom(&IntMatrix::from_rows(&[vec![-1]]).unwrap(), &two, &two).unwrap_err(),
            Error::NegativeEntry { row: 0, col: 0 }
        );
    }
}
