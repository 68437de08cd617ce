use num_bigint::BigInt;
use num_traits::Zero;

use crate::dimgroup::{check_intertwiner, DimClass, EssentialMatrix};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// The combinatorial shadow of the bridging bimodule of `R`: on graded
/// K-theory it sends the class of `v L(E)(n)` to
/// `sum_w R(v, w) [w L(F)(n)]`.
#[derive(Debug, Clone)]
pub struct BridgingAction {
    a: EssentialMatrix,
    b: EssentialMatrix,
    r: IntMatrix,
}

/// The class of `v L(E)(shift)` in `G_A`: `x^shift [e_v, 0]`.
pub fn vertex_class(a: &EssentialMatrix, v: usize, shift: i64) -> Result<DimClass> {
    Ok(DimClass::generator(a, v)?.x_action(shift))
}

pub fn bridging_k0_action(r: &IntMatrix, a: &EssentialMatrix, b: &EssentialMatrix) -> Result<BridgingAction> {
    check_intertwiner(a.matrix(), r, b.matrix())?;
    if let Some((row, col)) = r.first_negative() {
        return Err(Error::NegativeEntry { row, col });
    }
    Ok(BridgingAction { a: a.clone(), b: b.clone(), r: r.clone() })
}

impl BridgingAction {
    pub fn matrix(&self) -> &IntMatrix {
        &self.r
    }

    /// `vM = (+)_w (w L(F))^R(v,w)`: the nonzero multiplicities of row `v`.
    pub fn decomposition(&self, v: usize) -> Result<Vec<(usize, BigInt)>> {
        if v >= self.a.size() {
            return Err(Error::VertexOutOfRange { vertex: v, size: self.a.size() });
        }
        Ok(self.r.row_slice(v).iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (w, c.clone())).collect())
    }

    /// Formal image of the generator `[v, shift]` as `(w, multiplicity, shift)` terms.
    pub fn image(&self, v: usize, shift: i64) -> Result<Vec<(usize, BigInt, i64)>> {
        Ok(self.decomposition(v)?.into_iter().map(|(w, c)| (w, c, shift)).collect())
    }

    /// The image of `[v, shift]` summed in `G_B`.
    pub fn image_class(&self, v: usize, shift: i64) -> Result<DimClass> {
        let mut sum = DimClass::zero(&self.b);
        for (w, c, n) in self.image(v, shift)? {
            let mut coeffs = vec![BigInt::zero(); self.b.size()];
            coeffs[w] = c;
            let term = DimClass::new(&self.b, coeffs, 0)?.x_action(n);
            sum = sum.add(&term)?;
        }
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimgroup::apply_rt_g;
    use crate::linalg::int_vec;

    fn e(rows: &[Vec<i64>]) -> EssentialMatrix {
        EssentialMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let f = e(&[vec![1, 1], vec![1, 0]]);
        let act = bridging_k0_action(&IntMatrix::identity(2), &f, &f).unwrap();
        for v in 0..2 {
            assert_eq!(act.decomposition(v).unwrap(), vec![(v, BigInt::from(1))]);
            assert!(act.image_class(v, 0).unwrap().equal(&vertex_class(&f, v, 0).unwrap()).unwrap());
        }
    }

    #[test]
    fn two_into_all_ones() {
        let (two, ones) = (e(&[vec![2]]), e(&[vec![1, 1], vec![1, 1]]));
        let r = IntMatrix::from_rows(&[vec![1, 1]]).unwrap();
        let act = bridging_k0_action(&r, &two, &ones).unwrap();
        let one = BigInt::from(1);
        assert_eq!(act.image(0, 0).unwrap(), vec![(0, one.clone(), 0), (1, one, 0)]);
        for shift in -2..=2 {
            let via_rt = apply_rt_g(&vertex_class(&two, 0, shift).unwrap(), &r, &ones).unwrap();
            assert!(act.image_class(0, shift).unwrap().equal(&via_rt).unwrap());
        }
        let c = act.image_class(0, 0).unwrap();
        assert_eq!((c.vector().to_vec(), c.level()), (int_vec(&[1, 1]), 0));
    }

    #[test]
    fn rejects_bad_matrices() {
        let two = e(&[vec![2]]);
        let r = IntMatrix::from_rows(&[vec![-1]]).unwrap();
        assert_eq!(bridging_k0_action(&r, &two, &two).unwrap_err(), Error::NegativeEntry { row: 0, col: 0 });
        let r = IntMatrix::from_rows(&[vec![1, 0]]).unwrap();
        assert_eq!(bridging_k0_action(&r, &two, &e(&[vec![1, 1], vec![1, 1]])).unwrap_err(), Error::NotIntertwiner);
    }
}
