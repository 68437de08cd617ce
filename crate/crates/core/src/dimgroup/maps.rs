use super::delta::least_certificate;
use super::{DeltaElement, DimClass, EssentialMatrix};
use crate::error::{Error, Result};
use crate::linalg::{rat_vec_mul, IntMatrix};

/// `A R == R B`, with shapes checked.
pub fn is_intertwiner(a: &IntMatrix, r: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    if r.rows() != a.rows() || r.cols() != b.rows() {
        return Err(Error::dims("intertwiner", a.shape(), r.shape()));
    }
    Ok(a.mul(r)? == r.mul(b)?)
}

pub fn check_intertwiner(a: &IntMatrix, r: &IntMatrix, b: &IntMatrix) -> Result<()> {
    if is_intertwiner(a, r, b)? {
        Ok(())
    } else {
        Err(Error::NotIntertwiner)
    }
}

/// `Delta_A -> Delta_B`, `v -> vR`.
pub fn apply_r_delta(d: &DeltaElement, r: &IntMatrix, b: &EssentialMatrix) -> Result<DeltaElement> {
    check_intertwiner(d.matrix().matrix(), r, b.matrix())?;
    let w = rat_vec_mul(d.vector(), r)?;
    // v A^l R = v R B^l, so the source certificate bounds the target one.
    let certificate = least_certificate(&w, b.matrix(), d.certificate()).expect("vRB^l = vA^lR is integral");
    Ok(DeltaElement::from_parts(w, certificate, b.clone()))
}

/// `G_A -> G_B`, `[v, k] -> [R^t v, k]`.
pub fn apply_rt_g(c: &DimClass, r: &IntMatrix, b: &EssentialMatrix) -> Result<DimClass> {
    check_intertwiner(c.matrix().matrix(), r, b.matrix())?;
    DimClass::new(b, r.transpose().mul_vec(c.vector())?, c.level())
}
