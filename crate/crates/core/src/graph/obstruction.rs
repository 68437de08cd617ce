use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dimgroup::EssentialMatrix;
use crate::error::Result;
use crate::linalg::{common_denominator, nonneg_feasible, rational_kernel, IntMatrix, RatMatrix};
use crate::shift::intertwiner_operator;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionVerdict {
    /// No nonzero nonnegative `R` with `AR = RB`, so no unital graded
    /// homomorphism `L(E) -> L(F)` exists.
    NoUnitalHom,
    /// A primitive nonnegative intertwiner exists. This only means the
    /// obstruction does not apply.
    InconclusiveWithCandidate(IntMatrix),
}

/// Decides whether the rational cone `{R >= 0, R != 0 : AR = RB}` is empty.
/// A rational point scales to an integral one, so emptiness over `Q` is
/// the same as emptiness over `Z`.
pub fn unital_hom_obstruction(a: &EssentialMatrix, b: &EssentialMatrix) -> Result<ObstructionVerdict> {
    let op = intertwiner_operator(a.matrix(), b.matrix())?;
    let basis = rational_kernel(&RatMatrix::from(&op));
    let Some(point) = nonneg_feasible(&basis) else {
        return Ok(ObstructionVerdict::NoUnitalHom);
    };
    let den = common_denominator(&point);
    let mut entries: Vec<BigInt> = point.iter().map(|x| (x * &den).to_integer()).collect();
    let g = entries.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_one() {
        entries.iter_mut().for_each(|x| *x /= &g);
    }
    let r = IntMatrix::new(a.size(), b.size(), entries)?;
    debug_assert!(r.is_nonnegative() && !r.is_zero());
    Ok(ObstructionVerdict::InconclusiveWithCandidate(r))
}
