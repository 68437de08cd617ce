use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dimgroup::{check_intertwiner, EssentialMatrix};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A shift equivalence of lag `m` between `A` and `B`:
/// `A^m = RS, AR = RB, B^m = SR, BS = SA` with `R`, `S` nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeWitness {
    pub a: EssentialMatrix,
    pub b: EssentialMatrix,
    pub r: IntMatrix,
    pub s: IntMatrix,
    pub lag: u32,
}

/// The relaxed form `A^m = RS, AR = RB, B^k = TR` over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelaxedSeWitness {
    pub a: EssentialMatrix,
    pub b: EssentialMatrix,
    pub r: IntMatrix,
    pub s: IntMatrix,
    pub t: IntMatrix,
    pub m: u32,
    pub k: u32,
}

/// One elementary strong shift equivalence `A = RS`, `SR = B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SseStep {
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub r: IntMatrix,
    pub s: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub holds: bool,
    /// `lhs - rhs` when the relation fails.
    pub residual: Option<IntMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<RelationCheck>,
    /// `None` when the relation family does not ask for nonnegativity.
    pub nonnegative: Option<bool>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds) && self.nonnegative != Some(false)
    }

    pub fn first_failure(&self) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| !c.holds)
    }
}

fn relation(name: &'static str, lhs: IntMatrix, rhs: IntMatrix) -> Result<RelationCheck> {
    let residual = lhs.sub(&rhs)?;
    let holds = residual.is_zero();
    Ok(RelationCheck { relation: name, holds, residual: (!holds).then_some(residual) })
}

fn expect_shape(op: &'static str, m: &IntMatrix, shape: (usize, usize)) -> Result<()> {
    if m.shape() != shape {
        return Err(Error::dims(op, shape, m.shape()));
    }
    Ok(())
}

pub fn verify_se(w: &SeWitness) -> Result<VerificationReport> {
    if w.lag == 0 {
        return Err(Error::ZeroLag);
    }
    let (n, p) = (w.a.size(), w.b.size());
    expect_shape("R", &w.r, (n, p))?;
    expect_shape("S", &w.s, (p, n))?;
    let (a, b, r, s) = (w.a.matrix(), w.b.matrix(), &w.r, &w.s);
    let checks = vec![
        relation("A^m = RS", a.pow(w.lag)?, r.mul(s)?)?,
        relation("AR = RB", a.mul(r)?, r.mul(b)?)?,
        relation("B^m = SR", b.pow(w.lag)?, s.mul(r)?)?,
        relation("BS = SA", b.mul(s)?, s.mul(a)?)?,
    ];
    Ok(VerificationReport { checks, nonnegative: Some(r.is_nonnegative() && s.is_nonnegative()) })
}

pub fn verify_relaxed_se(w: &RelaxedSeWitness) -> Result<VerificationReport> {
    if w.m == 0 || w.k == 0 {
        return Err(Error::ZeroLag);
    }
    let (n, p) = (w.a.size(), w.b.size());
    expect_shape("R", &w.r, (n, p))?;
    expect_shape("S", &w.s, (p, n))?;
    expect_shape("T", &w.t, (p, n))?;
    let (a, b) = (w.a.matrix(), w.b.matrix());
    let checks = vec![
        relation("A^m = RS", a.pow(w.m)?, w.r.mul(&w.s)?)?,
        relation("AR = RB", a.mul(&w.r)?, w.r.mul(b)?)?,
        relation("B^k = TR", b.pow(w.k)?, w.t.mul(&w.r)?)?,
    ];
    Ok(VerificationReport { checks, nonnegative: None })
}

/// Checks a chain `a = A_0 ~ A_1 ~ ... ~ A_n = b` of elementary steps.
///
/// Shape mismatches between consecutive steps are errors; value mismatches
/// make the chain invalid.
pub fn verify_sse_chain(a: &IntMatrix, b: &IntMatrix, steps: &[SseStep]) -> Result<bool> {
    let Some(first) = steps.first() else {
        return Ok(a == b);
    };
    for (i, step) in steps.iter().enumerate() {
        let (n, p) = (step.a.rows(), step.b.rows());
        if !step.a.is_square() || !step.b.is_square() || step.r.shape() != (n, p) || step.s.shape() != (p, n) {
            return Err(Error::NonChainingSteps { index: i });
        }
        if i > 0 && steps[i - 1].b.shape() != step.a.shape() {
            return Err(Error::NonChainingSteps { index: i });
        }
    }
    if &first.a != a || &steps[steps.len() - 1].b != b {
        return Ok(false);
    }
    for (i, step) in steps.iter().enumerate() {
        if i > 0 && steps[i - 1].b != step.a {
            return Ok(false);
        }
        if !step.r.is_nonnegative() || !step.s.is_nonnegative() {
            return Ok(false);
        }
        if step.r.mul(&step.s)? != step.a || step.s.mul(&step.r)? != step.b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `[v, k] -> [R^t v, k]` carries `[(1,...,1), 0]` to itself:
/// `(B^t)^l (R^t 1 - 1)` vanishes for some `l`, equivalently for `l = |B|`.
pub fn verify_unital(r: &IntMatrix, a: &EssentialMatrix, b: &EssentialMatrix) -> Result<bool> {
    check_intertwiner(a.matrix(), r, b.matrix())?;
    let image = r.transpose().mul_vec(&vec![BigInt::one(); a.size()])?;
    let diff: Vec<BigInt> = image.into_iter().map(|x| x - BigInt::one()).collect();
    let killed = b.transpose_pow(b.size() as u32).mul_vec(&diff)?;
    Ok(killed.iter().all(Zero::is_zero))
}
