use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::intertwiner::{combine, solve_intertwiners, unflatten};
use super::verify::SeWitness;
use crate::dimgroup::EssentialMatrix;
use crate::error::{Error, Result};
use crate::linalg::{integer_solve, IntMatrix, RatMatrix};
use crate::par::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub m_max: u32,
    pub coeff_bound: u32,
    pub execution: Execution,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { m_max: 3, coeff_bound: 3, execution: Execution::default() }
    }
}

/// Enumerates `offset + sum_i c_i basis_i` for `c` in `[-bound, bound]^d`
/// in lexicographic order of `c`, skipping points with a negative entry, and
/// returns the first point `accept` takes.
///
/// Branches are cut as soon as the remaining coefficients cannot lift some
/// entry back to zero. With parallel execution the first coordinate is split
/// across workers; the lowest accepted index still wins, so the result is the
/// same either way.
pub(crate) struct NonnegBox {
    offset: Vec<i128>,
    basis: Vec<Vec<i128>>,
    bound: i128,
    // slack[i][e]: the most that coefficients i.. can add to entry e.
    slack: Vec<Vec<i128>>,
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::CoefficientOverflow)
}

impl NonnegBox {
    pub(crate) fn new(offset: &[BigInt], basis: &[Vec<BigInt>], bound: u32) -> Result<Self> {
        let offset: Vec<i128> = offset.iter().map(to_i128).collect::<Result<_>>()?;
        let basis: Vec<Vec<i128>> =
            basis.iter().map(|v| v.iter().map(to_i128).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        let bound = i128::from(bound);
        let len = offset.len();
        let mut slack = vec![vec![0i128; len]; basis.len() + 1];
        for i in (0..basis.len()).rev() {
            for e in 0..len {
                let step =
                    basis[i][e].checked_abs().and_then(|x| x.checked_mul(bound)).ok_or(Error::CoefficientOverflow)?;
                slack[i][e] = slack[i + 1][e].checked_add(step).ok_or(Error::CoefficientOverflow)?;
            }
        }
        for e in 0..len {
            offset[e].checked_add(slack[0][e]).ok_or(Error::CoefficientOverflow)?;
            offset[e].checked_sub(slack[0][e]).ok_or(Error::CoefficientOverflow)?;
        }
        Ok(NonnegBox { offset, basis, bound, slack })
    }

    fn viable(&self, idx: usize, point: &[i128]) -> bool {
        point.iter().zip(&self.slack[idx]).all(|(p, s)| p + s >= 0)
    }

    fn step(&self, idx: usize, c: i128, point: &[i128]) -> Vec<i128> {
        point.iter().zip(&self.basis[idx]).map(|(p, b)| p + c * b).collect()
    }

    pub(crate) fn first<T, F>(&self, exec: Execution, accept: F) -> Option<T>
    where
        T: Send,
        F: Fn(&[i128], &[i128]) -> Option<T> + Sync + Send,
    {
        if !self.viable(0, &self.offset) {
            return None;
        }
        if self.basis.is_empty() {
            return accept(&[], &self.offset);
        }
        let width = (2 * self.bound + 1) as usize;
        par::find_first(width, exec, |i| {
            let c = i as i128 - self.bound;
            let point = self.step(0, c, &self.offset);
            if !self.viable(1, &point) {
                return None;
            }
            let mut coeffs = vec![c];
            self.dfs(1, &mut coeffs, point, &accept)
        })
    }

    fn dfs<T, F>(&self, idx: usize, coeffs: &mut Vec<i128>, point: Vec<i128>, accept: &F) -> Option<T>
    where
        F: Fn(&[i128], &[i128]) -> Option<T>,
    {
        if idx == self.basis.len() {
            return accept(coeffs, &point);
        }
        for c in -self.bound..=self.bound {
            let next = self.step(idx, c, &point);
            if !self.viable(idx + 1, &next) {
                continue;
            }
            coeffs.push(c);
            let found = self.dfs(idx + 1, coeffs, next, accept);
            coeffs.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn from_i128(rows: usize, cols: usize, point: &[i128]) -> IntMatrix {
    unflatten(point.iter().map(|&x| BigInt::from(x)).collect(), rows, cols)
}

/// Solves `RS = A^m`, `SR = B^m` for nonnegative integral `S` inside the
/// lattice spanned by `s_basis` (a basis of `{S : BS = SA}`).
fn complete_in_lattice(
    a_pow: &IntMatrix,
    b_pow: &IntMatrix,
    r: &IntMatrix,
    s_basis: &[IntMatrix],
    bound: u32,
) -> Result<Option<IntMatrix>> {
    if s_basis.is_empty() {
        return Ok(None);
    }
    let (n, p) = r.shape();
    let rows = n * n + p * p;
    let mut system = IntMatrix::zeros(rows, s_basis.len());
    for (j, t) in s_basis.iter().enumerate() {
        let rt = r.mul(t)?;
        let tr = t.mul(r)?;
        for (i, x) in rt.entries().iter().chain(tr.entries()).enumerate() {
            system.set(i, j, x.clone());
        }
    }
    let target: Vec<BigInt> = a_pow.entries().iter().chain(b_pow.entries()).cloned().collect();
    let Some((d0, kernel)) = integer_solve(&system, &target)? else {
        return Ok(None);
    };
    let s0 = combine((p, n), s_basis, &d0)?;
    if kernel.is_empty() {
        return Ok(s0.is_nonnegative().then_some(s0));
    }
    let directions: Vec<Vec<BigInt>> =
        kernel.iter().map(|k| Ok(combine((p, n), s_basis, k)?.entries().to_vec())).collect::<Result<_>>()?;
    let search = NonnegBox::new(s0.entries(), &directions, bound)?;
    Ok(search.first(Execution::Sequential, |_, point| Some(from_i128(p, n, point))))
}

/// Looks for nonnegative integral `S` with `A^m = RS`, `B^m = SR`,
/// `BS = SA`, exploring the kernel of that system within `bound`.
pub fn complete_witness(
    a: &EssentialMatrix,
    b: &EssentialMatrix,
    r: &IntMatrix,
    m: u32,
    bound: u32,
) -> Result<Option<IntMatrix>> {
    if m == 0 {
        return Err(Error::ZeroLag);
    }
    if r.shape() != (a.size(), b.size()) {
        return Err(Error::dims("R", (a.size(), b.size()), r.shape()));
    }
    let s_basis = solve_intertwiners(b.matrix(), a.matrix())?;
    complete_in_lattice(&a.matrix().pow(m)?, &b.matrix().pow(m)?, r, &s_basis, bound)
}

/// Bounded search for a shift equivalence `A ~ B`.
///
/// `R` ranges over the intertwiner lattice with coefficients in
/// `[-coeff_bound, coeff_bound]`; for each nonnegative `R` and lag `m` the
/// remaining relations are solved for `S` over the integers. The witness
/// returned is the first in lexicographic order of `(m, coefficients)`.
pub fn search_se(a: &EssentialMatrix, b: &EssentialMatrix, config: &SearchConfig) -> Result<Option<SeWitness>> {
    if config.m_max == 0 {
        return Err(Error::ZeroLag);
    }
    let r_basis = solve_intertwiners(a.matrix(), b.matrix())?;
    let s_basis = solve_intertwiners(b.matrix(), a.matrix())?;
    if r_basis.is_empty() || s_basis.is_empty() {
        return Ok(None);
    }
    let (n, p) = (a.size(), b.size());
    let flat: Vec<Vec<BigInt>> = r_basis.iter().map(|r| r.entries().to_vec()).collect();
    let space = NonnegBox::new(&vec![BigInt::from(0); n * p], &flat, config.coeff_bound)?;

    for m in 1..=config.m_max {
        let a_pow = a.matrix().pow(m)?;
        let b_pow = b.matrix().pow(m)?;
        let min_rank = RatMatrix::from(&a_pow).rank().max(RatMatrix::from(&b_pow).rank());
        let found = space.first(config.execution, |_, point| {
            if point.iter().all(|&x| x == 0) {
                return None;
            }
            let r = from_i128(n, p, point);
            if RatMatrix::from(&r).rank() < min_rank {
                return None;
            }
            match complete_in_lattice(&a_pow, &b_pow, &r, &s_basis, config.coeff_bound) {
                Ok(Some(s)) => Some(Ok((r, s))),
                Ok(None) => None,
                Err(e) => Some(Err(e)),
            }
        });
        if let Some(hit) = found {
            let (r, s) = hit?;
            return Ok(Some(SeWitness { a: a.clone(), b: b.clone(), r, s, lag: m }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::verify_se;

    fn e(rows: &[Vec<i64>]) -> EssentialMatrix {
        EssentialMatrix::from_rows(rows).unwrap()
    }

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn box_order_is_lexicographic() {
        let basis = vec![vec![BigInt::from(1)], vec![BigInt::from(1)]];
        let b = NonnegBox::new(&[BigInt::from(0)], &basis, 1).unwrap();
        let first = b.first(Execution::Sequential, |c, _| Some(c.to_vec())).unwrap();
        // (-1,-1) and (-1,0) are negative; (-1,1) sums to 0.
        assert_eq!(first, vec![-1, 1]);
        let all_par = b.first(Execution::Parallel, |c, _| Some(c.to_vec())).unwrap();
        assert_eq!(all_par, first);
    }

    #[test]
    fn two_and_all_ones() {
        let w = search_se(&e(&[vec![2]]), &e(&[vec![1, 1], vec![1, 1]]), &SearchConfig::default()).unwrap().unwrap();
        assert_eq!((w.r.clone(), w.s.clone(), w.lag), (m(&[vec![1, 1]]), m(&[vec![1], vec![1]]), 1));
        assert!(verify_se(&w).unwrap().passed());
    }

    #[test]
    fn no_intertwiner_no_witness() {
        assert_eq!(search_se(&e(&[vec![1]]), &e(&[vec![2]]), &SearchConfig::default()).unwrap(), None);
    }

    #[test]
    fn self_search_and_completion() {
        let f = e(&[vec![1, 1], vec![1, 0]]);
        let w = search_se(&f, &f, &SearchConfig::default()).unwrap().unwrap();
        assert!(verify_se(&w).unwrap().passed());
        // The lag-2 self-witness (A, A) is recovered from R = A.
        let s = complete_witness(&f, &f, f.matrix(), 2, 3).unwrap().unwrap();
        assert_eq!(&s, f.matrix());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = e(&[vec![1, 1], vec![1, 1]]);
        let seq = SearchConfig { execution: Execution::Sequential, ..SearchConfig::default() };
        let par = SearchConfig { execution: Execution::Parallel, ..SearchConfig::default() };
        assert_eq!(search_se(&a, &a, &seq).unwrap(), search_se(&a, &a, &par).unwrap());
    }
}
