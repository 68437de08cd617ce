//! Does a rational subspace meet the nonnegative orthant away from zero?
//!
//! Both routes normalize the question to "find x in span(basis) with x >= 0
//! and sum(x) = 1": a nonzero nonnegative vector can always be scaled to that.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rat_matrix::{RatMatrix, RatVec};
use super::solve::rational_kernel;

/// Ambient dimensions up to this use Fourier-Motzkin; larger ones the simplex.
pub const FOURIER_MOTZKIN_MAX_DIM: usize = 12;

/// A nonzero nonnegative vector in the span of `basis` (scaled so its entries
/// sum to 1), or `None` if the span meets the orthant only at zero.
pub fn nonneg_feasible(basis: &[RatVec]) -> Option<RatVec> {
    let dim = basis.first()?.len();
    if dim <= FOURIER_MOTZKIN_MAX_DIM {
        nonneg_feasible_fm(basis)
    } else {
        nonneg_feasible_simplex(basis)
    }
}

/// A linear inequality `coeffs . c + constant >= 0`.
#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<BigRational>,
    constant: BigRational,
}

/// Fourier-Motzkin elimination over the span coordinates.
pub fn nonneg_feasible_fm(basis: &[RatVec]) -> Option<RatVec> {
    let dim = basis.first()?.len();
    let k = basis.len();
    // x_i = sum_j c_j basis[j][i]; sum_i x_i = 1 fixes one coordinate.
    let sums: Vec<BigRational> = basis.iter().map(|b| b.iter().sum()).collect();
    let pivot = sums.iter().position(|s| !s.is_zero())?;

    // Substitute c_pivot = (1 - sum_{j != pivot} sums[j] c_j) / sums[pivot].
    // Remaining variables are the other k-1 coordinates, kept in order.
    let free: Vec<usize> = (0..k).filter(|&j| j != pivot).collect();
    let inv = sums[pivot].recip();
    let system: Vec<Ineq> = (0..dim)
        .map(|i| {
            let bp = &basis[pivot][i];
            let coeffs = free.iter().map(|&j| &basis[j][i] - bp * &sums[j] * &inv).collect();
            Ineq { coeffs, constant: bp * &inv }
        })
        .collect();

    let mut stages = vec![system];
    for var in 0..free.len() {
        let next = eliminate(stages.last().expect("nonempty"), var);
        stages.push(next);
    }
    let last = stages.last().expect("nonempty");
    if last.iter().any(|q| q.constant.is_negative()) {
        return None;
    }

    // Back-substitute from the last eliminated variable to the first.
    let mut values = vec![BigRational::zero(); free.len()];
    for var in (0..free.len()).rev() {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for q in &stages[var] {
            let a = &q.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let rest: BigRational = q.constant.clone()
                + q.coeffs
                    .iter()
                    .zip(&values)
                    .enumerate()
                    .filter(|(idx, _)| *idx > var)
                    .map(|(_, (c, v))| c * v)
                    .sum::<BigRational>();
            let bound = -rest / a;
            if a.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        values[var] = match (lo, hi) {
            (Some(l), Some(h)) => {
                debug_assert!(l <= h);
                (l + h) / BigRational::from_integer(BigInt::from(2))
            }
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (None, None) => BigRational::zero(),
        };
    }

    let mut c = vec![BigRational::zero(); k];
    let mut acc = BigRational::one();
    for (slot, &j) in free.iter().enumerate() {
        c[j] = values[slot].clone();
        acc -= &sums[j] * &values[slot];
    }
    c[pivot] = acc * inv;
    let x = combine(basis, &c);
    debug_assert!(x.iter().all(|v| !v.is_negative()));
    Some(x)
}

fn eliminate(system: &[Ineq], var: usize) -> Vec<Ineq> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for q in system {
        let a = &q.coeffs[var];
        if a.is_positive() {
            pos.push(q);
        } else if a.is_negative() {
            neg.push(q);
        } else {
            out.push(q.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            // p / a_p + n / |a_n| cancels var.
            let wp = p.coeffs[var].recip();
            let wn = -n.coeffs[var].recip();
            let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| x * &wp + y * &wn).collect();
            let constant = &p.constant * &wp + &n.constant * &wn;
            let combined = Ineq { coeffs, constant };
            if !out.iter().any(|q: &Ineq| same(q, &combined)) {
                out.push(combined);
            }
        }
    }
    out
}

fn same(a: &Ineq, b: &Ineq) -> bool {
    a.constant == b.constant && a.coeffs == b.coeffs
}

fn combine(basis: &[RatVec], c: &[BigRational]) -> RatVec {
    let dim = basis[0].len();
    (0..dim).map(|i| basis.iter().zip(c).map(|(b, cj)| &b[i] * cj).sum()).collect()
}

/// Exact two-phase simplex (phase one only) with Bland's rule on
/// `N x = 0, sum(x) = 1, x >= 0`, where the rows of `N` span the orthogonal
/// complement of the span.
pub fn nonneg_feasible_simplex(basis: &[RatVec]) -> Option<RatVec> {
    let dim = basis.first()?.len();
    let b = RatMatrix::from_rows(basis).ok()?;
    // y with y . b_j = 0 for all j: the right kernel of the basis matrix.
    let complement = rational_kernel(&b);
    let mut rows: Vec<(RatVec, BigRational)> = complement.into_iter().map(|y| (y, BigRational::zero())).collect();
    rows.push((vec![BigRational::one(); dim], BigRational::one()));
    phase_one(dim, rows)
}

/// Finds x >= 0 with `a_i . x = b_i` for every row, or `None`.
fn phase_one(n: usize, rows: Vec<(RatVec, BigRational)>) -> Option<RatVec> {
    let m = rows.len();
    // Tableau columns: n originals, m artificials, then the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let flip = b.is_negative();
            let mut row: Vec<BigRational> = a.into_iter().map(|x| if flip { -x } else { x }).collect();
            row.extend((0..m).map(|j| if j == i { BigRational::one() } else { BigRational::zero() }));
            row.push(if flip { -b } else { b });
            row
        })
        .collect();
    let mut basic: Vec<usize> = (n..n + m).collect();

    // Objective: minimize the sum of artificials. Reduced costs row.
    let mut cost = vec![BigRational::zero(); width];
    for row in &t {
        for (c, x) in cost.iter_mut().zip(row) {
            *c -= x;
        }
    }
    for c in cost.iter_mut().skip(n).take(m) {
        *c += BigRational::one();
    }

    // Bland: lowest-index column with negative reduced cost.
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basic[i] < basic[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded cannot happen for a phase-one objective bounded below.
            break;
        };
        pivot(&mut t, &mut cost, r, enter);
        basic[r] = enter;
    }

    if !cost[width - 1].is_zero() {
        // Remaining artificial mass > 0: infeasible. The objective value is
        // -cost[rhs].
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basic.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, p) in row.iter_mut().zip(&prow) {
            *x -= &f * p;
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (x, p) in cost.iter_mut().zip(&prow) {
            *x -= &f * p;
        }
    }
}
