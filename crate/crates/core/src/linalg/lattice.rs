use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::int_matrix::{IntMatrix, IntVec};
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// Z-basis of `{x in Z^cols : a x = 0}`, LLL-reduced and sign-normalized
/// (first nonzero entry positive).
pub fn integer_kernel(a: &IntMatrix) -> Vec<IntVec> {
    let s = smith_normal_form(a);
    let rank = s.rank();
    let basis: Vec<IntVec> = (rank..a.cols()).map(|j| s.v.column_vec(j)).collect();
    lll_reduce(basis).into_iter().map(normalize_sign).collect()
}

/// All integer solutions of `a x = b`: a particular solution plus a kernel
/// basis, or `None` when no integer solution exists.
///
/// The particular solution is size-reduced against the (LLL-reduced) kernel,
/// so it is short whenever the solution set contains short vectors.
pub fn integer_solve(a: &IntMatrix, b: &[BigInt]) -> Result<Option<(IntVec, Vec<IntVec>)>> {
    if a.rows() != b.len() {
        return Err(Error::dims("integer_solve", a.shape(), (b.len(), 1)));
    }
    let s = smith_normal_form(a);
    let rank = s.rank();
    let ub = s.u.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < rank {
            let (q, r) = c.div_rem(s.d.get(i, i));
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !c.is_zero() {
            return Ok(None);
        }
    }
    let particular = s.v.mul_vec(&y)?;
    let kernel: Vec<IntVec> =
        lll_reduce((rank..a.cols()).map(|j| s.v.column_vec(j)).collect()).into_iter().map(normalize_sign).collect();
    let particular = size_reduce(particular, &kernel);
    Ok(Some((particular, kernel)))
}

fn normalize_sign(v: IntVec) -> IntVec {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rat_dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn round(x: &BigRational) -> BigInt {
    (x + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

struct GramSchmidt {
    star: Vec<Vec<BigRational>>,
    norms: Vec<BigRational>,
    mu: Vec<Vec<BigRational>>,
}

fn gram_schmidt(b: &[IntVec]) -> GramSchmidt {
    let n = b.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms: Vec<BigRational> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let bi: Vec<BigRational> = b[i].iter().cloned().map(BigRational::from_integer).collect();
        let mut v = bi.clone();
        for j in 0..i {
            if norms[j].is_zero() {
                continue;
            }
            let m = rat_dot(&bi, &star[j]) / &norms[j];
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= &m * s;
            }
            mu[i][j] = m;
        }
        norms.push(rat_dot(&v, &v));
        star.push(v);
    }
    GramSchmidt { star, norms, mu }
}

/// LLL reduction (delta = 3/4) of linearly independent integer vectors,
/// in exact rational arithmetic. The result spans the same lattice.
pub fn lll_reduce(mut b: Vec<IntVec>) -> Vec<IntVec> {
    let n = b.len();
    if n < 2 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut gs = gram_schmidt(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round(&gs.mu[k][j]);
            if !q.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                gs = gram_schmidt(&b);
            }
        }
        let lhs = &gs.norms[k];
        let rhs = (&delta - &gs.mu[k][k - 1] * &gs.mu[k][k - 1]) * &gs.norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            gs = gram_schmidt(&b);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Babai nearest-plane reduction of `target` modulo the lattice spanned by
/// `basis`.
pub fn size_reduce(mut target: IntVec, basis: &[IntVec]) -> IntVec {
    if basis.is_empty() {
        return target;
    }
    let gs = gram_schmidt(basis);
    for j in (0..basis.len()).rev() {
        if gs.norms[j].is_zero() {
            continue;
        }
        let t: Vec<BigRational> = target.iter().cloned().map(BigRational::from_integer).collect();
        let c = round(&(rat_dot(&t, &gs.star[j]) / &gs.norms[j]));
        if !c.is_zero() {
            for (x, y) in target.iter_mut().zip(&basis[j]) {
                *x -= &c * y;
            }
        }
    }
    target
}

/// Squared Euclidean length.
pub fn norm_squared(v: &[BigInt]) -> BigInt {
    dot(v, v)
}
