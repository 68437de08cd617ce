#![allow(dead_code)]

use proptest::prelude::*;
use shiftdim::dimgroup::EssentialMatrix;
use shiftdim::IntMatrix;

pub fn nonneg(rows: usize, cols: usize, max: i64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(proptest::collection::vec(0..=max, cols), rows)
        .prop_map(|r| IntMatrix::from_rows(&r).unwrap())
}

/// Square, entries in `0..=max`, no zero row.
pub fn essential(max_size: usize, max: i64) -> impl Strategy<Value = EssentialMatrix> {
    (1..=max_size)
        .prop_flat_map(move |n| nonneg(n, n, max))
        .prop_filter_map("zero row", |m| EssentialMatrix::new(m).ok())
}

/// `(A, B, R, S)` with `A = RS`, `B = SR` both essential.
pub fn elementary(
    max_size: usize,
    max: i64,
) -> impl Strategy<Value = (EssentialMatrix, EssentialMatrix, IntMatrix, IntMatrix)> {
    (1..=max_size, 1..=max_size).prop_flat_map(move |(p, q)| (nonneg(p, q, max), nonneg(q, p, max))).prop_filter_map(
        "sink",
        |(r, s)| {
            let a = EssentialMatrix::new(r.mul(&s).unwrap()).ok()?;
            let b = EssentialMatrix::new(s.mul(&r).unwrap()).ok()?;
            Some((a, b, r, s))
        },
    )
}

pub fn int_vector(n: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Vec<num_bigint::BigInt>> {
    proptest::collection::vec(range, n).prop_map(|v| v.into_iter().map(Into::into).collect())
}
