//! Exact integer and rational matrix arithmetic.

mod feasibility;
mod int_matrix;
mod lattice;
mod rat_matrix;
mod smith;
mod solve;

pub use feasibility::{nonneg_feasible, nonneg_feasible_fm, nonneg_feasible_simplex, FOURIER_MOTZKIN_MAX_DIM};
pub use int_matrix::{int_vec, IntMatrix, IntVec};
pub use lattice::{integer_kernel, integer_solve, lll_reduce, norm_squared, size_reduce};
pub use rat_matrix::{common_denominator, rat, rat_vec_mul, to_int_vec, to_rat_vec, RatMatrix, RatVec};
pub use smith::{smith_normal_form, SmithForm};
pub use solve::{rational_kernel, rational_solve};

/// Matrix product, as a free function.
pub fn mul(a: &IntMatrix, b: &IntMatrix) -> crate::Result<IntMatrix> {
    a.mul(b)
}
