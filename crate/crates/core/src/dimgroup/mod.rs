//! The two pictures of the dimension data of a square nonnegative matrix:
//! the direct-limit group `G_A` of classes `[v, k]` and the eventual-image
//! triple `(Delta_A, Delta_A^+, delta_A)`, linked by `psi_A`.

mod class;
mod delta;
mod maps;

use std::ops::Deref;
use std::sync::Arc;

pub use class::{order_unit, ConeMembership, DimClass};
pub use delta::{delta_membership, delta_order_unit, eventual_image, DeltaElement, EventualImageSpace};
pub use maps::{apply_r_delta, apply_rt_g, check_intertwiner, is_intertwiner};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Square nonnegative integer matrix with no zero row. Cheap to clone; classes
/// and eventual-image elements hold one of these to name their group.
#[derive(Clone)]
pub struct EssentialMatrix(Arc<IntMatrix>);

impl EssentialMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        if let Some((row, col)) = m.first_negative() {
            return Err(Error::NegativeEntry { row, col });
        }
        if let Some(vertex) = m.first_zero_row() {
            return Err(Error::Sink { vertex });
        }
        Ok(EssentialMatrix(Arc::new(m)))
    }

    pub fn from_rows<T: Into<num_bigint::BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        EssentialMatrix::new(IntMatrix::from_rows(rows)?)
    }

    /// Number of vertices, `|A|`.
    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    /// `(A^t)^e`
    pub fn transpose_pow(&self, e: u32) -> IntMatrix {
        self.0.transpose().pow(e).expect("square")
    }

    pub fn same_as(&self, other: &EssentialMatrix) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Deref for EssentialMatrix {
    type Target = IntMatrix;

    fn deref(&self) -> &IntMatrix {
        &self.0
    }
}

impl PartialEq for EssentialMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for EssentialMatrix {}

impl std::fmt::Debug for EssentialMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EssentialMatrix({})", self.0)
    }
}
