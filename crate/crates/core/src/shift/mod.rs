//! Shift equivalence: exact verification of the relation families, the
//! intertwiner lattice, bounded witness search, and the passage between
//! intertwining matrices and module maps of dimension groups.

mod intertwiner;
mod lift;
mod search;
mod verify;

pub use intertwiner::{combine, intertwiner_operator, solve_intertwiners};
pub use lift::{lift_hom_to_matrix, matrix_to_hom, GradedHomSpec, LiftResult};
pub use search::{complete_witness, search_se, SearchConfig};
pub use verify::{
    verify_relaxed_se, verify_se, verify_sse_chain, verify_unital, RelationCheck, RelaxedSeWitness, SeWitness, SseStep,
    VerificationReport,
};
