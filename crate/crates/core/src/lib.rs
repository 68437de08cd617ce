//! Dimension data of nonnegative integer matrices and the maps between them.
//!
//! For a square nonnegative integer matrix `A` without zero rows (the
//! adjacency matrix of a finite graph with no sinks) this crate computes
//!
//! - the dimension group `G_A`, the direct limit of `Z^n` under `A^t`, with
//!   classes `[v, k]`, its cone, order unit and `Z[x, x^-1]`-action;
//! - the eventual-image triple `(Delta_A, Delta_A^+, delta_A)` and the
//!   isomorphism `psi_A` onto `G_A`;
//! - verification and bounded search of shift equivalences `(R, S, m)`,
//!   unitality, and the lift from a module map of dimension groups back to
//!   an intertwining matrix `R` with `AR = RB`;
//! - based bimodules over vertex sets, their tensor products, and exact
//!   verification of (aligned, unitally aligned) module shift equivalence;
//! - graph ingestion, Cuntz splices and the unital-homomorphism obstruction.
//!
//! Everything is exact: integers are arbitrary precision and rational
//! arithmetic never rounds.

pub mod bimodule;
pub mod dimgroup;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod par;
pub mod shift;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, RatMatrix};
pub use par::Execution;
