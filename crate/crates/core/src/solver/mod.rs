//! Integer solutions of systems of affine forms that must be non-negative
//! and divisible by a modulus.
//!
//! Equalities are eliminated by a unimodular parametrization, the remaining
//! inequalities are projected with Fourier–Motzkin, and a depth-first search
//! walks the parameters with interval and residue-class propagation.

mod count;
mod enumerate;
mod fm;
mod lattice;
mod prepare;
mod system;
mod verify;

use thiserror::Error;

pub use count::{count, count_floor_sum_only, floor_sum};
pub use enumerate::{enumerate, DEFAULT_LIMIT};
pub use prepare::FM_MAX_FREE;
pub use system::{load_system, parse_system, Equality, EqualityDoc, IntegerLinearSystem, RawSystemDoc, Row, RowDoc};
pub use verify::{derive_bounds, verify_solution, RowCheck, Verification};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("unbounded system: {detail}")]
    Unbounded { detail: String },
    #[error("more than {limit} solutions")]
    LimitExceeded { limit: usize },
    #[error("{free} free variables exceed the elimination limit of {max}; supply explicit bounds")]
    TooManyFreeVariables { free: usize, max: usize },
    #[error("intermediate value does not fit in 128 bits")]
    Overflow,
    #[error("elimination produced {rows} rows")]
    Blowup { rows: usize },
    #[error("bad system document: {0}")]
    Parse(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
}
