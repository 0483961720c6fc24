//! Constraints on partial augmentations of torsion units from character
//! values, and the order-by-order search built on them.

mod mu;
mod pa;
mod pq;
mod scenario;
mod solve;

use thiserror::Error;

use crate::chartab::ChartabError;
use crate::solver::SolverError;

pub use mu::{
    build_mu_system, char_value_at_power, cohn_livingstone_congruences, CharSelector, MuBuilder, MuCongruence, MuLabel,
    MuRow, MuSystem,
};
pub use pa::{PAVector, PowerScenario, SolutionStore};
pub use pq::{build_pq_row, pq_row_for_character, pq_system, PQRow};
pub use scenario::{scenario_count, scenarios, ScenarioSet};
pub use solve::{
    candidate_orders, irreducible_infeasible, prime_graph_compare, processing_order, solve_order, OrderOutcome,
    PrimeGraphReport, ScenarioOutcome, SolveOptions, Verdict,
};

#[derive(Debug, Error)]
pub enum MethodError {
    #[error("scenario has no vector for order {0}")]
    MissingScenarioOrder(u64),
    #[error("no stored solutions for order {0}")]
    MissingStoreOrder(u64),
    #[error("character {character}: non-integral trace, {detail}")]
    NonIntegerCoefficient { character: String, detail: String },
    #[error("character {character} has characteristic {p}, which divides the unit order {order}")]
    BrauerCharacteristicDividesOrder { character: String, p: u64, order: u64 },
    #[error("character {character} is not constant with an integer value on the classes of order {order}")]
    NonConstantCharacter { character: String, order: u64 },
    #[error("character {character} has no value on class {class}")]
    MissingValue { character: String, class: String },
    #[error("unknown character {0}")]
    UnknownCharacter(String),
    #[error("unknown class {0}")]
    UnknownClass(String),
    #[error("bad character selection {0:?}")]
    BadSelector(String),
    #[error("no results for order {} needed for the edge ({p}, {q})", p * q)]
    IncompleteResults { p: u64, q: u64 },
    #[error(transparent)]
    Table(#[from] ChartabError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}
