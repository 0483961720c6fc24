//! Partial-augmentation constraints for torsion units in integral group rings.
//!
//! The crate turns character-table data into the eigenvalue-multiplicity
//! constraints on partial augmentations of a unit of a given order, and
//! solves or counts the resulting integer systems exactly.
//!
//! * [`arith`]: rationals, cyclotomic numbers, traces.
//! * [`chartab`]: character tables with power maps and Brauer blocks.
//! * [`method`]: constraint generation, power scenarios, per-order solving.
//! * [`solver`]: bounds, enumeration and closed-form counting of integer systems.
//! * [`cli`]: the command implementations behind the `torsion-units` binary.

pub mod arith;
pub mod chartab;
pub mod cli;
pub mod method;
pub mod solver;
