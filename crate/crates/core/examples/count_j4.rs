//! Exact count of a system with about 1.9e16 solutions.

use std::time::Instant;

use torsion_units::solver::{count, enumerate, load_system, SolverError};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = load_system(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/systems/j4_order31.system"))?;
    let start = Instant::now();
    let n = count(&sys)?;
    println!("{n} solutions, counted in {:?}", start.elapsed());
    match enumerate(&sys, 1_000) {
        Err(SolverError::LimitExceeded { limit }) => println!("enumeration stops after {limit}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
