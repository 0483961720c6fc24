//! Enumerate a raw integer system read from a file.
//!
//! `cargo run --example raw_solve -- fixtures/systems/j1_order6.system`

use torsion_units::solver::{count, derive_bounds, enumerate, load_system, verify_solution};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/systems/j3_order4.system").into());
    let sys = load_system(&path)?;
    println!("variables {:?}", sys.variables);
    println!("derived bounds {:?}", derive_bounds(&sys)?);
    let sols = enumerate(&sys, 100_000)?;
    for x in &sols {
        let v = verify_solution(&sys, x);
        println!("{x:?} admissible: {}", v.all_admissible());
    }
    println!("count {}", count(&sys)?);
    Ok(())
}
