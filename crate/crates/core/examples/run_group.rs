//! Every candidate order of a small table, then the prime graph comparison.
//!
//! `cargo run --example run_group -- fixtures/tables/s3.json`

use torsion_units::chartab::load_table;
use torsion_units::method::{candidate_orders, prime_graph_compare, processing_order, solve_order, SolutionStore, SolveOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables/c6.json").into());
    let table = load_table(&path)?;
    let mut store = SolutionStore::new();
    for k in processing_order(&candidate_orders(&table)) {
        let out = solve_order(&table, k, &store, &SolveOptions::default())?;
        println!("order {k}: {} solutions, {} trivial, {} scenarios", out.solutions.len(), out.trivial, out.scenario_count);
        for labels in out.killed_by.iter().filter(|l| !l.is_empty()) {
            let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
            println!("  killed by {}", names.join(", "));
        }
        store.insert(k, out.solutions);
    }
    let g = prime_graph_compare(&table, &store)?;
    println!("group edges {:?}, unit edges {:?}, {:?}", g.group_edges, g.unit_edges, g.verdict);
    Ok(())
}
