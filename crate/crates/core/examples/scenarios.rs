//! Power scenarios for a unit of order 30 built from stored solution sets.

use torsion_units::chartab::load_table;
use torsion_units::method::{scenario_count, scenarios, PAVector, SolutionStore};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = load_table(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables/j1_skeleton.json"))?;
    let mut store = SolutionStore::new();
    for (m, n) in [(2, 1), (3, 1), (5, 4), (6, 6), (10, 12), (15, 4)] {
        let classes = table.classes_of_order_dividing(m);
        let w = classes.len();
        // placeholder vectors, only their number matters here
        let vs = (0..n)
            .map(|i| {
                let mut v = vec![0; w];
                v[0] = i;
                v[w - 1] += 1 - i;
                PAVector::new(m, classes.clone(), v)
            })
            .collect();
        store.insert(m, vs);
    }
    println!("scenario count for order 30: {}", scenario_count(&store, 30)?);
    let set = scenarios(&store, 30, None)?;
    let first = &set.scenarios[0];
    for (m, pa) in &first.assignment {
        println!("  u^{} of order {m}: {:?} on {:?}", 30 / m, pa.values, pa.classes);
    }
    Ok(())
}
