//! Load a character table document and report what validation finds.
//!
//! `cargo run --example validate_table -- fixtures/tables/a4.json`

use torsion_units::chartab::{load_table, validate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables/a4.json").into());
    let table = load_table(&path)?;
    println!("{}: exponent {}, group order {}", table.group, table.exponent, table.group_order());
    for c in &table.classes {
        println!("  {:>4} order {:>2}", c.name, c.order);
    }
    println!("element orders: {:?}", table.element_orders());
    let rep = validate(&table);
    for issue in &rep.issues {
        println!("{issue}");
    }
    println!("{}", if rep.is_clean() { "clean" } else { "has errors" });
    Ok(())
}
