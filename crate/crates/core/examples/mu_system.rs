//! Multiplicity constraints for units of order 5 from 11-modular characters.

use torsion_units::chartab::load_table;
use torsion_units::method::{build_mu_system, CharSelector, PowerScenario};
use torsion_units::solver::enumerate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = load_table(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables/j1_mod11_order5.json"))?;
    let sys = build_mu_system(&table, &CharSelector::parse("chi2@11")?, 5, &PowerScenario::empty(5))?;
    println!("variables {:?}", sys.variables);
    for row in &sys.rows {
        let labels: Vec<String> = row.labels.iter().map(|l| l.to_string()).collect();
        println!("({:?} . nu + {}) / 5    {}", row.coeffs, row.constant, labels.join(" "));
    }
    let sols = enumerate(&sys.to_integer_system().with_max_abs(10), 1000)?;
    println!("{} solutions with |nu| <= 10 from chi2 alone", sols.len());
    let full = build_mu_system(&table, &CharSelector::All, 5, &PowerScenario::empty(5))?;
    println!("all characters: {:?}", enumerate(&full.to_integer_system(), 1000)?);
    Ok(())
}
