//! Compressed rows for a character constant on the classes of two primes.

use torsion_units::method::{build_pq_row, pq_system};
use torsion_units::solver::enumerate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // order 33 with a character of degree 77 taking 2 on 3-classes and 0 on 11-classes
    let rows: Vec<_> = [0, 1, 3, 11].iter().map(|&l| build_pq_row(2, 0, 77, 3, 11, l)).collect();
    for r in &rows {
        println!("l = {:>2}: (m1, ms, mt) = {:?}", r.l, r.triple());
    }
    let mut all = rows.clone();
    all.push(build_pq_row(-1, 0, 77, 3, 11, 0));
    let sols = enumerate(&pq_system(3, 11, &all), 10)?;
    println!("solutions for (nu3, nu11): {sols:?}");
    Ok(())
}
