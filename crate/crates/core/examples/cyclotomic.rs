//! Exact arithmetic in cyclotomic fields and traces down to the rationals.

use torsion_units::arith::{root_of_unity, root_trace, trace_to_rationals, CyclotomicNumber};

fn main() {
    // b5 = (-1 + sqrt 5) / 2 as z5 + z5^4
    let b5 = &root_of_unity(5, 1) + &root_of_unity(5, 4);
    let sq = &b5 * &b5;
    println!("b5 = {b5}");
    println!("b5^2 = {sq}, b5^2 + b5 = {}", &sq + &b5);
    println!("conductor of b5: {}", b5.conductor());

    // an integer written in Q(z12) collapses to conductor 1
    let i = root_of_unity(4, 1);
    let minus_one = &i * &i;
    println!("i^2 = {minus_one}, rational: {:?}", minus_one.as_integer());

    println!("Tr(b5) = {}", trace_to_rationals(&b5));
    for j in 0..6 {
        print!("Tr(z15^{j}) = {}  ", root_trace(15, j));
    }
    println!();
    println!("Tr(7) over Q = {}", trace_to_rationals(&CyclotomicNumber::from_integer(7)));
}
