//! Sugihara chains: tables, laws, and brute-force consequence.

use toa::formula::parse;
use toa::semantics::{brute_force_consequence, ChainAlgebra};

fn main() {
    let c = ChainAlgebra::sugihara(2, false);
    println!("{c}");
    for a in 0..c.size() {
        let row: Vec<String> = (0..c.size()).map(|b| format!("{:>3}", c.label(c.implies(a, b)))).collect();
        println!("{:>3} -> {}", c.label(a), row.join(""));
    }
    println!("laws: {:?}", c.verify_laws());

    let chains: Vec<ChainAlgebra> = (1..=3).flat_map(|k| [ChainAlgebra::sugihara(k, true), ChainAlgebra::sugihara(k, false)]).collect();
    for goal in ["p -> p * p", "1 -> 0", "(p -> q) | (q -> p)"] {
        let v = brute_force_consequence(&chains, &[], &parse(goal).unwrap());
        println!("{goal}: {v:?}");
    }
}
