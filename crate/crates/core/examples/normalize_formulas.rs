//! Lattice formulas reduced to conjunctions of multiplicative clauses.

use toa::formula::parse;
use toa::normalizer::{decompose_consequence, to_mult_clauses, DEFAULT_CLAUSE_CAP};

fn main() {
    for text in ["(p | q) -> r", "p * (q & r)", "(p & q) -> (r | s)", "~(p & ~q)"] {
        let clauses = to_mult_clauses(&parse(text).unwrap(), DEFAULT_CLAUSE_CAP).unwrap();
        let shown: Vec<String> = clauses.iter().map(|c| format!("[{c}]")).collect();
        println!("{text}  =>  {}", shown.join(" & "));
    }
    let hyps = [parse("p | q").unwrap()];
    for g in decompose_consequence(&hyps, &parse("r & s").unwrap(), DEFAULT_CLAUSE_CAP).unwrap() {
        println!("goal: {g}");
    }
}
