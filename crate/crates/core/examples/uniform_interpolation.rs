//! Replacing hypotheses by finitely many formulas over chosen variables.

use std::collections::BTreeSet;

use toa::formula::parse;
use toa::interpolation::{lift_interpolant, verify_interpolant};
use toa::logics::lookup_logic;
use toa::oracles::Budget;

fn main() {
    let budget = Budget::default();
    let problems = [
        ("A", vec!["p -> q", "q -> r"], vec!["p", "r"]),
        ("A", vec!["q * q -> p", "r -> q"], vec!["p", "r"]),
        ("A", vec!["(q -> p) | (q -> r)", "q"], vec!["p", "r"]),
        ("IUMLm", vec!["p -> q", "q -> r"], vec!["p", "r"]),
    ];
    for (name, hyps, keep) in problems {
        let l = lookup_logic(name).unwrap();
        let hyps: Vec<_> = hyps.iter().map(|h| parse(h).unwrap()).collect();
        let keep: BTreeSet<String> = keep.into_iter().map(String::from).collect();
        let pi = lift_interpolant(&l, &hyps, &keep, &budget).unwrap();
        let shown: Vec<String> = pi.iter().map(ToString::to_string).collect();
        println!("{name}: keep {keep:?} -> {{{}}}", shown.join(", "));
        let probes: Vec<_> = ["p -> r", "r -> p", "p * t -> r * t"].iter().map(|s| parse(s).unwrap()).collect();
        let report = verify_interpolant(&l, &hyps, &pi, &keep, &probes, &budget).unwrap();
        println!("  probes agree: {}", report.passed());
    }
}
