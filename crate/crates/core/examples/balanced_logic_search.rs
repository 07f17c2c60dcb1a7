//! BIULm has no finite-chain oracle; proofs come from bounded Hilbert
//! search and are printed as checkable derivations.

use toa::formula::parse;
use toa::logics::lookup_logic;
use toa::oracles::{decide_with_models, verify_derivation, Budget, MultWitness, OracleVerdict};

fn main() {
    let l = lookup_logic("BIULm").unwrap();
    let budget = Budget::default();
    for (hyps, goal) in [(vec![], "1 -> 0"), (vec!["p -> q", "q -> r"], "p -> r"), (vec![], "p * q -> q * p")] {
        let hyps: Vec<_> = hyps.iter().map(|h| parse(h).unwrap()).collect();
        let goal = parse(goal).unwrap();
        match decide_with_models(&l, &hyps, &goal, &budget).unwrap() {
            OracleVerdict::Proved(MultWitness::Derivation(d)) => {
                println!("{goal}: {} lines, checks={}", d.lines.len(), verify_derivation(&l, &hyps, &d).is_ok());
                println!("{d}");
            }
            other => println!("{goal}: {}", other.status()),
        }
    }
}
