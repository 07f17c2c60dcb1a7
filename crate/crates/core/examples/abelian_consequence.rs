//! Consequence in Abelian logic: each clause goal gets either a λ/μ
//! certificate or an integer countermodel.

use toa::alternatives::{prove_consequence, verify_certificate, ProofResult};
use toa::formula::parse;
use toa::logics::lookup_logic;
use toa::oracles::Budget;

fn main() {
    let a = lookup_logic("A").unwrap();
    let budget = Budget::default();
    let problems = [
        (vec!["p -> q", "q -> r"], "p -> r"),
        (vec![], "(p -> q) | (q -> p)"),
        (vec!["p * p"], "p"),
        (vec!["p"], "p * p * q"),
    ];
    for (hyps, goal) in problems {
        let hyps: Vec<_> = hyps.iter().map(|h| parse(h).unwrap()).collect();
        let report = prove_consequence(&a, &hyps, &parse(goal).unwrap(), &budget).unwrap();
        println!("{goal}: {}", report.status());
        for (g, r) in &report.goals {
            match r {
                ProofResult::Proved(c) => println!("  {g}: {c} (verified={})", verify_certificate(&a, g, c)),
                ProofResult::Refuted(cm) => println!("  {g}: countermodel {cm}"),
                ProofResult::Unknown(why) => println!("  {g}: unknown, {why}"),
            }
        }
    }
}
