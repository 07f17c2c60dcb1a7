//! The mingle logics are decided on small Sugihara chains. `1 -> 0`
//! separates them: IUMLm proves it, RMt has an even-chain countermodel.

use toa::alternatives::{prove_disjunction_with, LambdaSearch};
use toa::formula::parse;
use toa::logics::lookup_logic;
use toa::normalizer::{Goal, MultClause};
use toa::oracles::{decide, Budget};

fn main() {
    let budget = Budget::default();
    let one_zero = parse("1 -> 0").unwrap();
    for name in ["IUMLm", "RMt"] {
        let l = lookup_logic(name).unwrap();
        println!("{name}: 1 -> 0 is {:?}", decide(&l, &[], &one_zero, &budget).unwrap());
    }

    // Subset coefficients suffice in RMt.
    let rmt = lookup_logic("RMt").unwrap();
    let g = Goal::new(vec![], MultClause::new(vec![parse("p -> q").unwrap(), parse("q -> p").unwrap()]));
    for search in [LambdaSearch::Subsets, LambdaSearch::Deepening] {
        let r = prove_disjunction_with(&rmt, &g, &budget, search).unwrap();
        println!("{search:?}: {g} is {}", r.status());
    }
}
