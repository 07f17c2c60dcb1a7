//! Eliminating a fresh intermediate variable from a proved goal.

use toa::alternatives::{prove_disjunction, ProofResult};
use toa::density::{check_density_property, density_transform, DensityInstance};
use toa::formula::parse;
use toa::logics::lookup_logic;
use toa::oracles::Budget;

fn main() {
    let budget = Budget::default();
    let a = lookup_logic("A").unwrap();
    let inst = DensityInstance {
        hypotheses: vec![parse("q -> s").unwrap()],
        phi: parse("q").unwrap(),
        psi: parse("s").unwrap(),
        chi: Some(parse("r").unwrap()),
        fresh: "p".into(),
    };
    let input = inst.input_goal();
    let ProofResult::Proved(cert) = prove_disjunction(&a, &input, &budget).unwrap() else {
        println!("{input} is not provable");
        return;
    };
    let out = density_transform(&a, &inst, &cert, &budget).unwrap();
    println!("{input}\n  {cert}\n{}\n  {out}", inst.output_goal());

    for name in ["A", "IUMLm", "RMt"] {
        match check_density_property(&lookup_logic(name).unwrap(), 25, 1, &budget) {
            Ok(r) => println!("{name}: {} instances, {} failures", r.accepted, r.failures.len()),
            Err(e) => println!("{name}: {e}"),
        }
    }
}
