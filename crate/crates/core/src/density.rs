//! Eliminating a fresh intermediate variable from
//! `Σ ⊢ (φ → p) ∨ (p → ψ) ∨ χ`.
//!
//! Given coefficients `(λ, μ, γ)` for the three disjuncts, the output
//! certificate for `(φ → ψ) ∨ χ` has coefficients `(λμ, λγ)`, or
//! `(μ, γ)` when `λ = 0`, `(λ, γ)` when `μ = 0`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::alternatives::{
    combination_formula, prove_consequence, prove_disjunction, verify_certificate, AltError, ProofResult,
    ToACertificate,
};
use crate::formula::Formula;
use crate::gen;
use crate::logics::LogicSpec;
use crate::normalizer::{Goal, MultClause};
use crate::oracles::{self, Budget, OracleVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("{0} does not prove 1 -> 0")]
    PreconditionFailed(String),
    #[error("variable '{0}' occurs in the hypotheses or the other formulas")]
    NotFresh(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error(transparent)]
    Engine(#[from] AltError),
}

/// `⊢ 1 → 0`, required of logics with a theorem of alternatives that are
/// complete for dense chains.
pub fn density_precondition(logic: &LogicSpec, budget: &Budget) -> bool {
    logic.has_toa()
        && prove_consequence(logic, &[], &Formula::imp(Formula::One, Formula::Zero), budget)
            .is_ok_and(|r| r.is_proved())
}

/// A density-shaped goal; `chi` may be absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityInstance {
    pub hypotheses: Vec<Formula>,
    pub phi: Formula,
    pub psi: Formula,
    pub chi: Option<Formula>,
    pub fresh: String,
}

impl DensityInstance {
    /// `Σ ⊢ (φ → p) ∨ (p → ψ) [∨ χ]`
    pub fn input_goal(&self) -> Goal {
        let p = Formula::var(self.fresh.clone());
        let mut d = vec![Formula::imp(self.phi.clone(), p.clone()), Formula::imp(p, self.psi.clone())];
        d.extend(self.chi.clone());
        Goal::new(self.hypotheses.clone(), MultClause::new(d))
    }

    /// `Σ ⊢ (φ → ψ) [∨ χ]`
    pub fn output_goal(&self) -> Goal {
        let mut d = vec![Formula::imp(self.phi.clone(), self.psi.clone())];
        d.extend(self.chi.clone());
        Goal::new(self.hypotheses.clone(), MultClause::new(d))
    }

    fn check_fresh(&self) -> Result<(), DensityError> {
        let mut vars = self.phi.vars();
        self.psi.collect_vars(&mut vars);
        for f in self.hypotheses.iter().chain(&self.chi) {
            f.collect_vars(&mut vars);
        }
        if vars.contains(&self.fresh) {
            Err(DensityError::NotFresh(self.fresh.clone()))
        } else {
            Ok(())
        }
    }
}

/// Output coefficients for input `(λ, μ, γ)`.
pub fn transformed_lambdas(lambda: u64, mu: u64, gamma: u64) -> (u64, u64) {
    match (lambda, mu) {
        (0, 0) => (0, gamma),
        (0, m) => (m, gamma),
        (l, 0) => (l, gamma),
        (l, m) => (l * m, l * gamma),
    }
}

/// Turns a certificate for the input goal into one for the output goal,
/// re-proving the new combination with the logic's oracle.
pub fn density_transform(
    logic: &LogicSpec,
    inst: &DensityInstance,
    cert: &ToACertificate,
    budget: &Budget,
) -> Result<ToACertificate, DensityError> {
    if !density_precondition(logic, budget) {
        return Err(DensityError::PreconditionFailed(logic.name.clone()));
    }
    inst.check_fresh()?;
    let input = inst.input_goal();
    if !verify_certificate(logic, &input, cert) {
        return Err(DensityError::InvalidCertificate("does not verify for the input goal".into()));
    }
    let gamma = cert.lambdas.get(2).copied().unwrap_or(0);
    let (a, c) = transformed_lambdas(cert.lambdas[0], cert.lambdas[1], gamma);
    let mut lambdas = vec![a];
    if inst.chi.is_some() {
        lambdas.push(c);
    }
    let output = inst.output_goal();
    let comb = combination_formula(&lambdas, &output.clause.disjuncts)
        .ok_or_else(|| DensityError::InvalidCertificate("transformed coefficients are all zero".into()))?;
    match oracles::decide(logic, &output.hypotheses, &comb, budget) {
        Ok(OracleVerdict::Proved(witness)) => Ok(ToACertificate { lambdas, witness }),
        other => Err(DensityError::InvalidCertificate(format!("transformed combination not proved: {other:?}"))),
    }
}

#[derive(Debug, Clone, Default)]
pub struct DensityReport {
    pub attempted: usize,
    pub accepted: usize,
    pub failures: Vec<String>,
}

/// Draws random multiplicative instances over `q, r, s` with `p` fresh,
/// keeps those whose input goal is proved, and transforms each.
pub fn check_density_property(
    logic: &LogicSpec,
    samples: usize,
    seed: u64,
    budget: &Budget,
) -> Result<DensityReport, DensityError> {
    if !density_precondition(logic, budget) {
        return Err(DensityError::PreconditionFailed(logic.name.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = ["q", "r", "s"];
    let mut report = DensityReport::default();
    while report.accepted < samples && report.attempted < samples * 200 {
        report.attempted += 1;
        let inst = random_instance(&mut rng, &vars);
        let ProofResult::Proved(cert) = prove_disjunction(logic, &inst.input_goal(), budget)? else {
            continue;
        };
        report.accepted += 1;
        match density_transform(logic, &inst, &cert, budget) {
            Ok(out) if verify_certificate(logic, &inst.output_goal(), &out) => {}
            Ok(_) => report.failures.push(format!("{}: output certificate does not verify", inst.input_goal())),
            Err(e) => report.failures.push(format!("{}: {e}", inst.input_goal())),
        }
    }
    Ok(report)
}

pub fn random_instance<R: rand::Rng>(rng: &mut R, vars: &[&str]) -> DensityInstance {
    let hyps = (0..rng.gen_range(0..=2)).map(|_| gen::mult_formula(rng, vars, 2)).collect();
    DensityInstance {
        hypotheses: hyps,
        phi: gen::mult_formula(rng, vars, 2),
        psi: gen::mult_formula(rng, vars, 2),
        chi: rng.gen_bool(0.7).then(|| gen::mult_formula(rng, vars, 2)),
        fresh: "p".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::logics::lookup_logic;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn preconditions() {
        let b = Budget::default();
        assert!(density_precondition(&lookup_logic("IUMLm").unwrap(), &b));
        assert!(density_precondition(&lookup_logic("A").unwrap(), &b));
        assert!(!density_precondition(&lookup_logic("RMt").unwrap(), &b));
    }

    #[test]
    fn abelian_example() {
        let a = lookup_logic("A").unwrap();
        let b = Budget::default();
        let inst = DensityInstance { hypotheses: vec![], phi: f("q"), psi: f("q"), chi: None, fresh: "p".into() };
        let ProofResult::Proved(cert) = prove_disjunction(&a, &inst.input_goal(), &b).unwrap() else { panic!() };
        assert_eq!(cert.lambdas, vec![1, 1]);
        let out = density_transform(&a, &inst, &cert, &b).unwrap();
        assert_eq!(out.lambdas, vec![1]);
        assert!(verify_certificate(&a, &inst.output_goal(), &out));
    }

    #[test]
    fn iuml_example() {
        let l = lookup_logic("IUMLm").unwrap();
        let b = Budget::default();
        let inst = DensityInstance { hypotheses: vec![], phi: f("1"), psi: f("0"), chi: Some(f("1 -> 0")), fresh: "p".into() };
        let ProofResult::Proved(cert) = prove_disjunction(&l, &inst.input_goal(), &b).unwrap() else { panic!() };
        let out = density_transform(&l, &inst, &cert, &b).unwrap();
        assert!(verify_certificate(&l, &inst.output_goal(), &out));
    }

    #[test]
    fn edge_coefficients() {
        assert_eq!(transformed_lambdas(0, 3, 2), (3, 2));
        assert_eq!(transformed_lambdas(4, 0, 2), (4, 2));
        assert_eq!(transformed_lambdas(0, 0, 5), (0, 5));
        assert_eq!(transformed_lambdas(2, 3, 5), (6, 10));
    }

    #[test]
    fn freshness_and_precondition() {
        let a = lookup_logic("A").unwrap();
        let b = Budget::default();
        let inst = DensityInstance { hypotheses: vec![f("p")], phi: f("q"), psi: f("q"), chi: None, fresh: "p".into() };
        let cert = ToACertificate { lambdas: vec![1, 1], witness: oracles::MultWitness::Linear { mu: vec![], scale: 1.into() } };
        assert_eq!(density_transform(&a, &inst, &cert, &b), Err(DensityError::NotFresh("p".into())));
        let rmt = lookup_logic("RMt").unwrap();
        assert!(matches!(density_transform(&rmt, &inst, &cert, &b), Err(DensityError::PreconditionFailed(_))));
        assert!(matches!(check_density_property(&rmt, 1, 0, &b), Err(DensityError::PreconditionFailed(_))));
    }

    #[test]
    fn property_sample() {
        let b = Budget::default();
        for name in ["A", "IUMLm"] {
            let r = check_density_property(&lookup_logic(name).unwrap(), 20, 3, &b).unwrap();
            assert_eq!(r.accepted, 20, "{name}");
            assert!(r.failures.is_empty(), "{name}: {:?}", r.failures);
        }
    }
}
