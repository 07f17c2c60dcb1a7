//! Deciding `Σ ⊢ φ₁ ∨ … ∨ φₙ` through a nonzero `λ ∈ ℕⁿ` with
//! `Σ ⊢ λ₁φ₁ + … + λₙφₙ`, and the full consequence pipeline built on it.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::formula::Formula;
use crate::linear::{self, clear_denominators, gordan, translate_abelian, GordanResult, IntMatrix, LinForm};
use crate::logics::{LogicSpec, OracleKind};
use crate::normalizer::{decompose_consequence, Goal, MultClause, NormalizeError};
use crate::oracles::{
    self, abelian_decide, model_countermodel, sugihara_half_width, Budget, ChainRef, Countermodel, MultWitness,
    OracleVerdict,
};
use crate::semantics::{self, ChainAlgebra, ChainVerdict, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AltError {
    #[error("logic {0} has no theorem of alternatives")]
    LogicWithoutToA(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToACertificate {
    pub lambdas: Vec<u64>,
    pub witness: MultWitness,
}

impl fmt::Display for ToACertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.lambdas.iter().map(ToString::to_string).collect();
        write!(f, "lambda=({}) {}", l.join(", "), self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofResult {
    Proved(ToACertificate),
    Refuted(Countermodel),
    Unknown(String),
}

impl ProofResult {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProofResult::Proved(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, ProofResult::Refuted(_))
    }

    pub fn status(&self) -> &'static str {
        match self {
            ProofResult::Proved(_) => "proved",
            ProofResult::Refuted(_) => "refuted",
            ProofResult::Unknown(_) => "unknown",
        }
    }
}

/// `λ₁φ₁ + (λ₂φ₂ + (…))` over the nonzero coefficients.
pub fn combination_formula(lambdas: &[u64], disjuncts: &[Formula]) -> Option<Formula> {
    let terms: Vec<Formula> = lambdas
        .iter()
        .zip(disjuncts)
        .filter(|(l, _)| **l > 0)
        .map(|(l, d)| Formula::scalar(*l, d))
        .collect();
    Formula::sum_right(&terms)
}

/// Strategy for the coefficient search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaSearch {
    /// The logic's default (LP, subsets or deepening).
    Auto,
    /// `λ ∈ {0,1}ⁿ` through the logic's oracle.
    Subsets,
    /// Iterative deepening on `Σλᵢ` up to the budget's cap.
    Deepening,
}

fn require_toa(logic: &LogicSpec) -> Result<(), AltError> {
    if logic.has_toa() {
        Ok(())
    } else {
        Err(AltError::LogicWithoutToA(logic.name.clone()))
    }
}

pub fn prove_disjunction(logic: &LogicSpec, goal: &Goal, budget: &Budget) -> Result<ProofResult, AltError> {
    prove_disjunction_with(logic, goal, budget, LambdaSearch::Auto)
}

pub fn prove_disjunction_with(
    logic: &LogicSpec,
    goal: &Goal,
    budget: &Budget,
    search: LambdaSearch,
) -> Result<ProofResult, AltError> {
    require_toa(logic)?;
    Ok(match (search, logic.capabilities.oracle) {
        (LambdaSearch::Auto, OracleKind::Abelian) => abelian_disjunction(goal),
        (LambdaSearch::Auto, OracleKind::Sugihara { even }) => {
            if let Some(cm) = mingle_countermodel(even, goal, budget) {
                return Ok(ProofResult::Refuted(cm));
            }
            subset_search(logic, goal, budget)
        }
        (LambdaSearch::Subsets, _) => subset_search(logic, goal, budget),
        (LambdaSearch::Auto | LambdaSearch::Deepening, _) => deepening(logic, goal, budget),
    })
}

/// Reproves the combination for `lambdas` with the logic's oracle.
fn certify(logic: &LogicSpec, goal: &Goal, lambdas: Vec<u64>, budget: &Budget) -> Option<ToACertificate> {
    let comb = combination_formula(&lambdas, &goal.clause.disjuncts)?;
    match oracles::decide(logic, &goal.hypotheses, &comb, budget) {
        Ok(OracleVerdict::Proved(witness)) => Some(ToACertificate { lambdas, witness }),
        _ => None,
    }
}

fn abelian_disjunction(goal: &Goal) -> ProofResult {
    let tr = |f: &Formula| translate_abelian(f).expect("multiplicative goal");
    let phis: Vec<LinForm> = goal.clause.disjuncts.iter().map(tr).collect();
    let psis: Vec<LinForm> = goal.hypotheses.iter().map(tr).collect();
    let mut vars: Vec<String> = phis.iter().chain(&psis).flat_map(|f| f.vars().cloned()).collect();
    vars.sort();
    vars.dedup();

    let point: Vec<BigInt>;
    if psis.is_empty() {
        // Columns are the disjuncts' forms; a kernel vector is λ.
        let rows: Vec<Vec<BigInt>> = if vars.is_empty() {
            vec![vec![BigInt::zero(); phis.len()]]
        } else {
            vars.iter().map(|v| phis.iter().map(|p| p.coeff(v)).collect()).collect()
        };
        let m = IntMatrix::new(rows).expect("nonempty matrix");
        match gordan(&m) {
            GordanResult::Kernel(x) => return linear_certificate(goal, &x),
            GordanResult::StrictDual(y) => point = y.iter().map(|c| -c).collect(),
        }
    } else {
        // Columns [τφᵢ; 1] and [-τψⱼ; 0]; right-hand side (0, 1).
        let q = |x: BigInt| BigRational::from_integer(x);
        let mut a: Vec<Vec<BigRational>> = vars
            .iter()
            .map(|v| {
                phis.iter()
                    .map(|p| q(p.coeff(v)))
                    .chain(psis.iter().map(|p| q(-p.coeff(v))))
                    .collect()
            })
            .collect();
        a.push(
            std::iter::repeat_n(BigRational::one(), phis.len())
                .chain(std::iter::repeat_n(BigRational::zero(), psis.len()))
                .collect(),
        );
        let mut b = vec![BigRational::zero(); vars.len()];
        b.push(BigRational::one());
        match linear::solve_feasibility(&a, &b) {
            linear::Feasibility::Feasible(x) => {
                let (ints, _, _) = clear_denominators(&x[..phis.len()]);
                return linear_certificate(goal, &ints);
            }
            linear::Feasibility::Infeasible(z) => {
                // With z = (w, t): w·τφᵢ ≥ -t > 0 and w·τψⱼ ≤ 0, so -w separates.
                let (ints, _, _) = clear_denominators(&z[..vars.len()]);
                point = ints.iter().map(|c| -c).collect();
            }
        }
    }
    let mut valuation = Valuation::new();
    for (v, x) in vars.iter().zip(point) {
        match i64::try_from(x) {
            Ok(x) => {
                valuation.insert(v.clone(), x);
            }
            Err(_) => return ProofResult::Unknown("separating point overflows i64".into()),
        }
    }
    // Variables that cancel under τ still need a value.
    for f in goal.clause.disjuncts.iter().chain(&goal.hypotheses) {
        for v in f.vars() {
            valuation.entry(v).or_insert(0);
        }
    }
    ProofResult::Refuted(Countermodel { chain: ChainRef::Integers, valuation })
}

fn linear_certificate(goal: &Goal, lambdas: &[BigInt]) -> ProofResult {
    let Some(lambdas) = lambdas.iter().map(|l| u64::try_from(l).ok()).collect::<Option<Vec<u64>>>() else {
        return ProofResult::Unknown("coefficients overflow u64".into());
    };
    let comb = combination_formula(&lambdas, &goal.clause.disjuncts).expect("kernel vector is nonzero");
    match abelian_decide(&goal.hypotheses, &comb) {
        Ok(OracleVerdict::Proved(witness)) => ProofResult::Proved(ToACertificate { lambdas, witness }),
        other => ProofResult::Unknown(format!("combination not re-proved: {other:?}")),
    }
}

fn mingle_countermodel(even: bool, goal: &Goal, budget: &Budget) -> Option<Countermodel> {
    let target = goal.clause.to_formula();
    let mut vars = target.vars();
    for h in &goal.hypotheses {
        h.collect_vars(&mut vars);
    }
    let half_width = budget.chain_bound.unwrap_or_else(|| sugihara_half_width(vars.len()));
    let mut refs = vec![ChainRef::Sugihara { half_width, odd: true }];
    if even {
        refs.push(ChainRef::Sugihara { half_width, odd: false });
    }
    refs.into_iter().find_map(|r| {
        let alg: ChainAlgebra = r.algebra().expect("sugihara chain");
        match semantics::brute_force_consequence(&[alg], &goal.hypotheses, &target) {
            ChainVerdict::Counterexample { valuation, .. } => Some(Countermodel { chain: r, valuation }),
            ChainVerdict::Holds => None,
        }
    })
}

/// Nonempty subsets by size, then lexicographically.
fn subsets(n: usize) -> Vec<Vec<u64>> {
    let mut all: Vec<Vec<u64>> = (1u64..(1 << n))
        .map(|mask| (0..n).map(|i| (mask >> i) & 1).collect())
        .collect();
    all.sort_by_key(|l: &Vec<u64>| (l.iter().sum::<u64>(), l.iter().map(|x| 1 - x).collect::<Vec<_>>()));
    all
}

fn subset_search(logic: &LogicSpec, goal: &Goal, budget: &Budget) -> ProofResult {
    for lambdas in subsets(goal.clause.disjuncts.len()) {
        if let Some(cert) = certify(logic, goal, lambdas, budget) {
            return ProofResult::Proved(cert);
        }
    }
    match model_countermodel(logic, &goal.hypotheses, &goal.clause.to_formula()) {
        Some(cm) => ProofResult::Refuted(cm),
        None => ProofResult::Unknown("no subset combination is provable".into()),
    }
}

/// All `λ ∈ ℕⁿ` with `Σλ = s`, in lexicographically decreasing order.
fn compositions(n: usize, s: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return if s == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=s).rev() {
        for mut rest in compositions(n - 1, s - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn deepening(logic: &LogicSpec, goal: &Goal, budget: &Budget) -> ProofResult {
    if let Some(cm) = model_countermodel(logic, &goal.hypotheses, &goal.clause.to_formula()) {
        return ProofResult::Refuted(cm);
    }
    let n = goal.clause.disjuncts.len();
    for s in 1..=budget.lambda_cap {
        for lambdas in compositions(n, s) {
            let comb = combination_formula(&lambdas, &goal.clause.disjuncts).expect("nonzero");
            // Sound models filter out combinations that cannot be derivable.
            if model_countermodel(logic, &goal.hypotheses, &comb).is_some() {
                continue;
            }
            if let Some(cert) = certify(logic, goal, lambdas, budget) {
                return ProofResult::Proved(cert);
            }
        }
    }
    ProofResult::Unknown(format!("no combination with sum <= {} found", budget.lambda_cap))
}

/// Checks the shape of the certificate and its multiplicative witness.
pub fn verify_certificate(logic: &LogicSpec, goal: &Goal, cert: &ToACertificate) -> bool {
    cert.lambdas.len() == goal.clause.disjuncts.len()
        && combination_formula(&cert.lambdas, &goal.clause.disjuncts)
            .is_some_and(|comb| oracles::verify_witness(logic, &goal.hypotheses, &comb, &cert.witness))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SketchRule {
    /// The combination itself.
    Start,
    /// `(φ + ψ) ∨ χ` to `φ ∨ ψ ∨ χ`
    Split,
    /// `φ ∨ φ ∨ χ` to `φ ∨ χ`
    Contract,
    /// `χ` to `χ ∨ φ`
    Weaken,
    /// Permutation of the disjuncts.
    Reorder,
}

/// Each step records the disjunct list it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SketchStep {
    pub rule: SketchRule,
    pub disjuncts: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sketch {
    pub steps: Vec<SketchStep>,
}

impl fmt::Display for Sketch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            let d: Vec<String> = s.disjuncts.iter().map(|x| format!("({x})")).collect();
            writeln!(f, "{} {:?}: {}", i + 1, s.rule, d.join(" | "))?;
        }
        Ok(())
    }
}

/// Rewrites the combination back into the goal's disjunction by splitting
/// sums, contracting repeats and weakening in the zero-coefficient terms.
pub fn expand_combination(cert: &ToACertificate, goal: &Goal) -> Result<Sketch, AltError> {
    let disjuncts = &goal.clause.disjuncts;
    if cert.lambdas.len() != disjuncts.len() {
        return Err(AltError::InvalidCertificate("coefficient count differs from disjunct count".into()));
    }
    let comb = combination_formula(&cert.lambdas, disjuncts)
        .ok_or_else(|| AltError::InvalidCertificate("all coefficients are zero".into()))?;
    let mut state = vec![comb];
    let mut steps = vec![SketchStep { rule: SketchRule::Start, disjuncts: state.clone() }];

    // Terms of the right-nested sum, then copies inside each multiple.
    let terms: Vec<(u64, &Formula)> = cert.lambdas.iter().copied().zip(disjuncts).filter(|(l, _)| *l > 0).collect();
    for _ in 1..terms.len() {
        let last = state.pop().expect("nonempty");
        let (a, b) = last.as_plus().expect("right-nested sum");
        state.push(a.clone());
        state.push(b.clone());
        steps.push(SketchStep { rule: SketchRule::Split, disjuncts: state.clone() });
    }
    for (k, (l, phi)) in terms.iter().enumerate() {
        for copies in (2..=*l).rev() {
            let (a, b) = state[k].as_plus().expect("left-nested multiple");
            debug_assert!(*a == Formula::scalar(copies - 1, phi) && b == *phi);
            let (a, b) = (a.clone(), b.clone());
            state[k] = a;
            state.push(b);
            steps.push(SketchStep { rule: SketchRule::Split, disjuncts: state.clone() });
        }
    }
    let mut i = 0;
    while i < state.len() {
        if state[..i].contains(&state[i]) {
            state.remove(i);
            steps.push(SketchStep { rule: SketchRule::Contract, disjuncts: state.clone() });
        } else {
            i += 1;
        }
    }
    let mut pool = state.clone();
    for d in disjuncts {
        match pool.iter().position(|x| x == d) {
            Some(p) => {
                pool.remove(p);
            }
            None => {
                state.push(d.clone());
                steps.push(SketchStep { rule: SketchRule::Weaken, disjuncts: state.clone() });
            }
        }
    }
    if state != *disjuncts {
        state = disjuncts.clone();
        steps.push(SketchStep { rule: SketchRule::Reorder, disjuncts: state });
    }
    Ok(Sketch { steps })
}

fn is_permutation(a: &[Formula], b: &[Formula]) -> bool {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    x.sort();
    y.sort();
    x == y
}

/// Checks each sketch step against its rule and the endpoints against the
/// certificate and the goal.
pub fn verify_sketch(sketch: &Sketch, cert: &ToACertificate, goal: &Goal) -> bool {
    let Some(comb) = combination_formula(&cert.lambdas, &goal.clause.disjuncts) else {
        return false;
    };
    let Some(first) = sketch.steps.first() else {
        return false;
    };
    if first.rule != SketchRule::Start || first.disjuncts != [comb] {
        return false;
    }
    for w in sketch.steps.windows(2) {
        let (from, to) = (&w[0].disjuncts, &w[1].disjuncts);
        let ok = match w[1].rule {
            SketchRule::Start => false,
            SketchRule::Split => (0..from.len()).any(|k| {
                from[k].as_plus().is_some_and(|(a, b)| {
                    let mut expect = from.clone();
                    expect[k] = a.clone();
                    expect.push(b.clone());
                    expect == *to
                })
            }),
            SketchRule::Contract => (0..from.len()).any(|k| {
                let mut expect = from.clone();
                let gone = expect.remove(k);
                expect.contains(&gone) && expect == *to
            }),
            SketchRule::Weaken => to.len() == from.len() + 1 && to[..from.len()] == from[..],
            SketchRule::Reorder => is_permutation(from, to),
        };
        if !ok {
            return false;
        }
    }
    sketch.steps.last().is_some_and(|s| s.disjuncts == goal.clause.disjuncts)
}

/// Per-goal results of the consequence pipeline.
#[derive(Debug, Clone)]
pub struct ConsequenceReport {
    pub goals: Vec<(Goal, ProofResult)>,
}

impl ConsequenceReport {
    /// Proved iff every goal is, refuted if any goal is.
    pub fn status(&self) -> &'static str {
        if self.goals.iter().any(|(_, r)| r.is_refuted()) {
            "refuted"
        } else if self.goals.iter().all(|(_, r)| r.is_proved()) {
            "proved"
        } else {
            "unknown"
        }
    }

    pub fn is_proved(&self) -> bool {
        self.status() == "proved"
    }

    pub fn is_refuted(&self) -> bool {
        self.status() == "refuted"
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        self.goals.iter().find_map(|(_, r)| match r {
            ProofResult::Refuted(cm) => Some(cm),
            _ => None,
        })
    }
}

/// Decomposes `Σ ⊢ f` into multiplicative clause goals and decides each.
pub fn prove_consequence(
    logic: &LogicSpec,
    hyps: &[Formula],
    f: &Formula,
    budget: &Budget,
) -> Result<ConsequenceReport, AltError> {
    require_toa(logic)?;
    let goals = decompose_consequence(hyps, f, budget.clause_cap)?;
    let mut out = Vec::with_capacity(goals.len());
    for g in goals {
        let r = prove_disjunction(logic, &g, budget)?;
        let refuted = r.is_refuted();
        out.push((g, r));
        if refuted {
            break;
        }
    }
    Ok(ConsequenceReport { goals: out })
}

/// `⊢ p ∨ ¬p` and `⊢ 0 → 1`.
#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub excluded_middle: ProofResult,
    pub zero_one: ProofResult,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.excluded_middle.is_proved() && self.zero_one.is_proved()
    }
}

pub fn sanity_lemma_useful(logic: &LogicSpec, budget: &Budget) -> Result<LemmaReport, AltError> {
    let p = Formula::var("p");
    let em = Goal::new(vec![], MultClause::new(vec![p.clone(), Formula::neg(p)]));
    let zo = Goal::new(vec![], MultClause::new(vec![Formula::imp(Formula::Zero, Formula::One)]));
    Ok(LemmaReport {
        excluded_middle: prove_disjunction(logic, &em, budget)?,
        zero_one: prove_disjunction(logic, &zo, budget)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::logics::lookup_logic;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn goal(hyps: &[&str], ds: &[&str]) -> Goal {
        Goal::new(hyps.iter().map(|s| f(s)).collect(), MultClause::new(ds.iter().map(|s| f(s)).collect()))
    }

    fn proved(logic: &str, g: &Goal) -> ToACertificate {
        let l = lookup_logic(logic).unwrap();
        match prove_disjunction(&l, g, &Budget::default()).unwrap() {
            ProofResult::Proved(c) => {
                assert!(verify_certificate(&l, g, &c));
                let sketch = expand_combination(&c, g).unwrap();
                assert!(verify_sketch(&sketch, &c, g), "{sketch}");
                c
            }
            r => panic!("{logic} {g}: {r:?}"),
        }
    }

    #[test]
    fn cancelled_variables_get_values() {
        let a = lookup_logic("A").unwrap();
        for g in [goal(&["q"], &["(p -> p) * ~q", "~q"]), goal(&[], &["(p -> p) * ~q"])] {
            let ProofResult::Refuted(cm) = prove_disjunction(&a, &g, &Budget::default()).unwrap() else { panic!() };
            assert!(cm.valuation.contains_key("p"));
            assert!(cm.refutes(&g.hypotheses, &g.clause.to_formula()));
        }
    }

    #[test]
    fn disjunction_examples() {
        assert_eq!(proved("RMt", &goal(&[], &["p", "~p"])).lambdas, vec![1, 1]);
        assert_eq!(proved("A", &goal(&[], &["p -> q", "q -> p"])).lambdas, vec![1, 1]);
        let g = goal(&[], &["p", "q"]);
        match prove_disjunction(&lookup_logic("A").unwrap(), &g, &Budget::default()).unwrap() {
            ProofResult::Refuted(cm) => {
                assert!(cm.valuation["p"] < 0 && cm.valuation["q"] < 0);
                assert!(cm.refutes(&[], &g.clause.to_formula()));
            }
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn abelian_with_hypotheses() {
        assert!(proved("A", &goal(&["p -> q", "q -> r"], &["p -> r"])).lambdas == vec![1]);
        let g = goal(&["p"], &["q", "q -> p"]);
        proved("A", &g);
        let g = goal(&["p -> q"], &["q -> p"]);
        match prove_disjunction(&lookup_logic("A").unwrap(), &g, &Budget::default()).unwrap() {
            ProofResult::Refuted(cm) => assert!(cm.refutes(&g.hypotheses, &g.clause.to_formula())),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn generic_logic_search() {
        let c = proved("BIULm", &goal(&[], &["p", "~p"]));
        assert_eq!(c.lambdas, vec![1, 1]);
        let l = lookup_logic("BIULm").unwrap();
        assert!(prove_disjunction(&l, &goal(&[], &["p", "q"]), &Budget::default()).unwrap().is_refuted());
    }

    #[test]
    fn sketch_examples() {
        let g = goal(&[], &["p", "~p"]);
        let c = ToACertificate { lambdas: vec![1, 1], witness: MultWitness::ChainExhaustive { half_width: 2, chains: vec![] } };
        let s = expand_combination(&c, &g).unwrap();
        assert_eq!(s.steps.len(), 2);
        assert_eq!(s.steps[1].disjuncts, g.clause.disjuncts);

        let g = goal(&[], &["p -> p", "q"]);
        let c = ToACertificate { lambdas: vec![1, 0], ..c.clone() };
        let s = expand_combination(&c, &g).unwrap();
        assert_eq!(s.steps.iter().map(|x| x.rule).collect::<Vec<_>>(), [SketchRule::Start, SketchRule::Weaken]);

        let c = ToACertificate { lambdas: vec![2, 0], ..c };
        let s = expand_combination(&c, &g).unwrap();
        assert!(verify_sketch(&s, &c, &g));
        assert_eq!(
            s.steps.iter().map(|x| x.rule).collect::<Vec<_>>(),
            [SketchRule::Start, SketchRule::Split, SketchRule::Contract, SketchRule::Weaken]
        );

        let bad = ToACertificate { lambdas: vec![0, 0], ..c };
        assert!(matches!(expand_combination(&bad, &g), Err(AltError::InvalidCertificate(_))));
    }

    #[test]
    fn tampered_sketch_is_rejected() {
        let g = goal(&[], &["p", "~p", "q"]);
        let c = ToACertificate { lambdas: vec![1, 1, 0], witness: MultWitness::ChainExhaustive { half_width: 2, chains: vec![] } };
        let mut s = expand_combination(&c, &g).unwrap();
        assert!(verify_sketch(&s, &c, &g));
        s.steps[1].disjuncts[0] = f("q");
        assert!(!verify_sketch(&s, &c, &g));
    }

    #[test]
    fn consequence_examples() {
        let b = Budget::default();
        let iuml = lookup_logic("IUMLm").unwrap();
        assert!(prove_consequence(&iuml, &[], &f("1 -> 0"), &b).unwrap().is_proved());
        let a = lookup_logic("A").unwrap();
        assert!(prove_consequence(&a, &[f("p -> q"), f("q -> r")], &f("p -> r"), &b).unwrap().is_proved());
        let rmt = lookup_logic("RMt").unwrap();
        let r = prove_consequence(&rmt, &[], &f("1 -> 0"), &b).unwrap();
        assert!(r.is_refuted());
        assert!(r.countermodel().unwrap().refutes(&[], &f("1 -> 0")));
        assert!(matches!(
            prove_consequence(&lookup_logic("MLL").unwrap(), &[], &f("p"), &b),
            Err(AltError::LogicWithoutToA(_))
        ));
    }

    #[test]
    fn lemma_useful() {
        for name in ["A", "RMt", "IUMLm", "BIULm"] {
            let r = sanity_lemma_useful(&lookup_logic(name).unwrap(), &Budget::default()).unwrap();
            assert!(r.passed(), "{name}: {r:?}");
        }
    }

    #[test]
    fn composition_enumeration() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(subsets(2), vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }
}
