//! Uniform deductive interpolants.
//!
//! For Abelian logic the multiplicative interpolant is the Fourier–Motzkin
//! projection of the hypothesis cone. For the Sugihara logics it is found
//! by enumerating term functions over the kept variables. Lattice
//! hypotheses are handled by splitting disjunctions and recombining.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::alternatives::{prove_consequence, AltError};
use crate::formula::Formula;
use crate::linear::{form_to_formula, project_fm, remove_cone_redundant, translate_abelian};
use crate::logics::{LogicSpec, OracleKind};
use crate::normalizer::to_mult_clauses;
use crate::oracles::{sugihara_decide, sugihara_half_width, Budget, OracleVerdict};
use crate::semantics::{for_each_assignment, ChainAlgebra};

/// Term-function enumeration depth for the Sugihara logics.
pub const SUGIHARA_DEPTH: usize = 4;
/// Largest number of term-function classes kept during enumeration.
pub const CLASS_LIMIT: usize = 8192;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("interpolants are not supported for {0}")]
    UnsupportedLogic(String),
    #[error("term enumeration exceeded its budget: {0}")]
    EnumerationBudgetExceeded(String),
    #[error("variables {0:?} are not among the hypothesis variables")]
    ForeignVariables(Vec<String>),
    #[error(transparent)]
    Engine(#[from] AltError),
}

fn vars_of(fs: &[Formula]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for f in fs {
        f.collect_vars(&mut out);
    }
    out
}

/// Finite `Π` over `keep` with `Σ ⊢ φ ⟺ Π ⊢ φ` for multiplicative `φ`
/// sharing only `keep` with `Σ`.
pub fn mult_uniform_interpolant(
    logic: &LogicSpec,
    hyps: &[Formula],
    keep: &BTreeSet<String>,
) -> Result<Vec<Formula>, InterpError> {
    match logic.capabilities.oracle {
        OracleKind::Abelian => Ok(abelian_interpolant(hyps, keep)),
        OracleKind::Sugihara { even } => sugihara_interpolant(even, hyps, keep),
        OracleKind::Hilbert => Err(InterpError::UnsupportedLogic(logic.name.clone())),
    }
}

fn abelian_interpolant(hyps: &[Formula], keep: &BTreeSet<String>) -> Vec<Formula> {
    let forms: Vec<_> = hyps.iter().map(|h| translate_abelian(h).expect("multiplicative")).collect();
    let rows: Vec<_> = project_fm(&forms, keep).into_iter().filter(|r| !r.is_zero()).collect();
    remove_cone_redundant(rows).iter().map(form_to_formula).collect()
}

/// Element indices of a formula under every valuation of the kept
/// variables, concatenated over the decision chains.
type Profile = Vec<u8>;

struct TermFunctions {
    chains: Vec<ChainAlgebra>,
    vars: Vec<String>,
    /// `(chain, start, end)` for each block of the profile.
    blocks: Vec<(usize, usize, usize)>,
}

impl TermFunctions {
    fn new(chains: Vec<ChainAlgebra>, vars: Vec<String>) -> Self {
        let mut blocks = Vec::new();
        let mut start = 0;
        for (c, chain) in chains.iter().enumerate() {
            let len = chain.size().pow(vars.len() as u32);
            blocks.push((c, start, start + len));
            start += len;
        }
        TermFunctions { chains, vars, blocks }
    }

    fn atom(&self, f: &Formula) -> Profile {
        let mut out = Vec::new();
        for c in &self.chains {
            let domain: Vec<usize> = (0..c.size()).collect();
            for_each_assignment(&self.vars, &domain, |vals| {
                let v = self.vars.iter().map(String::as_str).zip(vals.iter().copied()).collect();
                out.push(c.eval_indexed(&v, f).expect("total valuation") as u8);
                true
            });
        }
        out
    }

    fn pointwise(&self, a: &Profile, b: &Profile, imp: bool) -> Profile {
        let mut out = vec![0u8; a.len()];
        for &(c, lo, hi) in &self.blocks {
            let chain = &self.chains[c];
            for i in lo..hi {
                let (x, y) = (a[i] as usize, b[i] as usize);
                out[i] = if imp { chain.implies(x, y) } else { chain.fuse(x, y) } as u8;
            }
        }
        out
    }

    fn designated(&self, p: &Profile) -> Vec<bool> {
        let mut out = vec![false; p.len()];
        for &(c, lo, hi) in &self.blocks {
            for i in lo..hi {
                out[i] = self.chains[c].is_designated(p[i] as usize);
            }
        }
        out
    }

    /// One representative per term function, closing under `·` and `→`
    /// for `depth` rounds; one more round must add nothing.
    fn classes(&self, depth: usize) -> Result<Vec<(Formula, Profile)>, InterpError> {
        let mut reps: Vec<(Formula, Profile)> = Vec::new();
        let mut seen: HashSet<Profile> = HashSet::new();
        for f in self.vars.iter().map(|v| Formula::var(v.clone())).chain([Formula::One, Formula::Zero]) {
            let p = self.atom(&f);
            if seen.insert(p.clone()) {
                reps.push((f, p));
            }
        }
        // Semi-naive: only pairs involving a class from the last round.
        let mut old = 0;
        for round in 0..=depth {
            let n = reps.len();
            let mut pending: Vec<(Formula, Profile)> = Vec::new();
            let mut pending_seen: HashSet<Profile> = HashSet::new();
            for i in 0..n {
                for j in 0..n {
                    if i < old && j < old {
                        continue;
                    }
                    let (a, b) = (&reps[i], &reps[j]);
                    let mut cands = vec![(true, self.pointwise(&a.1, &b.1, true))];
                    if i <= j {
                        cands.push((false, self.pointwise(&a.1, &b.1, false)));
                    }
                    for (imp, p) in cands {
                        if !seen.contains(&p) && pending_seen.insert(p.clone()) {
                            let f = if imp {
                                Formula::imp(a.0.clone(), b.0.clone())
                            } else {
                                Formula::fuse(a.0.clone(), b.0.clone())
                            };
                            pending.push((f, p));
                        }
                    }
                }
            }
            if pending.is_empty() {
                return Ok(reps);
            }
            if round == depth {
                break;
            }
            if reps.len() + pending.len() > CLASS_LIMIT {
                return Err(InterpError::EnumerationBudgetExceeded(format!("more than {CLASS_LIMIT} classes")));
            }
            seen.extend(pending_seen);
            reps.extend(pending);
            old = n;
        }
        Err(InterpError::EnumerationBudgetExceeded(format!("no fixpoint after {depth} rounds")))
    }
}

fn sugihara_interpolant(even: bool, hyps: &[Formula], keep: &BTreeSet<String>) -> Result<Vec<Formula>, InterpError> {
    if keep.len() > 2 {
        return Err(InterpError::UnsupportedLogic("Sugihara interpolants need at most 2 kept variables".into()));
    }
    let vars: Vec<String> = keep.iter().cloned().collect();
    let hw = sugihara_half_width(vars.len());
    let mut chains = vec![ChainAlgebra::sugihara(hw, true)];
    if even {
        chains.push(ChainAlgebra::sugihara(hw, false));
    }
    let tf = TermFunctions::new(chains, vars);
    let mut derivable: Vec<(Formula, Vec<bool>)> = tf
        .classes(SUGIHARA_DEPTH)?
        .into_iter()
        .filter(|(f, _)| matches!(sugihara_decide(even, hyps, f, None), Ok(OracleVerdict::Proved(_))))
        .map(|(f, p)| {
            let d = tf.designated(&p);
            (f, d)
        })
        .collect();
    // Formulas over the kept variables are compared on the profile chains
    // directly; drop members implied by the rest, largest first.
    derivable.sort_by_key(|(f, _)| std::cmp::Reverse(f.size()));
    let mut i = 0;
    while i < derivable.len() {
        let implied = (0..derivable[i].1.len()).all(|k| {
            derivable[i].1[k] || derivable.iter().enumerate().any(|(j, (_, d))| j != i && !d[k])
        });
        if implied {
            derivable.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(derivable.into_iter().rev().map(|(f, _)| f).collect())
}

/// Interpolant for arbitrary hypotheses: `∧` splits, `∨` recurses on each
/// side and the results are combined pairwise by `∨`. Duplicates up to
/// interderivability are removed.
pub fn lift_interpolant(
    logic: &LogicSpec,
    hyps: &[Formula],
    keep: &BTreeSet<String>,
    budget: &Budget,
) -> Result<Vec<Formula>, InterpError> {
    if !logic.has_toa() {
        return Err(InterpError::UnsupportedLogic(logic.name.clone()));
    }
    let extra: Vec<String> = keep.difference(&vars_of(hyps)).cloned().collect();
    if !extra.is_empty() {
        return Err(InterpError::ForeignVariables(extra));
    }
    let raw = lift_rec(logic, hyps, keep, budget)?;
    let mut out: Vec<Formula> = Vec::new();
    for f in raw {
        let mut duplicate = false;
        for g in &out {
            if interderivable(logic, &f, g, budget)? {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            out.push(f);
        }
    }
    Ok(out)
}

fn interderivable(logic: &LogicSpec, a: &Formula, b: &Formula, budget: &Budget) -> Result<bool, InterpError> {
    Ok(prove_consequence(logic, std::slice::from_ref(a), b, budget)?.is_proved()
        && prove_consequence(logic, std::slice::from_ref(b), a, budget)?.is_proved())
}

fn lift_rec(
    logic: &LogicSpec,
    hyps: &[Formula],
    keep: &BTreeSet<String>,
    budget: &Budget,
) -> Result<Vec<Formula>, InterpError> {
    let mut units = Vec::new();
    let mut split: Option<Vec<Formula>> = None;
    for h in hyps {
        for c in to_mult_clauses(h, budget.clause_cap).map_err(AltError::from)? {
            if c.disjuncts.len() == 1 || split.is_some() {
                if c.disjuncts.len() == 1 {
                    units.push(c.disjuncts[0].clone());
                } else {
                    units.push(c.to_formula());
                }
            } else {
                split = Some(c.disjuncts);
            }
        }
    }
    let Some(disjuncts) = split else {
        return mult_uniform_interpolant(logic, &units, keep);
    };
    // ψ₁ ∨ (ψ₂ ∨ …) with the remaining hypotheses shared by both branches.
    let left = disjuncts[0].clone();
    let right = Formula::disj_all(&disjuncts[1..]).expect("clause has at least two disjuncts");
    let branch = |d: Formula| -> Result<Vec<Formula>, InterpError> {
        let mut hs = units.clone();
        hs.push(d);
        lift_rec(logic, &hs, keep, budget)
    };
    let (p1, p2) = (branch(left)?, branch(right)?);
    let mut out = Vec::new();
    for a in &p1 {
        for b in &p2 {
            let d = if a == b { a.clone() } else { Formula::disj(a.clone(), b.clone()) };
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterpFailure {
    VariableCondition { formula: Formula },
    NotDerivable { formula: Formula, status: String },
    ProbeOutOfScope { probe: Formula },
    ProbeMismatch { probe: Formula, from_sigma: String, from_pi: String },
}

impl fmt::Display for InterpFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpFailure::VariableCondition { formula } => write!(f, "{formula} uses variables outside X"),
            InterpFailure::NotDerivable { formula, status } => write!(f, "hypotheses do not prove {formula} ({status})"),
            InterpFailure::ProbeOutOfScope { probe } => write!(f, "probe {probe} shares variables outside X"),
            InterpFailure::ProbeMismatch { probe, from_sigma, from_pi } => {
                write!(f, "probe {probe}: {from_sigma} from hypotheses, {from_pi} from interpolant")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpReport {
    pub checked_probes: usize,
    pub failure: Option<InterpFailure>,
}

impl InterpReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the variable condition, `Σ ⊢ π` for each `π ∈ Π`, and
/// `Σ ⊢ φ ⟺ Π ⊢ φ` on every probe, stopping at the first failure.
pub fn verify_interpolant(
    logic: &LogicSpec,
    hyps: &[Formula],
    pi: &[Formula],
    keep: &BTreeSet<String>,
    probes: &[Formula],
    budget: &Budget,
) -> Result<InterpReport, InterpError> {
    let fail = |failure, checked_probes| Ok(InterpReport { checked_probes, failure: Some(failure) });
    for p in pi {
        if !p.vars().is_subset(keep) {
            return fail(InterpFailure::VariableCondition { formula: p.clone() }, 0);
        }
    }
    for p in pi {
        let r = prove_consequence(logic, hyps, p, budget)?;
        if !r.is_proved() {
            return fail(InterpFailure::NotDerivable { formula: p.clone(), status: r.status().into() }, 0);
        }
    }
    let sigma_vars = vars_of(hyps);
    for (k, probe) in probes.iter().enumerate() {
        if !probe.vars().intersection(&sigma_vars).all(|v| keep.contains(v)) {
            return fail(InterpFailure::ProbeOutOfScope { probe: probe.clone() }, k);
        }
        let a = prove_consequence(logic, hyps, probe, budget)?.status();
        let b = prove_consequence(logic, pi, probe, budget)?.status();
        if a != b || a == "unknown" {
            return fail(
                InterpFailure::ProbeMismatch { probe: probe.clone(), from_sigma: a.into(), from_pi: b.into() },
                k,
            );
        }
    }
    Ok(InterpReport { checked_probes: probes.len(), failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::logics::lookup_logic;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn fs(xs: &[&str]) -> Vec<Formula> {
        xs.iter().map(|s| f(s)).collect()
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn abelian_examples() {
        let a = lookup_logic("A").unwrap();
        let pi = mult_uniform_interpolant(&a, &fs(&["p -> q", "q -> r"]), &set(&["p", "r"])).unwrap();
        assert_eq!(pi, fs(&["p -> r"]));
        let pi = mult_uniform_interpolant(&a, &fs(&["p -> q"]), &set(&["q"])).unwrap();
        assert!(pi.is_empty());
    }

    #[test]
    fn identity_case_is_interderivable() {
        let a = lookup_logic("A").unwrap();
        let b = Budget::default();
        let sigma = fs(&["p -> q * q", "r -> p"]);
        let pi = lift_interpolant(&a, &sigma, &set(&["p", "q", "r"]), &b).unwrap();
        for s in &sigma {
            assert!(prove_consequence(&a, &pi, s, &b).unwrap().is_proved());
        }
        for p in &pi {
            assert!(prove_consequence(&a, &sigma, p, &b).unwrap().is_proved());
        }
    }

    #[test]
    fn verification_examples() {
        let a = lookup_logic("A").unwrap();
        let b = Budget::default();
        let sigma = fs(&["p -> q", "q -> r"]);
        let keep = set(&["p", "r"]);
        let probes = fs(&["p -> r", "(p * p) -> (r * r)"]);
        assert!(verify_interpolant(&a, &sigma, &fs(&["p -> r"]), &keep, &probes, &b).unwrap().passed());
        let r = verify_interpolant(&a, &sigma, &fs(&["p -> q"]), &keep, &probes, &b).unwrap();
        assert!(matches!(r.failure, Some(InterpFailure::VariableCondition { .. })));
        let r = verify_interpolant(&a, &sigma, &[], &keep, &probes, &b).unwrap();
        assert!(matches!(r.failure, Some(InterpFailure::ProbeMismatch { .. })));
    }

    #[test]
    fn lifted_disjunctive_hypotheses() {
        let a = lookup_logic("A").unwrap();
        let b = Budget::default();
        let sigma = fs(&["(p -> q) | (p -> r)", "q -> s", "r -> s"]);
        let keep = set(&["p", "s"]);
        let pi = lift_interpolant(&a, &sigma, &keep, &b).unwrap();
        let probes = fs(&["p -> s", "s -> p", "(p -> s) | t", "p * p -> s * s", "p | s"]);
        let r = verify_interpolant(&a, &sigma, &pi, &keep, &probes, &b).unwrap();
        assert!(r.passed(), "{pi:?} {:?}", r.failure);
    }

    #[test]
    fn sugihara_interpolants() {
        let b = Budget::default();
        for name in ["IUMLm", "RMt"] {
            let l = lookup_logic(name).unwrap();
            let sigma = fs(&["p -> q", "q -> r"]);
            let keep = set(&["p", "r"]);
            let pi = mult_uniform_interpolant(&l, &sigma, &keep).unwrap();
            let probes = fs(&["p -> r", "r -> p", "p * r -> r", "(p -> r) * (p -> r)", "p -> s"]);
            let r = verify_interpolant(&l, &sigma, &pi, &keep, &probes, &b).unwrap();
            assert!(r.passed(), "{name}: {pi:?} {:?}", r.failure);
        }
    }

    #[test]
    fn unsupported() {
        let biul = lookup_logic("BIULm").unwrap();
        assert!(matches!(
            mult_uniform_interpolant(&biul, &fs(&["p"]), &set(&["p"])),
            Err(InterpError::UnsupportedLogic(_))
        ));
    }
}
