//! Axiom systems, named logics and schema instantiation.
//!
//! Axiom templates are written over the metavariables `Phi`, `Psi` and
//! `Chi`, which never clash with object variables (those start lowercase).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::formula::{is_metavariable, parse_template, Formula, Substitution};
use crate::oracles::{self, Budget, OracleVerdict};
use crate::semantics::{self, ChainAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("unknown logic '{0}'")]
    UnknownLogic(String),
    #[error("metavariable '{0}' is not bound")]
    MissingMetavariable(String),
    #[error("invalid knotted parameters: {0}")]
    InvalidKnotted(String),
}

/// Indexed axiom families (one instance per `n ∈ ℕ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `n φ → φⁿ`
    BalanceForward,
    /// `φⁿ → n φ`
    BalanceBackward,
}

impl Family {
    pub fn template(self, n: u64) -> Formula {
        let phi = Formula::var("Phi");
        let (mult, pow) = (Formula::scalar(n, &phi), Formula::power(&phi, n));
        match self {
            Family::BalanceForward => Formula::imp(mult, pow),
            Family::BalanceBackward => Formula::imp(pow, mult),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Template {
    Fixed(Formula),
    Indexed(Family),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSchema {
    pub name: String,
    pub template: Template,
}

impl AxiomSchema {
    fn fixed(name: &str, text: &str) -> Self {
        AxiomSchema {
            name: name.to_string(),
            template: Template::Fixed(parse_template(text).expect("built-in template parses")),
        }
    }

    fn indexed(name: &str, family: Family) -> Self {
        AxiomSchema {
            name: name.to_string(),
            template: Template::Indexed(family),
        }
    }

    /// Template for index `n` (ignored by fixed schemas).
    pub fn template_at(&self, n: u64) -> Formula {
        match &self.template {
            Template::Fixed(f) => f.clone(),
            Template::Indexed(fam) => fam.template(n),
        }
    }

    pub fn is_indexed(&self) -> bool {
        matches!(self.template, Template::Indexed(_))
    }

    pub fn is_multiplicative(&self) -> bool {
        self.template_at(1).is_multiplicative()
    }

    pub fn metavariables(&self) -> Vec<String> {
        self.template_at(1)
            .vars()
            .into_iter()
            .filter(|v| is_metavariable(v))
            .collect()
    }
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.template {
            Template::Fixed(t) => write!(f, "{}: {}", self.name, t),
            Template::Indexed(fam) => write!(f, "{}[n]: {} (n = 2 shown)", self.name, fam.template(2)),
        }
    }
}

/// Replaces every metavariable of the template uniformly.
pub fn instantiate(template: &Formula, args: &Substitution) -> Result<Formula, LogicError> {
    for v in template.vars() {
        if is_metavariable(&v) && args.get(&v).is_none() {
            return Err(LogicError::MissingMetavariable(v));
        }
    }
    Ok(template.substitute(args))
}

/// Matches `f` against `template`, binding metavariables consistently.
pub fn match_template(template: &Formula, f: &Formula) -> Option<Substitution> {
    let mut binding = BTreeMap::new();
    if match_into(template, f, &mut binding) {
        Some(binding.into_iter().collect())
    } else {
        None
    }
}

fn match_into(t: &Formula, f: &Formula, b: &mut BTreeMap<String, Formula>) -> bool {
    match (t, f) {
        (Formula::Var(m), _) if is_metavariable(m) => match b.get(m) {
            Some(bound) => bound == f,
            None => {
                b.insert(m.clone(), f.clone());
                true
            }
        },
        (Formula::Var(x), Formula::Var(y)) => x == y,
        (Formula::One, Formula::One) | (Formula::Zero, Formula::Zero) => true,
        (Formula::Conj(a, c), Formula::Conj(x, y))
        | (Formula::Disj(a, c), Formula::Disj(x, y))
        | (Formula::Fuse(a, c), Formula::Fuse(x, y))
        | (Formula::Imp(a, c), Formula::Imp(x, y)) => match_into(a, x, b) && match_into(c, y, b),
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleSchema {
    /// from `φ` and `φ → ψ` infer `ψ`
    ModusPonens,
    /// from `φ` and `ψ` infer `φ ∧ ψ`
    Adjunction,
    /// from `n φ` infer `φ` (`n ≥ 1`)
    Unperforated,
}

impl RuleSchema {
    pub fn name(self) -> &'static str {
        match self {
            RuleSchema::ModusPonens => "mp",
            RuleSchema::Adjunction => "adj",
            RuleSchema::Unperforated => "u_n",
        }
    }

    /// Premise templates; `n` is only used by the unperforated rule.
    pub fn premises(self, n: u64) -> Vec<Formula> {
        let (phi, psi) = (Formula::var("Phi"), Formula::var("Psi"));
        match self {
            RuleSchema::ModusPonens => vec![phi.clone(), Formula::imp(phi, psi)],
            RuleSchema::Adjunction => vec![phi, psi],
            RuleSchema::Unperforated => vec![Formula::scalar(n, &phi)],
        }
    }

    pub fn conclusion(self) -> Formula {
        let (phi, psi) = (Formula::var("Phi"), Formula::var("Psi"));
        match self {
            RuleSchema::ModusPonens => psi,
            RuleSchema::Adjunction => Formula::conj(phi, psi),
            RuleSchema::Unperforated => phi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseSystem {
    Mll,
    Mll0,
    MllU,
    Mll0U,
    MallMinus,
    IulMinus,
    IulStar,
}

impl BaseSystem {
    pub fn name(self) -> &'static str {
        match self {
            BaseSystem::Mll => "MLL",
            BaseSystem::Mll0 => "MLL0",
            BaseSystem::MllU => "MLLu",
            BaseSystem::Mll0U => "MLL0u",
            BaseSystem::MallMinus => "MALLm",
            BaseSystem::IulMinus => "IULm",
            BaseSystem::IulStar => "IULstar",
        }
    }

    pub fn axioms(self) -> Vec<AxiomSchema> {
        let mut out = mll_axioms();
        match self {
            BaseSystem::Mll | BaseSystem::MllU => {}
            BaseSystem::Mll0 | BaseSystem::Mll0U => out.push(zero_one()),
            BaseSystem::MallMinus | BaseSystem::IulMinus | BaseSystem::IulStar => {
                out.extend(mall_axioms());
                if self != BaseSystem::MallMinus {
                    out.push(AxiomSchema::fixed(
                        "prelinearity",
                        "((Phi -> Psi) & 1) | ((Psi -> Phi) & 1)",
                    ));
                }
                if self == BaseSystem::IulStar {
                    out.push(AxiomSchema::fixed("excluded_middle", "Phi | ~Phi"));
                    out.push(zero_one());
                }
            }
        }
        out
    }

    pub fn rules(self) -> Vec<RuleSchema> {
        match self {
            BaseSystem::Mll | BaseSystem::Mll0 => vec![RuleSchema::ModusPonens],
            BaseSystem::MllU | BaseSystem::Mll0U => {
                vec![RuleSchema::ModusPonens, RuleSchema::Unperforated]
            }
            _ => vec![RuleSchema::ModusPonens, RuleSchema::Adjunction],
        }
    }
}

fn mll_axioms() -> Vec<AxiomSchema> {
    vec![
        AxiomSchema::fixed("trans", "(Phi -> Psi) -> ((Psi -> Chi) -> (Phi -> Chi))"),
        AxiomSchema::fixed("perm", "(Phi -> (Psi -> Chi)) -> (Psi -> (Phi -> Chi))"),
        AxiomSchema::fixed("id", "Phi -> Phi"),
        AxiomSchema::fixed("dn", "~~Phi -> Phi"),
        AxiomSchema::fixed("fuse_elim", "(Phi -> (Psi -> Chi)) -> ((Phi * Psi) -> Chi)"),
        AxiomSchema::fixed("fuse_intro", "Phi -> (Psi -> (Phi * Psi))"),
        AxiomSchema::fixed("one_intro", "Phi -> (1 -> Phi)"),
        AxiomSchema::fixed("one", "1"),
    ]
}

fn mall_axioms() -> Vec<AxiomSchema> {
    vec![
        AxiomSchema::fixed("conj_l", "(Phi & Psi) -> Phi"),
        AxiomSchema::fixed("conj_r", "(Phi & Psi) -> Psi"),
        AxiomSchema::fixed("conj_intro", "((Phi -> Psi) & (Phi -> Chi)) -> (Phi -> (Psi & Chi))"),
        AxiomSchema::fixed("disj_l", "Phi -> (Phi | Psi)"),
        AxiomSchema::fixed("disj_r", "Psi -> (Phi | Psi)"),
        AxiomSchema::fixed("disj_elim", "((Phi -> Chi) & (Psi -> Chi)) -> ((Phi | Psi) -> Chi)"),
    ]
}

fn zero_one() -> AxiomSchema {
    AxiomSchema::fixed("zero_one", "0 -> 1")
}

/// The decision procedure a logic's multiplicative fragment is routed to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    /// Linear forms over the integers.
    Abelian,
    /// Exhaustive Sugihara chains; `even` adds the chains without a fixpoint
    /// of negation.
    Sugihara { even: bool },
    /// Budgeted forward proof search.
    Hilbert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capabilities {
    pub has_toa: bool,
    pub proves_one_to_zero: bool,
    pub oracle: OracleKind,
}

/// Algebras known to validate a logic; used for cheap refutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    SugiharaOdd,
    SugiharaEven,
    Integers,
}

/// One `(r p)^k → m (p^s)` axiom of a knotted extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnotParam {
    pub r: u64,
    pub k: u64,
    pub m: u64,
    pub s: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicSpec {
    pub name: String,
    pub base: BaseSystem,
    pub extra_axioms: Vec<AxiomSchema>,
    pub capabilities: Capabilities,
}

/// Axioms and rules used by proof search in the multiplicative language.
#[derive(Debug, Clone)]
pub struct MultSystem {
    pub axioms: Vec<AxiomSchema>,
    pub unperforated: bool,
}

impl LogicSpec {
    pub fn axioms(&self) -> Vec<AxiomSchema> {
        let mut out = self.base.axioms();
        for ax in &self.extra_axioms {
            if !out.iter().any(|a| a.template == ax.template) {
                out.push(ax.clone());
            }
        }
        out
    }

    pub fn rules(&self) -> Vec<RuleSchema> {
        self.base.rules()
    }

    pub fn axiom(&self, name: &str) -> Option<AxiomSchema> {
        self.axioms().into_iter().find(|a| a.name == name)
    }

    /// For logics with a theorem of alternatives the multiplicative fragment
    /// is MLL with `0 → 1`, the unperforated rule and the multiplicative
    /// extra axioms. Otherwise the multiplicative axioms of the logic with
    /// its own rules.
    pub fn multiplicative_system(&self) -> MultSystem {
        let mut axioms: Vec<AxiomSchema> = if self.capabilities.has_toa {
            let mut ax = mll_axioms();
            ax.push(zero_one());
            ax
        } else {
            Vec::new()
        };
        for ax in self.axioms() {
            if ax.is_multiplicative() && !axioms.iter().any(|a| a.template == ax.template) {
                axioms.push(ax);
            }
        }
        MultSystem {
            axioms,
            unperforated: self.capabilities.has_toa
                || self.rules().contains(&RuleSchema::Unperforated),
        }
    }

    pub fn sound_models(&self) -> Vec<ModelKind> {
        use ModelKind::*;
        match self.name.as_str() {
            "A" => vec![Integers],
            "RMt" => vec![SugiharaOdd, SugiharaEven],
            "IUMLm" => vec![SugiharaOdd],
            "BIULm" => vec![SugiharaOdd, Integers],
            n if n.starts_with("knotted(") => vec![SugiharaOdd],
            _ => vec![SugiharaOdd, SugiharaEven, Integers],
        }
    }

    pub fn has_toa(&self) -> bool {
        self.capabilities.has_toa
    }
}

fn preset(
    name: &str,
    base: BaseSystem,
    extra: Vec<AxiomSchema>,
    has_toa: bool,
    proves_one_to_zero: bool,
    oracle: OracleKind,
) -> LogicSpec {
    LogicSpec {
        name: name.to_string(),
        base,
        extra_axioms: extra,
        capabilities: Capabilities {
            has_toa,
            proves_one_to_zero,
            oracle,
        },
    }
}

fn mingle() -> Vec<AxiomSchema> {
    vec![
        AxiomSchema::fixed("mingle", "Phi -> (Phi + Phi)"),
        AxiomSchema::fixed("mingle_converse", "(Phi + Phi) -> Phi"),
    ]
}

fn presets() -> &'static Vec<LogicSpec> {
    static REGISTRY: OnceLock<Vec<LogicSpec>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        use BaseSystem::*;
        use OracleKind::*;
        let mut iuml = mingle();
        iuml.push(AxiomSchema::fixed("one_zero", "1 -> 0"));
        vec![
            preset("MLL", Mll, vec![], false, false, Hilbert),
            preset("MLL0", Mll0, vec![], false, false, Hilbert),
            preset("MLLu", MllU, vec![], false, false, Hilbert),
            preset("MLL0u", Mll0U, vec![], false, false, Hilbert),
            preset("MALLm", MallMinus, vec![], false, false, Hilbert),
            preset("IULm", IulMinus, vec![], false, false, Hilbert),
            preset("IULstar", IulStar, vec![], false, false, Hilbert),
            preset(
                "A",
                IulMinus,
                vec![
                    AxiomSchema::fixed("abelian", "(Phi -> Phi) -> 0"),
                    zero_one(),
                ],
                true,
                true,
                Abelian,
            ),
            preset("RMt", IulMinus, mingle(), true, false, Sugihara { even: true }),
            preset("IUMLm", IulMinus, iuml, true, true, Sugihara { even: false }),
            preset(
                "BIULm",
                IulMinus,
                vec![
                    AxiomSchema::indexed("balance_fwd", Family::BalanceForward),
                    AxiomSchema::indexed("balance_bwd", Family::BalanceBackward),
                ],
                true,
                true,
                Hilbert,
            ),
        ]
    })
}

pub fn preset_names() -> Vec<&'static str> {
    presets().iter().map(|l| l.name.as_str()).collect()
}

/// Looks up a preset by name; `knotted(t,u,r:k:m:s,…)` builds a knotted
/// extension of IULstar.
pub fn lookup_logic(name: &str) -> Result<LogicSpec, LogicError> {
    let name = name.trim();
    if let Some(args) = name.strip_prefix("knotted(").and_then(|s| s.strip_suffix(')')) {
        return parse_knotted(args);
    }
    presets()
        .iter()
        .find(|l| l.name == name)
        .cloned()
        .ok_or_else(|| LogicError::UnknownLogic(name.to_string()))
}

fn parse_knotted(args: &str) -> Result<LogicSpec, LogicError> {
    let bad = |m: &str| LogicError::InvalidKnotted(m.to_string());
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    if parts.len() < 3 {
        return Err(bad("expected knotted(t,u,r:k:m:s,...)"));
    }
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad(&format!("'{s}' is not a number")));
    let (t, u) = (num(parts[0])?, num(parts[1])?);
    let params = parts[2..]
        .iter()
        .map(|p| {
            let f: Vec<&str> = p.split(':').collect();
            if f.len() != 4 {
                return Err(bad(&format!("'{p}' is not r:k:m:s")));
            }
            Ok(KnotParam {
                r: num(f[0])?,
                k: num(f[1])?,
                m: num(f[2])?,
                s: num(f[3])?,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    knotted(t, u, &params)
}

/// `IULstar ⊕ {p^t → p^(t+u)} ∪ {(rᵢ p)^kᵢ → mᵢ(p^sᵢ) | i < u}` with every
/// parameter positive, `rᵢ, sᵢ ≥ t` and `rᵢ ≡ sᵢ ≡ i (mod u)`.
pub fn knotted(t: u64, u: u64, params: &[KnotParam]) -> Result<LogicSpec, LogicError> {
    let bad = |m: String| LogicError::InvalidKnotted(m);
    if t == 0 || u == 0 {
        return Err(bad("t and u must be positive".into()));
    }
    if params.len() as u64 != u {
        return Err(bad(format!("expected {u} parameter groups, got {}", params.len())));
    }
    for (i, p) in params.iter().enumerate() {
        let i = i as u64;
        if [p.r, p.k, p.m, p.s].contains(&0) {
            return Err(bad(format!("group {i} has a zero entry")));
        }
        if p.r < t || p.s < t {
            return Err(bad(format!("group {i}: r and s must be at least t = {t}")));
        }
        if p.r % u != i % u || p.s % u != i % u {
            return Err(bad(format!("group {i}: r and s must be congruent to {i} mod {u}")));
        }
    }
    let mut extra = vec![AxiomSchema::fixed(
        "knot",
        &format!("Phi^{t} -> Phi^{}", t + u),
    )];
    for (i, p) in params.iter().enumerate() {
        extra.push(AxiomSchema::fixed(
            &format!("knot_{i}"),
            &format!("({} * Phi)^{} -> {} * Phi^{}", p.r, p.k, p.m, p.s),
        ));
    }
    let groups: Vec<String> = params
        .iter()
        .map(|p| format!("{}:{}:{}:{}", p.r, p.k, p.m, p.s))
        .collect();
    Ok(LogicSpec {
        name: format!("knotted({t},{u},{})", groups.join(",")),
        base: BaseSystem::IulStar,
        extra_axioms: extra,
        capabilities: Capabilities {
            has_toa: true,
            proves_one_to_zero: false,
            oracle: OracleKind::Hilbert,
        },
    })
}

/// `(n p)^k → m (pⁿ)`
pub fn toa_condition_formula(n: u64, k: u64, m: u64) -> Formula {
    let p = Formula::var("p");
    Formula::imp(
        Formula::power(&Formula::scalar(n, &p), k),
        Formula::scalar(m, &Formula::power(&p, n)),
    )
}

#[derive(Debug, Clone)]
pub struct ToaConditionEntry {
    pub n: u64,
    pub k: u64,
    pub m: u64,
    pub formula: Formula,
    pub verdict: OracleVerdict,
}

#[derive(Debug, Clone)]
pub struct ToaConditionReport {
    pub logic: String,
    pub entries: Vec<ToaConditionEntry>,
}

impl ToaConditionReport {
    pub fn all_proved(&self) -> bool {
        self.entries.iter().all(|e| e.verdict.is_proved())
    }
}

/// Checks `⊢ (np)^k → m(pⁿ)` for every `n ≤ n_max`, taking `(k, m)` from
/// `witnesses` (entries `(n, k, m)`) and defaulting to `(1, 1)`.
pub fn check_toa_condition(
    logic: &LogicSpec,
    n_max: u64,
    witnesses: &[(u64, u64, u64)],
    budget: &Budget,
) -> ToaConditionReport {
    let entries = (0..=n_max)
        .map(|n| {
            let (k, m) = witnesses
                .iter()
                .find(|w| w.0 == n)
                .map_or((1, 1), |w| (w.1, w.2));
            let formula = toa_condition_formula(n, k, m);
            let verdict = if m == 0 {
                OracleVerdict::Unknown("m must be positive".into())
            } else {
                oracles::decide_with_models(logic, &[], &formula, budget)
                    .unwrap_or_else(|e| OracleVerdict::Unknown(e.to_string()))
            };
            ToaConditionEntry {
                n,
                k,
                m,
                formula,
                verdict,
            }
        })
        .collect();
    ToaConditionReport {
        logic: logic.name.clone(),
        entries,
    }
}

/// Instance of a template over fresh object variables `p0, p1, …`.
pub fn generic_instance(template: &Formula) -> Formula {
    let s: Substitution = template
        .vars()
        .into_iter()
        .filter(|v| is_metavariable(v))
        .enumerate()
        .map(|(i, v)| (v, Formula::var(format!("p{i}"))))
        .collect();
    template.substitute(&s)
}

/// A failed soundness spot-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessFailure {
    pub axiom: String,
    pub model: String,
    pub valuation: semantics::Valuation,
}

/// Evaluates every axiom of the logic (indexed families up to `n = 6`) in
/// each of its sound models: Sugihara chains of half-width `1..=max_k`
/// and the integers on `[-grid, grid]`.
pub fn check_axiom_soundness(
    logic: &LogicSpec,
    max_k: u32,
    grid: i64,
) -> Result<(), SoundnessFailure> {
    let mut chains = Vec::new();
    let mut integers = false;
    for model in logic.sound_models() {
        match model {
            ModelKind::SugiharaOdd => chains.extend((1..=max_k).map(|k| ChainAlgebra::sugihara(k, true))),
            ModelKind::SugiharaEven => chains.extend((1..=max_k).map(|k| ChainAlgebra::sugihara(k, false))),
            ModelKind::Integers => integers = true,
        }
    }
    for ax in logic.axioms() {
        let indices: Vec<u64> = if ax.is_indexed() { (0..=6).collect() } else { vec![0] };
        for n in indices {
            let inst = generic_instance(&ax.template_at(n));
            let label = if ax.is_indexed() { format!("{}[{n}]", ax.name) } else { ax.name.clone() };
            if let semantics::ChainVerdict::Counterexample { chain, valuation } =
                semantics::brute_force_consequence(&chains, &[], &inst)
            {
                return Err(SoundnessFailure { axiom: label, model: chain, valuation });
            }
            if integers {
                if let Some(valuation) = semantics::abelian_grid_refute(&[], &inst, grid) {
                    return Err(SoundnessFailure {
                        axiom: label,
                        model: "integers".into(),
                        valuation,
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn lookup_presets() {
        let a = lookup_logic("A").unwrap();
        let extras: Vec<Formula> = a.extra_axioms.iter().map(|x| generic_instance(&x.template_at(0))).collect();
        assert_eq!(extras, vec![parse("(p0 -> p0) -> 0").unwrap(), parse("0 -> 1").unwrap()]);
        let iuml = lookup_logic("IUMLm").unwrap();
        let rmt = lookup_logic("RMt").unwrap();
        assert_eq!(iuml.extra_axioms[..2], rmt.extra_axioms[..]);
        assert_eq!(
            generic_instance(&iuml.extra_axioms[2].template_at(0)),
            parse("1 -> 0").unwrap()
        );
        assert!(matches!(lookup_logic("nosuch"), Err(LogicError::UnknownLogic(_))));
        for name in preset_names() {
            assert_eq!(lookup_logic(name).unwrap().name, name);
        }
    }

    #[test]
    fn instantiate_examples() {
        let id = parse_template("Phi -> Phi").unwrap();
        let s = Substitution::new().with("Phi", parse("p * q").unwrap());
        assert_eq!(instantiate(&id, &s).unwrap(), parse("(p * q) -> (p * q)").unwrap());

        let mingle = lookup_logic("RMt").unwrap().axiom("mingle").unwrap();
        let s = Substitution::new().with("Phi", parse("~q").unwrap());
        assert_eq!(
            instantiate(&mingle.template_at(0), &s).unwrap(),
            parse("~q -> (~q + ~q)").unwrap()
        );

        let two = parse_template("Phi -> Psi").unwrap();
        assert_eq!(
            instantiate(&two, &Substitution::new().with("Phi", Formula::One)),
            Err(LogicError::MissingMetavariable("Psi".into()))
        );
    }

    #[test]
    fn template_matching() {
        let t = parse_template("(Phi -> Psi) -> ((Psi -> Chi) -> (Phi -> Chi))").unwrap();
        let f = parse("(p -> q) -> ((q -> r) -> (p -> r))").unwrap();
        let s = match_template(&t, &f).unwrap();
        assert_eq!(s.get("Psi"), Some(&parse("q").unwrap()));
        let g = parse("(p -> q) -> ((r -> r) -> (p -> r))").unwrap();
        assert!(match_template(&t, &g).is_none());
    }

    #[test]
    fn knotted_validation() {
        let l = lookup_logic("knotted(2,1,4:5:6:7)").unwrap();
        assert_eq!(l.name, "knotted(2,1,4:5:6:7)");
        assert!(l.has_toa());
        assert_eq!(
            generic_instance(&l.extra_axioms[1].template_at(0)),
            parse("(4 * p0)^5 -> 6 * p0^7").unwrap()
        );
        assert!(lookup_logic("knotted(3,1,2:1:1:3)").is_err());
        assert!(lookup_logic("knotted(1,2,2:1:1:2)").is_err());
        assert!(lookup_logic("knotted(1,2,2:1:1:2,3:1:1:3)").is_ok());
        assert!(lookup_logic("knotted(1,2,3:1:1:2,2:1:1:3)").is_err());
    }

    #[test]
    fn multiplicative_systems() {
        let a = lookup_logic("A").unwrap().multiplicative_system();
        assert!(a.unperforated);
        assert!(a.axioms.iter().any(|x| x.name == "abelian"));
        assert!(a.axioms.iter().all(|x| x.is_multiplicative()));
        assert_eq!(a.axioms.iter().filter(|x| x.name == "zero_one").count(), 1);
        let mll = lookup_logic("MLL").unwrap().multiplicative_system();
        assert!(!mll.unperforated);
        assert!(!mll.axioms.iter().any(|x| x.name == "zero_one"));
    }

    #[test]
    fn balance_family_shape() {
        assert_eq!(
            generic_instance(&Family::BalanceForward.template(2)),
            parse("(p0 + p0) -> p0 * p0").unwrap()
        );
        assert_eq!(generic_instance(&Family::BalanceBackward.template(0)), parse("1 -> 0").unwrap());
    }

    #[test]
    fn axiom_soundness_presets() {
        for name in ["A", "RMt", "IUMLm", "BIULm", "IULstar", "knotted(2,1,4:5:6:7)"] {
            let logic = lookup_logic(name).unwrap();
            assert_eq!(check_axiom_soundness(&logic, 3, 2), Ok(()), "{name}");
        }
    }

    #[test]
    fn wrong_models_are_detected() {
        // 1 -> 0 fails in even chains, so IUMLm axioms are not sound there.
        let mut logic = lookup_logic("IUMLm").unwrap();
        logic.name = "custom".into();
        assert!(check_axiom_soundness(&logic, 2, 1).is_err());
    }
}
