//! Decision procedures for multiplicative consequence.
//!
//! Every oracle answers `Σ ⊢ φ` for multiplicative `Σ` and `φ`, returning
//! checkable evidence either way when it can.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::formula::{parse, Formula, Substitution};
use crate::linear::{cone_membership, translate_abelian, Combination, ConeResult, LinForm};
use crate::logics::{match_template, LogicSpec, ModelKind, MultSystem, OracleKind, Template};
use crate::semantics::{self, ChainAlgebra, ChainVerdict, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("formula is not multiplicative: {0}")]
    NotMultiplicative(String),
}

/// Resource limits shared by the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Largest `Σλᵢ` tried by iterative deepening.
    pub lambda_cap: u64,
    /// Facts kept by forward saturation.
    pub max_lines: usize,
    /// Largest axiom instance (in nodes) considered by saturation.
    pub max_term_size: usize,
    /// Largest index tried for indexed axiom families and `u_n`.
    pub exponent_bound: u64,
    /// Overrides the half-width of Sugihara decision chains.
    pub chain_bound: Option<u32>,
    /// Literal cap for clause normal forms.
    pub clause_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            lambda_cap: 16,
            max_lines: 8192,
            max_term_size: 40,
            exponent_bound: 8,
            chain_bound: None,
            clause_cap: 4096,
        }
    }
}

impl Budget {
    /// `n` bounds both `Σλᵢ` and (scaled) the saturation size.
    pub fn scaled(n: u64) -> Self {
        Budget {
            lambda_cap: n,
            max_lines: 512 * n as usize,
            ..Budget::default()
        }
    }
}

/// The algebra a countermodel lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainRef {
    Sugihara { half_width: u32, odd: bool },
    Integers,
}

impl ChainRef {
    pub fn algebra(&self) -> Option<ChainAlgebra> {
        match *self {
            ChainRef::Sugihara { half_width, odd } => Some(ChainAlgebra::sugihara(half_width, odd)),
            ChainRef::Integers => None,
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        if name == "integers" {
            return Some(ChainRef::Integers);
        }
        let (odd, rest) = if let Some(r) = name.strip_prefix("sugihara-odd(") {
            (true, r)
        } else {
            (false, name.strip_prefix("sugihara-even(")?)
        };
        let half_width = rest.strip_suffix(')')?.parse().ok()?;
        Some(ChainRef::Sugihara { half_width, odd })
    }
}

impl fmt::Display for ChainRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainRef::Sugihara { half_width, odd: true } => write!(f, "sugihara-odd({half_width})"),
            ChainRef::Sugihara { half_width, odd: false } => write!(f, "sugihara-even({half_width})"),
            ChainRef::Integers => write!(f, "integers"),
        }
    }
}

/// A valuation designating every hypothesis but not the goal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub chain: ChainRef,
    pub valuation: Valuation,
}

impl Countermodel {
    /// Re-evaluates the hypotheses and goal (any formulas) in the chain.
    pub fn refutes(&self, hyps: &[Formula], goal: &Formula) -> bool {
        match self.chain.algebra() {
            Some(chain) => {
                let ok = |f: &Formula| chain.designates(&self.valuation, f);
                hyps.iter().all(|h| ok(h) == Ok(true)) && ok(goal) == Ok(false)
            }
            None => {
                let ok = |f: &Formula| semantics::eval_integer(&self.valuation, f).map(|x| x >= 0);
                hyps.iter().all(|h| ok(h) == Ok(true)) && ok(goal) == Ok(false)
            }
        }
    }
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.chain)?;
        if self.valuation.is_empty() {
            write!(f, " (no variables)")?;
        }
        for (v, x) in &self.valuation {
            write!(f, " {v}={x}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultWitness {
    /// `Σ μⱼ τ(ψⱼ) = scale · τ(φ)`
    Linear { mu: Vec<BigInt>, scale: BigInt },
    /// No countermodel in the listed chains.
    ChainExhaustive { half_width: u32, chains: Vec<String> },
    Derivation(Derivation),
}

impl fmt::Display for MultWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultWitness::Linear { mu, scale } => {
                let mu: Vec<String> = mu.iter().map(ToString::to_string).collect();
                write!(f, "linear mu=({}) scale={}", mu.join(", "), scale)
            }
            MultWitness::ChainExhaustive { chains, .. } => {
                write!(f, "chain-exhaustive over {}", chains.join(", "))
            }
            MultWitness::Derivation(d) => write!(f, "derivation ({} lines)\n{}", d.lines.len(), d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Proved(MultWitness),
    Refuted(Countermodel),
    Unknown(String),
}

impl OracleVerdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, OracleVerdict::Proved(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, OracleVerdict::Refuted(_))
    }

    pub fn status(&self) -> &'static str {
        match self {
            OracleVerdict::Proved(_) => "proved",
            OracleVerdict::Refuted(_) => "refuted",
            OracleVerdict::Unknown(_) => "unknown",
        }
    }
}

fn require_multiplicative(hyps: &[Formula], goal: &Formula) -> Result<(), OracleError> {
    match hyps.iter().chain(std::iter::once(goal)).find(|f| !f.is_multiplicative()) {
        Some(f) => Err(OracleError::NotMultiplicative(f.render())),
        None => Ok(()),
    }
}

fn all_vars(hyps: &[Formula], goal: &Formula) -> BTreeSet<String> {
    let mut vars = goal.vars();
    for h in hyps {
        h.collect_vars(&mut vars);
    }
    vars
}

fn abelian_forms(hyps: &[Formula], goal: &Formula) -> (Vec<LinForm>, LinForm) {
    let tr = |f: &Formula| translate_abelian(f).expect("multiplicative");
    (hyps.iter().map(tr).collect(), tr(goal))
}

/// Complete decision for Abelian logic by cone membership of `τ(φ)` in
/// the cone of `{τ(ψ)}`.
pub fn abelian_decide(hyps: &[Formula], goal: &Formula) -> Result<OracleVerdict, OracleError> {
    require_multiplicative(hyps, goal)?;
    let (gens, target) = abelian_forms(hyps, goal);
    Ok(match cone_membership(&target, &gens) {
        ConeResult::Member(Combination { mu, scale }) => OracleVerdict::Proved(MultWitness::Linear { mu, scale }),
        ConeResult::Separated(point) => {
            let mut valuation = Valuation::new();
            for v in all_vars(hyps, goal) {
                let x = point.get(&v).cloned().unwrap_or_default();
                match i64::try_from(x) {
                    Ok(x) => {
                        valuation.insert(v, x);
                    }
                    Err(_) => return Ok(OracleVerdict::Unknown("separating point overflows i64".into())),
                }
            }
            OracleVerdict::Refuted(Countermodel {
                chain: ChainRef::Integers,
                valuation,
            })
        }
    })
}

/// Half-width of the Sugihara decision chains for `k` variables.
pub fn sugihara_half_width(k: usize) -> u32 {
    k as u32 + 1
}

/// Complete decision for the mingle logics by exhausting valuations into
/// the odd chain (and, with `even`, the even chain) of half-width
/// `bound.unwrap_or(k + 1)`.
pub fn sugihara_decide(
    even: bool,
    hyps: &[Formula],
    goal: &Formula,
    bound: Option<u32>,
) -> Result<OracleVerdict, OracleError> {
    require_multiplicative(hyps, goal)?;
    let half_width = bound.unwrap_or_else(|| sugihara_half_width(all_vars(hyps, goal).len()));
    let mut refs = vec![ChainRef::Sugihara { half_width, odd: true }];
    if even {
        refs.push(ChainRef::Sugihara { half_width, odd: false });
    }
    for r in &refs {
        let chain = r.algebra().expect("sugihara chain");
        if let ChainVerdict::Counterexample { valuation, .. } =
            semantics::brute_force_consequence(std::slice::from_ref(&chain), hyps, goal)
        {
            return Ok(OracleVerdict::Refuted(Countermodel { chain: *r, valuation }));
        }
    }
    Ok(OracleVerdict::Proved(MultWitness::ChainExhaustive {
        half_width,
        chains: refs.iter().map(ToString::to_string).collect(),
    }))
}

/// How a derivation line was obtained. Line references are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom { name: String, index: Option<u64> },
    Hyp,
    Mp(usize, usize),
    Unperforated(u64, usize),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom { name, index: None } => write!(f, "axiom {name}"),
            Justification::Axiom { name, index: Some(n) } => write!(f, "axiom {name}[{n}]"),
            Justification::Hyp => write!(f, "hyp"),
            Justification::Mp(i, j) => write!(f, "mp {i}, {j}"),
            Justification::Unperforated(n, i) => write!(f, "u_n {n} {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationLine {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Derivation {
    pub lines: Vec<DerivationLine>,
}

impl Derivation {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.lines.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} | {} | {}", i + 1, line.formula, line.justification)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct DerivationError {
    pub line: usize,
    pub reason: String,
}

impl FromStr for Derivation {
    type Err = DerivationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = Vec::new();
        for (i, raw) in text.lines().map(str::trim).filter(|l| !l.is_empty()).enumerate() {
            let err = |reason: String| DerivationError { line: i + 1, reason };
            let parts: Vec<&str> = raw.split('|').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(err("expected 'index | formula | justification'".into()));
            }
            if parts[0].parse::<usize>().ok() != Some(i + 1) {
                return Err(err(format!("expected index {}", i + 1)));
            }
            let formula = parse(parts[1]).map_err(|e| err(e.to_string()))?;
            let justification = parse_justification(parts[2]).ok_or_else(|| err(format!("bad justification '{}'", parts[2])))?;
            lines.push(DerivationLine { formula, justification });
        }
        Ok(Derivation { lines })
    }
}

fn parse_justification(s: &str) -> Option<Justification> {
    let mut words = s.splitn(2, ' ');
    let head = words.next()?;
    let rest = words.next().unwrap_or("").trim();
    let nums = |r: &str| -> Option<Vec<u64>> {
        r.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|w| !w.is_empty())
            .map(|w| w.parse().ok())
            .collect()
    };
    match head {
        "hyp" if rest.is_empty() => Some(Justification::Hyp),
        "axiom" => match rest.split_once('[') {
            Some((name, idx)) => Some(Justification::Axiom {
                name: name.to_string(),
                index: Some(idx.strip_suffix(']')?.parse().ok()?),
            }),
            None if !rest.is_empty() => Some(Justification::Axiom { name: rest.to_string(), index: None }),
            None => None,
        },
        "mp" => match nums(rest)?[..] {
            [i, j] => Some(Justification::Mp(i as usize, j as usize)),
            _ => None,
        },
        "u_n" => match nums(rest)?[..] {
            [n, i] => Some(Justification::Unperforated(n, i as usize)),
            _ => None,
        },
        _ => None,
    }
}

/// Checks every line against the logic's multiplicative axioms, the
/// hypotheses, modus ponens and (if present) the unperforated rule.
pub fn verify_derivation(logic: &LogicSpec, hyps: &[Formula], d: &Derivation) -> Result<(), DerivationError> {
    let system = logic.multiplicative_system();
    for (i, line) in d.lines.iter().enumerate() {
        let err = |reason: &str| DerivationError { line: i + 1, reason: reason.to_string() };
        let earlier = |k: usize| -> Option<&Formula> {
            (k >= 1 && k <= i).then(|| &d.lines[k - 1].formula)
        };
        match &line.justification {
            Justification::Hyp => {
                if !hyps.contains(&line.formula) {
                    return Err(err("not a hypothesis"));
                }
            }
            Justification::Axiom { name, index } => {
                let ax = system
                    .axioms
                    .iter()
                    .find(|a| &a.name == name)
                    .ok_or_else(|| err("unknown axiom"))?;
                if ax.is_indexed() != index.is_some() {
                    return Err(err("index mismatch"));
                }
                if match_template(&ax.template_at(index.unwrap_or(0)), &line.formula).is_none() {
                    return Err(err("not an instance of the axiom"));
                }
            }
            Justification::Mp(a, b) => {
                let (Some(x), Some(y)) = (earlier(*a), earlier(*b)) else {
                    return Err(err("mp refers to a missing line"));
                };
                if *y != Formula::imp(x.clone(), line.formula.clone()) {
                    return Err(err("mp premises do not match"));
                }
            }
            Justification::Unperforated(n, a) => {
                if !system.unperforated {
                    return Err(err("u_n is not a rule of this logic"));
                }
                let Some(x) = earlier(*a) else {
                    return Err(err("u_n refers to a missing line"));
                };
                if *n == 0 || *x != Formula::scalar(*n, &line.formula) {
                    return Err(err("u_n premise does not match"));
                }
            }
        }
    }
    Ok(())
}

/// Finds an indexed-family index `n ≤ bound` or fixed schema matching `f`.
fn axiom_match(system: &MultSystem, f: &Formula, bound: u64) -> Option<Justification> {
    for ax in &system.axioms {
        match &ax.template {
            Template::Fixed(t) => {
                if match_template(t, f).is_some() {
                    return Some(Justification::Axiom { name: ax.name.clone(), index: None });
                }
            }
            Template::Indexed(fam) => {
                for n in 0..=bound {
                    if match_template(&fam.template(n), f).is_some() {
                        return Some(Justification::Axiom { name: ax.name.clone(), index: Some(n) });
                    }
                }
            }
        }
    }
    None
}

struct Saturation {
    facts: Vec<Formula>,
    just: Vec<Justification>,
    index: HashMap<Formula, usize>,
    by_antecedent: HashMap<Formula, Vec<usize>>,
    queue: VecDeque<usize>,
    unperforated: bool,
    max_lines: usize,
    max_term_size: usize,
}

impl Saturation {
    /// Adds a fact (0-based references in the justification) and closes
    /// the agenda under modus ponens and `u_n`.
    fn add(&mut self, f: Formula, j: Justification) {
        if self.index.contains_key(&f) || self.facts.len() >= self.max_lines || f.size() > self.max_term_size {
            return;
        }
        let id = self.facts.len();
        if let Formula::Imp(a, _) = &f {
            self.by_antecedent.entry((**a).clone()).or_default().push(id);
        }
        self.index.insert(f.clone(), id);
        self.facts.push(f);
        self.just.push(j);
        self.queue.push_back(id);
    }

    fn close(&mut self, goal: &Formula) -> bool {
        while let Some(id) = self.queue.pop_front() {
            if self.index.contains_key(goal) {
                return true;
            }
            let f = self.facts[id].clone();
            if let Formula::Imp(a, b) = &f {
                if let Some(&ia) = self.index.get(&**a) {
                    self.add((**b).clone(), Justification::Mp(ia, id));
                }
            }
            if let Some(users) = self.by_antecedent.get(&f).cloned() {
                for u in users {
                    if let Formula::Imp(_, b) = &self.facts[u] {
                        let b = (**b).clone();
                        self.add(b, Justification::Mp(id, u));
                    }
                }
            }
            if self.unperforated {
                if let Some((n, a)) = f.as_multiple() {
                    let a = a.clone();
                    self.add(a, Justification::Unperforated(n, id));
                }
            }
        }
        self.index.contains_key(goal)
    }

    /// Keeps only the lines the goal depends on, renumbered 1-based.
    fn extract(&self, goal: &Formula) -> Derivation {
        let root = self.index[goal];
        let mut used = BTreeSet::new();
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            if used.insert(i) {
                match self.just[i] {
                    Justification::Mp(a, b) => stack.extend([a, b]),
                    Justification::Unperforated(_, a) => stack.push(a),
                    _ => {}
                }
            }
        }
        let order: Vec<usize> = used.into_iter().collect();
        let renumber: HashMap<usize, usize> = order.iter().enumerate().map(|(k, &i)| (i, k + 1)).collect();
        let lines = order
            .iter()
            .map(|&i| DerivationLine {
                formula: self.facts[i].clone(),
                justification: match &self.just[i] {
                    Justification::Mp(a, b) => Justification::Mp(renumber[a], renumber[b]),
                    Justification::Unperforated(n, a) => Justification::Unperforated(*n, renumber[a]),
                    other => other.clone(),
                },
            })
            .collect();
        Derivation { lines }
    }
}

/// Budgeted forward saturation in the logic's multiplicative system.
/// Schema instances range over the subterm closure of the problem; the
/// answer is `Proved` with a derivation or `Unknown`, never `Refuted`.
pub fn hilbert_search(logic: &LogicSpec, hyps: &[Formula], goal: &Formula, budget: &Budget) -> OracleVerdict {
    if require_multiplicative(hyps, goal).is_err() {
        return OracleVerdict::Unknown("non-multiplicative input".into());
    }
    let system = logic.multiplicative_system();
    let single = |j: Justification| {
        OracleVerdict::Proved(MultWitness::Derivation(Derivation {
            lines: vec![DerivationLine { formula: goal.clone(), justification: j }],
        }))
    };
    if hyps.contains(goal) {
        return single(Justification::Hyp);
    }
    if let Some(j) = axiom_match(&system, goal, budget.exponent_bound) {
        return single(j);
    }

    let mut universe: BTreeSet<Formula> = [Formula::One, Formula::Zero].into_iter().collect();
    for f in hyps.iter().chain(std::iter::once(goal)) {
        universe.extend(f.subformulas());
    }
    let universe: Vec<Formula> = universe.into_iter().collect();

    let mut instances: Vec<(Formula, Justification)> = Vec::new();
    for ax in &system.axioms {
        let indices: Vec<Option<u64>> = if ax.is_indexed() {
            (0..=budget.exponent_bound.min(4)).map(Some).collect()
        } else {
            vec![None]
        };
        for idx in indices {
            let template = ax.template_at(idx.unwrap_or(0));
            let metas = ax.metavariables();
            let mut choice = vec![0usize; metas.len()];
            loop {
                let s: Substitution = metas.iter().cloned().zip(choice.iter().map(|&c| universe[c].clone())).collect();
                let inst = template.substitute(&s);
                if inst.size() <= budget.max_term_size {
                    instances.push((inst, Justification::Axiom { name: ax.name.clone(), index: idx }));
                }
                // Odometer over universe^metas.
                let mut k = 0;
                while k < choice.len() {
                    choice[k] += 1;
                    if choice[k] < universe.len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        }
    }
    instances.sort_by(|a, b| a.0.size().cmp(&b.0.size()).then_with(|| a.0.cmp(&b.0)));

    let mut sat = Saturation {
        facts: Vec::new(),
        just: Vec::new(),
        index: HashMap::new(),
        by_antecedent: HashMap::new(),
        queue: VecDeque::new(),
        unperforated: system.unperforated,
        max_lines: budget.max_lines,
        max_term_size: budget.max_term_size,
    };
    for h in hyps {
        sat.add(h.clone(), Justification::Hyp);
    }
    if sat.close(goal) {
        return OracleVerdict::Proved(MultWitness::Derivation(sat.extract(goal)));
    }
    for (inst, j) in instances {
        if sat.facts.len() >= budget.max_lines {
            break;
        }
        sat.add(inst, j);
        if sat.close(goal) {
            return OracleVerdict::Proved(MultWitness::Derivation(sat.extract(goal)));
        }
    }
    OracleVerdict::Unknown(format!("saturation exhausted after {} facts", sat.facts.len()))
}

/// Routes the question to the logic's oracle.
pub fn decide(logic: &LogicSpec, hyps: &[Formula], goal: &Formula, budget: &Budget) -> Result<OracleVerdict, OracleError> {
    match logic.capabilities.oracle {
        OracleKind::Abelian => abelian_decide(hyps, goal),
        OracleKind::Sugihara { even } => sugihara_decide(even, hyps, goal, budget.chain_bound),
        OracleKind::Hilbert => {
            require_multiplicative(hyps, goal)?;
            Ok(hilbert_search(logic, hyps, goal, budget))
        }
    }
}

/// Countermodel search in the models the logic is sound for: Sugihara
/// chains of half-width `k + 1` and integers in `[-3, 3]`.
pub fn model_countermodel(logic: &LogicSpec, hyps: &[Formula], goal: &Formula) -> Option<Countermodel> {
    let half_width = sugihara_half_width(all_vars(hyps, goal).len());
    for model in logic.sound_models() {
        let chain = match model {
            ModelKind::SugiharaOdd => ChainRef::Sugihara { half_width, odd: true },
            ModelKind::SugiharaEven => ChainRef::Sugihara { half_width, odd: false },
            ModelKind::Integers => {
                if let Some(valuation) = semantics::abelian_grid_refute(hyps, goal, 3) {
                    return Some(Countermodel { chain: ChainRef::Integers, valuation });
                }
                continue;
            }
        };
        let alg = chain.algebra().expect("sugihara chain");
        if let ChainVerdict::Counterexample { valuation, .. } =
            semantics::brute_force_consequence(std::slice::from_ref(&alg), hyps, goal)
        {
            return Some(Countermodel { chain, valuation });
        }
    }
    None
}

/// [`decide`], turning an `Unknown` into `Refuted` when a sound model
/// refutes the consequence.
pub fn decide_with_models(
    logic: &LogicSpec,
    hyps: &[Formula],
    goal: &Formula,
    budget: &Budget,
) -> Result<OracleVerdict, OracleError> {
    if logic.capabilities.oracle == OracleKind::Hilbert {
        require_multiplicative(hyps, goal)?;
        if let Some(cm) = model_countermodel(logic, hyps, goal) {
            return Ok(OracleVerdict::Refuted(cm));
        }
    }
    decide(logic, hyps, goal, budget)
}

/// Re-checks a witness without trusting the oracle that produced it.
pub fn verify_witness(logic: &LogicSpec, hyps: &[Formula], goal: &Formula, w: &MultWitness) -> bool {
    if require_multiplicative(hyps, goal).is_err() {
        return false;
    }
    match w {
        MultWitness::Linear { mu, scale } => {
            let (gens, target) = abelian_forms(hyps, goal);
            logic.capabilities.oracle == OracleKind::Abelian
                && Combination { mu: mu.clone(), scale: scale.clone() }.verify(&target, &gens)
        }
        MultWitness::ChainExhaustive { half_width, chains } => {
            let OracleKind::Sugihara { even } = logic.capabilities.oracle else {
                return false;
            };
            let refs: Option<Vec<ChainRef>> = chains.iter().map(|c| ChainRef::from_name(c)).collect();
            let Some(refs) = refs else { return false };
            let has = |odd: bool| refs.contains(&ChainRef::Sugihara { half_width: *half_width, odd });
            *half_width >= sugihara_half_width(all_vars(hyps, goal).len())
                && has(true)
                && (!even || has(false))
                && refs.iter().all(|r| {
                    let alg = r.algebra().expect("sugihara chain");
                    semantics::brute_force_consequence(&[alg], hyps, goal).holds()
                })
        }
        MultWitness::Derivation(d) => {
            d.conclusion() == Some(goal) && verify_derivation(logic, hyps, d).is_ok()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logics::lookup_logic;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn fs(xs: &[&str]) -> Vec<Formula> {
        xs.iter().map(|s| f(s)).collect()
    }

    #[test]
    fn abelian_examples() {
        let hyps = fs(&["p -> q", "q -> r"]);
        match abelian_decide(&hyps, &f("p -> r")).unwrap() {
            OracleVerdict::Proved(MultWitness::Linear { mu, scale }) => {
                assert_eq!(mu, vec![BigInt::from(1), BigInt::from(1)]);
                assert_eq!(scale, BigInt::from(1));
            }
            v => panic!("{v:?}"),
        }
        assert!(abelian_decide(&[], &f("p + ~p")).unwrap().is_proved());
        match abelian_decide(&[], &f("p")).unwrap() {
            OracleVerdict::Refuted(cm) => {
                assert_eq!(cm.chain, ChainRef::Integers);
                assert!(cm.valuation["p"] < 0);
                assert!(cm.refutes(&[], &f("p")));
            }
            v => panic!("{v:?}"),
        }
        assert!(matches!(abelian_decide(&[], &f("p | q")), Err(OracleError::NotMultiplicative(_))));
    }

    #[test]
    fn sugihara_examples() {
        assert!(sugihara_decide(false, &[], &f("1 -> 0"), None).unwrap().is_proved());
        match sugihara_decide(true, &[], &f("1 -> 0"), None).unwrap() {
            OracleVerdict::Refuted(cm) => {
                assert!(matches!(cm.chain, ChainRef::Sugihara { odd: false, .. }));
                assert!(cm.refutes(&[], &f("1 -> 0")));
            }
            v => panic!("{v:?}"),
        }
        assert!(sugihara_decide(true, &[], &f("(p + p) -> p"), None).unwrap().is_proved());
    }

    #[test]
    fn hilbert_examples() {
        let b = Budget::default();
        let mll0 = lookup_logic("MLL0").unwrap();
        assert!(hilbert_search(&mll0, &[], &f("0 -> 1"), &b).is_proved());
        let biul = lookup_logic("BIULm").unwrap();
        let goal = f("(p + p) -> p^2");
        match hilbert_search(&biul, &[], &goal, &b) {
            OracleVerdict::Proved(w) => assert!(verify_witness(&biul, &[], &goal, &w)),
            v => panic!("{v:?}"),
        }
        let mll = lookup_logic("MLL").unwrap();
        assert!(matches!(hilbert_search(&mll, &[], &f("p"), &b), OracleVerdict::Unknown(_)));
    }

    #[test]
    fn hilbert_chains_modus_ponens() {
        let mll = lookup_logic("MLL").unwrap();
        let hyps = fs(&["p", "p -> q", "q -> r"]);
        let goal = f("r");
        match hilbert_search(&mll, &hyps, &goal, &Budget::default()) {
            OracleVerdict::Proved(MultWitness::Derivation(d)) => {
                assert_eq!(verify_derivation(&mll, &hyps, &d), Ok(()));
                assert_eq!(d.conclusion(), Some(&goal));
                let back: Derivation = d.to_string().parse().unwrap();
                assert_eq!(back, d);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn hilbert_uses_schema_instances() {
        // p -> q, q -> r |- p -> r needs the transitivity schema.
        let mll = lookup_logic("MLL").unwrap();
        let hyps = fs(&["p -> q", "q -> r"]);
        let goal = f("p -> r");
        match hilbert_search(&mll, &hyps, &goal, &Budget::default()) {
            OracleVerdict::Proved(w) => assert!(verify_witness(&mll, &hyps, &goal, &w)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn derivation_checks() {
        let mll = lookup_logic("MLL").unwrap();
        let d: Derivation = "1 | p -> p | axiom id".parse().unwrap();
        assert_eq!(verify_derivation(&mll, &[], &d), Ok(()));
        let d: Derivation = "1 | p | hyp\n2 | p -> q | hyp\n3 | q | mp 1, 2".parse().unwrap();
        assert_eq!(verify_derivation(&mll, &fs(&["p", "p -> q"]), &d), Ok(()));
        let d: Derivation = "1 | q | hyp".parse().unwrap();
        assert_eq!(verify_derivation(&mll, &[], &d).unwrap_err().line, 1);
        let d: Derivation = "1 | p + p | hyp\n2 | p | u_n 2 1".parse().unwrap();
        assert!(verify_derivation(&mll, &fs(&["p + p"]), &d).is_err());
        let a = lookup_logic("A").unwrap();
        assert_eq!(verify_derivation(&a, &fs(&["p + p"]), &d), Ok(()));
        assert!("1 | p | frobnicate".parse::<Derivation>().is_err());
    }

    #[test]
    fn model_refutation_for_hilbert_logics() {
        let biul = lookup_logic("BIULm").unwrap();
        let v = decide_with_models(&biul, &[], &f("p"), &Budget::default()).unwrap();
        match v {
            OracleVerdict::Refuted(cm) => assert!(cm.refutes(&[], &f("p"))),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn witnesses_do_not_transfer() {
        let rmt = lookup_logic("RMt").unwrap();
        let iuml = lookup_logic("IUMLm").unwrap();
        let goal = f("1 -> 0");
        let OracleVerdict::Proved(w) = decide(&iuml, &[], &goal, &Budget::default()).unwrap() else {
            panic!()
        };
        assert!(verify_witness(&iuml, &[], &goal, &w));
        assert!(!verify_witness(&rmt, &[], &goal, &w));
    }
}
