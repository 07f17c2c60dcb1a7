//! Reduction of lattice formulas to multiplicative clause goals.
//!
//! The rewrites are valid over chains: `·` distributes over `∧` and `∨`,
//! `φ → ψ` is monotone in `ψ` and antitone in `φ`, and each of these maps
//! lattice operations to lattice operations.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;

pub const DEFAULT_CLAUSE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("normal form exceeds {0} literals")]
    SizeBudgetExceeded(usize),
}

/// Lattice term over multiplicative leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Lattice {
    Leaf(Formula),
    And(Box<Lattice>, Box<Lattice>),
    Or(Box<Lattice>, Box<Lattice>),
}

impl Lattice {
    fn leaves(&self) -> usize {
        match self {
            Lattice::Leaf(_) => 1,
            Lattice::And(a, b) | Lattice::Or(a, b) => a.leaves() + b.leaves(),
        }
    }
}

/// `x ∧ y` or `x ∨ y`, collapsing `x ∘ x` to `x`.
fn join(and: bool, x: Lattice, y: Lattice) -> Lattice {
    if x == y {
        x
    } else if and {
        Lattice::And(Box::new(x), Box::new(y))
    } else {
        Lattice::Or(Box::new(x), Box::new(y))
    }
}

#[derive(Clone, Copy)]
enum Op {
    Fuse,
    Imp,
}

struct Lifter {
    cap: usize,
}

impl Lifter {
    fn check(&self, t: Lattice) -> Result<Lattice, NormalizeError> {
        if t.leaves() > self.cap {
            Err(NormalizeError::SizeBudgetExceeded(self.cap))
        } else {
            Ok(t)
        }
    }

    fn lift(&self, f: &Formula) -> Result<Lattice, NormalizeError> {
        match f {
            Formula::Var(_) | Formula::One | Formula::Zero => Ok(Lattice::Leaf(f.clone())),
            Formula::Conj(a, b) => self.check(join(true, self.lift(a)?, self.lift(b)?)),
            Formula::Disj(a, b) => self.check(join(false, self.lift(a)?, self.lift(b)?)),
            Formula::Fuse(a, b) => self.combine(Op::Fuse, &self.lift(a)?, &self.lift(b)?),
            Formula::Imp(a, b) => self.combine(Op::Imp, &self.lift(a)?, &self.lift(b)?),
        }
    }

    fn combine(&self, op: Op, l: &Lattice, r: &Lattice) -> Result<Lattice, NormalizeError> {
        let node = join;
        let out = match (l, r) {
            (Lattice::Leaf(a), Lattice::Leaf(b)) => Lattice::Leaf(match op {
                Op::Fuse => Formula::fuse(a.clone(), b.clone()),
                Op::Imp => Formula::imp(a.clone(), b.clone()),
            }),
            (Lattice::And(x, y) | Lattice::Or(x, y), _) => {
                let is_and = matches!(l, Lattice::And(..));
                // Implication is antitone on the left, swapping ∧ and ∨.
                let and = match op {
                    Op::Fuse => is_and,
                    Op::Imp => !is_and,
                };
                node(and, self.combine(op, x, r)?, self.combine(op, y, r)?)
            }
            (_, Lattice::And(x, y)) => node(true, self.combine(op, l, x)?, self.combine(op, l, y)?),
            (_, Lattice::Or(x, y)) => node(false, self.combine(op, l, x)?, self.combine(op, l, y)?),
        };
        self.check(out)
    }
}

/// A nonempty disjunction of multiplicative formulas.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultClause {
    pub disjuncts: Vec<Formula>,
}

impl MultClause {
    pub fn new(disjuncts: Vec<Formula>) -> Self {
        assert!(!disjuncts.is_empty(), "clause must be nonempty");
        assert!(disjuncts.iter().all(Formula::is_multiplicative), "disjuncts must be multiplicative");
        MultClause { disjuncts }
    }

    /// Disjuncts sorted by rendered text, duplicates removed.
    pub fn canonical(&self) -> MultClause {
        let mut d = self.disjuncts.clone();
        d.sort_by_key(Formula::render);
        d.dedup();
        MultClause { disjuncts: d }
    }

    pub fn to_formula(&self) -> Formula {
        Formula::disj_all(&self.disjuncts).expect("nonempty clause")
    }
}

impl fmt::Display for MultClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.disjuncts.iter().map(|d| {
            if matches!(d, Formula::Disj(..) | Formula::Conj(..)) {
                format!("({d})")
            } else {
                d.render()
            }
        }).collect();
        write!(f, "{}", parts.join(" | "))
    }
}

/// `hypotheses ⊢ clause` with everything multiplicative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Goal {
    pub hypotheses: Vec<Formula>,
    pub clause: MultClause,
}

impl Goal {
    pub fn new(hypotheses: Vec<Formula>, clause: MultClause) -> Self {
        assert!(hypotheses.iter().all(Formula::is_multiplicative), "hypotheses must be multiplicative");
        Goal { hypotheses, clause }
    }

    pub fn canonical(&self) -> Goal {
        let mut h = self.hypotheses.clone();
        h.sort_by_key(Formula::render);
        h.dedup();
        Goal { hypotheses: h, clause: self.clause.canonical() }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.hypotheses.is_empty() {
            let h: Vec<String> = self.hypotheses.iter().map(Formula::render).collect();
            write!(f, "{} ", h.join(", "))?;
        }
        write!(f, "|- {}", self.clause)
    }
}

fn cnf(t: &Lattice, cap: usize) -> Result<Vec<Vec<Formula>>, NormalizeError> {
    let out = match t {
        Lattice::Leaf(f) => vec![vec![f.clone()]],
        Lattice::And(a, b) => {
            let mut x = cnf(a, cap)?;
            x.extend(cnf(b, cap)?);
            x
        }
        Lattice::Or(a, b) => {
            let (x, y) = (cnf(a, cap)?, cnf(b, cap)?);
            let mut out = Vec::with_capacity(x.len() * y.len());
            for cx in &x {
                for cy in &y {
                    let mut c = cx.clone();
                    for d in cy {
                        if !c.contains(d) {
                            c.push(d.clone());
                        }
                    }
                    out.push(c);
                }
            }
            out
        }
    };
    if out.iter().map(Vec::len).sum::<usize>() > cap {
        return Err(NormalizeError::SizeBudgetExceeded(cap));
    }
    Ok(out)
}

/// Conjunction of multiplicative clauses equivalent to `f` over chains.
/// Disjunct order follows the leaves of `f`; duplicate clauses are dropped.
pub fn to_mult_clauses(f: &Formula, cap: usize) -> Result<Vec<MultClause>, NormalizeError> {
    let lifted = Lifter { cap }.lift(f)?;
    let mut out: Vec<MultClause> = Vec::new();
    for c in cnf(&lifted, cap)? {
        let c = MultClause { disjuncts: c };
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// The conjunction of the clauses as a single formula.
pub fn clauses_to_formula(clauses: &[MultClause]) -> Formula {
    let parts: Vec<Formula> = clauses.iter().map(MultClause::to_formula).collect();
    Formula::conj_all(&parts).expect("at least one clause")
}

/// Splits `Σ ⊢ f` into multiplicative goals whose conjunction is
/// equivalent to it: `∧` in hypotheses splits them, `∨` forks goals, and
/// the conclusion contributes one goal per clause.
pub fn decompose_consequence(hyps: &[Formula], f: &Formula, cap: usize) -> Result<Vec<Goal>, NormalizeError> {
    let mut contexts: Vec<Vec<Formula>> = vec![Vec::new()];
    for h in hyps {
        for clause in to_mult_clauses(h, cap)? {
            let mut next = Vec::with_capacity(contexts.len() * clause.disjuncts.len());
            for ctx in &contexts {
                for d in &clause.disjuncts {
                    let mut c = ctx.clone();
                    if !c.contains(d) {
                        c.push(d.clone());
                    }
                    next.push(c);
                }
            }
            contexts = next;
            if contexts.iter().map(Vec::len).sum::<usize>() > cap {
                return Err(NormalizeError::SizeBudgetExceeded(cap));
            }
        }
    }
    let clauses = to_mult_clauses(f, cap)?;
    let mut goals = Vec::new();
    for ctx in &contexts {
        for c in &clauses {
            let g = Goal { hypotheses: ctx.clone(), clause: c.clone() };
            if !goals.contains(&g) {
                goals.push(g);
            }
        }
    }
    if goals.len() > cap {
        return Err(NormalizeError::SizeBudgetExceeded(cap));
    }
    Ok(goals)
}
