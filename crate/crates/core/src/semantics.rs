//! Finite totally ordered involutive commutative residuated lattices and
//! brute-force evaluation over them, plus the integers read as a
//! lattice-ordered abelian group.
//!
//! Everything here is independent of the proof-search and linear-algebra
//! code, so it doubles as the reference semantics for property tests.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::formula::Formula;

/// Variable assignment. Values are element labels (Sugihara chains use the
/// signed integers `-k..=k`; the integer model uses the integers themselves).
pub type Valuation = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("variable '{0}' has no value")]
    MissingVariable(String),
    #[error("value {value} assigned to '{var}' is not an element of {chain}")]
    NotAnElement { var: String, value: i64, chain: String },
    #[error("{chain}: {law} fails at {witness}")]
    LawViolated {
        chain: String,
        law: &'static str,
        witness: String,
    },
    #[error("table dimensions do not match a carrier of size {0}")]
    BadTable(usize),
}

/// A finite chain `0 < 1 < … < n-1` (by index) with fusion, residual,
/// unit and zero-constant; meet and join are min and max.
#[derive(Debug, Clone)]
pub struct ChainAlgebra {
    name: String,
    labels: Vec<i64>,
    fuse: Vec<Vec<usize>>,
    imp: Vec<Vec<usize>>,
    unit: usize,
    zero: usize,
}

/// Chains larger than this skip the exhaustive law check at construction.
pub const LAW_CHECK_LIMIT: usize = 16;

impl ChainAlgebra {
    /// Builds a chain from its fusion table. Labels must be strictly
    /// increasing; the residual is computed as `a → c = max{b : a·b ≤ c}`.
    pub fn from_fusion(
        name: impl Into<String>,
        labels: Vec<i64>,
        fuse: Vec<Vec<usize>>,
        unit: usize,
        zero: usize,
    ) -> Result<Self, SemanticsError> {
        let name = name.into();
        let n = labels.len();
        if n == 0
            || fuse.len() != n
            || fuse.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n))
            || unit >= n
            || zero >= n
            || labels.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(SemanticsError::BadTable(n));
        }
        let mut imp = vec![vec![0; n]; n];
        for a in 0..n {
            for c in 0..n {
                match (0..n).rev().find(|&b| fuse[a][b] <= c) {
                    Some(b) => imp[a][c] = b,
                    None => {
                        return Err(SemanticsError::LawViolated {
                            chain: name,
                            law: "residual exists",
                            witness: format!("a={}, c={}", labels[a], labels[c]),
                        })
                    }
                }
            }
        }
        let chain = ChainAlgebra {
            name,
            labels,
            fuse,
            imp,
            unit,
            zero,
        };
        if n <= LAW_CHECK_LIMIT {
            chain.verify_laws()?;
        }
        Ok(chain)
    }

    /// Sugihara chain of half-width `k`. Odd: carrier `-k..=k` with
    /// `1 = 0 = 0`. Even: carrier `-k..=-1, 1..=k` with unit `1` and zero
    /// constant `-1`. Fusion returns the argument of larger absolute value,
    /// and the meet on ties.
    pub fn sugihara(k: u32, odd: bool) -> Self {
        assert!(k >= 1, "sugihara chains need k >= 1");
        let k = k as i64;
        let labels: Vec<i64> = (-k..=k).filter(|&x| odd || x != 0).collect();
        let n = labels.len();
        let index = |x: i64| labels.binary_search(&x).expect("label in carrier");
        let fuse: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (a, b) = (labels[i], labels[j]);
                        let prod = match a.abs().cmp(&b.abs()) {
                            std::cmp::Ordering::Greater => a,
                            std::cmp::Ordering::Less => b,
                            std::cmp::Ordering::Equal => a.min(b),
                        };
                        index(prod)
                    })
                    .collect()
            })
            .collect();
        let (unit, zero) = if odd {
            (index(0), index(0))
        } else {
            (index(1), index(-1))
        };
        let name = format!("sugihara-{}({})", if odd { "odd" } else { "even" }, k);
        ChainAlgebra::from_fusion(name, labels, fuse, unit, zero)
            .expect("sugihara chains satisfy the algebra laws")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn index_of(&self, label: i64) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn label(&self, idx: usize) -> i64 {
        self.labels[idx]
    }

    pub fn fuse(&self, a: usize, b: usize) -> usize {
        self.fuse[a][b]
    }

    pub fn implies(&self, a: usize, b: usize) -> usize {
        self.imp[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.imp[a][self.zero]
    }

    pub fn is_designated(&self, a: usize) -> bool {
        self.unit <= a
    }

    /// Exhaustively checks: commutativity, associativity, unit law,
    /// monotonicity of fusion, residuation `a·b ≤ c ⟺ b ≤ a→c`, and
    /// involution `¬¬a = a`.
    pub fn verify_laws(&self) -> Result<(), SemanticsError> {
        let n = self.size();
        let fail = |law: &'static str, witness: String| SemanticsError::LawViolated {
            chain: self.name.clone(),
            law,
            witness,
        };
        let l = |i: usize| self.labels[i];
        for a in 0..n {
            if self.fuse[self.unit][a] != a {
                return Err(fail("unit", format!("a={}", l(a))));
            }
            if self.neg(self.neg(a)) != a {
                return Err(fail("involution", format!("a={}", l(a))));
            }
            for b in 0..n {
                if self.fuse[a][b] != self.fuse[b][a] {
                    return Err(fail("commutativity", format!("a={}, b={}", l(a), l(b))));
                }
                if b + 1 < n && self.fuse[a][b] > self.fuse[a][b + 1] {
                    return Err(fail("monotonicity", format!("a={}, b={}", l(a), l(b))));
                }
                for c in 0..n {
                    if self.fuse[self.fuse[a][b]][c] != self.fuse[a][self.fuse[b][c]] {
                        return Err(fail(
                            "associativity",
                            format!("a={}, b={}, c={}", l(a), l(b), l(c)),
                        ));
                    }
                    if (self.fuse[a][b] <= c) != (b <= self.imp[a][c]) {
                        return Err(fail(
                            "residuation",
                            format!("a={}, b={}, c={}", l(a), l(b), l(c)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluates with a valuation given by element indices.
    pub fn eval_indexed(
        &self,
        v: &BTreeMap<&str, usize>,
        f: &Formula,
    ) -> Result<usize, SemanticsError> {
        Ok(match f {
            Formula::Var(x) => *v
                .get(x.as_str())
                .ok_or_else(|| SemanticsError::MissingVariable(x.clone()))?,
            Formula::One => self.unit,
            Formula::Zero => self.zero,
            Formula::Conj(a, b) => self.eval_indexed(v, a)?.min(self.eval_indexed(v, b)?),
            Formula::Disj(a, b) => self.eval_indexed(v, a)?.max(self.eval_indexed(v, b)?),
            Formula::Fuse(a, b) => self.fuse(self.eval_indexed(v, a)?, self.eval_indexed(v, b)?),
            Formula::Imp(a, b) => {
                self.implies(self.eval_indexed(v, a)?, self.eval_indexed(v, b)?)
            }
        })
    }

    /// Homomorphic evaluation; returns the label of the value.
    pub fn eval(&self, v: &Valuation, f: &Formula) -> Result<i64, SemanticsError> {
        let mut idx = BTreeMap::new();
        for (k, &val) in v {
            let i = self.index_of(val).ok_or_else(|| SemanticsError::NotAnElement {
                var: k.clone(),
                value: val,
                chain: self.name.clone(),
            })?;
            idx.insert(k.as_str(), i);
        }
        Ok(self.label(self.eval_indexed(&idx, f)?))
    }

    pub fn designates(&self, v: &Valuation, f: &Formula) -> Result<bool, SemanticsError> {
        let val = self.eval(v, f)?;
        Ok(self.is_designated(self.index_of(val).expect("value in carrier")))
    }
}

impl fmt::Display for ChainAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Evaluates in the integers: `1 = 0 = 0`, fusion is `+`, `a → b` is
/// `b - a`, meet and join are min and max. Designated iff `≥ 0`.
pub fn eval_integer(v: &Valuation, f: &Formula) -> Result<i64, SemanticsError> {
    Ok(match f {
        Formula::Var(x) => *v
            .get(x)
            .ok_or_else(|| SemanticsError::MissingVariable(x.clone()))?,
        Formula::One | Formula::Zero => 0,
        Formula::Conj(a, b) => eval_integer(v, a)?.min(eval_integer(v, b)?),
        Formula::Disj(a, b) => eval_integer(v, a)?.max(eval_integer(v, b)?),
        Formula::Fuse(a, b) => eval_integer(v, a)? + eval_integer(v, b)?,
        Formula::Imp(a, b) => eval_integer(v, b)? - eval_integer(v, a)?,
    })
}

/// Outcome of an exhaustive search for a countermodel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainVerdict {
    Holds,
    Counterexample { chain: String, valuation: Valuation },
}

impl ChainVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ChainVerdict::Holds)
    }
}

fn vars_of(hyps: &[Formula], goal: &Formula) -> Vec<String> {
    let mut vars = goal.vars();
    for h in hyps {
        h.collect_vars(&mut vars);
    }
    vars.into_iter().collect()
}

/// Calls `visit` with every assignment of `domain` to `vars`, stopping
/// early when it returns `false`.
pub fn for_each_assignment<T: Copy>(
    vars: &[String],
    domain: &[T],
    mut visit: impl FnMut(&[T]) -> bool,
) {
    if domain.is_empty() && !vars.is_empty() {
        return;
    }
    let k = vars.len();
    let mut digits = vec![0usize; k];
    let mut values: Vec<T> = digits.iter().map(|&d| domain[d]).collect();
    loop {
        if !visit(&values) {
            return;
        }
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            digits[i] += 1;
            if digits[i] < domain.len() {
                values[i] = domain[digits[i]];
                break;
            }
            digits[i] = 0;
            values[i] = domain[0];
            i += 1;
        }
    }
}

/// Checks `hyps ⊨ goal` over every valuation into each chain.
pub fn brute_force_consequence(
    chains: &[ChainAlgebra],
    hyps: &[Formula],
    goal: &Formula,
) -> ChainVerdict {
    let vars = vars_of(hyps, goal);
    for chain in chains {
        let domain: Vec<usize> = (0..chain.size()).collect();
        let mut found = None;
        for_each_assignment(&vars, &domain, |vals| {
            let v: BTreeMap<&str, usize> =
                vars.iter().map(String::as_str).zip(vals.iter().copied()).collect();
            let ok = |f: &Formula| {
                chain.is_designated(chain.eval_indexed(&v, f).expect("total valuation"))
            };
            if hyps.iter().all(ok) && !ok(goal) {
                found = Some(
                    vars.iter()
                        .cloned()
                        .zip(vals.iter().map(|&i| chain.label(i)))
                        .collect(),
                );
                return false;
            }
            true
        });
        if let Some(valuation) = found {
            return ChainVerdict::Counterexample {
                chain: chain.name().to_string(),
                valuation,
            };
        }
    }
    ChainVerdict::Holds
}

/// Searches integer valuations in `[-bound, bound]` for one that designates
/// every hypothesis and not the goal. Finding none proves nothing.
pub fn abelian_grid_refute(hyps: &[Formula], goal: &Formula, bound: i64) -> Option<Valuation> {
    let vars = vars_of(hyps, goal);
    let domain: Vec<i64> = (-bound..=bound).collect();
    let mut found = None;
    for_each_assignment(&vars, &domain, |vals| {
        let v: Valuation = vars.iter().cloned().zip(vals.iter().copied()).collect();
        let ok = |f: &Formula| eval_integer(&v, f).expect("total valuation") >= 0;
        if hyps.iter().all(ok) && !ok(goal) {
            found = Some(v);
            return false;
        }
        true
    });
    found
}
