//! Oracles written independently of the library's own decision code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use toa::formula::Formula;

/// Integer linear form: variable coefficients and a constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Row {
    pub coeffs: BTreeMap<String, BigInt>,
    pub constant: BigInt,
}

impl Row {
    fn add_scaled(&mut self, other: &Row, k: &BigInt) {
        for (v, c) in &other.coeffs {
            let e = self.coeffs.entry(v.clone()).or_default();
            *e += c * k;
        }
        self.coeffs.retain(|_, c| !c.is_zero());
        self.constant += &other.constant * k;
    }

    fn normalize(mut self) -> Row {
        let g = self
            .coeffs
            .values()
            .chain(std::iter::once(&self.constant))
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && g != BigInt::from(1) {
            for c in self.coeffs.values_mut() {
                *c = &*c / &g;
            }
            self.constant = &self.constant / &g;
        }
        self
    }
}

/// `τ`: variables to themselves, constants to 0, `·` to `+`, `a → b` to
/// `b − a`. Panics on lattice connectives.
pub fn tau(f: &Formula) -> Row {
    let mut r = Row::default();
    tau_into(f, &BigInt::from(1), &mut r);
    r.coeffs.retain(|_, c| !c.is_zero());
    r
}

fn tau_into(f: &Formula, sign: &BigInt, r: &mut Row) {
    match f {
        Formula::Var(v) => *r.coeffs.entry(v.clone()).or_default() += sign,
        Formula::One | Formula::Zero => {}
        Formula::Fuse(a, b) => {
            tau_into(a, sign, r);
            tau_into(b, sign, r);
        }
        Formula::Imp(a, b) => {
            tau_into(b, sign, r);
            tau_into(a, &-sign, r);
        }
        _ => panic!("not multiplicative: {f}"),
    }
}

/// Fourier–Motzkin: is `{row ≥ 0}` satisfiable over the rationals?
pub fn fm_feasible(rows: Vec<Row>) -> bool {
    let mut rows: Vec<Row> = rows.into_iter().map(Row::normalize).collect();
    loop {
        let Some(x) = rows.iter().flat_map(|r| r.coeffs.keys()).next().cloned() else {
            return rows.iter().all(|r| !r.constant.is_negative());
        };
        let (mut pos, mut neg, mut rest) = (vec![], vec![], vec![]);
        for r in rows {
            match r.coeffs.get(&x) {
                Some(c) if c.is_positive() => pos.push(r),
                Some(_) => neg.push(r),
                None => rest.push(r),
            }
        }
        for p in &pos {
            for n in &neg {
                let a = p.coeffs[&x].clone();
                let b = -n.coeffs[&x].clone();
                let mut c = Row::default();
                c.add_scaled(p, &b);
                c.add_scaled(n, &a);
                c.coeffs.remove(&x);
                let c = c.normalize();
                if !rest.contains(&c) {
                    rest.push(c);
                }
            }
        }
        rows = rest;
    }
}

/// Is there a rational valuation with every hypothesis `≥ 0` and every
/// disjunct `< 0` (scaled to `≤ −1`)?
pub fn abelian_refutable(hyps: &[Formula], disjuncts: &[Formula]) -> bool {
    let mut rows: Vec<Row> = hyps.iter().map(tau).collect();
    for d in disjuncts {
        let t = tau(d);
        let mut r = Row::default();
        r.add_scaled(&t, &BigInt::from(-1));
        r.constant = BigInt::from(-1);
        rows.push(r);
    }
    fm_feasible(rows)
}

/// Sugihara chain on signed integers, written out directly.
#[derive(Clone, Copy, Debug)]
pub struct Sugihara {
    pub half_width: i64,
    pub odd: bool,
}

impl Sugihara {
    pub fn elements(&self) -> Vec<i64> {
        (-self.half_width..=self.half_width).filter(|&x| self.odd || x != 0).collect()
    }

    pub fn unit(&self) -> i64 {
        if self.odd {
            0
        } else {
            1
        }
    }

    pub fn fuse(&self, a: i64, b: i64) -> i64 {
        match a.abs().cmp(&b.abs()) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => a.min(b),
        }
    }

    /// `a → b = ¬(a · ¬b)`
    pub fn implies(&self, a: i64, b: i64) -> i64 {
        -self.fuse(a, -b)
    }

    pub fn eval(&self, v: &BTreeMap<String, i64>, f: &Formula) -> i64 {
        match f {
            Formula::Var(x) => v[x],
            Formula::One => self.unit(),
            Formula::Zero => -self.unit(),
            Formula::Conj(a, b) => self.eval(v, a).min(self.eval(v, b)),
            Formula::Disj(a, b) => self.eval(v, a).max(self.eval(v, b)),
            Formula::Fuse(a, b) => self.fuse(self.eval(v, a), self.eval(v, b)),
            Formula::Imp(a, b) => self.implies(self.eval(v, a), self.eval(v, b)),
        }
    }

    /// Some valuation designating all hypotheses but not the goal.
    pub fn refutes(&self, hyps: &[Formula], goal: &Formula) -> Option<BTreeMap<String, i64>> {
        let mut vars = goal.vars();
        for h in hyps {
            h.collect_vars(&mut vars);
        }
        let vars: Vec<String> = vars.into_iter().collect();
        let elems = self.elements();
        let mut idx = vec![0usize; vars.len()];
        loop {
            let v: BTreeMap<String, i64> = vars.iter().cloned().zip(idx.iter().map(|&i| elems[i])).collect();
            let u = self.unit();
            if hyps.iter().all(|h| self.eval(&v, h) >= u) && self.eval(&v, goal) < u {
                return Some(v);
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return None;
                }
                idx[k] += 1;
                if idx[k] < elems.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

/// Integer evaluation in the lattice-ordered group `ℤ`.
pub fn eval_z(v: &BTreeMap<String, i64>, f: &Formula) -> i64 {
    match f {
        Formula::Var(x) => v[x],
        Formula::One | Formula::Zero => 0,
        Formula::Conj(a, b) => eval_z(v, a).min(eval_z(v, b)),
        Formula::Disj(a, b) => eval_z(v, a).max(eval_z(v, b)),
        Formula::Fuse(a, b) => eval_z(v, a) + eval_z(v, b),
        Formula::Imp(a, b) => eval_z(v, b) - eval_z(v, a),
    }
}

/// All valuations of `vars` into `domain`.
pub fn valuations(vars: &BTreeSet<String>, domain: &[i64]) -> Vec<BTreeMap<String, i64>> {
    let mut out = vec![BTreeMap::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|m| {
                domain.iter().map(move |&x| {
                    let mut m = m.clone();
                    m.insert(v.clone(), x);
                    m
                })
            })
            .collect();
    }
    out
}

/// Odd and even chains of half-width `k + 1` for `k` variables.
pub fn rmt_chains(k: usize) -> [Sugihara; 2] {
    let hw = k as i64 + 1;
    [Sugihara { half_width: hw, odd: true }, Sugihara { half_width: hw, odd: false }]
}
