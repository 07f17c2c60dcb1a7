//! Exact integer linear algebra for the Abelian reading of multiplicative
//! formulas: linear forms, Gordan's dichotomy with certificates,
//! Fourier–Motzkin projection, and nonnegative cone membership.

mod simplex;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::formula::Formula;

pub use simplex::{solve as solve_feasibility, Feasibility};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("formula is not multiplicative: {0}")]
    NotMultiplicative(String),
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("matrix rows have unequal lengths")]
    Ragged,
    #[error("bad matrix entry '{0}'")]
    BadEntry(String),
}

/// `Σ coeffs[x]·x + constant`, with zero coefficients never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinForm {
    coeffs: BTreeMap<String, BigInt>,
    constant: BigInt,
}

impl LinForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(name: impl Into<String>) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.into(), BigInt::one());
        LinForm {
            coeffs,
            constant: BigInt::zero(),
        }
    }

    pub fn constant_form(c: impl Into<BigInt>) -> Self {
        LinForm {
            coeffs: BTreeMap::new(),
            constant: c.into(),
        }
    }

    pub fn from_terms<S: Into<String>, I: Into<BigInt>>(
        terms: impl IntoIterator<Item = (S, I)>,
        constant: impl Into<BigInt>,
    ) -> Self {
        let mut out = LinForm::constant_form(constant);
        for (v, c) in terms {
            out.add_term(v.into(), c.into());
        }
        out
    }

    fn add_term(&mut self, var: String, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(var.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&var);
        }
    }

    pub fn coeff(&self, var: &str) -> BigInt {
        self.coeffs.get(var).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<String, BigInt> {
        &self.coeffs
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.coeffs.keys()
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        let mut out = self.clone();
        for (v, c) in &other.coeffs {
            out.add_term(v.clone(), c.clone());
        }
        out.constant += &other.constant;
        out
    }

    pub fn sub(&self, other: &LinForm) -> LinForm {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> LinForm {
        if k.is_zero() {
            return LinForm::zero();
        }
        LinForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * k)).collect(),
            constant: &self.constant * k,
        }
    }

    /// Divides by the positive gcd of all coefficients and the constant.
    pub fn primitive(&self) -> LinForm {
        let g = self
            .coeffs
            .values()
            .chain(std::iter::once(&self.constant))
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LinForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c / &g)).collect(),
            constant: &self.constant / &g,
        }
    }

    /// Missing variables count as zero.
    pub fn eval(&self, v: &BTreeMap<String, BigInt>) -> BigInt {
        self.coeffs
            .iter()
            .map(|(x, c)| c * v.get(x).cloned().unwrap_or_default())
            .sum::<BigInt>()
            + &self.constant
    }

    pub fn eval_i64(&self, v: &BTreeMap<String, i64>) -> BigInt {
        self.coeffs
            .iter()
            .map(|(x, c)| c * BigInt::from(v.get(x).copied().unwrap_or(0)))
            .sum::<BigInt>()
            + &self.constant
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.coeffs {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{mag}{v}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant.is_negative() {
            write!(f, " - {}", self.constant.abs())
        } else if self.constant.is_positive() {
            write!(f, " + {}", self.constant)
        } else {
            Ok(())
        }
    }
}

/// The Abelian reading of a multiplicative formula: variables are
/// themselves, `1` and `0` are `0`, fusion adds and `φ → ψ` is `ψ - φ`.
pub fn translate_abelian(f: &Formula) -> Result<LinForm, LinearError> {
    match f {
        Formula::Var(v) => Ok(LinForm::var(v.clone())),
        Formula::One | Formula::Zero => Ok(LinForm::zero()),
        Formula::Fuse(a, b) => Ok(translate_abelian(a)?.add(&translate_abelian(b)?)),
        Formula::Imp(a, b) => Ok(translate_abelian(b)?.sub(&translate_abelian(a)?)),
        Formula::Conj(..) | Formula::Disj(..) => {
            Err(LinearError::NotMultiplicative(f.render()))
        }
    }
}

/// Renders a homogeneous form `P - N` (with `P`, `N` having nonnegative
/// coefficients) as the multiplicative formula `N → P`, where each side is
/// a fusion of variable powers and an empty side is `1`.
pub fn form_to_formula(form: &LinForm) -> Formula {
    let side = |positive: bool| -> Formula {
        let parts: Vec<Formula> = form
            .coeffs
            .iter()
            .filter(|(_, c)| c.is_positive() == positive)
            .map(|(v, c)| {
                let n: u64 = c.abs().try_into().expect("coefficient fits in u64");
                Formula::power(&Formula::var(v.clone()), n)
            })
            .collect();
        parts
            .into_iter()
            .reduce(Formula::fuse)
            .unwrap_or(Formula::One)
    };
    Formula::imp(side(false), side(true))
}

/// Dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self, LinearError> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || n == 0 {
            return Err(LinearError::EmptyMatrix);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(LinearError::Ragged);
        }
        Ok(IntMatrix { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, LinearError> {
        IntMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Whitespace-separated integers, one row per non-empty line.
    pub fn parse(text: &str) -> Result<Self, LinearError> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split_whitespace()
                    .map(|tok| {
                        tok.parse::<BigInt>()
                            .map_err(|_| LinearError::BadEntry(tok.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::new(rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }
}

/// The two alternatives of Gordan's theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GordanResult {
    /// `yᵀM` has every entry strictly positive.
    StrictDual(Vec<BigInt>),
    /// `Mx = 0` with `x ≥ 0`, `x ≠ 0`.
    Kernel(Vec<BigInt>),
}

impl GordanResult {
    pub fn branch_name(&self) -> &'static str {
        match self {
            GordanResult::StrictDual(_) => "strict-dual",
            GordanResult::Kernel(_) => "kernel",
        }
    }

    pub fn vector(&self) -> &[BigInt] {
        match self {
            GordanResult::StrictDual(v) | GordanResult::Kernel(v) => v,
        }
    }

    /// Re-checks the certificate in exact integer arithmetic.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        match self {
            GordanResult::StrictDual(y) => {
                y.len() == m.nrows()
                    && (0..m.ncols()).all(|j| {
                        (0..m.nrows())
                            .map(|i| &y[i] * m.get(i, j))
                            .sum::<BigInt>()
                            .is_positive()
                    })
            }
            GordanResult::Kernel(x) => {
                x.len() == m.ncols()
                    && x.iter().all(|v| !v.is_negative())
                    && x.iter().any(|v| !v.is_zero())
                    && m.rows()
                        .iter()
                        .all(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<BigInt>().is_zero())
            }
        }
    }
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Scales a rational vector by the lcm of its denominators and divides by
/// the gcd of the result. Returns the integer vector and the total factor
/// applied, as `(numerator, denominator)`.
pub(crate) fn clear_denominators(v: &[BigRational]) -> (Vec<BigInt>, BigInt, BigInt) {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return (ints, l, BigInt::one());
    }
    (ints.iter().map(|x| x / &g).collect(), l, g)
}

/// Decides which alternative of Gordan's theorem holds for `m`, solving
/// `Mx = 0, Σx = 1, x ≥ 0` exactly and reading the strict dual from the
/// Farkas certificate when it is infeasible.
pub fn gordan(m: &IntMatrix) -> GordanResult {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a: Vec<Vec<BigRational>> = m.rows().iter().map(|r| r.iter().map(rat).collect()).collect();
    a.push(vec![BigRational::one(); cols]);
    let mut b = vec![BigRational::zero(); rows];
    b.push(BigRational::one());
    match simplex::solve(&a, &b) {
        Feasibility::Feasible(x) => GordanResult::Kernel(clear_denominators(&x).0),
        Feasibility::Infeasible(z) => {
            // zᵀ[M; 1ᵀ] ≥ 0 with z_last < 0 forces yᵀM ≥ -z_last > 0.
            GordanResult::StrictDual(clear_denominators(&z[..rows]).0)
        }
    }
}

/// Nonnegative integer combination with `Σ mu[j]·gen[j] = scale·target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination {
    pub mu: Vec<BigInt>,
    pub scale: BigInt,
}

impl Combination {
    pub fn verify(&self, target: &LinForm, gens: &[LinForm]) -> bool {
        self.mu.len() == gens.len()
            && self.scale.is_positive()
            && self.mu.iter().all(|m| !m.is_negative())
            && gens
                .iter()
                .zip(&self.mu)
                .fold(LinForm::zero(), |acc, (g, m)| acc.add(&g.scale(m)))
                == target.scale(&self.scale)
    }
}

/// Either `target` lies in the cone of the generators, or an integer point
/// makes every generator `≥ 0` and the target `< 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeResult {
    Member(Combination),
    Separated(BTreeMap<String, BigInt>),
}

fn variables_of<'a>(forms: impl IntoIterator<Item = &'a LinForm>) -> Vec<String> {
    let mut vars = BTreeSet::new();
    for f in forms {
        vars.extend(f.vars().cloned());
    }
    vars.into_iter().collect()
}

/// Cone membership for homogeneous forms. Constants are ignored.
pub fn cone_membership(target: &LinForm, gens: &[LinForm]) -> ConeResult {
    let vars = variables_of(gens.iter().chain(std::iter::once(target)));
    if vars.is_empty() {
        return ConeResult::Member(Combination {
            mu: vec![BigInt::zero(); gens.len()],
            scale: BigInt::one(),
        });
    }
    let a: Vec<Vec<BigRational>> = vars
        .iter()
        .map(|v| gens.iter().map(|g| rat(&g.coeff(v))).collect())
        .collect();
    let b: Vec<BigRational> = vars.iter().map(|v| rat(&target.coeff(v))).collect();
    match simplex::solve(&a, &b) {
        Feasibility::Feasible(mu) => {
            if gens.is_empty() {
                return ConeResult::Member(Combination {
                    mu: vec![],
                    scale: BigInt::one(),
                });
            }
            let (ints, l, g) = clear_denominators(&mu);
            // ints = mu·l/g, so Σ ints·(g/d)·gen = (l/d)·target with d = gcd(l, g).
            let d = l.gcd(&g);
            let lift = &g / &d;
            ConeResult::Member(Combination {
                mu: ints.into_iter().map(|x| x * &lift).collect(),
                scale: &l / &d,
            })
        }
        Feasibility::Infeasible(z) => {
            let (ints, _, _) = clear_denominators(&z);
            ConeResult::Separated(vars.into_iter().zip(ints).collect())
        }
    }
}

/// `Some(μ)` with `Σ μⱼ·genⱼ = D·target` for some positive `D` (returned
/// inside the combination), or `None` if no rational solution exists.
pub fn nonneg_combination(target: &LinForm, gens: &[LinForm]) -> Option<Combination> {
    match cone_membership(target, gens) {
        ConeResult::Member(c) => Some(c),
        ConeResult::Separated(_) => None,
    }
}

/// Fourier–Motzkin projection of `{form ≥ 0}` onto the `keep` variables.
pub fn project_fm(ineqs: &[LinForm], keep: &BTreeSet<String>) -> Vec<LinForm> {
    let mut rows: Vec<LinForm> = prune(ineqs.iter().map(LinForm::primitive).collect());
    let eliminate: Vec<String> = variables_of(&rows)
        .into_iter()
        .filter(|v| !keep.contains(v))
        .collect();
    for x in eliminate {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            let c = r.coeff(&x);
            if c.is_positive() {
                pos.push(r);
            } else if c.is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let a = p.coeff(&x);
                let b = -n.coeff(&x);
                rest.push(p.scale(&b).add(&n.scale(&a)).primitive());
            }
        }
        rows = prune(rest);
    }
    rows
}

/// Drops trivially true rows and rows dominated by another row with the
/// same coefficient vector; keeps a single `-1 ≥ 0` if the system is
/// trivially infeasible.
fn prune(rows: Vec<LinForm>) -> Vec<LinForm> {
    let mut best: BTreeMap<BTreeMap<String, BigInt>, BigInt> = BTreeMap::new();
    for r in rows {
        if r.coeffs.is_empty() {
            if r.constant.is_negative() {
                return vec![LinForm::constant_form(-1)];
            }
            continue;
        }
        best.entry(r.coeffs)
            .and_modify(|c| {
                if r.constant < *c {
                    *c = r.constant.clone();
                }
            })
            .or_insert(r.constant);
    }
    best.into_iter()
        .map(|(coeffs, constant)| LinForm { coeffs, constant })
        .collect()
}

/// Removes homogeneous rows implied by the remaining ones (cone
/// redundancy), keeping the earliest of mutually implied rows.
pub fn remove_cone_redundant(rows: Vec<LinForm>) -> Vec<LinForm> {
    let mut kept = rows;
    let mut i = kept.len();
    while i > 0 {
        i -= 1;
        let others: Vec<LinForm> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| r.clone())
            .collect();
        if nonneg_combination(&kept[i], &others).is_some() {
            kept.remove(i);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn lf(terms: &[(&str, i64)]) -> LinForm {
        LinForm::from_terms(terms.iter().map(|&(v, c)| (v, c)), 0)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn translation_examples() {
        assert_eq!(translate_abelian(&parse("p -> q").unwrap()).unwrap(), lf(&[("q", 1), ("p", -1)]));
        assert!(translate_abelian(&parse("p + ~p").unwrap()).unwrap().is_zero());
        assert_eq!(
            translate_abelian(&parse("(p * p) -> q").unwrap()).unwrap(),
            lf(&[("q", 1), ("p", -2)])
        );
        assert!(matches!(
            translate_abelian(&parse("p | q").unwrap()),
            Err(LinearError::NotMultiplicative(_))
        ));
    }

    #[test]
    fn gordan_examples() {
        let m = IntMatrix::from_i64(&[&[1]]).unwrap();
        assert_eq!(gordan(&m), GordanResult::StrictDual(big(&[1])));
        let m = IntMatrix::from_i64(&[&[1, -1]]).unwrap();
        assert_eq!(gordan(&m), GordanResult::Kernel(big(&[1, 1])));
        let m = IntMatrix::from_i64(&[&[2, -3]]).unwrap();
        assert_eq!(gordan(&m), GordanResult::Kernel(big(&[3, 2])));
    }

    #[test]
    fn matrix_parse_errors() {
        assert_eq!(IntMatrix::parse(""), Err(LinearError::EmptyMatrix));
        assert_eq!(IntMatrix::parse("1 2\n3"), Err(LinearError::Ragged));
        assert!(matches!(IntMatrix::parse("1 x"), Err(LinearError::BadEntry(_))));
        assert_eq!(IntMatrix::parse("1 -1\n").unwrap().ncols(), 2);
    }

    #[test]
    fn fm_examples() {
        let keep: BTreeSet<String> = ["p", "r"].iter().map(|s| s.to_string()).collect();
        let out = project_fm(&[lf(&[("q", 1), ("p", -1)]), lf(&[("r", 1), ("q", -1)])], &keep);
        assert_eq!(out, vec![lf(&[("r", 1), ("p", -1)])]);

        let keep: BTreeSet<String> = ["q".to_string()].into();
        assert!(project_fm(&[lf(&[("q", 1), ("p", -1)])], &keep).is_empty());

        let keep: BTreeSet<String> = ["p".to_string()].into();
        assert_eq!(project_fm(&[lf(&[("p", 1)])], &keep), vec![lf(&[("p", 1)])]);
    }

    #[test]
    fn fm_detects_infeasibility() {
        let keep = BTreeSet::new();
        let rows = [
            LinForm::from_terms([("x", 1)], -1),
            LinForm::from_terms([("x", -1)], 0),
        ];
        assert_eq!(project_fm(&rows, &keep), vec![LinForm::constant_form(-1)]);
    }

    #[test]
    fn nonneg_combination_examples() {
        let c = nonneg_combination(
            &lf(&[("r", 1), ("p", -1)]),
            &[lf(&[("q", 1), ("p", -1)]), lf(&[("r", 1), ("q", -1)])],
        )
        .unwrap();
        assert_eq!(c.mu, big(&[1, 1]));
        assert_eq!(c.scale, BigInt::one());
        assert!(nonneg_combination(&lf(&[("p", 1)]), &[]).is_none());
        let c = nonneg_combination(&LinForm::zero(), &[lf(&[("q", 1), ("p", -1)])]).unwrap();
        assert_eq!(c.mu, big(&[0]));
    }

    #[test]
    fn fractional_solutions_are_scaled() {
        // 2p is the generator, p the target: 1/2 of the generator.
        let gens = [lf(&[("p", 2)])];
        let c = nonneg_combination(&lf(&[("p", 1)]), &gens).unwrap();
        assert!(c.verify(&lf(&[("p", 1)]), &gens));
        assert_eq!(c.mu, big(&[1]));
        assert_eq!(c.scale, BigInt::from(2));
    }

    #[test]
    fn constant_generators_keep_their_arity() {
        let gens = [LinForm::zero(), LinForm::zero()];
        let c = nonneg_combination(&LinForm::zero(), &gens).unwrap();
        assert!(c.verify(&LinForm::zero(), &gens));
    }

    #[test]
    fn separation_is_a_valuation() {
        match cone_membership(&lf(&[("p", 1)]), &[]) {
            ConeResult::Separated(v) => assert_eq!(v["p"], BigInt::from(-1)),
            other => panic!("expected separation, got {other:?}"),
        }
    }

    #[test]
    fn form_rendering() {
        let f = form_to_formula(&lf(&[("x", 2), ("y", -3)]));
        assert_eq!(f, parse("y^3 -> x^2").unwrap());
        assert_eq!(form_to_formula(&lf(&[("r", 1)])), parse("1 -> r").unwrap());
        assert_eq!(
            translate_abelian(&form_to_formula(&lf(&[("x", 2), ("y", -3)]))).unwrap(),
            lf(&[("x", 2), ("y", -3)])
        );
    }

    #[test]
    fn redundant_rows_removed() {
        let rows = vec![
            lf(&[("p", 1)]),
            lf(&[("q", 1)]),
            lf(&[("p", 1), ("q", 1)]),
        ];
        assert_eq!(remove_cone_redundant(rows), vec![lf(&[("p", 1)]), lf(&[("q", 1)])]);
    }

    #[test]
    fn display() {
        assert_eq!(lf(&[("q", 1), ("p", -2)]).to_string(), "-2p + q");
        assert_eq!(LinForm::zero().to_string(), "0");
    }
}
