//! Formulas over the connectives `&`, `|`, `*` (fusion), `->`, and the
//! constants `1`, `0`.
//!
//! Negation, `+`, scalar multiples `n * φ` and powers `φ^n` are not node
//! kinds: the parser elaborates them into the primitive connectives.
//!
//! | text      | elaborated tree            |
//! |-----------|----------------------------|
//! | `~a`      | `a -> 0`                   |
//! | `a + b`   | `(a -> 0) -> b`            |
//! | `0 * a`   | `0`                        |
//! | `1 * a`   | `a`                        |
//! | `n * a`   | `(n-1) * a + a`            |
//! | `a^0`     | `1`                        |
//! | `a^1`     | `a`                        |
//! | `a^n`     | `a^(n-1) * a`              |
//!
//! Precedence from tightest to loosest: `~` and `^`, then `*`, `+`, `->`
//! (right associative), `&`, `|`. An integer literal directly followed by
//! `*` is always a scalar, so a fused constant must be parenthesized:
//! `(1) * p`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Largest accepted `n` in `n * φ` and `φ^n`.
pub const MAX_MULTIPLIER: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    One,
    Zero,
    Conj(Box<Formula>, Box<Formula>),
    Disj(Box<Formula>, Box<Formula>),
    Fuse(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("bad multiplier {value} at byte {pos}: must be at most {max}", max = MAX_MULTIPLIER)]
    Arity { pos: usize, value: String },
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn conj(l: Formula, r: Formula) -> Self {
        Formula::Conj(Box::new(l), Box::new(r))
    }

    pub fn disj(l: Formula, r: Formula) -> Self {
        Formula::Disj(Box::new(l), Box::new(r))
    }

    pub fn fuse(l: Formula, r: Formula) -> Self {
        Formula::Fuse(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Self {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    /// `¬φ := φ → 0`
    pub fn neg(f: Formula) -> Self {
        Formula::imp(f, Formula::Zero)
    }

    /// `φ + ψ := ¬φ → ψ`
    pub fn plus(l: Formula, r: Formula) -> Self {
        Formula::imp(Formula::neg(l), r)
    }

    /// `n φ`, left-nested: `((φ + φ) + φ) + …`.
    pub fn scalar(n: u64, f: &Formula) -> Self {
        match n {
            0 => Formula::Zero,
            _ => {
                let mut acc = f.clone();
                for _ in 1..n {
                    acc = Formula::plus(acc, f.clone());
                }
                acc
            }
        }
    }

    /// `φⁿ`, left-nested: `((φ · φ) · φ) · …`.
    pub fn power(f: &Formula, n: u64) -> Self {
        match n {
            0 => Formula::One,
            _ => {
                let mut acc = f.clone();
                for _ in 1..n {
                    acc = Formula::fuse(acc, f.clone());
                }
                acc
            }
        }
    }

    /// Right-nested sum `f₁ + (f₂ + (… + fₙ))`; `None` for an empty list.
    pub fn sum_right(terms: &[Formula]) -> Option<Formula> {
        let (last, init) = terms.split_last()?;
        Some(
            init.iter()
                .rev()
                .fold(last.clone(), |acc, t| Formula::plus(t.clone(), acc)),
        )
    }

    /// Left-nested disjunction of the given formulas.
    pub fn disj_all(terms: &[Formula]) -> Option<Formula> {
        let (first, rest) = terms.split_first()?;
        Some(
            rest.iter()
                .fold(first.clone(), |acc, t| Formula::disj(acc, t.clone())),
        )
    }

    /// Left-nested conjunction of the given formulas.
    pub fn conj_all(terms: &[Formula]) -> Option<Formula> {
        let (first, rest) = terms.split_first()?;
        Some(
            rest.iter()
                .fold(first.clone(), |acc, t| Formula::conj(acc, t.clone())),
        )
    }

    /// Recognizes `φ + ψ`, returning `(φ, ψ)`.
    pub fn as_plus(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(l, r) => match l.as_ref() {
                Formula::Imp(a, z) if **z == Formula::Zero => Some((a, r)),
                _ => None,
            },
            _ => None,
        }
    }

    /// Recognizes `n φ` with `n ≥ 2` in the left-nested shape built by
    /// [`Formula::scalar`]; returns the largest such `n`.
    pub fn as_multiple(&self) -> Option<(u64, &Formula)> {
        let (mut acc, unit) = self.as_plus()?;
        let mut n = 2u64;
        while acc != unit {
            let (l, r) = acc.as_plus()?;
            if r != unit {
                return None;
            }
            acc = l;
            n += 1;
        }
        Some((n, unit))
    }

    pub fn is_multiplicative(&self) -> bool {
        match self {
            Formula::Var(_) | Formula::One | Formula::Zero => true,
            Formula::Conj(..) | Formula::Disj(..) => false,
            Formula::Fuse(l, r) | Formula::Imp(l, r) => {
                l.is_multiplicative() && r.is_multiplicative()
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::One | Formula::Zero => {}
            Formula::Conj(l, r)
            | Formula::Disj(l, r)
            | Formula::Fuse(l, r)
            | Formula::Imp(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::One | Formula::Zero => 1,
            Formula::Conj(l, r)
            | Formula::Disj(l, r)
            | Formula::Fuse(l, r)
            | Formula::Imp(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::One | Formula::Zero => 0,
            Formula::Conj(l, r)
            | Formula::Disj(l, r)
            | Formula::Fuse(l, r)
            | Formula::Imp(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// All distinct subformulas, children before parents.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_subformulas(&mut seen, &mut out);
        out
    }

    fn collect_subformulas(&self, seen: &mut BTreeSet<Formula>, out: &mut Vec<Formula>) {
        if let Formula::Conj(l, r)
        | Formula::Disj(l, r)
        | Formula::Fuse(l, r)
        | Formula::Imp(l, r) = self
        {
            l.collect_subformulas(seen, out);
            r.collect_subformulas(seen, out);
        }
        if seen.insert(self.clone()) {
            out.push(self.clone());
        }
    }

    pub fn substitute(&self, s: &Substitution) -> Formula {
        match self {
            Formula::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::One | Formula::Zero => self.clone(),
            Formula::Conj(l, r) => Formula::conj(l.substitute(s), r.substitute(s)),
            Formula::Disj(l, r) => Formula::disj(l.substitute(s), r.substitute(s)),
            Formula::Fuse(l, r) => Formula::fuse(l.substitute(s), r.substitute(s)),
            Formula::Imp(l, r) => Formula::imp(l.substitute(s), r.substitute(s)),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        render_into(self, 0, &mut out);
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// A finite map from variable names to formulas; unmapped variables are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<String, Formula>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: impl Into<String>, f: Formula) -> Self {
        self.map.insert(var.into(), f);
        self
    }

    pub fn insert(&mut self, var: impl Into<String>, f: Formula) {
        self.map.insert(var.into(), f);
    }

    pub fn get(&self, var: &str) -> Option<&Formula> {
        self.map.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Formula)> {
        self.map.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `self` followed by `then`: `(then ∘ self)(x) = then(self(x))`.
    pub fn then(&self, then: &Substitution) -> Substitution {
        let mut map: BTreeMap<String, Formula> = self
            .map
            .iter()
            .map(|(k, v)| (k.clone(), v.substitute(then)))
            .collect();
        for (k, v) in &then.map {
            map.entry(k.clone()).or_insert_with(|| v.clone());
        }
        Substitution { map }
    }
}

impl FromIterator<(String, Formula)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Formula)>>(iter: I) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

/// Metavariables (used in axiom templates) start with an uppercase letter;
/// object variables start with a lowercase one.
pub fn is_metavariable(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

// --- rendering ---------------------------------------------------------

const LVL_DISJ: u8 = 0;
const LVL_CONJ: u8 = 1;
const LVL_IMP: u8 = 2;
const LVL_SUM: u8 = 3;
const LVL_FUSE: u8 = 4;
const LVL_UNARY: u8 = 5;
const LVL_ATOM: u8 = 6;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Var(_) | Formula::One | Formula::Zero => LVL_ATOM,
        Formula::Disj(..) => LVL_DISJ,
        Formula::Conj(..) => LVL_CONJ,
        Formula::Fuse(..) => LVL_FUSE,
        Formula::Imp(_, r) if **r == Formula::Zero => LVL_UNARY,
        Formula::Imp(..) if f.as_plus().is_some() => LVL_SUM,
        Formula::Imp(..) => LVL_IMP,
    }
}

fn render_into(f: &Formula, min: u8, out: &mut String) {
    let paren = level(f) < min;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Var(v) => out.push_str(v),
        Formula::One => out.push('1'),
        Formula::Zero => out.push('0'),
        Formula::Disj(l, r) => {
            render_into(l, LVL_DISJ, out);
            out.push_str(" | ");
            render_into(r, LVL_CONJ, out);
        }
        Formula::Conj(l, r) => {
            render_into(l, LVL_CONJ, out);
            out.push_str(" & ");
            render_into(r, LVL_IMP, out);
        }
        Formula::Fuse(l, r) => {
            render_fuse_operand(l, LVL_FUSE, out);
            out.push_str(" * ");
            render_fuse_operand(r, LVL_UNARY, out);
        }
        Formula::Imp(l, r) if **r == Formula::Zero => {
            out.push('~');
            render_into(l, LVL_UNARY, out);
        }
        Formula::Imp(l, r) => match f.as_plus() {
            Some((a, b)) => {
                render_into(a, LVL_SUM, out);
                out.push_str(" + ");
                render_into(b, LVL_FUSE, out);
            }
            None => {
                render_into(l, LVL_SUM, out);
                out.push_str(" -> ");
                render_into(r, LVL_IMP, out);
            }
        },
    }
    if paren {
        out.push(')');
    }
}

// A bare constant next to `*` would read as a scalar multiplier.
fn render_fuse_operand(f: &Formula, min: u8, out: &mut String) {
    match f {
        Formula::One => out.push_str("(1)"),
        Formula::Zero => out.push_str("(0)"),
        _ => render_into(f, min, out),
    }
}

// --- parsing -----------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Tilde,
    Caret,
    Star,
    Plus,
    Arrow,
    Amp,
    Bar,
    LParen,
    RParen,
    End,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str, allow_meta: bool) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => toks.push((Tok::Tilde, start)),
            b'^' => toks.push((Tok::Caret, start)),
            b'*' => toks.push((Tok::Star, start)),
            b'+' => toks.push((Tok::Plus, start)),
            b'&' => toks.push((Tok::Amp, start)),
            b'|' => toks.push((Tok::Bar, start)),
            b'(' => toks.push((Tok::LParen, start)),
            b')' => toks.push((Tok::RParen, start)),
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, start));
                    i += 2;
                    continue;
                }
                return Err(syntax(start, "expected '->'"));
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Int(text[start..i].to_string()), start));
                continue;
            }
            c if c.is_ascii_lowercase() || (allow_meta && c.is_ascii_uppercase()) => {
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character '{ch}'")));
            }
        }
        i += 1;
    }
    toks.push((Tok::End, text.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conj()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            acc = Formula::disj(acc, self.conj()?);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.imp()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            acc = Formula::conj(acc, self.imp()?);
        }
        Ok(acc)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.sum()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.fuse()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            acc = Formula::plus(acc, self.fuse()?);
        }
        Ok(acc)
    }

    fn fuse(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Formula::fuse(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Formula, ParseError> {
        if let Tok::Int(lit) = self.peek().clone() {
            if *self.peek_at(1) == Tok::Star {
                let at = self.offset();
                let n = multiplier(&lit, at)?;
                self.bump();
                self.bump();
                let body = self.factor()?;
                return Ok(Formula::scalar(n, &body));
            }
        }
        self.unary()
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            return Ok(Formula::neg(self.unary()?));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Tok::Int(lit) => acc = Formula::power(&acc, multiplier(&lit, at)?),
                _ => return Err(syntax(at, "expected an exponent after '^'")),
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Ident(name) => Ok(Formula::Var(name)),
            Tok::Int(lit) => match lit.as_str() {
                "1" => Ok(Formula::One),
                "0" => Ok(Formula::Zero),
                _ => Err(syntax(at, format!("'{lit}' is not a constant (only 0 and 1 are)"))),
            },
            Tok::LParen => {
                let inner = self.disj()?;
                let close = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Tok::End => Err(syntax(at, "unexpected end of input")),
            t => Err(syntax(at, format!("unexpected token {t:?}"))),
        }
    }
}

fn multiplier(lit: &str, at: usize) -> Result<u64, ParseError> {
    match lit.parse::<u64>() {
        Ok(n) if n <= MAX_MULTIPLIER => Ok(n),
        _ => Err(ParseError::Arity {
            pos: at,
            value: lit.to_string(),
        }),
    }
}

fn parse_with(text: &str, allow_meta: bool) -> Result<Formula, ParseError> {
    let toks = lex(text, allow_meta)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.disj()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.offset(), "trailing input"));
    }
    Ok(f)
}

/// Parses a formula of the object language.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, false)
}

/// Parses a template whose uppercase identifiers are metavariables.
pub fn parse_template(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, true)
}
