//! Seeded random formulas and matrices for property checks.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::Formula;
use crate::linear::IntMatrix;

/// Random multiplicative formula over `vars` of depth at most `depth`.
pub fn mult_formula<R: Rng + ?Sized>(rng: &mut R, vars: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng, vars);
    }
    let (a, b) = (mult_formula(rng, vars, depth - 1), mult_formula(rng, vars, depth - 1));
    match rng.gen_range(0..5) {
        0 | 1 => Formula::imp(a, b),
        2 => Formula::fuse(a, b),
        3 => Formula::neg(a),
        _ => Formula::plus(a, b),
    }
}

/// Random formula over all connectives.
pub fn formula<R: Rng + ?Sized>(rng: &mut R, vars: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng, vars);
    }
    let (a, b) = (formula(rng, vars, depth - 1), formula(rng, vars, depth - 1));
    match rng.gen_range(0..6) {
        0 => Formula::conj(a, b),
        1 => Formula::disj(a, b),
        2 => Formula::fuse(a, b),
        3 | 4 => Formula::imp(a, b),
        _ => Formula::neg(a),
    }
}

fn leaf<R: Rng + ?Sized>(rng: &mut R, vars: &[&str]) -> Formula {
    match rng.gen_range(0..10) {
        0 => Formula::One,
        1 => Formula::Zero,
        _ => Formula::var(*vars.choose(rng).expect("at least one variable")),
    }
}

/// `rows × cols` matrix with entries in `[lo, hi]`.
pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, lo: i64, hi: i64) -> IntMatrix {
    IntMatrix::new(
        (0..rows)
            .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(lo..=hi))).collect())
            .collect(),
    )
    .expect("nonempty matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let f = mult_formula(&mut rng, &["p", "q"], 4);
            assert!(f.is_multiplicative());
            assert!(f.vars().iter().all(|v| v == "p" || v == "q"));
        }
        let m = matrix(&mut rng, 3, 4, -5, 5);
        assert_eq!((m.nrows(), m.ncols()), (3, 4));
    }

    #[test]
    fn seeded_runs_repeat() {
        let a: Vec<Formula> = {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            (0..20).map(|_| formula(&mut rng, &["p", "q", "r"], 4)).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b: Vec<Formula> = (0..20).map(|_| formula(&mut rng, &["p", "q", "r"], 4)).collect();
        assert_eq!(a, b);
    }
}
