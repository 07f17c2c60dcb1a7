//! Phase-one simplex over exact rationals with Bland's rule.
//!
//! Decides `A x = b, x ≥ 0` and returns either a solution or a Farkas
//! certificate `y` with `yᵀA ≥ 0` and `yᵀb < 0`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible(Vec<BigRational>),
}

/// `a` is row-major with `b.len()` rows of equal width.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Feasibility {
    let m = b.len();
    let n = a.first().map_or(0, Vec::len);
    debug_assert!(a.len() == m && a.iter().all(|r| r.len() == n));

    // Rows are negated where b < 0 so the artificial basis starts feasible.
    let sign: Vec<bool> = b.iter().map(|x| x.is_negative()).collect();
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            for j in 0..n {
                row.push(if sign[i] { -a[i][j].clone() } else { a[i][j].clone() });
            }
            for k in 0..m {
                row.push(if k == i { BigRational::one() } else { BigRational::zero() });
            }
            row.push(if sign[i] { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost: Vec<BigRational> = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[rhs] -= &row[rhs];
    }

    loop {
        let Some(enter) = (0..n).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (r, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, r, enter);
        basis[r] = enter;
    }

    let infeasibility: BigRational = basis
        .iter()
        .zip(&t)
        .filter(|(&bv, _)| bv >= n)
        .map(|(_, row)| row[rhs].clone())
        .sum();

    if infeasibility.is_zero() {
        let mut x = vec![BigRational::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = t[i][rhs].clone();
            }
        }
        return Feasibility::Feasible(x);
    }

    // Simplex multipliers y = c_Bᵀ B⁻¹; B⁻¹ sits in the artificial columns.
    let mut y = vec![BigRational::zero(); m];
    for (i, &bv) in basis.iter().enumerate() {
        if bv >= n {
            for (k, yk) in y.iter_mut().enumerate() {
                *yk += &t[i][n + k];
            }
        }
    }
    // Optimality gives yᵀA' ≤ 0 and yᵀb' > 0; negate and undo the row flips.
    let cert = y
        .into_iter()
        .zip(&sign)
        .map(|(yk, &flip)| if flip { yk } else { -yk })
        .collect();
    Feasibility::Infeasible(cert)
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], r: usize, c: usize) {
    let p = t[r][c].clone();
    for x in t[r].iter_mut() {
        *x /= &p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (x, pr) in row.iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *x -= &f * pr;
                }
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (x, pr) in cost.iter_mut().zip(&pivot_row) {
            if !pr.is_zero() {
                *x -= &f * pr;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    fn check(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
        match solve(a, b) {
            Feasibility::Feasible(x) => {
                assert!(x.iter().all(|v| !v.is_negative()));
                for (row, bi) in a.iter().zip(b) {
                    let s: BigRational = row.iter().zip(&x).map(|(p, q)| p * q).sum();
                    assert_eq!(&s, bi);
                }
                true
            }
            Feasibility::Infeasible(y) => {
                let n = a.first().map_or(0, Vec::len);
                for j in 0..n {
                    let s: BigRational = a.iter().zip(&y).map(|(r, yi)| &r[j] * yi).sum();
                    assert!(!s.is_negative());
                }
                let yb: BigRational = b.iter().zip(&y).map(|(p, q)| p * q).sum();
                assert!(yb.is_negative());
                false
            }
        }
    }

    #[test]
    fn feasible_system() {
        // x1 + x2 = 2, x1 - x2 = 0
        assert!(check(&mat(&[&[1, 1], &[1, -1]]), &[q(2), q(0)]));
    }

    #[test]
    fn infeasible_system() {
        // x1 + x2 = -1 has no nonnegative solution.
        assert!(!check(&mat(&[&[1, 1]]), &[q(-1)]));
        // x1 - x2 = 1, -x1 + x2 = 1
        assert!(!check(&mat(&[&[1, -1], &[-1, 1]]), &[q(1), q(1)]));
    }

    #[test]
    fn degenerate_cycling_candidate() {
        // Beale-style degenerate system; Bland's rule must terminate.
        let a = mat(&[
            &[1, 0, 0, 1, 0, 0, 0],
            &[0, 1, 0, 0, 1, 0, 0],
            &[0, 0, 1, 0, 0, 1, 0],
            &[1, 1, 1, 0, 0, 0, -1],
        ]);
        assert!(check(&a, &[q(0), q(0), q(0), q(0)]));
    }

    #[test]
    fn empty_rows() {
        assert_eq!(solve(&[], &[]), Feasibility::Feasible(vec![]));
    }
}
