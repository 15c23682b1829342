//! Exact solution of rational linear systems by fraction-free (Bareiss)
//! elimination.
//!
//! Rows are scaled to integers first, eliminated over `BigInt` with the
//! one-step Bareiss division, and back-substituted over the rationals with
//! free variables set to zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Coeff;

fn integer_row(row: &[Coeff], rhs: &Coeff) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .chain(std::iter::once(rhs))
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter()
        .chain(std::iter::once(rhs))
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect()
}

/// Some solution of `a · x = b`, or `None` when the system is inconsistent.
///
/// Every row of `a` must have the same length.
pub fn solve(a: &[Vec<Coeff>], b: &[Coeff]) -> Option<Vec<Coeff>> {
    assert_eq!(a.len(), b.len(), "row count must match right-hand side");
    let ncols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            integer_row(row, rhs)
        })
        .collect();
    let nrows = m.len();

    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(k) = (r..nrows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..=ncols {
                let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }

    let mut x = vec![Coeff::zero(); ncols];
    for (row, &c) in pivots.iter().enumerate().rev() {
        let mut acc = Coeff::from_integer(m[row][ncols].clone());
        for j in c + 1..ncols {
            if !m[row][j].is_zero() {
                acc -= Coeff::from_integer(m[row][j].clone()) * &x[j];
            }
        }
        x[c] = acc / Coeff::from_integer(m[row][c].clone());
    }

    let residual_ok = a.iter().zip(b).all(|(row, rhs)| {
        let lhs: Coeff = row.iter().zip(&x).map(|(u, v)| u * v).sum();
        &lhs == rhs
    });
    assert!(residual_ok, "back substitution produced a non-solution");
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coeff;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Coeff {
        Coeff::new(n.into(), d.into())
    }

    #[test]
    fn square_system() {
        // x + 2y = 5, 3x - y = 1
        let a = vec![vec![coeff(1), coeff(2)], vec![coeff(3), coeff(-1)]];
        let x = solve(&a, &[coeff(5), coeff(1)]).unwrap();
        assert_eq!(x, vec![coeff(1), coeff(2)]);
    }

    #[test]
    fn rational_entries() {
        let a = vec![vec![q(1, 2), q(1, 3)], vec![q(1, 4), q(-2, 5)]];
        let b = [q(7, 6), q(-11, 20)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![coeff(1), q(2, 1)]);
    }

    #[test]
    fn inconsistent_system() {
        let a = vec![vec![coeff(1), coeff(1)], vec![coeff(2), coeff(2)]];
        assert_eq!(solve(&a, &[coeff(1), coeff(3)]), None);
    }

    #[test]
    fn underdetermined_sets_free_variables_to_zero() {
        let a = vec![vec![coeff(0), coeff(2), coeff(4)]];
        let x = solve(&a, &[coeff(6)]).unwrap();
        assert_eq!(x, vec![coeff(0), coeff(3), coeff(0)]);
    }

    #[test]
    fn empty_system() {
        assert_eq!(solve(&[], &[]), Some(vec![]));
        let a = vec![vec![], vec![]];
        assert_eq!(solve(&a, &[coeff(0), coeff(1)]), None);
    }

    proptest! {
        #[test]
        fn planted_solutions_are_recovered(
            entries in proptest::collection::vec(-6i64..=6, 20),
            sol in proptest::collection::vec(-5i64..=5, 4),
        ) {
            let a: Vec<Vec<Coeff>> = entries.chunks(4).map(|r| r.iter().map(|&v| coeff(v)).collect()).collect();
            let b: Vec<Coeff> = a.iter().map(|r| r.iter().zip(&sol).map(|(u, &v)| u * coeff(v)).sum()).collect();
            let x = solve(&a, &b);
            prop_assert!(x.is_some());
        }
    }
}
