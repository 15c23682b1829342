//! Partial derivatives, 2×2 Jacobian minors and the Poisson bracket degree.
//!
//! The formal symbols `[x_i, x_j]` are never built. A [`BracketValue`] keeps
//! the minor polynomials and reports `deg [f, g] = 2 + max deg(minor)`, which
//! is `-inf` exactly when every minor vanishes.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{coeff, var_name, Degree, Monomial, Polynomial};

/// Formal partial derivative with respect to `x_{index+1}`.
pub fn partial(p: &Polynomial, index: usize) -> Result<Polynomial> {
    p.check_index(index)?;
    let n = p.nvars();
    Ok(Polynomial::from_terms(
        n,
        p.terms().filter_map(|(m, c)| {
            let e = m.exponents()[index];
            if e == 0 {
                return None;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            Some((Monomial::new(exps), c * coeff(e as i64)))
        }),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketValue {
    /// Minor for every pair `(i, j)` with `i < j`, zero-based.
    #[serde(serialize_with = "minors_by_name")]
    pub minors: BTreeMap<(usize, usize), Polynomial>,
    pub degree: Degree,
}

fn minors_by_name<S: serde::Serializer>(
    minors: &BTreeMap<(usize, usize), Polynomial>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(minors.len()))?;
    for (&(i, j), m) in minors {
        let n = m.nvars();
        map.serialize_entry(&format!("[{},{}]", var_name(n, i), var_name(n, j)), m)?;
    }
    map.end()
}

impl BracketValue {
    pub fn is_zero(&self) -> bool {
        self.degree.is_neg_infinity()
    }

    pub fn nonzero_minors(&self) -> impl Iterator<Item = (&(usize, usize), &Polynomial)> {
        self.minors.iter().filter(|(_, m)| !m.is_zero())
    }
}

/// Poisson bracket `[f, g]` as its Jacobian minors plus degree.
pub fn bracket(f: &Polynomial, g: &Polynomial) -> Result<BracketValue> {
    let n = f.nvars();
    if g.nvars() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: g.nvars(),
        });
    }
    if n < 2 {
        return Err(Error::TooFewVariables(n));
    }
    let df: Vec<Polynomial> = (0..n).map(|i| partial(f, i)).collect::<Result<_>>()?;
    let dg: Vec<Polynomial> = (0..n).map(|i| partial(g, i)).collect::<Result<_>>()?;
    let mut minors = BTreeMap::new();
    let mut degree = Degree::NegInfinity;
    for i in 0..n {
        for j in i + 1..n {
            let minor = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            degree = degree.max(minor.total_degree().plus(2));
            minors.insert((i, j), minor);
        }
    }
    Ok(BracketValue { minors, degree })
}

/// `true` iff `f` and `g` are algebraically independent, i.e. `[f, g] != 0`.
pub fn alg_independent(f: &Polynomial, g: &Polynomial) -> Result<bool> {
    Ok(!bracket(f, g)?.is_zero())
}

/// Rank of the 2×n Jacobian of `(f, g)` at a rational point, as a
/// probabilistic independent check of [`alg_independent`].
pub fn jacobian_rank_at(f: &Polynomial, g: &Polynomial, point: &[crate::Coeff]) -> Result<usize> {
    let n = f.nvars();
    let eval = |p: &Polynomial| -> Result<crate::Coeff> {
        let args: Vec<Polynomial> = point
            .iter()
            .map(|c| Polynomial::constant(1, c.clone()))
            .collect();
        let v = p.substitute(&args)?;
        Ok(v.coeff(&Monomial::one(1)))
    };
    let mut rows = [Vec::with_capacity(n), Vec::with_capacity(n)];
    for i in 0..n {
        rows[0].push(eval(&partial(f, i)?)?);
        rows[1].push(eval(&partial(g, i)?)?);
    }
    let any_nonzero = |r: &Vec<crate::Coeff>| r.iter().any(|c| !c.is_zero());
    for i in 0..n {
        for j in i + 1..n {
            let m = &rows[0][i] * &rows[1][j] - &rows[0][j] * &rows[1][i];
            if !m.is_zero() {
                return Ok(2);
            }
        }
    }
    Ok(usize::from(any_nonzero(&rows[0]) || any_nonzero(&rows[1])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(s: &str) -> Polynomial {
        Polynomial::parse(s, 3).unwrap()
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(partial(&p3("x^2*y"), 0).unwrap(), p3("2*x*y"));
        assert!(partial(&p3("7"), 0).unwrap().is_zero());
        assert_eq!(partial(&p3("x^3 + x*z^2"), 2).unwrap(), p3("2*x*z"));
        assert!(partial(&p3("x"), 3).is_err());
    }

    #[test]
    fn coordinate_bracket_has_degree_two() {
        let b = bracket(&p3("x"), &p3("y")).unwrap();
        assert_eq!(b.degree, Degree::Finite(2));
        let nz: Vec<_> = b.nonzero_minors().collect();
        assert_eq!(nz.len(), 1);
        assert_eq!(*nz[0].0, (0, 1));
        assert_eq!(nz[0].1, &p3("1"));
    }

    #[test]
    fn dependent_pair_has_zero_bracket() {
        let q = p3("x*y + z^3 - 2");
        let b = bracket(&q, &q.pow(2)).unwrap();
        assert_eq!(b.degree, Degree::NegInfinity);
        assert!(b.minors.values().all(Polynomial::is_zero));
    }

    #[test]
    fn two_variable_bracket() {
        let f = Polynomial::parse("x + y", 2).unwrap();
        let g = Polynomial::parse("x*y", 2).unwrap();
        let b = bracket(&f, &g).unwrap();
        // 1*x - 1*y
        assert_eq!(b.minors[&(0, 1)], Polynomial::parse("x - y", 2).unwrap());
        assert_eq!(b.degree, Degree::Finite(3));
    }

    #[test]
    fn independence_examples() {
        assert!(alg_independent(&p3("x"), &p3("y")).unwrap());
        let q = p3("x - y^2");
        assert!(!alg_independent(&q, &(&q.pow(3) + &q)).unwrap());
        let b = bracket(&p3("x + z^2"), &p3("y + z^3")).unwrap();
        assert_eq!(b.minors[&(0, 1)], p3("1"));
        assert!(!b.is_zero());
    }

    #[test]
    fn one_variable_is_rejected() {
        let f = Polynomial::parse("x", 1).unwrap();
        assert_eq!(bracket(&f, &f), Err(Error::TooFewVariables(1)));
    }

    #[test]
    fn jacobian_rank_matches_coordinates() {
        let pt = [coeff(2), coeff(-1), coeff(3)];
        assert_eq!(jacobian_rank_at(&p3("x"), &p3("y"), &pt).unwrap(), 2);
        let q = p3("x*z");
        assert_eq!(jacobian_rank_at(&q, &q.pow(2), &pt).unwrap(), 1);
    }
}
