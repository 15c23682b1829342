//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with `x1 > x2 > ... > xn`. Zero coefficients are never
//! stored, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// Exponent vector, one entry per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree, with the zero polynomial at `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    pub fn is_neg_infinity(self) -> bool {
        self == Degree::NegInfinity
    }

    pub fn plus(self, k: u64) -> Degree {
        match self {
            Degree::Finite(d) => Degree::Finite(d + k),
            Degree::NegInfinity => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::NegInfinity => f.write_str("-inf"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(d) => s.serialize_u64(*d),
            Degree::NegInfinity => s.serialize_str("-inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "polynomials need at least one variable");
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Coeff::one())
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Polynomial::constant(nvars, coeff(c))
    }

    /// The coordinate `x_{index+1}`. Panics when `index >= nvars`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        Polynomial::monomial(Monomial::var(nvars, index), Coeff::one())
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums the given terms, so repeated monomials are merged.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length must equal dimension");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, Coeff>) -> Self {
        Polynomial {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lex descending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> Degree {
        // graded order: the largest key has the largest degree
        match self.terms.last_key_value() {
            Some((m, _)) => Degree::Finite(m.degree()),
            None => Degree::NegInfinity,
        }
    }

    /// Degree in the single variable `x_{index+1}`.
    pub fn degree_in(&self, index: usize) -> Result<Degree> {
        self.check_index(index)?;
        Ok(self
            .terms
            .keys()
            .map(|m| Degree::Finite(m.0[index] as u64))
            .max()
            .unwrap_or(Degree::NegInfinity))
    }

    pub fn uses_var(&self, index: usize) -> bool {
        self.terms
            .keys()
            .any(|m| m.0.get(index).is_some_and(|&e| e > 0))
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.nvars {
            return Err(Error::VariableIndex {
                index,
                nvars: self.nvars,
            });
        }
        Ok(())
    }

    pub fn homogeneous_component(&self, degree: u64) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Highest homogeneous component.
    pub fn top(&self) -> Result<Polynomial> {
        match self.total_degree() {
            Degree::Finite(d) => Ok(self.homogeneous_component(d)),
            Degree::NegInfinity => Err(Error::ZeroPolynomial),
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.nvars));
        }
        let mut acc: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        Ok(Polynomial::from_map(self.nvars, acc))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Evaluates `self(args[0], ..., args[k-1])` exactly.
    ///
    /// Uses a recursive Horner scheme, one variable at a time, so intermediate
    /// results stay close to the size of the final composition.
    pub fn substitute(&self, args: &[Polynomial]) -> Result<Polynomial> {
        if args.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: args.len(),
            });
        }
        let target = args[0].nvars;
        for a in args {
            if a.nvars != target {
                return Err(Error::DimensionMismatch {
                    left: target,
                    right: a.nvars,
                });
            }
        }
        let terms: Vec<(&Monomial, &Coeff)> = self.terms.iter().collect();
        let mut cache = HashMap::new();
        Ok(horner(&terms, 0, args, target, &mut cache))
    }

    /// Exact quotient `self / h`, or `None` when `h` does not divide `self`.
    pub fn try_divide(&self, h: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_same(h)?;
        let (hm, hc) = h.leading_term().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            // lm(h) must divide lm(rem) for every multiple of h
            let Some(qm) = rm.div(hm) else {
                return Ok(None);
            };
            let qc = rc / hc;
            let t = Polynomial::monomial(qm, qc);
            rem = &rem - &(&t * h);
            quot = &quot + &t;
        }
        if &(&quot * h) != self {
            return Ok(None);
        }
        Ok(Some(quot))
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Polynomial> {
        crate::parse::parse(text, nvars)
    }
}

fn horner(
    terms: &[(&Monomial, &Coeff)],
    var: usize,
    args: &[Polynomial],
    target: usize,
    cache: &mut HashMap<(usize, u32), Polynomial>,
) -> Polynomial {
    if terms.is_empty() {
        return Polynomial::zero(target);
    }
    if var == args.len() {
        let c: Coeff = terms.iter().map(|(_, c)| (*c).clone()).sum();
        return Polynomial::constant(target, c);
    }
    let mut groups: BTreeMap<u32, Vec<(&Monomial, &Coeff)>> = BTreeMap::new();
    for &(m, c) in terms {
        groups.entry(m.0[var]).or_default().push((m, c));
    }
    let mut acc: Option<Polynomial> = None;
    let mut prev = 0u32;
    for (&e, group) in groups.iter().rev() {
        let inner = horner(group, var + 1, args, target, cache);
        acc = Some(match acc {
            None => inner,
            Some(a) => &(&a * power(args, var, prev - e, cache)) + &inner,
        });
        prev = e;
    }
    let acc = acc.expect("nonempty groups");
    if prev == 0 {
        acc
    } else {
        &acc * power(args, var, prev, cache)
    }
}

fn power<'a>(
    args: &[Polynomial],
    var: usize,
    e: u32,
    cache: &'a mut HashMap<(usize, u32), Polynomial>,
) -> &'a Polynomial {
    cache.entry((var, e)).or_insert_with(|| args[var].pow(e))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial dimensions differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial dimensions differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimensions differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

pub(crate) fn var_name(nvars: usize, index: usize) -> String {
    if nvars <= 3 {
        ["x", "y", "z"][index].to_string()
    } else {
        format!("x{}", index + 1)
    }
}

fn fmt_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical form: graded-lex descending terms joined by `" + "`, negative
/// coefficients written inline (`x^2 + -y^2`).
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let name = var_name(self.nvars, i);
                        if e == 1 {
                            name
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect();
            if factors.is_empty() {
                f.write_str(&fmt_coeff(c))?;
                continue;
            }
            if c.is_one() {
                // bare monomial
            } else if (-c).is_one() {
                f.write_str("-")?;
            } else {
                write!(f, "{}*", fmt_coeff(c))?;
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, 3).unwrap()
    }

    #[test]
    fn zero_has_negative_infinite_degree() {
        let z = p("0");
        assert!(z.is_zero());
        assert_eq!(z.total_degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn parse_reads_mixed_terms() {
        let q = p("x^2*y + 3/2*z^7");
        assert_eq!(q.len(), 2);
        assert_eq!(q.total_degree(), Degree::Finite(7));
        assert_eq!(q.to_string(), "3/2*z^7 + x^2*y");
    }

    #[test]
    fn parse_cancels() {
        assert_eq!(p("x + y - x"), p("y"));
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2 - y^2"));
        let q = p("3x^2 - 7/3*y*z + 1");
        assert!((&q + &(-&q)).is_zero());
    }

    #[test]
    fn cube_expansion_matches_binomial() {
        // (x + z^2)^3 = x^3 + 3x^2 z^2 + 3x z^4 + z^6
        let cube = p("x + z^2").pow(3);
        assert_eq!(cube, p("x^3 + 3*x^2*z^2 + 3*x*z^4 + z^6"));
        assert_eq!(cube.top().unwrap(), p("z^6"));
    }

    #[test]
    fn degrees() {
        assert_eq!(p("x^2*y + z").total_degree(), Degree::Finite(3));
        assert_eq!(p("5").total_degree(), Degree::Finite(0));
        assert_eq!(p("x^2*y + z").degree_in(2).unwrap(), Degree::Finite(1));
        assert!(p("x").degree_in(3).is_err());
    }

    #[test]
    fn top_components() {
        assert_eq!(p("x^2 + y").top().unwrap(), p("x^2"));
        let h = p("x^2 + 3*x*y - z^2");
        assert_eq!(h.top().unwrap(), h);
        assert_eq!(p("x + z^2").pow(2).top().unwrap(), p("z^4"));
        assert_eq!(p("0").top(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn substitution_examples() {
        let two = |s: &str| Polynomial::parse(s, 2).unwrap();
        let g = two("x*y");
        let r = g.substitute(&[p("x+1"), p("y")]).unwrap();
        assert_eq!(r, p("x*y + y"));

        let f = p("x + 2*y*z - 1");
        let sq = Polynomial::parse("x^2", 1).unwrap();
        assert_eq!(sq.substitute(std::slice::from_ref(&f)).unwrap(), f.pow(2));

        let g = two("x^2 + y");
        let r = g.substitute(&[p("z^2"), p("z^3")]).unwrap();
        assert_eq!(r, p("z^4 + z^3"));
    }

    #[test]
    fn substitution_of_identity_reindexes() {
        let g = p("x^3*y - 2*z + 5");
        let id = [p("x"), p("y"), p("z")];
        assert_eq!(g.substitute(&id).unwrap(), g);
    }

    #[test]
    fn substitution_arity_mismatch() {
        let g = p("x*y");
        assert_eq!(
            g.substitute(&[p("x")]),
            Err(Error::ArityMismatch {
                expected: 3,
                found: 1
            })
        );
    }

    #[test]
    fn dimension_mismatch() {
        let a = Polynomial::parse("x", 2).unwrap();
        assert!(matches!(
            a.checked_add(&p("x")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn division_examples() {
        assert_eq!(
            p("x^2 - y^2").try_divide(&p("x - y")).unwrap(),
            Some(p("x + y"))
        );
        assert_eq!(p("x^2 + 1").try_divide(&p("x")).unwrap(), None);
        let h = p("x + 2*y");
        let q = h.pow(3).try_divide(&h).unwrap().unwrap();
        assert_eq!(q, h.pow(2));
        assert_eq!(&q * &h, h.pow(3));
        assert_eq!(p("x").try_divide(&p("0")), Err(Error::DivisionByZero));
    }

    #[test]
    fn printer_uses_indexed_names_beyond_three() {
        let q = Polynomial::parse("x1 - 2*x4^3", 4).unwrap();
        assert_eq!(q.to_string(), "-2*x4^3 + x1");
    }

    #[test]
    fn negative_unit_coefficients_print_compactly() {
        assert_eq!(p("x^2 - y^2").to_string(), "x^2 + -y^2");
        assert_eq!(p("-1/2 - x").to_string(), "-x + -1/2");
    }
}
