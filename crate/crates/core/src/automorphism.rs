//! Polynomial maps with tracked inverses, tame witnesses and the bounded
//! elementary-reduction search.
//!
//! A [`PolyMap`] built from elementary automorphisms remembers its elementary
//! factorization. Composition then applies the left factor one elementary at
//! a time, which gives exactly the same polynomials as direct substitution
//! while keeping intermediate expressions small.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bracket::bracket;
use crate::classify::exceptional_form;
use crate::degree::{exclude_all, BracketBounds, Exclusion};
use crate::error::{Error, Result};
use crate::linsolve;
use crate::poly::{Coeff, Degree, Monomial, Polynomial};
use crate::semigroup::{member, Mode, Representation};

/// `x_i ↦ α·x_i + f` with `f` free of `x_i`; every other coordinate fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elementary {
    /// Zero-based variable index.
    index: usize,
    alpha: Coeff,
    shift: Polynomial,
}

impl Elementary {
    pub fn new(index: usize, alpha: Coeff, shift: Polynomial) -> Result<Elementary> {
        shift.check_index(index)?;
        if alpha.is_zero() {
            return Err(Error::ZeroScalar);
        }
        if shift.uses_var(index) {
            return Err(Error::ShiftInvolvesVariable(index + 1));
        }
        Ok(Elementary {
            index,
            alpha,
            shift,
        })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn alpha(&self) -> &Coeff {
        &self.alpha
    }

    pub fn shift(&self) -> &Polynomial {
        &self.shift
    }

    pub fn nvars(&self) -> usize {
        self.shift.nvars()
    }

    /// `x_i ↦ α⁻¹·(x_i − f)`.
    pub fn inverse(&self) -> Elementary {
        let inv = self.alpha.recip();
        Elementary {
            index: self.index,
            shift: self.shift.scale(&-&inv),
            alpha: inv,
        }
    }

    /// `E(H)`: replaces `H_i` by `α·H_i + f(H)`.
    pub fn apply(&self, tuple: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let shifted = self.shift.substitute(tuple)?;
        let mut out = tuple.to_vec();
        out[self.index] = &tuple[self.index].scale(&self.alpha) + &shifted;
        Ok(out)
    }
}

fn identity_tuple(n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::var(n, i)).collect()
}

/// An n-tuple of polynomials in n variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    components: Vec<Polynomial>,
    inverse: Option<Vec<Polynomial>>,
    /// `[E1, ..., Ek]` with `self = Ek ∘ ... ∘ E1`.
    chain: Option<Vec<Elementary>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multidegree(pub Vec<Degree>);

impl Multidegree {
    pub fn as_triple(&self) -> Option<[u64; 3]> {
        match self.0.as_slice() {
            [a, b, c] => Some([a.finite()?, b.finite()?, c.finite()?]),
            _ => None,
        }
    }
}

fn check_tuple(components: &[Polynomial]) -> Result<()> {
    let n = components.len();
    if n == 0 {
        return Err(Error::Precondition(
            "a map needs at least one component".into(),
        ));
    }
    for c in components {
        if c.nvars() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: c.nvars(),
            });
        }
    }
    Ok(())
}

fn apply_chain(chain: &[Elementary], tuple: &[Polynomial]) -> Result<Vec<Polynomial>> {
    chain
        .iter()
        .try_fold(tuple.to_vec(), |acc, e| e.apply(&acc))
}

/// `F(G)` from F's components (or factorization) and G's components.
fn compose_components(
    f: &[Polynomial],
    f_chain: Option<&[Elementary]>,
    g: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    match f_chain {
        Some(chain) => apply_chain(chain, g),
        None => f.iter().map(|c| c.substitute(g)).collect(),
    }
}

impl PolyMap {
    pub fn new(components: Vec<Polynomial>) -> Result<PolyMap> {
        check_tuple(&components)?;
        Ok(PolyMap {
            components,
            inverse: None,
            chain: None,
        })
    }

    /// A map with a claimed inverse; see [`PolyMap::verify_inverse`].
    pub fn with_inverse(components: Vec<Polynomial>, inverse: Vec<Polynomial>) -> Result<PolyMap> {
        check_tuple(&components)?;
        check_tuple(&inverse)?;
        if inverse.len() != components.len() {
            return Err(Error::DimensionMismatch {
                left: components.len(),
                right: inverse.len(),
            });
        }
        Ok(PolyMap {
            components,
            inverse: Some(inverse),
            chain: None,
        })
    }

    pub fn identity(n: usize) -> PolyMap {
        let id = identity_tuple(n);
        PolyMap {
            components: id.clone(),
            inverse: Some(id),
            chain: Some(Vec::new()),
        }
    }

    pub fn from_elementary(e: Elementary) -> PolyMap {
        let id = identity_tuple(e.nvars());
        let components = e.apply(&id).expect("arity matches");
        let inverse = e.inverse().apply(&id).expect("arity matches");
        PolyMap {
            components,
            inverse: Some(inverse),
            chain: Some(vec![e]),
        }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn inverse(&self) -> Option<&[Polynomial]> {
        self.inverse.as_deref()
    }

    pub fn chain(&self) -> Option<&[Elementary]> {
        self.chain.as_deref()
    }

    /// The tracked inverse as a map of its own.
    pub fn inverse_map(&self) -> Option<PolyMap> {
        let inverse = self.inverse.clone()?;
        Some(PolyMap {
            components: inverse,
            inverse: Some(self.components.clone()),
            chain: self
                .chain
                .as_ref()
                .map(|c| c.iter().rev().map(Elementary::inverse).collect()),
        })
    }

    /// Drops the elementary factorization, forcing direct substitution.
    pub fn without_chain(mut self) -> PolyMap {
        self.chain = None;
        self
    }

    pub fn without_inverse(mut self) -> PolyMap {
        self.inverse = None;
        self
    }

    pub fn multidegree(&self) -> Multidegree {
        Multidegree(
            self.components
                .iter()
                .map(Polynomial::total_degree)
                .collect(),
        )
    }

    pub fn verify_identity(&self) -> bool {
        let n = self.n();
        self.components
            .iter()
            .enumerate()
            .all(|(i, c)| c.nvars() == n && *c == Polynomial::var(n, i))
    }

    /// Checks `F ∘ F⁻¹ = F⁻¹ ∘ F = id` by substitution; `None` without inverse.
    pub fn verify_inverse(&self) -> Option<bool> {
        let inverse = self.inverse.as_ref()?;
        let forward = compose_components(&self.components, None, inverse).ok()?;
        let back = compose_components(inverse, None, &self.components).ok()?;
        let id = identity_tuple(self.n());
        Some(forward == id && back == id)
    }

    pub fn to_json(&self) -> PolyMapJson {
        PolyMapJson {
            n: self.n(),
            components: self.components.iter().map(ToString::to_string).collect(),
            inverse: self
                .inverse
                .as_ref()
                .map(|inv| inv.iter().map(ToString::to_string).collect()),
        }
    }

    pub fn from_json(doc: &PolyMapJson) -> Result<PolyMap> {
        let parse_all = |v: &[String]| -> Result<Vec<Polynomial>> {
            v.iter().map(|s| Polynomial::parse(s, doc.n)).collect()
        };
        let components = parse_all(&doc.components)?;
        if components.len() != doc.n {
            return Err(Error::DimensionMismatch {
                left: doc.n,
                right: components.len(),
            });
        }
        match &doc.inverse {
            Some(inv) => PolyMap::with_inverse(components, parse_all(inv)?),
            None => PolyMap::new(components),
        }
    }
}

/// Wire form: `{"n":3,"components":[..],"inverse":[..]|null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMapJson {
    pub n: usize,
    pub components: Vec<String>,
    pub inverse: Option<Vec<String>>,
}

/// The elementary map `x_i ↦ α·x_i + f` in dimension `f.nvars()`.
pub fn elementary(index: usize, alpha: Coeff, shift: Polynomial) -> Result<PolyMap> {
    Ok(PolyMap::from_elementary(Elementary::new(
        index, alpha, shift,
    )?))
}

/// `(F ∘ G)(x) = F(G(x))`, tracking `G⁻¹ ∘ F⁻¹` when both inverses are known.
pub fn compose(f: &PolyMap, g: &PolyMap) -> Result<PolyMap> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            left: f.n(),
            right: g.n(),
        });
    }
    let components = compose_components(&f.components, f.chain(), &g.components)?;
    let inverse = match (f.inverse_map(), g.inverse_map()) {
        (Some(fi), Some(gi)) => Some(compose_components(
            &gi.components,
            gi.chain(),
            &fi.components,
        )?),
        _ => None,
    };
    let chain = match (&f.chain, &g.chain) {
        (Some(cf), Some(cg)) => Some(cg.iter().chain(cf).cloned().collect()),
        _ => None,
    };
    Ok(PolyMap {
        components,
        inverse,
        chain,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub representation: Representation,
    #[serde(skip)]
    pub map: PolyMap,
}

/// `(x + z^d1, y + z^d2, z + (x + z^d1)^i (y + z^d2)^j)` for
/// `d3 = i·d1 + j·d2`, as `E3 ∘ E2 ∘ E1`.
///
/// Returns `None` when `d3` has no such representation.
pub fn build_witness(d1: u64, d2: u64, d3: u64) -> Result<Option<Witness>> {
    let t = [d1, d2, d3];
    if t.contains(&0) {
        return Err(Error::NonPositiveDegree(t.to_vec()));
    }
    if !t.is_sorted() {
        return Err(Error::Unsorted(t.to_vec()));
    }
    let Some(rep) = member(d3, d1, d2, Mode::Nonneg) else {
        return Ok(None);
    };
    let z_pow = |e: u64| Polynomial::monomial(Monomial::new(vec![0, 0, e as u32]), Coeff::one());
    let e1 = elementary(0, Coeff::one(), z_pow(d1))?;
    let e2 = elementary(1, Coeff::one(), z_pow(d2))?;
    let e3 = elementary(
        2,
        Coeff::one(),
        Polynomial::monomial(
            Monomial::new(vec![rep.i as u32, rep.j as u32, 0]),
            Coeff::one(),
        ),
    )?;
    let map = compose(&e3, &compose(&e2, &e1)?)?;
    let got = map.multidegree();
    if got.as_triple() != Some(t) {
        return Err(Error::Precondition(format!(
            "witness multidegree {got:?} differs from requested {t:?}"
        )));
    }
    Ok(Some(Witness {
        representation: rep,
        map,
    }))
}

/// Complementary 1-based positions `(u, v)`, `u < v`.
pub fn complement(position: usize) -> (usize, usize) {
    match position {
        1 => (2, 3),
        2 => (1, 3),
        _ => (1, 2),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub position: usize,
    pub pair: (usize, usize),
    /// `g(u, v)` in two variables.
    pub g: Polynomial,
    pub residual: Polynomial,
    pub target_degree: u64,
    pub residual_degree: Degree,
}

/// `ceil(T / m) + 2` with `m` the smaller generator degree.
pub fn default_support_degree(f: &PolyMap, position: usize) -> Result<u32> {
    check_position(f, position)?;
    let (u, v) = complement(position);
    let deg = |k: usize| f.components[k - 1].total_degree().finite().unwrap_or(0);
    let t = deg(position);
    let m = deg(u).min(deg(v));
    Ok(if m == 0 {
        t as u32 + 2
    } else {
        t.div_ceil(m) as u32 + 2
    })
}

fn check_position(f: &PolyMap, position: usize) -> Result<()> {
    if f.n() != 3 {
        return Err(Error::Precondition(format!(
            "reduction search needs a map of 3 components, got {}",
            f.n()
        )));
    }
    if !(1..=3).contains(&position) {
        return Err(Error::Position { position, n: 3 });
    }
    Ok(())
}

/// Looks for `g` with `deg(F_t − g(F_u, F_v)) < deg F_t`, `deg g <= budget`.
///
/// Sets up one linear equation per monomial of degree `>= deg F_t` over the
/// coefficients of `g` and solves it exactly. `None` only means nothing was
/// found within the budget.
pub fn reduction_search(
    f: &PolyMap,
    position: usize,
    max_support_degree: Option<u32>,
) -> Result<Option<Reduction>> {
    check_position(f, position)?;
    let budget = match max_support_degree {
        Some(k) => k,
        None => default_support_degree(f, position)?,
    };
    let (u, v) = complement(position);
    let ft = &f.components[position - 1];
    let (fu, fv) = (&f.components[u - 1], &f.components[v - 1]);
    let Some(t) = ft.total_degree().finite() else {
        return Ok(None);
    };

    let fu_pows: Vec<Polynomial> = powers(fu, budget);
    let fv_pows: Vec<Polynomial> = powers(fv, budget);
    let mut support = Vec::new();
    let mut columns = Vec::new();
    for i in 0..=budget {
        for j in 0..=budget - i {
            support.push((i, j));
            columns.push(&fu_pows[i as usize] * &fv_pows[j as usize]);
        }
    }

    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in columns.iter().chain(std::iter::once(ft)) {
        for (m, _) in p.terms() {
            if m.degree() >= t {
                let next = rows.len();
                rows.entry(m.clone()).or_insert(next);
            }
        }
    }
    let mut a = vec![vec![Coeff::zero(); columns.len()]; rows.len()];
    let mut b = vec![Coeff::zero(); rows.len()];
    for (col, p) in columns.iter().enumerate() {
        for (m, c) in p.terms() {
            if let Some(&r) = rows.get(m) {
                a[r][col] = c.clone();
            }
        }
    }
    for (m, c) in ft.terms() {
        if let Some(&r) = rows.get(m) {
            b[r] = c.clone();
        }
    }
    let Some(sol) = linsolve::solve(&a, &b) else {
        return Ok(None);
    };

    let g = Polynomial::from_terms(
        2,
        support
            .iter()
            .zip(sol)
            .map(|(&(i, j), c)| (Monomial::new(vec![i, j]), c)),
    );
    let residual = ft - &g.substitute(&[fu.clone(), fv.clone()])?;
    let residual_degree = residual.total_degree();
    if residual_degree >= Degree::Finite(t) {
        return Err(Error::Precondition(format!(
            "solver returned g = {g} that does not lower degree {t}"
        )));
    }
    Ok(Some(Reduction {
        position,
        pair: (u, v),
        g,
        residual,
        target_degree: t,
        residual_degree,
    }))
}

fn powers(p: &Polynomial, k: u32) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::one(p.nvars())];
    for e in 1..=k as usize {
        let next = &out[e - 1] * p;
        out.push(next);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourIReport {
    pub deg_bracket_13: Degree,
    pub deg_f1: Degree,
    /// `deg [F1, F3] > deg F1`
    pub holds: bool,
    /// Exclusion under the strict bound, for exceptional-family multidegrees.
    pub exclusion: Option<Exclusion>,
}

/// Checks `deg [F1, F3] > deg F1` and, for multidegrees `(4i, 4i+ij, 4i+2ij)`
/// with `j` odd, reruns the exclusion with that strict bound on `(F1, F3)`.
pub fn thm_4i_hypothesis(f: &PolyMap) -> Result<FourIReport> {
    if f.n() != 3 {
        return Err(Error::Precondition(format!(
            "expected a map of 3 components, got {}",
            f.n()
        )));
    }
    let deg_bracket_13 = bracket(&f.components[0], &f.components[2])?.degree;
    let deg_f1 = f.components[0].total_degree();
    let holds = deg_bracket_13 > deg_f1;
    let exclusion = match (holds, f.multidegree().as_triple()) {
        (true, Some([d1, d2, d3])) if d1 < d2 && d2 - d1 == d3 - d2 => {
            match exceptional_form(d1, d2 - d1) {
                Some(_) => Some(exclude_all(
                    [d1, d2, d3],
                    &BracketBounds::universal().with(1, 3, d1, true),
                )?),
                None => None,
            }
        }
        _ => None,
    };
    Ok(FourIReport {
        deg_bracket_13,
        deg_f1,
        holds,
        exclusion,
    })
}
