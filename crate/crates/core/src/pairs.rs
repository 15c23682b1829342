//! *-reduced pairs and the Shestakov–Umirbaev lower bound on `deg G(f, g)`.
//!
//! Condition (3) of a *-reduced pair reads `f̄ ∉ ⟨ḡ⟩, ḡ ∉ ⟨f̄⟩` where `⟨h⟩` is
//! the subalgebra `k[h]`. For homogeneous tops this is decided exactly:
//! `ḡ ∈ k[f̄]` iff `deg f̄ | deg ḡ` and `ḡ / f̄^k` is a constant.

use num_integer::Integer;
use serde::Serialize;

use crate::bracket::bracket;
use crate::error::{Error, Result};
use crate::poly::{Degree, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReducedReport {
    pub independent: bool,
    pub tops_dependent: bool,
    /// `f̄ ∉ k[ḡ]`
    pub f_top_not_in_g_algebra: bool,
    /// `ḡ ∉ k[f̄]`
    pub g_top_not_in_f_algebra: bool,
    pub is_star_reduced: bool,
    /// Independent with both non-membership flags: enough for the bound.
    pub is_remark_pair: bool,
}

/// `h ∈ k[base]` for nonzero homogeneous `h`, `base`.
pub fn in_generated_algebra(h: &Polynomial, base: &Polynomial) -> Result<bool> {
    let (Some(dh), Some(db)) = (h.total_degree().finite(), base.total_degree().finite()) else {
        return Err(Error::ZeroPolynomial);
    };
    if dh == 0 {
        return Ok(true);
    }
    if db == 0 || dh % db != 0 {
        return Ok(false);
    }
    let power = base.pow((dh / db) as u32);
    Ok(h.try_divide(&power)?.is_some_and(|q| q.is_constant()))
}

pub fn star_reduced(f: &Polynomial, g: &Polynomial) -> Result<StarReducedReport> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let independent = !bracket(f, g)?.is_zero();
    let (ft, gt) = (f.top()?, g.top()?);
    let tops_dependent = bracket(&ft, &gt)?.is_zero();
    let f_out = !in_generated_algebra(&ft, &gt)?;
    let g_out = !in_generated_algebra(&gt, &ft)?;
    Ok(StarReducedReport {
        independent,
        tops_dependent,
        f_top_not_in_g_algebra: f_out,
        g_top_not_in_f_algebra: g_out,
        is_star_reduced: independent && tops_dependent && f_out && g_out,
        is_remark_pair: independent && f_out && g_out,
    })
}

/// Degree data for the lower bound. `p` is always taken from `deg_f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuQuery {
    pub deg_f: u64,
    pub deg_g: u64,
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub bracket_deg: u64,
}

impl SuQuery {
    /// Splits `deg_y = p·q + r` with `p = deg_f / gcd(deg_f, deg_g)`.
    pub fn new(deg_f: u64, deg_g: u64, deg_y: u64, bracket_deg: u64) -> Result<SuQuery> {
        if deg_f == 0 || deg_g == 0 {
            return Err(Error::NonPositiveDegree(vec![deg_f, deg_g]));
        }
        if bracket_deg < 2 {
            return Err(Error::Precondition(format!(
                "bracket degree {bracket_deg} is below 2"
            )));
        }
        let p = deg_f / deg_f.gcd(&deg_g);
        let (q, r) = deg_y.div_rem(&p);
        Ok(SuQuery {
            deg_f,
            deg_g,
            p,
            q,
            r,
            bracket_deg,
        })
    }
}

/// `q·(p·deg g − deg f − deg g + deg[f,g]) + r·deg g`.
pub fn su_lower_bound(qy: &SuQuery) -> i64 {
    let (p, q, r) = (qy.p as i64, qy.q as i64, qy.r as i64);
    let (df, dg, b) = (qy.deg_f as i64, qy.deg_g as i64, qy.bracket_deg as i64);
    q * (p * dg - df - dg + b) + r * dg
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuCheck {
    pub query: SuQuery,
    /// `deg G(f, g)`
    pub lhs: Degree,
    pub rhs: i64,
    pub holds: bool,
}

/// Evaluates both sides of the bound for a concrete `G(x, y)`.
pub fn check_su_inequality(f: &Polynomial, g: &Polynomial, big_g: &Polynomial) -> Result<SuCheck> {
    if big_g.nvars() != 2 {
        return Err(Error::Precondition(format!(
            "G must be a polynomial in 2 variables, got {}",
            big_g.nvars()
        )));
    }
    if big_g.is_zero() {
        return Err(Error::Precondition("G must be nonzero".into()));
    }
    let report = star_reduced(f, g)?;
    if !report.is_remark_pair {
        return Err(Error::Precondition(format!(
            "(f, g) is not independent with tops outside each other's algebras: {report:?}"
        )));
    }
    let b = bracket(f, g)?.degree.finite().expect("independent pair");
    let deg_f = f.total_degree().finite().expect("nonzero");
    let deg_g = g.total_degree().finite().expect("nonzero");
    let deg_y = big_g.degree_in(1)?.finite().expect("nonzero");
    let query = SuQuery::new(deg_f, deg_g, deg_y, b)?;
    let rhs = su_lower_bound(&query);
    let lhs = big_g.substitute(&[f.clone(), g.clone()])?.total_degree();
    let holds = match lhs {
        Degree::Finite(d) => d as i64 >= rhs,
        Degree::NegInfinity => false,
    };
    Ok(SuCheck {
        query,
        lhs,
        rhs,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YuReport {
    pub independent: bool,
    pub tops_dependent: bool,
    /// neither `deg f | deg g` nor `deg g | deg f`
    pub degrees_non_dividing: bool,
    /// Whether f, g generate their integral closures is undecided here.
    pub integral_closure: &'static str,
    /// All decidable hypotheses hold.
    pub applicable: bool,
    pub deg_bracket: Degree,
    pub min_deg: u64,
    /// `deg [f, g] > min(deg f, deg g)`; observational only.
    pub exceeds: bool,
}

pub fn yu_probe(f: &Polynomial, g: &Polynomial) -> Result<YuReport> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let b = bracket(f, g)?;
    let tops_dependent = bracket(&f.top()?, &g.top()?)?.is_zero();
    let df = f.total_degree().finite().expect("nonzero");
    let dg = g.total_degree().finite().expect("nonzero");
    let divides = |a: u64, b: u64| if a == 0 { b == 0 } else { b.is_multiple_of(a) };
    let degrees_non_dividing = !divides(df, dg) && !divides(dg, df);
    let independent = !b.is_zero();
    let min_deg = df.min(dg);
    Ok(YuReport {
        independent,
        tops_dependent,
        degrees_non_dividing,
        integral_closure: "not checked",
        applicable: independent && tops_dependent && degrees_non_dividing,
        deg_bracket: b.degree,
        min_deg,
        exceeds: b.degree > Degree::Finite(min_deg),
    })
}
