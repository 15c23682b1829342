//! Degree bookkeeping that rules out elementary reductions.
//!
//! For a hypothetical automorphism with multidegree `(d1, d2, d3)`, an
//! elementary reduction of position `t` needs `deg g(F_u, F_v) = d_t`. The
//! lower bound on `deg g(F_u, F_v)` leaves finitely many `(q, r)` shapes for
//! `deg_y g = p·q + r`. When only `q = 0` survives, `g = Σ_{j ≤ r} g_j(F_u) F_v^j`
//! and its degree must be one of `i·m + j·M`; if `d_t` is not, the position is
//! excluded.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// One target position: `T = deg F_t`, generators `m = deg F_u <= M = deg F_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PositionQuery {
    pub target: u64,
    pub small: u64,
    pub large: u64,
    /// Lower bound on `deg [F_u, F_v]`.
    pub bracket_lb: u64,
    /// `deg [F_u, F_v] > bracket_lb` rather than `>=`.
    pub strict: bool,
}

impl PositionQuery {
    pub fn new(target: u64, small: u64, large: u64, bracket_lb: u64) -> Self {
        PositionQuery {
            target,
            small,
            large,
            bracket_lb,
            strict: false,
        }
    }

    pub fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.target == 0 || self.small == 0 || self.large == 0 {
            return Err(Error::NonPositiveDegree(vec![
                self.target,
                self.small,
                self.large,
            ]));
        }
        if self.small > self.large {
            return Err(Error::Unsorted(vec![self.small, self.large]));
        }
        if self.bracket_lb < 2 {
            return Err(Error::Precondition(format!(
                "bracket lower bound {} is below 2",
                self.bracket_lb
            )));
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.small / self.small.gcd(&self.large)
    }

    /// `p·M − m − M + B`, with `B + 1` in strict mode.
    pub fn q_coefficient(&self) -> i64 {
        let b = self.bracket_lb as i64 + i64::from(self.strict);
        self.p() as i64 * self.large as i64 - self.small as i64 - self.large as i64 + b
    }
}

/// All `(q, r)` with `0 <= r < p` allowed by the bound at degree `T`.
pub fn feasible_qr(pq: &PositionQuery) -> Result<Vec<(u64, u64)>> {
    pq.validate()?;
    let coef = pq.q_coefficient();
    if coef <= 0 {
        return Err(Error::NonPositiveCoefficient(coef));
    }
    let coef = coef as u64;
    let p = pq.p();
    let mut out = Vec::new();
    let mut q = 0;
    while q * coef <= pq.target {
        let base = q * coef;
        for r in 0..p {
            if base + r * pq.large > pq.target {
                break;
            }
            out.push((q, r));
        }
        q += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionReport {
    pub query: PositionQuery,
    pub p: u64,
    pub q_coefficient: i64,
    pub feasible: Vec<(u64, u64)>,
    /// Degrees `i·m + j·M <= T` with `j <= r_max`.
    pub representable: BTreeSet<u64>,
    pub excluded: bool,
    pub trace: Vec<String>,
}

pub fn exclude_position(pq: &PositionQuery) -> Result<ExclusionReport> {
    let feasible = feasible_qr(pq)?;
    let p = pq.p();
    let coef = pq.q_coefficient();
    let (m, big, t) = (pq.small, pq.large, pq.target);
    let mut trace = vec![format!(
        "p = {m}/gcd({m},{big}) = {p}; q-coefficient = {p}*{big} - {m} - {big} + {b}{s} = {coef}",
        b = pq.bracket_lb,
        s = if pq.strict { " + 1 (strict)" } else { "" },
    )];
    trace.push(format!("surviving (q, r): {feasible:?}"));

    let r_max = feasible
        .iter()
        .filter(|(q, _)| *q == 0)
        .map(|&(_, r)| r)
        .max()
        .unwrap_or(0);
    let mut representable = BTreeSet::new();
    for j in 0..=r_max {
        let mut v = j * big;
        while v <= t {
            if v > 0 {
                representable.insert(v);
            }
            v += m;
        }
    }
    let bound_insufficient = feasible.iter().any(|(q, _)| *q >= 1);
    let excluded = if bound_insufficient {
        trace.push(format!(
            "bound insufficient: q >= 1 survives since {coef} <= {t}"
        ));
        false
    } else if representable.contains(&t) {
        trace.push(format!(
            "{t} is in {{i*{m} + j*{big} : j <= {r_max}}}, no contradiction"
        ));
        false
    } else {
        trace.push(format!(
            "{t} is not in {{i*{m} + j*{big} : j <= {r_max}}} = {representable:?}: excluded"
        ));
        true
    };
    Ok(ExclusionReport {
        query: *pq,
        p,
        q_coefficient: coef,
        feasible,
        representable,
        excluded,
        trace,
    })
}

/// Per-pair bracket lower bounds, keyed by sorted 1-based positions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BracketBounds {
    bounds: BTreeMap<(usize, usize), (u64, bool)>,
}

impl BracketBounds {
    pub fn universal() -> Self {
        BracketBounds::default()
    }

    /// Sets `deg [F_u, F_v] >= value` (or `>` when `strict`).
    pub fn set(&mut self, u: usize, v: usize, value: u64, strict: bool) -> &mut Self {
        let key = (u.min(v), u.max(v));
        self.bounds.insert(key, (value, strict));
        self
    }

    pub fn with(mut self, u: usize, v: usize, value: u64, strict: bool) -> Self {
        self.set(u, v, value, strict);
        self
    }

    pub fn get(&self, u: usize, v: usize) -> (u64, bool) {
        self.bounds
            .get(&(u.min(v), u.max(v)))
            .copied()
            .unwrap_or((2, false))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositionOutcome {
    /// 1-based position `t` of the reduced component.
    pub position: usize,
    pub pair: (usize, usize),
    /// `None` when the bound coefficient is not positive.
    pub report: Option<ExclusionReport>,
    pub excluded: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub multidegree: [u64; 3],
    pub positions: [PositionOutcome; 3],
    pub no_elementary_reduction: bool,
}

impl Exclusion {
    /// 1-based positions that were not excluded.
    pub fn open_positions(&self) -> Vec<usize> {
        self.positions
            .iter()
            .filter(|o| !o.excluded)
            .map(|o| o.position)
            .collect()
    }
}

fn check_sorted(mdeg: [u64; 3]) -> Result<()> {
    if mdeg.contains(&0) {
        return Err(Error::NonPositiveDegree(mdeg.to_vec()));
    }
    if !mdeg.is_sorted() {
        return Err(Error::Unsorted(mdeg.to_vec()));
    }
    Ok(())
}

/// Runs [`exclude_position`] for each of the three positions.
pub fn exclude_all(mdeg: [u64; 3], bounds: &BracketBounds) -> Result<Exclusion> {
    check_sorted(mdeg)?;
    let outcome = |t: usize, u: usize, v: usize| -> Result<PositionOutcome> {
        let (b, strict) = bounds.get(u, v);
        let mut pq = PositionQuery::new(mdeg[t - 1], mdeg[u - 1], mdeg[v - 1], b);
        pq.strict = strict;
        match exclude_position(&pq) {
            Ok(report) => Ok(PositionOutcome {
                position: t,
                pair: (u, v),
                excluded: report.excluded,
                report: Some(report),
                note: None,
            }),
            Err(Error::NonPositiveCoefficient(c)) => Ok(PositionOutcome {
                position: t,
                pair: (u, v),
                report: None,
                excluded: false,
                note: Some(format!(
                    "bound coefficient {c} is not positive, argument inapplicable"
                )),
            }),
            Err(e) => Err(e),
        }
    };
    let positions = [outcome(1, 2, 3)?, outcome(2, 1, 3)?, outcome(3, 1, 2)?];
    let no_elementary_reduction = positions.iter().all(|o| o.excluded);
    Ok(Exclusion {
        multidegree: mdeg,
        positions,
        no_elementary_reduction,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TypeIIIWitness {
    pub n: u64,
    pub system: u8,
}

/// System 1: `n < d1 <= 3n/2`, `d2 = 2n`, `d3 = 3n`.
fn system_one(mdeg: [u64; 3], n: u64) -> bool {
    let [d1, d2, d3] = mdeg;
    n < d1 && 2 * d1 <= 3 * n && d2 == 2 * n && d3 == 3 * n
}

/// System 2: `d1 = 3n/2`, `d2 = 2n`, `5n/2 < d3 <= 3n`.
fn system_two(mdeg: [u64; 3], n: u64) -> bool {
    let [d1, d2, d3] = mdeg;
    n.is_multiple_of(2) && 2 * d1 == 3 * n && d2 == 2 * n && 5 * n < 2 * d3 && d3 <= 3 * n
}

/// Every `n` solving either type III system, system 2 listed first.
pub fn type_iii_witnesses(mdeg: [u64; 3]) -> Result<Vec<TypeIIIWitness>> {
    check_sorted(mdeg)?;
    // both systems force d2 = 2n
    let mut out = Vec::new();
    if mdeg[1].is_multiple_of(2) {
        let n = mdeg[1] / 2;
        if system_two(mdeg, n) {
            out.push(TypeIIIWitness { n, system: 2 });
        }
        if system_one(mdeg, n) {
            out.push(TypeIIIWitness { n, system: 1 });
        }
    }
    Ok(out)
}

pub fn type_iii_possible(mdeg: [u64; 3]) -> Result<Option<TypeIIIWitness>> {
    Ok(type_iii_witnesses(mdeg)?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force `{i*m + j*M : j <= r, (i,j) != (0,0)} ∩ [1, T]`.
    fn brute_representable(t: u64, m: u64, big: u64, r: u64) -> BTreeSet<u64> {
        let mut s = BTreeSet::new();
        for i in 0..=t {
            for j in 0..=r {
                let v = i * m + j * big;
                if (i, j) != (0, 0) && v <= t {
                    s.insert(v);
                }
            }
        }
        s
    }

    #[test]
    fn feasible_case_one_shape() {
        let f = feasible_qr(&PositionQuery::new(9, 5, 7, 2)).unwrap();
        assert_eq!(f, vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn feasible_case_two_shape() {
        let pq = PositionQuery::new(5, 7, 9, 2);
        assert_eq!(pq.p(), 7);
        // exact 7*9 - 7 - 9 + 2, above the weakened 2a + 5d + 2 = 22
        assert_eq!(pq.q_coefficient(), 49);
        assert_eq!(feasible_qr(&pq).unwrap(), vec![(0, 0)]);
    }

    #[test]
    fn feasible_smallest_degrees() {
        let f = feasible_qr(&PositionQuery::new(1, 1, 1, 2)).unwrap();
        assert_eq!(f, vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn non_positive_coefficient() {
        // p = 1: coefficient is B - m
        assert_eq!(
            feasible_qr(&PositionQuery::new(9, 3, 6, 2)),
            Err(Error::NonPositiveCoefficient(-1))
        );
    }

    #[test]
    fn exclude_case_one() {
        let r = exclude_position(&PositionQuery::new(9, 5, 7, 2)).unwrap();
        assert_eq!(r.representable, BTreeSet::from([5, 7]));
        assert!(r.excluded);
    }

    #[test]
    fn exclude_case_two() {
        let r = exclude_position(&PositionQuery::new(5, 7, 9, 2)).unwrap();
        assert!(r.representable.is_empty());
        assert!(r.excluded);
    }

    #[test]
    fn middle_of_8_10_12_survives() {
        let pq = PositionQuery::new(10, 8, 12, 2);
        assert_eq!(pq.p(), 2);
        assert_eq!(pq.q_coefficient(), 6);
        let r = exclude_position(&pq).unwrap();
        assert!(r.feasible.contains(&(1, 0)));
        assert!(!r.excluded);
    }

    #[test]
    fn exclude_all_examples() {
        let e = exclude_all([5, 7, 9], &BracketBounds::universal()).unwrap();
        assert!(e.no_elementary_reduction);

        let e = exclude_all([8, 10, 12], &BracketBounds::universal()).unwrap();
        assert_eq!(e.open_positions(), vec![2]);
        assert!(!e.no_elementary_reduction);

        let strict = BracketBounds::universal().with(1, 3, 8, true);
        let e = exclude_all([8, 10, 12], &strict).unwrap();
        assert!(e.no_elementary_reduction);
    }

    #[test]
    fn exclude_all_rejects_unsorted() {
        assert!(matches!(
            exclude_all([7, 5, 9], &BracketBounds::universal()),
            Err(Error::Unsorted(_))
        ));
    }

    #[test]
    fn representable_matches_brute_force() {
        for t in 1..=30 {
            for m in 1..=30 {
                for big in m..=30 {
                    let pq = PositionQuery::new(t, m, big, 2);
                    let Ok(r) = exclude_position(&pq) else {
                        continue;
                    };
                    let r_max = r
                        .feasible
                        .iter()
                        .filter(|x| x.0 == 0)
                        .map(|x| x.1)
                        .max()
                        .unwrap();
                    assert_eq!(r.representable, brute_representable(t, m, big, r_max));
                    for &(q, rr) in &r.feasible {
                        assert!(q as i64 * r.q_coefficient + (rr * big) as i64 <= t as i64);
                        assert!(rr < r.p);
                    }
                }
            }
        }
    }

    #[test]
    fn type_iii_examples() {
        let w = type_iii_possible([6, 8, 12]).unwrap().unwrap();
        assert_eq!(w, TypeIIIWitness { n: 4, system: 2 });
        // (6, 8, 12) also solves system 1 with n = 4
        assert_eq!(type_iii_witnesses([6, 8, 12]).unwrap().len(), 2);
        assert_eq!(type_iii_possible([1, 2, 3]).unwrap(), None);
        assert_eq!(type_iii_possible([5, 7, 9]).unwrap(), None);
        assert_eq!(
            type_iii_possible([5, 8, 12]).unwrap(),
            Some(TypeIIIWitness { n: 4, system: 1 })
        );
    }

    #[test]
    fn type_iii_matches_search_over_n() {
        for d1 in 1..=40u64 {
            for d2 in d1..=40 {
                for d3 in d2..=60 {
                    let t = [d1, d2, d3];
                    let mut expected = Vec::new();
                    for sys in [2u8, 1] {
                        for n in 1..=60u64 {
                            let two =
                                2 * d1 == 3 * n && d2 == 2 * n && 5 * n < 2 * d3 && d3 <= 3 * n;
                            let one = n < d1 && 2 * d1 <= 3 * n && d2 == 2 * n && d3 == 3 * n;
                            if (sys == 2 && two) || (sys == 1 && one) {
                                expected.push(TypeIIIWitness { n, system: sys });
                            }
                        }
                    }
                    assert_eq!(type_iii_witnesses(t).unwrap(), expected, "{t:?}");
                }
            }
        }
    }

    #[test]
    fn exceptional_middle_stays_open_only_when_ij_plus_2_at_most_4i() {
        for i in 1..=37u64 {
            for j in (1..=149u64).step_by(2) {
                let (a, d) = (4 * i, i * j);
                if d > 150 {
                    continue;
                }
                let ex = exclude_all([a, a + d, a + 2 * d], &BracketBounds::universal()).unwrap();
                let expected: Vec<usize> = if i * j + 2 <= 4 * i { vec![2] } else { vec![] };
                assert_eq!(ex.open_positions(), expected, "i={i} j={j}");
            }
        }
    }
}
