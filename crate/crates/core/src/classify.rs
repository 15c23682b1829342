//! Verdicts on membership of degree triples in `mdeg(Tame(C^3))`.
//!
//! Arithmetic progressions `(a, a+d, a+2d)` are decided by divisibility:
//! `a | 2d` gives a tame witness, `a ∤ 2d` rules the triple out except for
//! the family `(4i, 4i+ij, 4i+2ij)` with `j` odd, which stays [`Status::Unknown`]
//! unless a fact-table entry settles it.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::semigroup::{member, Mode, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    In,
    NotIn,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum Justification {
    /// `d = 0`: the triple `(a, a, a)` with `a | d`.
    Lemma31 {
        representation: Representation,
    },
    /// `a | 2d`, with `a + 2d` written over `a` and `a + d`.
    TheoremMain1 {
        a_divides_d: bool,
        representation: Representation,
    },
    /// `a ∤ 2d` outside the exceptional family.
    TheoremMain2 {
        a: u64,
        d: u64,
        b: u64,
        a_bar: u64,
    },
    ExceptionalFamily {
        i: u64,
        j: u64,
    },
    FactTable {
        entry: [u64; 3],
        source: String,
    },
    /// `d1 | d2`, or `d3` in the span of `d1, d2`.
    Prop22Sufficient {
        d1_divides_d2: bool,
        representation: Option<Representation>,
    },
    OutOfScope {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub triple: [u64; 3],
    pub status: Status,
    pub why: Justification,
}

/// `(a, a+d, a+2d)` with `b = gcd(a, d)`, `a = b·a_bar`, `d = b·d_bar`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct APTriple {
    pub a: u64,
    pub d: u64,
    pub b: u64,
    pub a_bar: u64,
    pub d_bar: u64,
}

impl APTriple {
    pub fn new(a: u64, d: u64) -> APTriple {
        assert!(a >= 1, "a must be positive");
        let b = a.gcd(&d);
        APTriple {
            a,
            d,
            b,
            a_bar: a / b,
            d_bar: d / b,
        }
    }

    pub fn triple(&self) -> [u64; 3] {
        [self.a, self.a + self.d, self.a + 2 * self.d]
    }

    /// The sorted triple as `(a, d)` when it is an arithmetic progression.
    pub fn from_triple(t: [u64; 3]) -> Option<APTriple> {
        let mut s = t;
        s.sort_unstable();
        (s[0] >= 1 && s[1] - s[0] == s[2] - s[1]).then(|| APTriple::new(s[0], s[1] - s[0]))
    }
}

/// `(i, j) = (a/4, 4d/a)` when `4 | a`, `a | 4d` and `j` is odd.
pub fn exceptional_form(a: u64, d: u64) -> Option<(u64, u64)> {
    if a == 0 || d == 0 || !a.is_multiple_of(4) || !(4 * d).is_multiple_of(a) {
        return None;
    }
    let j = 4 * d / a;
    (j % 2 == 1).then_some((a / 4, j))
}

/// Classifier with a table of externally settled triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classifier {
    pub facts: BTreeMap<[u64; 3], (Status, String)>,
}

impl Default for Classifier {
    fn default() -> Self {
        let mut facts = BTreeMap::new();
        facts.insert(
            [3, 4, 5],
            (
                Status::NotIn,
                "externally proved: no tame automorphism with multidegree (3,4,5)".into(),
            ),
        );
        facts.insert(
            [4, 5, 6],
            (
                Status::NotIn,
                "externally proved: no tame automorphism with multidegree (4,5,6)".into(),
            ),
        );
        Classifier { facts }
    }
}

impl Classifier {
    pub fn without_facts() -> Self {
        Classifier {
            facts: BTreeMap::new(),
        }
    }

    pub fn without(mut self, entry: [u64; 3]) -> Self {
        self.facts.remove(&entry);
        self
    }

    pub fn classify_ap(&self, a: u64, d: u64) -> Verdict {
        let ap = APTriple::new(a, d);
        let triple = ap.triple();
        if (2 * d).is_multiple_of(a) {
            let representation = member(a + 2 * d, a, a + d, Mode::Nonneg)
                .expect("a | 2d always yields a representation of a + 2d");
            let why = if d == 0 {
                Justification::Lemma31 { representation }
            } else {
                Justification::TheoremMain1 {
                    a_divides_d: d.is_multiple_of(a),
                    representation,
                }
            };
            return Verdict {
                triple,
                status: Status::In,
                why,
            };
        }
        if let Some((status, source)) = self.facts.get(&triple) {
            return Verdict {
                triple,
                status: *status,
                why: Justification::FactTable {
                    entry: triple,
                    source: source.clone(),
                },
            };
        }
        if let Some((i, j)) = exceptional_form(a, d) {
            return Verdict {
                triple,
                status: Status::Unknown,
                why: Justification::ExceptionalFamily { i, j },
            };
        }
        Verdict {
            triple,
            status: Status::NotIn,
            why: Justification::TheoremMain2 {
                a,
                d,
                b: ap.b,
                a_bar: ap.a_bar,
            },
        }
    }

    /// Sorts first; the multidegree set is closed under permutations.
    pub fn classify_triple(&self, d1: u64, d2: u64, d3: u64) -> Verdict {
        let mut t = [d1, d2, d3];
        t.sort_unstable();
        let [d1, d2, d3] = t;
        assert!(d1 >= 1, "degrees must be positive");
        let d1_divides_d2 = d2 % d1 == 0;
        let representation = member(d3, d1, d2, Mode::Nonneg);
        if d1_divides_d2 || representation.is_some() {
            return Verdict {
                triple: t,
                status: Status::In,
                why: Justification::Prop22Sufficient {
                    d1_divides_d2,
                    representation,
                },
            };
        }
        if let Some(ap) = APTriple::from_triple(t) {
            return self.classify_ap(ap.a, ap.d);
        }
        if let Some((status, source)) = self.facts.get(&t) {
            return Verdict {
                triple: t,
                status: *status,
                why: Justification::FactTable {
                    entry: t,
                    source: source.clone(),
                },
            };
        }
        Verdict {
            triple: t,
            status: Status::Unknown,
            why: Justification::OutOfScope {
                reason: "not an arithmetic progression and the sufficient condition fails".into(),
            },
        }
    }

    pub fn corollary_sweep(&self, kind: Family, d1_max: u64) -> Vec<Verdict> {
        kind.members(d1_max)
            .map(|(a, d)| self.classify_ap(a, d))
            .collect()
    }
}

pub fn classify_ap(a: u64, d: u64) -> Verdict {
    Classifier::default().classify_ap(a, d)
}

pub fn classify_triple(d1: u64, d2: u64, d3: u64) -> Verdict {
    Classifier::default().classify_triple(d1, d2, d3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `(d1, d1+1, d1+2)`
    Consecutive,
    /// `(d1, d1+2, d1+4)`, `d1` odd
    ConsecutiveOdd,
    /// `(d1, d1+2, d1+4)`, `d1` even
    ConsecutiveEven,
}

impl Family {
    /// `(a, d)` for each member with `d1 <= d1_max`.
    pub fn members(self, d1_max: u64) -> impl Iterator<Item = (u64, u64)> {
        let (start, step, d) = match self {
            Family::Consecutive => (1, 1, 1),
            Family::ConsecutiveOdd => (1, 2, 2),
            Family::ConsecutiveEven => (2, 2, 2),
        };
        (start..=d1_max).step_by(step).map(move |a| (a, d))
    }
}

pub fn corollary_sweep(kind: Family, d1_max: u64) -> Vec<Verdict> {
    Classifier::default().corollary_sweep(kind, d1_max)
}
