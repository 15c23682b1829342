//! Membership in two-generator degree sets `i·m + j·M`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `i, j >= 1`
    Positive,
    /// `i, j >= 0`, not both zero
    Nonneg,
}

/// `target = i·gens.0 + j·gens.1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    pub i: u64,
    pub j: u64,
    pub target: u64,
    pub gens: (u64, u64),
}

impl Representation {
    pub fn is_valid(&self) -> bool {
        (self.i, self.j) != (0, 0) && self.i * self.gens.0 + self.j * self.gens.1 == self.target
    }
}

/// Finds a representation of `target`, trying the largest `j` first.
///
/// Exhaustive over `j <= target / large`; returns `None` when no coefficient
/// pair allowed by `mode` exists.
pub fn member(target: u64, small: u64, large: u64, mode: Mode) -> Option<Representation> {
    assert!(small >= 1 && large >= 1, "generators must be positive");
    let min = match mode {
        Mode::Positive => 1,
        Mode::Nonneg => 0,
    };
    (min..=target / large).rev().find_map(|j| {
        let rest = target - j * large;
        if !rest.is_multiple_of(small) {
            return None;
        }
        let i = rest / small;
        if i < min || (i, j) == (0, 0) {
            return None;
        }
        let rep = Representation {
            i,
            j,
            target,
            gens: (small, large),
        };
        debug_assert!(rep.is_valid());
        Some(rep)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma31Report {
    pub a: u64,
    pub d: u64,
    /// `a | 2d`
    pub lhs: bool,
    /// `a | d` or `a + 2d ∈ aN + (a+d)N`
    pub rhs: bool,
    pub representation: Option<Representation>,
    pub equal: bool,
}

/// Checks `a | 2d  <=>  a | d or a+2d ∈ aN + (a+d)N` for one progression.
pub fn lemma31_check(a: u64, d: u64) -> Lemma31Report {
    assert!(a >= 1, "a must be positive");
    let lhs = (2 * d).is_multiple_of(a);
    let representation = member(a + 2 * d, a, a + d, Mode::Nonneg);
    let rhs = d.is_multiple_of(a) || representation.is_some();
    Lemma31Report {
        a,
        d,
        lhs,
        rhs,
        representation,
        equal: lhs == rhs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Membership by direct enumeration of the set, independent of `member`.
    fn brute_force(target: u64, m: u64, big: u64, mode: Mode) -> bool {
        let lo = if mode == Mode::Positive { 1 } else { 0 };
        (lo..=target).any(|i| (lo..=target).any(|j| (i, j) != (0, 0) && i * m + j * big == target))
    }

    #[test]
    fn positive_examples() {
        let r = member(5, 2, 3, Mode::Positive).unwrap();
        assert_eq!((r.i, r.j), (1, 1));
        assert_eq!(member(7, 3, 5, Mode::Positive), None);
    }

    #[test]
    fn nonneg_admits_zero_coefficient() {
        let r = member(8, 4, 6, Mode::Nonneg).unwrap();
        assert_eq!((r.i, r.j), (2, 0));
        assert_eq!(member(8, 4, 6, Mode::Positive), None);
    }

    #[test]
    fn lemma_examples() {
        let r = lemma31_check(3, 3);
        assert!(r.lhs && r.rhs && r.equal);

        let r = lemma31_check(3, 1);
        assert!(!r.lhs && !r.rhs && r.equal);
        // 3N0 + 4N0 \ {0} up to 5 is {3, 4}
        assert!(!brute_force(5, 3, 4, Mode::Nonneg));

        let r = lemma31_check(4, 2);
        assert!(r.lhs && r.rhs && r.equal);
        let rep = r.representation.unwrap();
        assert_eq!((rep.i, rep.j), (2, 0));
    }

    #[test]
    fn degenerate_progression() {
        let r = lemma31_check(7, 0);
        assert!(r.lhs && r.rhs && r.equal);
    }

    #[test]
    fn lemma_holds_on_grid() {
        for a in 1..=60 {
            for d in 0..=60 {
                assert!(lemma31_check(a, d).equal, "a={a} d={d}");
            }
        }
    }

    proptest! {
        #[test]
        fn member_agrees_with_enumeration(t in 1u64..80, m in 1u64..20, big in 1u64..20) {
            for mode in [Mode::Positive, Mode::Nonneg] {
                let got = member(t, m, big, mode);
                prop_assert_eq!(got.is_some(), brute_force(t, m, big, mode));
                if let Some(r) = got {
                    prop_assert!(r.is_valid());
                    if mode == Mode::Positive {
                        prop_assert!(r.i >= 1 && r.j >= 1);
                    }
                }
            }
        }

        #[test]
        fn positive_implies_nonneg(t in 1u64..200, m in 1u64..30, big in 1u64..30) {
            if member(t, m, big, Mode::Positive).is_some() {
                prop_assert!(member(t, m, big, Mode::Nonneg).is_some());
            }
        }
    }
}
