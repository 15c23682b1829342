#![allow(dead_code)]

use mdeg::poly::coeff;
use mdeg::{Monomial, Polynomial};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nonzero_coeff(rng: &mut impl Rng, bound: i64) -> mdeg::Coeff {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return coeff(c);
        }
    }
}

/// Uniform exponent vector of total degree `deg`.
pub fn random_monomial(rng: &mut impl Rng, nvars: usize, deg: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for _ in 0..deg {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(exps)
}

/// Up to `max_terms` terms of degree at most `max_deg`; may be zero.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    let k = rng.gen_range(0..=max_terms);
    Polynomial::from_terms(
        nvars,
        (0..k).map(|_| {
            let d = rng.gen_range(0..=max_deg);
            (random_monomial(rng, nvars, d), nonzero_coeff(rng, 5))
        }),
    )
}

/// Nonzero homogeneous polynomial of degree exactly `deg`.
pub fn random_homogeneous(
    rng: &mut impl Rng,
    nvars: usize,
    deg: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let p = Polynomial::from_terms(
            nvars,
            (0..k).map(|_| (random_monomial(rng, nvars, deg), nonzero_coeff(rng, 4))),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

/// `c0 + c1 t + ... ` evaluated at `h`, nonconstant.
pub fn random_univariate_at(rng: &mut impl Rng, h: &Polynomial, max_deg: u32) -> Polynomial {
    let d = rng.gen_range(1..=max_deg);
    let mut acc = Polynomial::zero(h.nvars());
    for e in 0..=d {
        let c = if e == d {
            nonzero_coeff(rng, 4)
        } else {
            coeff(rng.gen_range(-3..=3))
        };
        acc = &acc + &h.pow(e).scale(&c);
    }
    acc
}

/// Term-by-term partial derivative, independent of the library's.
pub fn naive_partial(p: &Polynomial, i: usize) -> Polynomial {
    Polynomial::from_terms(
        p.nvars(),
        p.terms()
            .filter(|(m, _)| m.exponents()[i] > 0)
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                let k = e[i];
                e[i] -= 1;
                (Monomial::new(e), c * coeff(k as i64))
            }),
    )
}
