//! Seeded random elements for the property harnesses.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::enveloping::{Enveloping, Monomial, UEAElement};
use crate::scalar::{q, q_pow, Q};

pub use rand::SeedableRng;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero integer in `[-bound, bound]`.
pub fn small_nonzero(rng: &mut SuiteRng, bound: i64) -> Q {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return q(x);
        }
    }
}

/// Random PBW monomial of degree at most `max_degree`.
pub fn random_monomial(rng: &mut SuiteRng, dim: usize, max_degree: u32) -> Monomial {
    let deg = rng.gen_range(0..=max_degree);
    let mut m = Monomial::one(dim);
    for _ in 0..deg {
        m.0[rng.gen_range(0..dim)] += 1;
    }
    m
}

/// Random element with up to `terms` monomials and small integer
/// coefficients.
pub fn random_element(alg: &Enveloping, rng: &mut SuiteRng, max_degree: u32, terms: usize) -> UEAElement {
    let mut out = UEAElement::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let m = random_monomial(rng, alg.dim(), max_degree);
        out.add_term(m, small_nonzero(rng, 5));
    }
    out
}

/// Random element of the deformation `U(g)_n`: each coefficient of a
/// degree-`k` monomial carries `p^(n k)`.
pub fn random_deformed_element(alg: &Enveloping, rng: &mut SuiteRng, max_degree: u32, terms: usize, n: u32) -> UEAElement {
    let base = random_element(alg, rng, max_degree, terms);
    UEAElement::from_terms(
        base.terms()
            .iter()
            .map(|(m, c)| (m.clone(), c * q_pow(alg.prime(), (n * m.degree()) as i64))),
    )
}

/// Random word in the Lie basis, as generator indices.
pub fn random_word(rng: &mut SuiteRng, dim: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..dim)).collect()
}
