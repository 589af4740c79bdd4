//! Oracles and generators shared by the integration tests.
//!
//! The oracles avoid the library's canonical-form and zero-sum code:
//! products are computed by rewriting free words in `s1, s2, s1*, s2*`, and
//! membership in `J` is decided through the shift action on `ℓᵖ`
//! (injective on `A/J`), evaluated letter by letter.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cu2_core::algebra::{ideal_generator, Element, Scalar};
use cu2_core::semigroup::{CuElement, Monomial};
use cu2_core::words::Word;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    S(u8),
    Star(u8),
}

fn spell(t: &Monomial) -> Vec<Letter> {
    let mut out: Vec<Letter> = t.i().letters().iter().map(|&l| Letter::S(l)).collect();
    out.extend(t.j().letters().iter().rev().map(|&l| Letter::Star(l)));
    out
}

/// Reduces a free word with `s_a* s_a -> e` and `s_a* s_b -> ◊` (a ≠ b).
fn reduce(mut word: Vec<Letter>) -> Option<Vec<Letter>> {
    loop {
        let pos = word
            .windows(2)
            .position(|w| matches!((w[0], w[1]), (Letter::Star(_), Letter::S(_))));
        let Some(pos) = pos else {
            return Some(word);
        };
        match (word[pos], word[pos + 1]) {
            (Letter::Star(a), Letter::S(b)) if a == b => {
                word.drain(pos..pos + 2);
            }
            _ => return None,
        }
    }
}

pub fn oracle_mul(u: &Monomial, v: &Monomial) -> CuElement {
    let mut word = spell(u);
    word.extend(spell(v));
    match reduce(word) {
        None => CuElement::Diamond,
        Some(letters) => {
            let i: Vec<u8> = letters
                .iter()
                .filter_map(|l| match l {
                    Letter::S(a) => Some(*a),
                    Letter::Star(_) => None,
                })
                .collect();
            let mut j: Vec<u8> = letters
                .iter()
                .filter_map(|l| match l {
                    Letter::Star(a) => Some(*a),
                    Letter::S(_) => None,
                })
                .collect();
            j.reverse();
            CuElement::pair(Word::new(i).unwrap(), Word::new(j).unwrap())
        }
    }
}

/// `A_i e_n`, letter by letter.
pub fn oracle_a(letter: u8, n: u128) -> Option<u128> {
    let m = n + u128::from(letter) - 1;
    m.is_multiple_of(2).then_some(m / 2)
}

/// `B_i e_n`, letter by letter.
pub fn oracle_b(letter: u8, n: u128) -> u128 {
    2 * n - u128::from(letter) + 1
}

/// Index of `δ_{s_i s_j*} e_n`: apply `A_{j_1}`, ..., `A_{j_β}`, then `B_{i_α}`, ..., `B_{i_1}`.
pub fn oracle_action(t: &Monomial, n: u128) -> Option<u128> {
    let mut n = n;
    for &l in t.j().letters() {
        n = oracle_a(l, n)?;
    }
    for &l in t.i().letters().iter().rev() {
        n = oracle_b(l, n);
    }
    Some(n)
}

/// Whether `f ∈ J`, via `Θ(f) = 0`.
///
/// With `L` the longest support length and `n = 2^L q + r`, each term sends
/// `e_n` to an index affine in `q` once `r` is fixed. Taking `q` past every
/// crossing of two distinct lines, `Θ(f) e_n = 0` for all `r ∈ [1, 2^L]`
/// holds iff the coefficients on each line cancel, i.e. iff `Θ(f) = 0`.
pub fn oracle_in_ideal(f: &Element) -> bool {
    let l = f.max_length() as u32;
    let block = 1u128 << l;
    let q = 1u128 << (2 * l + 2);
    (1..=block).all(|r| {
        let n = block * q + r;
        let mut image: BTreeMap<u128, Scalar> = BTreeMap::new();
        for (t, c) in f.terms() {
            if let Some(m) = oracle_action(t, n) {
                let entry = image.entry(m).or_default();
                *entry = &*entry + c;
            }
        }
        image.values().all(Scalar::is_zero)
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut impl Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(1..=2u8)).collect::<Vec<_>>()).unwrap()
}

pub fn random_monomial(rng: &mut impl Rng, max_len: usize) -> Monomial {
    let i = random_word(rng, max_len);
    let j = random_word(rng, max_len - i.len());
    Monomial::new(i, j)
}

fn random_rational(rng: &mut impl Rng) -> BigRational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=6);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Non-zero; complex one time in four.
pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let re = random_rational(rng);
        let im = if rng.gen_range(0..4) == 0 {
            random_rational(rng)
        } else {
            BigRational::from_integer(0.into())
        };
        let c = Scalar::new(re, im);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_element(rng: &mut impl Rng, max_terms: usize, max_len: usize) -> Element {
    let terms = rng.gen_range(1..=max_terms);
    (0..terms)
        .map(|_| (random_monomial(rng, max_len), random_scalar(rng)))
        .collect()
}

/// `Σ c δ_{s_i} # f0 # δ_{s_j*}` with words of length at most 3.
pub fn random_ideal_element(rng: &mut impl Rng) -> Element {
    let terms = rng.gen_range(1..=5);
    (0..terms).fold(Element::zero(), |acc, _| {
        let g = ideal_generator(&random_word(rng, 3), &random_word(rng, 3));
        &acc + &g.scale(&random_scalar(rng))
    })
}

/// A random element outside `J` (rejection sampled; membership is decided by the oracle).
pub fn random_non_ideal_element(rng: &mut impl Rng) -> Element {
    loop {
        let mut f = random_element(rng, 6, 4);
        if rng.gen_bool(0.5) {
            f = &f + &random_ideal_element(rng);
        }
        if !f.is_zero() && !oracle_in_ideal(&f) {
            return f;
        }
    }
}

pub fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=2u8, 0..=max_len).prop_map(|v| Word::new(v).unwrap())
}

pub fn arb_monomial(max_len: usize) -> impl Strategy<Value = Monomial> {
    (arb_word(max_len), arb_word(max_len)).prop_map(|(i, j)| Monomial::new(i, j))
}

pub fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=6, -3i64..=3, 1i64..=4).prop_map(|(a, b, c, d)| {
        Scalar::new(
            BigRational::new(a.into(), b.into()),
            BigRational::new(c.into(), d.into()),
        )
    })
}

pub fn arb_element(max_terms: usize, max_len: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((arb_monomial(max_len), arb_scalar()), 0..=max_terms)
        .prop_map(|terms| terms.into_iter().collect())
}

pub fn arb_ideal_element() -> impl Strategy<Value = Element> {
    prop::collection::vec((arb_word(3), arb_word(3), arb_scalar()), 0..=4).prop_map(|gens| {
        gens.iter().fold(Element::zero(), |acc, (i, j, c)| &acc + &ideal_generator(i, j).scale(c))
    })
}
