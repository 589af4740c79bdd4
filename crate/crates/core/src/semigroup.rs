//! The polycyclic monoid `Cu2` in canonical form.
//!
//! Every non-zero element is uniquely `s_i s_j*` for words `i`, `j`; this is
//! the only representation stored. [`Monomial`] is such a non-zero element and
//! [`CuElement`] adds the absorbing zero (`Diamond`).
//!
//! Symmetric expansions of `v = s_i s_j*` are the elements `s_{ik} s_{jk}*`.
//! Stripping the longest common suffix of `(i, j)` yields the unique element
//! without symmetric core whose expansion class contains a given element.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{enumerate_words, enumerate_words_up_to, strip_common_suffix, Word};

/// A non-zero element `s_i s_j*` of `Cu2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    i: Word,
    j: Word,
}

/// An element of `Cu2`: either zero or a canonical [`Monomial`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CuElement {
    Diamond,
    Pair(Monomial),
}

impl Monomial {
    pub fn new(i: Word, j: Word) -> Self {
        Monomial { i, j }
    }

    /// The unit `e = s_∅ s_∅*`.
    pub fn identity() -> Self {
        Monomial::new(Word::empty(), Word::empty())
    }

    /// The generator `s_letter`.
    pub fn s(letter: u8) -> Self {
        Monomial::new(Word::letter(letter), Word::empty())
    }

    /// The generator `s_letter*`.
    pub fn s_star(letter: u8) -> Self {
        Monomial::new(Word::empty(), Word::letter(letter))
    }

    /// `s_w`.
    pub fn isometry(w: Word) -> Self {
        Monomial::new(w, Word::empty())
    }

    /// `s_w*`.
    pub fn co_isometry(w: Word) -> Self {
        Monomial::new(Word::empty(), w)
    }

    /// The symmetric element `s_w s_w*`.
    pub fn projection(w: Word) -> Self {
        Monomial::new(w.clone(), w)
    }

    pub fn i(&self) -> &Word {
        &self.i
    }

    pub fn j(&self) -> &Word {
        &self.j
    }

    pub fn into_words(self) -> (Word, Word) {
        (self.i, self.j)
    }

    pub fn is_identity(&self) -> bool {
        self.i.is_empty() && self.j.is_empty()
    }

    pub fn length(&self) -> usize {
        self.i.len() + self.j.len()
    }

    /// `(s_i s_j*)(s_m s_n*)` reduced with `s_a* s_b = e` if `a = b`, zero otherwise.
    pub fn mul(&self, other: &Monomial) -> CuElement {
        // The middle factor s_j* s_m decides everything.
        if let Some(k) = other.i.strip_prefix(&self.j) {
            CuElement::Pair(Monomial::new(self.i.concat(&k), other.j.clone()))
        } else if let Some(k) = self.j.strip_prefix(&other.i) {
            CuElement::Pair(Monomial::new(self.i.clone(), other.j.concat(&k)))
        } else {
            CuElement::Diamond
        }
    }

    pub fn star(&self) -> Monomial {
        Monomial::new(self.j.clone(), self.i.clone())
    }

    /// The symmetric expansion `s_{ik} s_{jk}*`.
    pub fn expand(&self, k: &Word) -> Monomial {
        Monomial::new(self.i.concat(k), self.j.concat(k))
    }

    /// Returns `(v, k)` with `self = v.expand(k)` and `v` without symmetric core.
    pub fn symmetric_core(&self) -> (Monomial, Word) {
        let (i, j, k) = strip_common_suffix(&self.i, &self.j);
        (Monomial::new(i, j), k)
    }

    pub fn is_without_symmetric_core(&self) -> bool {
        match (self.i.last(), self.j.last()) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        }
    }

    /// If `t` is a symmetric expansion of `self`, the word `k` with `t = self.expand(k)`.
    pub fn expansion_word(&self, t: &Monomial) -> Option<Word> {
        let k = t.i.strip_prefix(&self.i)?;
        let k2 = t.j.strip_prefix(&self.j)?;
        (k == k2).then_some(k)
    }

    /// All symmetric expansions by words of length at most `depth`,
    /// ordered by the length of the expanding word, then lexicographically.
    pub fn expansions(&self, depth: usize) -> Vec<Monomial> {
        enumerate_words_up_to(depth)
            .iter()
            .map(|k| self.expand(k))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.i.cmp(&other.i))
            .then_with(|| self.j.cmp(&other.j))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CuElement {
    pub fn identity() -> Self {
        CuElement::Pair(Monomial::identity())
    }

    pub fn pair(i: Word, j: Word) -> Self {
        CuElement::Pair(Monomial::new(i, j))
    }

    pub fn is_diamond(&self) -> bool {
        matches!(self, CuElement::Diamond)
    }

    pub fn as_monomial(&self) -> Result<&Monomial> {
        match self {
            CuElement::Diamond => Err(Error::Diamond),
            CuElement::Pair(m) => Ok(m),
        }
    }

    pub fn mul(&self, other: &CuElement) -> CuElement {
        match (self, other) {
            (CuElement::Pair(a), CuElement::Pair(b)) => a.mul(b),
            _ => CuElement::Diamond,
        }
    }

    pub fn star(&self) -> CuElement {
        match self {
            CuElement::Diamond => CuElement::Diamond,
            CuElement::Pair(m) => CuElement::Pair(m.star()),
        }
    }

    pub fn length(&self) -> Result<usize> {
        self.as_monomial().map(Monomial::length)
    }

    pub fn symmetric_core(&self) -> Result<(CuElement, Word)> {
        let (v, k) = self.as_monomial()?.symmetric_core();
        Ok((CuElement::Pair(v), k))
    }

    pub fn is_without_symmetric_core(&self) -> Result<bool> {
        self.as_monomial().map(Monomial::is_without_symmetric_core)
    }

    pub fn expansions(&self, depth: usize) -> Result<Vec<CuElement>> {
        Ok(self
            .as_monomial()?
            .expansions(depth)
            .into_iter()
            .map(CuElement::Pair)
            .collect())
    }
}

impl From<Monomial> for CuElement {
    fn from(m: Monomial) -> Self {
        CuElement::Pair(m)
    }
}

/// Every non-zero element of length at most `max_length`, in canonical order
/// (total length, then `i`, then `j`). There are `sum_{n<=L} (n+1) 2^n` of them.
pub fn enumerate_elements(max_length: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for total in 0..=max_length {
        for a in 0..=total {
            let is = enumerate_words(a);
            let js = enumerate_words(total - a);
            for i in &is {
                for j in &js {
                    out.push(Monomial::new(i.clone(), j.clone()));
                }
            }
        }
    }
    out.sort();
    out
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &Word| {
            w.letters()
                .iter()
                .map(u8::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match (self.i.is_empty(), self.j.is_empty()) {
            (true, true) => f.write_str("e"),
            (false, true) => write!(f, "s({})", word(&self.i)),
            (true, false) => write!(f, "s({})*", word(&self.j)),
            (false, false) => write!(f, "s({}) s({})*", word(&self.i), word(&self.j)),
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuElement::Diamond => f.write_str("◊"),
            CuElement::Pair(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    i: Word,
    j: Word,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ElementRepr {
    Diamond { diamond: bool },
    Pair(PairRepr),
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PairRepr {
            i: self.i.clone(),
            j: self.j.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let PairRepr { i, j } = PairRepr::deserialize(deserializer)?;
        Ok(Monomial::new(i, j))
    }
}

impl Serialize for CuElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CuElement::Diamond => ElementRepr::Diamond { diamond: true }.serialize(serializer),
            CuElement::Pair(m) => m.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for CuElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match ElementRepr::deserialize(deserializer)? {
            ElementRepr::Diamond { diamond: true } => Ok(CuElement::Diamond),
            ElementRepr::Diamond { diamond: false } => {
                Err(D::Error::custom("\"diamond\" must be true when present"))
            }
            ElementRepr::Pair(PairRepr { i, j }) => Ok(CuElement::pair(i, j)),
        }
    }
}
