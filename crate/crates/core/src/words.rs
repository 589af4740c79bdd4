//! Finite words over the alphabet `{1, 2}`.
//!
//! A [`Word`] indexes a product of generators: the word `(i_1, ..., i_n)`
//! stands for `s_{i_1} s_{i_2} ... s_{i_n}`, and the empty word for the unit.
//! Infinite branches are only ever handled through their finite prefixes.
//!
//! Words order lexicographically with `1 < 2` (a proper prefix sorts first).
//! All enumerations in the crate use this order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite word over `{1, 2}`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    /// The empty word.
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: impl Into<Vec<u8>>) -> Result<Self> {
        let letters = letters.into();
        if let Some(&bad) = letters.iter().find(|&&l| l != 1 && l != 2) {
            return Err(Error::InvalidLetter(bad));
        }
        Ok(Word(letters))
    }

    /// The one-letter word `(letter)`.
    ///
    /// # Panics
    /// If `letter` is not 1 or 2.
    pub fn letter(letter: u8) -> Self {
        assert!(letter == 1 || letter == 2, "letter must be 1 or 2, got {letter}");
        Word(vec![letter])
    }

    /// `letter` repeated `count` times.
    pub fn repeat(letter: u8, count: usize) -> Self {
        assert!(letter == 1 || letter == 2, "letter must be 1 or 2, got {letter}");
        Word(vec![letter; count])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self` followed by one more letter.
    pub fn push(&self, letter: u8) -> Word {
        assert!(letter == 1 || letter == 2, "letter must be 1 or 2, got {letter}");
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// If `self = prefix · k`, returns `k`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.letters()).map(|k| Word(k.to_vec()))
    }

    /// If `self = k · suffix`, returns `k`.
    pub fn strip_suffix(&self, suffix: &Word) -> Option<Word> {
        self.0.strip_suffix(suffix.letters()).map(|k| Word(k.to_vec()))
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix(&self, len: usize) -> Word {
        Word(self.0[self.len() - len..].to_vec())
    }

    /// Position of the word among `I_alpha` in binary: `1 - 2^alpha + sum 2^(l-1) w_l`.
    ///
    /// Letter `l` contributes bit `l - 1`, so `(1,1,...)` maps to 0 and
    /// `(2,2,...)` to `2^alpha - 1`. Fails for words longer than 64 letters.
    pub fn theta(&self) -> Result<u64> {
        if self.len() > 64 {
            return Err(Error::IndexOverflow(self.len()));
        }
        Ok(self
            .0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (bit, &l)| acc | (u64::from(l - 1) << bit)))
    }

    /// The unique word of length `alpha` with `theta() == value`.
    pub fn theta_inv(value: u64, alpha: usize) -> Result<Word> {
        let in_range = alpha >= 64 || value < (1u64 << alpha);
        if !in_range {
            return Err(Error::OutOfRange { value, alpha });
        }
        Ok(Word(
            (0..alpha)
                .map(|bit| if bit < 64 { ((value >> bit) & 1) as u8 + 1 } else { 1 })
                .collect(),
        ))
    }

    /// Parses a compact digit string such as `"121"`; `""` is the empty word.
    pub fn from_digits(s: &str) -> Result<Word> {
        s.bytes()
            .map(|b| match b {
                b'1' => Ok(1),
                b'2' => Ok(2),
                _ => Err(Error::MalformedWord(s.to_string())),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }

    /// Compact digit string, `""` for the empty word.
    pub fn to_digits(&self) -> String {
        self.0.iter().map(|l| char::from(b'0' + l)).collect()
    }
}

/// Splits off the longest common suffix: returns `(u', w', k)` with
/// `u = u'k`, `w = w'k`, and `u'`, `w'` not ending in the same letter.
pub fn strip_common_suffix(u: &Word, w: &Word) -> (Word, Word, Word) {
    let common = u
        .0
        .iter()
        .rev()
        .zip(w.0.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    (
        Word(u.0[..u.len() - common].to_vec()),
        Word(w.0[..w.len() - common].to_vec()),
        u.suffix(common),
    )
}

/// All `2^alpha` words of length `alpha`, in lexicographic order.
pub fn enumerate_words(alpha: usize) -> Vec<Word> {
    let count = 1usize
        .checked_shl(alpha as u32)
        .expect("alpha too large to enumerate");
    (0..count)
        .map(|r| {
            // Most significant bit first gives lexicographic order.
            Word(
                (0..alpha)
                    .map(|pos| ((r >> (alpha - 1 - pos)) & 1) as u8 + 1)
                    .collect(),
            )
        })
        .collect()
}

/// All words of length at most `max_len`, ordered by length then lexicographically.
pub fn enumerate_words_up_to(max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(enumerate_words).collect()
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("(")?;
        for (n, l) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

impl std::borrow::Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        &self.0
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::from_digits(s.trim())
    }
}

impl TryFrom<&[u8]> for Word {
    type Error = Error;

    fn try_from(letters: &[u8]) -> Result<Word> {
        Word::new(letters)
    }
}

impl<const N: usize> TryFrom<[u8; N]> for Word {
    type Error = Error;

    fn try_from(letters: [u8; N]) -> Result<Word> {
        Word::new(letters)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let letters = Vec::<u8>::deserialize(deserializer)?;
        Word::new(letters).map_err(serde::de::Error::custom)
    }
}
