use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{format_rational, parse_rational, Scalar};
use crate::error::{Error, Result};
use crate::semigroup::{CuElement, Monomial};
use crate::words::Word;

/// A finitely supported element of `ℓ¹(Cu2 ∖ {◊})` with exact coefficients.
///
/// Terms are kept in canonical monomial order and zero coefficients are
/// never stored, so structural equality is equality of elements.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    /// The basis vector `δ_t`.
    pub fn delta(t: Monomial) -> Self {
        Element::term(t, Scalar::one())
    }

    /// `δ_t` for a semigroup element; the zero element has no basis vector.
    pub fn delta_of(t: &CuElement) -> Result<Self> {
        t.as_monomial().cloned().map(Element::delta)
    }

    /// The unit `δ_e`.
    pub fn unit() -> Self {
        Element::delta(Monomial::identity())
    }

    pub fn term(t: Monomial, c: Scalar) -> Self {
        let mut out = Element::zero();
        out.add_term(t, &c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Self {
        let mut out = Element::zero();
        for (t, c) in terms {
            out.add_term(t, &c);
        }
        out
    }

    /// `f0 = δ_e − δ_{s1 s1*} − δ_{s2 s2*}`, the generator of the ideal `J`.
    pub fn f0() -> Self {
        let minus = -Scalar::one();
        Element::from_terms([
            (Monomial::identity(), Scalar::one()),
            (Monomial::projection(Word::letter(1)), minus.clone()),
            (Monomial::projection(Word::letter(2)), minus),
        ])
    }

    /// Adds `c · δ_t` in place.
    pub fn add_term(&mut self, t: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn coeff(&self, t: &Monomial) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    /// Number of non-zero coefficients.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Largest monomial length in the support, 0 for the zero element.
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Monomial::length).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect(),
        }
    }

    /// The product `#`: bilinear extension of `δ_s # δ_t = δ_{st}`, or 0 when `st = ◊`.
    pub fn sharp(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if let CuElement::Pair(st) = s.mul(t) {
                    out.add_term(st, &(a * b));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Element {
        (0..n).fold(Element::unit(), |acc, _| acc.sharp(self))
    }

    /// `f*(s) = conj(f(s*))`.
    pub fn involution(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(t, a)| (t.star(), a.conj())).collect(),
        }
    }

    /// `Σ |f(t)|` with the complex modulus, in floating point.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(Scalar::abs).sum()
    }

    /// Exact `ℓ¹` norm; only defined when every coefficient is real.
    pub fn l1_norm_exact(&self) -> Option<BigRational> {
        self.terms
            .values()
            .try_fold(BigRational::zero(), |acc, c| c.is_real().then(|| acc + c.re.abs()))
    }

    /// Maps every monomial through `map`, dropping those sent to zero.
    pub fn map_monomials(&self, map: impl Fn(&Monomial) -> CuElement) -> Element {
        let mut out = Element::zero();
        for (t, c) in &self.terms {
            if let CuElement::Pair(u) = map(t) {
                out.add_term(u, c);
            }
        }
        out
    }
}

/// Free-function form of [`Element::sharp`].
pub fn sharp_product(f: &Element, g: &Element) -> Element {
    f.sharp(g)
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(t.clone(), c);
        }
        out
    }
}

impl Add for Element {
    type Output = Element;

    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(t.clone(), &-c);
        }
        out
    }
}

impl Sub for Element {
    type Output = Element;

    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Element {
    type Output = Element;

    fn neg(self) -> Element {
        -&self
    }
}

impl From<Monomial> for Element {
    fn from(t: Monomial) -> Self {
        Element::delta(t)
    }
}

impl FromIterator<(Monomial, Scalar)> for Element {
    fn from_iter<I: IntoIterator<Item = (Monomial, Scalar)>>(iter: I) -> Self {
        Element::from_terms(iter)
    }
}

/// Product of generator atoms spelling `s_i s_j*`, e.g. `s1#s2#s1*`.
fn monomial_atoms(t: &Monomial) -> String {
    if t.is_identity() {
        return "e".to_string();
    }
    let mut atoms: Vec<String> = t.i().letters().iter().map(|l| format!("s{l}")).collect();
    // s_j* = s_{j_β}* ... s_{j_1}*
    atoms.extend(t.j().letters().iter().rev().map(|l| format!("s{l}*")));
    atoms.join("#")
}

/// Prints in the expression syntax accepted by the command-line parser,
/// e.g. `e - s1#s1* - s2#s2*`. The zero element prints as `0 e`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0 e");
        }
        for (n, (t, c)) in self.terms.iter().enumerate() {
            let atoms = monomial_atoms(t);
            if c.is_real() {
                let negative = c.re.is_negative();
                let magnitude = c.re.abs();
                let sign = match (n, negative) {
                    (0, false) => "",
                    (0, true) => "-",
                    (_, false) => " + ",
                    (_, true) => " - ",
                };
                f.write_str(sign)?;
                if magnitude.is_one() {
                    if n == 0 && negative {
                        f.write_str("1 ")?;
                    }
                } else {
                    write!(f, "{magnitude} ")?;
                }
                f.write_str(&atoms)?;
            } else {
                if n > 0 {
                    f.write_str(" + ")?;
                }
                write!(f, "({}, {}) {}", c.re, c.im, atoms)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    i: Word,
    j: Word,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| TermRepr {
                    i: t.i().clone(),
                    j: t.j().clone(),
                    re: format_rational(&c.re),
                    im: format_rational(&c.im),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        let terms = repr
            .terms
            .into_iter()
            .map(|t| {
                let c = Scalar::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
                Ok((Monomial::new(t.i, t.j), c))
            })
            .collect::<Result<Vec<_>, Error>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Element::from_terms(terms))
    }
}
