//! Membership in the ideal `J` generated by `f0`, decided class by class.
//!
//! The symmetric-expansion classes `S_v` (`v` without symmetric core) partition
//! the monomials. An element lies in `J` exactly when, inside every class, the
//! coefficients summed along each branch `v, v_{k1}, v_{k1 k2}, ...` vanish.
//! For a finitely supported element only finitely many branch prefixes matter:
//! once a prefix has no support strictly below it, every branch through it has
//! the same sum.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::element::Element;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::semigroup::Monomial;
use crate::words::Word;

/// The coefficients of an element restricted to one class `S_v`, keyed by the
/// expanding word `k` (the term at `v_k = s_{ik} s_{jk}*`).
pub type ClassCoefficients = BTreeMap<Word, Scalar>;

/// Splits `f` into its restrictions to the classes `S_v`, keyed by the coreless `v`.
pub fn classes(f: &Element) -> BTreeMap<Monomial, ClassCoefficients> {
    let mut out: BTreeMap<Monomial, ClassCoefficients> = BTreeMap::new();
    for (t, c) in f.terms() {
        let (v, k) = t.symmetric_core();
        out.entry(v).or_default().insert(k, c.clone());
    }
    out
}

/// Coefficients of `f` on the expansions of `v` (which may have a core).
fn coefficients_along(f: &Element, v: &Monomial) -> ClassCoefficients {
    f.terms()
        .filter_map(|(t, c)| v.expansion_word(t).map(|k| (k, c.clone())))
        .collect()
}

/// A prefix `k` whose subtree holds no further support, with the branch sum
/// shared by every infinite branch through it.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchSum {
    pub prefix: Word,
    pub sum: Scalar,
}

/// Walks the branch tree breadth-first (then lexicographically) and returns
/// every settled prefix together with its branch sum.
fn settled_branches(coeffs: &ClassCoefficients) -> impl Iterator<Item = BranchSum> + '_ {
    let mut queue: VecDeque<(Word, Scalar)> = VecDeque::from([(Word::empty(), Scalar::zero())]);
    std::iter::from_fn(move || {
        while let Some((prefix, above)) = queue.pop_front() {
            let sum = match coeffs.get(&prefix) {
                Some(c) => &above + c,
                None => above,
            };
            let has_below = coeffs
                .range(prefix.clone()..)
                .skip_while(|(k, _)| **k == prefix)
                .take_while(|(k, _)| k.strip_prefix(&prefix).is_some())
                .next()
                .is_some();
            if has_below {
                queue.push_back((prefix.push(1), sum.clone()));
                queue.push_back((prefix.push(2), sum));
            } else {
                return Some(BranchSum { prefix, sum });
            }
        }
        None
    })
}

/// First settled prefix (by depth, then lexicographically) with a non-zero branch sum.
pub fn first_nonzero_branch(coeffs: &ClassCoefficients) -> Option<BranchSum> {
    settled_branches(coeffs).find(|b| !b.sum.is_zero())
}

/// Whether every branch sum of `f` along the expansions of `v` vanishes.
pub fn zero_sums_at(f: &Element, v: &Monomial) -> bool {
    first_nonzero_branch(&coefficients_along(f, v)).is_none()
}

/// The restriction of `f` to the class `S_v` of a coreless `v`.
pub fn symmetric_class_part(f: &Element, v: &Monomial) -> Result<Element> {
    if !v.is_without_symmetric_core() {
        return Err(Error::HasSymmetricCore(v.to_string()));
    }
    Ok(f.terms()
        .filter(|(t, _)| v.expansion_word(t).is_some())
        .map(|(t, c)| (t.clone(), c.clone()))
        .collect())
}

/// Whether `f` lies in `J`: zero sums at every coreless `v` whose class meets the support.
pub fn in_ideal(f: &Element) -> bool {
    classes(f)
        .values()
        .all(|coeffs| first_nonzero_branch(coeffs).is_none())
}

/// `δ_{s_i} # f0 # δ_{s_j*}`.
pub fn ideal_generator(i: &Word, j: &Word) -> Element {
    Element::delta(Monomial::isometry(i.clone()))
        .sharp(&Element::f0())
        .sharp(&Element::delta(Monomial::co_isometry(j.clone())))
}

/// `δ_{s_m*} # f # δ_{s_m}`.
pub fn conjugate_branch(f: &Element, m: &Word) -> Element {
    Element::delta(Monomial::co_isometry(m.clone()))
        .sharp(f)
        .sharp(&Element::delta(Monomial::isometry(m.clone())))
}

/// One generator term `c · δ_{s_{im}} # f0 # δ_{s_{jm}*}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateTerm {
    pub i: Word,
    pub j: Word,
    pub m: Word,
    pub c: Scalar,
}

impl CertificateTerm {
    pub fn expand(&self) -> Element {
        ideal_generator(&self.i.concat(&self.m), &self.j.concat(&self.m)).scale(&self.c)
    }
}

/// An explicit finite combination of ideal generators equal to the certified element.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IdealCertificate {
    pub terms: Vec<CertificateTerm>,
}

impl IdealCertificate {
    /// Sum of all generator terms, recomputed with the `#` product.
    pub fn expand(&self) -> Element {
        self.terms
            .iter()
            .fold(Element::zero(), |acc, term| &acc + &term.expand())
    }

    pub fn verifies(&self, f: &Element) -> bool {
        self.expand() == *f
    }
}

/// Writes `f ∈ J` as a combination of `δ_{s_{im}} # f0 # δ_{s_{jm}*}`.
///
/// Within the class of `v = s_i s_j*`, the generator at `m` carries the
/// partial sum of `f` along `v, ..., v_m`; the sum telescopes back to `f`.
/// Generators with zero coefficient are omitted. The result is verified
/// against `f` before it is returned.
pub fn ideal_certificate(f: &Element) -> Result<IdealCertificate> {
    let mut terms = Vec::new();
    for (v, coeffs) in classes(f) {
        for branch in settled_branches(&coeffs) {
            if !branch.sum.is_zero() {
                return Err(Error::NotInIdeal);
            }
        }
        let mut queue: VecDeque<(Word, Scalar)> =
            VecDeque::from([(Word::empty(), Scalar::zero())]);
        while let Some((m, above)) = queue.pop_front() {
            let has_below = coeffs
                .keys()
                .any(|k| k.len() > m.len() && k.strip_prefix(&m).is_some());
            if !has_below {
                continue;
            }
            let c = match coeffs.get(&m) {
                Some(own) => &above + own,
                None => above,
            };
            queue.push_back((m.push(1), c.clone()));
            queue.push_back((m.push(2), c.clone()));
            if !c.is_zero() {
                terms.push(CertificateTerm {
                    i: v.i().clone(),
                    j: v.j().clone(),
                    m,
                    c,
                });
            }
        }
    }
    let certificate = IdealCertificate { terms };
    if !certificate.verifies(f) {
        return Err(Error::CertificateMismatch);
    }
    Ok(certificate)
}
