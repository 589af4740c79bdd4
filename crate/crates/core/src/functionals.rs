//! Bounded functionals on `A`, identified with `ℓ∞(Cu2 ∖ {◊})` and evaluated
//! lazily by rule.
//!
//! `J⊥` consists of the fixed points of `T*`, where `T = T1 + T2` and
//! `T_k δ_t = δ_{t_k}` expands `t = s_i s_j*` to `s_{ik} s_{jk}*`. Fixedness is
//! only ever checked up to a finite length.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{ideal_generator, Element, Scalar};
use crate::error::{Error, Result};
use crate::report::{CheckReport, Counterexample};
use crate::semigroup::{enumerate_elements, CuElement, Monomial};
use crate::words::{enumerate_words, enumerate_words_up_to, Word};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionalKind {
    /// `μ_F`: `2^-α` on `s_i s_{kj}*` with `|i| = |j| = α` and `k ∈ F`.
    MuF { f: BTreeSet<Word> },
    /// `τ`: `1` on `s_{i1} s_i*`.
    TraceTau,
    /// Explicit finitely many values.
    FiniteSupport { values: Element },
    /// `T* φ`.
    PullTStar { inner: Box<Functional> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Functional {
    kind: FunctionalKind,
    sup_bound: f64,
}

impl Functional {
    pub fn mu(f: BTreeSet<Word>) -> Result<Functional> {
        if f.iter().any(Word::is_empty) {
            return Err(Error::EmptyWordInIndexSet);
        }
        Ok(Functional {
            kind: FunctionalKind::MuF { f },
            sup_bound: 1.0,
        })
    }

    /// `μ_{I_α}`, indexed by all words of length `α ≥ 1`.
    pub fn mu_all_words(alpha: usize) -> Result<Functional> {
        Functional::mu(enumerate_words(alpha).into_iter().collect())
    }

    pub fn tau() -> Functional {
        Functional {
            kind: FunctionalKind::TraceTau,
            sup_bound: 1.0,
        }
    }

    /// The functional taking the value `values(t)` at `t`, zero elsewhere.
    pub fn finite_support(values: Element) -> Functional {
        let sup_bound = values.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max);
        Functional {
            kind: FunctionalKind::FiniteSupport { values },
            sup_bound,
        }
    }

    pub fn zero() -> Functional {
        Functional::finite_support(Element::zero())
    }

    pub fn kind(&self) -> &FunctionalKind {
        &self.kind
    }

    /// A bound on `sup |φ(t)|`.
    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    pub fn eval(&self, t: &Monomial) -> Scalar {
        match &self.kind {
            FunctionalKind::MuF { f } => mu_value(f, t),
            FunctionalKind::TraceTau => tau_value(t),
            FunctionalKind::FiniteSupport { values } => values.coeff(t),
            FunctionalKind::PullTStar { inner } => {
                &inner.eval(&t.expand(&Word::letter(1))) + &inner.eval(&t.expand(&Word::letter(2)))
            }
        }
    }

    pub fn eval_at(&self, t: &CuElement) -> Result<Scalar> {
        t.as_monomial().map(|m| self.eval(m))
    }
}

fn mu_value(f: &BTreeSet<Word>, t: &Monomial) -> Scalar {
    let alpha = t.i().len();
    let j = t.j().letters();
    if j.len() <= alpha || !f.contains(&j[..j.len() - alpha]) {
        return Scalar::zero();
    }
    Scalar::real(BigRational::new(BigInt::one(), BigInt::one() << alpha))
}

fn tau_value(t: &Monomial) -> Scalar {
    let (i, j) = (t.i().letters(), t.j().letters());
    if i.len() == j.len() + 1 && i.ends_with(&[1]) && i.starts_with(j) {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

pub fn mu_eval(f: &BTreeSet<Word>, t: &CuElement) -> Result<Scalar> {
    if f.iter().any(Word::is_empty) {
        return Err(Error::EmptyWordInIndexSet);
    }
    t.as_monomial().map(|m| mu_value(f, m))
}

pub fn tau_eval(t: &CuElement) -> Result<Scalar> {
    t.as_monomial().map(tau_value)
}

/// `⟨f, φ⟩ = Σ f(t) φ(t)`.
pub fn pair(f: &Element, phi: &Functional) -> Scalar {
    let mut sum = Scalar::zero();
    for (t, c) in f.terms() {
        let v = phi.eval(t);
        if !v.is_zero() {
            sum += &(c * &v);
        }
    }
    sum
}

/// `T f = Σ f(t) (δ_{t_1} + δ_{t_2})`.
pub fn push_t(f: &Element) -> Element {
    let mut out = Element::zero();
    for (t, c) in f.terms() {
        for l in [1, 2] {
            out.add_term(t.expand(&Word::letter(l)), c);
        }
    }
    out
}

pub fn pull_tstar(phi: &Functional) -> Functional {
    Functional {
        sup_bound: 2.0 * phi.sup_bound,
        kind: FunctionalKind::PullTStar {
            inner: Box::new(phi.clone()),
        },
    }
}

/// Compares `T* φ` with `φ` on every element of length at most `max_length`.
pub fn tstar_check(phi: &Functional, max_length: usize) -> CheckReport {
    let pulled = pull_tstar(phi);
    let failure = enumerate_elements(max_length)
        .into_iter()
        .find(|t| pulled.eval(t) != phi.eval(t));
    CheckReport::new(
        "tstar_fixed",
        format!("length <= {max_length}"),
        failure.map(|t| Counterexample::Element { t }),
    )
}

pub fn is_tstar_fixed(phi: &Functional, max_length: usize) -> bool {
    tstar_check(phi, max_length).passed
}

/// `|⟨f, φ⟩| / sup_bound(φ)`, a lower bound for the quotient norm of `f`
/// modulo `J` once `φ` is `T*`-fixed.
///
/// Fixedness is checked up to `check_length`, which must exceed the longest
/// element in the support of `f`.
pub fn quotient_norm_lower(f: &Element, phi: &Functional, check_length: usize) -> Result<f64> {
    let required = f.max_length() + 1;
    if check_length < required {
        return Err(Error::CheckLengthTooShort {
            given: check_length,
            required,
        });
    }
    let report = tstar_check(phi, check_length);
    if let Some(Counterexample::Element { t }) = report.counterexample {
        return Err(Error::NotTStarFixed {
            length: check_length,
            at: t.to_string(),
        });
    }
    let value = pair(f, phi).abs();
    if value == 0.0 {
        return Ok(0.0);
    }
    Ok(value / phi.sup_bound)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub checks: Vec<CheckReport>,
    pub value_at_e: Scalar,
    /// `φ` vanishes on every element of the checked range.
    pub zero_on_range: bool,
}

impl TraceReport {
    /// All checks pass and `φ` is not identically zero on the range.
    pub fn is_nonzero_trace(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && !self.zero_on_range
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.check == name)
    }
}

fn eval_or_zero(phi: &Functional, t: &CuElement) -> Scalar {
    match t {
        CuElement::Diamond => Scalar::zero(),
        CuElement::Pair(m) => phi.eval(m),
    }
}

/// Finite-stage trace checks: `φ(uv) = φ(vu)`, the value `φ(e)`, and
/// `⟨δ_{s_i} # f0 # δ_{s_j*}, φ⟩ = 0`, all up to `max_length`.
pub fn trace_checks(phi: &Functional, max_length: usize) -> TraceReport {
    let elements = enumerate_elements(max_length);
    let range = format!("length <= {max_length}");

    let mut commutator = None;
    'outer: for u in &elements {
        for v in &elements {
            let uv = eval_or_zero(phi, &u.mul(v));
            let vu = eval_or_zero(phi, &v.mul(u));
            if uv != vu {
                commutator = Some(Counterexample::Pair {
                    u: u.clone(),
                    v: v.clone(),
                });
                break 'outer;
            }
        }
    }

    let value_at_e = phi.eval(&Monomial::identity());
    let at_e = (!value_at_e.is_zero()).then(|| Counterexample::Element {
        t: Monomial::identity(),
    });

    let words = enumerate_words_up_to(max_length);
    let mut generator = None;
    'gens: for i in &words {
        for j in &words {
            if !pair(&ideal_generator(i, j), phi).is_zero() {
                generator = Some(Counterexample::Generator {
                    i: i.clone(),
                    j: j.clone(),
                });
                break 'gens;
            }
        }
    }

    TraceReport {
        checks: vec![
            CheckReport::new("trace_property", range.clone(), commutator),
            CheckReport::new("vanishes_at_e", "e", at_e),
            CheckReport::new("annihilates_ideal_generators", format!("words of length <= {max_length}"), generator),
        ],
        value_at_e,
        zero_on_range: elements.iter().all(|t| phi.eval(t).is_zero()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_digits(s).unwrap()
    }

    fn m(i: &str, j: &str) -> Monomial {
        Monomial::new(w(i), w(j))
    }

    fn set(words: &[&str]) -> BTreeSet<Word> {
        words.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn mu_examples() {
        let f = set(&["1"]);
        assert_eq!(mu_eval(&f, &m("", "1").into()), Ok(Scalar::one()));
        assert_eq!(mu_eval(&f, &m("1", "11").into()), Ok(Scalar::ratio(1, 2)));
        assert_eq!(mu_eval(&f, &CuElement::identity()), Ok(Scalar::zero()));
        assert_eq!(mu_eval(&f, &CuElement::Diamond), Err(Error::Diamond));
        assert_eq!(mu_eval(&set(&["", "1"]), &CuElement::identity()), Err(Error::EmptyWordInIndexSet));
        assert_eq!(Functional::mu(set(&[""])), Err(Error::EmptyWordInIndexSet));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_eval(&m("1", "").into()), Ok(Scalar::one()));
        assert_eq!(tau_eval(&CuElement::identity()), Ok(Scalar::zero()));
        assert_eq!(tau_eval(&m("21", "2").into()), Ok(Scalar::one()));
        assert_eq!(tau_eval(&m("12", "1").into()), Ok(Scalar::zero()));
        assert_eq!(tau_eval(&CuElement::Diamond), Err(Error::Diamond));
    }

    #[test]
    fn pair_examples() {
        let f_set = set(&["11", "12", "22"]);
        let f: Element = f_set.iter().map(|k| (Monomial::co_isometry(k.clone()), Scalar::one())).collect();
        assert_eq!(pair(&f, &Functional::mu(f_set).unwrap()), Scalar::from_int(3));
        assert_eq!(pair(&Element::f0(), &Functional::tau()), Scalar::zero());
        assert_eq!(pair(&Element::zero(), &Functional::tau()), Scalar::zero());
    }

    #[test]
    fn push_t_examples() {
        let pushed = push_t(&Element::unit());
        assert_eq!(pushed, &Element::delta(m("1", "1")) + &Element::delta(m("2", "2")));
        assert_eq!(&Element::unit() - &pushed, Element::f0());
    }

    #[test]
    fn fixed_points() {
        assert!(is_tstar_fixed(&Functional::mu(set(&["1"])).unwrap(), 8));
        assert!(is_tstar_fixed(&Functional::tau(), 8));
        assert!(is_tstar_fixed(&Functional::zero(), 8));
        let dual_e = Functional::finite_support(Element::unit());
        assert!(!is_tstar_fixed(&dual_e, 1));
        let report = tstar_check(&dual_e, 1);
        assert_eq!(report.counterexample, Some(Counterexample::Element { t: Monomial::identity() }));
    }

    #[test]
    fn pull_tstar_bounds() {
        let pulled = pull_tstar(&Functional::tau());
        assert_eq!(pulled.sup_bound(), 2.0);
        for t in enumerate_elements(5) {
            assert_eq!(pulled.eval(&t), Functional::tau().eval(&t));
        }
    }

    #[test]
    fn quotient_norm_examples() {
        let f_set = set(&["11", "12", "21", "22"]);
        let f: Element = f_set.iter().map(|k| (Monomial::co_isometry(k.clone()), Scalar::one())).collect();
        let mu = Functional::mu(f_set).unwrap();
        assert_eq!(quotient_norm_lower(&f, &mu, 3), Ok(4.0));
        assert_eq!(
            quotient_norm_lower(&f, &mu, 2),
            Err(Error::CheckLengthTooShort { given: 2, required: 3 })
        );

        let h = Element::from_terms([
            (Monomial::s_star(1), Scalar::ratio(1, 2)),
            (Monomial::s_star(2), Scalar::ratio(1, 2)),
        ]);
        let mu3 = Functional::mu_all_words(3).unwrap();
        assert_eq!(quotient_norm_lower(&h.pow(3), &mu3, 4), Ok(1.0));
        assert_eq!(quotient_norm_lower(&Element::zero(), &mu3, 4), Ok(0.0));

        let dual_e = Functional::finite_support(Element::unit());
        assert!(matches!(
            quotient_norm_lower(&Element::unit(), &dual_e, 1),
            Err(Error::NotTStarFixed { length: 1, .. })
        ));
    }

    #[test]
    fn trace_check_examples() {
        let report = trace_checks(&Functional::tau(), 4);
        assert!(report.is_nonzero_trace());
        assert!(report.value_at_e.is_zero());

        let report = trace_checks(&Functional::mu(set(&["1"])).unwrap(), 2);
        let property = report.check("trace_property").unwrap();
        assert!(!property.passed);
        let Some(Counterexample::Pair { u, v }) = &property.counterexample else {
            panic!("expected a pair");
        };
        let mu = Functional::mu(set(&["1"])).unwrap();
        assert_ne!(eval_or_zero(&mu, &u.mul(v)), eval_or_zero(&mu, &v.mul(u)));

        let report = trace_checks(&Functional::zero(), 3);
        assert!(report.checks.iter().all(|c| c.passed));
        assert!(report.zero_on_range);
        assert!(!report.is_nonzero_trace());
    }

    #[test]
    fn report_json_shape() {
        let report = tstar_check(&Functional::finite_support(Element::unit()), 1);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["check"], "tstar_fixed");
        assert_eq!(json["passed"], false);
        assert_eq!(json["counterexample"]["t"]["i"], serde_json::json!([]));
        let ok = serde_json::to_value(tstar_check(&Functional::tau(), 2)).unwrap();
        assert!(ok.get("counterexample").is_none());
    }
}
