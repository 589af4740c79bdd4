//! The spatial representation of `A/J` on `ℓᵖ`.
//!
//! `A_i e_n = e_{(n+i-1)/2}` when `n + i - 1` is even (else `0`) and
//! `B_i e_n = e_{2n-i+1}`. For a word `i` of length `α` the composites act by
//! `B_i e_n = e_{σ_i(n)}` and `A_{i*} e_n = e_{ρ_i(n)}` (or `0` when `ρ_i(n)` is
//! not an integer), and `δ_{s_i s_j*}` acts as `B_i A_{j*}`. Index arithmetic
//! is exact; only the coefficients are floating point.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Scalar};
use crate::error::{Error, Result};
use crate::functionals::{quotient_norm_lower, Functional};
use crate::report::{CheckReport, Counterexample};
use crate::semigroup::Monomial;
use crate::words::{enumerate_words, Word};

/// Entries with modulus at most this are dropped.
pub const ZERO_TOLERANCE: f64 = 1e-15;

/// Relative tolerance of the norm checks.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// A finitely supported vector in `ℓᵖ`, indexed from 1.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseVector {
    entries: BTreeMap<u64, Complex64>,
}

impl SparseVector {
    pub fn zero() -> Self {
        SparseVector::default()
    }

    /// `e_n`.
    pub fn basis(n: u64) -> Result<Self> {
        let mut x = SparseVector::zero();
        x.add(n, Complex64::new(1.0, 0.0))?;
        Ok(x)
    }

    /// `e_1 + ... + e_n`.
    pub fn block(n: u64) -> Self {
        SparseVector {
            entries: (1..=n).map(|k| (k, Complex64::new(1.0, 0.0))).collect(),
        }
    }

    pub fn from_entries<I: IntoIterator<Item = (u64, Complex64)>>(entries: I) -> Result<Self> {
        let mut x = SparseVector::zero();
        for (n, v) in entries {
            x.add(n, v)?;
        }
        Ok(x)
    }

    /// Adds `v` to the entry at `n`.
    pub fn add(&mut self, n: u64, v: Complex64) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidIndex(n));
        }
        self.add_at(n, v);
        Ok(())
    }

    fn add_at(&mut self, n: u64, v: Complex64) {
        let entry = self.entries.entry(n).or_insert(Complex64::new(0.0, 0.0));
        *entry += v;
        if entry.norm() <= ZERO_TOLERANCE {
            self.entries.remove(&n);
        }
    }

    pub fn get(&self, n: u64) -> Complex64 {
        self.entries.get(&n).copied().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.entries.iter().map(|(n, v)| (*n, *v))
    }

    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> SparseVector {
        let mut out = SparseVector::zero();
        for (n, v) in self.entries() {
            out.add_at(n, v * c);
        }
        out
    }

    pub fn plus(&self, other: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        for (n, v) in other.entries() {
            out.add_at(n, v);
        }
        out
    }

    pub fn minus(&self, other: &SparseVector) -> SparseVector {
        self.plus(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Moves every entry to `map(n)`, dropping it when the map gives `None`.
    fn reindex(&self, map: impl Fn(u64) -> Result<Option<u64>>) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for (n, v) in self.entries() {
            if let Some(m) = map(n)? {
                out.add_at(m, v);
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    n: u64,
    re: f64,
    im: f64,
}

impl Serialize for SparseVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.entries().map(|(n, v)| EntryRepr { n, re: v.re, im: v.im }))
    }
}

impl<'de> Deserialize<'de> for SparseVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<EntryRepr>::deserialize(deserializer)?;
        SparseVector::from_entries(entries.into_iter().map(|e| (e.n, Complex64::new(e.re, e.im))))
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepConfig {
    p: f64,
}

impl RepConfig {
    pub fn new(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidExponent(p));
        }
        Ok(RepConfig { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

impl Default for RepConfig {
    fn default() -> Self {
        RepConfig { p: 1.0 }
    }
}

fn check_letter(letter: u8) -> Result<()> {
    match letter {
        1 | 2 => Ok(()),
        _ => Err(Error::InvalidLetter(letter)),
    }
}

pub fn apply_a(letter: u8, x: &SparseVector) -> Result<SparseVector> {
    check_letter(letter)?;
    let shift = u64::from(letter) - 1;
    x.reindex(|n| {
        let m = n.checked_add(shift).ok_or(Error::IndexOverflow(1))?;
        Ok((m % 2 == 0).then_some(m / 2))
    })
}

pub fn apply_b(letter: u8, x: &SparseVector) -> Result<SparseVector> {
    check_letter(letter)?;
    apply_b_word(&Word::letter(letter), x)
}

fn power_of_two(alpha: usize) -> Result<u64> {
    if alpha >= 64 {
        return Err(Error::IndexOverflow(alpha));
    }
    Ok(1 << alpha)
}

fn check_index(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidIndex(n))
    } else {
        Ok(())
    }
}

/// `(2^α, θ(i))` for a word of length `α`, where `Σ 2^(l-1) i_l = θ(i) + 2^α - 1`.
fn index_constants(i: &Word) -> Result<(u64, u64)> {
    Ok((power_of_two(i.len())?, i.theta()?))
}

/// `ρ_i(n) = 2^-α (n + Σ 2^(l-1) i_l - 2^α + 1) = (n + θ(i)) / 2^α`.
pub fn rho(i: &Word, n: u64) -> Result<Ratio<u64>> {
    check_index(n)?;
    let (scale, theta) = index_constants(i)?;
    let numer = n.checked_add(theta).ok_or(Error::IndexOverflow(i.len()))?;
    Ok(Ratio::new(numer, scale))
}

fn rho_with(scale: u64, theta: u64, n: u64, alpha: usize) -> Result<Option<u64>> {
    let numer = n.checked_add(theta).ok_or(Error::IndexOverflow(alpha))?;
    Ok((numer % scale == 0).then(|| numer / scale))
}

/// `ρ_i(n)` when it is an integer, i.e. the index of `A_{i*} e_n`.
pub fn rho_index(i: &Word, n: u64) -> Result<Option<u64>> {
    check_index(n)?;
    let (scale, theta) = index_constants(i)?;
    rho_with(scale, theta, n, i.len())
}

fn sigma_with(scale: u64, theta: u64, n: u64, alpha: usize) -> Result<u64> {
    // 2^α n ≥ 2^α > θ, so the subtraction cannot underflow.
    scale
        .checked_mul(n)
        .map(|m| m - theta)
        .ok_or(Error::IndexOverflow(alpha))
}

/// `σ_i(n) = 2^α n - Σ 2^(l-1) i_l + 2^α - 1 = 2^α n - θ(i)`, the index of `B_i e_n`.
pub fn sigma(i: &Word, n: u64) -> Result<u64> {
    check_index(n)?;
    let (scale, theta) = index_constants(i)?;
    sigma_with(scale, theta, n, i.len())
}

/// `A_{i*} = A_{i_α} ⋯ A_{i_1}`.
pub fn apply_a_star(i: &Word, x: &SparseVector) -> Result<SparseVector> {
    let (scale, theta) = index_constants(i)?;
    x.reindex(|n| rho_with(scale, theta, n, i.len()))
}

/// `B_i = B_{i_1} ⋯ B_{i_α}`.
pub fn apply_b_word(i: &Word, x: &SparseVector) -> Result<SparseVector> {
    let (scale, theta) = index_constants(i)?;
    x.reindex(|n| sigma_with(scale, theta, n, i.len()).map(Some))
}

/// `Θ_p(δ_t) x` for `t = s_i s_j*`.
pub fn apply_monomial(t: &Monomial, x: &SparseVector) -> Result<SparseVector> {
    apply_b_word(t.i(), &apply_a_star(t.j(), x)?)
}

/// `Θ_p(f) x`. The action does not depend on `p`.
pub fn apply_element(f: &Element, x: &SparseVector) -> Result<SparseVector> {
    // Entries of x grouped by n mod 2^α, for each co-isometry length α in f.
    let mut residues: BTreeMap<usize, HashMap<u64, Vec<(u64, Complex64)>>> = BTreeMap::new();
    let mut out = SparseVector::zero();
    for (t, c) in f.terms() {
        let (a_scale, a_theta) = index_constants(t.j())?;
        let (b_scale, b_theta) = index_constants(t.i())?;
        let groups = residues.entry(t.j().len()).or_insert_with(|| {
            let mut groups: HashMap<u64, Vec<(u64, Complex64)>> = HashMap::new();
            for (n, v) in x.entries() {
                groups.entry(n % a_scale).or_default().push((n, v));
            }
            groups
        });
        let c = c.to_complex();
        let wanted = (a_scale - a_theta) % a_scale;
        for &(n, v) in groups.get(&wanted).into_iter().flatten() {
            let m = rho_with(a_scale, a_theta, n, t.j().len())?.expect("residue class is divisible");
            out.add_at(sigma_with(b_scale, b_theta, m, t.i().len())?, v * c);
        }
    }
    Ok(out)
}

pub fn lp_norm(x: &SparseVector, cfg: &RepConfig) -> f64 {
    let p = cfg.p();
    if p == 1.0 {
        return x.entries().map(|(_, v)| v.norm()).sum();
    }
    x.entries().map(|(_, v)| v.norm().powf(p)).sum::<f64>().powf(p.recip())
}

fn lp_norm_pow(x: &SparseVector, cfg: &RepConfig) -> f64 {
    x.entries().map(|(_, v)| v.norm().powf(cfg.p())).sum()
}

fn within(lhs: f64, rhs: f64) -> bool {
    (lhs - rhs).abs() <= NORM_TOLERANCE * rhs.abs().max(lhs.abs())
}

/// `A1 B1 = I = A2 B2`, `A1 B2 = 0 = A2 B1`, `B1 A1 + B2 A2 = I`, on `e_n` for `n ≤ n_max`.
pub fn check_relations(n_max: u64) -> Result<Vec<CheckReport>> {
    type Relation = fn(&SparseVector) -> Result<SparseVector>;
    let relations: [(&str, Relation, bool); 5] = [
        ("A1 B1 = I", |x| apply_a(1, &apply_b(1, x)?), true),
        ("A2 B2 = I", |x| apply_a(2, &apply_b(2, x)?), true),
        ("A1 B2 = 0", |x| apply_a(1, &apply_b(2, x)?), false),
        ("A2 B1 = 0", |x| apply_a(2, &apply_b(1, x)?), false),
        (
            "B1 A1 + B2 A2 = I",
            |x| Ok(apply_b(1, &apply_a(1, x)?)?.plus(&apply_b(2, &apply_a(2, x)?)?)),
            true,
        ),
    ];
    let range = format!("e_n, 1 <= n <= {n_max}");
    relations
        .iter()
        .map(|(name, op, identity)| {
            let mut failure = None;
            for n in 1..=n_max {
                let x = SparseVector::basis(n)?;
                let expected = if *identity { x.clone() } else { SparseVector::zero() };
                if op(&x)? != expected {
                    failure = Some(Counterexample::Index { n });
                    break;
                }
            }
            Ok(CheckReport::new(name, range.clone(), failure))
        })
        .collect()
}

/// `Σ_{k ∈ I_α} ‖A_{k*} x‖ᵖ = ‖x‖ᵖ`.
pub fn partition_norm_check(x: &SparseVector, alpha: usize, cfg: &RepConfig) -> Result<CheckReport> {
    let mut lhs = 0.0;
    for k in enumerate_words(alpha) {
        lhs += lp_norm_pow(&apply_a_star(&k, x)?, cfg);
    }
    let rhs = lp_norm_pow(x, cfg);
    Ok(CheckReport::measured(
        "partition_norm",
        format!("alpha = {alpha}, p = {}", cfg.p()),
        lhs,
        rhs,
        within(lhs, rhs),
    ))
}

/// `‖Σ_{k ∈ I_α} B_{kj} A_{k*} x‖ = ‖x‖` and `‖Σ_{k ∈ I_α} B_k A_{(kj)*} x‖ ≤ ‖x‖`.
pub fn isometry_check(alpha: usize, j: &Word, x: &SparseVector, cfg: &RepConfig) -> Result<Vec<CheckReport>> {
    let mut isometry = SparseVector::zero();
    let mut contraction = SparseVector::zero();
    for k in enumerate_words(alpha) {
        let kj = k.concat(j);
        isometry = isometry.plus(&apply_b_word(&kj, &apply_a_star(&k, x)?)?);
        contraction = contraction.plus(&apply_b_word(&k, &apply_a_star(&kj, x)?)?);
    }
    let norm = lp_norm(x, cfg);
    let range = format!("alpha = {alpha}, j = {j}, p = {}", cfg.p());
    let iso = lp_norm(&isometry, cfg);
    let con = lp_norm(&contraction, cfg);
    Ok(vec![
        CheckReport::measured("isometry", range.clone(), iso, norm, within(iso, norm)),
        CheckReport::measured("contraction", range, con, norm, con <= norm * (1.0 + NORM_TOLERANCE)),
    ])
}

/// `h = (δ_{s1*} + δ_{s2*}) / 2`.
pub fn averaging_element() -> Element {
    Element::from_terms([
        (Monomial::s_star(1), Scalar::ratio(1, 2)),
        (Monomial::s_star(2), Scalar::ratio(1, 2)),
    ])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapseRow {
    #[serde(rename = "N")]
    pub n: usize,
    /// Lower bound for the quotient norm of `hᴺ`, from `μ_{I_N}`.
    pub quotient_lower: f64,
    /// `‖Θ_p(hᴺ) x‖ / ‖x‖` for `x = e_1 + ... + e_{2^N}`.
    pub rep_ratio: f64,
    /// `2^(-N/p)`.
    pub bound: f64,
}

/// Compares the quotient norm of `hᴺ` with the norm of its image in `B(ℓᵖ)`
/// for `N = 1..=n_max`.
pub fn norm_collapse_experiment(n_max: usize, cfg: &RepConfig) -> Result<Vec<CollapseRow>> {
    let h = averaging_element();
    let mut power = Element::unit();
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        power = power.sharp(&h);
        let mu = Functional::mu_all_words(n)?;
        let quotient_lower = quotient_norm_lower(&power, &mu, n + 1)?;
        let x = SparseVector::block(power_of_two(n)?);
        let rep_ratio = lp_norm(&apply_element(&power, &x)?, cfg) / lp_norm(&x, cfg);
        rows.push(CollapseRow {
            n,
            quotient_lower,
            rep_ratio,
            bound: (-(n as f64) / cfg.p()).exp2(),
        });
    }
    Ok(rows)
}

/// CSV with header `N,quotient_lower,rep_ratio,bound`.
pub fn collapse_csv(rows: &[CollapseRow]) -> String {
    let mut out = String::from("N,quotient_lower,rep_ratio,bound\n");
    for r in rows {
        out.push_str(&format!("{},{},{:e},{:e}\n", r.n, r.quotient_lower, r.rep_ratio, r.bound));
    }
    out
}
