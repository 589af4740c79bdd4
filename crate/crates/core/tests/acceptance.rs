//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any failed.

mod support;

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use cu2_core::algebra::{
    factorize_identity, ideal_certificate, ideal_generator, in_ideal, Element, Scalar,
};
use cu2_core::functionals::{
    is_tstar_fixed, pair, quotient_norm_lower, tau_eval, trace_checks, Functional,
};
use cu2_core::rep::{
    apply_element, averaging_element, check_relations, isometry_check, norm_collapse_experiment,
    partition_norm_check, RepConfig, SparseVector,
};
use cu2_core::semigroup::{enumerate_elements, CuElement, Monomial};
use cu2_core::words::{enumerate_words, enumerate_words_up_to, Word};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;
use support::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn semigroup_oracle() -> Outcome {
    let elements = enumerate_elements(4);
    for u in &elements {
        for v in &elements {
            ensure(u.mul(v) == oracle_mul(u, v), || format!("{u} * {v}"))?;
        }
    }
    let short: Vec<CuElement> = enumerate_elements(2).into_iter().map(CuElement::from).collect();
    let mut triples = 0;
    for a in &short {
        for b in &short {
            for c in &short {
                ensure(a.mul(b).mul(c) == a.mul(&b.mul(c)), || format!("({a} {b}) {c}"))?;
                triples += 1;
            }
        }
    }
    Ok(format!(
        "{} pairs match the rewriting oracle, {triples} triples associate",
        elements.len().pow(2)
    ))
}

fn partition() -> Outcome {
    let elements = enumerate_elements(8);
    let mut hits: BTreeMap<Monomial, usize> = BTreeMap::new();
    let coreless: Vec<&Monomial> = elements.iter().filter(|t| t.is_without_symmetric_core()).collect();
    for v in &coreless {
        let depth = (8 - v.length()) / 2;
        for t in v.expansions(depth) {
            *hits.entry(t).or_default() += 1;
        }
    }
    for t in &elements {
        let (v, k) = t.symmetric_core();
        ensure(v.is_without_symmetric_core() && v.expand(&k) == *t, || format!("core of {t}"))?;
        ensure(hits.get(t) == Some(&1), || format!("{t} has {:?} representatives", hits.get(t)))?;
    }
    let small: Vec<&&Monomial> = coreless.iter().filter(|v| v.length() <= 4).collect();
    let mut owner: BTreeMap<Monomial, &Monomial> = BTreeMap::new();
    for v in &small {
        for t in v.expansions(4) {
            if let Some(prev) = owner.insert(t.clone(), v) {
                return Err(format!("{t} expands both {prev} and {v}"));
            }
        }
    }
    Ok(format!(
        "{} elements, each with exactly one coreless representative; {} coreless classes disjoint to depth 4",
        elements.len(),
        small.len()
    ))
}

fn f0_identities() -> Outcome {
    let f0 = Element::f0();
    ensure(f0.sharp(&f0) == f0, || "f0 # f0 != f0".into())?;
    ensure(f0.involution() == f0, || "f0* != f0".into())?;
    let words: Vec<Word> = enumerate_words_up_to(4).into_iter().filter(|k| !k.is_empty()).collect();
    for k in &words {
        let left = Element::delta(Monomial::co_isometry(k.clone())).sharp(&f0);
        let right = f0.sharp(&Element::delta(Monomial::isometry(k.clone())));
        ensure(left.is_zero() && right.is_zero(), || format!("k = {k}"))?;
    }
    Ok(format!("idempotent, self-adjoint, annihilated by {} words", words.len()))
}

fn membership() -> Outcome {
    let mut rng = rng(4);
    for _ in 0..100 {
        let f = random_ideal_element(&mut rng);
        ensure(in_ideal(&f), || format!("{f} not recognised"))?;
        ensure(oracle_in_ideal(&f), || format!("oracle rejects {f}"))?;
        let cert = ideal_certificate(&f).map_err(|e| format!("{f}: {e}"))?;
        ensure(cert.expand() == f, || format!("certificate of {f} does not expand back"))?;
    }
    let mut min_margin = f64::INFINITY;
    for _ in 0..100 {
        let f = random_non_ideal_element(&mut rng);
        ensure(!in_ideal(&f), || format!("{f} wrongly in J"))?;
        let w = factorize_identity(&f).map_err(|e| format!("{f}: {e}"))?;
        ensure(w.g.sharp(&f).sharp(&w.h) == Element::unit(), || format!("witness for {f}"))?;
        let floor = 1.0 / f.l1_norm();
        ensure(w.cost >= floor, || format!("cost {} < {floor} for {f}", w.cost))?;
        min_margin = min_margin.min(w.cost * f.l1_norm());
    }
    Ok(format!("100 certificates and 100 witnesses exact; min cost * |f| = {min_margin}"))
}

fn quotient_norms() -> Outcome {
    let pool: Vec<Word> = enumerate_words(2).into_iter().chain(enumerate_words(3)).collect();
    let mut count = 0;
    for mask in 0u32..(1 << pool.len()) {
        if mask.count_ones() > 8 {
            continue;
        }
        let f_set: BTreeSet<Word> = (0..pool.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| pool[b].clone())
            .collect();
        let size = f_set.len();
        let f: Element = f_set
            .iter()
            .map(|k| (Monomial::co_isometry(k.clone()), Scalar::one()))
            .collect();
        let mu = Functional::mu(f_set).map_err(|e| e.to_string())?;
        let lower = quotient_norm_lower(&f, &mu, f.max_length() + 1).map_err(|e| e.to_string())?;
        let upper = f.l1_norm_exact().ok_or("non-real norm")?;
        ensure(lower == size as f64, || format!("lower {lower} for |F| = {size}"))?;
        ensure(upper == BigRational::from_integer(size.into()), || format!("upper {upper}"))?;
        ensure(pair(&f, &mu) == Scalar::from_int(size as i64), || "pairing".into())?;
        count += 1;
    }
    Ok(format!("{count} index sets: lower bound = l1 norm = |F|"))
}

fn fixed_points() -> Outcome {
    let pool: Vec<Word> = enumerate_words(1).into_iter().chain(enumerate_words(2)).collect();
    for mask in 0u32..(1 << pool.len()) {
        let f_set: BTreeSet<Word> = (0..pool.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| pool[b].clone())
            .collect();
        let label = format!("{f_set:?}");
        let mu = Functional::mu(f_set).map_err(|e| e.to_string())?;
        ensure(is_tstar_fixed(&mu, 8), || format!("mu_F with F = {label}"))?;
    }
    ensure(is_tstar_fixed(&Functional::tau(), 8), || "tau".into())?;
    Ok(format!("{} functionals mu_F and tau fixed on length <= 8", 1 << pool.len()))
}

fn trace_suite() -> Outcome {
    let tau = Functional::tau();
    let report = trace_checks(&tau, 4);
    for check in &report.checks {
        ensure(check.passed, || format!("{} failed: {:?}", check.check, check.counterexample))?;
    }
    ensure(!report.zero_on_range, || "tau vanishes on the range".into())?;
    ensure(tau_eval(&CuElement::identity()) == Ok(Scalar::zero()), || "tau(e)".into())?;
    ensure(tau_eval(&Monomial::s(1).into()) == Ok(Scalar::one()), || "tau(s1)".into())?;
    for i in enumerate_words_up_to(3) {
        for j in enumerate_words_up_to(3) {
            ensure(pair(&ideal_generator(&i, &j), &tau).is_zero(), || format!("generator {i}, {j}"))?;
        }
    }
    let n = enumerate_elements(4).len();
    Ok(format!("trace property on {} pairs; tau(e) = 0, tau(s1) = 1; generators annihilated", n * n))
}

fn relations() -> Outcome {
    for report in check_relations(1000).map_err(|e| e.to_string())? {
        ensure(report.passed, || format!("{}: {:?}", report.check, report.counterexample))?;
    }
    let mut rng = rng(8);
    for _ in 0..100 {
        let j = random_ideal_element(&mut rng);
        for n in 1..=64 {
            let image = apply_element(&j, &SparseVector::basis(n).unwrap()).map_err(|e| e.to_string())?;
            let zero = image.entries().all(|(_, v)| v.norm() <= 1e-12);
            ensure(zero, || format!("{j} on e_{n}"))?;
        }
    }
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let f = random_element(&mut rng, 4, 4);
        let g = random_element(&mut rng, 4, 4);
        let fg = f.sharp(&g);
        for n in 1..=100 {
            let x = SparseVector::basis(n).unwrap();
            let lhs = apply_element(&fg, &x).map_err(|e| e.to_string())?;
            let rhs = apply_element(&f, &apply_element(&g, &x).unwrap()).map_err(|e| e.to_string())?;
            let diff = lhs.minus(&rhs).entries().map(|(_, v)| v.norm()).fold(0.0, f64::max);
            worst = worst.max(diff);
            ensure(diff <= 1e-12, || format!("f = {f}, g = {g}, n = {n}"))?;
        }
    }
    Ok(format!("five relations on e_1..e_1000; 100 ideal elements act as 0; homomorphism error {worst:e}"))
}

fn random_vector(rng: &mut impl Rng) -> SparseVector {
    SparseVector::from_entries((0..20).map(|_| {
        let n = rng.gen_range(1..=1_000_000u64);
        (n, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }))
    .unwrap()
}

fn norm_lemmas() -> Outcome {
    let mut rng = rng(9);
    let vectors: Vec<SparseVector> = (0..20).map(|_| random_vector(&mut rng)).collect();
    let js = enumerate_words_up_to(2);
    let mut checks = 0;
    for p in [1.0, 1.5, 2.0, 3.0] {
        let cfg = RepConfig::new(p).map_err(|e| e.to_string())?;
        for x in &vectors {
            for alpha in 0..=6 {
                let r = partition_norm_check(x, alpha, &cfg).map_err(|e| e.to_string())?;
                ensure(r.passed, || format!("partition {}: {:?}", r.range, r.measured))?;
                checks += 1;
            }
            for alpha in 0..=4 {
                for j in &js {
                    for r in isometry_check(alpha, j, x, &cfg).map_err(|e| e.to_string())? {
                        ensure(r.passed, || format!("{} {}: {:?}", r.check, r.range, r.measured))?;
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} norm checks within relative 1e-10"))
}

fn norm_collapse() -> Outcome {
    let h = averaging_element();
    let mut power = Element::unit();
    for n in 1..=12 {
        power = power.sharp(&h);
        let mu = Functional::mu_all_words(n).map_err(|e| e.to_string())?;
        ensure(pair(&power, &mu) == Scalar::one(), || format!("pairing at N = {n}"))?;
        ensure(
            power.l1_norm_exact() == Some(BigRational::from_integer(1.into())),
            || format!("l1 norm at N = {n}"),
        )?;
    }
    let mut summary = Vec::new();
    for p in [1.0, 2.0] {
        let cfg = RepConfig::new(p).map_err(|e| e.to_string())?;
        let rows = norm_collapse_experiment(12, &cfg).map_err(|e| e.to_string())?;
        ensure(rows.len() == 12, || "row count".into())?;
        for r in &rows {
            let expected = (-(r.n as f64) / p).exp2();
            ensure(r.quotient_lower == 1.0, || format!("p = {p}, N = {}: lower {}", r.n, r.quotient_lower))?;
            ensure((r.rep_ratio - expected).abs() <= 1e-12, || {
                format!("p = {p}, N = {}: ratio {} vs {expected}", r.n, r.rep_ratio)
            })?;
        }
        summary.push(format!("p = {p}: ratio at N = 12 is {:e}", rows[11].rep_ratio));
    }
    Ok(format!("quotient norm 1 for N = 1..12; {}", summary.join(", ")))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("semigroup oracle equivalence", semigroup_oracle),
        ("partition into symmetric classes", partition),
        ("f0 identities", f0_identities),
        ("membership and certificates", membership),
        ("quotient norms of sums of co-isometries", quotient_norms),
        ("T* fixed points", fixed_points),
        ("trace suite", trace_suite),
        ("representation relations", relations),
        ("norm partition and isometry lemmas", norm_lemmas),
        ("norm collapse", norm_collapse),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut stdout = std::io::stdout().lock();
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let secs = start.elapsed().as_secs_f64();
        let line = match outcome {
            Ok(detail) => format!("PASS {:>2} {name} ({secs:.2}s): {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                format!("FAIL {:>2} {name} ({secs:.2}s): {detail}", k + 1)
            }
        };
        writeln!(stdout, "{line}").unwrap();
    }
    writeln!(stdout, "{} of {} criteria passed", criteria.len() - failures, criteria.len()).unwrap();
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
