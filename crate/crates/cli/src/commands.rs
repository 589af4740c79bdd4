//! Subcommand implementations. Each returns a JSON payload and a text rendering.

use std::collections::BTreeSet;

use cu2_core::algebra::{
    factorize_identity, ideal_certificate, in_ideal, Element, FactorizationWitness, IdealCertificate,
};
use cu2_core::functionals::{pair, quotient_norm_lower, trace_checks, tstar_check, Functional};
use cu2_core::report::CheckReport;
use cu2_core::rep::{
    apply_element, check_relations, collapse_csv, isometry_check, lp_norm, norm_collapse_experiment,
    partition_norm_check, RepConfig, SparseVector,
};
use cu2_core::words::{enumerate_words_up_to, Word};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::parse::{parse_element, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Argument(String),
    #[error("{0}")]
    Domain(#[from] cu2_core::Error),
    #[error("cannot write output: {0}")]
    Io(String),
}

impl CliError {
    /// 1 for domain and I/O errors, 2 for malformed input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Argument(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::Argument(_) => "ArgumentError",
            CliError::Domain(e) => e.name(),
            CliError::Io(_) => "IoError",
        }
    }

    pub fn payload(&self) -> Value {
        let mut v = json!({ "error": self.name(), "message": self.to_string() });
        if let CliError::Parse(p) = self {
            v["offset"] = json!(p.offset);
            v["expected"] = json!(p.expected);
        }
        v
    }
}

pub type CliResult = Result<Output, CliError>;

pub struct Output {
    pub json: Value,
    pub text: String,
}

fn element_json(f: &Element) -> Value {
    json!({ "expression": f.to_string(), "terms": serde_json::to_value(f).unwrap()["terms"] })
}

fn report_line(r: &CheckReport) -> String {
    let mut line = format!("{} {} [{}]", if r.passed { "PASS" } else { "FAIL" }, r.check, r.range);
    if let Some(c) = &r.counterexample {
        line.push_str(&format!(" counterexample: {}", serde_json::to_string(c).unwrap()));
    }
    if let Some(m) = &r.measured {
        line.push_str(&format!(" lhs = {:e}, rhs = {:e}", m.lhs, m.rhs));
    }
    line
}

fn reports_text(reports: &[CheckReport]) -> String {
    reports.iter().map(report_line).collect::<Vec<_>>().join("\n")
}

/// `tau`, `zero`, `mu:<w>,<w>,...`, `mu-all:<alpha>` or `values:<expr>`.
pub fn parse_functional(arg: &str) -> Result<Functional, CliError> {
    let arg = arg.trim();
    match arg.split_once(':') {
        None if arg == "tau" => Ok(Functional::tau()),
        None if arg == "zero" => Ok(Functional::zero()),
        Some(("mu", words)) => {
            let set = if words.trim().is_empty() {
                BTreeSet::new()
            } else {
                words
                    .split(',')
                    .map(|w| Word::from_digits(w.trim()).map_err(|e| CliError::Argument(e.to_string())))
                    .collect::<Result<BTreeSet<Word>, _>>()?
            };
            Ok(Functional::mu(set)?)
        }
        Some(("mu-all", alpha)) => {
            let alpha: usize = alpha
                .trim()
                .parse()
                .map_err(|_| CliError::Argument(format!("bad word length {alpha:?}")))?;
            Ok(Functional::mu_all_words(alpha)?)
        }
        Some(("values", expr)) => Ok(Functional::finite_support(parse_element(expr)?)),
        _ => Err(CliError::Argument(format!(
            "unknown functional {arg:?}: use tau, zero, mu:<words>, mu-all:<n> or values:<expr>"
        ))),
    }
}

/// `n:re[:im]` entries separated by commas, or `block:N` for `e_1 + ... + e_N`.
pub fn parse_vector(arg: &str) -> Result<SparseVector, CliError> {
    let bad = |what: &str| CliError::Argument(format!("bad vector entry {what:?}: use n:re[:im] or block:N"));
    if let Some(n) = arg.trim().strip_prefix("block:") {
        let n: u64 = n.trim().parse().map_err(|_| bad(arg))?;
        return Ok(SparseVector::block(n));
    }
    let mut entries = Vec::new();
    for entry in arg.split(',').filter(|e| !e.trim().is_empty()) {
        let parts: Vec<&str> = entry.trim().split(':').collect();
        let (n, re, im) = match parts.as_slice() {
            [n, re] => (n, re, "0"),
            [n, re, im] => (n, re, *im),
            _ => return Err(bad(entry)),
        };
        let n: u64 = n.parse().map_err(|_| bad(entry))?;
        let re: f64 = re.parse().map_err(|_| bad(entry))?;
        let im: f64 = im.parse().map_err(|_| bad(entry))?;
        entries.push((n, Complex64::new(re, im)));
    }
    Ok(SparseVector::from_entries(entries)?)
}

pub fn mul(a: &str, b: &str) -> CliResult {
    let (f, g) = (parse_element(a)?, parse_element(b)?);
    let product = f.sharp(&g);
    Ok(Output {
        json: json!({ "command": "mul", "result": element_json(&product) }),
        text: product.to_string(),
    })
}

pub fn star(a: &str) -> CliResult {
    let f = parse_element(a)?.involution();
    Ok(Output {
        json: json!({ "command": "star", "result": element_json(&f) }),
        text: f.to_string(),
    })
}

pub fn norm(a: &str) -> CliResult {
    let f = parse_element(a)?;
    let exact = f.l1_norm_exact().map(|r| cu2_core::algebra::format_rational(&r));
    let value = f.l1_norm();
    Ok(Output {
        json: json!({ "command": "norm", "element": element_json(&f), "l1_norm": value, "l1_norm_exact": exact }),
        text: match &exact {
            Some(r) => format!("l1_norm: {value} ({r})"),
            None => format!("l1_norm: {value}"),
        },
    })
}

pub fn membership(a: &str) -> CliResult {
    let f = parse_element(a)?;
    let member = in_ideal(&f);
    Ok(Output {
        json: json!({ "command": "membership", "element": element_json(&f), "in_ideal": member }),
        text: format!("in_ideal: {member}"),
    })
}

pub fn certificate(a: &str) -> CliResult {
    let f = parse_element(a)?;
    let cert = ideal_certificate(&f)?;
    // Re-check the certificate as a consumer would see it.
    let encoded = serde_json::to_value(&cert).unwrap();
    let loaded: IdealCertificate = serde_json::from_value(encoded.clone()).unwrap();
    if !loaded.verifies(&f) {
        return Err(cu2_core::Error::CertificateMismatch.into());
    }
    let mut text: Vec<String> = loaded
        .terms
        .iter()
        .map(|t| format!("{} * s({})#f0#s({})*  [i = {}, j = {}, m = {}]", t.c, t.i.concat(&t.m), t.j.concat(&t.m), t.i, t.j, t.m))
        .collect();
    text.push(format!("terms: {}", loaded.terms.len()));
    text.push("verified: true".into());
    Ok(Output {
        json: json!({ "command": "certificate", "element": element_json(&f), "certificate": encoded, "verified": true }),
        text: text.join("\n"),
    })
}

fn verified_witness(f: &Element) -> Result<FactorizationWitness, CliError> {
    let w = factorize_identity(f)?;
    let loaded: FactorizationWitness = serde_json::from_value(serde_json::to_value(&w).unwrap()).unwrap();
    if !loaded.verifies(f) {
        return Err(cu2_core::Error::WitnessMismatch.into());
    }
    Ok(loaded)
}

pub fn factorize(a: &str) -> CliResult {
    let f = parse_element(a)?;
    let w = verified_witness(&f)?;
    let text = format!(
        "g: {}\nh: {}\ncost: {}\nclass: {}\nbranch: {}\nz: {}\nverified: true",
        w.g, w.h, w.cost, w.trace.class, w.trace.extended_branch, w.trace.z
    );
    Ok(Output {
        json: json!({
            "command": "factorize",
            "element": element_json(&f),
            "g": element_json(&w.g),
            "h": element_json(&w.h),
            "cost": w.cost,
            "trace": serde_json::to_value(&w.trace).unwrap(),
            "verified": true,
        }),
        text,
    })
}

pub fn cpi_bound(a: &str) -> CliResult {
    let f = parse_element(a)?;
    let w = verified_witness(&f)?;
    Ok(Output {
        json: json!({ "command": "cpi-bound", "element": element_json(&f), "upper_bound": w.cost, "verified": true }),
        text: format!("upper_bound: {}\nverified: true", w.cost),
    })
}

pub fn pairing(a: &str, functional: &str) -> CliResult {
    let f = parse_element(a)?;
    let phi = parse_functional(functional)?;
    let value = pair(&f, &phi);
    Ok(Output {
        json: json!({ "command": "pair", "element": element_json(&f), "value": value }),
        text: format!("pair: {value}"),
    })
}

pub fn qnorm_lower(a: &str, functional: &str, max_length: Option<usize>) -> CliResult {
    let f = parse_element(a)?;
    let phi = parse_functional(functional)?;
    let length = max_length.unwrap_or(f.max_length() + 1);
    let lower = quotient_norm_lower(&f, &phi, length)?;
    let upper = f.l1_norm();
    Ok(Output {
        json: json!({
            "command": "qnorm-lower",
            "element": element_json(&f),
            "lower": lower,
            "upper": upper,
            "check_length": length,
        }),
        text: format!("lower: {lower}\nupper: {upper}\nchecked up to length {length}"),
    })
}

pub fn trace_check(functional: &str, max_length: usize) -> CliResult {
    let phi = parse_functional(functional)?;
    let report = trace_checks(&phi, max_length);
    let mut text = reports_text(&report.checks);
    text.push_str(&format!("\nvalue at e: {}", report.value_at_e));
    if report.zero_on_range {
        text.push_str(&format!("\nwarning: functional vanishes on all elements of length <= {max_length}"));
    }
    Ok(Output {
        json: json!({
            "command": "trace-check",
            "checks": report.checks,
            "value_at_e": report.value_at_e,
            "zero_on_range": report.zero_on_range,
            "passed": report.is_nonzero_trace(),
        }),
        text,
    })
}

pub fn tstar(functional: &str, max_length: usize) -> CliResult {
    let phi = parse_functional(functional)?;
    let report = tstar_check(&phi, max_length);
    Ok(Output {
        text: report_line(&report),
        json: json!({ "command": "tstar-check", "checks": [report] }),
    })
}

pub fn rep_apply(a: &str, vector: &str, p: f64) -> CliResult {
    let f = parse_element(a)?;
    let x = parse_vector(vector)?;
    let cfg = RepConfig::new(p)?;
    let y = apply_element(&f, &x)?;
    let entries: Vec<String> = y
        .entries()
        .map(|(n, v)| if v.im == 0.0 { format!("{n}:{}", v.re) } else { format!("{n}:{}:{}", v.re, v.im) })
        .collect();
    let (norm_in, norm_out) = (lp_norm(&x, &cfg), lp_norm(&y, &cfg));
    Ok(Output {
        json: json!({
            "command": "rep-apply",
            "element": element_json(&f),
            "p": p,
            "input": x,
            "result": y,
            "input_norm": norm_in,
            "result_norm": norm_out,
        }),
        text: format!("result: {}\nnorm: {norm_out} (input {norm_in})", if entries.is_empty() { "0".into() } else { entries.join(",") }),
    })
}

fn random_vector(rng: &mut impl Rng) -> SparseVector {
    let entries = (0..20).map(|_| {
        (rng.gen_range(1..=1_000_000u64), Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    });
    SparseVector::from_entries(entries).expect("indices start at 1")
}

/// The first failing report, or a passing summary over `range`.
fn summarize(name: &str, range: String, reports: Vec<CheckReport>) -> CheckReport {
    reports
        .into_iter()
        .find(|r| !r.passed)
        .unwrap_or_else(|| CheckReport::new(name, range, None))
}

pub fn rep_check(n_max: u64, p: f64, seed: u64) -> CliResult {
    let cfg = RepConfig::new(p)?;
    let mut reports = check_relations(n_max)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vectors: Vec<SparseVector> = (0..5).map(|_| random_vector(&mut rng)).collect();
    let mut partition = Vec::new();
    let mut isometry = Vec::new();
    let mut contraction = Vec::new();
    for x in &vectors {
        for alpha in 0..=6 {
            partition.push(partition_norm_check(x, alpha, &cfg)?);
        }
        for alpha in 0..=4 {
            for j in enumerate_words_up_to(2) {
                let mut pair = isometry_check(alpha, &j, x, &cfg)?.into_iter();
                isometry.extend(pair.next());
                contraction.extend(pair.next());
            }
        }
    }
    let scope = format!("5 random vectors (seed {seed}), p = {p}");
    reports.push(summarize("partition_norm", format!("alpha <= 6, {scope}"), partition));
    reports.push(summarize("isometry", format!("alpha <= 4, |j| <= 2, {scope}"), isometry));
    reports.push(summarize("contraction", format!("alpha <= 4, |j| <= 2, {scope}"), contraction));
    Ok(Output {
        text: reports_text(&reports),
        json: json!({ "command": "rep-check", "checks": reports }),
    })
}

pub fn collapse(n_max: usize, p: f64) -> CliResult {
    let cfg = RepConfig::new(p)?;
    let rows = norm_collapse_experiment(n_max, &cfg)?;
    Ok(Output {
        text: collapse_csv(&rows).trim_end().to_string(),
        json: json!({ "command": "collapse", "p": p, "rows": rows }),
    })
}
