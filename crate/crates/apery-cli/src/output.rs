//! Output records and their text / json / csv renderings.
//!
//! The json schema is stable and byte-deterministic:
//! `{semigroup, profile, k_poly: [[degree, "coeff"], ...], checks: [...]}`
//! with big integers rendered as decimal strings so that exactness
//! survives serialization.

use apery::identities::{CheckKind, CheckValue, IdentityCheck};
use apery::{BigInt, IntPolynomial, SemigroupProfile};
use serde::Serialize;

/// Everything a single-semigroup command produces.
pub struct Record {
    pub generators: Vec<u64>,
    pub profile: SemigroupProfile,
    pub p_poly: IntPolynomial,
    pub k_poly: IntPolynomial,
    pub checks: Vec<IdentityCheck<BigInt>>,
}

impl Record {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Serialize)]
struct RecordJson {
    semigroup: Vec<u64>,
    profile: ProfileJson,
    k_poly: Vec<(u64, String)>,
    checks: Vec<CheckJson>,
}

#[derive(Serialize)]
struct ProfileJson {
    frobenius: i64,
    conductor: u64,
    genus: u64,
    gaps: Vec<u64>,
}

#[derive(Serialize)]
struct CheckJson {
    kind: &'static str,
    r: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    expected: ValueJson,
    computed: ValueJson,
    pass: bool,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ValueJson {
    Integer(String),
    Cyclotomic { order: u64, coeffs: Vec<String> },
}

fn value_json(v: &CheckValue<BigInt>) -> ValueJson {
    match v {
        CheckValue::Integer(x) => ValueJson::Integer(x.to_string()),
        CheckValue::Cyclotomic { order, coeffs } => ValueJson::Cyclotomic {
            order: *order,
            coeffs: coeffs.iter().map(|c| c.to_string()).collect(),
        },
    }
}

fn kind_str(kind: CheckKind) -> &'static str {
    match kind {
        CheckKind::Real => "real",
        CheckKind::Cyclotomic => "cyclotomic",
    }
}

pub fn poly_pairs(p: &IntPolynomial) -> Vec<(u64, String)> {
    p.terms().map(|(d, c)| (d, c.to_string())).collect()
}

/// One json object per record, on a single line.
pub fn record_json(record: &Record) -> String {
    let json = RecordJson {
        semigroup: record.generators.clone(),
        profile: ProfileJson {
            frobenius: record.profile.frobenius,
            conductor: record.profile.conductor,
            genus: record.profile.genus,
            gaps: record.profile.gaps.clone(),
        },
        k_poly: poly_pairs(&record.k_poly),
        checks: record
            .checks
            .iter()
            .map(|c| CheckJson {
                kind: kind_str(c.kind),
                r: c.r,
                q: c.q,
                n: c.n,
                expected: value_json(&c.expected),
                computed: value_json(&c.computed),
                pass: c.pass,
            })
            .collect(),
    };
    serde_json::to_string(&json).expect("serialization cannot fail")
}

fn generators_str(generators: &[u64]) -> String {
    generators
        .iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn gaps_str(gaps: &[u64]) -> String {
    if gaps.is_empty() {
        "-".to_string()
    } else {
        gaps.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn check_line(c: &IdentityCheck<BigInt>) -> String {
    let mut head = format!("{} r={}", kind_str(c.kind), c.r);
    if let Some(q) = c.q {
        head = format!("{head} q={q} n={}", c.n.unwrap_or(0));
    }
    format!(
        "{head}: expected {}, computed {}, {}",
        c.expected,
        c.computed,
        if c.pass { "pass" } else { "FAIL" }
    )
}

/// Multi-line human rendering for `info`.
pub fn info_text(record: &Record) -> String {
    let mut out = String::new();
    out.push_str(&format!("semigroup: <{}>\n", generators_str(&record.generators)));
    out.push_str(&format!("frobenius: {}\n", record.profile.frobenius));
    out.push_str(&format!("conductor: {}\n", record.profile.conductor));
    out.push_str(&format!("genus: {}\n", record.profile.genus));
    out.push_str(&format!("gaps: {}\n", gaps_str(&record.profile.gaps)));
    out.push_str(&format!("p: {}\n", record.p_poly));
    out.push_str(&format!("k: {}\n", record.k_poly));
    out
}

/// Single-line rendering for `kpoly`.
pub fn kpoly_text(record: &Record) -> String {
    format!("{}\n", record.k_poly)
}

/// Per-check rendering for the verify commands.
pub fn verify_text(record: &Record) -> String {
    let mut out = String::new();
    out.push_str(&format!("semigroup: <{}>\n", generators_str(&record.generators)));
    for c in &record.checks {
        out.push_str(&check_line(c));
        out.push('\n');
    }
    out.push_str(&format!(
        "result: {} ({} checks)\n",
        if record.all_pass() { "PASS" } else { "FAIL" },
        record.checks.len()
    ));
    out
}

/// Minimal csv quoting: wrap in double quotes when the field contains a
/// comma or a quote, doubling embedded quotes.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const INFO_CSV_HEADER: &str = "generators,frobenius,conductor,genus,p_poly,k_poly";

pub fn info_csv_row(record: &Record) -> String {
    format!(
        "{},{},{},{},{},{}",
        csv_field(&generators_str(&record.generators)),
        record.profile.frobenius,
        record.profile.conductor,
        record.profile.genus,
        csv_field(&record.p_poly.to_string()),
        csv_field(&record.k_poly.to_string()),
    )
}

pub const KPOLY_CSV_HEADER: &str = "generators,k_poly";

pub fn kpoly_csv_row(record: &Record) -> String {
    format!(
        "{},{}",
        csv_field(&generators_str(&record.generators)),
        csv_field(&record.k_poly.to_string()),
    )
}

pub const VERIFY_CSV_HEADER: &str = "generators,kind,r,q,n,expected,computed,pass";

pub fn verify_csv_rows(record: &Record) -> Vec<String> {
    record
        .checks
        .iter()
        .map(|c| {
            format!(
                "{},{},{},{},{},{},{},{}",
                csv_field(&generators_str(&record.generators)),
                kind_str(c.kind),
                c.r,
                c.q.map(|q| q.to_string()).unwrap_or_default(),
                c.n.map(|n| n.to_string()).unwrap_or_default(),
                csv_field(&c.expected.to_string()),
                csv_field(&c.computed.to_string()),
                c.pass,
            )
        })
        .collect()
}

/// Aggregate output of a sweep. Deliberately timing-free so that json and
/// csv renderings are byte-identical across runs; timing is reported on
/// stderr (and in the text rendering).
#[derive(Serialize)]
pub struct SweepSummary {
    pub command: &'static str,
    pub seed: u64,
    pub count: usize,
    pub m_min: u32,
    pub m_max: u32,
    pub d_max: u64,
    pub oracle: bool,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<Vec<u64>>,
    pub instances: Vec<SweepInstance>,
}

#[derive(Serialize)]
pub struct SweepInstance {
    pub semigroup: Vec<u64>,
    pub checks: usize,
    pub pass: bool,
}

pub fn sweep_json(summary: &SweepSummary) -> String {
    serde_json::to_string(summary).expect("serialization cannot fail")
}

pub fn sweep_text(summary: &SweepSummary, timing: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("seed: {}\n", summary.seed));
    out.push_str(&format!(
        "count: {}  m: {}..{}  dmax: {}  oracle: {}\n",
        summary.count, summary.m_min, summary.m_max, summary.d_max, summary.oracle
    ));
    out.push_str(&format!("passed: {}/{}\n", summary.passed, summary.total));
    for f in &summary.failures {
        out.push_str(&format!("FAILED: {}\n", generators_str(f)));
    }
    out.push_str(&format!("timing_ms: {timing}\n"));
    out
}

pub const SWEEP_CSV_HEADER: &str = "index,generators,checks,pass";

pub fn sweep_csv_rows(summary: &SweepSummary) -> Vec<String> {
    summary
        .instances
        .iter()
        .enumerate()
        .map(|(i, inst)| {
            format!(
                "{},{},{},{}",
                i,
                csv_field(&generators_str(&inst.semigroup)),
                inst.checks,
                inst.pass
            )
        })
        .collect()
}
