//! Command-line front end: single-semigroup inspection, identity
//! verification, batch processing and random property sweeps.
//!
//! Exit codes: 0 success, 2 input or precondition error, 3 resource limit,
//! 4 identity or consistency violation (1 for I/O failures).

mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use apery::hilbert::{consistency_check, HilbertError};
use apery::identities::{
    verify_theorem1_on, verify_theorem2_all_on, verify_theorem2_on, BettiEntry, BettiTable,
    IdentityCheck, IdentityError, SignedDegreeSequence,
};
use apery::oracle::{oracle_frobenius, oracle_k_polynomial, oracle_moment, OracleError};
use apery::sampling::random_semigroup;
use apery::{BigInt, Limits, NumericalSemigroup, SemigroupError};

use output::{Record, SweepInstance, SweepSummary};

#[derive(Parser)]
#[command(
    name = "apery",
    version,
    about = "Numerical semigroup invariants and exact verification of syzygy-degree identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Profile and Hilbert-series numerators of a semigroup
    Info(SingleArgs),
    /// Print the numerator of the Hilbert series over prod(1 - z^d_i)
    Kpoly(SingleArgs),
    /// Verify the real power-sum identities
    Verify(VerifyArgs),
    /// Verify the cyclotomic root-of-unity identities
    VerifyComplex(VerifyComplexArgs),
    /// Generate random minimal semigroups and run the full verification
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct CommonArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cap on the smallest generator (Apéry residue nodes)
    #[arg(long, env = "APERY_MAX_NODES", default_value_t = 10_000_000)]
    max_nodes: u64,
    /// Cap on linear enumerations (gap scans, series truncations)
    #[arg(long, env = "APERY_MAX_ENUM", default_value_t = 100_000_000)]
    max_enum: u64,
}

impl CommonArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_apery_nodes: self.max_nodes,
            max_enumeration: self.max_enum,
        }
    }
}

#[derive(Args)]
struct SingleArgs {
    /// Comma-separated generators, e.g. 4,7,9
    generators: Option<String>,
    /// Batch file: one comma-separated generator list per line,
    /// '#' comments and blank lines ignored
    #[arg(long, conflicts_with = "generators")]
    input: Option<PathBuf>,
    /// Remove redundant generators instead of rejecting them
    #[arg(long)]
    minimize: bool,
    /// Cross-check against the brute-force oracle
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    single: SingleArgs,
    /// Optional syzygy multiplicity table: lines of "index degree multiplicity",
    /// checked against the semigroup before use
    #[arg(long)]
    betti: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyComplexArgs {
    #[command(flatten)]
    verify: VerifyArgs,
    /// Restrict to a single modulus q (in [2, d_m], divisible into some generator)
    #[arg(long)]
    q: Option<u64>,
    /// Restrict to a single residue n coprime to q; requires --q
    #[arg(long, requires = "q", allow_hyphen_values = true)]
    n: Option<i64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of random instances
    #[arg(long, default_value_t = 500)]
    count: usize,
    /// Range of generator counts, inclusive, e.g. 2..6
    #[arg(long, default_value = "2..6")]
    m: String,
    /// Upper bound on generators
    #[arg(long, default_value_t = 300)]
    dmax: u64,
    /// RNG seed; defaulted from entropy (and echoed) when absent
    #[arg(long)]
    seed: Option<u64>,
    /// Also cross-check every instance against the brute-force oracle
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    common: CommonArgs,
}

/// Errors annotated with their exit code.
#[derive(Debug)]
enum CliError {
    Io(String),
    Input(String),
    Resource(String),
    Violation(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Violation(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Input(m) | CliError::Resource(m) | CliError::Violation(m) => m,
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        match e {
            SemigroupError::ResourceLimit { .. } | SemigroupError::Overflow => {
                CliError::Resource(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<HilbertError> for CliError {
    fn from(e: HilbertError) -> Self {
        match e {
            HilbertError::Semigroup(s) => s.into(),
            HilbertError::Consistency { .. } => CliError::Violation(e.to_string()),
        }
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::Semigroup(s) => s.into(),
            IdentityError::Hilbert(h) => h.into(),
            IdentityError::Violation(_) => CliError::Violation(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Semigroup(s) => s.into(),
            OracleError::Consistency { .. } => CliError::Violation(e.to_string()),
            OracleError::InvalidDenominator => CliError::Input(e.to_string()),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Info(args) => run_single(&args, None, Mode::Info),
        Command::Kpoly(args) => run_single(&args, None, Mode::Kpoly),
        Command::Verify(args) => run_single(&args.single, args.betti.as_deref(), Mode::Verify),
        Command::VerifyComplex(args) => run_single(
            &args.verify.single,
            args.verify.betti.as_deref(),
            Mode::VerifyComplex { q: args.q, n: args.n },
        ),
        Command::Sweep(args) => run_sweep(&args),
    };
    std::process::exit(code);
}

#[derive(Clone, Copy)]
enum Mode {
    Info,
    Kpoly,
    Verify,
    VerifyComplex { q: Option<u64>, n: Option<i64> },
}

fn parse_generators(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<u64>()
                .map_err(|_| CliError::Input(format!("invalid generator '{}'", piece.trim())))
        })
        .collect()
}

/// Batch inputs: `(line number, generators)`.
fn read_inputs(args: &SingleArgs) -> Result<Vec<(usize, Vec<u64>)>, CliError> {
    match (&args.generators, &args.input) {
        (Some(g), None) => Ok(vec![(0, parse_generators(g)?)]),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            let mut jobs = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                jobs.push((i + 1, parse_generators(line)?));
            }
            if jobs.is_empty() {
                return Err(CliError::Input("batch file contains no semigroups".into()));
            }
            Ok(jobs)
        }
        (None, None) => Err(CliError::Input(
            "provide generators (e.g. 4,7,9) or --input <file>".into(),
        )),
        (Some(_), Some(_)) => unreachable!("clap rejects conflicting arguments"),
    }
}

fn read_betti(path: &std::path::Path) -> Result<BettiTable, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(CliError::Input(format!(
                "{}:{}: expected 'index degree multiplicity'",
                path.display(),
                i + 1
            )));
        }
        let parse = |s: &str| -> Result<u64, CliError> {
            s.parse()
                .map_err(|_| CliError::Input(format!("{}:{}: invalid number '{s}'", path.display(), i + 1)))
        };
        entries.push(BettiEntry {
            index: parse(fields[0])? as u32,
            degree: parse(fields[1])?,
            multiplicity: parse(fields[2])?,
        });
    }
    Ok(BettiTable::new(entries)?)
}

fn build_semigroup(
    generators: &[u64],
    minimize: bool,
) -> Result<NumericalSemigroup, CliError> {
    if minimize {
        let (s, removed) = NumericalSemigroup::new_minimized(generators)?;
        if !removed.is_empty() {
            let removed: Vec<String> = removed.iter().map(|g| g.to_string()).collect();
            eprintln!("minimized: removed redundant generators {}", removed.join(","));
        }
        Ok(s)
    } else {
        Ok(NumericalSemigroup::new(generators)?)
    }
}

/// The sequence the verify commands check: from the semigroup, or from a
/// user table cross-checked against the semigroup.
fn sequence_for(
    s: &NumericalSemigroup,
    betti: Option<&BettiTable>,
    limits: Limits,
) -> Result<SignedDegreeSequence<BigInt>, CliError> {
    match betti {
        Some(table) => Ok(SignedDegreeSequence::from_table_checked(table, s, limits)?),
        None => Ok(SignedDegreeSequence::from_semigroup(s, limits)?),
    }
}

fn build_record(
    generators: &[u64],
    minimize: bool,
    oracle: bool,
    betti: Option<&BettiTable>,
    mode: Mode,
    limits: Limits,
) -> Result<Record, CliError> {
    let s = build_semigroup(generators, minimize)?;
    let data = consistency_check::<BigInt>(&s, limits)?;

    let checks: Vec<IdentityCheck<BigInt>> = match mode {
        Mode::Info | Mode::Kpoly => Vec::new(),
        Mode::Verify => {
            let seq = sequence_for(&s, betti, limits)?;
            verify_theorem1_on(&seq, &s)?.checks
        }
        Mode::VerifyComplex { q, n } => {
            let seq = sequence_for(&s, betti, limits)?;
            match (q, n) {
                (Some(q), Some(n)) => verify_theorem2_on(&seq, &s, q, n)?.checks,
                (Some(q), None) => {
                    // all residues coprime to q
                    let mut checks = Vec::new();
                    for n in 1..q {
                        if num_integer::gcd(n, q) == 1 {
                            checks.extend(verify_theorem2_on(&seq, &s, q, n as i64)?.checks);
                        }
                    }
                    checks
                }
                (None, _) => verify_theorem2_all_on(&seq, &s)?.checks,
            }
        }
    };

    if oracle {
        run_oracle_checks(&s, &data.k_poly, mode, limits)?;
    }

    Ok(Record {
        generators: s.generators().to_vec(),
        profile: data.profile,
        p_poly: data.p_poly,
        k_poly: data.k_poly,
        checks,
    })
}

fn run_oracle_checks(
    s: &NumericalSemigroup,
    k: &apery::IntPolynomial,
    mode: Mode,
    limits: Limits,
) -> Result<(), CliError> {
    let profile_frobenius = s.profile(limits)?.frobenius;
    let oracle_f = oracle_frobenius(s, limits)?;
    if profile_frobenius != oracle_f {
        return Err(CliError::Violation(format!(
            "oracle disagreement on {s}: Frobenius {profile_frobenius} vs oracle {oracle_f}"
        )));
    }
    match mode {
        Mode::Kpoly => {
            let oracle_k = oracle_k_polynomial::<BigInt>(s, limits)?;
            if *k != oracle_k {
                return Err(CliError::Violation(format!(
                    "oracle disagreement on {s}: numerator {k} vs oracle {oracle_k}"
                )));
            }
        }
        Mode::Verify | Mode::VerifyComplex { .. } => {
            let seq = SignedDegreeSequence::<BigInt>::from_semigroup(s, limits)?;
            for r in 0..s.embedding_dimension() as u32 {
                let direct = seq.moment(r);
                let from_oracle: BigInt = oracle_moment(s, r, limits)?;
                if direct != from_oracle {
                    return Err(CliError::Violation(format!(
                        "oracle disagreement on {s}: moment r={r} {direct} vs {from_oracle}"
                    )));
                }
            }
        }
        Mode::Info => {}
    }
    Ok(())
}

fn run_single(args: &SingleArgs, betti_path: Option<&std::path::Path>, mode: Mode) -> i32 {
    let limits = args.common.limits();
    let jobs = match read_inputs(args) {
        Ok(jobs) => jobs,
        Err(e) => return fail(e),
    };
    let betti = match betti_path.map(read_betti).transpose() {
        Ok(t) => t,
        Err(e) => return fail(e),
    };

    let results: Vec<(usize, Result<Record, CliError>)> = jobs
        .par_iter()
        .map(|(line, gens)| {
            (
                *line,
                build_record(gens, args.minimize, args.oracle, betti.as_ref(), mode, limits),
            )
        })
        .collect();

    let mut body = String::new();
    if args.common.format == Format::Csv {
        let header = match mode {
            Mode::Info => output::INFO_CSV_HEADER,
            Mode::Kpoly => output::KPOLY_CSV_HEADER,
            Mode::Verify | Mode::VerifyComplex { .. } => output::VERIFY_CSV_HEADER,
        };
        body.push_str(header);
        body.push('\n');
    }
    let mut exit = 0;
    for (line, result) in &results {
        match result {
            Ok(record) => match args.common.format {
                Format::Text => body.push_str(&match mode {
                    Mode::Info => output::info_text(record),
                    Mode::Kpoly => output::kpoly_text(record),
                    Mode::Verify | Mode::VerifyComplex { .. } => output::verify_text(record),
                }),
                Format::Json => {
                    body.push_str(&output::record_json(record));
                    body.push('\n');
                }
                Format::Csv => match mode {
                    Mode::Info => {
                        body.push_str(&output::info_csv_row(record));
                        body.push('\n');
                    }
                    Mode::Kpoly => {
                        body.push_str(&output::kpoly_csv_row(record));
                        body.push('\n');
                    }
                    Mode::Verify | Mode::VerifyComplex { .. } => {
                        for row in output::verify_csv_rows(record) {
                            body.push_str(&row);
                            body.push('\n');
                        }
                    }
                },
            },
            Err(e) => {
                if *line == 0 {
                    eprintln!("error: {}", e.message());
                } else {
                    eprintln!("error at input line {line}: {}", e.message());
                }
                exit = exit.max(e.exit_code());
            }
        }
    }

    if let Err(e) = emit(&args.common.out, &body) {
        return fail(e);
    }
    exit
}

fn parse_m_range(text: &str) -> Result<(u32, u32), CliError> {
    let parse_part = |s: &str| -> Result<u32, CliError> {
        s.parse()
            .map_err(|_| CliError::Input(format!("invalid generator count '{s}'")))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (parse_part(lo)?, parse_part(hi.trim_start_matches('='))?),
        None => {
            let v = parse_part(text)?;
            (v, v)
        }
    };
    if lo < 1 || hi < lo {
        return Err(CliError::Input(format!("invalid generator count range '{text}'")));
    }
    Ok((lo, hi))
}

fn run_sweep(args: &SweepArgs) -> i32 {
    let limits = args.common.limits();
    let (m_min, m_max) = match parse_m_range(&args.m) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    if args.count == 0 {
        return fail(CliError::Input("--count must be at least 1".into()));
    }
    if args.dmax < m_max as u64 + 1 {
        return fail(CliError::Input(format!(
            "--dmax {} cannot accommodate {} distinct generators >= 2",
            args.dmax, m_max
        )));
    }
    let seed = args.seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        eprintln!("seed defaulted to {s}");
        s
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<NumericalSemigroup> = (0..args.count)
        .map(|_| random_semigroup(&mut rng, m_min..=m_max, args.dmax))
        .collect();

    let outcomes: Vec<(SweepInstance, Option<CliError>, u128)> = instances
        .par_iter()
        .map(|s| {
            let start = Instant::now();
            let result = sweep_one(s, args.oracle, limits);
            let elapsed = start.elapsed().as_millis();
            match result {
                Ok(checks) => (
                    SweepInstance { semigroup: s.generators().to_vec(), checks, pass: true },
                    None,
                    elapsed,
                ),
                Err(e) => (
                    SweepInstance { semigroup: s.generators().to_vec(), checks: 0, pass: false },
                    Some(e),
                    elapsed,
                ),
            }
        })
        .collect();

    let mut timings: Vec<u128> = outcomes.iter().map(|(_, _, t)| *t).collect();
    timings.sort_unstable();
    let pct = |p: usize| timings[(timings.len() - 1) * p / 100];
    let timing = format!(
        "p50={} p90={} p99={} max={}",
        pct(50),
        pct(90),
        pct(99),
        timings.last().copied().unwrap_or(0)
    );

    let mut failures = Vec::new();
    let mut worst = 0;
    for (inst, err, _) in &outcomes {
        if let Some(e) = err {
            eprintln!("sweep failure on {:?}: {}", inst.semigroup, e.message());
            failures.push(inst.semigroup.clone());
            worst = worst.max(e.exit_code());
        }
    }

    let summary = SweepSummary {
        command: "sweep",
        seed,
        count: args.count,
        m_min,
        m_max,
        d_max: args.dmax,
        oracle: args.oracle,
        total: outcomes.len(),
        passed: outcomes.iter().filter(|(i, _, _)| i.pass).count(),
        failed: failures.len(),
        failures,
        instances: outcomes.into_iter().map(|(i, _, _)| i).collect(),
    };

    let body = match args.common.format {
        Format::Text => output::sweep_text(&summary, &timing),
        Format::Json => {
            eprintln!("timing_ms: {timing}");
            format!("{}\n", output::sweep_json(&summary))
        }
        Format::Csv => {
            eprintln!("timing_ms: {timing}");
            let mut s = String::from(output::SWEEP_CSV_HEADER);
            s.push('\n');
            for row in output::sweep_csv_rows(&summary) {
                s.push_str(&row);
                s.push('\n');
            }
            s
        }
    };
    if let Err(e) = emit(&args.common.out, &body) {
        return fail(e);
    }
    if summary.failed > 0 {
        worst.max(4)
    } else {
        0
    }
}

/// Full verification of one sweep instance; returns the number of checks.
fn sweep_one(
    s: &NumericalSemigroup,
    oracle: bool,
    limits: Limits,
) -> Result<usize, CliError> {
    let data = consistency_check::<BigInt>(s, limits)?;
    let seq = SignedDegreeSequence::<BigInt>::from_semigroup(s, limits)?;
    let t1 = verify_theorem1_on(&seq, s)?;
    let t2 = verify_theorem2_all_on(&seq, s)?;
    let mut checks = 1 + t1.checks.len() + t2.checks.len();
    if oracle {
        let oracle_f = oracle_frobenius(s, limits)?;
        if data.profile.frobenius != oracle_f {
            return Err(CliError::Violation(format!(
                "oracle disagreement on {s}: Frobenius {} vs oracle {oracle_f}",
                data.profile.frobenius
            )));
        }
        for r in 0..s.embedding_dimension() as u32 {
            let direct = seq.moment(r);
            let from_oracle: BigInt = oracle_moment(s, r, limits)?;
            if direct != from_oracle {
                return Err(CliError::Violation(format!(
                    "oracle disagreement on {s}: moment r={r} {direct} vs {from_oracle}"
                )));
            }
        }
        checks += 1 + s.embedding_dimension();
    }
    Ok(checks)
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, body)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn fail(e: CliError) -> i32 {
    eprintln!("error: {}", e.message());
    e.exit_code()
}
