//! `ecrep` — counts integral points of `y² ≡ x³ + ax + b (mod p)` through
//! several independent routes and runs the library's verification suites.
//!
//! Exit codes are a stable contract: 0 success, 1 usage problem, 2
//! mathematical or precision failure. Results go to stdout, diagnostics to
//! stderr.

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ecrep_core::counting::{
    count_expsum, count_legendre, count_naive, count_scaled_power, count_split_range,
    discriminant_class, gauss_sum_closed, gauss_sum_direct, hasse_check, CountMethod, CountResult,
    DiscriminantClass,
};
use ecrep_core::exec::ExecPolicy;
use ecrep_core::fracpart::{floor_via_expsum, frac_via_expsum};
use ecrep_core::identity::identity_check;
use ecrep_core::numerics::{is_prime_u64, make_context, CurveParams, XReal};
use ecrep_core::verify::{CaseResult, SuiteOptions, SuiteReport};
use ecrep_core::{run_suites, Error};

const DEFAULT_BITS: u32 = 192;

#[derive(Parser)]
#[command(
    name = "ecrep",
    version,
    about = "Elliptic-curve point counts via exponential sums, with built-in verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count points on y² = x³ + ax + b over F_p
    Count {
        /// Prime modulus
        #[arg(long)]
        p: u64,
        /// Coefficient a
        #[arg(long)]
        a: i64,
        /// Coefficient b
        #[arg(long)]
        b: i64,
        /// Counting route: naive, legendre, expsum, thm2 or thm3
        #[arg(long, value_parser = parse_method)]
        method: CountMethod,
        /// Working precision in bits (default: ECREP_BITS or 192)
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
    /// Run named verification suites
    Verify {
        /// Suite to run: numerics, zeta, repr, gauss, counting, fracpart,
        /// identity, or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Cap on the moduli swept by each suite
        #[arg(long, default_value_t = 101)]
        max_p: u64,
        /// Adds a seeded random curve spot-check on top of the fixed grids
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
    /// Check the zero-sum identity Σ 2π²x²/((p−2S)²+(πx)²) = p at a modulus
    Identity {
        /// Modulus, prime or not; must be at least 2
        #[arg(long)]
        p: u64,
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
    /// Recover floors and fractional parts from exponential double sums
    Fracpart {
        /// Modulus of the fractional parts
        #[arg(long)]
        p: u64,
        /// Largest numerator f to sweep (f = 1..=max_p)
        #[arg(long, default_value_t = 100)]
        max_p: u64,
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
    /// Compare quadratic Gauss sums against their closed form for all m
    Gauss {
        /// Odd prime modulus
        #[arg(long)]
        p: u64,
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

fn parse_method(s: &str) -> Result<CountMethod, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// One machine-readable result line. Fields that do not apply to a command
/// are omitted entirely, never emitted as null.
#[derive(Serialize)]
struct Record {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hasse_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    singular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l_value: Option<i64>,
    bits: u32,
    elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    identity_sum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_sum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r_sum: Option<String>,
}

impl Record {
    fn new(command: &'static str, bits: u32, elapsed_ms: u128) -> Self {
        Record {
            command,
            p: None,
            a: None,
            b: None,
            method: None,
            n_p: None,
            residual: None,
            hasse_ok: None,
            singular: None,
            l_value: None,
            bits,
            elapsed_ms,
            identity_sum: None,
            abs_error: None,
            q_sum: None,
            r_sum: None,
        }
    }
}

enum Failure {
    /// Bad invocation: wrong flag values, impossible configuration.
    Usage(String),
    /// The mathematics refused: precision, admissibility, domain.
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

type CmdResult = Result<i32, Failure>;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are successful outcomes; everything else
            // a clap error reports is a usage problem.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            1
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Cmd::Count { p, a, b, method, bits, output } => cmd_count(p, a, b, method, bits, output),
        Cmd::Verify { suite, max_p, seed, bits, output } => {
            cmd_verify(&suite, max_p, seed, bits, output)
        }
        Cmd::Identity { p, bits, output } => cmd_identity(p, bits, output),
        Cmd::Fracpart { p, max_p, bits, output } => cmd_fracpart(p, max_p, bits, output),
        Cmd::Gauss { p, bits, output } => cmd_gauss(p, bits, output),
    }
}

/// Flag value if given, else the `ECREP_BITS` environment variable, else 192.
fn resolve_bits(flag: Option<u32>) -> Result<u32, Failure> {
    let bits = match flag {
        Some(b) => b,
        None => match std::env::var("ECREP_BITS") {
            Ok(raw) => raw
                .parse::<u32>()
                .map_err(|_| Failure::Usage(format!("ECREP_BITS must be an integer, got '{raw}'")))?,
            Err(_) => DEFAULT_BITS,
        },
    };
    if bits < 64 {
        return Err(Failure::Usage(format!("bits must be at least 64, got {bits}")));
    }
    Ok(bits)
}

fn reject_csv(output: OutputFormat) -> Result<(), Failure> {
    if output == OutputFormat::Csv {
        return Err(Failure::Usage(
            "csv output is only available for the grid command (verify)".into(),
        ));
    }
    Ok(())
}

/// Short scientific rendering for text output; machine output carries the
/// full decimal expansion instead.
fn sci(x: &XReal) -> String {
    format!("{:.3e}", x.to_f64())
}

fn emit(record: &Record) {
    println!("{}", serde_json::to_string(record).expect("record serializes"));
}

fn cmd_count(
    p: u64,
    a: i64,
    b: i64,
    method: CountMethod,
    bits: Option<u32>,
    output: OutputFormat,
) -> CmdResult {
    reject_csv(output)?;
    let bits = resolve_bits(bits)?;
    let ctx = make_context(bits)?;
    let policy = ExecPolicy::default();
    let curve = CurveParams::new(a, b, p);
    let started = Instant::now();
    let result: CountResult = match method {
        CountMethod::Naive => count_naive(&curve, false)?,
        CountMethod::Legendre => count_legendre(&curve)?,
        CountMethod::ExpSum => count_expsum(&curve, &ctx, &policy)?,
        CountMethod::ScaledPower => count_scaled_power(&curve, &ctx, &policy)?,
        CountMethod::SplitRange => count_split_range(&curve, &ctx, &policy)?,
    };
    let elapsed_ms = started.elapsed().as_millis();
    let singular = discriminant_class(&curve) == DiscriminantClass::Singular;
    let hasse_ok = hasse_check(result.n_p, p);
    match output {
        OutputFormat::Text => {
            println!("method      {}", result.method);
            println!("p           {p}");
            println!("a           {a}");
            println!("b           {b}");
            println!("n_p         {}", result.n_p);
            if let Some(l) = result.l_cutoff {
                println!("l_value     {l}");
            }
            if result.raw.is_some() {
                println!("residual    {}", sci(&result.residual));
            }
            println!("hasse_ok    {hasse_ok}");
            println!("singular    {singular}");
            println!("bits        {bits}");
            println!("elapsed_ms  {elapsed_ms}");
        }
        OutputFormat::Json => {
            let mut rec = Record::new("count", bits, elapsed_ms);
            rec.p = Some(p);
            rec.a = Some(a);
            rec.b = Some(b);
            rec.method = Some(result.method.token().to_string());
            rec.n_p = Some(result.n_p);
            rec.residual = result.raw.as_ref().map(|_| result.residual.to_decimal());
            rec.hasse_ok = Some(hasse_ok);
            rec.singular = Some(singular);
            rec.l_value = result.l_cutoff;
            emit(&rec);
        }
        OutputFormat::Csv => unreachable!("rejected above"),
    }
    Ok(0)
}

fn cmd_verify(
    suite: &str,
    max_p: u64,
    seed: Option<u64>,
    bits: Option<u32>,
    output: OutputFormat,
) -> CmdResult {
    let bits = resolve_bits(bits)?;
    const KNOWN: [&str; 8] =
        ["all", "numerics", "zeta", "repr", "gauss", "counting", "fracpart", "identity"];
    if !KNOWN.contains(&suite) {
        return Err(Failure::Usage(format!(
            "unknown suite '{suite}' (expected one of {})",
            KNOWN.join(", ")
        )));
    }
    let opts = SuiteOptions { bits, max_p };
    let started = Instant::now();
    let mut reports = run_suites(suite, &opts, &ExecPolicy::default())?;
    if let Some(seed) = seed {
        reports.push(random_spot_suite(seed, max_p));
    }
    let elapsed_ms = started.elapsed().as_millis();
    let all_passed = reports.iter().all(|r| r.passed());
    match output {
        OutputFormat::Text => {
            for report in &reports {
                println!(
                    "[{}] suite {}",
                    if report.passed() { "PASS" } else { "FAIL" },
                    report.suite
                );
                for case in &report.cases {
                    println!(
                        "  {} {}: {}",
                        if case.passed { "ok  " } else { "FAIL" },
                        case.label,
                        case.detail
                    );
                }
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            println!("{passed}/{} suites passed ({elapsed_ms} ms, {bits} bits)", reports.len());
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct CaseRecord<'a> {
                command: &'static str,
                suite: &'a str,
                case: &'a str,
                passed: bool,
                detail: &'a str,
            }
            let rows: Vec<CaseRecord> = reports
                .iter()
                .flat_map(|r| {
                    r.cases.iter().map(|c| CaseRecord {
                        command: "verify",
                        suite: r.suite,
                        case: &c.label,
                        passed: c.passed,
                        detail: &c.detail,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string(&rows).expect("rows serialize"));
        }
        OutputFormat::Csv => {
            let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
            println!("suite,case,passed,detail");
            for report in &reports {
                for case in &report.cases {
                    println!(
                        "{},{},{},{}",
                        quote(report.suite),
                        quote(&case.label),
                        case.passed,
                        quote(&case.detail)
                    );
                }
            }
        }
    }
    Ok(if all_passed { 0 } else { 2 })
}

/// Seeded random spot-check: the character-sum count must equal enumeration
/// on whatever curves the seed draws. Fixed seed, fixed verdicts.
fn random_spot_suite(seed: u64, max_p: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = max_p.clamp(3, 97);
    let mut cases = Vec::new();
    let mut draws = 0usize;
    while cases.len() < 16 && draws < 512 {
        draws += 1;
        let p = rng.gen_range(3..=cap);
        if !is_prime_u64(p) {
            continue;
        }
        let a = rng.gen_range(-12i64..=12);
        let b = rng.gen_range(-12i64..=12);
        let curve = CurveParams::new(a, b, p);
        if discriminant_class(&curve) == DiscriminantClass::Singular {
            continue;
        }
        let naive = count_naive(&curve, false).map(|r| r.n_p);
        let via_symbol = count_legendre(&curve).map(|r| r.n_p);
        let (passed, detail) = match (&naive, &via_symbol) {
            (Ok(n), Ok(l)) if n == l => (true, format!("both count {n}")),
            _ => (false, format!("{naive:?} vs {via_symbol:?}")),
        };
        cases.push(CaseResult {
            label: format!("random curve a={a}, b={b}, p={p}"),
            passed,
            detail,
        });
    }
    SuiteReport { suite: "random", cases }
}

fn cmd_identity(p: u64, bits: Option<u32>, output: OutputFormat) -> CmdResult {
    reject_csv(output)?;
    if p < 2 {
        return Err(Failure::Usage(format!("identity requires p >= 2, got {p}")));
    }
    let bits = resolve_bits(bits)?;
    let ctx = make_context(bits)?;
    let started = Instant::now();
    let report = identity_check(p, &ctx, &ExecPolicy::default())?;
    let elapsed_ms = started.elapsed().as_millis();
    match output {
        OutputFormat::Text => {
            println!("p             {p}");
            println!("identity_sum  {}", report.identity_sum.to_decimal());
            println!("abs_error     {}", sci(&report.abs_error));
            println!("q_sum         {}", sci(&report.q_sum));
            println!("r_sum         {}", sci(&report.r_sum));
            println!("bits          {bits}");
            println!("elapsed_ms    {elapsed_ms}");
        }
        OutputFormat::Json => {
            let mut rec = Record::new("identity", bits, elapsed_ms);
            rec.p = Some(p);
            rec.identity_sum = Some(report.identity_sum.to_decimal());
            rec.abs_error = Some(report.abs_error.to_decimal());
            rec.q_sum = Some(report.q_sum.to_decimal());
            rec.r_sum = Some(report.r_sum.to_decimal());
            emit(&rec);
        }
        OutputFormat::Csv => unreachable!("rejected above"),
    }
    Ok(0)
}

fn cmd_fracpart(p: u64, max_f: u64, bits: Option<u32>, output: OutputFormat) -> CmdResult {
    reject_csv(output)?;
    if max_f < 1 {
        return Err(Failure::Usage("max-p must be at least 1".into()));
    }
    let bits = resolve_bits(bits)?;
    let ctx = make_context(bits)?;
    let started = Instant::now();
    let mut worst = XReal::zero(64);
    for f in 1..=max_f {
        let floor_report = floor_via_expsum(f, p, &ctx)?;
        if floor_report.floor_value != f / p {
            return Err(Failure::Math(Error::InvariantViolation {
                detail: format!(
                    "floor recovery failed at f={f}, p={p}: {} vs {}",
                    floor_report.floor_value,
                    f / p
                ),
            }));
        }
        let frac = frac_via_expsum(f, p, &ctx)?;
        let exact = XReal::from_ratio(ctx.bits(), (f % p) as i64, p);
        let gap = (frac - exact).abs();
        if gap > worst {
            worst = gap;
        }
        if floor_report.deviation > worst {
            worst = floor_report.deviation;
        }
    }
    let elapsed_ms = started.elapsed().as_millis();
    match output {
        OutputFormat::Text => {
            println!("p           {p}");
            println!("checked     f = 1..={max_f}");
            println!("residual    {}", sci(&worst));
            println!("bits        {bits}");
            println!("elapsed_ms  {elapsed_ms}");
        }
        OutputFormat::Json => {
            let mut rec = Record::new("fracpart", bits, elapsed_ms);
            rec.p = Some(p);
            rec.residual = Some(worst.to_decimal());
            emit(&rec);
        }
        OutputFormat::Csv => unreachable!("rejected above"),
    }
    Ok(0)
}

fn cmd_gauss(p: u64, bits: Option<u32>, output: OutputFormat) -> CmdResult {
    reject_csv(output)?;
    let bits = resolve_bits(bits)?;
    let ctx = make_context(bits)?;
    let started = Instant::now();
    let sqrt_p = XReal::from_u64(ctx.bits() + 32, p).sqrt();
    let mut worst_pair = XReal::zero(64);
    let mut worst_magnitude = XReal::zero(64);
    for m in 1..p {
        let direct = gauss_sum_direct(m, p, &ctx)?;
        let closed = gauss_sum_closed(m, p, &ctx)?;
        let pair_gap = (&direct.value - &closed.value).modulus();
        if pair_gap > worst_pair {
            worst_pair = pair_gap;
        }
        let magnitude_gap = (direct.value.modulus() - &sqrt_p).abs();
        if magnitude_gap > worst_magnitude {
            worst_magnitude = magnitude_gap;
        }
    }
    let elapsed_ms = started.elapsed().as_millis();
    match output {
        OutputFormat::Text => {
            println!("p                 {p}");
            println!("sums compared     {}", p.saturating_sub(1));
            println!("worst |d - c|     {}", sci(&worst_pair));
            println!("worst ||d| - √p|  {}", sci(&worst_magnitude));
            println!("bits              {bits}");
            println!("elapsed_ms        {elapsed_ms}");
        }
        OutputFormat::Json => {
            let mut rec = Record::new("gauss", bits, elapsed_ms);
            rec.p = Some(p);
            rec.residual = Some(worst_pair.to_decimal());
            emit(&rec);
        }
        OutputFormat::Csv => unreachable!("rejected above"),
    }
    Ok(0)
}
