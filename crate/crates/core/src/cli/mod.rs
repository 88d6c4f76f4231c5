//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse error or unwritable output, 2 invalid
//! instance, 3 failed family verification.

pub mod bench;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algorithms::{divisors_poly, divisors_quadratic_with_radius, divisors_rational, DivisorReport, Reportable};
use crate::families::{
    cohen_instance, expected_count, ln_big, search_records, seven_signed_instance, standalone, verify_family,
    FamilyInstance, SearchConfig, SearchOutcome, Verification,
};
use crate::remseq::ProblemInstance;
use crate::rings::{IntPoly, QuadInt, RingId};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_INSTANCE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "resdiv", version, about = "Divisors of N congruent to r mod S")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every divisor of N congruent to r mod S.
    Find(FindArgs),
    /// Time the quadratic algorithm on random instances, k = digit count.
    Bench(BenchArgs),
    /// Check the known extremal families.
    Verify(VerifyArgs),
    /// Look for moduli S with many divisors of some N < S^3 in one class.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Lines,
    Json,
}

fn parse_ring(s: &str) -> std::result::Result<RingId, String> {
    RingId::from_flag(s).map_err(|e| e.to_string())
}

#[derive(Debug, clap::Args)]
struct FindArgs {
    /// z, zi, q-2, q-3, q-7, q-11 or zx
    #[arg(long, default_value = "zi", value_parser = parse_ring)]
    ring: RingId,
    #[arg(short = 'N', allow_hyphen_values = true)]
    n: String,
    #[arg(short = 'S', allow_hyphen_values = true)]
    s: String,
    #[arg(short = 'r', allow_hyphen_values = true)]
    r: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Right-hand-side radius factor (quadratic rings); defaults per field.
    #[arg(long)]
    radius: Option<u32>,
    /// Candidate leading coefficients of the divisor (zx, non-monic S).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lead_list: Option<Vec<BigInt>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct BenchArgs {
    #[arg(long, default_value = "zi", value_parser = parse_ring)]
    ring: RingId,
    #[arg(long, default_value_t = 10)]
    k_min: u32,
    #[arg(long, default_value_t = 50)]
    k_max: u32,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// CSV path; a `.dat` file with the same stem is written alongside.
    #[arg(long, default_value = "bench.csv")]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Cohen,
    Seven,
    Standalone,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    family: FamilyArg,
    /// Inclusive parameter range `a..b` (or `a..=b`, or a single value).
    range: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    s_min: u64,
    #[arg(long, default_value_t = 80)]
    s_max: u64,
    #[arg(long, default_value_t = 6)]
    target: usize,
    /// Maximum number of candidate N examined.
    #[arg(long, default_value_t = 2_000_000)]
    budget: u64,
    #[arg(short = 'r', default_value_t = 1, allow_hyphen_values = true)]
    r: i64,
    /// Count d and -d separately.
    #[arg(long)]
    signed: bool,
    #[arg(long, value_enum, default_value_t = Format::Lines)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Find(a) => cmd_find(&a, stdout),
        Command::Bench(a) => cmd_bench(&a, stdout),
        Command::Verify(a) => cmd_verify(&a, stdout, stderr),
        Command::Search(a) => cmd_search(&a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInstance(_) | Error::NotInvertible(..) | Error::GcdOfZeros | Error::DivisionByZero => {
            EXIT_INVALID_INSTANCE
        }
        _ => EXIT_USAGE,
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Error::Io(format!("stdout: {e}"))),
    }
}

fn cmd_find(a: &FindArgs, stdout: &mut dyn Write) -> Result<i32> {
    let text = match a.ring {
        RingId::RationalInt => {
            let parse = |s: &str| s.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("`{s}`: {e}")));
            let inst = ProblemInstance::rational(&parse(&a.n)?, &parse(&a.s)?, &parse(&a.r)?)?;
            let mut rep = divisors_rational(&inst)?;
            if let Some(radius) = a.radius {
                rep = divisors_quadratic_with_radius(&inst, radius)?;
                retain_real(&mut rep);
            }
            let alpha = ln_big(&inst.s.norm_sq()) / ln_big(&inst.n.norm_sq());
            render(&rep, a.format, Some(alpha))
        }
        RingId::Quadratic(field) => {
            let parse = |s: &str| QuadInt::parse(s, field);
            let inst = ProblemInstance::quadratic(parse(&a.n)?, parse(&a.s)?, parse(&a.r)?)?;
            let rep = divisors_quadratic_with_radius(&inst, a.radius.unwrap_or(field.default_radius()))?;
            render(&rep, a.format, None)
        }
        RingId::IntegerPoly => {
            let inst =
                ProblemInstance::poly(&IntPoly::parse(&a.n)?, &IntPoly::parse(&a.s)?, &IntPoly::parse(&a.r)?, a.lead_list.clone())?;
            render(&divisors_poly(&inst)?, a.format, None)
        }
    };
    emit(&a.out, &text, stdout)?;
    Ok(EXIT_OK)
}

fn retain_real(rep: &mut DivisorReport<QuadInt>) {
    rep.witnesses.retain(|w| w.divisor.is_rational());
    rep.divisors.retain(QuadInt::is_rational);
}

fn render<E: Reportable>(rep: &DivisorReport<E>, format: Format, alpha: Option<f64>) -> String {
    match format {
        Format::Lines => rep.render_lines(),
        Format::Table => {
            let mut t = rep.render_table();
            if let Some(al) = alpha {
                let _ = writeln!(t, "alpha = log|S| / log|N| = {al:.4}");
            }
            t
        }
        Format::Json => {
            let inst = &rep.instance;
            let mut instance = json!({
                "ring": inst.ring.flag(),
                "N": inst.n.to_string(),
                "S": inst.s.to_string(),
                "r": inst.r.to_string(),
                "r_prime": inst.r_prime.to_string(),
                "within_gate": inst.within_gate,
            });
            if let Some(al) = alpha {
                instance["alpha"] = json!(al);
            }
            if let Some(l) = &inst.lead_list {
                instance["lead_list"] = json!(l.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            let s = &rep.stats;
            let v = json!({
                "instance": instance,
                "divisors": rep.divisors.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "stats": { "t": s.t, "candidates": s.candidates, "solves": s.solves, "seconds": s.seconds },
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
        }
    }
}

fn cmd_bench(a: &BenchArgs, stdout: &mut dyn Write) -> Result<i32> {
    let field = match a.ring {
        RingId::Quadratic(f) => f,
        RingId::RationalInt | RingId::IntegerPoly => {
            return Err(Error::InvalidArgument(format!("bench needs a quadratic ring, got {}", a.ring.flag())))
        }
    };
    let cfg = bench::BenchConfig {
        k_min: a.k_min,
        k_max: a.k_max,
        samples_per_k: a.samples,
        seed: a.seed,
        field,
        out: a.out.clone(),
    };
    cfg.validate()?;
    // fail on an unwritable destination before spending time on samples
    std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&cfg.out)
        .map_err(|e| Error::Io(format!("{}: {e}", cfg.out.display())))?;
    let rows = bench::run_bench(&cfg)?;
    bench::write_outputs(&cfg, &rows)?;
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(text, "k={:<3} mean={:.6}s min={:.6}s max={:.6}s samples={} ops={:.0}", r.k, r.mean_s, r.min_s, r.max_s, r.samples, r.mean_ops);
    }
    let _ = writeln!(text, "wrote {} and {}", cfg.out.display(), bench::dat_path(&cfg.out).display());
    emit(&None, &text, stdout)?;
    Ok(EXIT_OK)
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| Error::Parse(format!("range `{s}`: {e}")));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(Error::Parse(format!("empty range `{s}`")));
    }
    Ok((lo, hi))
}

fn family_members(family: FamilyArg, range: Option<&str>) -> Result<Vec<FamilyInstance>> {
    let span = |default: (u64, u64)| range.map_or(Ok(default), parse_range);
    match family {
        FamilyArg::Cohen => {
            let (lo, hi) = span((3, 10))?;
            (lo..=hi).map(cohen_instance).collect()
        }
        FamilyArg::Seven => {
            let (lo, hi) = span((2, 10))?;
            (lo..=hi).map(seven_signed_instance).collect()
        }
        FamilyArg::Standalone => match range {
            Some(r) => Err(Error::InvalidArgument(format!("standalone takes no range, got `{r}`"))),
            None => Ok(vec![standalone()]),
        },
    }
}

fn verification_json(v: &Verification) -> Value {
    json!({
        "member": v.instance.source.to_string(),
        "N": v.instance.n.to_string(),
        "S": v.instance.s.to_string(),
        "r": v.instance.r.to_string(),
        "divisors": v.divisors.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "positive": v.positive,
        "signed": v.signed,
        "expected": v.expected,
        "count_signed": v.count_signed,
        "oracle": v.oracle.map(|(p, s)| json!({"positive": p, "signed": s})),
        "gate": v.gate,
        "alpha": v.alpha,
        "seconds": v.seconds,
        "passed": v.passed,
    })
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let members = family_members(a.family, a.range.as_deref())?;
    let mut results = Vec::with_capacity(members.len());
    for m in &members {
        let count_signed = expected_count(m.source).is_some_and(|(_, signed)| signed);
        results.push(verify_family(m, count_signed)?);
    }
    let text = match a.format {
        Format::Json => {
            let arr: Vec<Value> = results.iter().map(verification_json).collect();
            format!("{}\n", serde_json::to_string_pretty(&arr).expect("json values serialize"))
        }
        Format::Lines => {
            let mut t = String::new();
            for v in &results {
                let _ = writeln!(t, "{} {} {} {}", v.instance.source, v.instance.n, v.instance.s, if v.passed { "pass" } else { "FAIL" });
            }
            t
        }
        Format::Table => {
            let mut t = String::new();
            let _ = writeln!(t, "{:<16} {:>6} {:>6} {:>8} {:>5} {:>8}  status", "member", "count", "oracle", "expected", "gate", "alpha");
            for v in &results {
                let count = if v.count_signed { v.signed } else { v.positive };
                let oracle = v.oracle.map_or("-".to_string(), |(p, s)| (if v.count_signed { s } else { p }).to_string());
                let kind = if v.count_signed { "signed" } else { "positive" };
                let _ = writeln!(
                    t,
                    "{:<16} {:>6} {:>6} {:>8} {:>5} {:>8.4}  {} ({kind})",
                    v.instance.source.to_string(),
                    count,
                    oracle,
                    v.expected,
                    v.gate,
                    v.alpha,
                    if v.passed { "pass" } else { "FAIL" }
                );
            }
            t
        }
    };
    emit(&a.out, &text, stdout)?;
    let failed: Vec<String> = results.iter().filter(|v| !v.passed).map(|v| v.instance.source.to_string()).collect();
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(stderr, "verification failed: {}", failed.join(", "));
        Ok(EXIT_VERIFY_FAILED)
    }
}

fn render_search(out: &SearchOutcome, format: Format) -> String {
    match format {
        Format::Json => {
            let findings: Vec<Value> = out
                .findings
                .iter()
                .map(|f| {
                    json!({
                        "N": f.instance.n.to_string(),
                        "S": f.instance.s.to_string(),
                        "r": f.instance.r.to_string(),
                        "count": f.count,
                        "verified": f.verified,
                    })
                })
                .collect();
            let v = json!({ "findings": findings, "evaluated": out.evaluated, "exhausted": out.exhausted });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
        }
        Format::Lines | Format::Table => {
            let mut t = String::from("# S r N count verified\n");
            for f in &out.findings {
                let i = &f.instance;
                let _ = writeln!(t, "{} {} {} {} {}", i.s, i.r, i.n, f.count, f.verified);
            }
            let _ = writeln!(t, "# evaluated={} exhausted={}", out.evaluated, out.exhausted);
            t
        }
    }
}

fn cmd_search(a: &SearchArgs, stdout: &mut dyn Write) -> Result<i32> {
    let cfg = SearchConfig {
        s_min: a.s_min,
        s_max: a.s_max,
        target: a.target,
        budget: a.budget,
        r: a.r,
        count_signed: a.signed,
    };
    let outcome = search_records(&cfg)?;
    emit(&a.out, &render_search(&outcome, a.format), stdout)?;
    Ok(EXIT_OK)
}
