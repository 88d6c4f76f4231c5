//! Timing protocol: random gate-satisfying instances per digit count `k`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::{BigInt, RandBigInt};
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithms::divisors_quadratic;
use crate::remseq::ProblemInstance;
use crate::rings::{floor_sqrt, Field, QuadInt};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub k_min: u32,
    pub k_max: u32,
    pub samples_per_k: usize,
    pub seed: u64,
    pub field: Field,
    /// CSV destination; the gnuplot data file goes next to it with a `.dat`
    /// extension.
    pub out: PathBuf,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples_per_k == 0 {
            return Err(Error::InvalidArgument("samples per k must be at least 1".into()));
        }
        if self.k_min > self.k_max {
            return Err(Error::InvalidArgument(format!("k_min {} exceeds k_max {}", self.k_min, self.k_max)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub k: u32,
    pub mean_s: f64,
    pub min_s: f64,
    pub max_s: f64,
    pub samples: usize,
    pub mean_ops: f64,
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

fn ceil_cbrt(n: &BigInt) -> BigInt {
    let c = n.cbrt();
    if &(&c * &c * &c) < n {
        c + 1u32
    } else {
        c
    }
}

/// Uniform magnitude in `[10^k, 10^(k+1))`, uniform sign.
fn signed_part<R: Rng>(rng: &mut R, k: u32) -> BigInt {
    let m = rng.gen_bigint_range(&pow10(k), &pow10(k + 1));
    if rng.gen_bool(0.5) {
        -m
    } else {
        m
    }
}

/// Uniform integer `m > 0` with `10^k <= m^3 < 10^(k+1)`.
fn cube_part<R: Rng>(rng: &mut R, k: u32) -> BigInt {
    let lo = ceil_cbrt(&pow10(k));
    let hi = ceil_cbrt(&pow10(k + 1));
    rng.gen_bigint_range(&lo, &hi)
}

/// Draws one accepted instance for digit count `k`. Returns the instance and
/// the number of rejected draws before it.
pub fn sample_instance<R: Rng>(rng: &mut R, k: u32, field: Field) -> (ProblemInstance<QuadInt>, u64) {
    let mut rejected = 0;
    loop {
        let n = QuadInt::new(signed_part(rng, k), signed_part(rng, k), field);
        let s = QuadInt::new(cube_part(rng, k), cube_part(rng, k), field);
        let ns = s.norm_sq();
        let box_half = floor_sqrt(&(&ns >> 1usize)).expect("nonnegative");
        let r = loop {
            let a = rng.gen_bigint_range(&-&box_half, &(&box_half + 1u32));
            let b = rng.gen_bigint_range(&-&box_half, &(&box_half + 1u32));
            let r = QuadInt::new(a, b, field);
            if r.norm_sq() * 2u32 <= ns {
                break r;
            }
        };
        let nn = n.norm_sq();
        if Pow::pow(&ns, 3u32) >= nn {
            // gcd conditions are enforced by the instance constructor
            if let Ok(inst) = ProblemInstance::quadratic(n, s, r) {
                return (inst, rejected);
            }
        }
        rejected += 1;
    }
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The instance stream of a configuration, without timing anything.
pub fn instance_stream(cfg: &BenchConfig) -> Result<Vec<(u32, Vec<ProblemInstance<QuadInt>>)>> {
    cfg.validate()?;
    let mut rng = rng_for(cfg.seed);
    Ok((cfg.k_min..=cfg.k_max)
        .map(|k| (k, (0..cfg.samples_per_k).map(|_| sample_instance(&mut rng, k, cfg.field).0).collect()))
        .collect())
}

/// Samples and times every instance; only the algorithm call is on the clock.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for (k, instances) in instance_stream(cfg)? {
        let mut times = Vec::with_capacity(instances.len());
        let mut ops = 0u64;
        for inst in &instances {
            let start = Instant::now();
            let report = divisors_quadratic(inst)?;
            times.push(start.elapsed().as_secs_f64());
            ops += report.stats.ops;
        }
        let n = times.len() as f64;
        rows.push(BenchRow {
            k,
            mean_s: times.iter().sum::<f64>() / n,
            min_s: times.iter().copied().fold(f64::INFINITY, f64::min),
            max_s: times.iter().copied().fold(0.0, f64::max),
            samples: times.len(),
            mean_ops: ops as f64 / n,
        });
    }
    Ok(rows)
}

pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("k,mean_s,min_s,max_s,samples\n");
    for r in rows {
        let _ = writeln!(out, "{},{:.9},{:.9},{:.9},{}", r.k, r.mean_s, r.min_s, r.max_s, r.samples);
    }
    out
}

pub fn render_dat(cfg: &BenchConfig, rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# resdiv bench, d = {}, seed = {}", cfg.field.radicand(), cfg.seed);
    let _ = writeln!(out, "# samples per k = {}, k = {}..{}", cfg.samples_per_k, cfg.k_min, cfg.k_max);
    let _ = writeln!(out, "# N parts: uniform magnitude in [10^k, 10^(k+1)), uniform sign");
    let _ = writeln!(out, "# S parts: uniform m > 0 with m^3 in [10^k, 10^(k+1))");
    let _ = writeln!(out, "# r: uniform in a box, kept when 2 normSq(r) <= normSq(S)");
    let _ = writeln!(out, "# k mean_s min_s max_s samples mean_ops");
    for r in rows {
        let _ = writeln!(out, "{} {:.9} {:.9} {:.9} {} {:.1}", r.k, r.mean_s, r.min_s, r.max_s, r.samples, r.mean_ops);
    }
    out
}

pub fn dat_path(csv: &Path) -> PathBuf {
    csv.with_extension("dat")
}

pub fn write_outputs(cfg: &BenchConfig, rows: &[BenchRow]) -> Result<()> {
    let io = |p: &Path, e: std::io::Error| Error::Io(format!("{}: {e}", p.display()));
    std::fs::write(&cfg.out, render_csv(rows)).map_err(|e| io(&cfg.out, e))?;
    let dat = dat_path(&cfg.out);
    std::fs::write(&dat, render_dat(cfg, rows)).map_err(|e| io(&dat, e))
}
