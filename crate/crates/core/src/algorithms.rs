//! Per-ring drivers and divisor reports.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::time::Instant;

use crate::remseq::{build_chain, ProblemInstance};
use crate::rings::{EuclideanRing, QuadInt, RatPoly, RingId};
use crate::solver::{sweep_index, sweep_index_poly, trivial_divisor_check, Counters, ShiftMode, SolutionPair};
use crate::{Error, Result};

/// Elements that can appear in a report, with the report ordering.
pub trait Reportable: EuclideanRing {
    fn report_cmp(&self, other: &Self) -> Ordering;
}

impl Reportable for QuadInt {
    fn report_cmp(&self, other: &Self) -> Ordering {
        QuadInt::report_cmp(self, other)
    }
}

impl Reportable for RatPoly {
    fn report_cmp(&self, other: &Self) -> Ordering {
        RatPoly::report_cmp(self, other)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Stats {
    /// Chain length.
    pub t: usize,
    pub candidates: u64,
    pub solves: u64,
    pub seconds: f64,
    /// Elementary operations: chain steps, candidate evaluations and exact
    /// solves.
    pub ops: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisorReport<E> {
    pub instance: ProblemInstance<E>,
    /// Sorted, duplicate free.
    pub divisors: Vec<E>,
    /// `witnesses[k]` explains `divisors[k]`.
    pub witnesses: Vec<SolutionPair<E>>,
    pub stats: Stats,
}

/// Deduplicates, re-verifies and sorts raw solutions. The first discovery
/// (lowest chain index, then right-hand side index) is kept as the witness.
pub fn assemble_report<E: Reportable>(
    mut raw: Vec<SolutionPair<E>>,
    inst: &ProblemInstance<E>,
    stats: Stats,
) -> Result<DivisorReport<E>> {
    raw.sort_by_key(|p| p.discovered_at);
    let mut kept: Vec<SolutionPair<E>> = Vec::new();
    for p in raw {
        if kept.iter().any(|q| q.divisor == p.divisor) {
            continue;
        }
        verify_divisor(&p.divisor, inst)?;
        kept.push(p);
    }
    kept.sort_by(|a, b| a.divisor.report_cmp(&b.divisor));
    Ok(DivisorReport {
        instance: inst.clone(),
        divisors: kept.iter().map(|p| p.divisor.clone()).collect(),
        witnesses: kept,
        stats,
    })
}

fn verify_divisor<E: EuclideanRing>(d: &E, inst: &ProblemInstance<E>) -> Result<()> {
    let cofactor_ok = inst.n.div_exact(d).is_some_and(|c| c.is_integral());
    let class_ok = (d.clone() - &inst.r).div_exact(&inst.s).is_some_and(|x| x.is_integral());
    if d.is_integral() && cofactor_ok && class_ok {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!("reported divisor {d} failed re-verification")))
    }
}

/// All divisors of `N` congruent to `r` mod `S` in a quadratic ring, using
/// the default right-hand-side radius of the field.
pub fn divisors_quadratic(inst: &ProblemInstance<QuadInt>) -> Result<DivisorReport<QuadInt>> {
    let radius = inst.s.field().default_radius();
    divisors_quadratic_with_radius(inst, radius)
}

pub fn divisors_quadratic_with_radius(inst: &ProblemInstance<QuadInt>, radius: u32) -> Result<DivisorReport<QuadInt>> {
    let start = Instant::now();
    let chain = build_chain(inst)?;
    let mut raw = trivial_divisor_check(inst);
    let mut counters = Counters::default();
    for i in 1..=chain.t() {
        let (a, b, c) = &chain.triples[i];
        raw.extend(sweep_index(inst, i, (a, b, c), radius, &mut counters));
    }
    let stats = finish_stats(chain.t(), counters, start);
    assemble_report(raw, inst, stats)
}

fn finish_stats(t: usize, counters: Counters, start: Instant) -> Stats {
    Stats {
        t,
        candidates: counters.candidates,
        solves: counters.solves,
        seconds: start.elapsed().as_secs_f64(),
        ops: t as u64 + counters.candidates + counters.solves,
    }
}

/// Signed rational divisors: the `Z[i]` report restricted to real elements.
pub fn divisors_rational(inst: &ProblemInstance<QuadInt>) -> Result<DivisorReport<QuadInt>> {
    if inst.ring != RingId::RationalInt {
        return Err(Error::InvalidArgument(format!("expected a rational instance, got {}", inst.ring)));
    }
    let mut report = divisors_quadratic(inst)?;
    let keep: Vec<bool> = report.divisors.iter().map(QuadInt::is_rational).collect();
    let mut k = keep.iter();
    report.divisors.retain(|_| *k.next().expect("aligned"));
    let mut k = keep.iter();
    report.witnesses.retain(|_| *k.next().expect("aligned"));
    Ok(report)
}

/// All divisors in `Z[x]` of `N` congruent to `r` mod `S`.
pub fn divisors_poly(inst: &ProblemInstance<RatPoly>) -> Result<DivisorReport<RatPoly>> {
    divisors_poly_with_mode(inst, ShiftMode::Full)
}

pub fn divisors_poly_with_mode(inst: &ProblemInstance<RatPoly>, mode: ShiftMode) -> Result<DivisorReport<RatPoly>> {
    let start = Instant::now();
    let chain = build_chain(inst)?;
    let mut raw = trivial_divisor_check(inst);
    let mut counters = Counters::default();
    if inst.lead_list.as_ref().is_some_and(|l| !l.is_empty()) {
        for i in 1..=chain.t() {
            raw.extend(sweep_index_poly(&chain, inst, i, mode, &mut counters));
        }
    }
    let stats = finish_stats(chain.t(), counters, start);
    assemble_report(raw, inst, stats)
}

impl<E: Reportable> DivisorReport<E> {
    /// One divisor per line, in the element syntax the parser accepts.
    pub fn render_lines(&self) -> String {
        let mut out = String::new();
        for d in &self.divisors {
            let _ = writeln!(out, "{d}");
        }
        out
    }

    /// Human-readable table with one row per divisor and its witness.
    pub fn render_table(&self) -> String {
        let inst = &self.instance;
        let mut out = String::new();
        let _ = writeln!(out, "ring: {}", inst.ring);
        let _ = writeln!(out, "N = {}", inst.n);
        let _ = writeln!(out, "S = {}", inst.s);
        let _ = writeln!(out, "r = {}   r' = {}", inst.r, inst.r_prime);
        if !inst.within_gate {
            let _ = writeln!(out, "warning: size gate fails; the list may be incomplete");
        }
        let rows: Vec<[String; 4]> = self
            .witnesses
            .iter()
            .map(|w| {
                let (i, j) = w.discovered_at;
                [w.divisor.to_string(), w.x.to_string(), w.y.to_string(), format!("{i}/{j}")]
            })
            .collect();
        let header = ["divisor", "x", "y", "found at"];
        let mut width = header.map(str::len);
        for row in &rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: [&str; 4]| {
            let mut s = String::new();
            for (k, c) in cells.iter().enumerate() {
                let _ = write!(s, "{:<w$}  ", c, w = width[k]);
            }
            s.trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(header));
        for row in &rows {
            let _ = writeln!(out, "{}", line([&row[0], &row[1], &row[2], &row[3]]));
        }
        let s = &self.stats;
        let _ = writeln!(
            out,
            "{} divisor(s); t={} candidates={} solves={} seconds={:.6}",
            self.divisors.len(),
            s.t,
            s.candidates,
            s.solves,
            s.seconds
        );
        out
    }
}
