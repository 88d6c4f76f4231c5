//! Known extremal instances over `Z` and a small search for new ones.
//!
//! - Cohen family, `l >= 3`: exactly 6 positive divisors of `N(l)` are
//!   `≡ 1 mod S(l)`, with
//!   `N(l) = (2l+1)(l^2+1)(l^2+l+1)(2l^2-l+1)(2l^2+l+1)` and
//!   `S(l) = 2l^3 + l^2 + 2l`.
//! - Seven-signed family, `x >= 2`: 7 divisors `≡ 1 mod S(x)` counting both
//!   signs, with `N(x) = (x+2)(x+1)^2(x^2+x+1)(x^2+x+2)(x^2+2x+2)` and
//!   `S(x) = x^3 + 3x^2 + 4x + 3`.
//! - A standalone instance with 6 positive divisors and `ln S / ln N ≈ 0.3584`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::algorithms::divisors_rational;
use crate::oracle::oracle_rational;
use crate::remseq::ProblemInstance;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySource {
    Cohen(u64),
    SevenSigned(u64),
    Standalone,
    Search,
}

impl fmt::Display for FamilySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySource::Cohen(l) => write!(f, "cohen({l})"),
            FamilySource::SevenSigned(x) => write!(f, "seven({x})"),
            FamilySource::Standalone => write!(f, "standalone"),
            FamilySource::Search => write!(f, "search"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub source: FamilySource,
    pub n: BigInt,
    pub s: BigInt,
    pub r: BigInt,
}

impl FamilyInstance {
    /// The exact size gate `S^3 > N`.
    pub fn within_gate(&self) -> bool {
        &self.s * &self.s * &self.s > self.n.abs()
    }

    /// `ln S / ln N`, for display.
    pub fn alpha(&self) -> f64 {
        ln_big(&self.s.abs()) / ln_big(&self.n.abs())
    }
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(n: &BigInt) -> f64 {
    // keep 60 significant bits, account for the rest as a power of two
    let bits = n.bits();
    let shift = bits.saturating_sub(60);
    let top = (n >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn cohen_instance(l: u64) -> Result<FamilyInstance> {
    if l < 3 {
        return Err(Error::InvalidArgument(format!("the Cohen family starts at l = 3, got {l}")));
    }
    let l = BigInt::from(l);
    let l2 = &l * &l;
    let n = (&l * 2u32 + 1u32)
        * (&l2 + 1u32)
        * (&l2 + &l + 1u32)
        * (&l2 * 2u32 - &l + 1u32)
        * (&l2 * 2u32 + &l + 1u32);
    let s = &l2 * &l * 2u32 + &l2 + &l * 2u32;
    let inst = FamilyInstance { source: FamilySource::Cohen(l.to_u64().expect("small")), n, s, r: 1.into() };
    if !inst.within_gate() {
        return Err(Error::Inconsistent(format!("S^3 <= N for {}", inst.source)));
    }
    Ok(inst)
}

pub fn seven_signed_instance(x: u64) -> Result<FamilyInstance> {
    if x < 2 {
        return Err(Error::InvalidArgument(format!("the seven-signed family starts at x = 2, got {x}")));
    }
    let xb = BigInt::from(x);
    let x2 = &xb * &xb;
    let xp1 = &xb + 1u32;
    let n = (&xb + 2u32) * &xp1 * &xp1 * (&x2 + &xb + 1u32) * (&x2 + &xb + 2u32) * (&x2 + &xb * 2u32 + 2u32);
    let s = &x2 * &xb + &x2 * 3u32 + &xb * 4u32 + 3u32;
    Ok(FamilyInstance { source: FamilySource::SevenSigned(x), n, s, r: 1.into() })
}

pub fn standalone() -> FamilyInstance {
    FamilyInstance {
        source: FamilySource::Standalone,
        n: BigInt::from(104_254_876_089_000u64),
        s: BigInt::from(105_787u32),
        r: 1.into(),
    }
}

/// Outcome of checking one family member.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub instance: FamilyInstance,
    /// Signed divisors found by the algorithm, ascending.
    pub divisors: Vec<BigInt>,
    pub positive: usize,
    pub signed: usize,
    /// Same counts from trial division when `|N| <= 10^15`.
    pub oracle: Option<(usize, usize)>,
    pub expected: usize,
    pub count_signed: bool,
    pub gate: bool,
    pub alpha: f64,
    pub seconds: f64,
    pub passed: bool,
}

/// Expected count and whether it counts both signs.
pub fn expected_count(source: FamilySource) -> Option<(usize, bool)> {
    match source {
        FamilySource::Cohen(_) | FamilySource::Standalone => Some((6, false)),
        FamilySource::SevenSigned(_) => Some((7, true)),
        FamilySource::Search => None,
    }
}

/// Runs the rational algorithm (and trial division when feasible) on a
/// family member and compares the count with the expected one.
pub fn verify_family(inst: &FamilyInstance, count_signed: bool) -> Result<Verification> {
    let pi = ProblemInstance::rational(&inst.n, &inst.s, &inst.r)?;
    let report = divisors_rational(&pi)?;
    let mut divisors: Vec<BigInt> = report.divisors.iter().filter_map(|d| d.to_rational()).collect();
    divisors.sort();
    let positive = divisors.iter().filter(|d| d.is_positive()).count();
    let signed = divisors.len();
    let oracle = match oracle_rational(&inst.n, &inst.s, &inst.r) {
        Ok(o) => Some((o.divisors.iter().filter(|d| d.is_positive()).count(), o.divisors.len())),
        Err(Error::OracleWindow(_)) => None,
        Err(e) => return Err(e),
    };
    let expected = expected_count(inst.source).map_or(0, |(e, _)| e);
    let got = if count_signed { signed } else { positive };
    let oracle_ok = oracle.is_none_or(|o| o == (positive, signed));
    let gate = inst.within_gate();
    Ok(Verification {
        instance: inst.clone(),
        divisors,
        positive,
        signed,
        oracle,
        expected,
        count_signed,
        gate,
        alpha: inst.alpha(),
        seconds: report.stats.seconds,
        passed: got == expected && oracle_ok && gate,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub s_min: u64,
    pub s_max: u64,
    pub target: usize,
    /// Upper limit on the number of candidate `N` examined.
    pub budget: u64,
    pub r: i64,
    pub count_signed: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { s_min: 3, s_max: 80, target: 6, budget: 2_000_000, r: 1, count_signed: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub instance: FamilyInstance,
    pub count: usize,
    /// Trial division reproduced the count.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub findings: Vec<Finding>,
    pub evaluated: u64,
    /// The budget ran out before the range was covered.
    pub exhausted: bool,
}

fn count_in_class(n: u64, s: u64, r: i64, signed: bool) -> usize {
    let (s, r) = (s as i128, r as i128);
    let mut count = 0;
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            let pair = if i * i == n { vec![i] } else { vec![i, n / i] };
            for q in pair {
                let q = q as i128;
                count += usize::from((q - r).rem_euclid(s) == 0);
                if signed {
                    count += usize::from((-q - r).rem_euclid(s) == 0);
                }
            }
        }
        i += 1;
    }
    count
}

/// Scans `N` built as single elements and pairwise lcms of `{jS + r : 1 <= j < S}`
/// with `N < S^3` and `gcd(N, S) = 1`, keeping those with at least `target`
/// divisors in the class.
pub fn search_records(cfg: &SearchConfig) -> Result<SearchOutcome> {
    if cfg.s_min < 2 || cfg.s_min > cfg.s_max {
        return Err(Error::InvalidArgument("need 2 <= s_min <= s_max".into()));
    }
    if cfg.s_max > 20_000 {
        return Err(Error::InvalidArgument("s_max above 20000 overflows the search arithmetic".into()));
    }
    let mut findings = Vec::new();
    let mut evaluated = 0u64;
    for s in cfg.s_min..=cfg.s_max {
        let cube = s * s * s;
        let base: Vec<u64> = (1..s)
            .map(|j| j as i64 * s as i64 + cfg.r)
            .filter(|&d| d > 1)
            .map(|d| d as u64)
            .collect();
        let mut seen = BTreeSet::new();
        for (k, &a) in base.iter().enumerate() {
            for &b in std::iter::once(&a).chain(&base[k + 1..]) {
                let n = a.lcm(&b);
                if n >= cube || n.gcd(&s) != 1 || !seen.insert(n) {
                    continue;
                }
                if evaluated == cfg.budget {
                    return Ok(SearchOutcome { findings, evaluated, exhausted: true });
                }
                evaluated += 1;
                let count = count_in_class(n, s, cfg.r, cfg.count_signed);
                if count >= cfg.target {
                    let instance =
                        FamilyInstance { source: FamilySource::Search, n: n.into(), s: s.into(), r: cfg.r.into() };
                    let o = oracle_rational(&instance.n, &instance.s, &instance.r)?;
                    let oc = if cfg.count_signed {
                        o.divisors.len()
                    } else {
                        o.divisors.iter().filter(|d| d.is_positive()).count()
                    };
                    findings.push(Finding { instance, count, verified: oc == count });
                }
            }
        }
    }
    Ok(SearchOutcome { findings, evaluated, exhausted: false })
}
