//! Rings of integers of the imaginary quadratic fields `Q(sqrt d)`,
//! `d ∈ {-1, -2, -3, -7, -11}`.
//!
//! An element is stored as `(u + v w) / 2` with `w = sqrt d`. For
//! `d = -1, -2` both coordinates are even; for `d ≡ 1 (mod 4)` they only have
//! to share parity. With this layout every field uses the same formulas.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::integer::{int_sqrt, round_half_down};
use super::EuclideanRing;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// `Z[i]`
    Gaussian,
    /// `Z[sqrt -2]`
    Minus2,
    /// Eisenstein integers, `Z[(1 + sqrt -3)/2]`
    Minus3,
    Minus7,
    Minus11,
}

impl Field {
    pub const ALL: [Field; 5] = [Field::Gaussian, Field::Minus2, Field::Minus3, Field::Minus7, Field::Minus11];

    pub fn from_radicand(d: i64) -> Result<Self> {
        match d {
            -1 => Ok(Field::Gaussian),
            -2 => Ok(Field::Minus2),
            -3 => Ok(Field::Minus3),
            -7 => Ok(Field::Minus7),
            -11 => Ok(Field::Minus11),
            other => Err(Error::UnsupportedField(other)),
        }
    }

    pub fn radicand(self) -> i64 {
        match self {
            Field::Gaussian => -1,
            Field::Minus2 => -2,
            Field::Minus3 => -3,
            Field::Minus7 => -7,
            Field::Minus11 => -11,
        }
    }

    /// Whether half-integer coordinates occur (`d ≡ 1 mod 4`).
    pub fn has_half_integers(self) -> bool {
        matches!(self, Field::Minus3 | Field::Minus7 | Field::Minus11)
    }

    /// `(num, den)` with `normSq(a mod b) <= num/den * normSq(b)` for the
    /// division implemented here.
    pub fn division_bound(self) -> (u32, u32) {
        match self {
            Field::Gaussian => (1, 2),
            Field::Minus2 => (3, 4),
            _ => (15, 16),
        }
    }

    /// Default radius factor `R` for the right-hand-side enumeration.
    pub fn default_radius(self) -> u32 {
        match self {
            Field::Gaussian => 12,
            _ => 530,
        }
    }

    /// Bound factor on `|x|, |y|` relative to `|S|` for nonzero solutions
    /// of a gate-satisfying instance.
    pub fn xy_bound(self) -> u32 {
        match self {
            Field::Gaussian => 5,
            _ => 33,
        }
    }

    pub fn units(self) -> Vec<QuadInt> {
        let mk = |u: i64, v: i64| QuadInt::from_half_unchecked(BigInt::from(u), BigInt::from(v), self);
        match self {
            Field::Gaussian => vec![mk(2, 0), mk(0, 2), mk(-2, 0), mk(0, -2)],
            Field::Minus3 => vec![mk(2, 0), mk(1, 1), mk(-1, 1), mk(-2, 0), mk(-1, -1), mk(1, -1)],
            _ => vec![mk(2, 0), mk(-2, 0)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    u: BigInt,
    v: BigInt,
    field: Field,
}

impl QuadInt {
    /// `(u + v w)/2`, rejecting coordinates that are not integral.
    pub fn from_half(u: BigInt, v: BigInt, field: Field) -> Result<Self> {
        let ok = if field.has_half_integers() {
            u.is_even() == v.is_even()
        } else {
            u.is_even() && v.is_even()
        };
        if !ok {
            return Err(Error::Parse(format!(
                "({u} + {v}*w)/2 is not an algebraic integer for d = {}",
                field.radicand()
            )));
        }
        Ok(QuadInt { u, v, field })
    }

    pub(crate) fn from_half_unchecked(u: BigInt, v: BigInt, field: Field) -> Self {
        debug_assert!(Self::from_half(u.clone(), v.clone(), field).is_ok());
        QuadInt { u, v, field }
    }

    /// `a + b w`.
    pub fn new(a: BigInt, b: BigInt, field: Field) -> Self {
        QuadInt { u: a << 1, v: b << 1, field }
    }

    pub fn from_int(n: impl Into<BigInt>, field: Field) -> Self {
        Self::new(n.into(), BigInt::zero(), field)
    }

    pub fn gaussian(a: i64, b: i64) -> Self {
        Self::new(a.into(), b.into(), Field::Gaussian)
    }

    pub fn zero(field: Field) -> Self {
        Self::from_int(0, field)
    }

    pub fn one(field: Field) -> Self {
        Self::from_int(1, field)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Doubled rational coordinate.
    pub fn u(&self) -> &BigInt {
        &self.u
    }

    /// Doubled `w` coordinate.
    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    /// The rational integer this element equals, if `v = 0`.
    pub fn to_rational(&self) -> Option<BigInt> {
        self.v.is_zero().then(|| &self.u >> 1)
    }

    /// Squared complex absolute value `(u^2 - d v^2) / 4`.
    pub fn norm_sq(&self) -> BigInt {
        (&self.u * &self.u - &self.v * &self.v * self.field.radicand()) >> 2
    }

    pub fn conj(&self) -> Self {
        QuadInt { u: self.u.clone(), v: -&self.v, field: self.field }
    }

    /// Ordering used for reports: by norm, then by coordinates.
    pub fn report_cmp(&self, other: &Self) -> Ordering {
        self.norm_sq()
            .cmp(&other.norm_sq())
            .then_with(|| self.u.cmp(&other.u))
            .then_with(|| self.v.cmp(&other.v))
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.field, other.field, "mixed quadratic fields");
    }

    /// Euclidean division with nearest rounding, ties toward negative
    /// infinity. For `d ≡ 1 mod 4` the `w` coordinate is rounded to the nearest
    /// half-integer first and the rational coordinate is then rounded among
    /// values of matching parity.
    pub fn div_rem(&self, b: &Self) -> Result<(Self, Self)> {
        self.check_field(b);
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.field.radicand();
        // self / b = (x + y w) / m
        let m = &b.u * &b.u - &b.v * &b.v * d;
        let x = &self.u * &b.u - &self.v * &b.v * d;
        let y = &self.v * &b.u - &self.u * &b.v;
        let (qu, qv) = if self.field.has_half_integers() {
            let t = round_half_down(&(&y << 1), &m);
            let s_off = round_half_down(&((&x << 1) - &t * &m), &(&m << 1));
            (&t + (s_off << 1), t)
        } else {
            (round_half_down(&x, &m) << 1, round_half_down(&y, &m) << 1)
        };
        let q = QuadInt { u: qu, v: qv, field: self.field };
        let r = self - &(&q * b);
        Ok((q, r))
    }

    /// Exact square root through the norm: with `n = sqrt(normSq(w))` the
    /// root `(u + v w)/2` satisfies `u^2 = U + 2n` and `v^2 = (2n - U)/|d|`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = int_sqrt(&self.norm_sq()).ok()??;
        let two_n: BigInt = &n << 1;
        let u_sq = &self.u + &two_n;
        let v_sq_num = &two_n - &self.u;
        let abs_d = BigInt::from(-self.field.radicand());
        if u_sq.is_negative() || v_sq_num.is_negative() || !v_sq_num.is_multiple_of(&abs_d) {
            return None;
        }
        let u = int_sqrt(&u_sq).ok()??;
        let mut v = int_sqrt(&(v_sq_num / abs_d)).ok()??;
        // uv must equal the doubled w coordinate of the square
        if (&u * &v).sign() != self.v.sign() && !(&u * &v).is_zero() {
            v = -v;
        }
        let z = QuadInt::from_half(u, v, self.field).ok()?;
        (&z * &z == *self).then_some(z)
    }

    pub fn parse(s: &str, field: Field) -> Result<Self> {
        parse_quad(s, field)
    }
}

impl EuclideanRing for QuadInt {
    fn zero_like(&self) -> Self {
        QuadInt::zero(self.field)
    }
    fn one_like(&self) -> Self {
        QuadInt::one(self.field)
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
    fn is_unit(&self) -> bool {
        self.norm_sq().is_one()
    }
    fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        QuadInt::div_rem(self, divisor)
    }
    /// First associate with `u > 0` (or `u = 0, v > 0`) in lexicographic
    /// `(u, v)` order.
    fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let assoc: Vec<QuadInt> = self.field.units().iter().map(|e| e * self).collect();
        let preferred = |q: &&QuadInt| q.u.is_positive();
        let fallback = |q: &&QuadInt| q.u.is_zero() && q.v.is_positive();
        let pool: Vec<&QuadInt> = if assoc.iter().any(|q| q.u.is_positive()) {
            assoc.iter().filter(preferred).collect()
        } else {
            assoc.iter().filter(fallback).collect()
        };
        pool.into_iter()
            .min_by(|a, b| a.u.cmp(&b.u).then_with(|| a.v.cmp(&b.v)))
            .cloned()
            .expect("a nonzero element has an associate in the right half plane")
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.is_unit().then(|| self.conj())
    }
    fn sqrt_exact(&self) -> Option<Self> {
        self.sqrt()
    }
    fn scaled(&self, k: i64) -> Self {
        QuadInt { u: &self.u * k, v: &self.v * k, field: self.field }
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        self.check_field(rhs);
        QuadInt { u: &self.u + &rhs.u, v: &self.v + &rhs.v, field: self.field }
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        self.check_field(rhs);
        QuadInt { u: &self.u - &rhs.u, v: &self.v - &rhs.v, field: self.field }
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        self.check_field(rhs);
        let d = self.field.radicand();
        let u = (&self.u * &rhs.u + &self.v * &rhs.v * d) >> 1;
        let v = (&self.u * &rhs.v + &self.v * &rhs.u) >> 1;
        QuadInt { u, v, field: self.field }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { u: -&self.u, v: -&self.v, field: self.field }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $m(self, rhs: QuadInt) -> QuadInt { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $m(self, rhs: &QuadInt) -> QuadInt { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let halves = self.u.is_odd();
        let coord = |n: &BigInt| if halves { format!("{n}/2") } else { (n >> 1usize).to_string() };
        if self.v.is_zero() {
            return write!(f, "{}", coord(&self.u));
        }
        let vabs = self.v.abs();
        let w_term = if !halves && vabs == BigInt::from(2) { "w".to_string() } else { format!("{}*w", coord(&vabs)) };
        if self.u.is_zero() {
            let sign = if self.v.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{w_term}");
        }
        let sign = if self.v.is_negative() { "-" } else { "+" };
        write!(f, "{}{sign}{w_term}", coord(&self.u))
    }
}

/// Parse a sum of terms `a`, `a/2`, `b*w`, `b/2*w`, `w` (also accepting `i`
/// for `w` in `Z[i]`).
fn parse_quad(s: &str, field: Field) -> Result<QuadInt> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let mut u = BigInt::zero();
    let mut v = BigInt::zero();
    for (neg, term) in split_signed_terms(&compact)? {
        let (body, is_w) = if let Some(b) = term.strip_suffix("*w").or_else(|| term.strip_suffix("*i")) {
            (b, true)
        } else if term == "w" || (term == "i" && field == Field::Gaussian) {
            ("1", true)
        } else if let Some(b) = term.strip_suffix('w').or_else(|| term.strip_suffix('i').filter(|_| field == Field::Gaussian)) {
            (b, true)
        } else {
            (term, false)
        };
        let doubled = parse_doubled_coordinate(body)?;
        let doubled = if neg { -doubled } else { doubled };
        if is_w {
            v += doubled;
        } else {
            u += doubled;
        }
    }
    QuadInt::from_half(u, v, field)
}

/// Twice the value of `n` or `n/2`.
fn parse_doubled_coordinate(body: &str) -> Result<BigInt> {
    let bad = || Error::Parse(format!("bad coordinate `{body}`"));
    if let Some(num) = body.strip_suffix("/2") {
        BigInt::from_str(num).map_err(|_| bad())
    } else {
        BigInt::from_str(body).map(|n| n << 1).map_err(|_| bad())
    }
}

/// Split `a+b-c` into `(negated, term)` pairs; a leading sign is allowed.
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut neg = false;
    let mut i = 0;
    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
        neg = bytes[i] == b'-';
        i += 1;
        start = i;
    }
    while i <= bytes.len() {
        let at_sep = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^');
        if at_sep {
            let term = &s[start..i];
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            out.push((neg, term));
            if i < bytes.len() {
                neg = bytes[i] == b'-';
            }
            start = i + 1;
        }
        i += 1;
    }
    Ok(out)
}
