//! Exact arithmetic for every supported ring.
//!
//! All magnitude comparisons are done on squared norms (or degrees), so no
//! correctness path touches floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::{Error, Result};

pub mod integer;
pub mod poly;
pub mod quadratic;

pub use integer::{ceil_sqrt, floor_sqrt, int_sqrt};
pub use poly::{IntPoly, Poly, RatPoly};
pub use quadratic::{Field, QuadInt};

/// Which ring an instance lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingId {
    RationalInt,
    Quadratic(Field),
    IntegerPoly,
}

impl RingId {
    /// Parse the CLI ring flag: `z`, `zi`, `q-2`, `q-3`, `q-7`, `q-11`, `zx`.
    pub fn from_flag(flag: &str) -> Result<Self> {
        match flag {
            "z" => Ok(RingId::RationalInt),
            "zi" | "q-1" => Ok(RingId::Quadratic(Field::Gaussian)),
            "zx" => Ok(RingId::IntegerPoly),
            other => {
                let d = other
                    .strip_prefix("q")
                    .and_then(|s| s.parse::<i64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown ring flag `{other}`")))?;
                Ok(RingId::Quadratic(Field::from_radicand(d)?))
            }
        }
    }

    pub fn flag(&self) -> String {
        match self {
            RingId::RationalInt => "z".into(),
            RingId::Quadratic(Field::Gaussian) => "zi".into(),
            RingId::Quadratic(f) => format!("q{}", f.radicand()),
            RingId::IntegerPoly => "zx".into(),
        }
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingId::RationalInt => write!(f, "Z"),
            RingId::Quadratic(Field::Gaussian) => write!(f, "Z[i]"),
            RingId::Quadratic(fd) => write!(f, "O_K, K = Q(sqrt({}))", fd.radicand()),
            RingId::IntegerPoly => write!(f, "Z[x]"),
        }
    }
}

/// A Euclidean domain element with a deterministic division.
///
/// Implemented by [`QuadInt`] (division by nearest rounding) and [`RatPoly`]
/// (long division over the rationals). `Z` is served through `Z[i]`.
pub trait EuclideanRing:
    Sized
    + Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;

    /// `self = q * divisor + r` with `r` smaller than `divisor`.
    fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)>;

    /// Canonical associate, used for gcd results.
    fn normalized(&self) -> Self;

    /// Inverse of a unit.
    fn unit_inverse(&self) -> Option<Self>;

    /// Exact square root, if one exists in the ring.
    fn sqrt_exact(&self) -> Option<Self>;

    /// For rings whose chain lives in a fraction field (the `Z[x]` chain runs
    /// in `Q[x]`), whether the element is integral.
    fn is_integral(&self) -> bool {
        true
    }

    fn scaled(&self, k: i64) -> Self;

    fn rem(&self, modulus: &Self) -> Result<Self> {
        Ok(self.div_rem(modulus)?.1)
    }

    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    fn divides(&self, n: &Self) -> bool {
        if self.is_zero() {
            return n.is_zero();
        }
        n.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }
}

/// Normalized gcd by repeated Euclidean division.
pub fn ring_gcd<E: EuclideanRing>(a: &E, b: &E) -> Result<E> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.normalized())
}

/// `(g, s, t)` with `s a + t b = g`, `g` a (not normalized) gcd.
pub fn extended_gcd<E: EuclideanRing>(a: &E, b: &E) -> Result<(E, E, E)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (a.one_like(), a.zero_like());
    let (mut t0, mut t1) = (a.zero_like(), a.one_like());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = s0 - q.clone() * &s1;
        let t = t0 - q * &t1;
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    Ok((r0, s0, t0))
}

/// `w` with `r w ≡ 1 (mod modulus)`, reduced modulo `modulus`.
pub fn mod_inverse<E: EuclideanRing>(r: &E, modulus: &E) -> Result<E> {
    if modulus.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (g, s, _) = extended_gcd(r, modulus)?;
    let g_inv = g
        .unit_inverse()
        .ok_or_else(|| Error::NotInvertible(r.to_string(), modulus.to_string()))?;
    (s * &g_inv).rem(modulus)
}

/// Gcd in `Z`, computed through the embedding `Z -> Z[i]`; the result is
/// the positive associate.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    let g = ring_gcd(&QuadInt::from_int(a.clone(), Field::Gaussian), &QuadInt::from_int(b.clone(), Field::Gaussian))?;
    Ok(g.to_rational().expect("gcd of rational integers is rational").abs())
}

/// Inverse in `Z / S`, reduced to the nearest-rounding residue.
pub fn int_mod_inverse(r: &BigInt, modulus: &BigInt) -> Result<BigInt> {
    let w = mod_inverse(&QuadInt::from_int(r.clone(), Field::Gaussian), &QuadInt::from_int(modulus.clone(), Field::Gaussian))?;
    Ok(w.to_rational().expect("inverse of a rational integer is rational"))
}
