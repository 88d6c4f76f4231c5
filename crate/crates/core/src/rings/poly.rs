//! Dense univariate polynomials over `Z` and `Q`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use super::integer::{int_sqrt, is_integer, rational_sqrt};
use super::quadratic::split_signed_terms;
use super::EuclideanRing;
use crate::{Error, Result};

/// Coefficients are stored constant term first with no trailing zeros, so the
/// zero polynomial is the empty vector and has no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<C: Clone + Num> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(C, C) -> C) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| f(self.coeff(i), rhs.coeff(i))).collect())
    }

    fn convolve(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Ordering used for reports: degree, then coefficients from the top.
    pub fn report_cmp(&self, other: &Self) -> Ordering
    where
        C: Ord,
    {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl IntPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Square root in `Z[x]` via the power-series recurrence, confirmed by
    /// squaring. Returns the root with positive lowest nonzero coefficient.
    pub fn sqrt(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (shift, body) = split_low_zeros(&self.coeffs)?;
        let m = body.len() - 1;
        if m % 2 == 1 {
            return None;
        }
        let a0 = int_sqrt(&body[0]).ok()??;
        let two_a0: BigInt = &a0 << 1;
        let n = m / 2;
        let mut a = vec![a0];
        for i in 1..=n {
            let mut acc = body[i].clone();
            for k in 1..i {
                acc -= &a[k] * &a[i - k];
            }
            if !(&acc % &two_a0).is_zero() {
                return None;
            }
            a.push(acc / &two_a0);
        }
        let root = shifted(a, shift / 2);
        (&root * &root == *self).then_some(root)
    }

    pub fn parse(s: &str) -> Result<IntPoly> {
        let q = RatPoly::parse(s)?;
        q.to_int_poly().ok_or_else(|| Error::Parse(format!("`{s}` has non-integer coefficients")))
    }
}

impl RatPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        IntPoly::from_ints(c).to_rat()
    }

    pub fn to_int_poly(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .all(is_integer)
            .then(|| IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Long division: `self = q * b + r` with `deg r < deg b`.
    pub fn div_rem(&self, b: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let Some(db) = b.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = b.leading().expect("nonzero").recip();
        let mut rem = self.coeffs.clone();
        let Some(da) = self.degree().filter(|&da| da >= db) else {
            return Ok((RatPoly::zero(), self.clone()));
        };
        let mut quot = vec![BigRational::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = &rem[k + db] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    /// Square root in `Q[x]`, same recurrence as [`IntPoly::sqrt`].
    pub fn sqrt(&self) -> Option<RatPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (shift, body) = split_low_zeros(&self.coeffs)?;
        let m = body.len() - 1;
        if m % 2 == 1 {
            return None;
        }
        let a0 = rational_sqrt(&body[0])?;
        let inv_two_a0 = (&a0 + &a0).recip();
        let n = m / 2;
        let mut a = vec![a0];
        for i in 1..=n {
            let mut acc = body[i].clone();
            for k in 1..i {
                acc -= &a[k] * &a[i - k];
            }
            a.push(acc * &inv_two_a0);
        }
        let root = shifted(a, shift / 2);
        (&root * &root == *self).then_some(root)
    }

    pub fn parse(s: &str) -> Result<RatPoly> {
        parse_poly(s)
    }
}

/// Splits off `x^shift` from a nonzero polynomial; `None` when the shift is
/// odd.
fn split_low_zeros<C: Clone + Num>(coeffs: &[C]) -> Option<(usize, &[C])> {
    let shift = coeffs.iter().take_while(|c| c.is_zero()).count();
    (shift % 2 == 0).then(|| (shift, &coeffs[shift..]))
}

fn shifted<C: Clone + Num>(a: Vec<C>, k: usize) -> Poly<C> {
    let mut out = vec![C::zero(); k];
    out.extend(a);
    Poly::new(out)
}

impl EuclideanRing for RatPoly {
    fn zero_like(&self) -> Self {
        RatPoly::zero()
    }
    fn one_like(&self) -> Self {
        RatPoly::constant(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }
    fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        RatPoly::div_rem(self, divisor)
    }
    fn normalized(&self) -> Self {
        self.monic()
    }
    fn unit_inverse(&self) -> Option<Self> {
        EuclideanRing::is_unit(self).then(|| RatPoly::constant(self.coeffs[0].recip()))
    }
    fn sqrt_exact(&self) -> Option<Self> {
        self.sqrt()
    }
    fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }
    fn scaled(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }
}

impl<'a, C: Clone + Num> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a, C: Clone + Num> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a, C: Clone + Num> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.convolve(rhs)
    }
}

impl<C: Clone + Num + Neg<Output = C>> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly { coeffs: self.coeffs.iter().cloned().map(|c| -c).collect() }
    }
}

impl<C: Clone + Num + Neg<Output = C>> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Clone + Num> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> { (&self).$m(&rhs) }
        }
        impl<'a, C: Clone + Num> $tr<&'a Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: &Poly<C>) -> Poly<C> { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<C: Clone + Num + Signed + fmt::Display> fmt::Display for Poly<C> {
    /// `c0 + c1*x + ... + ck*x^k`, skipping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{var}")?,
                _ => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad()),
    }
}

fn parse_poly(s: &str) -> Result<RatPoly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<BigRational> = Vec::new();
    for (neg, term) in split_signed_terms(&compact)? {
        let (coef, power) = match term.find('x') {
            None => (parse_rational(term)?, 0usize),
            Some(pos) => {
                let head = &term[..pos];
                let coef = match head.strip_suffix('*').unwrap_or(head) {
                    "" => BigRational::one(),
                    c => parse_rational(c)?,
                };
                let tail = &term[pos + 1..];
                let power = match tail.strip_prefix('^') {
                    Some(p) => p.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?,
                    None if tail.is_empty() => 1,
                    None => return Err(Error::Parse(format!("bad term `{term}`"))),
                };
                (coef, power)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigRational::zero());
        }
        coeffs[power] += if neg { -coef } else { coef };
    }
    Ok(RatPoly::new(coeffs))
}
