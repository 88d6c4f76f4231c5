//! Integer helpers: exact square roots and the rounding rule used by every
//! Euclidean division in the crate.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Floor of the square root of a nonnegative integer.
pub fn floor_sqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NegativeSqrt(n.to_string()));
    }
    Ok(n.sqrt())
}

/// Exact square root: `Ok(Some(s))` with `s >= 0` and `s^2 = n`, `Ok(None)`
/// when `n` is not a perfect square.
pub fn int_sqrt(n: &BigInt) -> Result<Option<BigInt>> {
    if n.is_negative() {
        return Err(Error::NegativeSqrt(n.to_string()));
    }
    if !passes_square_residue_filter(n) {
        return Ok(None);
    }
    let s = n.sqrt();
    Ok(if &s * &s == *n { Some(s) } else { None })
}

/// Smallest `s >= 0` with `s^2 >= n`; used for magnitude upper bounds.
pub fn ceil_sqrt(n: &BigInt) -> BigInt {
    if n.sign() != Sign::Plus {
        return BigInt::zero();
    }
    let s = n.sqrt();
    if &s * &s == *n {
        s
    } else {
        s + 1
    }
}

// Squares mod 64, 63, 65 and 11. A nonnegative integer failing any table is
// not a square.
const SQ64: u64 = {
    let mut mask = 0u64;
    let mut i = 0;
    while i < 64 {
        mask |= 1 << ((i * i) % 64);
        i += 1;
    }
    mask
};

const fn square_table<const M: usize>() -> [bool; M] {
    let mut t = [false; M];
    let mut i = 0;
    while i < M {
        t[(i * i) % M] = true;
        i += 1;
    }
    t
}

const SQ63: [bool; 63] = square_table::<63>();
const SQ65: [bool; 65] = square_table::<65>();
const SQ11: [bool; 11] = square_table::<11>();

/// Cheap necessary condition for `n` to be a perfect square.
pub fn passes_square_residue_filter(n: &BigInt) -> bool {
    let low = n.iter_u64_digits().next().unwrap_or(0);
    if SQ64 & (1 << (low % 64)) == 0 {
        return false;
    }
    let m = (n % 45045u32).to_u64_digits().1.first().copied().unwrap_or(0); // 63 * 65 * 11
    square_residues_allow(low % 64, m)
}

/// The tables behind [`passes_square_residue_filter`], given `n mod 64` and
/// `n mod 45045`.
pub fn square_residues_allow(n_mod_64: u64, n_mod_45045: u64) -> bool {
    let m = n_mod_45045 as usize;
    SQ64 & (1 << n_mod_64) != 0 && SQ63[m % 63] && SQ65[m % 65] && SQ11[m % 11]
}

/// Same filter for machine integers.
pub fn u128_is_square(n: u128) -> Option<u128> {
    if SQ64 & (1 << (n % 64)) == 0 {
        return None;
    }
    let m = (n % 45045) as usize;
    if !(SQ63[m % 63] && SQ65[m % 65] && SQ11[m % 11]) {
        return None;
    }
    let s = n.sqrt();
    (s * s == n).then_some(s)
}

/// Nearest integer to `num/den`, ties resolved toward negative infinity.
pub fn round_half_down(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(den.is_positive());
    // ceil((2 num - den) / (2 den))
    let twice_den: BigInt = den << 1;
    let shifted: BigInt = (num << 1) - den;
    -((-shifted).div_floor(&twice_den))
}

/// Exact square root of a rational in lowest terms.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt(q.numer()).ok()??;
    let d = int_sqrt(q.denom()).ok()??;
    Some(BigRational::new(n, d))
}

pub fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

/// Signed divisors of `n != 0` by trial division, positive divisors first.
pub fn signed_divisors_u64(n: u64) -> Vec<i128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i.saturating_mul(i) <= n {
        if n % i == 0 {
            small.push(i as i128);
            if i != n / i {
                large.push((n / i) as i128);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    let neg: Vec<i128> = small.iter().map(|d| -d).collect();
    small.extend(neg);
    small
}
