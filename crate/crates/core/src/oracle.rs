//! Brute-force ground truth.
//!
//! Nothing here calls the Euclidean division, gcd or solver code of the
//! library; quadratic scans run on machine integers and polynomial checks use
//! their own schoolbook arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::remseq::ProblemInstance;
use crate::rings::{Field, IntPoly, QuadInt};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    ExhaustiveXScan,
    SubsetProduct,
    TrialDivision,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<T> {
    pub divisors: Vec<T>,
    pub method: OracleMethod,
}

/// Largest number of lattice points a quadratic scan will visit.
pub const MAX_SCAN_POINTS: u128 = 100_000_000;

type Pair = (i128, i128);

fn qmul(a: Pair, b: Pair, d: i128) -> Pair {
    ((a.0 * b.0 + d * a.1 * b.1) / 2, (a.0 * b.1 + a.1 * b.0) / 2)
}

fn norm4(a: Pair, d: i128) -> i128 {
    a.0 * a.0 - d * a.1 * a.1
}

fn valid(p: Pair, half: bool) -> bool {
    if half {
        (p.0 - p.1).rem_euclid(2) == 0
    } else {
        p.0.rem_euclid(2) == 0 && p.1.rem_euclid(2) == 0
    }
}

/// `a / b` when `b | a` in the ring.
fn qdiv(a: Pair, b: Pair, d: i128, half: bool) -> Option<Pair> {
    let n = norm4(b, d) / 4;
    if n == 0 {
        return None;
    }
    let p = qmul(a, (b.0, -b.1), d);
    if p.0 % n != 0 || p.1 % n != 0 {
        return None;
    }
    let q = (p.0 / n, p.1 / n);
    valid(q, half).then_some(q)
}

fn to_pair(z: &QuadInt) -> Result<Pair> {
    let f = |b: &BigInt| b.to_i128().ok_or_else(|| Error::OracleWindow(format!("{z} does not fit a machine word")));
    Ok((f(z.u())?, f(z.v())?))
}

fn isqrt(n: i128) -> i128 {
    (n.max(0) as u128).isqrt() as i128
}

/// Visits every half-coordinate pair `(u, v)` with `u^2 - d v^2 <= limit4`.
fn for_disk(limit4: i128, d: i128, half: bool, mut f: impl FnMut(Pair)) {
    let v_max = isqrt(limit4 / -d);
    for v in -v_max..=v_max {
        if !half && v % 2 != 0 {
            continue;
        }
        let rest = limit4 + d * v * v;
        let u_max = isqrt(rest);
        for u in -u_max..=u_max {
            let p = (u, v);
            if valid(p, half) && norm4(p, d) <= limit4 {
                f(p);
            }
        }
    }
}

/// Scans every `x` with `normSq(x) <= factor^2 normSq(S)` for `Sx + r | N`,
/// and every cofactor `e` with `normSq(e) <= normSq(S)` for `N / e ≡ r`.
pub fn oracle_quadratic(inst: &ProblemInstance<QuadInt>, factor: u32) -> Result<OracleResult<QuadInt>> {
    let field = inst.s.field();
    let d = field.radicand() as i128;
    let half = field.has_half_integers();
    let ns = inst.s.norm_sq();
    let nn = inst.n.norm_sq();
    if ns.bits() > 44 || nn.bits() > 100 {
        return Err(Error::OracleWindow("instance too large for a machine-integer scan".into()));
    }
    let ns = ns.to_i128().expect("checked");
    let f = factor as i128;
    let limit4 = 4 * f * f * ns;
    let approx_points = (limit4 as u128) * 4 / (-d as u128).max(1) + 4 * ns as u128;
    if approx_points > MAX_SCAN_POINTS * 4 {
        return Err(Error::OracleWindow(format!("scan window of about {} points exceeds the guard", approx_points / 4)));
    }
    let (s, r, n) = (to_pair(&inst.s)?, to_pair(&inst.r)?, to_pair(&inst.n)?);

    // a divisor's norm divides the norm of N; word-sized division when possible
    let nn = (norm4(n, d) / 4) as u128;
    let norm_divides = |p: Pair| {
        let m = (norm4(p, d) / 4) as u128;
        match (u64::try_from(nn), u64::try_from(m)) {
            _ if m == 0 => false,
            (Ok(a), Ok(b)) => a % b == 0,
            _ => nn % m == 0,
        }
    };

    let mut found: Vec<Pair> = Vec::new();
    for_disk(limit4, d, half, |x| {
        let dv = qmul(s, x, d);
        let dv = (dv.0 + r.0, dv.1 + r.1);
        if norm_divides(dv) && qdiv(n, dv, d, half).is_some() {
            found.push(dv);
        }
    });
    for_disk(4 * ns, d, half, |e| {
        if e == (0, 0) {
            return;
        }
        if let Some(dv) = qdiv(n, e, d, half) {
            if qdiv((dv.0 - r.0, dv.1 - r.1), s, d, half).is_some() {
                found.push(dv);
            }
        }
    });
    found.sort_unstable();
    found.dedup();
    let mut divisors: Vec<QuadInt> = found
        .into_iter()
        .map(|(u, v)| QuadInt::from_half(u.into(), v.into(), field).expect("valid pair"))
        .collect();
    divisors.sort_by(|a, b| a.report_cmp(b));
    Ok(OracleResult { divisors, method: OracleMethod::ExhaustiveXScan })
}

/// The oracle's default scan factor: 5 in `Z[i]` and 33 elsewhere.
pub fn default_scan_factor(field: Field) -> u32 {
    field.xy_bound()
}

fn pmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Long division by `b` that stays in `Z[x]`; `None` as soon as a quotient
/// coefficient would not be an integer.
fn int_divmod(a: &[BigInt], b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lb = &b[db];
    if rem.len() < b.len() {
        return Some((vec![BigInt::zero()], rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + db];
        let (q, m) = top.div_rem(lb);
        if !m.is_zero() {
            return None;
        }
        for (i, c) in b.iter().enumerate() {
            rem[k + i] -= &q * c;
        }
        quot[k] = q;
    }
    rem.truncate(db.max(1));
    Some((trim(quot), trim(rem)))
}

fn psub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let at = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
    trim((0..n).map(|i| at(a, i) - at(b, i)).collect())
}

fn coeffs(p: &IntPoly) -> Vec<BigInt> {
    if p.is_zero() {
        vec![BigInt::zero()]
    } else {
        p.coeffs().to_vec()
    }
}

/// Every `±` subset product of the monic factor multiset of `N` that lies in
/// the class of `r` mod `S` inside `Z[x]`, and whose cofactor reduces mod `S`
/// inside `Z[x]` as well.
pub fn oracle_poly(factors: &[IntPoly], s: &IntPoly, r: &IntPoly) -> Result<OracleResult<IntPoly>> {
    if factors.len() > 20 {
        return Err(Error::OracleWindow("at most 20 factors".into()));
    }
    if s.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidArgument("S must have positive degree".into()));
    }
    let mut multiset: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    for f in factors {
        if !f.is_monic() {
            return Err(Error::InvalidArgument(format!("factor {f} is not monic")));
        }
        *multiset.entry(coeffs(f)).or_default() += 1;
    }
    let distinct: Vec<(Vec<BigInt>, usize)> = multiset.into_iter().collect();
    let (sc, rc) = (coeffs(s), coeffs(r));

    // powers[k][e] = distinct[k]^e
    let powers: Vec<Vec<Vec<BigInt>>> = distinct
        .iter()
        .map(|(f, m)| {
            let mut v = vec![vec![BigInt::one()]];
            for _ in 0..*m {
                let next = pmul(v.last().expect("nonempty"), f);
                v.push(next);
            }
            v
        })
        .collect();

    let mut exps = vec![0usize; distinct.len()];
    let mut out: Vec<IntPoly> = Vec::new();
    loop {
        let mut d = vec![BigInt::one()];
        let mut e = vec![BigInt::one()];
        for (k, &x) in exps.iter().enumerate() {
            d = pmul(&d, &powers[k][x]);
            e = pmul(&e, &powers[k][distinct[k].1 - x]);
        }
        for sign in [1i32, -1] {
            let ds: Vec<BigInt> = d.iter().map(|c| c * sign).collect();
            let es: Vec<BigInt> = e.iter().map(|c| c * sign).collect();
            let class_ok = int_divmod(&psub(&ds, &rc), &sc).is_some_and(|(_, rem)| rem.iter().all(Zero::is_zero));
            if class_ok && int_divmod(&es, &sc).is_some() {
                out.push(IntPoly::new(ds));
            }
        }
        // next exponent vector
        let mut k = 0;
        loop {
            if k == exps.len() {
                out.sort_by(|a, b| a.report_cmp(b));
                out.dedup();
                return Ok(OracleResult { divisors: out, method: OracleMethod::SubsetProduct });
            }
            if exps[k] < distinct[k].1 {
                exps[k] += 1;
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

/// Signed divisors of `N` congruent to `r` mod `S` by trial division, ordered
/// by absolute value with the negative one first.
pub fn oracle_rational(n: &BigInt, s: &BigInt, r: &BigInt) -> Result<OracleResult<BigInt>> {
    let limit = BigInt::from(10u64).pow(15);
    if n.is_zero() || n.abs() > limit {
        return Err(Error::OracleWindow(format!("|N| = {} outside 1..=10^15", n.abs())));
    }
    let m = n.abs().to_u64().expect("checked");
    let s = s.to_i128().filter(|s| *s != 0).ok_or_else(|| Error::OracleWindow("S out of range".into()))?;
    let r = r.to_i128().ok_or_else(|| Error::OracleWindow("r out of range".into()))?;
    let mut divisors = Vec::new();
    let mut i = 1u64;
    while i * i <= m {
        if m % i == 0 {
            for q in [i, m / i] {
                for d in [-(q as i128), q as i128] {
                    if (d - r).rem_euclid(s) == 0 {
                        divisors.push(d);
                    }
                }
            }
        }
        i += 1;
    }
    divisors.sort_by_key(|d| (d.abs(), *d));
    divisors.dedup();
    Ok(OracleResult { divisors: divisors.into_iter().map(BigInt::from).collect(), method: OracleMethod::TrialDivision })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|b| b.to_i64().unwrap()).collect()
    }

    #[test]
    fn rational_examples() {
        let o = oracle_rational(&320320.into(), &69.into(), &1.into()).unwrap();
        assert_eq!(o.divisors.iter().filter(|d| d.is_positive()).count(), 6);
        let o = oracle_rational(&20160.into(), &31.into(), &1.into()).unwrap();
        assert_eq!(o.divisors.len(), 7);
        let o = oracle_rational(&12.into(), &5.into(), &1.into()).unwrap();
        assert_eq!(ints(&o.divisors), vec![1, -4, 6]);
    }

    #[test]
    fn quadratic_scan_finds_planted_and_unit() {
        let s = QuadInt::gaussian(7, 2);
        let x = QuadInt::gaussian(1, -1);
        let r = QuadInt::gaussian(1, 0);
        let rp = QuadInt::gaussian(2, 1);
        let dv = s.clone() * &x + &r;
        let n = dv.clone() * &(s.clone() * &QuadInt::gaussian(0, 1) + &rp);
        let inst = ProblemInstance::quadratic(n, s, r).unwrap();
        let o = oracle_quadratic(&inst, 5).unwrap();
        assert!(o.divisors.contains(&dv));
        // N ≡ r r' and 1 ≡ r, so 1 divides N and is listed
        assert!(o.divisors.contains(&QuadInt::one(Field::Gaussian)));
    }

    #[test]
    fn quadratic_scan_refuses_huge_windows() {
        let s = QuadInt::gaussian(1_000_000, 1);
        let inst = ProblemInstance::quadratic(QuadInt::gaussian(3, 0), s, QuadInt::gaussian(1, 0)).unwrap();
        assert!(matches!(oracle_quadratic(&inst, 33), Err(Error::OracleWindow(_))));
    }

    #[test]
    fn poly_subset_products() {
        let x1 = IntPoly::from_ints(&[1, 1]);
        let x2 = IntPoly::from_ints(&[1, 0, 1]);
        let s = IntPoly::from_ints(&[0, 0, 1]);
        let one = IntPoly::from_ints(&[1]);
        let o = oracle_poly(&[x1.clone(), x1.clone(), x2.clone()], &s, &one).unwrap();
        // subset products ≡ 1 mod x^2: 1 and x^2 + 1
        assert_eq!(o.divisors, vec![one.clone(), x2]);
        let o = oracle_poly(&[], &s, &one).unwrap();
        assert_eq!(o.divisors, vec![one]);
    }

    #[test]
    fn int_divmod_stays_integral() {
        let a: Vec<BigInt> = [1, 0, 3].iter().map(|&c| c.into()).collect();
        let b: Vec<BigInt> = [1, 2].iter().map(|&c| c.into()).collect();
        assert!(int_divmod(&a, &b).is_none());
        let b: Vec<BigInt> = [1, 1].iter().map(|&c| c.into()).collect();
        let (q, r) = int_divmod(&a, &b).unwrap();
        assert_eq!((ints(&q), ints(&r)), (vec![-3, 3], vec![4]));
    }
}
