//! Problem instances and the remainder-triple chain.
//!
//! With `a_0 = S`, `b_0 = 0`, `c_0 = 0`, `a_1 = r' r^{-1}`, `b_1 = 1` and
//! `c_1 = ((N - r r') / S) r^{-1}` (both mod `S`), each further triple comes
//! from one Euclidean step on the `a` column:
//!
//! ```text
//! a_{k+1} = a_{k-1} - q_k a_k
//! b_{k+1} = b_{k-1} - q_k b_k
//! c_{k+1} = c_{k-1} - q_k c_k  (mod S)
//! ```
//!
//! Every solution of `(Sx + r)(Sy + r') = N` satisfies
//! `a_k x + b_k y ≡ c_k (mod S)` for all `k`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rings::integer::signed_divisors_u64;
use crate::rings::{mod_inverse, ring_gcd, EuclideanRing, Field, IntPoly, QuadInt, RatPoly, RingId};
use crate::{Error, Result};

/// `(N, S, r)` with the derived `r' = N r^{-1} mod S`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance<E> {
    pub ring: RingId,
    pub n: E,
    pub s: E,
    /// `r` reduced mod `S`.
    pub r: E,
    pub r_prime: E,
    /// Possible leading coefficients of `f` (`Z[x]` only).
    pub lead_list: Option<Vec<BigInt>>,
    /// Whether `|S|^3 > |N|` (resp. `3 deg S >= deg N`) holds. Instances
    /// outside the gate are still solved soundly but completeness is not
    /// guaranteed.
    pub within_gate: bool,
}

fn reduce_and_invert<E: EuclideanRing>(n: &E, s: &E, r: &E) -> Result<(E, E)> {
    if n.is_zero() {
        return Err(Error::InvalidInstance("N must be nonzero".into()));
    }
    if s.is_zero() || s.is_unit() {
        return Err(Error::InvalidInstance("S must be a nonzero non-unit".into()));
    }
    if !ring_gcd(n, s)?.is_unit() {
        return Err(Error::InvalidInstance(format!("gcd(N, S) is not a unit for N = {n}, S = {s}")));
    }
    let r = r.rem(s)?;
    if r.is_zero() || !ring_gcd(s, &r)?.is_unit() {
        return Err(Error::InvalidInstance(format!("gcd(S, r) is not a unit for S = {s}, r = {r}")));
    }
    let r_inv = mod_inverse(&r, s)?;
    let r_prime = (n.clone() * &r_inv).rem(s)?;
    Ok((r, r_prime))
}

impl ProblemInstance<QuadInt> {
    /// Instance over the ring of integers of `Q(sqrt(d))`; the field is taken
    /// from the arguments, which must agree.
    pub fn quadratic(n: QuadInt, s: QuadInt, r: QuadInt) -> Result<Self> {
        let field = n.field();
        if s.field() != field || r.field() != field {
            return Err(Error::InvalidInstance("N, S, r live in different fields".into()));
        }
        let (r, r_prime) = reduce_and_invert(&n, &s, &r)?;
        let ns = s.norm_sq();
        let within_gate = &ns * &ns * &ns > n.norm_sq();
        Ok(ProblemInstance { ring: RingId::Quadratic(field), n, s, r, r_prime, lead_list: None, within_gate })
    }

    /// Instance over `Z`, carried inside `Z[i]`.
    pub fn rational(n: &BigInt, s: &BigInt, r: &BigInt) -> Result<Self> {
        let g = |x: &BigInt| QuadInt::from_int(x.clone(), Field::Gaussian);
        let mut inst = Self::quadratic(g(n), g(s), g(r))?;
        inst.ring = RingId::RationalInt;
        Ok(inst)
    }
}

impl ProblemInstance<RatPoly> {
    /// Instance over `Z[x]`. The chain runs in `Q[x]`; `r` must reduce mod `S`
    /// without leaving `Z[x]` (always true for monic `S`). Without an explicit
    /// `lead_list`, the divisors of `l(N) / l(S)^2` are found by trial
    /// division when that quotient fits in 64 bits.
    pub fn poly(n: &IntPoly, s: &IntPoly, r: &IntPoly, lead_list: Option<Vec<BigInt>>) -> Result<Self> {
        let deg_s = s.degree().unwrap_or(0);
        if deg_s == 0 {
            return Err(Error::InvalidInstance("S must have positive degree".into()));
        }
        let (nq, sq, rq) = (n.to_rat(), s.to_rat(), r.to_rat());
        let (quot, _) = rq.div_rem(&sq)?;
        if !quot.is_integral() {
            return Err(Error::InvalidInstance(format!("r = {r} does not reduce mod S = {s} inside Z[x]")));
        }
        let (r_red, r_prime) = reduce_and_invert(&nq, &sq, &rq)?;
        let within_gate = 3 * deg_s >= n.degree().unwrap_or(0);
        let lead_list = match lead_list {
            Some(l) => l,
            None => default_lead_list(n, s)?,
        };
        Ok(ProblemInstance {
            ring: RingId::IntegerPoly,
            n: nq,
            s: sq,
            r: r_red,
            r_prime,
            lead_list: Some(lead_list),
            within_gate,
        })
    }
}

fn default_lead_list(n: &IntPoly, s: &IntPoly) -> Result<Vec<BigInt>> {
    let (ln, ls) = match (n.leading(), s.leading()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(Vec::new()),
    };
    let (q, rem) = ln.div_rem(&(ls * ls));
    if !rem.is_zero() {
        return Ok(Vec::new());
    }
    let q = q.abs().to_u64().ok_or_else(|| {
        Error::InvalidArgument(format!("l(N)/l(S)^2 = {q} is too large to factor; supply the divisor list"))
    })?;
    Ok(signed_divisors_u64(q).into_iter().map(BigInt::from).collect())
}

/// The triples `(a_k, b_k, c_k)` for `k = 0..=t` with `a_t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RemChain<E> {
    pub triples: Vec<(E, E, E)>,
    /// `quotients[k - 1] = q_k` with `a_{k-1} = q_k a_k + a_{k+1}`.
    pub quotients: Vec<E>,
}

impl<E: EuclideanRing> RemChain<E> {
    /// Index of the first zero `a`.
    pub fn t(&self) -> usize {
        self.triples.len() - 1
    }

    /// One line per triple: `k<TAB>a<TAB>b<TAB>c`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (k, (a, b, c)) in self.triples.iter().enumerate() {
            let _ = writeln!(out, "{k}\t{a}\t{b}\t{c}");
        }
        out
    }
}

pub fn build_chain<E: EuclideanRing>(inst: &ProblemInstance<E>) -> Result<RemChain<E>> {
    let s = &inst.s;
    let zero = s.zero_like();
    let r_inv = mod_inverse(&inst.r, s)?;
    let a1 = (inst.r_prime.clone() * &r_inv).rem(s)?;
    let diff = inst.n.clone() - inst.r.clone() * &inst.r_prime;
    let lifted = diff
        .div_exact(s)
        .ok_or_else(|| Error::Inconsistent("N - r r' is not divisible by S".into()))?;
    let c1 = (lifted * &r_inv).rem(s)?;

    let mut triples = vec![(s.clone(), zero.clone(), zero.clone()), (a1, s.one_like(), c1)];
    let mut quotients = Vec::new();
    while !triples.last().expect("nonempty").0.is_zero() {
        let k = triples.len() - 1;
        let (a0, b0, c0) = &triples[k - 1];
        let (a1, b1, c1) = &triples[k];
        let (q, a2) = a0.div_rem(a1)?;
        let b2 = b0.clone() - q.clone() * b1;
        let c2 = (c0.clone() - q.clone() * c1).rem(s)?;
        quotients.push(q);
        triples.push((a2, b2, c2));
    }
    Ok(RemChain { triples, quotients })
}

/// Whether `a_k x + b_k y ≡ c_k (mod S)` for every index of the chain.
pub fn congruence_witness<E: EuclideanRing>(chain: &RemChain<E>, x: &E, y: &E, inst: &ProblemInstance<E>) -> bool {
    chain
        .triples
        .iter()
        .all(|(a, b, c)| inst.s.divides(&(a.clone() * x + &(b.clone() * y) - c)))
}

/// Upper bound on `t` for a quadratic ring, from the per-step contraction
/// of `normSq(a_k)` by the division bound.
pub fn chain_length_bound(field: Field, norm_s: &BigInt) -> usize {
    let (num, den) = field.division_bound();
    let (num, den) = (BigInt::from(num), BigInt::from(den));
    // smallest j with norm_s * (num/den)^j < 1, i.e. norm_s * num^j < den^j
    let mut j = 0usize;
    let (mut lhs, mut rhs) = (norm_s.clone(), BigInt::from(1));
    while lhs >= rhs {
        lhs *= &num;
        rhs *= &den;
        j += 1;
    }
    j + 2
}

/// Whether `(N - r r')` is a multiple of `S`; used in tests of the builders.
pub fn r_prime_consistent<E: EuclideanRing>(inst: &ProblemInstance<E>) -> bool {
    let lhs = inst.r.clone() * &inst.r_prime - &inst.n;
    inst.s.divides(&lhs)
}

/// Rational integer modular reduction into `(-S/2, S/2]`-style nearest
/// residues, matching how `Z` is served through `Z[i]`.
pub fn nearest_residue(n: &BigInt, s: &BigInt) -> BigInt {
    let s = s.abs();
    let r = n.mod_floor(&s);
    if (&r << 1) > s {
        r - s
    } else {
        r
    }
}
