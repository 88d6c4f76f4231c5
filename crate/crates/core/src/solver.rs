//! Per-index work: list the admissible right-hand sides `γ ≡ c_i (mod S)` and
//! solve `a_i x + b_i y = γ` together with `(Sx + r)(Sy + r') = N`.
//!
//! With `X = Sx + r` and `Y = Sy + r'` the linear equation becomes
//! `a X + b Y = Γ` where `Γ = Sγ + a r + b r'`, and `XY = N` turns it into
//! `a X^2 - Γ X + b N = 0`. Roots are `(Γ ± sqrt(Γ^2 - 4abN)) / 2a`; each root
//! is accepted only when `X | N` and both `x` and `y` are integral.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::remseq::{ProblemInstance, RemChain};
use crate::rings::integer::{ceil_sqrt, floor_sqrt, square_residues_allow, u128_is_square};
use crate::rings::{int_sqrt, EuclideanRing, Field, QuadInt, RatPoly};

/// One solution `(x, y)` with `d = Sx + r` and cofactor `Sy + r'`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionPair<E> {
    pub x: E,
    pub y: E,
    pub divisor: E,
    pub cofactor: E,
    /// `(chain index, rhs index)`; `(0, 0)` for the trivial check.
    pub discovered_at: (usize, usize),
}

/// Work counters shared by all sweeps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    /// Right-hand sides examined.
    pub candidates: u64,
    /// Candidates that passed the cheap necessary test and were solved exactly.
    pub solves: u64,
}

/// Checks a candidate `X` and returns the pair if it is a genuine solution.
pub fn accept_root<E: EuclideanRing>(
    inst: &ProblemInstance<E>,
    big_x: E,
    at: (usize, usize),
) -> Option<SolutionPair<E>> {
    if big_x.is_zero() || !big_x.is_integral() {
        return None;
    }
    let big_y = inst.n.div_exact(&big_x)?;
    if !big_y.is_integral() {
        return None;
    }
    let x = (big_x.clone() - &inst.r).div_exact(&inst.s)?;
    let y = (big_y.clone() - &inst.r_prime).div_exact(&inst.s)?;
    if !x.is_integral() || !y.is_integral() {
        return None;
    }
    let lhs = (inst.s.clone() * &x + &inst.r) * &(inst.s.clone() * &y + &inst.r_prime);
    if lhs != inst.n {
        return None;
    }
    Some(SolutionPair { x, y, divisor: big_x, cofactor: big_y, discovered_at: at })
}

/// The `x = 0` and `y = 0` solutions: `r` itself and `N / r'`.
pub fn trivial_divisor_check<E: EuclideanRing>(inst: &ProblemInstance<E>) -> Vec<SolutionPair<E>> {
    let mut out = Vec::new();
    if let Some(p) = accept_root(inst, inst.r.clone(), (0, 0)) {
        out.push(p);
    }
    if let Some(big_x) = inst.n.div_exact(&inst.r_prime) {
        if let Some(p) = accept_root(inst, big_x, (0, 0)) {
            if !out.iter().any(|q: &SolutionPair<E>| q.divisor == p.divisor) {
                out.push(p);
            }
        }
    }
    out
}

/// `Γ = Sγ + a r + b r'`.
fn big_gamma<E: EuclideanRing>(a: &E, b: &E, gamma: &E, inst: &ProblemInstance<E>) -> E {
    inst.s.clone() * gamma + &(a.clone() * &inst.r) + &(b.clone() * &inst.r_prime)
}

/// All solutions of `a x + b y = γ`, `(Sx + r)(Sy + r') = N`.
pub fn solve_system<E: EuclideanRing>(
    a: &E,
    b: &E,
    gamma: &E,
    inst: &ProblemInstance<E>,
    at: (usize, usize),
) -> Vec<SolutionPair<E>> {
    let g = big_gamma(a, b, gamma, inst);
    let roots: Vec<E> = match (a.is_zero(), b.is_zero()) {
        (true, true) => Vec::new(),
        (false, true) => g.div_exact(a).into_iter().collect(),
        (true, false) => g
            .div_exact(b)
            .filter(|y| !y.is_zero())
            .and_then(|y| inst.n.div_exact(&y))
            .into_iter()
            .collect(),
        (false, false) => {
            let four_ab_n = (a.clone() * b * &inst.n).scaled(4);
            let disc = g.clone() * &g - &four_ab_n;
            match disc.sqrt_exact() {
                None => Vec::new(),
                Some(root) => {
                    let two_a = a.scaled(2);
                    let mut v: Vec<E> = Vec::new();
                    for num in [g.clone() + &root, g.clone() - &root] {
                        if let Some(x) = num.div_exact(&two_a) {
                            if !v.contains(&x) {
                                v.push(x);
                            }
                        }
                    }
                    v
                }
            }
        }
    };
    roots.into_iter().filter_map(|x| accept_root(inst, x, at)).collect()
}

/// Radius (in units of `|S|`) of a disk around the origin containing every
/// `λ` with `normSq(c + λS) < R^2 normSq(S)`.
fn lambda_radius(c: &QuadInt, s: &QuadInt, radius: u32) -> BigInt {
    let ns = s.norm_sq();
    let ratio = (c.norm_sq() + &ns - 1u32) / &ns;
    BigInt::from(radius) + 1u32 + ceil_sqrt(&ratio)
}

/// Half-coordinate box `(|lu| <= Lu, |lv| <= Lv)` covering the `λ` disk.
fn lambda_box(c: &QuadInt, s: &QuadInt, radius: u32) -> (BigInt, BigInt) {
    let rho = lambda_radius(c, s, radius);
    let abs_d = -s.field().radicand();
    let lu: BigInt = &rho << 1;
    let lv = floor_sqrt(&((&rho * &rho * 4u32) / abs_d)).expect("nonnegative") + 1u32;
    (lu, lv)
}

fn row_start(lo: &BigInt, lv: &BigInt, field: Field) -> BigInt {
    // smallest lu >= lo with the parity the field requires for this lv
    let want_odd = field.has_half_integers() && lv.bit(0);
    let mut lu = lo.clone();
    if lu.bit(0) != want_odd {
        lu += 1;
    }
    lu
}

/// Every `γ ≡ c (mod S)` with `normSq(γ) < R^2 normSq(S)`, in a fixed order
/// (rows of the `w` coordinate of `λ`, then the rational coordinate).
pub fn enumerate_residues(c: &QuadInt, s: &QuadInt, radius: u32) -> Vec<QuadInt> {
    let field = s.field();
    let (lu_max, lv_max) = lambda_box(c, s, radius);
    let limit = s.norm_sq() * radius * radius;
    let mut out = Vec::new();
    let step = if field.has_half_integers() { 1 } else { 2 };
    let mut lv = -lv_max.clone();
    if step == 2 && lv.bit(0) {
        lv += 1;
    }
    while lv <= lv_max {
        let mut lu = row_start(&-lu_max.clone(), &lv, field);
        while lu <= lu_max {
            let lambda = QuadInt::from_half(lu.clone(), lv.clone(), field).expect("parity chosen to be valid");
            let g = c.clone() + &(lambda * s);
            if g.norm_sq() < limit {
                out.push(g);
            }
            lu += 2;
        }
        lv += step;
    }
    out
}

/// Half coordinates reduced modulo `m`. Products halve `m`, since the exact
/// halving of an even integer is known modulo half the modulus.
#[derive(Debug, Clone, Copy)]
struct ModHalf {
    u: i64,
    v: i64,
    m: i64,
}

/// `2^10 * 45045`: after the four halvings of the discriminant screen,
/// `normSq(D)` is known modulo `64 * 45045`.
const SCREEN_MOD: i64 = 1024 * 45045;

fn big_mod(x: &BigInt, m: i64) -> i64 {
    let mut acc: u128 = 0;
    for digit in x.iter_u64_digits().rev() {
        acc = ((acc << 64) | u128::from(digit)) % (m as u128);
    }
    let r = acc as i64;
    if x.is_negative() {
        (m - r) % m
    } else {
        r
    }
}

impl ModHalf {
    fn of(z: &QuadInt, m: i64) -> Self {
        ModHalf { u: big_mod(z.u(), m), v: big_mod(z.v(), m), m }
    }
    fn of_half(z: Half, m: i64) -> Self {
        let m128 = i128::from(m);
        ModHalf { u: z.u.rem_euclid(m128) as i64, v: z.v.rem_euclid(m128) as i64, m }
    }
    fn mul(self, o: ModHalf, d: i64) -> Self {
        let m = self.m.min(o.m);
        let u = (self.u * o.u + d * ((self.v * o.v) % m)).rem_euclid(m);
        let v = (self.u * o.v + self.v * o.u) % m;
        ModHalf { u: u / 2, v: v / 2, m: m / 2 }
    }
    fn add(self, o: ModHalf) -> Self {
        let m = self.m.min(o.m);
        ModHalf { u: (self.u + o.u) % m, v: (self.v + o.v) % m, m }
    }
    fn sub(self, o: ModHalf) -> Self {
        let m = self.m.min(o.m);
        ModHalf { u: (self.u - o.u).rem_euclid(m), v: (self.v - o.v).rem_euclid(m), m }
    }
}

/// Residue screen on `D = Γ^2 - 4abN` given `Γ` and `4abN` modulo
/// `SCREEN_MOD`: false only if `normSq(D)` is certainly not a square.
fn disc_screen(g: ModHalf, f: ModHalf, d: i64) -> bool {
    let disc = g.mul(g, d).sub(f);
    let m = disc.m;
    let norm4 = (disc.u * disc.u - d * ((disc.v * disc.v) % m)).rem_euclid(m);
    // two exact halvings of an even residue
    let n = norm4 / 4;
    debug_assert_eq!((m / 4) % (64 * 45045), 0);
    square_residues_allow((n % 64) as u64, (n % 45045) as u64)
}

/// The exact test run on every candidate before a full solve: the
/// discriminant must have a square norm (or, for the linear cases, the
/// division must be exact). Index-wide parts are precomputed, and a residue
/// screen rejects most candidates without big-integer arithmetic.
struct Prefilter<'a> {
    a: &'a QuadInt,
    b: &'a QuadInt,
    s: &'a QuadInt,
    /// `a r + b r'`
    base: QuadInt,
    four_ab_n: QuadInt,
    d: i64,
    s_mod: ModHalf,
    base_mod: ModHalf,
    f_mod: ModHalf,
}

impl<'a> Prefilter<'a> {
    fn new(a: &'a QuadInt, b: &'a QuadInt, inst: &'a ProblemInstance<QuadInt>) -> Self {
        let base = a.clone() * &inst.r + &(b.clone() * &inst.r_prime);
        let four_ab_n = (a.clone() * b * &inst.n).scaled(4);
        Prefilter {
            a,
            b,
            s: &inst.s,
            base: base.clone(),
            four_ab_n: four_ab_n.clone(),
            d: inst.s.field().radicand(),
            s_mod: ModHalf::of(&inst.s, SCREEN_MOD),
            base_mod: ModHalf::of(&base, SCREEN_MOD),
            f_mod: ModHalf::of(&four_ab_n, SCREEN_MOD),
        }
    }

    /// False only if `normSq(D)` is certainly not a square.
    fn screen(&self, gamma: &QuadInt) -> bool {
        let g = self.s_mod.mul(ModHalf::of(gamma, SCREEN_MOD), self.d).add(self.base_mod);
        disc_screen(g, self.f_mod, self.d)
    }

    fn passes(&self, gamma: &QuadInt) -> bool {
        let g = || self.s.clone() * gamma + &self.base;
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => false,
            (false, true) => self.a.divides(&g()),
            (true, false) => self.b.divides(&g()),
            (false, false) => {
                if !self.screen(gamma) {
                    return false;
                }
                let g = g();
                let disc = g.clone() * &g - &self.four_ab_n;
                matches!(int_sqrt(&disc.norm_sq()), Ok(Some(_)))
            }
        }
    }
}

/// Reference sweep of one chain index in arbitrary precision.
pub fn sweep_index_reference(
    inst: &ProblemInstance<QuadInt>,
    i: usize,
    triple: (&QuadInt, &QuadInt, &QuadInt),
    radius: u32,
    counters: &mut Counters,
) -> Vec<SolutionPair<QuadInt>> {
    let (a, b, c) = triple;
    let mut out = Vec::new();
    let filter = Prefilter::new(a, b, inst);
    for (j, gamma) in enumerate_residues(c, &inst.s, radius).iter().enumerate() {
        counters.candidates += 1;
        if filter.passes(gamma) {
            counters.solves += 1;
            out.extend(solve_system(a, b, gamma, inst, (i, j)));
        }
    }
    out
}

/// An element `(u + v w) / 2` in machine integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Half {
    u: i128,
    v: i128,
}

impl Half {
    fn of(z: &QuadInt) -> Option<Half> {
        Some(Half { u: z.u().to_i128()?, v: z.v().to_i128()? })
    }
    fn add(self, o: Half) -> Half {
        Half { u: self.u + o.u, v: self.v + o.v }
    }
    fn sub(self, o: Half) -> Half {
        Half { u: self.u - o.u, v: self.v - o.v }
    }
    fn mul(self, o: Half, d: i128) -> Half {
        Half { u: (self.u * o.u + d * self.v * o.v) >> 1, v: (self.u * o.v + self.v * o.u) >> 1 }
    }
    fn checked_mul(self, o: Half, d: i128) -> Option<Half> {
        let u = self.u.checked_mul(o.u)?.checked_add(d.checked_mul(self.v)?.checked_mul(o.v)?)?;
        let v = self.u.checked_mul(o.v)?.checked_add(self.v.checked_mul(o.u)?)?;
        Some(Half { u: u >> 1, v: v >> 1 })
    }
    fn conj(self) -> Half {
        Half { u: self.u, v: -self.v }
    }
    /// `4 normSq`.
    fn norm4(self, d: i128) -> i128 {
        self.u * self.u - d * self.v * self.v
    }
    fn is_zero(self) -> bool {
        self.u == 0 && self.v == 0
    }
    fn big(self, field: Field) -> QuadInt {
        QuadInt::from_half(self.u.into(), self.v.into(), field).expect("valid by construction")
    }
}

/// `4 normSq(z)` without overflow.
fn half_norm4_big(z: Half, d: i128) -> BigInt {
    let (u, v) = (BigInt::from(z.u), BigInt::from(z.v));
    &u * &u - &v * &v * d
}

/// `w / z` when `z | w`, with `z != 0`.
fn half_quotient(w: Half, z: Half, d: i128, half_integers: bool) -> Option<Half> {
    let n = z.norm4(d) / 4;
    let p = w.mul(z.conj(), d);
    if p.u % n != 0 || p.v % n != 0 {
        return None;
    }
    let q = Half { u: p.u / n, v: p.v / n };
    let ok = if half_integers { (q.u - q.v) % 2 == 0 } else { q.u % 2 == 0 && q.v % 2 == 0 };
    ok.then_some(q)
}

fn half_divides(z: Half, w: Half, d: i128, half_integers: bool) -> bool {
    half_quotient(w, z, d, half_integers).is_some()
}

/// Overflow-checked `w / z`: `None` when the arithmetic does not fit,
/// `Some(None)` when `z` does not divide `w`.
fn half_quotient_checked(w: Half, z: Half, d: i128, half_integers: bool) -> Option<Option<Half>> {
    let n = z.u.checked_mul(z.u)?.checked_sub(d.checked_mul(z.v)?.checked_mul(z.v)?)? / 4;
    if n == 0 {
        return Some(None);
    }
    let pu = w.u.checked_mul(z.u)?.checked_sub(d.checked_mul(w.v)?.checked_mul(z.v)?)? >> 1;
    let pv = w.v.checked_mul(z.u)?.checked_sub(w.u.checked_mul(z.v)?)? >> 1;
    if pu % n != 0 || pv % n != 0 {
        return Some(None);
    }
    let q = Half { u: pu / n, v: pv / n };
    let ok = if half_integers { (q.u - q.v) % 2 == 0 } else { q.u % 2 == 0 && q.v % 2 == 0 };
    Some(ok.then_some(q))
}

/// Overflow-checked `z | w`; `None` when the arithmetic does not fit.
fn half_divides_checked(z: Half, w: Half, d: i128, half_integers: bool) -> Option<bool> {
    half_quotient_checked(w, z, d, half_integers).map(|q| q.is_some())
}

/// Largest bit length of the discriminant magnitude for which the
/// machine-integer sweep decides candidates entirely in `i128`.
const FAST_BITS: u64 = 60;

/// Largest bit length of `Γ` for which the sweep still walks `γ` and `Γ` in
/// `i128`, screening residues and deciding survivors in big integers.
const WIDE_BITS: u64 = 110;

fn mag(z: &QuadInt) -> BigInt {
    ceil_sqrt(&z.norm_sq())
}

/// Machine-integer sweep of one chain index, identical in output and counters
/// to [`sweep_index_reference`]. Returns `None` when the magnitudes involved
/// do not fit.
pub fn sweep_index_fast(
    inst: &ProblemInstance<QuadInt>,
    i: usize,
    triple: (&QuadInt, &QuadInt, &QuadInt),
    radius: u32,
    counters: &mut Counters,
) -> Option<Vec<SolutionPair<QuadInt>>> {
    let (a, b, c) = triple;
    let field = inst.s.field();
    let d = field.radicand() as i128;
    let half_integers = field.has_half_integers();

    let rho = lambda_radius(c, &inst.s, radius);
    let ms = mag(&inst.s);
    let gmax = &ms * (mag(c) + &rho * &ms) + mag(a) * mag(&inst.r) + mag(b) * mag(&inst.r_prime);
    let dmax = &gmax * &gmax + mag(a) * mag(b) * mag(&inst.n) * 4u32;
    let wide = dmax.bits() > FAST_BITS;
    if wide {
        // box corners reach past the disk; bound those too
        let gb = mag(c) + &rho * &ms * 2u32 + 1u32;
        let corner = &ms * &gb + mag(a) * mag(&inst.r) + mag(b) * mag(&inst.r_prime);
        if corner.bits() > WIDE_BITS || (&gb * &gb * 44u32).bits() > 125 {
            return None;
        }
    }

    let (lu_max, lv_max) = lambda_box(c, &inst.s, radius);
    let (lu_max, lv_max) = (lu_max.to_i128()?, lv_max.to_i128()?);
    let s = Half::of(&inst.s)?;
    let t = s.mul(s, d);
    let (ha, hb, hc) = (Half::of(a)?, Half::of(b)?, Half::of(c)?);
    let gamma0 = s.mul(hc, d).add(ha.mul(Half::of(&inst.r)?, d)).add(hb.mul(Half::of(&inst.r_prime)?, d));
    let limit = s.norm4(d).checked_mul((radius as i128) * (radius as i128))?;
    let hn = Half::of(&inst.n);
    let n_norm4 = inst.n.norm_sq() * 4u32;
    let (k4abn, big_k4abn, k4abn_mod) = if wide {
        let big = (a.clone() * b * &inst.n).scaled(4);
        let m = ModHalf::of(&big, SCREEN_MOD);
        (Half { u: 0, v: 0 }, Some(big), m)
    } else {
        let k = ha.mul(hb, d).mul(hn?, d);
        (Half { u: 4 * k.u, v: 4 * k.v }, None, ModHalf { u: 0, v: 0, m: SCREEN_MOD })
    };
    // In a linear case whose coefficient divides S every candidate passes,
    // and the root is (S / coefficient) γ plus r or r'.
    let linear_root = match (ha.is_zero(), hb.is_zero()) {
        (false, true) => half_quotient_checked(s, ha, d, half_integers).flatten().zip(Half::of(&inst.r)),
        (true, false) => half_quotient_checked(s, hb, d, half_integers).flatten().zip(Half::of(&inst.r_prime)),
        _ => None,
    };
    let (d64, t_mod) = (field.radicand(), ModHalf::of_half(t, SCREEN_MOD));
    let linear_pass = |z: Half, w: Half, big_z: &QuadInt| {
        half_divides_checked(z, w, d, half_integers).unwrap_or_else(|| big_z.divides(&w.big(field)))
    };

    let mut out = Vec::new();
    let mut j = 0usize;
    let lv_start = if half_integers { -lv_max } else { -lv_max + (lv_max & 1) };
    let step = if half_integers { 1 } else { 2 };
    for lv in (lv_start..=lv_max).step_by(step) {
        let odd = half_integers && lv & 1 != 0;
        let mut lu0 = -lu_max;
        if (lu0 & 1 != 0) != odd {
            lu0 += 1;
        }
        let lam = Half { u: lu0, v: lv };
        let mut gamma = hc.add(lam.mul(s, d));
        let mut big_g = gamma0.add(lam.mul(t, d));
        let mut g_mod = ModHalf::of_half(big_g, SCREEN_MOD);
        let mut lu = lu0;
        while lu <= lu_max {
            if gamma.norm4(d) < limit {
                counters.candidates += 1;
                let pass = match (ha.is_zero(), hb.is_zero()) {
                    (true, true) => false,
                    _ if linear_root.is_some() => true,
                    (false, true) if wide => linear_pass(ha, big_g, a),
                    (true, false) if wide => linear_pass(hb, big_g, b),
                    (false, true) => half_divides(ha, big_g, d, half_integers),
                    (true, false) => half_divides(hb, big_g, d, half_integers),
                    (false, false) => match &big_k4abn {
                        Some(big) => {
                            disc_screen(g_mod, k4abn_mod, d64) && {
                                let g = big_g.big(field);
                                let disc = g.clone() * &g - big;
                                matches!(int_sqrt(&disc.norm_sq()), Ok(Some(_)))
                            }
                        }
                        None => {
                            let disc = big_g.mul(big_g, d).sub(k4abn);
                            u128_is_square(disc.norm4(d) as u128).is_some()
                        }
                    },
                };
                if pass {
                    counters.solves += 1;
                    // In the linear cases the root is already known; skip the
                    // big-integer solve when it cannot divide N.
                    let root = match (ha.is_zero(), hb.is_zero()) {
                        _ if linear_root.is_some() => linear_root
                            .and_then(|(q, off)| Some(q.checked_mul(gamma, d)?.add(off)))
                            .filter(|z| !z.is_zero()),
                        (false, true) => half_quotient_checked(big_g, ha, d, half_integers).flatten(),
                        (true, false) => {
                            half_quotient_checked(big_g, hb, d, half_integers).flatten().filter(|y| !y.is_zero())
                        }
                        _ => None,
                    };
                    let hopeless = root.is_some_and(|z| match hn {
                        Some(hn) => half_divides_checked(z, hn, d, half_integers) == Some(false),
                        // a divisor's norm divides the norm of N
                        None => !(n_norm4.clone() % half_norm4_big(z, d)).is_zero(),
                    });
                    if !hopeless {
                        out.extend(solve_system(a, b, &gamma.big(field), inst, (i, j)));
                    }
                }
                j += 1;
            }
            gamma = gamma.add(s);
            if wide {
                g_mod = g_mod.add(t_mod);
            }
            big_g = big_g.add(t);
            lu += 2;
        }
    }
    Some(out)
}

/// Sweep one chain index, using machine integers when they suffice.
pub fn sweep_index(
    inst: &ProblemInstance<QuadInt>,
    i: usize,
    triple: (&QuadInt, &QuadInt, &QuadInt),
    radius: u32,
    counters: &mut Counters,
) -> Vec<SolutionPair<QuadInt>> {
    let mut scratch = Counters::default();
    match sweep_index_fast(inst, i, triple, radius, &mut scratch) {
        Some(v) => {
            counters.candidates += scratch.candidates;
            counters.solves += scratch.solves;
            v
        }
        None => sweep_index_reference(inst, i, triple, radius, counters),
    }
}

/// Which constant shifts `p` to try beyond `c_i` itself in `Z[x]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftMode {
    /// Both leading terms present, plus each one alone.
    Full,
    /// Only the shift with both leading terms present.
    BothTermsOnly,
}

fn lead(p: &RatPoly) -> BigRational {
    p.leading().cloned().unwrap_or_else(BigRational::zero)
}

/// Right-hand sides `c_i + p S` for chain index `i` of a `Z[x]` instance.
///
/// `a_i f + b_i g` has degree at most `deg S`, so it is `c_i + p S` for a
/// constant `p`. Comparing the coefficients of `x^{deg S}`, with
/// `l(f) = dL` and `l(g) = l(N) / (l(S)^2 dL)`, gives
/// `p l(S) = [deg a_i f = deg S] l(a_i) dL + [deg b_i g = deg S] l(b_i) l(g)`.
pub fn poly_rhs_candidates(
    chain: &RemChain<RatPoly>,
    inst: &ProblemInstance<RatPoly>,
    i: usize,
    mode: ShiftMode,
) -> Vec<RatPoly> {
    let (a, b, c) = &chain.triples[i];
    let (la, lb, ls, ln) = (lead(a), lead(b), lead(&inst.s), lead(&inst.n));
    let mut out = vec![c.clone()];
    for dl in inst.lead_list.as_deref().unwrap_or(&[]) {
        if dl.is_zero() {
            continue;
        }
        let dl = BigRational::from_integer(dl.clone());
        let lg = &ln / (&ls * &ls * &dl);
        let mut shifts = vec![(&la * &dl + &lb * &lg) / &ls];
        if mode == ShiftMode::Full {
            shifts.push(&la * &dl / &ls);
            shifts.push(&lb * &lg / &ls);
        }
        for p in shifts {
            let cand = c.clone() + &inst.s.scale(&p);
            if !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// All solutions found at chain index `i` of a `Z[x]` instance.
pub fn sweep_index_poly(
    chain: &RemChain<RatPoly>,
    inst: &ProblemInstance<RatPoly>,
    i: usize,
    mode: ShiftMode,
    counters: &mut Counters,
) -> Vec<SolutionPair<RatPoly>> {
    let (a, b, _) = &chain.triples[i];
    let mut out = Vec::new();
    for (j, gamma) in poly_rhs_candidates(chain, inst, i, mode).iter().enumerate() {
        counters.candidates += 1;
        counters.solves += 1;
        out.extend(solve_system(a, b, gamma, inst, (i, j)));
    }
    out
}

/// `normSq(x) <= bound^2 normSq(S)`, the window every solution lies in.
pub fn within_xy_window(x: &QuadInt, s: &QuadInt, bound: u32) -> bool {
    x.norm_sq() <= s.norm_sq() * bound * bound
}

/// Whether `|γ|^2 < R^2 |S|^2`.
pub fn within_rhs_radius(gamma: &QuadInt, s: &QuadInt, radius: u32) -> bool {
    gamma.norm_sq() < s.norm_sq() * radius * radius
}

/// Sign-agnostic bit length of the largest coordinate, for diagnostics.
pub fn coordinate_bits(z: &QuadInt) -> u64 {
    z.u().abs().bits().max(z.v().abs().bits())
}
