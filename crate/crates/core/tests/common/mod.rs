//! Randomized corpora shared by the integration and acceptance tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use resdiv::remseq::ProblemInstance;
use resdiv::rings::{Field, IntPoly, QuadInt, RatPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform element with `normSq <= bound`, via half coordinates.
pub fn quad_in_disk(rng: &mut ChaCha8Rng, field: Field, bound: u64) -> QuadInt {
    let d = -field.radicand() as i128;
    let limit4 = 4 * bound as i128;
    let vmax = ((limit4 / d) as f64).sqrt() as i128;
    let umax = (limit4 as f64).sqrt() as i128;
    loop {
        let u = rng.gen_range(-umax..=umax);
        let v = rng.gen_range(-vmax..=vmax);
        if u * u + d * v * v > limit4 {
            continue;
        }
        if let Ok(z) = QuadInt::from_half(u.into(), v.into(), field) {
            return z;
        }
    }
}

/// Log-uniform size in `[2, max]`.
pub fn log_uniform(rng: &mut ChaCha8Rng, max: u64) -> u64 {
    let t: f64 = rng.gen_range((2f64).ln()..=(max as f64).ln());
    t.exp().round().clamp(2.0, max as f64) as u64
}

#[derive(Debug, Clone)]
pub struct PlantedQuad {
    pub inst: ProblemInstance<QuadInt>,
    /// The planted divisor `Sx + r` (before `r` is reduced).
    pub divisor: QuadInt,
    pub x: QuadInt,
    pub y: QuadInt,
}

/// `N = (Sx + r)(Sy + r')` with `normSq(S) <= max_ns`, satisfying the size
/// gate, with small nonzero `x, y` most of the time.
pub fn planted_quad(rng: &mut ChaCha8Rng, field: Field, max_ns: u64) -> PlantedQuad {
    loop {
        let target = log_uniform(rng, max_ns);
        let s = quad_in_disk(rng, field, target);
        let ns = s.norm_sq();
        if ns < BigInt::from(2) {
            continue;
        }
        let nsu: u64 = ns.to_string().parse().expect("small");
        let r = quad_in_disk(rng, field, nsu / 2);
        let rp = quad_in_disk(rng, field, nsu / 2);
        let xy_bound = ((nsu as f64).sqrt() as u64).max(1);
        let x = quad_in_disk(rng, field, xy_bound);
        let y = quad_in_disk(rng, field, xy_bound);
        let divisor = s.clone() * &x + &r;
        let n = divisor.clone() * (s.clone() * &y + &rp);
        if n.norm_sq().is_zero() {
            continue;
        }
        if let Ok(inst) = ProblemInstance::quadratic(n, s, r) {
            if inst.within_gate {
                return PlantedQuad { inst, divisor, x, y };
            }
        }
    }
}

fn is_square_i64(n: i64) -> bool {
    n >= 0 && {
        let s = (n as f64).sqrt().round() as i64;
        (s - 1..=s + 1).any(|t| t >= 0 && t * t == n)
    }
}

/// Monic irreducible polynomial of degree 1, 2 or 3 with small coefficients.
/// Irreducibility: degree 1 trivially, degree 2 by a non-square
/// discriminant, degree 3 by the absence of integer roots.
pub fn irreducible_factor(rng: &mut ChaCha8Rng, height: i64) -> IntPoly {
    loop {
        let deg = rng.gen_range(1..=3);
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-height..=height)).collect();
        c.push(1);
        let ok = match deg {
            1 => true,
            2 => !is_square_i64(c[1] * c[1] - 4 * c[0]),
            _ => {
                c[0] != 0
                    && (1..=c[0].abs()).filter(|q| c[0] % q == 0).all(|q| {
                        [q, -q].iter().all(|&t| t * t * t + c[2] * t * t + c[1] * t + c[0] != 0)
                    })
            }
        };
        if ok {
            return IntPoly::from_ints(&c);
        }
    }
}

pub fn product(factors: &[IntPoly]) -> IntPoly {
    factors.iter().fold(IntPoly::from_ints(&[1]), |acc, f| &acc * f)
}

#[derive(Debug, Clone)]
pub struct PlantedPoly {
    pub inst: ProblemInstance<RatPoly>,
    pub factors: Vec<IntPoly>,
    pub s: IntPoly,
    pub r: IntPoly,
    pub planted: IntPoly,
}

/// Monic `S` of degree `<= 6`, height `<= 50`; `N` a product of monic
/// irreducible factors with `deg N <= 3 deg S`; `r` the residue of a planted
/// sub-product.
pub fn planted_poly(rng: &mut ChaCha8Rng) -> PlantedPoly {
    loop {
        let ds = rng.gen_range(1..=6usize);
        let mut sc: Vec<i64> = (0..ds).map(|_| rng.gen_range(-50..=50)).collect();
        sc.push(1);
        let s = IntPoly::from_ints(&sc);
        let budget = rng.gen_range(ds..=3 * ds);
        let mut factors = Vec::new();
        let mut deg = 0;
        while deg < budget {
            let f = irreducible_factor(rng, 6);
            let fd = f.degree().unwrap_or(0);
            if deg + fd > 3 * ds {
                break;
            }
            deg += fd;
            factors.push(f);
        }
        if factors.is_empty() {
            continue;
        }
        let chosen: Vec<IntPoly> = factors.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let planted = if rng.gen_bool(0.5) { product(&chosen) } else { -product(&chosen) };
        let Ok((_, rem)) = planted.to_rat().div_rem(&s.to_rat()) else { continue };
        let Some(r) = rem.to_int_poly() else { continue };
        if r.is_zero() {
            continue;
        }
        let n = product(&factors);
        if let Ok(inst) = ProblemInstance::poly(&n, &s, &r, None) {
            if inst.within_gate {
                return PlantedPoly { inst, factors, s, r, planted };
            }
        }
    }
}

/// Random rational instance with `S^3 > N`, `gcd(N, S) = gcd(r, S) = 1`.
pub fn rational_gate_instance(rng: &mut ChaCha8Rng, max_n: u64) -> (BigInt, BigInt, BigInt) {
    loop {
        let n: u64 = rng.gen_range(2..=max_n);
        let lo = (n as f64).cbrt().floor() as u64 + 1;
        let s: u64 = rng.gen_range(lo..=lo * 2 + 2);
        let r: u64 = rng.gen_range(1..s);
        let g = |mut a: u64, mut b: u64| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        if (s as u128).pow(3) > n as u128 && g(n, s) == 1 && g(r, s) == 1 {
            return (n.into(), s.into(), r.into());
        }
    }
}

pub fn sorted_ints(v: impl IntoIterator<Item = BigInt>) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = v.into_iter().collect();
    v.sort();
    v
}

pub fn one() -> BigInt {
    BigInt::one()
}
