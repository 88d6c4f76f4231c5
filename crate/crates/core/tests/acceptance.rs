//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Tolerances and limits are pinned below.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed};
use rand::Rng;
use serde_json::Value;

use resdiv::algorithms::{divisors_poly, divisors_quadratic, divisors_rational};
use resdiv::cli::bench::{instance_stream, BenchConfig};
use resdiv::families::{cohen_instance, seven_signed_instance, verify_family};
use resdiv::oracle::{default_scan_factor, oracle_poly, oracle_quadratic, oracle_rational};
use resdiv::remseq::{build_chain, ProblemInstance};
use resdiv::rings::{EuclideanRing, Field, IntPoly, QuadInt, RatPoly};

const ALPHA_EXPECTED: f64 = 0.3584;
const ALPHA_TOL: f64 = 1e-4;
const STANDALONE_LIMIT_S: f64 = 1.0;
const FAMILY_LIMIT_S: f64 = 10.0;
const ORACLE_PER_RING: usize = 200;
const ORACLE_LIMIT_S: f64 = 300.0;
const ZI_MAX_NORM: u64 = 1_000_000;
const OTHER_MAX_NORM: u64 = 1_000;
const DIVISOR_CEILING: usize = 12;
const Z_CORPUS: usize = 2_000;
const SCALING_KS: [u32; 4] = [10, 20, 30, 40];
const SCALING_SAMPLES: usize = 20;
const OPS_PER_K_SPREAD: f64 = 3.0;
const TIME_RATIO_LIMIT: f64 = 30.0;
const SCALING_LIMIT_S: f64 = 600.0;
const SQRT_CASES: usize = 1_000;
const SQRT_LIMIT_S: f64 = 10.0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = resdiv::cli::run(std::iter::once("resdiv").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf8"))
}

fn standalone() -> Outcome {
    let start = Instant::now();
    let (code, out) =
        run_cli(&["find", "--ring", "z", "-N", "104254876089000", "-S", "105787", "-r", "1", "--format", "json"]);
    let secs = start.elapsed().as_secs_f64();
    let v: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
    let count = v["divisors"].as_array().map_or(0, Vec::len);
    let alpha = v["instance"]["alpha"].as_f64().unwrap_or(f64::NAN);
    let pass = code == 0 && count == 6 && (alpha - ALPHA_EXPECTED).abs() <= ALPHA_TOL && secs < STANDALONE_LIMIT_S;
    outcome(pass, format!("{count} divisors, alpha {alpha:.5} (want {ALPHA_EXPECTED} ± {ALPHA_TOL}), {secs:.3} s (limit {STANDALONE_LIMIT_S} s)"))
}

fn cohen() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for l in 3..=20 {
        let fam = cohen_instance(l).expect("l >= 3");
        let v = verify_family(&fam, false).expect("valid member");
        let cube = Pow::pow(&fam.s, 3u32);
        if v.positive != 6 || cube <= fam.n {
            bad.push(l);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < FAMILY_LIMIT_S,
        format!("l = 3..20: 6 positive divisors and S^3 > N, failures {bad:?}, {secs:.3} s (limit {FAMILY_LIMIT_S} s)"),
    )
}

fn seven() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for x in 2..=20 {
        let fam = seven_signed_instance(x).expect("x >= 2");
        let v = verify_family(&fam, true).expect("valid member");
        if v.signed != 7 {
            bad.push(x);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < FAMILY_LIMIT_S,
        format!("x = 2..20: 7 signed divisors, failures {bad:?}, {secs:.3} s (limit {FAMILY_LIMIT_S} s)"),
    )
}

fn quad_ring_equivalence(field: Field, max_ns: u64, seed: u64) -> (usize, Vec<String>) {
    let mut rng = common::rng(seed);
    let mut mismatches = Vec::new();
    for _ in 0..ORACLE_PER_RING {
        let p = common::planted_quad(&mut rng, field, max_ns);
        let got = divisors_quadratic(&p.inst).expect("algorithm").divisors;
        let want = oracle_quadratic(&p.inst, default_scan_factor(field)).expect("oracle window").divisors;
        if got != want {
            mismatches.push(format!("N={} S={} r={}", p.inst.n, p.inst.s, p.inst.r));
        }
    }
    (ORACLE_PER_RING, mismatches)
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut all_ok = true;
    let mut lap = Instant::now();
    let mut tally = |name: &str, (n, bad): (usize, Vec<String>)| {
        all_ok &= bad.is_empty();
        parts.push(format!("{name} {}/{n} ({:.0} s)", n - bad.len(), lap.elapsed().as_secs_f64()));
        lap = Instant::now();
        for b in bad.iter().take(3) {
            eprintln!("  mismatch in {name}: {b}");
        }
    };
    tally("Z[i]", quad_ring_equivalence(Field::Gaussian, ZI_MAX_NORM, 101));
    for (k, f) in [Field::Minus2, Field::Minus3, Field::Minus7, Field::Minus11].into_iter().enumerate() {
        tally(&format!("d={}", f.radicand()), quad_ring_equivalence(f, OTHER_MAX_NORM, 200 + k as u64));
    }

    let mut rng = common::rng(303);
    let mut bad = Vec::new();
    for _ in 0..ORACLE_PER_RING {
        let p = common::planted_poly(&mut rng);
        let got: Vec<IntPoly> = divisors_poly(&p.inst)
            .expect("algorithm")
            .divisors
            .iter()
            .map(|d| d.to_int_poly().expect("integral divisor"))
            .collect();
        let want = oracle_poly(&p.factors, &p.s, &p.r).expect("oracle").divisors;
        if got != want {
            bad.push(format!("N={} S={} r={}", p.inst.n, p.s, p.r));
        }
    }
    tally("Z[x]", (ORACLE_PER_RING, bad));

    let mut rng = common::rng(404);
    let mut bad = Vec::new();
    for _ in 0..ORACLE_PER_RING {
        let (n, s, r) = common::rational_gate_instance(&mut rng, 1_000_000_000_000);
        let inst = ProblemInstance::rational(&n, &s, &r).expect("coprime by construction");
        let got: Vec<BigInt> = divisors_rational(&inst).expect("algorithm").divisors.iter().filter_map(QuadInt::to_rational).collect();
        let want = oracle_rational(&n, &s, &r).expect("oracle").divisors;
        if common::sorted_ints(got) != common::sorted_ints(want) {
            bad.push(format!("N={n} S={s} r={r}"));
        }
    }
    tally("Z", (ORACLE_PER_RING, bad));

    let secs = start.elapsed().as_secs_f64();
    outcome(all_ok && secs < ORACLE_LIMIT_S, format!("{}, {secs:.1} s (limit {ORACLE_LIMIT_S} s)", parts.join(", ")))
}

/// `4^k normSq(a_k b_{k+1}) <= (2^{k+1} - 1)^2 normSq(S)`.
fn gaussian_product_bound(prod_norm: &BigInt, ns: &BigInt, k: usize) -> bool {
    let lhs = prod_norm * Pow::pow(BigInt::from(4u32), k);
    let f: BigInt = (BigInt::one() << (k + 1)) - 1u32;
    lhs <= &f * &f * ns
}

fn lemma_invariants() -> Outcome {
    let mut checks = 0u64;
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |what: String| {
        if failures.len() < 5 {
            eprintln!("  invariant failure: {what}");
        }
        failures.push(what);
    };

    for (seed, field) in Field::ALL.into_iter().enumerate() {
        let mut rng = common::rng(500 + seed as u64);
        let max_ns = if field == Field::Gaussian { ZI_MAX_NORM } else { OTHER_MAX_NORM };
        let (num, den) = field.division_bound();
        for _ in 0..ORACLE_PER_RING {
            let p = common::planted_quad(&mut rng, field, max_ns);
            let inst = &p.inst;
            let chain = build_chain(inst).expect("chain");
            let ns = inst.s.norm_sq();
            for k in 0..chain.t() {
                let (a0, b0, _) = &chain.triples[k];
                let (a1, b1, _) = &chain.triples[k + 1];
                let det = a0.clone() * b1 - &(a1.clone() * b0);
                let want = if k % 2 == 0 { inst.s.clone() } else { -inst.s.clone() };
                checks += 1;
                if det != want {
                    fail(format!("determinant at k={k}, S={}", inst.s));
                }
                checks += 1;
                if a1.norm_sq() * den > a0.norm_sq() * num && k > 0 {
                    fail(format!("remainder bound at k={k}, S={}", inst.s));
                }
                let prod = (a0.clone() * b1).norm_sq();
                checks += 1;
                let ok = if field == Field::Gaussian { gaussian_product_bound(&prod, &ns, k) } else { prod <= &ns * 256u32 };
                if !ok {
                    fail(format!("product bound at k={k}, S={}", inst.s));
                }
            }
            // random divisions against the field bound
            let a = common::quad_in_disk(&mut rng, field, 1_000_000);
            let b = common::quad_in_disk(&mut rng, field, 5_000);
            if !b.is_zero() {
                let (q, r) = a.div_rem(&b).expect("nonzero divisor");
                checks += 1;
                if q * &b + &r != a || r.norm_sq() * den > b.norm_sq() * num {
                    fail(format!("division bound {a} / {b}"));
                }
            }
            // planted solution: size bounds and a small-term index; y is
            // recomputed against the reduced r'
            let x = &(p.divisor.clone() - &inst.r).div_exact(&inst.s).expect("planted class");
            let y = inst
                .n
                .div_exact(&p.divisor)
                .and_then(|cof| (cof - &inst.r_prime).div_exact(&inst.s))
                .expect("planted divisor");
            if !x.is_zero() && !y.is_zero() {
                let xy_factor = field.xy_bound();
                checks += 1;
                let bound = &ns * (xy_factor * xy_factor);
                if x.norm_sq() > bound || y.norm_sq() > bound {
                    fail(format!("x/y bound x={x} y={y} S={}", inst.s));
                }
                let xy_limit: u32 = if field == Field::Gaussian { 81 } else { 66 * 66 };
                checks += 1;
                if (x.clone() * &y).norm_sq() >= &ns * xy_limit {
                    fail(format!("xy bound x={x} y={y} S={}", inst.s));
                }
            }
            let small: u32 = if field == Field::Gaussian { 12 } else { 530 };
            let limit = &ns * (small * small);
            checks += 1;
            let exists = (1..=chain.t()).any(|k| {
                let (a, b, _) = &chain.triples[k];
                (a.clone() * x + &(b.clone() * &y)).norm_sq() < limit
            });
            if !exists {
                fail(format!("no small term for x={x} y={y} S={}", inst.s));
            }
        }
    }

    let mut rng = common::rng(600);
    for _ in 0..ORACLE_PER_RING {
        let p = common::planted_poly(&mut rng);
        let inst = &p.inst;
        let chain = build_chain(inst).expect("chain");
        let ds = inst.s.degree().expect("nonzero");
        for k in 0..chain.t() {
            let (a0, b0, _) = &chain.triples[k];
            let (a1, b1, _) = &chain.triples[k + 1];
            let det = a0.clone() * b1 - &(a1.clone() * b0);
            let want = if k % 2 == 0 { inst.s.clone() } else { -inst.s.clone() };
            checks += 2;
            if det != want {
                fail(format!("poly determinant at k={k}, S={}", inst.s));
            }
            if (a0.clone() * b1).degree() != Some(ds) {
                fail(format!("poly degree identity at k={k}, S={}", inst.s));
            }
        }
        let planted = p.planted.to_rat();
        let f = (planted.clone() - &inst.r).div_exact(&inst.s).expect("planted residue");
        let cof = inst.n.div_exact(&planted).expect("planted divides");
        let Some(g) = (cof - &inst.r_prime).div_exact(&inst.s) else { continue };
        if !f.is_integral() || !g.is_integral() {
            continue;
        }
        // f = 0 or g = 0 is the trivial divisor r or N/r', outside the bound lemmas
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let deg = |q: &RatPoly| q.degree().map_or(-1, |d| d as i64);
        checks += 1;
        if deg(&f) + deg(&g) > ds as i64 {
            fail(format!("poly f/g degree bound S={}", inst.s));
        }
        checks += 1;
        let exists = (1..=chain.t()).any(|k| {
            let (a, b, _) = &chain.triples[k];
            deg(&(a.clone() * &f + &(b.clone() * &g))) <= ds as i64
        });
        if !exists {
            fail(format!("no small poly term for planted {} S={}", p.planted, inst.s));
        }
    }
    outcome(failures.is_empty(), format!("{checks} checks, {} exceptions", failures.len()))
}

fn divisor_ceiling() -> Outcome {
    let mut rng = common::rng(700);
    let mut worst = 0usize;
    let mut instances = 0usize;
    let mut check = |n: &BigInt, s: &BigInt, r: &BigInt| {
        let inst = ProblemInstance::rational(n, s, r).expect("coprime");
        if !inst.within_gate {
            return;
        }
        instances += 1;
        let rep = divisors_rational(&inst).expect("algorithm");
        let positive = rep.divisors.iter().filter_map(QuadInt::to_rational).filter(|d| d.is_positive()).count();
        worst = worst.max(positive);
    };
    for _ in 0..Z_CORPUS {
        let (n, s, r) = common::rational_gate_instance(&mut rng, 1_000_000_000_000);
        check(&n, &s, &r);
    }
    // highly composite N with r = 1 and the smallest admissible S
    for _ in 0..Z_CORPUS / 4 {
        let mut n = BigInt::one();
        for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23] {
            for _ in 0..rng.gen_range(0..4) {
                n *= p;
            }
        }
        if n <= BigInt::from(8) {
            continue;
        }
        let mut s = n.cbrt() + 1u32;
        while !num_integer::Integer::gcd(&s, &n).is_one() {
            s += 1u32;
        }
        check(&n, &s, &BigInt::one());
    }
    for l in 3..=20 {
        let f = cohen_instance(l).expect("family");
        check(&f.n, &f.s, &f.r);
    }
    for x in 2..=20 {
        let f = seven_signed_instance(x).expect("family");
        check(&f.n, &f.s, &f.r);
    }
    outcome(worst <= DIVISOR_CEILING, format!("{instances} instances, largest class has {worst} positive divisors (ceiling {DIVISOR_CEILING})"))
}

fn scaling() -> Outcome {
    let start = Instant::now();
    let mut rows = Vec::new();
    for k in SCALING_KS {
        let cfg = BenchConfig {
            k_min: k,
            k_max: k,
            samples_per_k: SCALING_SAMPLES,
            seed: 2024 + u64::from(k),
            field: Field::Gaussian,
            out: "unused.csv".into(),
        };
        let (_, insts) = instance_stream(&cfg).expect("config").pop().expect("one k");
        let (mut secs, mut ops) = (0.0, 0u64);
        for inst in &insts {
            let t = Instant::now();
            let rep = divisors_quadratic(inst).expect("algorithm");
            secs += t.elapsed().as_secs_f64();
            ops += rep.stats.ops;
        }
        let n = insts.len() as f64;
        rows.push((k, ops as f64 / n, secs / n));
    }
    let per_k: Vec<f64> = rows.iter().map(|(k, ops, _)| ops / f64::from(*k)).collect();
    let spread = per_k.iter().copied().fold(0.0, f64::max) / per_k.iter().copied().fold(f64::INFINITY, f64::min);
    let ratio = rows[3].2 / rows[0].2;
    let total = start.elapsed().as_secs_f64();
    let ops_list: Vec<String> = rows.iter().map(|(k, ops, _)| format!("k={k}:{ops:.0}")).collect();
    outcome(
        spread <= OPS_PER_K_SPREAD && ratio < TIME_RATIO_LIMIT && total < SCALING_LIMIT_S,
        format!(
            "mean ops {}; ops/k spread {spread:.2} (limit {OPS_PER_K_SPREAD}); time(40)/time(10) = {ratio:.1} (limit {TIME_RATIO_LIMIT}); {total:.1} s",
            ops_list.join(" ")
        ),
    )
}

fn poly_sqrt() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(800);
    let mut bad = 0usize;
    for _ in 0..SQRT_CASES {
        let deg = rng.gen_range(0..=10usize);
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-100..=100)).collect();
        c.push(1);
        let p = IntPoly::from_ints(&c);
        let sq = &p * &p;
        match sq.sqrt() {
            Some(root) if root == p || root == -p.clone() => {}
            _ => bad += 1,
        }
        let mut e = 0i64;
        while e == 0 {
            e = rng.gen_range(-100..=100);
        }
        let perturbed = &sq + &IntPoly::from_ints(&[0, e]);
        // for linear p = x + a the perturbation -4a x gives (x - a)^2
        let expect_square = deg == 1 && c[0] != 0 && e == -4 * c[0];
        let got = perturbed.sqrt();
        let ok = match (&got, expect_square) {
            (None, false) => true,
            (Some(r), true) => &(r * r) == &perturbed,
            _ => false,
        };
        bad += usize::from(!ok);
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(bad == 0 && secs < SQRT_LIMIT_S, format!("{SQRT_CASES} cases, {bad} failures, {secs:.3} s (limit {SQRT_LIMIT_S} s)"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("standalone example", standalone),
        ("Cohen family", cohen),
        ("seven-signed family", seven),
        ("oracle equivalence", oracle_equivalence),
        ("lemma invariants", lemma_invariants),
        ("divisor-count ceiling", divisor_ceiling),
        ("complexity scaling", scaling),
        ("polynomial square root", poly_sqrt),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += usize::from(!o.pass);
        println!("{} criterion {} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
