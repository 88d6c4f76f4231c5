//! The algorithm against brute force on smaller corpora than the acceptance
//! run, plus the agreement of the machine-integer and reference sweeps.

mod common;

use num_bigint::BigInt;
use rand::Rng;

use resdiv::algorithms::{divisors_poly, divisors_poly_with_mode, divisors_quadratic, divisors_rational};
use resdiv::oracle::{default_scan_factor, oracle_poly, oracle_quadratic, oracle_rational};
use resdiv::remseq::{build_chain, congruence_witness, ProblemInstance};
use resdiv::rings::{EuclideanRing, Field, IntPoly, QuadInt};
use resdiv::solver::{enumerate_residues, sweep_index_fast, sweep_index_reference, Counters, ShiftMode};

#[test]
fn residue_enumeration_matches_brute_force() {
    let mut rng = common::rng(11);
    for case in 0..100 {
        let field = Field::ALL[case % Field::ALL.len()];
        let size = common::log_uniform(&mut rng, 400);
        let s = common::quad_in_disk(&mut rng, field, size);
        if s.norm_sq() < BigInt::from(2) {
            continue;
        }
        let c = common::quad_in_disk(&mut rng, field, 2 * 400);
        let radius = rng.gen_range(1..=6u32);
        let mut got = enumerate_residues(&c, &s, radius);

        // every element of the disk, kept when congruent to c
        let limit = s.norm_sq() * radius * radius;
        let limit4: i64 = (&limit * 4u32).try_into().unwrap();
        let span = (limit4 as f64).sqrt() as i64 + 1;
        let mut want = Vec::new();
        for u in -span..=span {
            for v in -span..=span {
                let Ok(g) = QuadInt::from_half(u.into(), v.into(), field) else { continue };
                if g.norm_sq() < limit && s.divides(&(g.clone() - &c)) {
                    want.push(g);
                }
            }
        }
        got.sort_by(QuadInt::report_cmp);
        want.sort_by(QuadInt::report_cmp);
        assert_eq!(got, want, "S = {s}, c = {c}, R = {radius}");
    }
}

#[test]
fn fast_sweep_matches_reference_sweep() {
    let mut rng = common::rng(12);
    let mut compared = 0;
    for case in 0..60 {
        let field = Field::ALL[case % Field::ALL.len()];
        let max_ns = if field == Field::Gaussian { 1_000_000 } else { 400 };
        let p = common::planted_quad(&mut rng, field, max_ns);
        let chain = build_chain(&p.inst).unwrap();
        let radius = if field == Field::Gaussian { 12 } else { 40 };
        for i in 1..=chain.t() {
            let (a, b, c) = &chain.triples[i];
            let (mut c1, mut c2) = (Counters::default(), Counters::default());
            let Some(fast) = sweep_index_fast(&p.inst, i, (a, b, c), radius, &mut c1) else { continue };
            let slow = sweep_index_reference(&p.inst, i, (a, b, c), radius, &mut c2);
            assert_eq!(fast, slow);
            assert_eq!(c1, c2);
            compared += 1;
        }
    }
    assert!(compared > 100);
}

#[test]
fn chain_carries_the_congruence_of_planted_solutions() {
    let mut rng = common::rng(13);
    for case in 0..50 {
        let field = Field::ALL[case % Field::ALL.len()];
        let p = common::planted_quad(&mut rng, field, 10_000);
        let chain = build_chain(&p.inst).unwrap();
        let x = (p.divisor.clone() - &p.inst.r).div_exact(&p.inst.s).unwrap();
        let y = (p.inst.n.div_exact(&p.divisor).unwrap() - &p.inst.r_prime).div_exact(&p.inst.s).unwrap();
        assert!(congruence_witness(&chain, &x, &y, &p.inst), "S = {}", p.inst.s);
    }
}

#[test]
fn quadratic_rings_agree_with_the_oracle() {
    for (k, field) in Field::ALL.into_iter().enumerate() {
        let mut rng = common::rng(20 + k as u64);
        let max_ns = if field == Field::Gaussian { 10_000 } else { 60 };
        for _ in 0..15 {
            let p = common::planted_quad(&mut rng, field, max_ns);
            let got = divisors_quadratic(&p.inst).unwrap();
            let want = oracle_quadratic(&p.inst, default_scan_factor(field)).unwrap().divisors;
            assert_eq!(got.divisors, want, "N = {}, S = {}, r = {}", p.inst.n, p.inst.s, p.inst.r);
            assert!(got.divisors.contains(&p.divisor));
        }
    }
}

#[test]
fn rational_divisors_are_the_real_gaussian_ones() {
    let mut rng = common::rng(30);
    for _ in 0..100 {
        let (n, s, r) = common::rational_gate_instance(&mut rng, 10_000_000);
        let inst = ProblemInstance::rational(&n, &s, &r).unwrap();
        let got: Vec<BigInt> = divisors_rational(&inst).unwrap().divisors.iter().filter_map(QuadInt::to_rational).collect();
        let want = oracle_rational(&n, &s, &r).unwrap().divisors;
        assert_eq!(common::sorted_ints(got), common::sorted_ints(want.clone()), "N = {n}, S = {s}, r = {r}");

        let gauss = oracle_quadratic(&inst, default_scan_factor(Field::Gaussian)).unwrap().divisors;
        let real: Vec<BigInt> = gauss.iter().filter_map(QuadInt::to_rational).collect();
        assert_eq!(common::sorted_ints(real), common::sorted_ints(want));
    }
}

#[test]
fn polynomial_divisors_agree_with_the_oracle() {
    let mut rng = common::rng(40);
    for _ in 0..40 {
        let p = common::planted_poly(&mut rng);
        let got: Vec<IntPoly> =
            divisors_poly(&p.inst).unwrap().divisors.iter().map(|d| d.to_int_poly().unwrap()).collect();
        let want = oracle_poly(&p.factors, &p.s, &p.r).unwrap().divisors;
        assert_eq!(got, want, "N = {}, S = {}, r = {}", p.inst.n, p.s, p.r);
    }
}

/// The single shift that assumes both leading terms survive misses divisors
/// where one of `a_i f`, `b_i g` has lower degree; the full candidate set does not.
#[test]
fn single_shift_misses_divisors_the_full_set_finds() {
    let mut rng = common::rng(50);
    let mut misses = 0;
    for _ in 0..200 {
        let p = common::planted_poly(&mut rng);
        let want = oracle_poly(&p.factors, &p.s, &p.r).unwrap().divisors;
        let ints = |mode| -> Vec<IntPoly> {
            divisors_poly_with_mode(&p.inst, mode).unwrap().divisors.iter().map(|d| d.to_int_poly().unwrap()).collect()
        };
        assert_eq!(ints(ShiftMode::Full), want);
        let single = ints(ShiftMode::BothTermsOnly);
        assert!(single.iter().all(|d| want.contains(d)));
        misses += usize::from(single.len() < want.len());
    }
    assert!(misses > 0);
}

#[test]
fn reports_are_sound_and_duplicate_free() {
    let mut rng = common::rng(60);
    for case in 0..40 {
        let field = Field::ALL[case % Field::ALL.len()];
        let p = common::planted_quad(&mut rng, field, 500);
        let report = divisors_quadratic(&p.inst).unwrap();
        for d in &report.divisors {
            assert!(d.divides(&p.inst.n));
            assert!((d.clone() - &p.inst.r).rem(&p.inst.s).unwrap().is_zero());
        }
        let mut sorted = report.divisors.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), report.divisors.len());
    }
}
