//! Randomized property suites shared by the acceptance run and the
//! standalone property tests. Every suite runs under a fixed seed.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oideal_core::module::koszul_matrix;
use oideal_core::{
    ideal_groebner, kernel_of_map, linalg, parse_ring, rees_of_module, FPModule, FreeElement,
    Ideal, Monomial, MonomialOrder, PolyMatrix, Polynomial, RingRef,
};

pub const SEED: u64 = 42;

pub fn runner(cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&SEED.to_le_bytes());
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| match e {
        TestError::Fail(why, value) => format!("{why} for {value:?}"),
        TestError::Abort(why) => format!("aborted: {why}"),
    })
}

fn ok<T>(r: oideal_core::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

fn random_poly(r: &RingRef, rng: &mut ChaCha8Rng, max_deg: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(r);
    for _ in 0..terms {
        let e: Vec<u32> = (0..r.nvars()).map(|_| rng.gen_range(0..=max_deg)).collect();
        let m = Monomial::from_exponents(&e).unwrap();
        p = &p + &Polynomial::monomial(r, m, r.field().from_i64(rng.gen_range(-5..=5)));
    }
    p
}

fn homogeneous_monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![deg]];
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in homogeneous_monomials(nvars - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn random_homogeneous(r: &RingRef, rng: &mut ChaCha8Rng, deg: u32) -> Polynomial {
    let mut p = Polynomial::zero(r);
    for e in homogeneous_monomials(r.nvars(), deg) {
        if rng.gen_bool(0.4) {
            let m = Monomial::from_exponents(&e).unwrap();
            p = &p + &Polynomial::monomial(r, m, r.field().from_i64(rng.gen_range(-3..=3)));
        }
    }
    p
}

fn random_monomial(r: &RingRef, rng: &mut ChaCha8Rng, lo: u32, hi: u32) -> Polynomial {
    let deg = rng.gen_range(lo..=hi);
    let mut e = vec![0u32; r.nvars()];
    for _ in 0..deg {
        e[rng.gen_range(0..r.nvars())] += 1;
    }
    Polynomial::monomial(r, Monomial::from_exponents(&e).unwrap(), r.field().one())
}

fn random_entry(r: &RingRef, rng: &mut ChaCha8Rng) -> Polynomial {
    match rng.gen_range(0..4) {
        0 => Polynomial::zero(r),
        1 => {
            let mut l = Polynomial::zero(r);
            for v in 0..r.nvars() {
                l = &l + &(&Polynomial::var(r, v) * &Polynomial::from_i64(r, rng.gen_range(-2..=2)));
            }
            l
        }
        _ => random_monomial(r, rng, 1, 2),
    }
}

/// Reduced bases are confluent and contain the input, for several orders
/// and both kinds of field.
pub fn gb_confluence(cases: u32) -> Result<(), String> {
    check(cases, any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = if rng.gen_bool(0.5) { "QQ" } else { "GF(32003)" };
        let order = ["lex", "grlex", "grevlex"][rng.gen_range(0..3)];
        let r = ok(parse_ring(&format!("{field}[x,y,z] order={order}")))?;
        let n = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..n)
            .map(|_| {
                let t = rng.gen_range(1..=3);
                random_poly(&r, &mut rng, 2, t)
            })
            .collect();
        let gb = ok(ideal_groebner(&r, &gens))?;
        prop_assert!(gb.is_confluent());
        for g in &gens {
            prop_assert!(ok(gb.contains_poly(g))?);
        }
        Ok(())
    })
}

/// Membership through the basis agrees with linear algebra on the degree
/// `D` component, for homogeneous ideals in three variables.
pub fn membership_oracle(cases: u32) -> Result<(), String> {
    let r = parse_ring("QQ[x,y,z]").unwrap();
    let field = r.field();
    check(cases, any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let mut gens = Vec::new();
        while gens.len() < n {
            let d = rng.gen_range(1..=3);
            let g = random_homogeneous(&r, &mut rng, d);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        let top = gens.iter().filter_map(Polynomial::total_degree).max().unwrap();
        let deg = top + rng.gen_range(0..=1);
        let mut f = Polynomial::zero(&r);
        for g in &gens {
            let gd = g.total_degree().unwrap();
            if gd <= deg && rng.gen_bool(0.7) {
                f = &f + &(&random_homogeneous(&r, &mut rng, deg - gd) * g);
            }
        }
        if rng.gen_bool(0.5) {
            f = &f + &random_monomial(&r, &mut rng, deg, deg);
        }
        let basis = homogeneous_monomials(3, deg);
        let index: HashMap<Monomial, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, e)| (Monomial::from_exponents(e).unwrap(), i))
            .collect();
        let dense = |p: &Polynomial| {
            let mut row = vec![field.zero(); basis.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        };
        let mut rows = Vec::new();
        for g in &gens {
            let gd = g.total_degree().unwrap();
            if gd > deg {
                continue;
            }
            for e in homogeneous_monomials(3, deg - gd) {
                let m = Monomial::from_exponents(&e).unwrap();
                rows.push(dense(&g.mul_term(&m, &field.one())));
            }
        }
        let base = linalg::rank(field, &rows);
        rows.push(dense(&f));
        let oracle = linalg::rank(field, &rows) == base;
        let ideal = ok(Ideal::new(&r, gens.clone()))?;
        prop_assert_eq!(ok(ideal.contains(&f))?, oracle);
        Ok(())
    })
}

/// `dim R/I` of a monomial ideal is the largest set of variables that
/// contains the support of no generator.
pub fn monomial_dimension(cases: u32) -> Result<(), String> {
    let r = parse_ring("QQ[a,b,c,d,e]").unwrap();
    check(cases, any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let gens: Vec<Polynomial> = (0..n).map(|_| random_monomial(&r, &mut rng, 1, 3)).collect();
        let supports: Vec<u32> = gens
            .iter()
            .map(|g| g.variables_used().iter().fold(0u32, |s, &v| s | 1 << v))
            .collect();
        let brute = (0u32..1 << 5)
            .filter(|&s| supports.iter().all(|&g| g & !s != 0))
            .map(u32::count_ones)
            .max()
            .unwrap() as usize;
        let ideal = ok(Ideal::new(&r, gens))?;
        prop_assert_eq!(ok(ideal.dim_quotient())?, Some(brute));
        Ok(())
    })
}

/// Consecutive Koszul maps compose to zero.
pub fn koszul_square_zero() -> Result<(), String> {
    let r = parse_ring("QQ[z1,z2,z3,z4,z5,z6]").unwrap();
    for d in 3..=6 {
        for i in 0..=d - 3 {
            let a = koszul_matrix(&r, d, i).map_err(|e| e.to_string())?;
            let b = koszul_matrix(&r, d, i + 1).map_err(|e| e.to_string())?;
            if !a.mul(&b).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("d^2 != 0 for d = {d}, i = {i}"));
            }
        }
    }
    Ok(())
}

/// `Fitt_0 ⊆ Fitt_1 ⊆ ... ⊆ Fitt_n = R` for random presentations.
pub fn fitting_chain(cases: u32) -> Result<(), String> {
    let r = parse_ring("QQ[x,y,z]").unwrap();
    check(cases, any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let rows: Vec<Vec<Polynomial>> =
            (0..n).map(|_| (0..k).map(|_| random_entry(&r, &mut rng)).collect()).collect();
        let m = FPModule::cokernel(ok(PolyMatrix::from_rows(&r, rows, k))?);
        let mut prev = ok(m.fitting_ideal(0))?;
        for j in 1..=n {
            let next = ok(m.fitting_ideal(j))?;
            prop_assert!(ok(next.contains_ideal(&prev))?, "Fitt_{} not in Fitt_{}", j - 1, j);
            prev = next;
        }
        prop_assert!(ok(prev.is_unit())?);
        Ok(())
    })
}

fn random_module(r: &RingRef, rng: &mut ChaCha8Rng) -> Vec<FreeElement> {
    let rank = rng.gen_range(1..=2);
    let count = rng.gen_range(1..=4);
    let mut gens = Vec::new();
    while gens.len() < count {
        let v = FreeElement::new((0..rank).map(|_| random_entry(r, rng)).collect());
        if !v.is_zero() {
            gens.push(v);
        }
    }
    gens
}

/// `ℓ(M) ≤ μ(M)` and `ℓ(M) ≤ dim R + rank F - 1` for random submodules.
pub fn spread_bounds(cases: u32) -> Result<(), String> {
    let r = parse_ring("QQ[x,y,z]").unwrap();
    check(cases, any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_module(&r, &mut rng);
        let rp = ok(rees_of_module(&r, &gens))?;
        prop_assert!(rp.spread_within_generators(), "spread {} > {}", rp.analytic_spread, rp.ngens());
        prop_assert!(ok(rp.spread_within_dimension_bound())?);
        Ok(())
    })
}

/// For an ideal the Rees ideal is the kernel of `R[T] -> R[t]`,
/// `T_i -> f_i t`.
pub fn rees_matches_kernel(cases: u32) -> Result<(), String> {
    let r = parse_ring("QQ[x,y,z]").unwrap();
    check(cases, any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let mut gens = Vec::new();
        while gens.len() < n {
            let g = random_entry(&r, &mut rng);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        let vectors: Vec<FreeElement> = gens.iter().map(|g| FreeElement::new(vec![g.clone()])).collect();
        let rp = ok(rees_of_module(&r, &vectors))?;
        let rt = rp.rees_ideal.ring().clone();
        let target: RingRef =
            Arc::new(ok(r.extended(&[], &["t".to_string()], MonomialOrder::Grevlex, None))?);
        let t = Polynomial::var(&target, r.nvars());
        let mut images: Vec<Polynomial> = (0..r.nvars()).map(|i| Polynomial::var(&target, i)).collect();
        for g in &gens {
            images.push(&ok(g.to_ring(&target))? * &t);
        }
        let kernel: Vec<Polynomial> = ok(kernel_of_map(&rt, &target, &images))?
            .iter()
            .map(|p| p.to_ring(&rt))
            .collect::<oideal_core::Result<_>>()
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        let kernel = ok(Ideal::new(&rt, kernel))?;
        prop_assert!(ok(kernel.equals(&rp.rees_ideal))?);
        Ok(())
    })
}
