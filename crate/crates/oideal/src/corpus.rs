//! Module and submodule collections used by the cross-checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oideal_core::module::omega;
use oideal_core::{
    parse_ring, FPModule, FreeElement, Ideal, Monomial, PolyMatrix, Polynomial, Result, RingRef,
};

use crate::build;

fn random_monomial(r: &RingRef, rng: &mut ChaCha8Rng, lo: u32, hi: u32) -> Polynomial {
    let deg = rng.gen_range(lo..=hi);
    let mut e = vec![0u32; r.nvars()];
    for _ in 0..deg {
        e[rng.gen_range(0..r.nvars())] += 1;
    }
    Polynomial::monomial(r, Monomial::from_exponents(&e).unwrap(), r.field().one())
}

fn random_linear(r: &RingRef, rng: &mut ChaCha8Rng) -> Polynomial {
    let mut l = Polynomial::zero(r);
    for v in 0..r.nvars() {
        let c = rng.gen_range(-2..=2);
        l = &l + &(&Polynomial::var(r, v) * &Polynomial::from_i64(r, c));
    }
    l
}

/// At least twenty presented modules: the scenario modules plus seeded
/// random cokernels.
pub fn route_corpus(seed: u64) -> Result<Vec<(String, FPModule)>> {
    let mut out = Vec::new();
    let cr = build::curve_ring()?;
    for alpha in [2, 4] {
        out.push((format!("curve module alpha={alpha}"), build::curve_module(&cr, alpha)?));
    }
    for d in [4, 5, 6] {
        let r = build::koszul_ring("QQ", d)?;
        out.push((format!("omega1 d={d}"), omega(&r, d, 1)?));
    }
    let r4 = build::koszul_ring("QQ", 4)?;
    out.push(("omega2 d=4".into(), omega(&r4, 4, 2)?));
    let q = build::quadric_cone()?;
    out.push(("quadric cone perp".into(), build::quadric_cone_perp(&q)?));
    let mr = build::minor_ring(true)?;
    let minors = Ideal::new(&mr, build::minors_2x4(&mr)?)?;
    out.push(("2x4 minors".into(), FPModule::from_ideal(&minors)?));
    let fp = parse_ring("GF(32003)[z1,z2,z3,z4]")?;
    let chi = PolyMatrix::from_rows(
        &fp,
        oideal_core::parse_matrix_rows(&fp, "[[z1, z2, z3, z4], [z2, z3, z4, z1 + z3]]")?,
        4,
    )?;
    let kernel = oideal_core::syzygies(&fp, &chi.columns())?.generators;
    out.push(("kernel of 2x4 linear matrix".into(), FPModule::from_submodule(&fp, &kernel)?));
    let r = parse_ring("QQ[x,y,z]")?;
    out.push(("free rank 2".into(), FPModule::free(&r, 2)));
    for (name, text) in [("R/(x)", "x"), ("maximal ideal", "x, y, z"), ("(x^2, xy, y^2)", "x^2, x*y, y^2")] {
        let i = Ideal::parse(&r, text)?;
        if name == "R/(x)" {
            let m = PolyMatrix::from_rows(&r, vec![i.generators().to_vec()], 1)?;
            out.push((name.into(), FPModule::cokernel(m)));
        } else {
            let m = FPModule::from_ideal(&i)?;
            out.push((format!("{name} perp"), m.perpendicular(true)?.perp));
            out.push((name.into(), m));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..8 {
        let n = rng.gen_range(2..=3);
        let cols = rng.gen_range(1..=3);
        let rows: Vec<Vec<Polynomial>> = (0..n)
            .map(|_| {
                (0..cols)
                    .map(|_| match rng.gen_range(0..3) {
                        0 => Polynomial::zero(&r),
                        1 => random_linear(&r, &mut rng),
                        _ => random_monomial(&r, &mut rng, 1, 2),
                    })
                    .collect()
            })
            .collect();
        let m = PolyMatrix::from_rows(&r, rows, cols)?;
        out.push((format!("random cokernel {k}"), FPModule::cokernel(m)));
    }
    Ok(out)
}

/// A submodule `U ⊆ M ⊆ R^m` for the integrality checks.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub ring: RingRef,
    pub m: Vec<FreeElement>,
    pub u: Vec<FreeElement>,
}

/// Twenty seeded random instances over a polynomial ring (monomial ideals
/// and rank 2 monomial modules), plus the curve ideal with three of its
/// generators.
pub fn bound_instances(seed: u64) -> Result<Vec<Instance>> {
    let r = parse_ring("QQ[x,y,z]")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 0..20 {
        let rank = if k % 4 == 3 { 2 } else { 1 };
        let count = rng.gen_range(3..=4);
        let mut m: Vec<FreeElement> = Vec::new();
        while m.len() < count {
            let v: Vec<Polynomial> = (0..rank)
                .map(|_| {
                    if rank > 1 && rng.gen_bool(0.3) {
                        Polynomial::zero(&r)
                    } else {
                        random_monomial(&r, &mut rng, 1, 3)
                    }
                })
                .collect();
            let v = FreeElement::new(v);
            if !v.is_zero() && !m.contains(&v) {
                m.push(v);
            }
        }
        let mut picks: Vec<usize> = (0..m.len()).collect();
        picks.shuffle(&mut rng);
        let t = rng.gen_range(1..m.len());
        let mut u: Vec<FreeElement> = picks[..t].iter().map(|&i| m[i].clone()).collect();
        // sometimes a multiple of a left-out generator as well
        if rng.gen_bool(0.5) {
            let extra = &m[picks[t]];
            u.push(extra.scale(&random_monomial(&r, &mut rng, 1, 1)));
        }
        out.push(Instance {
            label: format!("random {} {k}", if rank == 1 { "ideal" } else { "module" }),
            ring: r.clone(),
            m,
            u,
        });
    }
    let cr = build::curve_ring()?;
    let i = build::curve_ideal(&cr, 2)?;
    let m = build::ideal_vectors(i.generators());
    out.push(Instance {
        label: "curve ideal, first three generators".into(),
        ring: cr,
        u: m[..3].to_vec(),
        m,
    });
    Ok(out)
}
