//! Gröbner bases of ideals and of submodules of free modules, normal forms,
//! elimination and syzygies.

mod engine;
mod vector;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder, PositionRule};
use crate::poly::{FreeElement, Polynomial};
use crate::ring::{same_ring, RingRef};

use engine::{reduce_by, reduce_frozen, Engine};
use vector::{Ctx, Vector};

/// A reduced Gröbner basis of a submodule of `R^rank` (rank 1 for ideals).
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: RingRef,
    rank: usize,
    ctx: Ctx,
    elements: Vec<FreeElement>,
    vectors: Vec<Vector>,
}

/// Generators of the kernel of `R^s -> R^m`, `e_i -> v_i`.
#[derive(Debug, Clone)]
pub struct SyzygyResult {
    pub generators: Vec<FreeElement>,
    pub source_rank: usize,
}

fn check_inputs(ring: &RingRef, vectors: &[FreeElement], rank: usize) -> Result<()> {
    for v in vectors {
        if !same_ring(v.ring(), ring) {
            return Err(Error::RingMismatch);
        }
        if v.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: v.rank(),
            });
        }
    }
    Ok(())
}

/// `q * e_i` for every quotient generator `q` and every position `i < rank`,
/// placed at `offset + i`.
fn quotient_vectors(ring: &RingRef, ctx: &Ctx, rank: usize, offset: u32) -> Vec<Vector> {
    let mut out = Vec::new();
    for q in ring.quotient_terms() {
        let q = Polynomial::from_terms(ring, q.iter().cloned());
        for i in 0..rank {
            out.push(Vector::from_coords(ctx, std::slice::from_ref(&q), offset + i as u32));
        }
    }
    out
}

/// Reduced Gröbner basis under position-over-term.
pub fn groebner(ring: &RingRef, vectors: &[FreeElement], rank: usize) -> Result<GroebnerBasis> {
    groebner_with_rule(ring, vectors, rank, PositionRule::PositionOverTerm)
}

pub fn groebner_with_rule(
    ring: &RingRef,
    vectors: &[FreeElement],
    rank: usize,
    rule: PositionRule,
) -> Result<GroebnerBasis> {
    check_inputs(ring, vectors, rank)?;
    let ctx = Ctx::new(ring, rule);
    let mut inputs: Vec<Vector> = vectors.iter().map(|v| Vector::from_free(&ctx, v)).collect();
    inputs.extend(quotient_vectors(ring, &ctx, rank, 0));
    let out = Engine::new(&ctx, rank, None).run(inputs)?;
    let elements = out.basis.iter().map(|v| v.to_free(ring, rank)).collect();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        rank,
        ctx,
        elements,
        vectors: out.basis,
    })
}

/// Gröbner basis of an ideal.
pub fn ideal_groebner(ring: &RingRef, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let vs: Vec<FreeElement> = gens.iter().map(|g| FreeElement::new(vec![g.clone()])).collect();
    groebner(ring, &vs, 1)
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rule(&self) -> PositionRule {
        self.ctx.rule
    }

    pub fn elements(&self) -> &[FreeElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Ideal case: the basis polynomials.
    pub fn polys(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|e| e.get(0).clone()).collect()
    }

    /// Leading terms as (position, monomial).
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.vectors
            .iter()
            .map(|v| {
                let (p, m, _) = &v.terms[0];
                (*p as usize, m.clone())
            })
            .collect()
    }

    /// Whether the submodule is the whole free module.
    pub fn is_everything(&self) -> bool {
        (0..self.rank).all(|i| {
            self.vectors
                .iter()
                .any(|v| v.terms[0].0 as usize == i && v.terms[0].1.is_one())
        })
    }

    pub fn normal_form(&self, v: &FreeElement) -> Result<FreeElement> {
        check_inputs(&self.ring, std::slice::from_ref(v), self.rank)?;
        let r = reduce_by(&self.ctx, &self.vectors, Vector::from_free(&self.ctx, v));
        Ok(r.to_free(&self.ring, self.rank))
    }

    pub fn contains(&self, v: &FreeElement) -> Result<bool> {
        check_inputs(&self.ring, std::slice::from_ref(v), self.rank)?;
        Ok(reduce_by(&self.ctx, &self.vectors, Vector::from_free(&self.ctx, v)).is_zero())
    }

    /// Ideal case convenience.
    pub fn reduce_poly(&self, f: &Polynomial) -> Result<Polynomial> {
        let nf = self.normal_form(&FreeElement::new(vec![f.clone()]))?;
        Ok(nf.get(0).clone())
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        self.contains(&FreeElement::new(vec![f.clone()]))
    }

    /// Whether every S-vector of two basis elements reduces to zero.
    pub fn is_confluent(&self) -> bool {
        let field = self.ctx.field;
        for i in 0..self.vectors.len() {
            for j in i + 1..self.vectors.len() {
                let (pi, mi, _) = &self.vectors[i].terms[0];
                let (pj, mj, _) = &self.vectors[j].terms[0];
                if pi != pj {
                    continue;
                }
                let lcm = mi.lcm(mj);
                let left = self.vectors[i].mul_term(field, &mi.quotient_of(&lcm), &field.one());
                let s = left.sub_scaled(&self.ctx, &field.one(), &mj.quotient_of(&lcm), &self.vectors[j]);
                if !reduce_by(&self.ctx, &self.vectors, s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Elements of a basis computed under `elim(k)` (or lex) that do not involve
/// the first `k` variables.
pub fn eliminate(gb: &GroebnerBasis, k: usize) -> Result<Vec<FreeElement>> {
    if k == 0 {
        return Ok(gb.elements.clone());
    }
    match gb.ring.order() {
        MonomialOrder::Elimination(b) if b == k => {}
        MonomialOrder::Lex if k <= gb.ring.nvars() => {}
        _ => return Err(Error::OrderMismatch(k)),
    }
    Ok(gb
        .elements
        .iter()
        .filter(|e| {
            e.coords().iter().all(|p| {
                p.terms()
                    .iter()
                    .all(|(m, _)| m.exponents()[..k].iter().all(|&x| x == 0))
            })
        })
        .cloned()
        .collect())
}

/// Syzygies of `vectors` (over `R / quotient` when the ring has one).
pub fn syzygies(ring: &RingRef, vectors: &[FreeElement]) -> Result<SyzygyResult> {
    relative_syzygies(ring, vectors, &[])
}

/// Coefficient vectors `a` with `sum a_i * tracked_i` in the submodule
/// generated by `untracked` (and the quotient ideal times the free module).
pub fn relative_syzygies(
    ring: &RingRef,
    tracked: &[FreeElement],
    untracked: &[FreeElement],
) -> Result<SyzygyResult> {
    let s = tracked.len();
    if s == 0 {
        return Ok(SyzygyResult {
            generators: Vec::new(),
            source_rank: 0,
        });
    }
    let m = tracked[0].rank();
    check_inputs(ring, tracked, m)?;
    check_inputs(ring, untracked, m)?;
    let ctx = Ctx::new(ring, PositionRule::PositionOverTerm);
    let mut inputs: Vec<Vector> = Vec::with_capacity(s + untracked.len() + m);
    for (i, v) in tracked.iter().enumerate() {
        let mut t = Vector::from_free(&ctx, v).terms;
        t.extend(Vector::from_coords(&ctx, &[Polynomial::one(ring)], (m + i) as u32).terms);
        inputs.push(Vector { terms: t });
    }
    inputs.extend(untracked.iter().map(|v| Vector::from_free(&ctx, v)));
    inputs.extend(quotient_vectors(ring, &ctx, m, 0));
    let out = Engine::new(&ctx, m + s, Some(m as u32)).run(inputs)?;
    let raw: Vec<FreeElement> = out
        .syzygies
        .iter()
        .map(|v| FreeElement::new(v.to_coords(ring, m as u32, s)))
        .collect();
    let generators = if ring.has_quotient() {
        // normal forms modulo the quotient, dropping what vanishes there
        let zero_mod = groebner(ring, &[], s)?;
        let gb = groebner(ring, &raw, s)?;
        let mut gens = Vec::new();
        for e in gb.elements() {
            if !zero_mod.contains(e)? {
                gens.push(zero_mod.normal_form(e)?);
            }
        }
        gens
    } else {
        groebner(ring, &raw, s)?.elements
    };
    Ok(SyzygyResult {
        generators,
        source_rank: s,
    })
}

/// Cofactors: for each target `v`, coefficients `a` with `v = sum a_i gens_i`
/// (modulo the quotient ideal), or `None` when `v` is not in the span.
pub fn lift(
    ring: &RingRef,
    gens: &[FreeElement],
    targets: &[FreeElement],
) -> Result<Vec<Option<FreeElement>>> {
    let Some(first) = targets.first().or(gens.first()) else {
        return Ok(Vec::new());
    };
    let m = first.rank();
    check_inputs(ring, gens, m)?;
    check_inputs(ring, targets, m)?;
    let s = gens.len();
    if s == 0 {
        return Ok(targets.iter().map(|_| None).collect());
    }
    let ctx = Ctx::new(ring, PositionRule::PositionOverTerm);
    let mut inputs: Vec<Vector> = Vec::with_capacity(s + m);
    for (i, v) in gens.iter().enumerate() {
        let mut t = Vector::from_free(&ctx, v).terms;
        t.extend(Vector::from_coords(&ctx, &[Polynomial::one(ring)], (m + i) as u32).terms);
        inputs.push(Vector { terms: t });
    }
    inputs.extend(quotient_vectors(ring, &ctx, m, 0));
    let out = Engine::new(&ctx, m + s, Some(m as u32)).run(inputs)?;
    let mut result = Vec::with_capacity(targets.len());
    for v in targets {
        let r = reduce_frozen(&ctx, &out.basis, m as u32, Vector::from_free(&ctx, v));
        if r.terms.iter().any(|t| (t.0 as usize) < m) {
            result.push(None);
        } else {
            // v - sum a_i gens_i reduced to -(bookkeeping): negate
            let coords = r.to_coords(ring, m as u32, s);
            result.push(Some(FreeElement::new(coords.iter().map(|c| -c).collect())));
        }
    }
    Ok(result)
}

/// Generators of the kernel of `k[source] -> target`, `x_i -> images[i]`.
pub fn kernel_of_map(
    source: &RingRef,
    target: &RingRef,
    images: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    if images.len() != source.nvars() {
        return Err(Error::Invalid(format!(
            "{} images for {} variables",
            images.len(),
            source.nvars()
        )));
    }
    if source.field() != target.field() {
        return Err(Error::RingMismatch);
    }
    let nt = target.nvars();
    let back: Vec<String> = source.variables().to_vec();
    let big = Arc::new(target.extended(&[], &back, MonomialOrder::Lex, None)?);
    // target variables first, eliminated as a block
    let elim = Arc::new(big.with_order(MonomialOrder::Elimination(nt))?);
    let mut gens = Vec::with_capacity(images.len());
    for (i, img) in images.iter().enumerate() {
        if !same_ring(img.ring(), target) {
            return Err(Error::RingMismatch);
        }
        let img = img.to_ring(&elim)?;
        gens.push(&Polynomial::var(&elim, nt + i) - &img);
    }
    let gb = ideal_groebner(&elim, &gens)?;
    let kept = eliminate(&gb, nt)?;
    let plain = Arc::new(source.ambient());
    let names: Vec<usize> = (nt..elim.nvars()).collect();
    kept.iter()
        .map(|e| {
            let p = e.get(0);
            let images: Vec<Polynomial> = (0..elim.nvars())
                .map(|v| match names.iter().position(|&x| x == v) {
                    Some(j) => Polynomial::var(&plain, j),
                    None => Polynomial::zero(&plain),
                })
                .collect();
            p.substitute(&images)
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().map(|p| p.to_ring(source)).collect::<Result<Vec<_>>>())?
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_matrix_rows, parse_poly, parse_poly_list, parse_ring};

    fn polys(r: &RingRef, s: &str) -> Vec<Polynomial> {
        parse_poly_list(r, s).unwrap()
    }

    fn vecs(r: &RingRef, s: &str) -> Vec<FreeElement> {
        parse_matrix_rows(r, s)
            .unwrap()
            .into_iter()
            .map(FreeElement::new)
            .collect()
    }

    #[test]
    fn twisted_cubic_elimination() {
        let r = parse_ring("QQ[x,y,z] order=elim(1)").unwrap();
        let gb = ideal_groebner(&r, &polys(&r, "y - x^2, z - x^3")).unwrap();
        assert!(gb.is_confluent());
        let kept = eliminate(&gb, 1).unwrap();
        let target = parse_poly(&r, "z^2 - y^3").unwrap();
        assert!(kept
            .iter()
            .any(|e| e.get(0).monic() == target.monic()));
        assert!(gb.contains_poly(&target).unwrap());
    }

    #[test]
    fn eliminate_needs_matching_order() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let gb = ideal_groebner(&r, &polys(&r, "x - y")).unwrap();
        assert_eq!(eliminate(&gb, 1), Err(Error::OrderMismatch(1)));
        assert_eq!(eliminate(&gb, 0).unwrap().len(), 1);
    }

    #[test]
    fn variables_are_their_own_basis() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let gb = ideal_groebner(&r, &polys(&r, "x, y")).unwrap();
        assert_eq!(gb.polys().len(), 2);
        let one = Polynomial::one(&r);
        assert_eq!(gb.reduce_poly(&one).unwrap(), one);
    }

    #[test]
    fn small_submodule() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let gb = groebner(&r, &vecs(&r, "[[x,0],[0,x],[y,y]]"), 2).unwrap();
        assert_eq!(gb.len(), 3);
        assert!(gb.is_confluent());
    }

    #[test]
    fn quotient_normal_form() {
        let r = parse_ring("QQ[Z0,Z1,Z2,Z3] mod=(Z0*Z3 - Z1*Z2)").unwrap();
        let gb = ideal_groebner(&r, &[]).unwrap();
        let f = parse_poly(&r, "Z0*Z3").unwrap();
        // under grevlex the leading term of the relation is Z1*Z2
        assert_eq!(gb.reduce_poly(&f).unwrap(), f);
        let g = parse_poly(&r, "Z1*Z2").unwrap();
        assert_eq!(gb.reduce_poly(&g).unwrap(), f);
        let lex = Arc::new(r.with_order(MonomialOrder::Lex).unwrap());
        let gb = ideal_groebner(&lex, &[]).unwrap();
        let f = parse_poly(&lex, "Z0*Z3").unwrap();
        assert_eq!(gb.reduce_poly(&f).unwrap(), parse_poly(&lex, "Z1*Z2").unwrap());
    }

    #[test]
    fn curve_ideal_membership() {
        let r = parse_ring("QQ[a,b,c,d]").unwrap();
        let gb = ideal_groebner(&r, &polys(&r, "a*d - b*c, c^3 - b*d^2, a*c^2 - b^2*d, b^3 - a^2*c")).unwrap();
        assert!(gb.is_confluent());
        assert!(gb.contains_poly(&parse_poly(&r, "a*d-b*c").unwrap()).unwrap());
        assert!(!gb.contains_poly(&parse_poly(&r, "a").unwrap()).unwrap());
    }

    #[test]
    fn koszul_syzygy() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let syz = syzygies(&r, &vecs(&r, "[[x],[y]]")).unwrap();
        assert_eq!(syz.generators.len(), 1);
        let g = &syz.generators[0];
        assert_eq!(
            (g.get(0).clone(), g.get(1).clone()),
            (parse_poly(&r, "y").unwrap(), parse_poly(&r, "-x").unwrap())
        );
    }

    #[test]
    fn nonzerodivisor_has_no_syzygies() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let syz = syzygies(&r, &vecs(&r, "[[x^2 + y]]")).unwrap();
        assert!(syz.generators.is_empty());
        let syz = syzygies(&r, &vecs(&r, "[[0, 0]]")).unwrap();
        assert_eq!(syz.generators.len(), 1);
    }

    #[test]
    fn syzygies_of_displayed_rows_annihilate() {
        let r = parse_ring("QQ[a,b,c,d]").unwrap();
        let rows = vecs(
            &r,
            "[[-b^2, 0, a, c], [-a*c, 0, b, d], [-b*d, a, -c, 0], [-c^2, b, -d, 0]]",
        );
        let syz = syzygies(&r, &rows).unwrap();
        assert!(!syz.generators.is_empty());
        for g in &syz.generators {
            assert!(g.combine(&rows).unwrap().is_zero());
        }
    }

    #[test]
    fn quotient_syzygies() {
        let r = parse_ring("QQ[Z0,Z1,Z2,Z3] mod=(Z0*Z3 - Z1*Z2)").unwrap();
        let rows = vecs(&r, "[[Z0],[Z1]]");
        let syz = syzygies(&r, &rows).unwrap();
        let gb0 = ideal_groebner(&r, &[]).unwrap();
        // (Z1, -Z0) and (Z3, -Z2) both appear over the quotient
        assert!(syz.generators.len() >= 2);
        for g in &syz.generators {
            let v = g.combine(&rows).unwrap();
            assert!(gb0.contains(&v).unwrap());
        }
    }

    #[test]
    fn lifting_recovers_cofactors() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let gens = vecs(&r, "[[x, y], [y, 0]]");
        let targets = vecs(&r, "[[x*y + y^2, y^2], [1, 0]]");
        let lifted = lift(&r, &gens, &targets).unwrap();
        let a = lifted[0].as_ref().unwrap();
        assert_eq!(a.combine(&gens).unwrap(), targets[0]);
        assert!(lifted[1].is_none());
    }

    #[test]
    fn kernels() {
        let t = parse_ring("QQ[t]").unwrap();
        let s = parse_ring("QQ[T1,T2]").unwrap();
        let k = kernel_of_map(&s, &t, &polys(&t, "t^2, t^3")).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].monic(), parse_poly(&s, "T1^3 - T2^2").unwrap().monic());

        let id = kernel_of_map(&s, &s, &polys(&s, "T1, T2")).unwrap();
        assert!(id.is_empty());

        let tu = parse_ring("QQ[t,u]").unwrap();
        let big = parse_ring("QQ[a,b,c,d]").unwrap();
        let k = kernel_of_map(&big, &tu, &polys(&tu, "u^4, t*u^3, t^3*u, t^4")).unwrap();
        let gb = ideal_groebner(&big, &k).unwrap();
        let curve = polys(&big, "a*d - b*c, c^3 - b*d^2, a*c^2 - b^2*d, b^3 - a^2*c");
        let gb2 = ideal_groebner(&big, &curve).unwrap();
        for f in &curve {
            assert!(gb.contains_poly(f).unwrap());
        }
        for f in &k {
            assert!(gb2.contains_poly(f).unwrap());
        }
    }

    #[test]
    fn deterministic() {
        let r = parse_ring("GF(32003)[x,y,z]").unwrap();
        let gens = polys(&r, "x^2*y - z, y^2*z - x, z^2*x - y");
        let a = ideal_groebner(&r, &gens).unwrap();
        let b = ideal_groebner(&r, &gens).unwrap();
        assert_eq!(a.polys(), b.polys());
        assert!(a.is_confluent());
    }
}
