//! Rees algebras of embedded modules, special fibers and analytic spread.
//!
//! For `M ⊆ R^m` generated by `u_1..u_n` the Rees algebra is the image of
//! `R[T_1..T_n] -> R[Y_1..Y_m]`, `T_i -> l_i = sum_j u_ij Y_j`. Since
//! `R[Y,T] / (T_i - l_i)` is isomorphic to `R[Y]`, the kernel is the graph
//! ideal `(T_i - l_i)` intersected with `R[T]`, found by eliminating `Y`.

use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::groebner::{eliminate, ideal_groebner, lift, relative_syzygies};
use crate::ideal::{Height, Ideal, DEFAULT_REDUCTION_CAP};
use crate::matrix::PolyMatrix;
use crate::module::matrix_rank;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{FreeElement, Polynomial};
use crate::ring::{same_ring, Ring, RingRef};

#[derive(Debug, Clone)]
pub struct ReesPresentation {
    pub ring: RingRef,
    pub rank: usize,
    pub generators: Vec<FreeElement>,
    /// In `R[T_1..T_n]`.
    pub rees_ideal: Ideal,
    /// In `k[T_1..T_n]`.
    pub fiber_ideal: Ideal,
    pub analytic_spread: usize,
}

/// Names `T1..Tn` (or `Y1..Ym`).
fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Rejects quotient rings with an evident zero divisor: a basis element
/// `c * g` of the quotient ideal with `c` a monomial and neither factor in it.
/// Polynomial rings always pass; a passing quotient is assumed prime.
pub fn check_domain(ring: &RingRef) -> Result<()> {
    if !ring.has_quotient() {
        return Ok(());
    }
    let zero = Ideal::zero(ring);
    let gb = zero.gb()?;
    let plain: RingRef = Arc::new(ring.ambient());
    let n = ring.nvars();
    let ident: Vec<Option<usize>> = (0..n).map(Some).collect();
    for f in gb.polys() {
        let f = f.remap(&plain, &ident);
        let Some((first, _)) = f.terms().first() else {
            continue;
        };
        let mut g: SmallVec<[u16; 8]> = first.exponents().iter().copied().collect();
        for (m, _) in f.terms() {
            for (a, &b) in g.iter_mut().zip(m.exponents()) {
                *a = (*a).min(b);
            }
        }
        let c = Monomial(g.into_iter().collect());
        if c.is_one() || (f.num_terms() == 1 && c.total_degree() == 1) {
            continue;
        }
        let cpoly = Polynomial::monomial(&plain, c, ring.field().one());
        let rest = f.div_exact(&cpoly).expect("monomial content divides");
        let in_q = |p: &Polynomial| zero.contains(&p.remap(ring, &ident));
        // c * rest = 0 in R with (for a monomial f) c = x * (c / x)
        let zero_divisor = if rest.is_constant() {
            true
        } else {
            !in_q(&rest)? && !in_q(&cpoly)?
        };
        if zero_divisor {
            return Err(Error::Invalid(format!("base ring is not a domain: {f} factors")));
        }
    }
    Ok(())
}

/// Rees presentation of the submodule of `R^m` generated by `gens`.
pub fn rees_of_module(ring: &RingRef, gens: &[FreeElement]) -> Result<ReesPresentation> {
    check_domain(ring)?;
    let Some(first) = gens.first() else {
        return Err(Error::Invalid("module needs at least one generator".into()));
    };
    let m = first.rank();
    for g in gens {
        if g.rank() != m || !same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let n = gens.len();
    let nv = ring.nvars();
    let ys = names("Y", m);
    let ts = names("T", n);
    // Y block first, eliminated
    let big: RingRef = Arc::new(ring.extended(&ys, &ts, MonomialOrder::Elimination(m), None)?);
    let into_big: Vec<Option<usize>> = (0..nv).map(|i| Some(m + i)).collect();
    let mut graph = Vec::with_capacity(n);
    for (i, u) in gens.iter().enumerate() {
        let mut l = Polynomial::var(&big, m + nv + i);
        for (j, c) in u.coords().iter().enumerate() {
            l = &l - &(&c.remap(&big, &into_big) * &Polynomial::var(&big, j));
        }
        graph.push(l);
    }
    let gb = ideal_groebner(&big, &graph)?;
    let rt: RingRef = Arc::new(ring.extended(&[], &ts, MonomialOrder::Grevlex, None)?);
    let down: Vec<Option<usize>> = (0..m).map(|_| None).chain((0..nv + n).map(Some)).collect();
    let rees_gens: Vec<Polynomial> = eliminate(&gb, m)?
        .iter()
        .map(|e| e.get(0).remap(&rt, &down))
        .filter(|p| !p.is_zero())
        .collect();
    let rees_ideal = Ideal::new(&rt, rees_gens)?;
    let fiber_ideal = fiber_of(ring, &rees_ideal, n)?;
    let analytic_spread = analytic_spread_of(&fiber_ideal)?;
    Ok(ReesPresentation {
        ring: ring.clone(),
        rank: m,
        generators: gens.to_vec(),
        rees_ideal,
        fiber_ideal,
        analytic_spread,
    })
}

/// `(rees + (ring variables)) ∩ k[T]`.
fn fiber_of(ring: &RingRef, rees: &Ideal, n: usize) -> Result<Ideal> {
    let nv = ring.nvars();
    let rt = rees.ring();
    let elim: RingRef = Arc::new(rt.with_order(MonomialOrder::Elimination(nv))?);
    let ident: Vec<Option<usize>> = (0..nv + n).map(Some).collect();
    let mut gens: Vec<Polynomial> = rees.generators().iter().map(|p| p.remap(&elim, &ident)).collect();
    gens.extend((0..nv).map(|i| Polynomial::var(&elim, i)));
    let gb = ideal_groebner(&elim, &gens)?;
    let kt: RingRef = Arc::new(Ring::new(ring.field(), names("T", n), None, MonomialOrder::Grevlex)?);
    let down: Vec<Option<usize>> = (0..nv).map(|_| None).chain((0..n).map(Some)).collect();
    let fiber: Vec<Polynomial> = eliminate(&gb, nv)?
        .iter()
        .map(|e| e.get(0).remap(&kt, &down))
        .filter(|p| !p.is_zero())
        .collect();
    Ideal::new(&kt, fiber)
}

fn analytic_spread_of(fiber: &Ideal) -> Result<usize> {
    fiber
        .dim_quotient()?
        .ok_or_else(|| Error::Invalid("fiber ideal is the unit ideal".into()))
}

/// `dim k[T] / fiber`.
pub fn analytic_spread(rp: &ReesPresentation) -> usize {
    rp.analytic_spread
}

impl ReesPresentation {
    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    /// `ℓ(M) <= μ(M)` for the given generating set.
    pub fn spread_within_generators(&self) -> bool {
        self.analytic_spread <= self.ngens()
    }

    /// `ℓ(M) <= dim R + rank M - 1`, for graded modules.
    pub fn spread_within_dimension_bound(&self) -> Result<bool> {
        let d = Ideal::ring_dimension(&self.ring)?;
        let r = module_rank(&self.ring, self.rank, &self.generators)?;
        Ok(self.analytic_spread + 1 <= d + r)
    }
}

/// Rank of the submodule spanned by `gens` in `R^m`.
pub fn module_rank(ring: &RingRef, m: usize, gens: &[FreeElement]) -> Result<usize> {
    if gens.is_empty() {
        return Ok(0);
    }
    matrix_rank(&PolyMatrix::from_columns(ring, m, gens)?)
}

/// Certificate that the fiber rules out a reduction: the images of `U` in
/// `M / mM` generate an ideal of the fiber ring whose quotient has positive
/// dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberWitness {
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub confirmed: bool,
    /// Degree of the verified equality, or the cap when not confirmed.
    pub n: usize,
    /// Present when `U` is certified not to be a reduction.
    pub witness: Option<FiberWitness>,
}

impl ReductionCertificate {
    /// `Some(true)` confirmed, `Some(false)` refuted, `None` undecided.
    pub fn integral(&self) -> Option<bool> {
        if self.confirmed {
            Some(true)
        } else if self.witness.is_some() {
            Some(false)
        } else {
            None
        }
    }
}

fn as_forms(ring: &RingRef, big: &RingRef, gens: &[FreeElement]) -> Vec<Polynomial> {
    let nv = ring.nvars();
    let up: Vec<Option<usize>> = (0..nv).map(Some).collect();
    gens.iter()
        .map(|u| {
            let mut l = Polynomial::zero(big);
            for (j, c) in u.coords().iter().enumerate() {
                l = &l + &(&c.remap(big, &up) * &Polynomial::var(big, nv + j));
            }
            l
        })
        .collect()
}

/// Products of `k` forms chosen with repetition.
fn products(forms: &[Polynomial], k: usize, one: &Polynomial) -> Vec<Polynomial> {
    let mut out = vec![(0usize, one.clone())];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, p) in &out {
            for (i, f) in forms.iter().enumerate().skip(*start) {
                next.push((i, p * f));
            }
        }
        out = next;
    }
    out.into_iter().map(|(_, p)| p).filter(|p| !p.is_zero()).collect()
}

/// Is `U` a reduction of `M` (both inside `R^m`)? Tries the fiber witness
/// first, then `U M^n = M^(n+1)` for `n = 0..=n_max`.
///
/// Degree `n + 1` pieces are compared as ideals of `R[Y]`: both sides are
/// generated in `Y`-degree `n + 1`, so ideal containment is containment of
/// the `R`-spans.
pub fn module_reduction_test(
    ring: &RingRef,
    u: &[FreeElement],
    m_gens: &[FreeElement],
    n_max: usize,
) -> Result<ReductionCertificate> {
    let Some(first) = m_gens.first() else {
        return Err(Error::Invalid("M needs at least one generator".into()));
    };
    let m = first.rank();
    let coeffs = lift(ring, m_gens, u)?;
    if coeffs.iter().any(|c| c.is_none()) {
        return Err(Error::Invalid("U is not contained in M".into()));
    }
    if let Some(dim) = fiber_obstruction(ring, m_gens, &coeffs)? {
        return Ok(ReductionCertificate {
            confirmed: false,
            n: 0,
            witness: Some(FiberWitness { dimension: dim }),
        });
    }
    let big: RingRef = Arc::new(ring.extended(&[], &names("Y", m), MonomialOrder::Grevlex, None)?);
    let mf = as_forms(ring, &big, m_gens);
    let uf = as_forms(ring, &big, u);
    let one = Polynomial::one(&big);
    for n in 0..=n_max {
        let mn = products(&mf, n, &one);
        let mut lhs = Vec::new();
        for a in &uf {
            for b in &mn {
                lhs.push(a * b);
            }
        }
        let rhs = products(&mf, n + 1, &one);
        let lhs = Ideal::new(&big, lhs.into_iter().filter(|p| !p.is_zero()).collect())?;
        let rhs = Ideal::new(&big, rhs)?;
        if lhs.contains_ideal(&rhs)? {
            return Ok(ReductionCertificate {
                confirmed: true,
                n,
                witness: None,
            });
        }
    }
    Ok(ReductionCertificate {
        confirmed: false,
        n: n_max,
        witness: None,
    })
}

/// Positive dimension of `k[T] / (fiber + images of U)`, when the quotient
/// ring lies over the origin. `None` when no obstruction is found.
fn fiber_obstruction(
    ring: &RingRef,
    m_gens: &[FreeElement],
    coeffs: &[Option<FreeElement>],
) -> Result<Option<usize>> {
    let zero = Ideal::zero(ring);
    if ring.has_quotient() {
        // the quotient ideal must vanish at the origin
        let gb = zero.gb()?;
        if gb.polys().iter().any(|p| !ring.field().is_zero(&p.constant_coeff())) {
            return Ok(None);
        }
    }
    let rp = rees_of_module(ring, m_gens)?;
    let kt = rp.fiber_ideal.ring().clone();
    let mut gens = rp.fiber_ideal.generators().to_vec();
    for a in coeffs.iter().flatten() {
        let mut l = Polynomial::zero(&kt);
        for (i, c) in a.coords().iter().enumerate() {
            l = &l + &Polynomial::var(&kt, i).scale(&c.constant_coeff());
        }
        if !l.is_zero() {
            gens.push(l);
        }
    }
    let dim = Ideal::new(&kt, gens)?.dim_quotient()?.unwrap_or(0);
    Ok((dim > 0).then_some(dim))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColonBoundOutcome {
    /// `U` is a reduction of `M`; nothing to check.
    Integral,
    /// Not integral and the height bound holds.
    Pass,
    /// Not integral and the height bound fails.
    Fail,
    /// Integrality undecided within the cap.
    Inconclusive,
}

impl ColonBoundOutcome {
    pub fn label(self) -> &'static str {
        match self {
            ColonBoundOutcome::Integral => "integral",
            ColonBoundOutcome::Pass => "PASS",
            ColonBoundOutcome::Fail => "FAIL",
            ColonBoundOutcome::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ColonBoundReport {
    pub t: usize,
    pub rank: usize,
    /// `max(0, t + 1 - rank)`.
    pub bound: usize,
    pub colon: Ideal,
    pub colon_height: Height,
    pub certificate: ReductionCertificate,
    pub outcome: ColonBoundOutcome,
}

/// `U :_R M = {r : r M ⊆ U}` for `U ⊆ M ⊆ R^m`.
pub fn module_colon(ring: &RingRef, u: &[FreeElement], m_gens: &[FreeElement]) -> Result<Ideal> {
    let mut acc = Ideal::unit(ring);
    for g in m_gens {
        let syz = relative_syzygies(ring, std::slice::from_ref(g), u)?;
        let part = Ideal::new(ring, syz.generators.iter().map(|v| v.get(0).clone()).collect())?;
        acc = acc.intersect(&part)?;
    }
    Ok(acc)
}

/// Over a domain: if `U` (with `t` generators) is not integral over `M`
/// then `ht(U : M) <= max(0, t + 1 - rank M)`.
pub fn colon_bound_check(
    ring: &RingRef,
    m_gens: &[FreeElement],
    u: &[FreeElement],
) -> Result<ColonBoundReport> {
    check_domain(ring)?;
    let Some(first) = m_gens.first() else {
        return Err(Error::Invalid("M needs at least one generator".into()));
    };
    let rank = module_rank(ring, first.rank(), m_gens)?;
    let t = u.len();
    let bound = (t + 1).saturating_sub(rank);
    let certificate = module_reduction_test(ring, u, m_gens, DEFAULT_REDUCTION_CAP)?;
    let colon = module_colon(ring, u, m_gens)?;
    let colon_height = colon.height()?;
    let outcome = match certificate.integral() {
        Some(true) => ColonBoundOutcome::Integral,
        None => ColonBoundOutcome::Inconclusive,
        Some(false) => match colon_height {
            Height::Finite(h) if h <= bound => ColonBoundOutcome::Pass,
            _ => ColonBoundOutcome::Fail,
        },
    };
    Ok(ColonBoundReport {
        t,
        rank,
        bound,
        colon,
        colon_height,
        certificate,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_matrix_rows, parse_poly, parse_poly_list, parse_ring};

    fn vecs(r: &RingRef, s: &str) -> Vec<FreeElement> {
        parse_matrix_rows(r, s).unwrap().into_iter().map(FreeElement::new).collect()
    }

    fn ideal_vecs(r: &RingRef, s: &str) -> Vec<FreeElement> {
        parse_poly_list(r, s)
            .unwrap()
            .into_iter()
            .map(|p| FreeElement::new(vec![p]))
            .collect()
    }

    #[test]
    fn regular_sequence() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let rp = rees_of_module(&r, &ideal_vecs(&r, "x, y")).unwrap();
        assert_eq!(rp.analytic_spread, 2);
        let rt = rp.rees_ideal.ring().clone();
        let expected = Ideal::new(&rt, vec![parse_poly(&rt, "x*T2 - y*T1").unwrap()]).unwrap();
        assert!(rp.rees_ideal.equals(&expected).unwrap());
        assert!(rp.fiber_ideal.is_zero().unwrap());
    }

    #[test]
    fn free_module() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let rp = rees_of_module(&r, &vecs(&r, "[[1, 0], [0, 1]]")).unwrap();
        assert!(rp.rees_ideal.is_zero().unwrap());
        assert_eq!(rp.analytic_spread, 2);
    }

    #[test]
    fn maximal_and_principal() {
        let r = parse_ring("QQ[z1,z2,z3]").unwrap();
        assert_eq!(rees_of_module(&r, &ideal_vecs(&r, "z1, z2, z3")).unwrap().analytic_spread, 3);
        assert_eq!(rees_of_module(&r, &ideal_vecs(&r, "z1*z2 + z3^2")).unwrap().analytic_spread, 1);
        // (x^2, xy, y^2) has spread 2 with 3 generators
        let rp = rees_of_module(&r, &ideal_vecs(&r, "z1^2, z1*z2, z2^2")).unwrap();
        assert_eq!(rp.analytic_spread, 2);
        assert!(rp.spread_within_dimension_bound().unwrap());
    }

    #[test]
    fn domain_check() {
        let q = parse_ring("QQ[x,y] mod=(x*y)").unwrap();
        assert!(check_domain(&q).is_err());
        let q = parse_ring("QQ[x,y] mod=(x^2)").unwrap();
        assert!(check_domain(&q).is_err());
        let q = parse_ring("QQ[a,b,c,d] mod=(a*d - b*c)").unwrap();
        assert!(check_domain(&q).is_ok());
    }

    #[test]
    fn reductions() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let m = ideal_vecs(&r, "x^2, x*y, y^2");
        let c = module_reduction_test(&r, &m, &m, 6).unwrap();
        assert!(c.confirmed && c.n == 0);
        let u = ideal_vecs(&r, "x^2, y^2");
        let c = module_reduction_test(&r, &u, &m, 6).unwrap();
        assert!(c.confirmed && c.n == 1);
        let u = ideal_vecs(&r, "x^2, x*y");
        let c = module_reduction_test(&r, &u, &m, 6).unwrap();
        assert_eq!(c.witness, Some(FiberWitness { dimension: 1 }));
        // U must sit inside M
        assert!(module_reduction_test(&r, &ideal_vecs(&r, "x"), &m, 2).is_err());
    }

    #[test]
    fn maximal_ideal_has_no_proper_reduction() {
        let r = parse_ring("QQ[x,y,z]").unwrap();
        let m = ideal_vecs(&r, "x, y, z");
        let u = ideal_vecs(&r, "x, y, x*z");
        let c = module_reduction_test(&r, &u, &m, 4).unwrap();
        assert!(!c.confirmed);
        assert!(c.witness.is_some());
    }

    #[test]
    fn colon_bound_on_small_instances() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let m = ideal_vecs(&r, "x, y");
        let rep = colon_bound_check(&r, &m, &m).unwrap();
        assert_eq!(rep.outcome, ColonBoundOutcome::Integral);
        let u = ideal_vecs(&r, "x");
        let rep = colon_bound_check(&r, &m, &u).unwrap();
        // ht (x : (x,y)) = ht (x) = 1 <= 1 + 1 - 1
        assert_eq!((rep.t, rep.rank, rep.bound), (1, 1, 1));
        assert_eq!(rep.colon_height, Height::Finite(1));
        assert_eq!(rep.outcome, ColonBoundOutcome::Pass);
    }

    #[test]
    fn module_colon_in_rank_two() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let m = vecs(&r, "[[1, 0], [0, 1]]");
        let u = vecs(&r, "[[x, 0], [0, y]]");
        let c = module_colon(&r, &u, &m).unwrap();
        assert!(c.equals(&Ideal::parse(&r, "x*y").unwrap()).unwrap());
    }
}
