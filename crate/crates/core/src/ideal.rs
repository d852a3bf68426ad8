//! Ideals with cached Gröbner bases: arithmetic, colons, radical membership,
//! dimension and height, and reduction testing.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{eliminate, ideal_groebner, relative_syzygies, GroebnerBasis};
use crate::monomial::{Monomial, MonomialOrder};
use crate::parse::parse_poly_list;
use crate::poly::{FreeElement, Polynomial};
use crate::ring::{same_ring, RingRef};

/// Height of an ideal; the unit ideal has no finite height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Height {
    Finite(usize),
    Unit,
}

impl Height {
    pub fn finite(self) -> Option<usize> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Unit => None,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Unit => f.write_str("unit"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Probabilistic { prime: u32, trials: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightReport {
    /// Krull dimension of `R / I`; `None` for the unit ideal.
    pub dim_quotient: Option<usize>,
    pub height: Height,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionOutcome {
    /// `J * I^n = I^(n+1)` holds for this `n`.
    Reduction(usize),
    NotConfirmed,
}

impl ReductionOutcome {
    pub fn confirmed(self) -> bool {
        matches!(self, ReductionOutcome::Reduction(_))
    }
}

pub const DEFAULT_REDUCTION_CAP: usize = 6;

#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.gens)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// Largest set of variables containing the support of no monomial in `leads`.
pub fn max_independent_set(nvars: usize, leads: &[Monomial]) -> Vec<usize> {
    let supports: Vec<Vec<usize>> = leads.iter().map(|m| m.support().collect()).collect();
    let mut best: Vec<usize> = Vec::new();
    let mut chosen = vec![false; nvars];
    let mut current = Vec::new();
    fn dfs(
        v: usize,
        nvars: usize,
        supports: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if current.len() + (nvars - v) <= best.len() {
            return;
        }
        if v == nvars {
            *best = current.clone();
            return;
        }
        chosen[v] = true;
        let ok = supports
            .iter()
            .all(|s| !s.contains(&v) || !s.iter().all(|&x| chosen[x]));
        if ok {
            current.push(v);
            dfs(v + 1, nvars, supports, chosen, current, best);
            current.pop();
        }
        chosen[v] = false;
        dfs(v + 1, nvars, supports, chosen, current, best);
    }
    dfs(0, nvars, &supports, &mut chosen, &mut current, &mut best);
    best
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        })
    }

    pub fn parse(ring: &RingRef, text: &str) -> Result<Ideal> {
        Ideal::new(ring, parse_poly_list(ring, text)?)
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &RingRef) -> Ideal {
        Ideal::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect()).unwrap()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn gb(&self) -> Result<&GroebnerBasis> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = ideal_groebner(&self.ring, &self.gens)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().unwrap())
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        self.gb()?.contains_poly(f)
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.gb()?.reduce_poly(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual membership.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_everything())
    }

    /// Whether the ideal is zero in `R / quotient`.
    pub fn is_zero(&self) -> Result<bool> {
        let zero = Ideal::zero(&self.ring);
        zero.contains_ideal(self)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut seen = std::collections::HashSet::new();
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let p = (a * b).monic();
                if seen.insert(p.clone()) {
                    g.push(p);
                }
            }
        }
        Ideal::new(&self.ring, g)
    }

    pub fn power(&self, n: usize) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I ∩ J` from `t I + (1 - t) J` with `t` eliminated.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let big = Arc::new(self.ring.extended(
            &["t".to_string()],
            &[],
            MonomialOrder::Elimination(1),
            None,
        )?);
        let n = self.ring.nvars();
        let up: Vec<Option<usize>> = (0..n).map(|i| Some(i + 1)).collect();
        let t = Polynomial::var(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens = Vec::new();
        for a in &self.gens {
            gens.push(&t * &a.remap(&big, &up));
        }
        for b in &other.gens {
            gens.push(&one_minus_t * &b.remap(&big, &up));
        }
        let gb = ideal_groebner(&big, &gens)?;
        let down: Vec<Option<usize>> = (0..=n).map(|i| i.checked_sub(1)).collect();
        let kept = eliminate(&gb, 1)?
            .into_iter()
            .map(|e| e.get(0).remap(&self.ring, &down))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    /// `I : (f)` as the first coordinates of the syzygies of `f` modulo `I`.
    pub fn quotient_poly(&self, f: &Polynomial) -> Result<Ideal> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let tracked = [FreeElement::new(vec![f.clone()])];
        let untracked: Vec<FreeElement> =
            self.gens.iter().map(|g| FreeElement::new(vec![g.clone()])).collect();
        let syz = relative_syzygies(&self.ring, &tracked, &untracked)?;
        Ideal::new(&self.ring, syz.generators.iter().map(|g| g.get(0).clone()).collect())
    }

    /// `I : J`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let q = self.quotient_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `I : J^∞`.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(other)?;
            if cur.contains_ideal(&next)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `f ∈ √I` iff `1 ∈ I + (1 - w f)` in `R[w]`.
    pub fn radical_member(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let n = self.ring.nvars();
        let big = Arc::new(self.ring.extended(&[], &["w".to_string()], MonomialOrder::Grevlex, None)?);
        let up: Vec<Option<usize>> = (0..n).map(Some).collect();
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.remap(&big, &up)).collect();
        let w = Polynomial::var(&big, n);
        gens.push(&Polynomial::one(&big) - &(&w * &f.remap(&big, &up)));
        Ok(ideal_groebner(&big, &gens)?.is_everything())
    }

    /// Whether every generator of `other` lies in `√self`.
    pub fn radical_contains(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        for g in &other.gens {
            if !self.radical_member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `√self = √other`, by radical membership both ways.
    pub fn radical_equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.radical_contains(other)? && other.radical_contains(self)?)
    }

    /// Krull dimension of `R / I` (of the polynomial ring modulo `I` plus the
    /// quotient ideal); `None` for the unit ideal.
    pub fn dim_quotient(&self) -> Result<Option<usize>> {
        let gb = self.gb()?;
        if gb.is_everything() {
            return Ok(None);
        }
        let leads: Vec<Monomial> = gb.leading_terms().into_iter().map(|(_, m)| m).collect();
        Ok(Some(max_independent_set(self.ring.nvars(), &leads).len()))
    }

    /// Dimension of the ambient ring (the quotient ring when there is one).
    pub fn ring_dimension(ring: &RingRef) -> Result<usize> {
        Ok(Ideal::zero(ring).dim_quotient()?.unwrap_or(0))
    }

    pub fn dimension(&self) -> Result<HeightReport> {
        let dq = self.dim_quotient()?;
        let height = match dq {
            None => Height::Unit,
            Some(d) => Height::Finite(Ideal::ring_dimension(&self.ring)? - d),
        };
        Ok(HeightReport {
            dim_quotient: dq,
            height,
            method: Method::Exact,
        })
    }

    pub fn height(&self) -> Result<Height> {
        Ok(self.dimension()?.height)
    }

    /// Whether `self` (J) is a reduction of `i`: least `n <= n_max` with
    /// `J I^n = I^(n+1)`.
    pub fn is_reduction_of(&self, i: &Ideal, n_max: usize) -> Result<ReductionOutcome> {
        self.check(i)?;
        if !i.contains_ideal(self)? {
            return Err(Error::Invalid("J is not contained in I".into()));
        }
        let mut ipow = Ideal::unit(&self.ring);
        for n in 0..=n_max {
            let lhs = self.product(&ipow)?;
            let next = ipow.product(i)?;
            if lhs.contains_ideal(&next)? {
                return Ok(ReductionOutcome::Reduction(n));
            }
            ipow = next;
        }
        Ok(ReductionOutcome::NotConfirmed)
    }

    /// Moves the generators to `target` by variable names.
    pub fn to_ring(&self, target: &RingRef) -> Result<Ideal> {
        Ideal::new(
            target,
            self.gens.iter().map(|g| g.to_ring(target)).collect::<Result<_>>()?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_ring};

    fn id(r: &RingRef, s: &str) -> Ideal {
        Ideal::parse(r, s).unwrap()
    }

    #[test]
    fn colon_examples() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let q = id(&r, "x").quotient(&id(&r, "x, y")).unwrap();
        assert!(q.equals(&id(&r, "x")).unwrap());
        let q = id(&r, "x^2, x*y").quotient(&id(&r, "y")).unwrap();
        assert!(q.equals(&id(&r, "x")).unwrap());
        assert!(id(&r, "x, y").power(0).unwrap().is_unit().unwrap());
    }

    #[test]
    fn intersection_of_coordinate_axes() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let i = id(&r, "x").intersect(&id(&r, "y")).unwrap();
        assert!(i.equals(&id(&r, "x*y")).unwrap());
    }

    #[test]
    fn saturation_removes_embedded_component() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let i = id(&r, "x^2, x*y").saturate(&id(&r, "x, y")).unwrap();
        assert!(i.equals(&id(&r, "x")).unwrap());
    }

    #[test]
    fn radical_membership() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let x = parse_poly(&r, "x").unwrap();
        assert!(id(&r, "x^2").radical_member(&x).unwrap());
        assert!(!id(&r, "y").radical_member(&x).unwrap());
    }

    #[test]
    fn heights() {
        let r = parse_ring("QQ[a,b,c,d]").unwrap();
        assert_eq!(id(&r, "a,b,c,d").height().unwrap(), Height::Finite(4));
        assert_eq!(id(&r, "a*d - b*c").height().unwrap(), Height::Finite(1));
        assert_eq!(id(&r, "a, 1 + a").height().unwrap(), Height::Unit);
        let curve = id(&r, "a*d - b*c, c^3 - b*d^2, a*c^2 - b^2*d, b^3 - a^2*c");
        assert_eq!(curve.height().unwrap(), Height::Finite(2));
        let q = parse_ring("QQ[Z0,Z1,Z2,Z3] mod=(Z0*Z3 - Z1*Z2)").unwrap();
        assert_eq!(id(&q, "Z0,Z1,Z2,Z3").height().unwrap(), Height::Finite(3));
        assert_eq!(Ideal::ring_dimension(&q).unwrap(), 3);
    }

    #[test]
    fn reductions() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let i = id(&r, "x, y").power(2).unwrap();
        assert_eq!(
            id(&r, "x^2, y^2").is_reduction_of(&i, 6).unwrap(),
            ReductionOutcome::Reduction(1)
        );
        assert_eq!(i.is_reduction_of(&i, 6).unwrap(), ReductionOutcome::Reduction(0));
        assert_eq!(
            id(&r, "x").is_reduction_of(&id(&r, "x, y"), 6).unwrap(),
            ReductionOutcome::NotConfirmed
        );
        assert!(id(&r, "x").is_reduction_of(&id(&r, "y"), 6).is_err());
    }

    #[test]
    fn independent_sets() {
        let r = parse_ring("QQ[x,y,z]").unwrap();
        let m = |s: &str| parse_poly(&r, s).unwrap().leading_monomial().unwrap().clone();
        assert_eq!(max_independent_set(3, &[m("x*y"), m("z")]).len(), 1);
        assert_eq!(max_independent_set(3, &[]).len(), 3);
    }
}
