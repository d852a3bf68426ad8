//! Module elements as a single sorted list of `coeff * mono * e_pos` terms.

use std::cmp::Ordering;

use crate::field::{Coeff, Field};
use crate::monomial::{Monomial, MonomialOrder, PositionRule};
use crate::poly::{FreeElement, Polynomial};
use crate::ring::RingRef;

pub(crate) type Term = (u32, Monomial, Coeff);

/// Term order on `R^rank`.
#[derive(Debug, Clone)]
pub(crate) struct Ctx {
    pub field: Field,
    pub order: MonomialOrder,
    pub weights: Vec<u32>,
    pub rule: PositionRule,
}

impl Ctx {
    pub fn new(ring: &RingRef, rule: PositionRule) -> Ctx {
        Ctx {
            field: ring.field(),
            order: ring.order(),
            weights: ring.weights().to_vec(),
            rule,
        }
    }

    #[inline]
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(&self.weights, a, b)
    }

    /// `e_0 > e_1 > ...` when positions decide.
    #[inline]
    pub fn cmp(&self, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
        match self.rule {
            PositionRule::PositionOverTerm => b.0.cmp(&a.0).then_with(|| self.cmp_mono(a.1, b.1)),
            PositionRule::TermOverPosition => self.cmp_mono(a.1, b.1).then_with(|| b.0.cmp(&a.0)),
        }
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.weighted_degree(&self.weights)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn from_free(ctx: &Ctx, v: &FreeElement) -> Vector {
        Vector::from_coords(ctx, v.coords(), 0)
    }

    /// Places `coords` at positions `offset..offset + coords.len()`.
    pub fn from_coords(ctx: &Ctx, coords: &[Polynomial], offset: u32) -> Vector {
        let mut terms: Vec<Term> = Vec::new();
        for (i, p) in coords.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((offset + i as u32, m.clone(), c.clone()));
            }
        }
        terms.sort_by(|a, b| ctx.cmp((b.0, &b.1), (a.0, &a.1)));
        Vector { terms }
    }

    /// Coordinates `range` as polynomials over `ring` (which must carry `ctx`'s order).
    pub fn to_coords(&self, ring: &RingRef, start: u32, len: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); len];
        for (p, m, c) in &self.terms {
            if *p >= start && ((*p - start) as usize) < len {
                buckets[(*p - start) as usize].push((m.clone(), c.clone()));
            }
        }
        buckets
            .into_iter()
            .map(|t| Polynomial::from_sorted_terms(ring.clone(), t))
            .collect()
    }

    pub fn to_free(&self, ring: &RingRef, rank: usize) -> FreeElement {
        FreeElement::new(self.to_coords(ring, 0, rank))
    }

    pub fn monic(mut self, field: Field) -> Vector {
        if let Some((_, _, c)) = self.terms.first() {
            if !field.is_one(c) {
                let inv = field.inv(c);
                for t in &mut self.terms {
                    t.2 = field.mul(&t.2, &inv);
                }
            }
        }
        self
    }

    /// `self - c * m * other`.
    pub fn sub_scaled(&self, ctx: &Ctx, c: &Coeff, m: &Monomial, other: &Vector) -> Vector {
        let field = ctx.field;
        let negc = field.neg(c);
        let shifted = |t: &Term| -> Term { (t.0, t.1.mul(m), field.mul(&negc, &t.2)) };
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let mut next_b = other.terms.first().map(shifted);
        while let Some(b) = next_b.take() {
            if i == a.len() {
                out.push(b);
                out.extend(other.terms[j + 1..].iter().map(shifted));
                return Vector { terms: out };
            }
            match ctx.cmp((a[i].0, &a[i].1), (b.0, &b.1)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                    next_b = Some(b);
                }
                Ordering::Less => {
                    out.push(b);
                    j += 1;
                    next_b = other.terms.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let s = field.add(&a[i].2, &b.2);
                    if !field.is_zero(&s) {
                        out.push((b.0, b.1, s));
                    }
                    i += 1;
                    j += 1;
                    next_b = other.terms.get(j).map(shifted);
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        Vector { terms: out }
    }

    pub fn mul_term(&self, field: Field, m: &Monomial, c: &Coeff) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|(p, n, d)| (*p, n.mul(m), field.mul(c, d)))
                .collect(),
        }
    }

    pub fn max_bits(&self, field: Field) -> u64 {
        self.terms.iter().map(|t| field.bits(&t.2)).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.1.total_degree()).max().unwrap_or(0)
    }

}
