//! Sparse polynomials and free-module elements.
//!
//! Arithmetic here is free-ring arithmetic: results are never reduced modulo
//! the ring's quotient ideal. Normal forms live in the Gröbner engine.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::monomial::Monomial;
use crate::ring::{convert_coeff, same_ring, RingRef, Terms};

/// Polynomial with terms sorted in decreasing order under the ring's order.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Terms,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &RingRef, c: Coeff) -> Polynomial {
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &RingRef, n: i64) -> Polynomial {
        Polynomial::constant(ring, ring.field().from_i64(n))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Coeff) -> Polynomial {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// The `index`-th ring variable.
    pub fn var(ring: &RingRef, index: usize) -> Polynomial {
        Polynomial::monomial(
            ring,
            Monomial::variable(ring.nvars(), index, 1),
            ring.field().one(),
        )
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Polynomial> {
        ring.variable_index(name)
            .map(|i| Polynomial::var(ring, i))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Builds a polynomial from arbitrary terms, combining like monomials and
    /// dropping zeros.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Polynomial {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ring.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Terms = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn from_sorted_terms(ring: RingRef, terms: Terms) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_monomials(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }


    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_coeff(&self) -> Coeff {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    /// Largest weighted degree of a term under the ring's weights.
    pub fn weighted_degree(&self) -> Option<u32> {
        let w = self.ring.weights();
        self.terms.iter().map(|(m, _)| m.weighted_degree(w)).max()
    }

    /// Homogeneous with respect to the ring's weights (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let field = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match self.ring.cmp_monomials(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { field.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !field.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { field.neg(&t.1) } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let field = self.ring.field();
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            let mut part = Vec::with_capacity(large.terms.len());
            for (n, d) in &large.terms {
                part.push((m.checked_mul(n)?, field.mul(c, d)));
            }
            // multiplication by a monomial preserves the order
            acc = acc.merge(
                &Polynomial {
                    ring: self.ring.clone(),
                    terms: part,
                },
                false,
            );
        }
        Ok(acc)
    }

    pub fn checked_pow(&self, exp: i64) -> Result<Polynomial> {
        if exp < 0 {
            return Err(Error::NegativeExponent(exp));
        }
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        self.checked_pow(exp as i64).expect("exponent overflow")
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), field.mul(c, d)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, d)| (n.mul(m), field.mul(c, d)))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => {
                let inv = self.ring.field().inv(c);
                self.scale(&inv)
            }
        }
    }

    /// Exact division in the free polynomial ring; `None` if `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let field = self.ring.field();
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = field.inv(lc);
        let mut rem = self.clone();
        let mut quotient_terms: Terms = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let q = lm.quotient_of(m);
            let qc = field.mul(c, &lc_inv);
            rem = rem.merge(&divisor.mul_term(&q, &qc), true);
            quotient_terms.push((q, qc));
        }
        Some(Polynomial {
            ring: self.ring.clone(),
            terms: quotient_terms,
        })
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    /// Coefficients move from the rationals to a prime field when needed.
    pub fn to_ring(&self, target: &RingRef) -> Result<Polynomial> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .ring
            .variables()
            .iter()
            .map(|v| target.variable_index(v).ok_or_else(|| Error::UnknownVariable(v.clone())))
            .collect::<Result<_>>()?;
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = smallvec::SmallVec::from_elem(0u16, n);
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] = x;
            }
            let c = convert_coeff(self.ring.field(), target.field(), c).ok_or_else(|| {
                Error::Invalid(format!("coefficient {} has no image in {}", self.ring.field().fmt_coeff(c), target.field()))
            })?;
            terms.push((Monomial(e), c));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Moves variable `i` to position `map[i]` of `target` (same field).
    /// Terms involving a variable mapped to `None` are dropped.
    pub(crate) fn remap(&self, target: &RingRef, map: &[Option<usize>]) -> Polynomial {
        let n = target.nvars();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let mut e = smallvec::SmallVec::from_elem(0u16, n);
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e[map[i]?] = x;
                }
            }
            Some((Monomial(e), c.clone()))
        });
        Polynomial::from_terms(target, terms)
    }

    /// Ring map: substitutes `images[i]` for the `i`-th variable.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RankMismatch {
                expected: self.ring.nvars(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        let mut acc = Polynomial::zero(&target);
        let mut power_cache: HashMap<(usize, u16), Polynomial> = HashMap::new();
        for (m, c) in &self.terms {
            let c = convert_coeff(self.ring.field(), target.field(), c)
                .ok_or_else(|| Error::Invalid("coefficient has no image".into()))?;
            let mut term = Polynomial::constant(&target, c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = power_cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e as u32))
                    .clone();
                term = term.checked_mul(&p)?;
            }
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// Value at a point of `GF(p)^n`; `None` if a coefficient has no image mod `p`.
    pub fn eval_mod(&self, p: u32, point: &[u32]) -> Option<u32> {
        let field = self.ring.field();
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut v = field.reduce_mod(c, p)? as u64;
            for (&e, &x) in m.exponents().iter().zip(point) {
                if e > 0 {
                    v = v * crate::field::pow_mod(x as u64, e as u64, p as u64) % p as u64;
                }
            }
            acc = (acc + v) % p as u64;
        }
        Some(acc as u32)
    }

    /// Sets every variable in `vars` to zero.
    pub fn kill_variables(&self, vars: &[usize]) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.exponents()[v] == 0))
                .cloned()
                .collect(),
        }
    }

    /// Indices of variables occurring in some term.
    pub fn variables_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        let f = self.ring.field();
        self.terms.iter().map(|(_, c)| f.bits(c)).max().unwrap_or(0)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow,
}

/// Operand for [`poly_arith`]: a polynomial, or an integer exponent for `Pow`.
pub enum Operand<'a> {
    Poly(&'a Polynomial),
    Int(i64),
}

pub fn poly_arith(op: ArithOp, a: &Polynomial, b: Operand<'_>) -> Result<Polynomial> {
    match (op, b) {
        (ArithOp::Add, Operand::Poly(b)) => a.checked_add(b),
        (ArithOp::Sub, Operand::Poly(b)) => a.checked_sub(b),
        (ArithOp::Mul, Operand::Poly(b)) => a.checked_mul(b),
        (ArithOp::Pow, Operand::Int(e)) => a.checked_pow(e),
        (ArithOp::Pow, Operand::Poly(_)) => Err(Error::Invalid("pow needs an integer exponent".into())),
        (_, Operand::Int(n)) => {
            let b = Polynomial::from_i64(a.ring(), n);
            poly_arith(op, a, Operand::Poly(&b))
        }
    }
}

fn fmt_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field: Field = self.ring.field();
        let vars = self.ring.variables();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let abs = if neg { field.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(vars, m);
            if mono.is_empty() {
                f.write_str(&field.fmt_coeff(&abs))?;
            } else if field.is_one(&abs) {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", field.fmt_coeff(&abs), mono)?;
            }
        }
        Ok(())
    }
}

/// Element of a free module `R^rank`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeElement {
    coords: Vec<Polynomial>,
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl FreeElement {
    /// Panics if coordinates come from different rings or the list is empty.
    pub fn new(coords: Vec<Polynomial>) -> FreeElement {
        assert!(!coords.is_empty(), "free elements need at least one coordinate");
        let r = coords[0].ring().clone();
        assert!(coords.iter().all(|c| same_ring(c.ring(), &r)), "ring mismatch");
        FreeElement { coords }
    }

    pub fn zero(ring: &RingRef, rank: usize) -> FreeElement {
        FreeElement {
            coords: vec![Polynomial::zero(ring); rank],
        }
    }

    pub fn unit(ring: &RingRef, rank: usize, i: usize) -> FreeElement {
        let mut v = FreeElement::zero(ring, rank);
        v.coords[i] = Polynomial::one(ring);
        v
    }

    pub fn ring(&self) -> &RingRef {
        self.coords[0].ring()
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Polynomial> {
        self.coords
    }

    pub fn get(&self, i: usize) -> &Polynomial {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|p| p.is_zero())
    }

    pub fn checked_add(&self, other: &FreeElement) -> Result<FreeElement> {
        self.check_rank(other)?;
        Ok(FreeElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.checked_add(b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn checked_sub(&self, other: &FreeElement) -> Result<FreeElement> {
        self.check_rank(other)?;
        Ok(FreeElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.checked_sub(b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn scale(&self, f: &Polynomial) -> FreeElement {
        FreeElement {
            coords: self.coords.iter().map(|c| c * f).collect(),
        }
    }

    /// `sum_i self[i] * vectors[i]`.
    pub fn combine(&self, vectors: &[FreeElement]) -> Result<FreeElement> {
        if vectors.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: vectors.len(),
            });
        }
        let target_rank = vectors.first().map(|v| v.rank()).unwrap_or(0);
        let ring = vectors.first().map(|v| v.ring().clone()).unwrap_or_else(|| self.ring().clone());
        let mut acc = FreeElement::zero(&ring, target_rank.max(1));
        if target_rank == 0 {
            return Ok(acc);
        }
        for (c, v) in self.coords.iter().zip(vectors) {
            if !c.is_zero() {
                acc = acc.checked_add(&v.scale(c))?;
            }
        }
        Ok(acc)
    }

    /// Inner product with another vector of the same rank.
    pub fn dot(&self, other: &FreeElement) -> Result<Polynomial> {
        self.check_rank(other)?;
        let mut acc = Polynomial::zero(self.ring());
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc = acc.checked_add(&a.checked_mul(b)?)?;
        }
        Ok(acc)
    }

    pub fn to_ring(&self, target: &RingRef) -> Result<FreeElement> {
        Ok(FreeElement {
            coords: self.coords.iter().map(|c| c.to_ring(target)).collect::<Result<_>>()?,
        })
    }

    fn check_rank(&self, other: &FreeElement) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        if !same_ring(self.ring(), other.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn ring() -> RingRef {
        Ring::polynomial(Field::Rationals, &["x", "y"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn zero_absorbs() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        assert!((&x * &Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn negative_exponent_rejected() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        assert_eq!(
            poly_arith(ArithOp::Pow, &x, Operand::Int(-1)),
            Err(Error::NegativeExponent(-1))
        );
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = &(&x + &y).pow(3) * &(&x - &y);
        assert_eq!(f.div_exact(&(&x - &y)), Some((&x + &y).pow(3)));
        assert_eq!(x.div_exact(&y), None);
    }

    #[test]
    fn ring_mismatch_detected() {
        let r = ring();
        let s = Ring::polynomial(Field::Rationals, &["u"]).unwrap();
        assert_eq!(
            Polynomial::var(&r, 0).checked_add(&Polynomial::var(&s, 0)),
            Err(Error::RingMismatch)
        );
    }
}
