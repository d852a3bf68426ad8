//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a monomial. Length equals the number of ring variables.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub(crate) SmallVec<[u16; 16]>);

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Monomial> {
        exps.iter()
            .map(|&e| u16::try_from(e).map_err(|_| Error::ExponentOverflow))
            .collect::<Result<SmallVec<_>>>()
            .map(Monomial)
    }

    pub fn variable(nvars: usize, index: usize, exp: u16) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.0[index] = exp;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }

    /// Product of monomials; panics on exponent overflow (degrees are
    /// expected to stay far below `u16::MAX`).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<SmallVec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    /// Weighted degree, ties broken lexicographically.
    Grlex,
    /// Standard degree, ties broken reverse-lexicographically.
    Grevlex,
    /// Weighted degree, ties broken reverse-lexicographically.
    WeightedGrevlex,
    /// Block order: the first `k` variables are compared first (weighted
    /// grevlex on the block), then the remaining ones.
    Elimination(usize),
}

/// How module terms `m * e_i` are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PositionRule {
    /// Compare positions first (`e_0 > e_1 > ...`), then monomials.
    #[default]
    PositionOverTerm,
    /// Compare monomials first, then positions.
    TermOverPosition,
}

fn revlex_tail(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // smaller trailing exponent wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn wdeg(a: &[u16], weights: &[u32]) -> u32 {
    a.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
}

fn weighted_revlex(a: &[u16], b: &[u16], weights: &[u32]) -> Ordering {
    wdeg(a, weights)
        .cmp(&wdeg(b, weights))
        .then_with(|| revlex_tail(a, b))
}

impl MonomialOrder {
    pub fn cmp_exponents(&self, weights: &[u32], a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grlex => wdeg(a, weights)
                .cmp(&wdeg(b, weights))
                .then_with(|| a.cmp(b)),
            MonomialOrder::Grevlex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                da.cmp(&db).then_with(|| revlex_tail(a, b))
            }
            MonomialOrder::WeightedGrevlex => weighted_revlex(a, b, weights),
            MonomialOrder::Elimination(k) => {
                let k = (*k).min(a.len());
                weighted_revlex(&a[..k], &b[..k], &weights[..k])
                    .then_with(|| weighted_revlex(&a[k..], &b[k..], &weights[k..]))
            }
        }
    }

    pub fn cmp(&self, weights: &[u32], a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exponents(weights, &a.0, &b.0)
    }
}

/// Checked comparison of two exponent vectors under `order`.
pub fn compare(order: MonomialOrder, weights: &[u32], m1: &[u32], m2: &[u32]) -> Result<Ordering> {
    if m1.len() != m2.len() || weights.len() != m1.len() {
        return Err(Error::RankMismatch {
            expected: m1.len(),
            found: m2.len().min(weights.len()),
        });
    }
    let a = Monomial::from_exponents(m1)?;
    let b = Monomial::from_exponents(m2)?;
    Ok(order.cmp(weights, &a, &b))
}
