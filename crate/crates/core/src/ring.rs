//! Polynomial rings over an exact field, optionally modulo a prime ideal.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

pub(crate) type Terms = Vec<(Monomial, Coeff)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    field: Field,
    variables: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
    /// Generators of the quotient ideal, stored as term lists sorted by `order`.
    quotient: Vec<Terms>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(
        field: Field,
        variables: Vec<String>,
        weights: Option<Vec<u32>>,
        order: MonomialOrder,
    ) -> Result<Ring> {
        let mut seen = HashSet::new();
        for v in &variables {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        let weights = weights.unwrap_or_else(|| vec![1; variables.len()]);
        if weights.len() != variables.len() || weights.iter().any(|&w| w == 0) {
            return Err(Error::BadWeights);
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > variables.len() {
                return Err(Error::Invalid(format!(
                    "elimination block {k} exceeds {} variables",
                    variables.len()
                )));
            }
        }
        Ok(Ring {
            field,
            variables,
            weights,
            order,
            quotient: Vec::new(),
        })
    }

    /// Polynomial ring with unit weights and grevlex order.
    pub fn polynomial(field: Field, variables: &[&str]) -> Result<RingRef> {
        Ring::new(
            field,
            variables.iter().map(|s| s.to_string()).collect(),
            None,
            MonomialOrder::Grevlex,
        )
        .map(Arc::new)
    }

    /// Attaches quotient generators, given as polynomials over a ring with the
    /// same variables and field.
    pub fn with_quotient(mut self, gens: &[Polynomial]) -> Result<Ring> {
        let mut quotient = Vec::new();
        for g in gens {
            if g.ring().variables != self.variables || g.ring().field != self.field {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                return Err(Error::Invalid("quotient generators must be nonzero".into()));
            }
            let mut terms = g.terms().to_vec();
            terms.sort_by(|a, b| self.cmp_monomials(&b.0, &a.0));
            quotient.push(terms);
        }
        self.quotient = quotient;
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn has_quotient(&self) -> bool {
        !self.quotient.is_empty()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(&self.weights, a, b)
    }

    pub(crate) fn quotient_terms(&self) -> &[Terms] {
        &self.quotient
    }

    /// Same variables and quotient, different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        let mut r = Ring::new(
            self.field,
            self.variables.clone(),
            Some(self.weights.clone()),
            order,
        )?;
        r.quotient = self
            .quotient
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t.sort_by(|a, b| r.cmp_monomials(&b.0, &a.0));
                t
            })
            .collect();
        Ok(r)
    }

    /// Same ring without the quotient ideal.
    pub fn ambient(&self) -> Ring {
        Ring {
            quotient: Vec::new(),
            ..self.clone()
        }
    }

    /// Ring with new variables placed before (`front`) and after (`back`)
    /// the existing ones, carrying the quotient over. Names that clash with
    /// existing variables are disambiguated with trailing underscores.
    pub fn extended(
        &self,
        front: &[String],
        back: &[String],
        order: MonomialOrder,
        field: Option<Field>,
    ) -> Result<Ring> {
        let mut taken: HashSet<String> = self.variables.iter().cloned().collect();
        let mut fresh = |name: &String| {
            let mut n = name.clone();
            while taken.contains(&n) {
                n.push('_');
            }
            taken.insert(n.clone());
            n
        };
        let front: Vec<String> = front.iter().map(&mut fresh).collect();
        let back: Vec<String> = back.iter().map(&mut fresh).collect();
        let mut vars = front.clone();
        vars.extend(self.variables.iter().cloned());
        vars.extend(back.iter().cloned());
        let mut weights = vec![1; front.len()];
        weights.extend(self.weights.iter().copied());
        weights.extend(std::iter::repeat(1).take(back.len()));
        let mut r = Ring::new(field.unwrap_or(self.field), vars, Some(weights), order)?;
        let nf = front.len();
        let nb = back.len();
        let target = field.unwrap_or(self.field);
        r.quotient = self
            .quotient
            .iter()
            .map(|t| {
                let mut out: Terms = t
                    .iter()
                    .filter_map(|(m, c)| {
                        let c = convert_coeff(self.field, target, c)?;
                        let mut e = SmallVec::from_elem(0u16, nf);
                        e.extend_from_slice(m.exponents());
                        e.extend(std::iter::repeat(0).take(nb));
                        Some((Monomial(e), c))
                    })
                    .collect();
                out.sort_by(|a, b| r.cmp_monomials(&b.0, &a.0));
                out
            })
            .collect();
        Ok(r)
    }

    /// Text form accepted by the ring parser.
    pub fn describe(&self) -> String {
        let mut s = format!("{}[{}]", self.field, self.variables.join(","));
        if self.weights.iter().any(|&w| w != 1) {
            let w: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
            s.push_str(&format!(" weights=({})", w.join(",")));
        }
        let unit_weights = self.weights.iter().all(|&w| w == 1);
        match self.order {
            MonomialOrder::Grevlex if !unit_weights => s.push_str(" order=grevlex"),
            MonomialOrder::Grevlex | MonomialOrder::WeightedGrevlex => {}
            MonomialOrder::Lex => s.push_str(" order=lex"),
            MonomialOrder::Grlex => s.push_str(" order=grlex"),
            MonomialOrder::Elimination(k) => s.push_str(&format!(" order=elim({k})")),
        }
        if !self.quotient.is_empty() {
            let free = Arc::new(self.ambient());
            let gens: Vec<String> = self
                .quotient
                .iter()
                .map(|t| Polynomial::from_sorted_terms(free.clone(), t.clone()).to_string())
                .collect();
            s.push_str(&format!(" mod=({})", gens.join(",")));
        }
        s
    }
}

pub(crate) fn convert_coeff(from: Field, to: Field, c: &Coeff) -> Option<Coeff> {
    if from == to {
        return Some(c.clone());
    }
    match (c, to) {
        (Coeff::Rat(q), Field::Prime(_)) => to.from_rational(q),
        _ => None,
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Rings are compatible when they are the same allocation or structurally equal.
pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
