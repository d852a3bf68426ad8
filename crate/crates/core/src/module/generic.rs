//! Order ideals of generic elements `y = sum Z_i x_i`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::{Coeff, Field};
use crate::ideal::{Height, Ideal, Method};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;

use super::FPModule;

pub const DEFAULT_TRIALS: usize = 7;
/// Rational scalars are drawn from `[-BOX, BOX]`.
pub const RATIONAL_BOX: i64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenericMode {
    /// Work over `R[Z_1..Z_n]`.
    Symbolic,
    /// Substitute random scalars for the `Z_i`.
    Random { trials: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct GenericResult {
    /// The order ideal of largest height (in `R[Z]` for symbolic mode).
    pub ideal: Ideal,
    pub height: Height,
    /// Heights of all random trials (one entry in symbolic mode).
    pub heights: Vec<Height>,
    pub method: Method,
}

fn draw(field: Field, rng: &mut ChaCha8Rng) -> Coeff {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-RATIONAL_BOX..=RATIONAL_BOX)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

/// Order ideal of a generic combination of the generators.
pub fn generic_combination_ideal(module: &FPModule, mode: GenericMode) -> Result<GenericResult> {
    let ring = module.ring();
    let duals = module.dual_generators()?;
    let n = module.ngens();
    match mode {
        GenericMode::Symbolic => {
            let names: Vec<String> = (1..=n).map(|i| format!("Z{i}")).collect();
            let big = Arc::new(ring.extended(&[], &names, MonomialOrder::Grevlex, None)?);
            let up: Vec<Option<usize>> = (0..ring.nvars()).map(Some).collect();
            let zs: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&big, ring.nvars() + i)).collect();
            let mut vals = Vec::new();
            for f in &duals {
                let mut acc = Polynomial::zero(&big);
                for (c, z) in f.coords().iter().zip(&zs) {
                    acc = &acc + &(&c.remap(&big, &up) * z);
                }
                vals.push(acc);
            }
            let ideal = Ideal::new(&big, vals)?;
            let height = ideal.height()?;
            Ok(GenericResult {
                ideal,
                height,
                heights: vec![height],
                method: Method::Exact,
            })
        }
        GenericMode::Random { trials, seed } => {
            let field = ring.field();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best: Option<(Height, Ideal)> = None;
            let mut heights = Vec::new();
            for _ in 0..trials {
                let scalars: Vec<Polynomial> = (0..n)
                    .map(|_| Polynomial::constant(ring, draw(field, &mut rng)))
                    .collect();
                let mut vals = Vec::new();
                for f in &duals {
                    let mut acc = Polynomial::zero(ring);
                    for (c, z) in f.coords().iter().zip(&scalars) {
                        acc = &acc + &(c * z);
                    }
                    vals.push(acc);
                }
                let ideal = Ideal::new(ring, vals)?;
                let h = ideal.height()?;
                heights.push(h);
                if best.as_ref().is_none_or(|(b, _)| h > *b) {
                    best = Some((h, ideal));
                }
            }
            let (height, ideal) = best.unwrap_or_else(|| (Height::Finite(0), Ideal::zero(ring)));
            Ok(GenericResult {
                ideal,
                height,
                heights,
                method: Method::Probabilistic {
                    prime: field.characteristic(),
                    trials,
                },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ring;

    #[test]
    fn free_module_generic_ideal() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let m = FPModule::free(&r, 2);
        let g = generic_combination_ideal(&m, GenericMode::Symbolic).unwrap();
        assert_eq!(g.height, Height::Finite(2));
        let g = generic_combination_ideal(&m, GenericMode::Random { trials: 3, seed: 1 }).unwrap();
        // a nonzero scalar combination generates the unit ideal
        assert_eq!(g.height, Height::Unit);
    }
}
