//! `Ext^i(M, R)` vanishing from a free resolution.

use crate::error::{Error, Limit, Result};
use crate::groebner::{groebner, syzygies};
use crate::matrix::PolyMatrix;
use crate::poly::FreeElement;
use crate::ring::RingRef;

use super::FPModule;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtReport {
    /// `(i, Ext^i(M, R) == 0)`.
    pub vanishing: Vec<(usize, bool)>,
}

impl ExtReport {
    pub fn vanishes(&self, i: usize) -> Option<bool> {
        self.vanishing.iter().find(|(k, _)| *k == i).map(|(_, v)| *v)
    }
}

/// Drops generators lying in the span of the others.
fn prune(ring: &RingRef, rank: usize, gens: Vec<FreeElement>) -> Result<Vec<FreeElement>> {
    let mut kept = gens;
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<FreeElement> = kept
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, v)| v.clone())
            .collect();
        if groebner(ring, &others, rank)?.contains(&kept[i])? {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

/// Matrices `φ_1, φ_2, ...` with `φ_k : F_k -> F_(k-1)`, `F_0 = R^n`,
/// stopping after `len` maps or when a kernel vanishes.
pub fn free_resolution(module: &FPModule, len: usize) -> Result<Vec<PolyMatrix>> {
    let ring = module.ring();
    let mut maps: Vec<PolyMatrix> = Vec::new();
    let mut rank = module.ngens();
    let mut cols = prune(ring, rank.max(1), module.relation_vectors())?;
    for _ in 0..len {
        if rank == 0 || cols.is_empty() {
            break;
        }
        let m = PolyMatrix::from_columns(ring, rank, &cols)?;
        let next_rank = cols.len();
        let syz = syzygies(ring, &cols)?;
        maps.push(m);
        rank = next_rank;
        cols = prune(ring, rank, syz.generators)?;
    }
    Ok(maps)
}

/// Vanishing of `Ext^i(M, R)` for each `i` in `range` (all `i >= 1`).
pub fn ext_vanishes(module: &FPModule, range: std::ops::RangeInclusive<usize>) -> Result<ExtReport> {
    let ring = module.ring();
    if ring.has_quotient() {
        return Err(Error::Invalid("Ext is only computed over polynomial rings".into()));
    }
    let top = *range.end();
    let cap = ring.nvars() + 2;
    let maps = free_resolution(module, (top + 1).min(cap))?;
    if maps.len() == cap && top + 1 > cap {
        return Err(Error::Resource(Limit::ResolutionLength));
    }
    // rank of F_k
    let rank_of = |k: usize| -> usize {
        if k == 0 {
            module.ngens()
        } else {
            maps.get(k - 1).map(|m| m.ncols()).unwrap_or(0)
        }
    };
    let mut vanishing = Vec::new();
    for i in range {
        let ri = rank_of(i);
        if ri == 0 {
            vanishing.push((i, true));
            continue;
        }
        // kernel of φ_(i+1)^T: syzygies of the rows of φ_(i+1)
        let kernel: Vec<FreeElement> = match maps.get(i) {
            Some(next) => syzygies(ring, &next.row_vectors())?.generators,
            None => (0..ri).map(|k| FreeElement::unit(ring, ri, k)).collect(),
        };
        // image of φ_i^T: the rows of φ_i
        let image = if i == 0 {
            Vec::new()
        } else {
            maps[i - 1].row_vectors()
        };
        let gb = groebner(ring, &image, ri)?;
        let mut zero = true;
        for v in &kernel {
            if !gb.contains(v)? {
                zero = false;
                break;
            }
        }
        vanishing.push((i, zero));
    }
    Ok(ExtReport { vanishing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_matrix_rows, parse_ring};

    #[test]
    fn free_module_has_no_ext() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let rep = ext_vanishes(&FPModule::free(&r, 2), 1..=3).unwrap();
        assert!(rep.vanishing.iter().all(|(_, v)| *v));
    }

    #[test]
    fn principal_quotient() {
        let r = parse_ring("QQ[x]").unwrap();
        let m = FPModule::cokernel(PolyMatrix::from_rows(&r, parse_matrix_rows(&r, "[[x]]").unwrap(), 0).unwrap());
        let rep = ext_vanishes(&m, 1..=2).unwrap();
        assert_eq!(rep.vanishing, vec![(1, false), (2, true)]);
    }

    #[test]
    fn residue_field_of_the_plane() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let m = FPModule::cokernel(PolyMatrix::from_rows(&r, parse_matrix_rows(&r, "[[x, y]]").unwrap(), 0).unwrap());
        let rep = ext_vanishes(&m, 1..=2).unwrap();
        assert_eq!(rep.vanishing, vec![(1, true), (2, false)]);
    }
}
