//! Koszul differentials and the modules of differentials `Ω^i`.

use crate::error::{Error, Result};
use crate::matrix::{subsets, PolyMatrix};
use crate::poly::Polynomial;
use crate::ring::RingRef;

use super::FPModule;

/// Basis of `∧^k R^d` as increasing index lists, in lexicographic order.
pub fn exterior_basis(d: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(d, k)
}

/// The Koszul map `∧^(i+2) R^d -> ∧^(i+1) R^d` on the first `d` variables.
///
/// The column of `e_J`, `J = (j_0 < ... < j_k)`, is
/// `sum_l (-1)^l z_(j_l) e_(J - j_l)`. For `d = 2, i = 0` this is the single
/// column `(-z2, z1)`.
pub fn koszul_matrix(ring: &RingRef, d: usize, i: usize) -> Result<PolyMatrix> {
    if d < 2 || i + 2 > d {
        return Err(Error::Invalid(format!("need 0 <= i <= d - 2, got d = {d}, i = {i}")));
    }
    if ring.nvars() < d {
        return Err(Error::Invalid(format!("ring has fewer than {d} variables")));
    }
    let rows = exterior_basis(d, i + 1);
    let cols = exterior_basis(d, i + 2);
    let mut m = PolyMatrix::zero(ring, rows.len(), cols.len());
    for (c, set) in cols.iter().enumerate() {
        for (l, &v) in set.iter().enumerate() {
            let mut rest = set.clone();
            rest.remove(l);
            let r = rows.binary_search(&rest).expect("face of a basis subset");
            let z = Polynomial::var(ring, v);
            m.set(r, c, if l % 2 == 0 { z } else { -&z });
        }
    }
    Ok(m)
}

/// `Ω^i` presented as the cokernel of `∧^(i+2) -> ∧^(i+1)`; generators are
/// labeled `e1^e2` and so on.
pub fn omega(ring: &RingRef, d: usize, i: usize) -> Result<FPModule> {
    let m = koszul_matrix(ring, d, i)?;
    let labels = exterior_basis(d, i + 1)
        .iter()
        .map(|s| {
            s.iter()
                .map(|j| format!("e{}", j + 1))
                .collect::<Vec<_>>()
                .join("^")
        })
        .collect();
    Ok(FPModule::cokernel(m).with_labels(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_ring};

    #[test]
    fn rank_one_koszul_column() {
        let r = parse_ring("QQ[z1,z2]").unwrap();
        let m = koszul_matrix(&r, 2, 0).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (2, 1));
        assert_eq!(m.get(0, 0), &parse_poly(&r, "-z2").unwrap());
        assert_eq!(m.get(1, 0), &parse_poly(&r, "z1").unwrap());
    }

    #[test]
    fn four_by_six_structure() {
        let r = parse_ring("QQ[z1,z2,z3,z4]").unwrap();
        let m = koszul_matrix(&r, 4, 0).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (4, 6));
        for j in 0..6 {
            assert_eq!(m.column(j).iter().filter(|p| !p.is_zero()).count(), 2);
        }
    }

    #[test]
    fn consecutive_maps_compose_to_zero() {
        for d in 2..=6usize {
            let names: Vec<String> = (1..=d).map(|i| format!("z{i}")).collect();
            let r = parse_ring(&format!("QQ[{}]", names.join(","))).unwrap();
            for i in 0..d.saturating_sub(2) {
                let a = koszul_matrix(&r, d, i).unwrap();
                let b = koszul_matrix(&r, d, i + 1).unwrap();
                assert!(a.mul(&b).unwrap().is_zero(), "d = {d}, i = {i}");
            }
        }
    }

    #[test]
    fn range_is_checked() {
        let r = parse_ring("QQ[z1,z2,z3]").unwrap();
        assert!(koszul_matrix(&r, 3, 2).is_err());
        assert!(koszul_matrix(&r, 4, 0).is_err());
    }
}
