//! The concrete rings, ideals and modules the scenarios work with.

use oideal_core::module::{koszul_matrix, omega};
use oideal_core::{
    parse_matrix_rows, parse_poly_list, parse_ring, FPModule, FreeElement, Ideal, PolyMatrix,
    Polynomial, Result, RingRef,
};

pub fn variables(prefix: &str, d: usize) -> String {
    (1..=d).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().join(",")
}

pub fn koszul_ring(field: &str, d: usize) -> Result<RingRef> {
    parse_ring(&format!("{field}[{}]", variables("z", d)))
}

/// Generators of the ideal of the monomial curve
/// `t -> (1, t^(a-1), t^(a+1), t^(2a))`, `a` even.
pub fn curve_ideal_text(alpha: u32) -> String {
    format!(
        "a*d - b*c, c^{ap} - b^{am}*d^2, a*c^{a} - b^{a}*d, b^{ap} - a^2*c^{am}",
        a = alpha,
        ap = alpha + 1,
        am = alpha - 1
    )
}

pub fn curve_ring() -> Result<RingRef> {
    parse_ring("QQ[a,b,c,d]")
}

pub fn curve_ideal(r: &RingRef, alpha: u32) -> Result<Ideal> {
    Ideal::parse(r, &curve_ideal_text(alpha))
}

/// The 4 x 4 matrix whose columns span `N = I^⊥`.
pub fn curve_matrix(r: &RingRef, alpha: u32) -> Result<PolyMatrix> {
    let text = format!(
        "[[-b^{a}, 0, a, c], [-a*c^{a1}, 0, b, d], [-b^{a1}*d, a, -c, 0], [-c^{a}, b, -d, 0]]",
        a = alpha,
        a1 = alpha - 1
    );
    PolyMatrix::from_rows(r, parse_matrix_rows(r, &text)?, 4)
}

/// `N` presented on the four columns of the displayed matrix.
pub fn curve_module(r: &RingRef, alpha: u32) -> Result<FPModule> {
    FPModule::from_submodule(r, &curve_matrix(r, alpha)?.columns())
}

/// `e1^e2 + e3^e4 + ... + e(2s-1)^e(2s)` on the generators of `Ω^1`.
pub fn symplectic_element(r: &RingRef, d: usize, s: usize) -> Vec<Polynomial> {
    oideal_core::module::exterior_basis(d, 2)
        .iter()
        .map(|p| {
            let hit = p[0] % 2 == 0 && p[1] == p[0] + 1 && p[1] < 2 * s;
            Polynomial::from_i64(r, hit as i64)
        })
        .collect()
}

pub fn omega_one(r: &RingRef, d: usize) -> Result<FPModule> {
    omega(r, d, 1)
}

/// `Ω^i` embedded in `∧^i R^d` as the image of the Koszul map.
pub fn omega_embedded(r: &RingRef, d: usize, i: usize) -> Result<Vec<FreeElement>> {
    Ok(koszul_matrix(r, d, i - 1)?.columns())
}

pub fn quadric_cone() -> Result<RingRef> {
    parse_ring("QQ[Z0,Z1,Z2,Z3] mod=(Z0*Z3 - Z1*Z2)")
}

/// `(Z0^2, Z0 Z1, Z1^2)` on the quadric cone and its perpendicular module.
pub fn quadric_cone_perp(r: &RingRef) -> Result<FPModule> {
    let m = Ideal::parse(r, "Z0^2, Z0*Z1, Z1^2")?;
    Ok(FPModule::from_ideal(&m)?.perpendicular(true)?.perp)
}

pub fn minor_ring(weighted: bool) -> Result<RingRef> {
    let w = if weighted { " weights=(2,1,1,1,1,1)" } else { "" };
    parse_ring(&format!("QQ[{}]{w}", variables("z", 6)))
}

/// The 2 x 2 minors `p12, p13, p14, p23, p24, p34` of
/// `[[z1, z2^2, z3^2, 0], [0, z4^2, z5^2, z6^2]]`.
pub fn minors_2x4(r: &RingRef) -> Result<Vec<Polynomial>> {
    let m = PolyMatrix::from_rows(
        r,
        parse_matrix_rows(r, "[[z1, z2^2, z3^2, 0], [0, z4^2, z5^2, z6^2]]")?,
        4,
    )?;
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let sub = m.submatrix(&[0, 1], &[i, j]);
            out.push(sub.determinant()?);
        }
    }
    Ok(out)
}

pub fn ideal_vectors(gens: &[Polynomial]) -> Vec<FreeElement> {
    gens.iter().map(|p| FreeElement::new(vec![p.clone()])).collect()
}

pub fn polys(r: &RingRef, text: &str) -> Result<Vec<Polynomial>> {
    parse_poly_list(r, text)
}
