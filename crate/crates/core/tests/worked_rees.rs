use oideal_core::module::koszul_matrix;
use oideal_core::rees::{module_colon, colon_bound_check, ColonBoundOutcome};
use oideal_core::{
    module_reduction_test, parse_poly_list, parse_ring, rees_of_module, FreeElement, Height, Ideal,
    RingRef,
};

fn ideal_vecs(r: &RingRef, s: &str) -> Vec<FreeElement> {
    parse_poly_list(r, s)
        .unwrap()
        .into_iter()
        .map(|p| FreeElement::new(vec![p]))
        .collect()
}

fn curve_ideal(alpha: u32) -> String {
    format!(
        "a*d - b*c, c^{ap} - b^{am}*d^2, a*c^{a} - b^{a}*d, b^{ap} - a^2*c^{am}",
        a = alpha,
        ap = alpha + 1,
        am = alpha - 1
    )
}

#[test]
fn curve_ideal_spread() {
    let r = parse_ring("QQ[a,b,c,d]").unwrap();
    let rp = rees_of_module(&r, &ideal_vecs(&r, &curve_ideal(2))).unwrap();
    assert_eq!(rp.analytic_spread, 3);
    assert!(rp.spread_within_dimension_bound().unwrap());
    let rp = rees_of_module(&r, &ideal_vecs(&r, &curve_ideal(4))).unwrap();
    assert!(rp.analytic_spread <= 3);
}

#[test]
fn curve_ideal_three_generators_are_not_a_reduction() {
    let r = parse_ring("QQ[a,b,c,d]").unwrap();
    let m = ideal_vecs(&r, &curve_ideal(2));
    let rep = colon_bound_check(&r, &m, &m[..3]).unwrap();
    assert!(rep.certificate.witness.is_some());
    assert_eq!((rep.t, rep.rank, rep.bound), (3, 1, 3));
    assert_eq!(rep.outcome, ColonBoundOutcome::Pass);
}

#[test]
fn second_syzygy_of_the_maximal_ideal_in_five_variables() {
    let r = parse_ring("QQ[z1,z2,z3,z4,z5]").unwrap();
    let gens = koszul_matrix(&r, 5, 1).unwrap().columns();
    let rp = rees_of_module(&r, &gens).unwrap();
    assert_eq!(rp.ngens(), 10);
    assert_eq!(rp.analytic_spread, 10);
    assert!(rp.spread_within_dimension_bound().unwrap());
}

#[test]
fn five_generated_reduction_of_the_minor_ideal() {
    let r = parse_ring("QQ[z1,z2,z3,z4,z5,z6]").unwrap();
    let i = ideal_vecs(&r, "z1*z4^2, z1*z5^2, z1*z6^2, z2^2*z5^2 - z3^2*z4^2, z2^2*z6^2, z3^2*z6^2");
    assert_eq!(rees_of_module(&r, &i).unwrap().analytic_spread, 5);
    let j = ideal_vecs(&r, "z1*z4^2, z1*z5^2, z2^2*z6^2, z3^2*z6^2, z1*z6^2 + z2^2*z5^2 - z3^2*z4^2");
    let c = module_reduction_test(&r, &j, &i, 6).unwrap();
    assert!(c.confirmed && c.n <= 6);
    assert_eq!(module_colon(&r, &j, &i).unwrap().height().unwrap(), Height::Finite(6));
    // the ideal-case test agrees
    let ji = Ideal::new(&r, j.iter().map(|v| v.get(0).clone()).collect()).unwrap();
    let ii = Ideal::new(&r, i.iter().map(|v| v.get(0).clone()).collect()).unwrap();
    assert!(ji.is_reduction_of(&ii, 6).unwrap().confirmed());
}
