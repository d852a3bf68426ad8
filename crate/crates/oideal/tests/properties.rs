mod common;

#[test]
fn groebner_bases_are_confluent() {
    common::gb_confluence(128).unwrap();
}

#[test]
fn membership_matches_linear_algebra() {
    common::membership_oracle(128).unwrap();
}

#[test]
fn monomial_dimension_matches_brute_force() {
    common::monomial_dimension(128).unwrap();
}

#[test]
fn koszul_differential_squares_to_zero() {
    common::koszul_square_zero().unwrap();
}

#[test]
fn fitting_ideals_increase() {
    common::fitting_chain(64).unwrap();
}

#[test]
fn analytic_spread_bounds() {
    common::spread_bounds(64).unwrap();
}

#[test]
fn rees_ideal_of_an_ideal_is_a_kernel() {
    common::rees_matches_kernel(64).unwrap();
}

#[test]
fn runs_are_reproducible() {
    let a = oideal::corpus::bound_instances(7).unwrap();
    let b = oideal::corpus::bound_instances(7).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.m, y.m);
        assert_eq!(x.u, y.u);
    }
}
