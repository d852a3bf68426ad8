use oideal_core::module::omega;
use oideal_core::{
    parse_matrix_rows, parse_poly_list, parse_ring, FPModule, Height, Ideal,
    PolyMatrix, Polynomial, Route,
};

fn curve_matrix_rows(alpha: u32) -> String {
    format!(
        "[[-b^{a}, 0, a, c], [-a*c^{a1}, 0, b, d], [-b^{a1}*d, a, -c, 0], [-c^{a}, b, -d, 0]]",
        a = alpha,
        a1 = alpha - 1
    )
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
fn curve_module_third_generator() {
    for alpha in [2u32, 4] {
        let r = parse_ring("QQ[a,b,c,d]").unwrap();
        let a = PolyMatrix::from_rows(&r, parse_matrix_rows(&r, &curve_matrix_rows(alpha)).unwrap(), 0).unwrap();
        let mut g = parse_poly_list(&r, &curve_ideal(alpha)).unwrap();
        // the displayed maps compose to zero with the first generator negated
        g[0] = -&g[0];
        let gcol = PolyMatrix::from_rows(&r, g.iter().map(|p| vec![p.clone()]).collect(), 1).unwrap();
        assert!(a.mul(&gcol).unwrap().is_zero());
        let n = FPModule::from_submodule(&r, &a.columns()).unwrap();
        assert_eq!(n.rank().unwrap(), 3);
        let m = Ideal::maximal(&r);
        for route in [Route::RowIdeal, Route::DualKernel] {
            let o = n.generator_order_ideal(2, route).unwrap().ideal;
            assert!(o.equals(&m).unwrap(), "alpha {alpha} {route:?}: {o}");
            assert_eq!(o.height().unwrap(), Height::Finite(4));
        }
    }
}

#[test]
fn omega_one_symplectic_element() {
    for d in [4usize, 6] {
        let names: Vec<String> = (1..=d).map(|i| format!("z{i}")).collect();
        let r = parse_ring(&format!("QQ[{}]", names.join(","))).unwrap();
        let n = omega(&r, d, 1).unwrap();
        assert_eq!(n.rank().unwrap(), d - 1);
        let basis = oideal_core::module::exterior_basis(d, 2);
        let x: Vec<Polynomial> = basis
            .iter()
            .map(|s| {
                let pair = s[0] % 2 == 0 && s[1] == s[0] + 1;
                Polynomial::from_i64(&r, pair as i64)
            })
            .collect();
        for route in [Route::DualKernel, Route::RowIdeal] {
            let o = n.order_ideal(&x, route).unwrap().ideal;
            assert!(o.equals(&Ideal::maximal(&r)).unwrap(), "d {d} {route:?}");
        }
    }
}

#[test]
fn quadric_cone_counterexample() {
    let r = parse_ring("QQ[Z0,Z1,Z2,Z3] mod=(Z0*Z3 - Z1*Z2)").unwrap();
    let m = Ideal::parse(&r, "Z0^2, Z0*Z1, Z1^2").unwrap();
    let mm = FPModule::from_ideal(&m).unwrap();
    let n = mm.perpendicular(true).unwrap().perp;
    assert_eq!(n.ngens(), 3);
    assert_eq!(n.rank().unwrap(), 2);
    for route in [Route::DualKernel, Route::RowIdeal] {
        let o = n.generator_order_ideal(1, route).unwrap().ideal;
        assert!(o.equals(&Ideal::maximal(&r)).unwrap(), "{route:?}: {o}");
        assert_eq!(o.height().unwrap(), Height::Finite(3));
    }
}
