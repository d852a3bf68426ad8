use std::cmp::Ordering;

use oideal_core::{compare, parse_poly, parse_ring, Field, MonomialOrder, Monomial, Polynomial, RingRef};
use proptest::prelude::*;

fn rings() -> Vec<RingRef> {
    vec![
        parse_ring("QQ[x,y,z]").unwrap(),
        parse_ring("GF(32003)[x,y,z]").unwrap(),
    ]
}

fn terms() -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    prop::collection::vec(([0u32..4, 0u32..4, 0u32..4], -9i64..10), 0..6)
}

fn build(ring: &RingRef, t: &[([u32; 3], i64)]) -> Polynomial {
    let f = ring.field();
    Polynomial::from_terms(
        ring,
        t.iter().map(|(e, c)| (Monomial::from_exponents(e).unwrap(), f.from_i64(*c))),
    )
}

fn rational_terms() -> impl Strategy<Value = Vec<([u32; 3], i64, i64)>> {
    prop::collection::vec(([0u32..4, 0u32..4, 0u32..4], -50i64..50, 1i64..9), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_parse_round_trip(t in terms(), q in rational_terms()) {
        for r in rings() {
            let p = build(&r, &t);
            prop_assert_eq!(&parse_poly(&r, &p.to_string()).unwrap(), &p);
        }
        let r = parse_ring("QQ[x,y,z]").unwrap();
        let p = Polynomial::from_terms(
            &r,
            q.iter().map(|(e, n, d)| {
                let c = Field::Rationals.from_fraction(&(*n).into(), &(*d).into()).unwrap();
                (Monomial::from_exponents(e).unwrap(), c)
            }),
        );
        prop_assert_eq!(&parse_poly(&r, &p.to_string()).unwrap(), &p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(a in terms(), b in terms(), c in terms()) {
        for r in rings() {
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &Polynomial::one(&r), a.clone());
        }
    }

    #[test]
    fn order_axioms(a in [0u32..5, 0u32..5, 0u32..5], b in [0u32..5, 0u32..5, 0u32..5], c in [0u32..5, 0u32..5, 0u32..5]) {
        let orders = [
            MonomialOrder::Lex,
            MonomialOrder::Grlex,
            MonomialOrder::Grevlex,
            MonomialOrder::WeightedGrevlex,
            MonomialOrder::Elimination(1),
        ];
        let w = [2u32, 1, 3];
        let add = |x: &[u32; 3], y: &[u32; 3]| [x[0] + y[0], x[1] + y[1], x[2] + y[2]];
        for o in orders {
            let ab = compare(o, &w, &a, &b).unwrap();
            prop_assert_eq!(ab, compare(o, &w, &b, &a).unwrap().reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            // multiplicative and a well-order
            prop_assert_eq!(compare(o, &w, &add(&a, &c), &add(&b, &c)).unwrap(), ab);
            prop_assert_ne!(compare(o, &w, &a, &[0, 0, 0]).unwrap(), Ordering::Less);
            let bc = compare(o, &w, &b, &c).unwrap();
            if ab == Ordering::Less && bc == Ordering::Less {
                prop_assert_eq!(compare(o, &w, &a, &c).unwrap(), Ordering::Less);
            }
        }
    }

    #[test]
    fn weighted_degree_is_additive(a in terms(), b in terms()) {
        let r = parse_ring("QQ[x,y,z] weights=(2,1,3)").unwrap();
        let (a, b) = (build(&r, &a), build(&r, &b));
        if let (Some(da), Some(db)) = (a.weighted_degree(), b.weighted_degree()) {
            prop_assert_eq!((&a * &b).weighted_degree(), Some(da + db));
        }
    }
}
