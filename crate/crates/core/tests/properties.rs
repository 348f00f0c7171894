use loopstar::checks::{curves_product, random_diagram, random_split, random_triple, rng};
use loopstar::coeff::{crossing_coeffs, rat, ClosedForm, CrossingType, GroupSpec, Series};
use loopstar::goldman::bracket;
use loopstar::holonomy::HolonomyAssignment;
use loopstar::star::{self, poisson_limit_check, Stacked};
use loopstar::{parse_diagram, render_diagram, FormalSum};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn series(order: usize) -> impl Strategy<Value = Series> {
    proptest::collection::vec((-20i64..21, 1i64..9), order + 1).prop_map(|cs| {
        Series::from_coeffs(
            cs.into_iter()
                .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    })
}

fn triple() -> impl Strategy<Value = (Series, Series, Series)> {
    (0usize..6).prop_flat_map(|k| (series(k), series(k), series(k)))
}

fn group() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        Just(GroupSpec::su2()),
        Just(GroupSpec::sl2r()),
        (1usize..4).prop_map(GroupSpec::gln),
        (2usize..4).prop_map(GroupSpec::un),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &Series::one(a.order()), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn truncation_is_a_ring_map((a, b, _) in triple(), cut in 0usize..6) {
        let k = cut.min(a.order());
        prop_assert_eq!((&a * &b).truncate(k), &a.truncate(k) * &b.truncate(k));
    }

    #[test]
    fn series_strings_round_trip(a in (0usize..8).prop_flat_map(series)) {
        prop_assert_eq!(Series::from_strings(&a.to_strings()).unwrap(), a);
    }

    #[test]
    fn under_is_over_at_minus_beta(g in group(), beta in -1.5f64..1.5) {
        let (vo, so) = ClosedForm::new(g, CrossingType::Over).eval(-beta);
        let (vu, su) = ClosedForm::new(g, CrossingType::Under).eval(beta);
        prop_assert!((vo - vu).abs() < 1e-12 * (1.0 + vo.abs()));
        prop_assert!((so - su).abs() < 1e-12 * (1.0 + so.abs()));
    }

    #[test]
    fn series_tracks_closed_form(g in group(), beta in -0.05f64..0.05) {
        let c = crossing_coeffs(&g, CrossingType::Over, 8).unwrap();
        let (v, s) = ClosedForm::new(g, CrossingType::Over).eval(beta);
        prop_assert!((c.c_virtual.eval_at(beta).re - v).abs() < 1e-12);
        prop_assert!((c.c_smooth.eval_at(beta).re - s).abs() < 1e-12);
        prop_assert_eq!(c.c_smooth.coeff(0), rat(0, 1));
    }

    #[test]
    fn diagram_text_round_trip(seed in any::<u64>(), curves in 1usize..5, points in 0usize..8) {
        let d = random_diagram(&mut rng(seed), curves, points, 0.3);
        let text = render_diagram(&d);
        prop_assert_eq!(render_diagram(&parse_diagram(&text).unwrap()), text);
    }

    #[test]
    fn bracket_antisymmetric(seed in any::<u64>(), g in group()) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, 3, 5, 0.2);
        let (xs, ys) = random_split(&mut r, 3);
        let (f, h) = (curves_product(&d, &xs, 1), curves_product(&d, &ys, 1));
        let sum = bracket(&d, &f, &h, &g).unwrap().add(&bracket(&d, &h, &f, &g).unwrap());
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn star_first_order_is_bracket(seed in any::<u64>(), g in group()) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, 3, 5, 0.2);
        let (xs, ys) = random_split(&mut r, 3);
        let res = poisson_limit_check(&d, &curves_product(&d, &xs, 1), &curves_product(&d, &ys, 1), &g).unwrap();
        prop_assert!(res.is_zero());
    }

    #[test]
    fn star_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_triple(&mut r);
        let g = GroupSpec::su2();
        let [u, v, w] = [0, 1, 2].map(|c| curves_product(&d, &[c], 3));
        let left = star::star(&d, &star::star(&d, &u, &v, &g, 3).unwrap(), &w, &g, 3).unwrap();
        let right = star::star(&d, &u, &star::star(&d, &v, &w, &g, 3).unwrap(), &g, 3).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn expectation_json_round_trip(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 3, 4, 0.2);
        let e = star::expect(&d, &Stacked::from_diagram(&d), &GroupSpec::gln(2), 3).unwrap();
        prop_assert_eq!(FormalSum::from_json_str(&d, &e.to_json_string(&d)).unwrap(), e);
    }

    #[test]
    fn crossing_free_expectation_is_the_product(seed in any::<u64>(), g in group()) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, 3, 4, 1.0);
        let st = Stacked::from_diagram(&d);
        let e = star::expect_numeric(&d, &st, &g, 0.3).unwrap();
        let a = HolonomyAssignment::random(&d, g, &mut r);
        let got = a.eval_formal(&e, 0.3).unwrap();
        let want = a.eval_monomial(&st.monomial()).unwrap();
        prop_assert!((got - want).norm() < 1e-10 * (1.0 + want.norm()));
    }
}
