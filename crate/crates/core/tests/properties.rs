use proptest::prelude::*;
use umbra_core::evolution::{
    evolve_exact, intertwines, scaled_rows, verify_schrodinger, wave_polynomials,
};
use umbra_core::exact::{
    cumulants_of, from_cumulants, from_generating_series, verify_binomial, verify_origin,
    verify_recurrence,
};
use umbra_core::lattice::{
    pathint_approx, pathint_approx_enumerated, pathint_exp, split_exact, DEFAULT_MAX_PATHS,
};
use umbra_core::spectral::{hamiltonian_of, hamiltonian_vs_cumulant_series};
use umbra_core::{CumulantSeq, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn cumulants(max_len: usize) -> impl Strategy<Value = CumulantSeq> {
    prop::collection::vec(small_rational(), 1..=max_len).prop_map(|v| CumulantSeq::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cumulants_round_trip(c in cumulants(8)) {
        let t = from_cumulants(&c, 8);
        prop_assert_eq!(cumulants_of(&t), c.extended(8));
    }

    #[test]
    fn recursion_matches_generating_series(c in cumulants(8)) {
        prop_assert_eq!(from_cumulants(&c, 8), from_generating_series(&c, 8));
    }

    #[test]
    fn generated_triangles_satisfy_identities(c in cumulants(7), x in small_rational(), y in small_rational()) {
        let t = from_cumulants(&c, 7);
        prop_assert!(verify_binomial(&t, &x, &y));
        prop_assert!(verify_recurrence(&t));
        prop_assert!(verify_origin(&t));
    }

    #[test]
    fn leading_coefficient_is_power_of_c1(c in cumulants(6)) {
        let t = from_cumulants(&c, 6);
        for n in 0..=6 {
            prop_assert_eq!(t.coeff(n, n), &c.get(1).pow(n as u32));
        }
    }

    #[test]
    fn exponential_path_integral_is_exact(c in cumulants(6), x in small_rational(), n in 0usize..=6) {
        let t = from_cumulants(&c, n);
        prop_assert_eq!(pathint_exp(&c, n, &x), t.eval(n, &x).unwrap());
    }

    #[test]
    fn splitting_identity(c in cumulants(5), x in small_rational(), n in 0usize..=5, steps in 1usize..=4) {
        let t = from_cumulants(&c, n);
        prop_assert_eq!(split_exact(&t, n, &x, steps, DEFAULT_MAX_PATHS).unwrap(), t.eval_scaled(n, &x).unwrap());
    }

    #[test]
    fn first_order_product_equals_path_sum(c in cumulants(4), x in small_rational(), n in 0usize..=4, steps in 1usize..=4) {
        prop_assert_eq!(
            pathint_approx(&c, n, &x, steps).unwrap(),
            pathint_approx_enumerated(&c, n, &x, steps, DEFAULT_MAX_PATHS).unwrap()
        );
    }

    #[test]
    fn schrodinger_holds_for_generated_triangles(c in cumulants(8)) {
        let t = from_cumulants(&c, 8);
        prop_assert!(verify_schrodinger(&t, &c));
    }

    #[test]
    fn evolution_reproduces_scaled_rows(c in cumulants(6), x in small_rational()) {
        let t = from_cumulants(&c, 6);
        let w = evolve_exact(&c, 6, &x);
        for n in 0..=6 {
            prop_assert_eq!(&w.values[n], &t.eval_scaled(n, &x).unwrap());
        }
        prop_assert_eq!(wave_polynomials(&c, 6).into_iter().map(trim).collect::<Vec<_>>(), scaled_rows(&t).into_iter().map(trim).collect::<Vec<_>>());
        prop_assert!(intertwines(&hamiltonian_of(&c, 6), &wave_polynomials(&c, 6)));
    }

    #[test]
    fn hamiltonian_is_cumulant_series_on_circle(c in cumulants(8), p in -std::f64::consts::PI..std::f64::consts::PI) {
        let (h, f) = hamiltonian_vs_cumulant_series(&c, p);
        prop_assert!((h - f).norm() <= 1e-12 * f.norm().max(1.0));
    }

    #[test]
    fn rational_display_parses_back(r in small_rational(), s in small_rational()) {
        let v = r * s + Rational::new(1, 7).unwrap();
        prop_assert_eq!(v.to_string().parse::<Rational>().unwrap(), v);
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadrature_agrees_with_exact(c in cumulants(6), n in 0usize..=6, xi in 0usize..5) {
        let x = [-2.0, -1.0, 0.5, 1.0, 2.0][xi];
        let exact = from_cumulants(&c, n).eval(n, &umbra_core::catalog::float_to_rational(x)).unwrap().to_f64();
        let est = umbra_core::spectral::spectral_eval(&c, n, x, &Default::default()).unwrap();
        prop_assert!(umbra_core::catalog::spectral_deviation(est.value, exact) <= 1e-9, "{est:?} vs {exact}");
    }
}
