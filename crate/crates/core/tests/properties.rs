use proptest::prelude::*;
use quatreg::suite::{BackendChoice, Suite, SuiteConfig};
use quatreg::{catalog_get, from_spherical, to_spherical, Operators, QFunction, QJet, Quaternion};

fn component() -> impl Strategy<Value = f64> {
    -3.0..3.0f64
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    (component(), component(), component(), component()).prop_map(|(t, x, y, z)| Quaternion::new(t, x, y, z))
}

/// Points with `r ∈ [0.5, 2]` and `|z|/r ≤ 0.9`, where every chart and
/// catalog cut stays comfortably away.
fn off_axis_point() -> impl Strategy<Value = Quaternion> {
    (-1.0..1.0f64, 0.5..2.0f64, 0.0..std::f64::consts::TAU, 0.45..2.69f64).prop_map(|(t, r, a, b)| {
        Quaternion::new(t, r * a.cos() * b.sin(), r * a.sin() * b.sin(), r * b.cos())
    })
}

fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_is_multiplicative(p in quaternion(), q in quaternion()) {
        let lhs = (p * q).norm();
        prop_assert!((lhs - p.norm() * q.norm()).abs() <= 1e-12 * (1.0 + lhs));
    }

    #[test]
    fn product_is_associative(p in quaternion(), q in quaternion(), s in quaternion()) {
        prop_assert!(close((p * q) * s, p * (q * s), 1e-12));
    }

    #[test]
    fn inverse_is_two_sided(p in quaternion()) {
        prop_assume!(p.norm() > 1e-3);
        let inv = p.inv().unwrap();
        prop_assert!(close(p * inv, Quaternion::ONE, 1e-12));
        prop_assert!(close(inv * p, Quaternion::ONE, 1e-12));
    }

    #[test]
    fn spherical_chart_roundtrip(p in off_axis_point()) {
        let s = to_spherical(p).unwrap();
        prop_assert!(close(from_spherical(s), p, 1e-13));
        prop_assert!((s.iota().norm() - 1.0).abs() < 1e-14);
        prop_assert!((s.iota() * s.iota() + Quaternion::ONE).norm() < 1e-14);
    }

    #[test]
    fn jet_product_is_associative(p in off_axis_point(), a in quaternion(), b in quaternion()) {
        let x = QJet::seed_cartesian(p, 3).unwrap();
        let y = x.left_mul(a).add_const(b);
        let z = x.try_mul(&x).unwrap().right_mul(b);
        let lhs = x.try_mul(&y).unwrap().try_mul(&z).unwrap();
        let rhs = x.try_mul(&y.try_mul(&z).unwrap()).unwrap();
        for i in 0..4 {
            prop_assert!(close(lhs.d(i).unwrap(), rhs.d(i).unwrap(), 1e-11));
        }
        prop_assert!(close(lhs.value(), rhs.value(), 1e-12));
    }

    #[test]
    fn order_zero_jets_are_quaternions(p in quaternion(), q in quaternion()) {
        let (a, b) = (QJet::constant(p, 0).unwrap(), QJet::constant(q, 0).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap().value(), p * q);
        prop_assert_eq!(a.try_add(&b).unwrap().value(), p + q);
        prop_assert_eq!(a.try_sub(&b).unwrap().value(), p - q);
        prop_assume!(p.norm() > 1e-3);
        prop_assert!(close(a.inv().unwrap().value(), p.inv().unwrap(), 1e-14));
    }

    #[test]
    fn backends_agree_on_first_order_operators(p in off_axis_point(), n in 1i32..=4) {
        let f = QFunction::power(n);
        let (jets, fd) = (Operators::jets(), Operators::finite_difference());
        prop_assert!(close(jets.fueter_left(&f, p).unwrap(), fd.fueter_left(&f, p).unwrap(), 1e-7));
        prop_assert!(close(jets.cullen_left(&f, p).unwrap(), fd.cullen_left(&f, p).unwrap(), 1e-7));
        prop_assert!(close(
            jets.angular_derivative(&f, p).unwrap(),
            fd.angular_derivative(&f, p).unwrap(),
            1e-7
        ));
    }

    #[test]
    fn left_operators_are_right_linear(p in off_axis_point(), c in quaternion(), id in 0usize..3) {
        let f = catalog_get(["power:3", "iota", "conj"][id]).unwrap();
        let fc = f.times(&QFunction::constant(c));
        let ops = Operators::jets();
        prop_assert!(close(ops.fueter_left(&fc, p).unwrap(), ops.fueter_left(&f, p).unwrap() * c, 1e-11));
        prop_assert!(close(ops.cullen_left(&fc, p).unwrap(), ops.cullen_left(&f, p).unwrap() * c, 1e-11));
    }

    #[test]
    fn config_text_roundtrips(
        samples in 1usize..500,
        seed in any::<u64>(),
        t0 in -5.0..0.0f64,
        width in 0.1..5.0f64,
        r0 in 0.1..1.0f64,
        sin_beta in 0.01..0.9f64,
        tol in 1e-12..1e-3f64,
        backend in 0usize..3,
        res in proptest::option::of(4usize..40),
    ) {
        let cfg = SuiteConfig {
            functions: vec!["power:2".into(), "arctan_ex:3".into(), "conj".into()],
            suites: vec![Suite::Lemma1, Suite::Generalized],
            samples,
            seed,
            t_range: (t0, t0 + width),
            r_range: (r0, r0 + width),
            min_sin_beta: sin_beta,
            backend: [BackendChoice::Jets, BackendChoice::Fd, BackendChoice::Both][backend],
            res,
            ..SuiteConfig::default()
        };
        let mut cfg = cfg;
        cfg.tol.pointwise = tol;
        let again = SuiteConfig::parse(&cfg.to_text()).unwrap();
        prop_assert_eq!(again, cfg);
    }
}
