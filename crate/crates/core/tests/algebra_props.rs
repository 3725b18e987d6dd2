use proptest::prelude::*;
use softnum::{AnalyticFn, SoftNumber, SoftZero};

fn rel_close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(got.abs()).max(f64::MIN_POSITIVE)
}

fn sn_close(p: SoftNumber, q: SoftNumber, tol: f64) -> bool {
    rel_close(p.soft(), q.soft(), tol) && rel_close(p.real(), q.real(), tol)
}

fn component() -> impl Strategy<Value = f64> {
    -1e3..1e3f64
}

/// Small integers are exactly representable, and so are their sums and
/// products here, so ring laws hold bit for bit.
fn int_soft() -> impl Strategy<Value = SoftNumber> {
    (-1000i32..1000, -1000i32..1000).prop_map(|(a, b)| SoftNumber::new(a.into(), b.into()).unwrap())
}

fn soft() -> impl Strategy<Value = SoftNumber> {
    (component(), component()).prop_map(|(a, b)| SoftNumber::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn add_mul_commute_exactly(p in soft(), q in soft()) {
        prop_assert_eq!(p.checked_add(q).unwrap(), q.checked_add(p).unwrap());
        prop_assert_eq!(p.checked_mul(q).unwrap(), q.checked_mul(p).unwrap());
    }

    #[test]
    fn ring_laws_exact_on_integers(p in int_soft(), q in int_soft(), r in int_soft()) {
        let add = |x: SoftNumber, y| x.checked_add(y).unwrap();
        let mul = |x: SoftNumber, y| x.checked_mul(y).unwrap();
        prop_assert_eq!(add(add(p, q), r), add(p, add(q, r)));
        prop_assert_eq!(mul(mul(p, q), r), mul(p, mul(q, r)));
        prop_assert_eq!(mul(p, add(q, r)), add(mul(p, q), mul(p, r)));
        prop_assert_eq!(add(p, SoftNumber::ZERO), p);
        prop_assert_eq!(mul(p, SoftNumber::ONE), p);
        prop_assert_eq!(add(p, -p), SoftNumber::ZERO);
    }

    #[test]
    fn ring_laws_within_tolerance(p in soft(), q in soft(), r in soft()) {
        let add = |x: SoftNumber, y| x.checked_add(y).unwrap();
        let mul = |x: SoftNumber, y| x.checked_mul(y).unwrap();
        // rounding is relative to the operand norms |a| + |b|
        let norm = |x: SoftNumber| x.soft().abs() + x.real().abs();
        let d = |x: SoftNumber, y: SoftNumber| {
            (x.soft() - y.soft()).abs().max((x.real() - y.real()).abs())
        };
        let tol = 1e-12;
        prop_assert!(d(add(add(p, q), r), add(p, add(q, r))) <= tol * (norm(p) + norm(q) + norm(r)));
        prop_assert!(d(mul(mul(p, q), r), mul(p, mul(q, r))) <= tol * norm(p) * norm(q) * norm(r));
        prop_assert!(d(mul(p, add(q, r)), add(mul(p, q), mul(p, r))) <= tol * norm(p) * (norm(q) + norm(r)));
    }

    #[test]
    fn soft_zeros_annihilate(a in any::<f64>().prop_filter("finite", |v| v.is_finite()),
                             c in any::<f64>().prop_filter("finite", |v| v.is_finite()),
                             real in component()) {
        let prod = SoftNumber::soft_zero(a).unwrap().checked_mul(SoftNumber::soft_zero(c).unwrap()).unwrap();
        prop_assert_eq!(prod.soft(), 0.0);
        prop_assert_eq!(prod.real(), 0.0);
        prop_assert_eq!(SoftZero::new(a).unwrap() * SoftZero::new(c).unwrap(), 0.0);
        // a0̄·b0̄ + c = c
        let c_real = SoftNumber::from_real(real).unwrap();
        prop_assert_eq!(prod.checked_add(c_real).unwrap(), c_real);
    }

    #[test]
    fn scalar_multiplication_commutes_on_soft_zeros(a in component(), b in component()) {
        let za = SoftZero::new(a).unwrap();
        let zb = SoftZero::new(b).unwrap();
        prop_assert_eq!(b * za, a * zb);
        prop_assert_eq!(SoftNumber::from(b * za), SoftNumber::soft_zero(a * b).unwrap());
    }

    #[test]
    fn pow_matches_repeated_mul(p in soft(), n in 0u32..=16) {
        let mut acc = SoftNumber::ONE;
        for _ in 0..n {
            acc = acc.checked_mul(p).unwrap();
        }
        let closed = p.checked_pow(n).unwrap();
        prop_assert!(sn_close(closed, acc, 1e-12), "{closed} vs {acc}");
    }

    #[test]
    fn poly_matches_composition(p in (-2.0..2.0f64, -2.0..2.0f64), coeffs in prop::collection::vec(-5.0..5.0f64, 1..=9)) {
        let p = SoftNumber::new(p.0, p.1).unwrap();
        let horner = p.eval_poly(&coeffs).unwrap();
        let mut sum = SoftNumber::ZERO;
        for (k, &c) in coeffs.iter().enumerate() {
            let term = p.checked_pow(k as u32).unwrap().checked_scale(c).unwrap();
            sum = sum.checked_add(term).unwrap();
        }
        let mag: f64 = coeffs.iter().enumerate().map(|(k, c)| c.abs() * (k as f64 + 1.0) * 2f64.powi(k as i32) * 2.0).sum();
        prop_assert!((horner.real() - sum.real()).abs() <= 1e-12 * mag, "{horner} vs {sum}");
        prop_assert!((horner.soft() - sum.soft()).abs() <= 1e-12 * mag, "{horner} vs {sum}");
    }

    #[test]
    fn division_inverts_multiplication(p in int_soft(), q in soft().prop_filter("nonzero real", |q| q.real().abs() > 1e-3)) {
        let r = p.checked_div(q).unwrap();
        let back = r.checked_mul(q).unwrap();
        let scale = p.soft().abs() + p.real().abs() + (p.real() * q.soft() / q.real()).abs();
        prop_assert!((back.soft() - p.soft()).abs() <= 1e-12 * scale);
        prop_assert!((back.real() - p.real()).abs() <= 1e-12 * scale);
    }

    #[test]
    fn soft_zero_order_is_real_order(a in component(), b in component()) {
        let za = SoftNumber::soft_zero(a).unwrap();
        let zb = SoftNumber::soft_zero(b).unwrap();
        prop_assert_eq!(za.cmp(&zb), a.partial_cmp(&b).unwrap());
        prop_assert_eq!(SoftZero::new(a).unwrap().partial_cmp(&SoftZero::new(b).unwrap()), a.partial_cmp(&b));
    }

    #[test]
    fn order_is_lexicographic(p in soft(), q in soft()) {
        let want = p.real().partial_cmp(&q.real()).unwrap().then(p.soft().partial_cmp(&q.soft()).unwrap());
        prop_assert_eq!(p.cmp(&q), want);
        prop_assert_eq!(p.cmp(&q), q.cmp(&p).reverse());
    }

    #[test]
    fn bridge_round_trip(p in soft()) {
        let pair = p.to_bridge_pair();
        prop_assert_ne!(pair.left, pair.right);
        prop_assert_eq!(SoftNumber::try_from(pair).unwrap(), p);
    }

    #[test]
    fn printing_is_canonical(p in soft()) {
        let s = p.to_string();
        let q: SoftNumber = s.parse().unwrap();
        prop_assert_eq!(q, p);
        prop_assert_eq!(q.to_string(), s);
    }

    #[test]
    fn chain_rule_from_nested_lifts(x in 0.1..3.0f64) {
        let p = SoftNumber::new(1.0, x).unwrap();
        let inner = AnalyticFn::Sqrt.lift(p).unwrap();
        let outer = AnalyticFn::Sin.lift(inner).unwrap();
        let want = x.sqrt().cos() * 0.5 / x.sqrt();
        prop_assert!(rel_close(outer.soft(), want, 1e-9));
    }
}
