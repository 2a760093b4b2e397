use apery_core::apery::{fc_g, fc_radius};
use apery_core::gamma::gamma;
use apery_core::identities::ExactComplex;
use apery_core::polylog::{li, li_multi, Composition};
use apery_core::{Cx, PrecisionContext};
use proptest::prelude::*;
use rug::Rational;

fn ctx() -> PrecisionContext {
    PrecisionContext::with_digits(40)
}

fn rel(a: &Cx, b: &Cx) -> f64 {
    let scale = b.abs_f64().max(1e-300);
    a.dist(b).to_f64() / scale
}

/// Real part kept at least 0.05 away from the integers.
fn off_integer() -> impl Strategy<Value = f64> {
    (-3i32..3, 0.05f64..0.95).prop_map(|(n, f)| n as f64 + f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn gamma_reflection(re in off_integer(), im in -2.0f64..2.0) {
        let ctx = ctx();
        let bits = ctx.bits();
        let z = Cx::from_f64(bits, re, im);
        let lhs = gamma(&z, &ctx).unwrap() * gamma(&(Cx::one(bits) - &z), &ctx).unwrap();
        let rhs = Cx::pi(bits) * (Cx::pi(bits) * &z).sin().recip();
        prop_assert!(rel(&lhs, &rhs) < 1e-35, "z = {re}+{im}i");
    }

    #[test]
    fn gamma_duplication(re in 0.1f64..4.0, im in -2.0f64..2.0) {
        let ctx = ctx();
        let bits = ctx.bits();
        let z = Cx::from_f64(bits, re, im);
        let half = Cx::ratio(bits, 1, 2);
        let lhs = gamma(&z, &ctx).unwrap() * gamma(&(&z + &half), &ctx).unwrap();
        let two = Cx::int(bits, 2);
        let rhs = two.powc(&(Cx::one(bits) - &z * Cx::int(bits, 2)))
            * Cx::pi(bits).sqrt()
            * gamma(&(&z * two), &ctx).unwrap();
        prop_assert!(rel(&lhs, &rhs) < 1e-35, "z = {re}+{im}i");
    }

    #[test]
    fn depth_one_multiple_polylog_is_li(k in 1u32..5, r in 0.0f64..0.95, t in 0.0f64..6.28) {
        let ctx = ctx();
        let bits = ctx.bits();
        let z = Cx::from_f64(bits, r * t.cos(), r * t.sin());
        let multi = li_multi(&Composition::new(vec![k]).unwrap(), &z, &ctx).unwrap();
        let single = li(k, &z, &ctx).unwrap();
        prop_assert!(multi.dist(&single).to_f64() < 1e-35);
        if k == 1 {
            let log = -(Cx::one(bits) - &z).ln();
            prop_assert!(single.dist(&log).to_f64() < 1e-35);
        }
    }

    #[test]
    fn fuss_catalan_generating_function(m in 2u32..6, t in -0.99f64..0.99) {
        let ctx = ctx();
        let bits = ctx.bits();
        let radius = fc_radius(m).to_f64();
        let x = Cx::from_f64(bits, t * radius, 0.0);
        let g = fc_g(m, &x, &ctx).unwrap();
        let eq = &g - Cx::one(bits) - &x * g.powi(m as i64);
        prop_assert!(eq.abs_f64() < 1e-35);
        prop_assert!(g.re_f64() > 0.5 && g.re_f64() <= m as f64 / (m as f64 - 1.0) + 1e-12);
    }

    #[test]
    fn exact_complex_roundtrip(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        let v = ExactComplex::new(Rational::from((a, b)), Rational::from((c, d)));
        let text = v.to_string();
        let back: ExactComplex = text.parse().unwrap();
        prop_assert_eq!(back, v);
    }
}
