use bifib::derivatives::{
    altsum_dy, cross_derivative, d_dx_direct, d_dy_direct, derivative, rational_dx_shifted,
    rth_dx_recurrence, rth_dx_recurrence_shifted,
};
use bifib::{fib, DerivMethod, Error, LaurentBiPoly, RationalValue, Wrt};
use proptest::prelude::*;

#[test]
fn every_method_agrees_with_direct_differentiation() {
    for n in 1..=120 {
        let dx = d_dx_direct(n, 1);
        let dy = d_dy_direct(n, 1);
        for m in DerivMethod::ALL {
            assert_eq!(derivative(n, 1, Wrt::X, m).unwrap(), dx, "{m} x at n = {n}");
            if !matches!(m, DerivMethod::Rational | DerivMethod::RthRecurrence) {
                assert_eq!(derivative(n, 1, Wrt::Y, m).unwrap(), dy, "{m} y at n = {n}");
            }
        }
    }
}

#[test]
fn higher_orders_through_the_wrapper() {
    for n in 1..=60 {
        for r in 1..=6 {
            assert_eq!(
                derivative(n, r, Wrt::X, DerivMethod::RthRecurrence).unwrap(),
                d_dx_direct(n, r),
                "(n, r) = ({n}, {r})"
            );
        }
    }
    assert_eq!(derivative(7, 0, Wrt::Y, DerivMethod::Direct).unwrap(), fib(7));
    assert!(matches!(
        derivative(7, 1, Wrt::Y, DerivMethod::Rational),
        Err(Error::UnsupportedMethod { .. })
    ));
    assert!(matches!(
        derivative(7, 2, Wrt::X, DerivMethod::Convolution),
        Err(Error::UnsupportedMethod { .. })
    ));
}

#[test]
fn order_r_table_base_cases() {
    for r in 1..=10u32 {
        let fact: num_bigint::BigInt = (1..=r).product();
        assert_eq!(rth_dx_recurrence(i64::from(r), r).unwrap(), LaurentBiPoly::constant(fact));
        for n in 0..i64::from(r) {
            assert!(rth_dx_recurrence(n, r).unwrap().is_zero());
        }
    }
}

#[test]
fn corrected_corollaries_hold_and_printed_ones_do_not() {
    for n in 2..=150 {
        assert!(rational_dx_shifted(n, true).unwrap().holds(), "cor3 corrected at {n}");
        assert!(!rational_dx_shifted(n, false).unwrap().holds(), "cor3 printed at {n}");
    }
    for n in 1..=150 {
        assert_eq!(altsum_dy(n, true).unwrap(), d_dy_direct(n, 1));
        assert_eq!(altsum_dy(n, false).unwrap() == d_dy_direct(n, 1), n < 5, "cor2 printed at {n}");
    }
    for r in 1..=6u32 {
        let r64 = i64::from(r);
        assert!(matches!(
            rth_dx_recurrence_shifted(r64 + 1, r, true),
            Err(Error::SingularPrefactor { .. })
        ));
        for n in r64 + 2..=60 {
            assert!(rth_dx_recurrence_shifted(n, r, true).unwrap().holds());
            assert!(!rth_dx_recurrence_shifted(n, r, false).unwrap().holds());
        }
    }
}

#[test]
fn cross_derivative_holds_for_laurent_indices() {
    for n in -30..=100 {
        assert!(cross_derivative(n).holds(), "n = {n}");
    }
}

/// Exact Taylor check of the x-derivatives: for a polynomial in x,
/// `[F(x0 + h) - F(x0 - h)] / (2h) - F'(x0) = sum_{k odd >= 3} F^(k)(x0) h^(k-1) / k!`.
fn taylor_residual_matches(n: i64, x0: &RationalValue, y0: &RationalValue, h: &RationalValue) -> bool {
    let f = fib(n);
    let at = |x: &RationalValue| f.eval(x, y0).unwrap();
    let two_h = h + h;
    let central = (&at(&(x0 + h)) - &at(&(x0 - h))).checked_div(&two_h).unwrap();
    let lhs = &central - &d_dx_direct(n, 1).eval(x0, y0).unwrap();

    let mut rhs = RationalValue::zero();
    let mut fact = RationalValue::one();
    for k in 1..=n.max(1) as u32 {
        fact = &fact * &RationalValue::integer(k);
        if k >= 3 && k % 2 == 1 {
            let term = &d_dx_direct(n, k).eval(x0, y0).unwrap() * &h.pow(k as i32 - 1).unwrap();
            rhs = &rhs + &term.checked_div(&fact).unwrap();
        }
    }
    lhs == rhs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_difference_taylor_identity(
        n in 1i64..40,
        (xp, xq) in (-8i64..9, 1i64..5),
        (yp, yq) in (-8i64..9, 1i64..5),
        (hp, hq) in (1i64..7, 1i64..9),
    ) {
        let x0 = RationalValue::new(xp.into(), xq.into()).unwrap();
        let y0 = RationalValue::new(yp.into(), yq.into()).unwrap();
        let h = RationalValue::new(hp.into(), hq.into()).unwrap();
        prop_assume!(!y0.is_zero());
        prop_assert!(taylor_residual_matches(n, &x0, &y0, &h));
    }

    #[test]
    fn mixed_partials_commute(n in -20i64..60) {
        let f = fib(n);
        prop_assert_eq!(f.diff_x().diff_y(), f.diff_y().diff_x());
    }
}
