use proptest::prelude::*;
use qosc::qnum::{bracket, casimir_eigenvalue, gamma_q, lambda_q, q_factorial, nearest_root_of_unity};
use qosc::{CasimirKind, Error, QParam, Regime};

fn circle_w() -> impl Strategy<Value = f64> {
    (0.01f64..3.13).prop_filter("away from roots of unity", |w| QParam::unit_circle(*w).is_ok())
}

fn kind() -> impl Strategy<Value = CasimirKind> {
    prop_oneof![Just(CasimirKind::Cq), Just(CasimirKind::CqPrime)]
}

proptest! {
    #[test]
    fn bracket_is_symmetric_under_inversion(x in -6.0f64..6.0, w in -4.0f64..4.0) {
        let qp = QParam::real(w).unwrap();
        prop_assert_eq!(bracket(x, &qp), bracket(x, &qp.inverse()));
    }

    #[test]
    fn circle_bracket_is_symmetric_under_inversion(x in -6.0f64..6.0, w in circle_w()) {
        let qp = QParam::unit_circle(w).unwrap();
        prop_assert_eq!(bracket(x, &qp), bracket(x, &qp.inverse()));
    }

    #[test]
    fn product_identity_real(x in -5.0f64..5.0, w in 0.0f64..2.0) {
        let qp = QParam::real(w).unwrap();
        let lhs = bracket(x + 1.0, &qp) * bracket(x - 1.0, &qp);
        let rhs = bracket(x, &qp).powi(2) - 1.0;
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + rhs.abs()), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn small_w_is_nearly_undeformed(x in -8.0f64..8.0, w in 0.0f64..1e-6, circle in any::<bool>()) {
        let qp = if circle && w > 0.0 { QParam::unit_circle_unchecked(w).unwrap() } else { QParam::real(w).unwrap() };
        prop_assert!((bracket(x, &qp) - x).abs() <= 1e-10 * (1.0 + x.abs().powi(3)));
    }

    #[test]
    fn lambda_squares_to_casimir(l in 0u32..9, k in kind(), w in 0.0f64..3.0, circle in any::<bool>()) {
        let qp = if circle { QParam::unit_circle_unchecked(w.max(1e-3)).unwrap() } else { QParam::real(w).unwrap() };
        let c = casimir_eigenvalue(l, k, &qp);
        match lambda_q(l, k, &qp) {
            Ok(lam) => prop_assert!((lam * lam - 0.25 - c).abs() <= 1e-12 * (1.0 + c.abs())),
            Err(Error::NoRealRoots { radicand }) => prop_assert!(radicand < 0.0 && circle),
            Err(e) => prop_assert!(false, "unexpected {}", e),
        }
    }

    #[test]
    fn gamma_is_scaled_casimir(l in 0u32..9, k in kind(), w in circle_w()) {
        let qp = QParam::unit_circle(w).unwrap();
        let expect = 4.0 * w.sin().powi(2) * casimir_eigenvalue(l, k, &qp);
        prop_assert!((gamma_q(l, k, &qp).unwrap() - expect).abs() <= 1e-12 * (1.0 + expect.abs()));
    }

    #[test]
    fn factorial_recurrence(n in 1i64..12, w in -2.0f64..2.0) {
        let qp = QParam::real(w).unwrap();
        let lhs = q_factorial(n, &qp).unwrap();
        let rhs = bracket(n as f64, &qp) * q_factorial(n - 1, &qp).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());
    }
}

#[test]
fn unit_circle_construction_screens_roots_of_unity() {
    let w = std::f64::consts::PI * 3.0 / 7.0;
    match QParam::unit_circle(w) {
        Err(Error::RootOfUnity { p: 3, s: 7, .. }) => {}
        other => panic!("expected root-of-unity error, got {other:?}"),
    }
    assert!(QParam::unit_circle(w + 1e-8).is_ok());
    assert!(QParam::unit_circle(0.0).is_err());
    assert!(QParam::unit_circle(3.2).is_err());
    assert!(QParam::real(f64::NAN).is_err());
    assert_eq!(nearest_root_of_unity(std::f64::consts::FRAC_PI_2, 64, 1e-9).map(|r| (r.0, r.1)), Some((1, 2)));
}

#[test]
fn inverse_flips_w_and_keeps_regime() {
    let qp = QParam::new(Regime::UnitCircle, 0.4).unwrap();
    assert_eq!(qp.inverse().w(), -0.4);
    assert_eq!(qp.inverse().regime(), Regime::UnitCircle);
    assert!((qp.q() * qp.inverse().q() - 1.0).norm() < 1e-15);
}

#[test]
fn bracket_frozen_values() {
    // [5/2] at q = 2 = (2^{5/2} − 2^{−5/2})/(2 − ½)
    let qp = QParam::real(2f64.ln()).unwrap();
    let expect = (2f64.powf(2.5) - 2f64.powf(-2.5)) / 1.5;
    assert!((bracket(2.5, &qp) - expect).abs() < 1e-14);
    // [3] on the unit circle at w = π/5: sin(3π/5)/sin(π/5)
    let c = QParam::unit_circle_unchecked(std::f64::consts::PI / 5.0).unwrap();
    assert!((bracket(3.0, &c) - 1.618_033_988_749_895).abs() < 1e-14);
}
