use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use qosc::angular::{
    apply_casimir, apply_j3, apply_jminus, apply_jplus, commutator_plus_minus, deformed_inner_product,
    spherical_harmonic,
};
use qosc::qnum::{bracket, casimir_eigenvalue};
use qosc::{CasimirKind, QParam};

/// Textbook Y_lm with the Condon–Shortley phase, from the associated
/// Legendre recurrence. Independent of the library.
fn condon_shortley(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    let ma = m.unsigned_abs();
    let x = theta.cos();
    let s = theta.sin();
    // P_m^m without the (−1)^m factor
    let mut pmm = 1.0;
    for k in 1..=ma {
        pmm *= f64::from(2 * k - 1) * s;
    }
    let plm = if l == ma {
        pmm
    } else {
        let mut p_prev = pmm;
        let mut p = x * f64::from(2 * ma + 1) * pmm;
        for ll in (ma + 2)..=l {
            let next = (x * f64::from(2 * ll - 1) * p - f64::from(ll + ma - 1) * p_prev) / f64::from(ll - ma);
            p_prev = p;
            p = next;
        }
        p
    };
    let ratio: f64 = ((l - ma + 1)..=(l + ma)).map(f64::from).product();
    let norm = (f64::from(2 * l + 1) / (4.0 * PI) / ratio).sqrt();
    let y = Complex64::from_polar(norm * plm, f64::from(ma as i32) * phi);
    let y = if ma % 2 == 1 { -y } else { y };
    if m >= 0 {
        y
    } else if ma % 2 == 1 {
        -y.conj()
    } else {
        y.conj()
    }
}

fn sup_on_grid(f: impl Fn(f64, f64) -> Complex64) -> f64 {
    let mut sup: f64 = 0.0;
    for i in 1..40 {
        let theta = PI * f64::from(i) / 40.0;
        for phi in [0.0, 0.9, 2.3] {
            sup = sup.max(f(theta, phi).norm());
        }
    }
    sup
}

fn labels() -> impl Strategy<Value = (u32, i32)> {
    (0u32..=4).prop_flat_map(|l| (Just(l), -(l as i32)..=(l as i32)))
}

fn real_w() -> impl Strategy<Value = f64> {
    prop_oneof![0.05f64..1.2, -1.2f64..-0.05]
}

#[test]
fn undeformed_harmonics_match_condon_shortley() {
    let one = QParam::undeformed();
    for l in 0..=5u32 {
        for m in -(l as i32)..=(l as i32) {
            let y = spherical_harmonic(l, m, &one).unwrap();
            let err = sup_on_grid(|t, p| y.evaluate(t, p).unwrap() - condon_shortley(l, m, t, p));
            assert!(err < 1e-12, "Y({l},{m}): {err:e}");
        }
    }
}

#[test]
fn limit_q_to_one_orders() {
    // Y_q itself carries a term linear in w (Y_10q ∝ (1 − ρ²)/(1 + q⁻²ρ²)),
    // so halving w halves the distance; the q ↔ q⁻¹ average cancels it and
    // converges at second order.
    for (l, m) in [(1, 0), (2, 1), (3, -2), (4, 4), (4, 0)] {
        let dist = |w: f64, average: bool| {
            let y = spherical_harmonic(l, m, &QParam::real(w).unwrap()).unwrap();
            let yi = spherical_harmonic(l, m, &QParam::real(-w).unwrap()).unwrap();
            sup_on_grid(|t, p| {
                let v = if average {
                    (y.evaluate(t, p).unwrap() + yi.evaluate(t, p).unwrap()) * 0.5
                } else {
                    y.evaluate(t, p).unwrap()
                };
                v - condon_shortley(l, m, t, p)
            })
        };
        let ratio = dist(0.004, false) / dist(0.002, false);
        assert!((1.8..2.2).contains(&ratio), "Y({l},{m}) first order: {ratio}");
        let ratio = dist(0.004, true) / dist(0.002, true);
        assert!((3.5..4.5).contains(&ratio), "Y({l},{m}) averaged: {ratio}");
        let d = dist(1e-4, false);
        assert!(d < 40.0 * 1e-4, "Y({l},{m}) at w = 1e-4: {d:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn casimir_eigen_equations((l, m) in labels(), w in real_w()) {
        let qp = QParam::real(w).unwrap();
        let y = spherical_harmonic(l, m, &qp).unwrap();
        let scale = sup_on_grid(|t, p| y.evaluate(t, p).unwrap());
        for kind in CasimirKind::ALL {
            let cy = apply_casimir(&y.function, kind, &qp);
            let c = casimir_eigenvalue(l, kind, &qp);
            let res = sup_on_grid(|t, p| cy.evaluate(t, p).unwrap() - y.evaluate(t, p).unwrap() * c);
            prop_assert!(res <= 1e-9 * scale * (1.0 + c.abs()), "{} l={} m={} w={}: {:e}", kind, l, m, w, res);
        }
    }

    #[test]
    fn j3_weight_and_commutator((l, m) in labels(), w in real_w()) {
        let qp = QParam::real(w).unwrap();
        let y = spherical_harmonic(l, m, &qp).unwrap();
        let scale = sup_on_grid(|t, p| y.evaluate(t, p).unwrap());
        let j3 = apply_j3(&y.function);
        let res = sup_on_grid(|t, p| j3.evaluate(t, p).unwrap() - y.evaluate(t, p).unwrap() * f64::from(m));
        prop_assert!(res <= 1e-12 * scale.max(1.0));
        let comm = commutator_plus_minus(&y.function, &qp);
        let b = bracket(f64::from(2 * m), &qp);
        let res = sup_on_grid(|t, p| comm.evaluate(t, p).unwrap() - y.evaluate(t, p).unwrap() * b);
        prop_assert!(res <= 1e-9 * scale * (1.0 + b.abs()));
    }

    #[test]
    fn phi_dependence_is_a_phase((l, m) in labels(), w in real_w(), theta in 0.1f64..3.0) {
        let y = spherical_harmonic(l, m, &QParam::real(w).unwrap()).unwrap();
        let a = y.evaluate(theta, 0.0).unwrap().norm();
        for phi in [0.7, 2.0, 4.5] {
            prop_assert!((y.evaluate(theta, phi).unwrap().norm() - a).abs() <= 1e-12 * (1.0 + a));
        }
    }
}

#[test]
fn ladder_endpoints_vanish() {
    for w in [0.3, -0.8] {
        let qp = QParam::real(w).unwrap();
        for l in 0..=4u32 {
            let li = l as i32;
            let top = spherical_harmonic(l, li, &qp).unwrap();
            let bottom = spherical_harmonic(l, -li, &qp).unwrap();
            let up = apply_jplus(&top.function, &qp);
            let down = apply_jminus(&bottom.function, &qp);
            let scale = sup_on_grid(|t, p| top.evaluate(t, p).unwrap());
            assert!(sup_on_grid(|t, p| up.evaluate(t, p).unwrap()) <= 1e-12 * scale.max(1.0));
            assert!(sup_on_grid(|t, p| down.evaluate(t, p).unwrap()) <= 1e-12 * scale.max(1.0));
        }
    }
}

#[test]
fn deformed_product_is_orthonormal_on_samples() {
    let cases = [
        (QParam::real(0.5).unwrap(), vec![(0, 0), (1, 0), (2, 0), (2, 1), (3, -1)]),
        (QParam::unit_circle(0.3).unwrap(), vec![(0, 0), (1, 1), (2, 1), (3, 1)]),
    ];
    for (qp, labels) in cases {
        for &a in &labels {
            for &b in &labels {
                let v = deformed_inner_product(a.0, a.1, b.0, b.1, &qp).unwrap();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((v.re - expect).abs() < 1e-8 && v.im.abs() < 1e-8, "{qp} {a:?} {b:?}: {v}");
            }
        }
    }
}

#[test]
fn harmonic_json_round_trip() {
    let qp = QParam::real(0.4).unwrap();
    let y = spherical_harmonic(2, -1, &qp).unwrap();
    let js = serde_json::to_string(&y).unwrap();
    let back: qosc::angular::QSphericalHarmonic = serde_json::from_str(&js).unwrap();
    assert_eq!(back.evaluate(1.1, 0.3).unwrap(), y.evaluate(1.1, 0.3).unwrap());
}
