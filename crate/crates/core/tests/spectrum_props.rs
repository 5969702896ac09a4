use proptest::prelude::*;
use qosc::radial::{alpha_roots, RootBranch};
use qosc::spectrum::{energy_closed_form, energy_series, enumerate_levels, Level};
use qosc::{CasimirKind, QParam, Regime};

fn kind() -> impl Strategy<Value = CasimirKind> {
    prop_oneof![Just(CasimirKind::Cq), Just(CasimirKind::CqPrime)]
}

fn param() -> impl Strategy<Value = QParam> {
    prop_oneof![
        (-4.0f64..4.0).prop_map(|w| QParam::real(w).unwrap()),
        (0.01f64..3.13).prop_filter_map("root of unity", |w| QParam::unit_circle(w).ok()),
    ]
}

fn key(lv: &Level) -> (u32, u32, CasimirKind, RootBranch, u64, u64) {
    (lv.n, lv.l, lv.kind, lv.branch, lv.alpha.to_bits(), lv.energy.to_bits())
}

fn energy_of(n: u32, l: u32, kind: CasimirKind, branch: RootBranch, qp: &QParam) -> Option<f64> {
    alpha_roots(l, kind, qp)
        .into_iter()
        .find(|(b, _)| *b == branch)
        .map(|(_, a)| 2.0 * f64::from(n) + a + 0.5)
}

proptest! {
    #[test]
    fn closed_forms_agree_with_roots(qp in param(), l in 0u32..=6, k in kind(), n in 0u32..4) {
        for branch in [RootBranch::Plus, RootBranch::Minus] {
            let from_roots = energy_of(n, l, k, branch, &qp);
            let closed = energy_closed_form(n, l, k, branch, &qp).ok();
            match (from_roots, closed) {
                (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{} {} {} {}: {} {}", qp, l, k, branch, a, b),
                (None, None) => {}
                // existence can only disagree on a classifier boundary
                (a, b) => prop_assert!(false, "{} l={} {} {}: {:?} vs {:?}", qp, l, k, branch, a, b),
            }
        }
    }

    #[test]
    fn invariant_under_inversion(qp in param(), k in kind()) {
        let a: Vec<_> = enumerate_levels(3, 5, k, &qp).iter().map(key).collect();
        let b: Vec<_> = enumerate_levels(3, 5, k, &qp.inverse()).iter().map(key).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn levels_are_sorted_and_complete(qp in param(), k in kind()) {
        let levels = enumerate_levels(2, 4, k, &qp);
        for pair in levels.windows(2) {
            prop_assert!(pair[0].energy <= pair[1].energy);
        }
        let expected: usize = (0..=4).map(|l| alpha_roots(l, k, &qp).len() * 3).sum();
        prop_assert_eq!(levels.len(), expected);
    }

    #[test]
    fn shells_split_when_deformed(w in 0.01f64..3.0, k in kind()) {
        let qp = QParam::real(w).unwrap();
        let levels = enumerate_levels(4, 8, k, &qp);
        for big_n in 0..=8u32 {
            let shell: Vec<f64> = levels
                .iter()
                .filter(|lv| lv.branch == RootBranch::Plus && 2 * lv.n + lv.l == big_n)
                .map(|lv| lv.energy)
                .collect();
            for (i, a) in shell.iter().enumerate() {
                for b in &shell[i + 1..] {
                    prop_assert!((a - b).abs() > 1e-10, "N={} w={}: {} {}", big_n, w, a, b);
                }
            }
        }
    }
}

#[test]
fn shells_split_on_the_unit_circle_near_one() {
    for k in 1..=100 {
        let w = 0.01 * f64::from(k);
        let Ok(qp) = QParam::unit_circle(w) else { continue };
        for kind in CasimirKind::ALL {
            let levels = enumerate_levels(3, 6, kind, &qp);
            for big_n in 0..=6u32 {
                let shell: Vec<f64> = levels
                    .iter()
                    .filter(|lv| lv.branch == RootBranch::Plus && 2 * lv.n + lv.l == big_n)
                    .map(|lv| lv.energy)
                    .collect();
                for (i, a) in shell.iter().enumerate() {
                    for b in &shell[i + 1..] {
                        assert!((a - b).abs() > 1e-10, "N={big_n} w={w}: {a} {b}");
                    }
                }
            }
        }
    }
}

fn energies_along(regime: Regime, n: u32, l: u32, kind: CasimirKind, branch: RootBranch) -> Vec<f64> {
    (1..=40)
        .map(|k| {
            let qp = QParam::new(regime, 0.005 * f64::from(k)).unwrap();
            energy_of(n, l, kind, branch, &qp).unwrap()
        })
        .collect()
}

fn strictly(v: &[f64], increasing: bool) -> bool {
    v.windows(2).all(|p| if increasing { p[1] > p[0] } else { p[1] < p[0] })
}

#[test]
fn monotone_near_undeformed_point_real() {
    use CasimirKind::*;
    use RootBranch::*;
    for n in 0..=2 {
        for l in 1..=4 {
            for kind in [Cq, CqPrime] {
                assert!(strictly(&energies_along(Regime::RealPositive, n, l, kind, Plus), true), "{kind} n={n} l={l}");
            }
        }
        assert!(strictly(&energies_along(Regime::RealPositive, n, 0, Cq, Plus), false));
        assert!(strictly(&energies_along(Regime::RealPositive, n, 0, Cq, Minus), true));
        let flat = energies_along(Regime::RealPositive, n, 0, CqPrime, Plus);
        assert!(flat.iter().all(|e| *e == 2.0 * f64::from(n) + 1.5));
    }
}

#[test]
fn monotone_near_undeformed_point_circle() {
    use CasimirKind::*;
    use RootBranch::*;
    for n in 0..=2 {
        for l in 1..=4 {
            for kind in [Cq, CqPrime] {
                assert!(strictly(&energies_along(Regime::UnitCircle, n, l, kind, Plus), false), "{kind} n={n} l={l}");
            }
        }
        assert!(strictly(&energies_along(Regime::UnitCircle, n, 0, Cq, Plus), true));
        let flat = energies_along(Regime::UnitCircle, n, 0, CqPrime, Plus);
        assert!(flat.iter().all(|e| *e == 2.0 * f64::from(n) + 1.5));
    }
}

#[test]
fn series_error_is_sixth_order() {
    for regime in [Regime::RealPositive, Regime::UnitCircle] {
        for kind in CasimirKind::ALL {
            for l in 0..=2 {
                let err = |w: f64| {
                    let qp = QParam::new(regime, w).unwrap();
                    let exact = energy_closed_form(1, l, kind, RootBranch::Plus, &qp).unwrap();
                    (exact - energy_series(1, l, kind, RootBranch::Plus, &qp, 4).unwrap()).abs()
                };
                let (a, b) = (err(0.16), err(0.08));
                if kind == CasimirKind::CqPrime && l == 0 {
                    // E'_{n0q} is exactly 2n + 3/2, so the series is exact
                    assert!(a < 1e-15 && b < 1e-15);
                    continue;
                }
                let ratio = a / b;
                assert!((48.0..=80.0).contains(&ratio), "{regime} {kind} l={l}: {ratio}");
            }
        }
    }
}
