//! q-spherical harmonics `Y_{lmq}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::function::{AngularFunction, Factor, Term};
use crate::error::{Error, Result};
use crate::qnum::{bracket, q_factorial, QParam, Regime};

/// `Y_{lmq} = N_{lmq} Q_{lq}(ρ²) R^l_{m0q}(ρ²) ρ^m e^{imφ}` with its
/// normalization constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QSphericalHarmonic {
    pub l: u32,
    pub m: i32,
    pub qp: QParam,
    pub function: AngularFunction,
    pub norm_constant: Complex64,
}

impl QSphericalHarmonic {
    pub fn evaluate(&self, theta: f64, phi: f64) -> Result<Complex64> {
        self.function.evaluate(theta, phi)
    }
}

fn check_labels(l: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > l {
        return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    Ok(())
}

/// Unnormalized profile `Q_{lq} R^l_{m0q} ρ^m e^{imφ}`.
///
/// Always defined away from roots of unity, also where the normalization
/// constant is not; it is the eigenfunction that the harmonic rescales.
pub fn angular_profile(l: u32, m: i32, qp: &QParam) -> Result<AngularFunction> {
    check_labels(l, m)?;
    let li = i64::from(l);
    let mi = i64::from(m);
    let fact = |x: i64| q_factorial(x, qp);
    let outer = fact(li)? * fact(li - mi)?;
    let q_factors: Vec<Factor> = (0..li)
        .map(|k| Factor {
            c: qp.pow((2 * k - 2 * li) as f64),
            exponent: -1,
        })
        .collect();
    // ([x]!)^{-1} = 0 for negative x restricts the sum.
    let k_lo = 0.max(-mi);
    let k_hi = li.min(li - mi);
    let mut terms = Vec::new();
    for k in k_lo..=k_hi {
        let denom = fact(k)? * fact(li - mi - k)? * fact(li - k)? * fact(mi + k)?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        terms.push(Term::new(
            Complex64::new(sign * outer / denom, 0.0),
            (2 * k + mi) as i32,
            q_factors.clone(),
        ));
    }
    Ok(AngularFunction::new(m, terms))
}

/// `N_{lmq} = (−1)^l ([2l+1]_q [l+m]_q!)^{1/2} (4π [l−m]_q!)^{−1/2}`.
///
/// On the unit circle every bracket `[j]_q`, `1 ≤ j ≤ 2l+1`, must be
/// positive for the square roots to be real; otherwise the harmonic is
/// reported undefined.
pub fn norm_constant(l: u32, m: i32, qp: &QParam) -> Result<f64> {
    check_labels(l, m)?;
    if qp.regime() == Regime::UnitCircle {
        for j in 1..=(2 * l + 1) {
            let value = bracket(f64::from(j), qp);
            if value <= 0.0 {
                return Err(Error::HarmonicUndefined {
                    l,
                    m,
                    w: qp.w(),
                    j,
                    value,
                });
            }
        }
    }
    let li = i64::from(l);
    let mi = i64::from(m);
    let num = bracket(f64::from(2 * l + 1), qp) * q_factorial(li + mi, qp)?;
    let den = 4.0 * PI * q_factorial(li - mi, qp)?;
    let sign = if l.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * (num / den).sqrt())
}

pub fn spherical_harmonic(l: u32, m: i32, qp: &QParam) -> Result<QSphericalHarmonic> {
    let n = norm_constant(l, m, qp)?;
    let profile = angular_profile(l, m, qp)?;
    Ok(QSphericalHarmonic {
        l,
        m,
        qp: *qp,
        function: profile * n,
        norm_constant: Complex64::new(n, 0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y00_is_constant() {
        let y = spherical_harmonic(0, 0, &QParam::real(0.7).unwrap()).unwrap();
        for theta in [0.0, 0.4, 2.0, PI] {
            let v = y.evaluate(theta, 0.3).unwrap();
            assert!((v.re - 0.282_094_8).abs() < 1e-7 && v.im.abs() < 1e-15);
        }
    }

    #[test]
    fn undeformed_low_harmonics() {
        let one = QParam::undeformed();
        let y10 = spherical_harmonic(1, 0, &one).unwrap();
        for theta in [0.3, 1.0, 2.5] {
            let v = y10.evaluate(theta, 0.0).unwrap();
            assert!((v.re - (3.0 / (4.0 * PI)).sqrt() * theta.cos()).abs() < 1e-14);
        }
        assert!(y10.evaluate(PI / 2.0, 0.0).unwrap().norm() < 1e-15);
        let y11 = spherical_harmonic(1, 1, &one).unwrap();
        let v = y11.evaluate(PI / 2.0, 0.0).unwrap();
        assert!((v.re + (3.0 / (8.0 * PI)).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn label_and_domain_errors() {
        let qp = QParam::real(0.5).unwrap();
        assert!(matches!(spherical_harmonic(1, 2, &qp), Err(Error::Domain(_))));
        // [5]_q = sin(3.5)/sin(0.7) < 0
        let c = QParam::unit_circle(0.7).unwrap();
        assert!(matches!(
            spherical_harmonic(2, 0, &c),
            Err(Error::HarmonicUndefined { j: 5, .. })
        ));
        assert!(spherical_harmonic(1, -1, &c).is_ok());
        assert!(angular_profile(2, 0, &c).is_ok());
    }

    #[test]
    fn negative_m_profile_has_nonnegative_powers() {
        let qp = QParam::real(0.4).unwrap();
        let f = angular_profile(3, -2, &qp).unwrap();
        assert!(f.terms().iter().all(|t| t.power >= 2));
    }
}
