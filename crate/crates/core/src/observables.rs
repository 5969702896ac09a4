//! Quadrupole moment `Q_{n0q} = ⟨n0|r²|n0⟩_q ⟨00|3cos²θ − 1|00⟩_q` of the
//! l = 0 states.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angular::{deformed_matrix_element, scalar_product_prefactor, AngularFunction};
use crate::error::{Error, Result};
use crate::qnum::{CasimirKind, QParam, Regime};
use crate::quad::{integrate_semi_infinite, QuadConfig};
use crate::radial::{radial_r2_matrix_element, RadialState, RootBranch};

/// Below this `|w|` the closed forms are replaced by their Taylor series,
/// since both lose digits to cancellation as `w → 0`.
pub const SERIES_THRESHOLD: f64 = 5e-2;

/// Imaginary part tolerated on `I_q + I_{1/q}`.
pub const SYMMETRIZED_IMAG_TOL: f64 = 1e-8;

// Taylor coefficients of w², w⁴, … w¹⁰ in the real regime; the unit-circle
// series follows from w → iw.
const ANGULAR_SERIES: [f64; 5] = [
    4.0 / 15.0,
    -4.0 / 105.0,
    8.0 / 1575.0,
    -4.0 / 6237.0,
    5528.0 / 70_945_875.0,
];
const IQ_SERIES: [f64; 6] = [
    1.0 / 3.0,
    1.0 / 30.0,
    -53.0 / 2520.0,
    367.0 / 75600.0,
    -5689.0 / 6_652_800.0,
    7_198_361.0 / 54_486_432_000.0,
];

/// `Σ c_k u^k` with `u = ±w²` chosen by regime.
fn even_series(coeffs: &[f64], first_power: i32, qp: &QParam) -> f64 {
    let w2 = qp.w() * qp.w();
    let u = match qp.regime() {
        Regime::RealPositive => w2,
        Regime::UnitCircle => -w2,
    };
    coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * u + c)
        * u.powi(first_power)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IqMethod {
    Closed,
    Quadrature,
}

/// `Q_{nl} = (2n + l + 3/2)(−2l/(2l+3))`.
pub fn undeformed_quadrupole(n: u32, l: u32) -> f64 {
    let l = f64::from(l);
    (2.0 * f64::from(n) + l + 1.5) * (-2.0 * l / (2.0 * l + 3.0))
}

/// `⟨00|3cos²θ − 1|00⟩_q`:
/// `(2cosh²w + 1)/sinh²w − 3cosh w/(w sinh w)` for real q and
/// `−(2cos²w + 1)/sin²w + 3cos w/(w sin w)` on the unit circle.
pub fn quadrupole_angular_closed(qp: &QParam) -> f64 {
    let w = qp.w().abs();
    if w < SERIES_THRESHOLD {
        return even_series(&ANGULAR_SERIES, 1, qp);
    }
    match qp.regime() {
        Regime::RealPositive => {
            let (s, c) = (w.sinh(), w.cosh());
            (2.0 * c * c + 1.0) / (s * s) - 3.0 * c / (w * s)
        }
        Regime::UnitCircle => {
            let (s, c) = w.sin_cos();
            -(2.0 * c * c + 1.0) / (s * s) + 3.0 * c / (w * s)
        }
    }
}

/// `I_q` as a complex number.
///
/// `Closed` evaluates `8π (q+q⁻¹)/(q−q⁻¹)² ((q+q⁻¹)/(q−q⁻¹) ln q − 1)`.
/// `Quadrature` integrates along the ray `η = s q`, `s ≥ 0`: on the unit
/// circle this ray stays between the poles `η = −1` and `η = −q²`, so the
/// result is the analytic continuation of the closed form for all
/// `0 < w < π`. The real η axis would pick up a residue once `w > π/2`.
pub fn iq_integral_complex(qp: &QParam, method: IqMethod) -> Result<Complex64> {
    match method {
        IqMethod::Closed => {
            if qp.w().abs() < SERIES_THRESHOLD {
                return Ok(Complex64::new(4.0 * PI * even_series(&IQ_SERIES, 0, qp), 0.0));
            }
            let q = qp.q();
            let plus = q + q.inv();
            let minus = qp.q_minus_qinv();
            Ok(8.0 * PI * plus / (minus * minus) * (plus / minus * qp.ln_q() - 1.0))
        }
        IqMethod::Quadrature => {
            let q = qp.q();
            let qinv = q.inv();
            let cfg = QuadConfig {
                abs_tol: 1e-12,
                rel_tol: 1e-13,
                ..QuadConfig::default()
            };
            let res = integrate_semi_infinite(
                |s: f64| {
                    let a = 1.0 - qinv * s;
                    let b = 1.0 + qinv * s;
                    a * a / ((1.0 + q * s) * b * b * b)
                },
                &cfg,
            )?;
            Ok(res.value * (4.0 * PI))
        }
    }
}

/// Real part of `I_q`.
pub fn iq_integral(qp: &QParam, method: IqMethod) -> Result<f64> {
    Ok(iq_integral_complex(qp, method)?.re)
}

/// `3(q − q⁻¹)/(16π ln q) (I_q + I_{1/q}) − 1`.
pub fn quadrupole_angular_via_integrals(qp: &QParam, method: IqMethod) -> Result<f64> {
    let sum = iq_integral_complex(qp, method)? + iq_integral_complex(&qp.inverse(), method)?;
    if sum.im.abs() > SYMMETRIZED_IMAG_TOL {
        return Err(Error::ImaginaryResidue { imag: sum.im });
    }
    // (q − q⁻¹)/ln q = 4 × the scalar-product prefactor
    let ratio = 4.0 * scalar_product_prefactor(qp);
    Ok(3.0 * ratio / (16.0 * PI) * sum.re - 1.0)
}

/// `⟨00|3cos²θ − 1|00⟩_q` straight from the deformed scalar product of
/// the angular module (independent of `I_q`).
pub fn quadrupole_angular_via_scalar_product(qp: &QParam) -> Result<f64> {
    let c = AngularFunction::cos_theta();
    let g = &c * &c * 3.0 - AngularFunction::constant(Complex64::new(1.0, 0.0));
    let cfg = QuadConfig {
        abs_tol: 1e-12,
        ..QuadConfig::default()
    };
    let sp = deformed_matrix_element((0, 0), &g, (0, 0), qp, &cfg)?;
    if sp.value.im.abs() > SYMMETRIZED_IMAG_TOL {
        return Err(Error::ImaginaryResidue { imag: sp.value.im });
    }
    Ok(sp.value.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadrupoleResult {
    pub n: u32,
    pub kind: CasimirKind,
    pub branch: RootBranch,
    pub radial_part: f64,
    pub angular_part: f64,
    pub value: f64,
    pub qp: QParam,
}

/// `Q_{n0q}` (kind `Cq`) or `Q'_{n0q}` (kind `CqPrime`) on the given branch.
pub fn quadrupole_moment(n: u32, kind: CasimirKind, branch: RootBranch, qp: &QParam) -> Result<QuadrupoleResult> {
    let state = RadialState::new(n, 0, kind, branch, qp)?;
    let radial_part = radial_r2_matrix_element(&state);
    let angular_part = quadrupole_angular_closed(qp);
    Ok(QuadrupoleResult {
        n,
        kind,
        branch,
        radial_part,
        angular_part,
        value: radial_part * angular_part,
        qp: *qp,
    })
}
