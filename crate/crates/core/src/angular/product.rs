//! Deformed angular scalar product under which the `Y_{lmq}` are
//! orthonormal.
//!
//! ```text
//! ⟨l'm'|g|lm⟩_q = (q − q⁻¹)/(4 ln q) ∫ dΩ [
//!     conj(Y_{l'm',a}) (sin²(θ/2) + q⁻² cos²(θ/2))⁻¹ q^{sinθ∂θ − 1} (g Y_{lm,q})
//!   + conj(Y_{l'm',b}) (sin²(θ/2) + q² cos²(θ/2))⁻¹ q^{−sinθ∂θ + 1} (g Y_{lm,1/q}) ]
//! ```
//!
//! with `(a, b) = (1/q, q)` on the real axis and `(q, 1/q)` on the unit
//! circle. The φ integral is done analytically. The θ integral runs over
//! `u = ln η`, `η = ρ² = cot²(θ/2)`, where `sinθ dθ = 2η/(1+η)² du`: the
//! harmonics change on the scales `η ~ q^{±2k}`, which are evenly spaced in
//! `u`, and the integrand can reach `e^{w l(l+1)}` near the poles, so any
//! variable that crowds those scales together loses digits to cancellation.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::function::AngularFunction;
use super::harmonic::spherical_harmonic;
use super::operators::{scale_operator, ScaleOp};
use crate::error::{Error, Result};
use crate::qnum::{QParam, Regime};
use crate::quad::{integrate_with_breaks, QuadConfig};

/// Imaginary parts above this are reported as [`Error::ImaginaryResidue`].
pub const IMAGINARY_TOL: f64 = 1e-8;

/// `|u| ≤ U_MAX`; the neglected tails are `O(e^{w l(l+1) − U_MAX})`.
const U_MAX: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarProduct {
    pub value: Complex64,
    /// Quadrature error estimate.
    pub error: f64,
}

/// `(q − q⁻¹)/(4 ln q)`, with the limit ½ at q = 1.
pub fn scalar_product_prefactor(qp: &QParam) -> f64 {
    if qp.is_undeformed() {
        return 0.5;
    }
    (qp.q_minus_qinv() / (qp.ln_q() * 4.0)).re
}

/// Matrix element of a multiplicative operator `g` (azimuthal index 0)
/// between two harmonics.
pub fn deformed_matrix_element(
    bra: (u32, i32),
    multiplier: &AngularFunction,
    ket: (u32, i32),
    qp: &QParam,
    cfg: &QuadConfig,
) -> Result<ScalarProduct> {
    let (lb, mb) = bra;
    let (lk, mk) = ket;
    if multiplier.m() != 0 {
        return Err(Error::Domain("multiplier must have azimuthal index 0".into()));
    }
    let inv = qp.inverse();
    // Validate all four harmonics even when the φ integral vanishes.
    let ket_q = spherical_harmonic(lk, mk, qp)?;
    let ket_inv = spherical_harmonic(lk, mk, &inv)?;
    let bra_q = spherical_harmonic(lb, mb, qp)?;
    let bra_inv = spherical_harmonic(lb, mb, &inv)?;
    if mb != mk {
        return Ok(ScalarProduct {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
        });
    }
    let (bra_a, bra_b) = match qp.regime() {
        Regime::RealPositive => (bra_inv, bra_q),
        Regime::UnitCircle => (bra_q, bra_inv),
    };
    let bra_a = bra_a.function.conj();
    let bra_b = bra_b.function.conj();
    let q = qp.q();
    let qinv = q.inv();
    let ket_a = scale_operator(&(multiplier * &ket_q.function), ScaleOp::SinThetaDTheta, 1.0, qp) * qinv;
    let ket_b = scale_operator(&(multiplier * &ket_inv.function), ScaleOp::SinThetaDTheta, -1.0, qp) * q;
    let q2 = q * q;
    let qm2 = qinv * qinv;
    let one = Complex64::new(1.0, 0.0);

    let integrand = |u: f64| -> Complex64 {
        let eta = u.exp();
        let rho = Complex64::new((0.5 * u).exp(), 0.0);
        let lift = 1.0 + eta;
        let first = bra_a.eval_rho(rho) * ket_a.eval_rho(rho) * (lift / (one + qm2 * eta));
        let second = bra_b.eval_rho(rho) * ket_b.eval_rho(rho) * (lift / (one + q2 * eta));
        (first + second) * (2.0 * eta / (lift * lift))
    };
    let breaks: Vec<f64> = (-12..=12).map(|k| f64::from(k) * (U_MAX / 12.0)).collect();
    let res = integrate_with_breaks(integrand, &breaks, cfg)?;
    let scale = 2.0 * PI * scalar_product_prefactor(qp);
    Ok(ScalarProduct {
        value: res.value * scale,
        error: res.error * scale.abs(),
    })
}

/// `⟨l'm'|lm⟩_q`. The result is real for valid parameters; an imaginary
/// part above [`IMAGINARY_TOL`] is an error.
pub fn deformed_inner_product(
    lp: u32,
    mp: i32,
    l: u32,
    m: i32,
    qp: &QParam,
) -> Result<Complex64> {
    let one = AngularFunction::constant(Complex64::new(1.0, 0.0));
    let sp = deformed_matrix_element((lp, mp), &one, (l, m), qp, &QuadConfig::default())?;
    if sp.value.im.abs() > IMAGINARY_TOL {
        return Err(Error::ImaginaryResidue { imag: sp.value.im });
    }
    Ok(Complex64::new(sp.value.re, 0.0))
}

/// Labels `(l, m)` with `l ≤ l_max` whose harmonics exist at `qp` and `1/q`.
pub fn constructible_labels(l_max: u32, qp: &QParam) -> Vec<(u32, i32)> {
    let mut out = Vec::new();
    for l in 0..=l_max {
        for m in -(l as i32)..=(l as i32) {
            if spherical_harmonic(l, m, qp).is_ok() && spherical_harmonic(l, m, &qp.inverse()).is_ok() {
                out.push((l, m));
            }
        }
    }
    out
}

/// Gram matrix of the given harmonics (row = bra, column = ket).
pub fn gram_matrix(labels: &[(u32, i32)], qp: &QParam) -> Result<Vec<Vec<f64>>> {
    labels
        .iter()
        .map(|&(lb, mb)| {
            labels
                .iter()
                .map(|&(lk, mk)| deformed_inner_product(lb, mb, lk, mk, qp).map(|z| z.re))
                .collect()
        })
        .collect()
}
