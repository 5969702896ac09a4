//! Scalar q-arithmetic: brackets, factorials, Casimir eigenvalues and the
//! root classifiers λ and γ.
//!
//! The deformation parameter is carried as a regime plus a real angle `w`:
//! `q = e^w` on the positive real axis or `q = e^{iw}` on the unit circle.
//! Every scalar here is even in `w`, which is what makes the spectrum
//! invariant under `q → 1/q`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this |w| the brackets switch to their Taylor expansion.
pub const SMALL_W: f64 = 1e-6;
/// Largest denominator screened when rejecting roots of unity.
pub const ROOT_OF_UNITY_MAX_DENOM: u32 = 64;
/// Distance from `πp/s` below which a unit-circle angle is rejected.
pub const ROOT_OF_UNITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `q = e^w`, `w` real.
    RealPositive,
    /// `q = e^{iw}`, `0 < |w| < π`.
    UnitCircle,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::RealPositive => f.write_str("real"),
            Regime::UnitCircle => f.write_str("circle"),
        }
    }
}

/// Which su_q(2) Casimir operator enters the radial equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CasimirKind {
    /// `C_q = J₊J₋ + [J₃ − ½]² − ¼`
    Cq,
    /// `C'_q = J₊J₋ + [J₃][J₃ − 1]`
    CqPrime,
}

impl CasimirKind {
    pub const ALL: [CasimirKind; 2] = [CasimirKind::Cq, CasimirKind::CqPrime];
}

impl fmt::Display for CasimirKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CasimirKind::Cq => f.write_str("cq"),
            CasimirKind::CqPrime => f.write_str("cqprime"),
        }
    }
}

/// Deformation parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QParam {
    regime: Regime,
    w: f64,
}

impl QParam {
    /// Validating constructor.
    ///
    /// `RealPositive` accepts any finite `w` (`w = 0` is the undeformed point
    /// q = 1; negative `w` is the inverse parameter). `UnitCircle` requires
    /// `0 < |w| < π` away from every angle `πp/s` with `s ≤ 64`.
    pub fn new(regime: Regime, w: f64) -> Result<Self> {
        if !w.is_finite() {
            return Err(Error::InvalidParameter(format!("w must be finite, got {w}")));
        }
        if regime == Regime::UnitCircle {
            if w == 0.0 || w.abs() >= PI {
                return Err(Error::InvalidParameter(format!(
                    "unit-circle w must satisfy 0 < |w| < π, got {w}"
                )));
            }
            if let Some((p, s, _)) =
                nearest_root_of_unity(w, ROOT_OF_UNITY_MAX_DENOM, ROOT_OF_UNITY_TOL)
            {
                return Err(Error::RootOfUnity {
                    w,
                    p,
                    s,
                    tol: ROOT_OF_UNITY_TOL,
                });
            }
        }
        Ok(QParam { regime, w })
    }

    pub fn real(w: f64) -> Result<Self> {
        Self::new(Regime::RealPositive, w)
    }

    pub fn unit_circle(w: f64) -> Result<Self> {
        Self::new(Regime::UnitCircle, w)
    }

    /// The undeformed point q = 1.
    pub fn undeformed() -> Self {
        QParam {
            regime: Regime::RealPositive,
            w: 0.0,
        }
    }

    /// Unit-circle parameter without root-of-unity screening.
    ///
    /// Scalar formulas (brackets, Casimir eigenvalues, γ, closed-form
    /// energies) stay well defined at roots of unity; harmonics and
    /// quadratures do not. Only finiteness is checked.
    pub fn unit_circle_unchecked(w: f64) -> Result<Self> {
        if !w.is_finite() || w == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "unit-circle w must be finite and nonzero, got {w}"
            )));
        }
        Ok(QParam {
            regime: Regime::UnitCircle,
            w,
        })
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    /// `q → 1/q`, i.e. `w → −w`.
    pub fn inverse(&self) -> Self {
        QParam {
            regime: self.regime,
            w: -self.w,
        }
    }

    pub fn is_undeformed(&self) -> bool {
        self.w == 0.0
    }

    /// `q^x` on the principal branch `e^{x ln q}`, `ln q = w` or `iw`.
    pub fn pow(&self, x: f64) -> Complex64 {
        match self.regime {
            Regime::RealPositive => Complex64::new((x * self.w).exp(), 0.0),
            Regime::UnitCircle => Complex64::from_polar(1.0, x * self.w),
        }
    }

    pub fn q(&self) -> Complex64 {
        self.pow(1.0)
    }

    /// `ln q` (real `w` or imaginary `iw`).
    pub fn ln_q(&self) -> Complex64 {
        match self.regime {
            Regime::RealPositive => Complex64::new(self.w, 0.0),
            Regime::UnitCircle => Complex64::new(0.0, self.w),
        }
    }

    /// `q − q⁻¹`: `2 sinh w` or `2i sin w`.
    pub fn q_minus_qinv(&self) -> Complex64 {
        match self.regime {
            Regime::RealPositive => Complex64::new(2.0 * self.w.sinh(), 0.0),
            Regime::UnitCircle => Complex64::new(0.0, 2.0 * self.w.sin()),
        }
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:w={}", self.regime, self.w)
    }
}

/// Finds a fraction `p/s` (`1 ≤ s ≤ s_max`) with `|w − πp/s| < tol`.
///
/// Returns the lowest-denominator match as `(p, s, distance)`.
pub fn nearest_root_of_unity(w: f64, s_max: u32, tol: f64) -> Option<(i64, u32, f64)> {
    for s in 1..=s_max {
        let p = (w * f64::from(s) / PI).round();
        let dist = (w - PI * p / f64::from(s)).abs();
        if dist < tol {
            return Some((p as i64, s, dist));
        }
    }
    None
}

/// q-bracket `[x]_q = (q^x − q^{−x})/(q − q^{−1})`.
///
/// Evaluates as `sinh(xw)/sinh(w)` or `sin(xw)/sin(w)`; for `|w| < 1e-6`
/// a fourth-order expansion in `w` is used instead.
pub fn bracket(x: f64, qp: &QParam) -> f64 {
    let w = qp.w.abs();
    if w < SMALL_W {
        let w2 = w * w;
        let x2 = x * x;
        let second = (x2 - 1.0) / 6.0;
        let fourth = (3.0 * x2 * x2 - 10.0 * x2 + 7.0) / 360.0;
        return match qp.regime {
            Regime::RealPositive => x * (1.0 + w2 * (second + w2 * fourth)),
            Regime::UnitCircle => x * (1.0 + w2 * (-second + w2 * fourth)),
        };
    }
    match qp.regime {
        Regime::RealPositive => (x * w).sinh() / w.sinh(),
        Regime::UnitCircle => (x * w).sin() / w.sin(),
    }
}

/// `[x]_q! = [x]_q [x−1]_q … [1]_q`, with `[0]_q! = 1`.
pub fn q_factorial(x: i64, qp: &QParam) -> Result<f64> {
    if x < 0 {
        return Err(Error::Domain(format!("q-factorial of negative argument {x}")));
    }
    Ok((1..=x).map(|j| bracket(j as f64, qp)).product())
}

/// Eigenvalue of the chosen Casimir operator in the spin-`l` sector.
pub fn casimir_eigenvalue(l: u32, kind: CasimirKind, qp: &QParam) -> f64 {
    let l = f64::from(l);
    match kind {
        CasimirKind::Cq => {
            let b = bracket(l + 0.5, qp);
            b * b - 0.25
        }
        CasimirKind::CqPrime => bracket(l, qp) * bracket(l + 1.0, qp),
    }
}

/// `λ_q(l) = sqrt(¼ + C(l))`.
///
/// Fails with [`Error::NoRealRoots`] when the radicand is negative, which
/// only happens for `C'_q` on the unit circle.
pub fn lambda_q(l: u32, kind: CasimirKind, qp: &QParam) -> Result<f64> {
    let radicand = 0.25 + casimir_eigenvalue(l, kind, qp);
    if radicand < 0.0 {
        return Err(Error::NoRealRoots { radicand });
    }
    Ok(radicand.sqrt())
}

/// Unit-circle classifier `γ = 4 sin²w · C(l)`, evaluated from its
/// trigonometric closed form.
pub fn gamma_q(l: u32, kind: CasimirKind, qp: &QParam) -> Result<f64> {
    if qp.regime != Regime::UnitCircle {
        return Err(Error::Domain(
            "γ classifiers are defined for the unit-circle regime only".into(),
        ));
    }
    let w = qp.w;
    let l = f64::from(l);
    Ok(match kind {
        CasimirKind::Cq => 0.5 * (-4.0 * ((2.0 * l + 1.0) * w).cos() + (2.0 * w).cos() + 3.0),
        CasimirKind::CqPrime => 4.0 * ((l + 1.0) * w).sin() * (l * w).sin(),
    })
}
