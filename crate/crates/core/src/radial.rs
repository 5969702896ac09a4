//! Radial sector: admissible exponents `α`, the closed-form solutions
//! `S_{nlq}(r) = √(2 n!) Γ(α+n+½)^{−1/2} e^{−r²/2} r^α L_n^{α−½}(r²)`,
//! energies and `⟨r²⟩`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qnum::{casimir_eigenvalue, gamma_q, lambda_q, CasimirKind, QParam, Regime};
use crate::quad::{integrate_with_breaks, QuadConfig};
use crate::special::{laguerre, ln_factorial, ln_gamma};

/// Tolerance on `(γ'_q(l) + sin²w) / (4 sin²w) = ¼ + C'_q(l)` for the
/// single-root boundary `α = ½`. Normalizing by `4 sin²w` keeps the test
/// meaningful near q = 1, where both terms vanish like `w²`.
pub const GAMMA_BOUNDARY_TOL: f64 = 1e-12;

/// `α_± = ½ ± λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootBranch {
    Plus,
    Minus,
}

impl RootBranch {
    pub fn sign(self) -> f64 {
        match self {
            RootBranch::Plus => 1.0,
            RootBranch::Minus => -1.0,
        }
    }
}

impl fmt::Display for RootBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootBranch::Plus => f.write_str("plus"),
            RootBranch::Minus => f.write_str("minus"),
        }
    }
}

/// Admissible (positive) roots of `α(α − 1) = C(l)`.
///
/// Returns zero, one or two roots depending on regime, Casimir choice and
/// the sign of the γ classifiers on the unit circle.
pub fn alpha_roots(l: u32, kind: CasimirKind, qp: &QParam) -> Vec<(RootBranch, f64)> {
    let plus_only = |lambda: f64| vec![(RootBranch::Plus, 0.5 + lambda)];
    let both = |lambda: f64| {
        let mut v = vec![(RootBranch::Plus, 0.5 + lambda)];
        if 0.5 - lambda > 0.0 {
            v.push((RootBranch::Minus, 0.5 - lambda));
        }
        v
    };
    let lambda = match lambda_q(l, kind, qp) {
        Ok(v) => v,
        Err(_) => return vec![],
    };
    match (qp.regime(), kind) {
        (Regime::RealPositive, CasimirKind::Cq) => {
            if l == 0 && !qp.is_undeformed() {
                both(lambda)
            } else {
                plus_only(lambda)
            }
        }
        (Regime::RealPositive, CasimirKind::CqPrime) => plus_only(lambda),
        (Regime::UnitCircle, CasimirKind::Cq) => {
            let gamma = gamma_q(l, kind, qp).expect("unit-circle regime");
            if gamma < 0.0 {
                both(lambda)
            } else {
                plus_only(lambda)
            }
        }
        (Regime::UnitCircle, CasimirKind::CqPrime) => {
            let gamma = gamma_q(l, kind, qp).expect("unit-circle regime");
            let s2 = qp.w().sin().powi(2);
            if ((gamma + s2) / (4.0 * s2)).abs() <= GAMMA_BOUNDARY_TOL {
                vec![(RootBranch::Plus, 0.5)]
            } else if gamma >= 0.0 {
                plus_only(lambda)
            } else if gamma > -s2 {
                both(lambda)
            } else {
                vec![]
            }
        }
    }
}

/// One radial solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialState {
    n: u32,
    l: u32,
    alpha: f64,
    kind: CasimirKind,
    branch: RootBranch,
    qp: QParam,
}

impl RadialState {
    /// Builds the state on the requested branch, failing when that root is
    /// not admissible.
    pub fn new(n: u32, l: u32, kind: CasimirKind, branch: RootBranch, qp: &QParam) -> Result<Self> {
        let roots = alpha_roots(l, kind, qp);
        let alpha = roots
            .iter()
            .find(|(b, _)| *b == branch)
            .map(|(_, a)| *a)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "no admissible {branch} root for l = {l}, {kind} at {qp} (admissible: {})",
                    roots
                        .iter()
                        .map(|(b, _)| b.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })?;
        Ok(RadialState {
            n,
            l,
            alpha,
            kind,
            branch,
            qp: *qp,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn kind(&self) -> CasimirKind {
        self.kind
    }
    pub fn branch(&self) -> RootBranch {
        self.branch
    }
    pub fn qp(&self) -> &QParam {
        &self.qp
    }

    /// `C(l)` of the state's Casimir choice.
    pub fn casimir(&self) -> f64 {
        casimir_eigenvalue(self.l, self.kind, &self.qp)
    }

    /// Same (l, kind, branch), different radial quantum number.
    pub fn with_n(&self, n: u32) -> Self {
        RadialState { n, ..*self }
    }
}

/// `S_{nlq}(r)`, evaluated in log space so large `α` or `r` neither
/// overflow nor lose the Gaussian decay.
pub fn radial_wavefunction(state: &RadialState, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let n = state.n;
    let a = state.alpha;
    let ln_norm = 0.5 * (2f64.ln() + ln_factorial(n) - ln_gamma(a + f64::from(n) + 0.5));
    let x = r * r;
    let poly = laguerre(n, a - 0.5, x);
    (ln_norm + a * r.ln() - 0.5 * x).exp() * poly
}

/// `E = 2n + α + ½`.
pub fn energy(state: &RadialState) -> f64 {
    2.0 * f64::from(state.n) + state.alpha + 0.5
}

/// `⟨n l|r²|n l⟩_q = 2n + α + ½`.
pub fn radial_r2_matrix_element(state: &RadialState) -> f64 {
    2.0 * f64::from(state.n) + state.alpha + 0.5
}

/// `∫₀^∞ f dr` for products of radial solutions.
///
/// The integrand lives near `r ≈ √α`, which for large `α` is a narrow bump
/// far out on the axis; a map of `[0, ∞)` onto a finite interval can step
/// over it. Instead the range is cut at `√(2E) + 12`, beyond which the
/// Gaussian tail is below `e^{−140}`, and seeded with unit panels.
fn radial_integral(f: impl Fn(f64) -> f64, e_max: f64, cfg: &QuadConfig) -> Result<f64> {
    let r_max = (2.0 * e_max).sqrt() + 12.0;
    let panels = r_max.ceil() as usize;
    let breaks: Vec<f64> = (0..=panels).map(|k| r_max * k as f64 / panels as f64).collect();
    Ok(integrate_with_breaks(f, &breaks, cfg)?.value)
}

/// `∫₀^∞ S_a S_b dr` by quadrature.
pub fn radial_overlap(a: &RadialState, b: &RadialState, cfg: &QuadConfig) -> Result<f64> {
    radial_integral(
        |r| radial_wavefunction(a, r) * radial_wavefunction(b, r),
        energy(a).max(energy(b)),
        cfg,
    )
}

/// `∫₀^∞ S² r² dr` by quadrature.
pub fn radial_r2_quadrature(state: &RadialState, cfg: &QuadConfig) -> Result<f64> {
    radial_integral(
        |r| {
            let s = radial_wavefunction(state, r);
            s * s * r * r
        },
        energy(state),
        cfg,
    )
}
