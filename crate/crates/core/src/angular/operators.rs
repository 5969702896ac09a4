//! Exact action of `q^T`, `[T]_q`, `J₃`, `J±` and the Casimir operators on
//! [`AngularFunction`]s.
//!
//! With `ρ = cot(θ/2)` one has `sinθ ∂θ = −ρ∂ρ`, and on a sector of fixed
//! azimuthal index `m`
//!
//! ```text
//! T₁ = (ρ∂ρ − m)/2,   T₂ = (ρ∂ρ + m)/2,
//! ```
//!
//! so `q^{tT}` is an argument rescaling `ρ → q^{t/2} ρ` times `q^{∓tm/2}`.


use super::function::AngularFunction;
use crate::qnum::{bracket, CasimirKind, QParam, Regime, SMALL_W};

/// Operators whose q-powers act by rescaling ρ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleOp {
    T1,
    T2,
    /// `sinθ ∂θ = −ρ∂ρ`
    SinThetaDTheta,
}

impl ScaleOp {
    /// `(ρ-scaling exponent a, constant b)` such that `Op = a ρ∂ρ + b`.
    fn linear_form(self, m: i32) -> (f64, f64) {
        let m = f64::from(m);
        match self {
            ScaleOp::T1 => (0.5, -0.5 * m),
            ScaleOp::T2 => (0.5, 0.5 * m),
            ScaleOp::SinThetaDTheta => (-1.0, 0.0),
        }
    }
}

/// `q^{t·Op} f`, exact.
pub fn scale_operator(f: &AngularFunction, op: ScaleOp, t: f64, qp: &QParam) -> AngularFunction {
    let (a, b) = op.linear_form(f.m());
    f.rescaled(qp.pow(t * a), qp.pow(t * b))
}

/// `Op f` for the underlying (undeformed) generator.
pub fn apply_generator(f: &AngularFunction, op: ScaleOp) -> AngularFunction {
    let (a, b) = op.linear_form(f.m());
    f.rho_d_rho() * a + f.clone() * b
}

/// `[Op]_q f = (q^{Op} − q^{−Op}) f / (q − q^{−1})`.
///
/// Near q = 1 the operator is expanded to fourth order in `w`:
/// `[T] = T ± (w²/6)(T³ − T) + w⁴ (T⁵/120 − T³/36 + 7T/360)`.
pub fn bracket_operator(f: &AngularFunction, op: ScaleOp, qp: &QParam) -> AngularFunction {
    let w = qp.w().abs();
    if w < SMALL_W {
        let t1 = apply_generator(f, op);
        if w == 0.0 {
            return t1;
        }
        let t3 = apply_generator(&apply_generator(&t1, op), op);
        let t5 = apply_generator(&apply_generator(&t3, op), op);
        let sign = match qp.regime() {
            Regime::RealPositive => 1.0,
            Regime::UnitCircle => -1.0,
        };
        let w2 = w * w;
        let second = (t3.clone() - t1.clone()) * (sign * w2 / 6.0);
        let fourth = (t5 * (1.0 / 120.0) - t3 * (1.0 / 36.0) + t1.clone() * (7.0 / 360.0)) * (w2 * w2);
        return t1 + second + fourth;
    }
    let up = scale_operator(f, op, 1.0, qp);
    let down = scale_operator(f, op, -1.0, qp);
    (up - down) * qp.q_minus_qinv().inv()
}

/// `J₃ f = m f`.
pub fn apply_j3(f: &AngularFunction) -> AngularFunction {
    f.clone() * f64::from(f.m())
}

/// The two ρ-pieces shared by `J₊` and `J₋`: `[T₁] q^{T₂} f` and `q^{T₁} [T₂] f`.
fn ladder_pieces(f: &AngularFunction, qp: &QParam) -> (AngularFunction, AngularFunction) {
    let a = bracket_operator(&scale_operator(f, ScaleOp::T2, 1.0, qp), ScaleOp::T1, qp);
    let b = scale_operator(&bracket_operator(f, ScaleOp::T2, qp), ScaleOp::T1, 1.0, qp);
    (a, b)
}

/// `J₊ = −e^{iφ}(tan(θ/2) [T₁]_q q^{T₂} + cot(θ/2) q^{T₁} [T₂]_q)`.
pub fn apply_jplus(f: &AngularFunction, qp: &QParam) -> AngularFunction {
    let m = f.m();
    let (a, b) = ladder_pieces(f, qp);
    let sum = a.times_rho_power(-1).with_m(m + 1) + b.times_rho_power(1).with_m(m + 1);
    -sum
}

/// `J₋ = e^{−iφ}(cot(θ/2) [T₁]_q q^{T₂} + tan(θ/2) q^{T₁} [T₂]_q)`.
pub fn apply_jminus(f: &AngularFunction, qp: &QParam) -> AngularFunction {
    let m = f.m();
    let (a, b) = ladder_pieces(f, qp);
    a.times_rho_power(1).with_m(m - 1) + b.times_rho_power(-1).with_m(m - 1)
}

/// `C_q f` or `C'_q f`.
pub fn apply_casimir(f: &AngularFunction, kind: CasimirKind, qp: &QParam) -> AngularFunction {
    let m = f64::from(f.m());
    let diag = match kind {
        CasimirKind::Cq => {
            let b = bracket(m - 0.5, qp);
            b * b - 0.25
        }
        CasimirKind::CqPrime => bracket(m, qp) * bracket(m - 1.0, qp),
    };
    apply_jplus(&apply_jminus(f, qp), qp) + f.clone() * diag
}

/// `[J₊, J₋] f`.
pub fn commutator_plus_minus(f: &AngularFunction, qp: &QParam) -> AngularFunction {
    apply_jplus(&apply_jminus(f, qp), qp) - apply_jminus(&apply_jplus(f, qp), qp)
}

/// `[J₃, J±] f`.
pub fn commutator_j3(f: &AngularFunction, raising: bool, qp: &QParam) -> AngularFunction {
    let ladder = |g: &AngularFunction| {
        if raising {
            apply_jplus(g, qp)
        } else {
            apply_jminus(g, qp)
        }
    };
    apply_j3(&ladder(f)) - ladder(&apply_j3(f))
}
