//! Self-check suite: every closed form and algebraic identity is compared
//! with an independent evaluation, grouped under named tolerances.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::angular::{
    angular_profile, apply_casimir, apply_j3, apply_jminus, apply_jplus, commutator_j3, commutator_plus_minus,
    constructible_labels, deformed_inner_product, AngularFunction,
};
use crate::error::{Error, Result};
use crate::observables::{quadrupole_angular_closed, quadrupole_angular_via_integrals, IqMethod};
use crate::qnum::{bracket, casimir_eigenvalue, gamma_q, lambda_q, CasimirKind, QParam, Regime};
use crate::quad::QuadConfig;
use crate::radial::{
    alpha_roots, energy, radial_overlap, radial_r2_matrix_element, radial_r2_quadrature, radial_wavefunction,
    RadialState,
};
use crate::spectrum::energy_closed_form;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    Qnum,
    Eigen,
    Commutator,
    Ladder,
    Ortho,
    RadialOrtho,
    Ode,
    R2,
    ClosedForm,
    Quadrupole,
}

impl Group {
    pub const ALL: [Group; 10] = [
        Group::Qnum,
        Group::Eigen,
        Group::Commutator,
        Group::Ladder,
        Group::Ortho,
        Group::RadialOrtho,
        Group::Ode,
        Group::R2,
        Group::ClosedForm,
        Group::Quadrupole,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Qnum => "qnum",
            Group::Eigen => "eigen",
            Group::Commutator => "commutator",
            Group::Ladder => "ladder",
            Group::Ortho => "ortho",
            Group::RadialOrtho => "radial_ortho",
            Group::Ode => "ode",
            Group::R2 => "r2",
            Group::ClosedForm => "closed_form",
            Group::Quadrupole => "quadrupole",
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Group::Qnum => 1e-12,
            Group::Eigen => 1e-9,
            Group::Commutator => 1e-9,
            Group::Ladder => 1e-10,
            Group::Ortho => 1e-8,
            Group::RadialOrtho => 1e-9,
            Group::Ode => 1e-5,
            Group::R2 => 1e-9,
            Group::ClosedForm => 1e-12,
            Group::Quadrupole => 1e-8,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Group::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check group {s:?}")))
    }
}

/// Named tolerances, one per group.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances(BTreeMap<Group, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances(Group::ALL.into_iter().map(|g| (g, g.default_tolerance())).collect())
    }
}

impl Tolerances {
    pub fn get(&self, group: Group) -> f64 {
        self.0[&group]
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance {name} must be positive, got {value}")));
        }
        self.0.insert(name.parse()?, value);
        Ok(())
    }

    /// Applies `NAME=VALUE` pairs separated by commas or whitespace.
    pub fn apply_overrides(&mut self, text: &str) -> Result<()> {
        for item in text.split([',', ' ', '\t', '\n']).filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("tolerance override {item:?} is not NAME=VALUE")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("tolerance {name} has a non-numeric value {value:?}")))?;
            self.set(name.trim(), value)?;
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Group, f64)> + '_ {
        self.0.iter().map(|(g, v)| (*g, *v))
    }
}

/// Parameter points the suite runs at.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckPoints {
    pub params: Vec<QParam>,
    pub l_max: u32,
    pub n_max: u32,
}

impl Default for CheckPoints {
    fn default() -> Self {
        let mut params: Vec<QParam> = [0.2, 0.5, 1.0].iter().map(|&w| QParam::real(w).unwrap()).collect();
        params.extend([0.3, 0.7].iter().map(|&w| QParam::unit_circle(w).unwrap()));
        CheckPoints {
            params,
            l_max: 4,
            n_max: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupReport {
    pub group: Group,
    pub tolerance: f64,
    /// Largest residual over all cases (∞ if a case could not be evaluated).
    pub residual: f64,
    pub cases: usize,
    /// Cases above tolerance or in error, with a short description.
    pub failures: Vec<String>,
}

impl GroupReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for GroupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<12} residual {:.3e} (tol {:.1e}, {} cases)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.group.name(),
            self.residual,
            self.tolerance,
            self.cases
        )
    }
}

struct Collector {
    report: GroupReport,
}

impl Collector {
    fn new(group: Group, tolerance: f64) -> Self {
        Collector {
            report: GroupReport {
                group,
                tolerance,
                residual: 0.0,
                cases: 0,
                failures: Vec::new(),
            },
        }
    }

    fn record(&mut self, label: impl FnOnce() -> String, residual: Result<f64>) {
        self.report.cases += 1;
        match residual {
            Ok(r) if r.is_finite() && r <= self.report.tolerance => {
                self.report.residual = self.report.residual.max(r);
            }
            Ok(r) => {
                self.report.residual = if r.is_nan() { f64::INFINITY } else { self.report.residual.max(r) };
                self.report.failures.push(format!("{}: residual {r:.3e}", label()));
            }
            Err(e) => {
                self.report.residual = f64::INFINITY;
                self.report.failures.push(format!("{}: {e}", label()));
            }
        }
    }
}

/// 100 interior polar angles.
pub fn theta_grid() -> Vec<f64> {
    (0..100).map(|k| PI * (f64::from(k) + 0.5) / 100.0).collect()
}

const PHI: f64 = 0.37;

fn samples(f: &AngularFunction) -> Result<Vec<Complex64>> {
    theta_grid().into_iter().map(|t| f.evaluate(t, PHI)).collect()
}

fn sup(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `sup|a − b| / scale`, with `a`, `b` on the θ grid.
fn sup_residual(a: &AngularFunction, b: &AngularFunction, scale: f64) -> Result<f64> {
    let (a, b) = (samples(a)?, samples(b)?);
    let diff = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    Ok(diff / scale)
}

/// Harmonic profiles to check at `qp`: normalizable harmonics where they
/// exist, otherwise the unnormalized profile (the eigen equations are linear).
fn profiles(l_max: u32, qp: &QParam) -> Result<Vec<(u32, i32, AngularFunction)>> {
    let mut out = Vec::new();
    for l in 0..=l_max {
        for m in -(l as i32)..=(l as i32) {
            out.push((l, m, angular_profile(l, m, qp)?));
        }
    }
    Ok(out)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn check_qnum(c: &mut Collector, pts: &CheckPoints) {
    for qp in &pts.params {
        for k in 0..=8 {
            let x = 0.5 * f64::from(k) - 1.25;
            c.record(|| format!("[−x] = −[x], x={x}, {qp}"), Ok(rel(bracket(-x, qp), -bracket(x, qp))));
            c.record(
                || format!("[x]_q = [x]_(1/q), x={x}, {qp}"),
                Ok(rel(bracket(x, qp), bracket(x, &qp.inverse()))),
            );
        }
        for l in 0..=2 * pts.l_max {
            for kind in CasimirKind::ALL {
                let cas = casimir_eigenvalue(l, kind, qp);
                if let Ok(lam) = lambda_q(l, kind, qp) {
                    c.record(|| format!("λ² − ¼ = C, l={l}, {kind}, {qp}"), Ok(rel(lam * lam - 0.25, cas)));
                }
                if qp.regime() == Regime::UnitCircle {
                    let s2 = qp.w().sin().powi(2);
                    c.record(
                        || format!("γ = 4 sin²w C, l={l}, {kind}, {qp}"),
                        gamma_q(l, kind, qp).map(|g| rel(g, 4.0 * s2 * cas)),
                    );
                }
            }
        }
    }
}

fn check_eigen(c: &mut Collector, pts: &CheckPoints) {
    for qp in &pts.params {
        let list = match profiles(pts.l_max, qp) {
            Ok(v) => v,
            Err(e) => {
                c.record(|| format!("profiles at {qp}"), Err(e));
                continue;
            }
        };
        for (l, m, f) in &list {
            let scale = match samples(f) {
                Ok(s) => sup(&s),
                Err(e) => {
                    c.record(|| format!("Y({l},{m}) at {qp}"), Err(e));
                    continue;
                }
            };
            for kind in CasimirKind::ALL {
                let ev = casimir_eigenvalue(*l, kind, qp);
                let lhs = apply_casimir(f, kind, qp);
                c.record(
                    || format!("{kind} Y({l},{m}), {qp}"),
                    sup_residual(&lhs, &(f.clone() * ev), scale * ev.abs().max(1.0)),
                );
            }
            let j3 = apply_j3(f);
            c.record(
                || format!("J₃ Y({l},{m}), {qp}"),
                sup_residual(&j3, &(f.clone() * f64::from(*m)), scale * f64::from(*m).abs().max(1.0)),
            );
        }
    }
}

fn check_commutator(c: &mut Collector, pts: &CheckPoints) {
    for qp in &pts.params {
        let list = match profiles(pts.l_max, qp) {
            Ok(v) => v,
            Err(e) => {
                c.record(|| format!("profiles at {qp}"), Err(e));
                continue;
            }
        };
        for (l, m, f) in &list {
            let scale = match samples(f) {
                Ok(s) => sup(&s),
                Err(e) => {
                    c.record(|| format!("Y({l},{m}) at {qp}"), Err(e));
                    continue;
                }
            };
            let b = bracket(2.0 * f64::from(*m), qp);
            let lhs = commutator_plus_minus(f, qp);
            c.record(
                || format!("[J₊,J₋] = [2J₃] on Y({l},{m}), {qp}"),
                sup_residual(&lhs, &(f.clone() * b), scale * b.abs().max(1.0)),
            );
            for raising in [true, false] {
                let ladder = if raising { apply_jplus(f, qp) } else { apply_jminus(f, qp) };
                let sign = if raising { 1.0 } else { -1.0 };
                let lhs = commutator_j3(f, raising, qp);
                let s = samples(&ladder).map(|v| sup(&v).max(scale));
                c.record(
                    || format!("[J₃,J{}] on Y({l},{m}), {qp}", if raising { "₊" } else { "₋" }),
                    s.and_then(|s| sup_residual(&lhs, &(ladder.clone() * sign), s)),
                );
            }
        }
    }
}

/// `g ≈ c f` in least squares on the θ grid; returns `sup|g − c f| / sup|g|`.
fn proportionality_residual(g: &AngularFunction, f: &AngularFunction) -> Result<f64> {
    let (gs, fs) = (samples(g)?, samples(f)?);
    let num: Complex64 = fs.iter().zip(&gs).map(|(x, y)| x.conj() * y).sum();
    let den: f64 = fs.iter().map(|x| x.norm_sqr()).sum();
    let c = num / den;
    let diff = gs.iter().zip(&fs).map(|(y, x)| (y - c * x).norm()).fold(0.0, f64::max);
    Ok(diff / sup(&gs).max(sup(&fs) * c.norm()).max(f64::MIN_POSITIVE))
}

fn check_ladder(c: &mut Collector, pts: &CheckPoints) {
    for qp in &pts.params {
        for l in 0..=pts.l_max {
            let li = l as i32;
            for m in -li..=li {
                let f = match angular_profile(l, m, qp) {
                    Ok(f) => f,
                    Err(e) => {
                        c.record(|| format!("profile ({l},{m}) at {qp}"), Err(e));
                        continue;
                    }
                };
                let scale = samples(&f).map(|s| sup(&s));
                for raising in [true, false] {
                    let g = if raising { apply_jplus(&f, qp) } else { apply_jminus(&f, qp) };
                    let target = if raising { m + 1 } else { m - 1 };
                    let label = || format!("J{} Y({l},{m}), {qp}", if raising { "₊" } else { "₋" });
                    if target.abs() > li {
                        // the top (bottom) state is annihilated
                        let r = scale
                            .clone()
                            .and_then(|s| sup_residual(&g, &AngularFunction::zero(target), s));
                        c.record(label, r);
                    } else {
                        let r = angular_profile(l, target, qp).and_then(|p| proportionality_residual(&g, &p));
                        c.record(label, r);
                    }
                }
            }
        }
    }
}

fn check_ortho(c: &mut Collector, pts: &CheckPoints) {
    for qp in &pts.params {
        let labels = constructible_labels(pts.l_max, qp);
        for &(lb, mb) in &labels {
            for &(lk, mk) in &labels {
                let expect = if (lb, mb) == (lk, mk) { 1.0 } else { 0.0 };
                c.record(
                    || format!("⟨{lb}{mb}|{lk}{mk}⟩, {qp}"),
                    deformed_inner_product(lb, mb, lk, mk, qp).map(|z| (z.re - expect).abs()),
                );
            }
        }
    }
}

fn radial_states(qp: &QParam) -> Vec<RadialState> {
    let mut out = Vec::new();
    for l in 0..=2 {
        for kind in CasimirKind::ALL {
            for (branch, _) in alpha_roots(l, kind, qp) {
                out.push(RadialState::new(0, l, kind, branch, qp).expect("admissible root"));
            }
        }
    }
    out
}

fn radial_params(pts: &CheckPoints) -> Vec<QParam> {
    let mut v = vec![QParam::undeformed()];
    v.extend(pts.params.iter().copied());
    v
}

fn check_radial_ortho(c: &mut Collector, pts: &CheckPoints) {
    let cfg = QuadConfig::default();
    for qp in radial_params(pts) {
        for base in radial_states(&qp) {
            for n1 in 0..=pts.n_max {
                for n2 in n1..=pts.n_max {
                    let (a, b) = (base.with_n(n1), base.with_n(n2));
                    let expect = if n1 == n2 { 1.0 } else { 0.0 };
                    c.record(
                        || format!("∫S_{n1}S_{n2}, l={}, {}, {}, {qp}", base.l(), base.kind(), base.branch()),
                        radial_overlap(&a, &b, &cfg).map(|v| (v - expect).abs()),
                    );
                }
            }
        }
    }
}

/// `max |S″ − (C/r² + r² − 2E) S| / max |S|` on `r ∈ [0.1, 4]`, with a
/// central second difference of step `1e-4`.
pub fn radial_ode_residual(state: &RadialState) -> f64 {
    let h = 1e-4;
    let cas = state.casimir();
    let e = energy(state);
    let (mut worst, mut smax) = (0.0f64, 0.0f64);
    for k in 0..=390 {
        let r = 0.1 + 0.01 * f64::from(k);
        let s = radial_wavefunction(state, r);
        let d2 = (radial_wavefunction(state, r + h) - 2.0 * s + radial_wavefunction(state, r - h)) / (h * h);
        worst = worst.max((d2 - (cas / (r * r) + r * r - 2.0 * e) * s).abs());
        smax = smax.max(s.abs());
    }
    worst / smax
}

fn check_ode(c: &mut Collector, pts: &CheckPoints) {
    for qp in radial_params(pts) {
        for base in radial_states(&qp) {
            for n in 0..=pts.n_max {
                let st = base.with_n(n);
                c.record(
                    || format!("ODE n={n}, l={}, {}, {}, {qp}", st.l(), st.kind(), st.branch()),
                    Ok(radial_ode_residual(&st)),
                );
            }
        }
    }
}

fn check_r2(c: &mut Collector, pts: &CheckPoints) {
    let cfg = QuadConfig::default();
    for qp in radial_params(pts) {
        for base in radial_states(&qp) {
            for n in 0..=pts.n_max {
                let st = base.with_n(n);
                c.record(
                    || format!("⟨r²⟩ n={n}, l={}, {}, {}, {qp}", st.l(), st.kind(), st.branch()),
                    radial_r2_quadrature(&st, &cfg).map(|v| (v - radial_r2_matrix_element(&st)).abs()),
                );
            }
        }
    }
}

/// 200 points per regime, away from roots of unity on the circle.
pub fn closed_form_grid(regime: Regime) -> Vec<QParam> {
    let raw: Vec<f64> = match regime {
        Regime::RealPositive => (1..=200).map(|k| 0.025 * f64::from(k)).collect(),
        Regime::UnitCircle => (0..200).map(|k| 0.0123 + 0.0155 * f64::from(k)).collect(),
    };
    raw.into_iter().filter_map(|w| QParam::new(regime, w).ok()).collect()
}

/// Largest relative disagreement `|a − b| / max(1, |a|)` between the printed
/// closed forms and the energies built from [`alpha_roots`]; disagreement on
/// existence counts as ∞. Energies grow like `e^{(l−½)w}` on the real axis,
/// so an absolute measure would only test the last bits of huge numbers.
pub fn closed_form_residual(qp: &QParam, l_max: u32) -> f64 {
    let mut worst = 0.0f64;
    for l in 0..=l_max {
        for kind in CasimirKind::ALL {
            let roots = alpha_roots(l, kind, qp);
            for branch in [crate::radial::RootBranch::Plus, crate::radial::RootBranch::Minus] {
                let from_roots = roots
                    .iter()
                    .find(|(b, _)| *b == branch)
                    .map(|&(_, a)| 2.0 + a + 0.5);
                let closed = energy_closed_form(1, l, kind, branch, qp).ok();
                match (from_roots, closed) {
                    (Some(a), Some(b)) => worst = worst.max((a - b).abs() / a.abs().max(1.0)),
                    (None, None) => {}
                    _ => return f64::INFINITY,
                }
            }
        }
    }
    worst
}

fn check_closed_form(c: &mut Collector, _pts: &CheckPoints) {
    for regime in [Regime::RealPositive, Regime::UnitCircle] {
        for qp in closed_form_grid(regime) {
            c.record(|| format!("closed forms at {qp}"), Ok(closed_form_residual(&qp, 6)));
        }
    }
}

/// Real and unit-circle `w` values for the `I_q` oracle.
pub const QUADRUPOLE_REAL_W: [f64; 5] = [0.1, 0.25, 0.5, 1.0, 2.0];
pub const QUADRUPOLE_CIRCLE_W: [f64; 4] = [0.2, 0.5, 1.0, 2.0];

fn check_quadrupole(c: &mut Collector, _pts: &CheckPoints) {
    let params = QUADRUPOLE_REAL_W
        .iter()
        .map(|&w| QParam::real(w))
        .chain(QUADRUPOLE_CIRCLE_W.iter().map(|&w| QParam::unit_circle(w)));
    for qp in params {
        let qp = qp.expect("fixed grid avoids roots of unity");
        c.record(
            || format!("angular part closed vs I_q quadrature, {qp}"),
            quadrupole_angular_via_integrals(&qp, IqMethod::Quadrature).map(|v| (v - quadrupole_angular_closed(&qp)).abs()),
        );
    }
}

pub fn run_group(group: Group, tolerance: f64, pts: &CheckPoints) -> GroupReport {
    let mut c = Collector::new(group, tolerance);
    match group {
        Group::Qnum => check_qnum(&mut c, pts),
        Group::Eigen => check_eigen(&mut c, pts),
        Group::Commutator => check_commutator(&mut c, pts),
        Group::Ladder => check_ladder(&mut c, pts),
        Group::Ortho => check_ortho(&mut c, pts),
        Group::RadialOrtho => check_radial_ortho(&mut c, pts),
        Group::Ode => check_ode(&mut c, pts),
        Group::R2 => check_r2(&mut c, pts),
        Group::ClosedForm => check_closed_form(&mut c, pts),
        Group::Quadrupole => check_quadrupole(&mut c, pts),
    }
    c.report
}

pub fn run_checks(groups: &[Group], tolerances: &Tolerances, pts: &CheckPoints) -> Vec<GroupReport> {
    groups.iter().map(|&g| run_group(g, tolerances.get(g), pts)).collect()
}
