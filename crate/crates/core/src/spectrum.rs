//! Energy levels `E = 2n + α + ½`: enumeration, printed closed forms,
//! small-w series and the data behind the four figures.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::observables::quadrupole_moment;
use crate::qnum::{gamma_q, nearest_root_of_unity, CasimirKind, QParam, Regime, ROOT_OF_UNITY_MAX_DENOM};
use crate::radial::{alpha_roots, RootBranch, GAMMA_BOUNDARY_TOL};
use crate::table::{Cell, Table};

/// Largest `|w|` accepted by [`energy_series`].
pub const SERIES_MAX_W: f64 = 0.3;

/// Grid points this close to `πp/s` (`s ≤ 64`) are dropped from figures.
pub const FIGURE_ROOT_TOL: f64 = 1e-6;

/// Edges of the two-level window of `E_{n1q±}` on the unit circle, in `cos w`.
pub fn l1_window() -> (f64, f64) {
    let r = 17f64.sqrt();
    ((-7.0 - r) / 16.0, (-7.0 + r) / 16.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub n: u32,
    pub l: u32,
    pub kind: CasimirKind,
    pub branch: RootBranch,
    pub alpha: f64,
    pub energy: f64,
    pub qp: QParam,
}

fn level_order(a: &Level, b: &Level) -> Ordering {
    a.energy
        .total_cmp(&b.energy)
        .then(a.l.cmp(&b.l))
        .then(a.n.cmp(&b.n))
        .then(a.branch.cmp(&b.branch))
}

/// Every admissible `(n, l, branch)` with `n ≤ n_max`, `l ≤ l_max`, sorted
/// by energy, then `(l, n, branch)`.
pub fn enumerate_levels(n_max: u32, l_max: u32, kind: CasimirKind, qp: &QParam) -> Vec<Level> {
    let mut levels = Vec::new();
    for l in 0..=l_max {
        for (branch, alpha) in alpha_roots(l, kind, qp) {
            for n in 0..=n_max {
                levels.push(Level {
                    n,
                    l,
                    kind,
                    branch,
                    alpha,
                    energy: 2.0 * f64::from(n) + alpha + 0.5,
                    qp: *qp,
                });
            }
        }
    }
    levels.sort_by(level_order);
    levels
}

fn missing(n: u32, l: u32, kind: CasimirKind, branch: RootBranch, qp: &QParam, why: &str) -> Error {
    Error::Domain(format!("level n={n}, l={l}, {kind}, {branch} does not exist at {qp}: {why}"))
}

/// Printed closed-form energies, evaluated directly from `w`.
///
/// Existence is decided from the printed region conditions, not from
/// [`alpha_roots`], so the two serve as cross-checks. Unit-circle levels
/// with `l ≥ 2` use the real-regime formulas with `w → iw`.
pub fn energy_closed_form(n: u32, l: u32, kind: CasimirKind, branch: RootBranch, qp: &QParam) -> Result<f64> {
    let base = 2.0 * f64::from(n) + 1.0;
    let w = qp.w().abs();
    let lf = f64::from(l);
    let sign = branch.sign();
    let err = |why: &str| missing(n, l, kind, branch, qp, why);
    match (qp.regime(), kind) {
        (Regime::RealPositive, CasimirKind::Cq) => {
            if l == 0 {
                if branch == RootBranch::Minus && w == 0.0 {
                    return Err(err("the minus root requires q ≠ 1"));
                }
                Ok(base + sign / (2.0 * (w / 2.0).cosh()))
            } else if branch == RootBranch::Minus {
                Err(err("the minus root is negative for l ≥ 1"))
            } else if w == 0.0 {
                Ok(base + lf + 0.5)
            } else {
                Ok(base + ((lf + 0.5) * w).sinh() / w.sinh())
            }
        }
        (Regime::RealPositive, CasimirKind::CqPrime) => {
            if branch == RootBranch::Minus {
                return Err(err("the minus root is negative for C'_q"));
            }
            if l == 0 {
                return Ok(2.0 * f64::from(n) + 1.5);
            }
            if w == 0.0 {
                return Ok(base + lf + 0.5);
            }
            let s = w.sinh();
            Ok(base + (4.0 * (lf * w).sinh() * ((lf + 1.0) * w).sinh() + s * s).sqrt() / (2.0 * s))
        }
        (Regime::UnitCircle, CasimirKind::Cq) => {
            let c = w.cos();
            match l {
                0 if branch == RootBranch::Minus => Err(err("l = 0 has a single level on the unit circle")),
                0 => Ok(base + 1.0 / (2.0 * (w / 2.0).cos())),
                1 => {
                    let (lo, hi) = l1_window();
                    if branch == RootBranch::Minus && !(lo < c && c < hi) {
                        return Err(err("the minus level needs (−7−√17)/16 < cos w < (−7+√17)/16"));
                    }
                    let ch = (w / 2.0).cos();
                    Ok(base + sign * ((4.0 * ch * ch - 1.0) / (2.0 * ch)).abs())
                }
                _ => {
                    let gamma = gamma_q(l, kind, qp)?;
                    if branch == RootBranch::Minus && gamma >= 0.0 {
                        return Err(err("the minus level needs γ_q(l) < 0"));
                    }
                    Ok(base + sign * (((lf + 0.5) * w).sin() / w.sin()).abs())
                }
            }
        }
        (Regime::UnitCircle, CasimirKind::CqPrime) => {
            let s = w.sin();
            let s2 = s * s;
            match l {
                0 if branch == RootBranch::Minus => Err(err("l = 0 has a single level for C'_q")),
                0 => Ok(2.0 * f64::from(n) + 1.5),
                1 => {
                    let c = w.cos();
                    let on_edge = (c + 0.125).abs() * 8.0 * s2 <= GAMMA_BOUNDARY_TOL;
                    if on_edge {
                        return if branch == RootBranch::Plus {
                            Ok(base)
                        } else {
                            Err(err("cos w = −1/8 has the single root α = ½"))
                        };
                    }
                    if c < -0.125 {
                        return Err(err("no l = 1 level for cos w < −1/8"));
                    }
                    if branch == RootBranch::Minus && c >= 0.0 {
                        return Err(err("the minus level needs −1/8 < cos w < 0"));
                    }
                    Ok(base + sign * 0.5 * (1.0 + 8.0 * c).sqrt())
                }
                _ => {
                    let gamma = gamma_q(l, kind, qp)?;
                    if (gamma + s2).abs() <= GAMMA_BOUNDARY_TOL {
                        return if branch == RootBranch::Plus {
                            Ok(base)
                        } else {
                            Err(err("γ'_q(l) = −sin²w has the single root α = ½"))
                        };
                    }
                    if gamma < -s2 {
                        return Err(err("no level for γ'_q(l) < −sin²w"));
                    }
                    if branch == RootBranch::Minus && gamma >= 0.0 {
                        return Err(err("the minus level needs −sin²w < γ'_q(l) < 0"));
                    }
                    Ok(base + sign * (gamma + s2).sqrt() / (2.0 * s.abs()))
                }
            }
        }
    }
}

/// Truncated small-w expansion of the level that goes into `2n + l + 3/2`
/// (or, for the real-regime minus root, into `2n + ½`).
///
/// `order` is the highest power of `w` kept (0 to 4). On the unit circle the
/// series follows from `w → iw`, flipping the sign of the `w²` terms.
pub fn energy_series(n: u32, l: u32, kind: CasimirKind, branch: RootBranch, qp: &QParam, order: u32) -> Result<f64> {
    if order > 4 {
        return Err(Error::InvalidParameter(format!("series order {order} exceeds 4")));
    }
    let w = qp.w();
    if w.abs() > SERIES_MAX_W {
        return Err(Error::InvalidParameter(format!(
            "series needs |w| ≤ {SERIES_MAX_W}, got {w}"
        )));
    }
    let minus_ok = qp.regime() == Regime::RealPositive && kind == CasimirKind::Cq && l == 0;
    if branch == RootBranch::Minus && !minus_ok {
        return Err(missing(n, l, kind, branch, qp, "only the real-regime C_q, l = 0 level has a minus branch"));
    }
    let lf = f64::from(l);
    let nf = f64::from(n);
    let (head, c2, c4) = match (kind, l) {
        (CasimirKind::Cq, 0) => {
            let s = branch.sign();
            (2.0 * nf + 1.0 + 0.5 * s, -s / 16.0, s * 5.0 / 768.0)
        }
        (CasimirKind::Cq, _) => {
            let c2 = (2.0 * lf - 1.0) * (2.0 * lf + 1.0) * (2.0 * lf + 3.0) / 48.0;
            (2.0 * nf + lf + 1.5, c2, c2 * (12.0 * lf * (lf + 1.0) - 25.0) / 240.0)
        }
        (CasimirKind::CqPrime, _) => {
            let x = lf * (lf + 1.0);
            let pre = x / (6.0 * (2.0 * lf + 1.0));
            let c4 = pre * (24.0 * x.powi(3) - 56.0 * x * x - 10.0 * x + 7.0) / (60.0 * (4.0 * x + 1.0));
            (2.0 * nf + lf + 1.5, pre * (2.0 * x - 1.0), c4)
        }
    };
    let w2 = w * w;
    let u = match qp.regime() {
        Regime::RealPositive => w2,
        Regime::UnitCircle => -w2,
    };
    let mut e = head;
    if order >= 2 {
        e += c2 * u;
    }
    if order >= 4 {
        e += c4 * w2 * w2;
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Figure {
    /// n = 0 spectrum, real q, `C_q`.
    Fig1,
    /// n = 0 spectrum, unit circle, `C_q`.
    Fig2,
    /// l = 0 quadrupole moments, real q.
    Fig3,
    /// l = 0 quadrupole moments, unit circle.
    Fig4,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Fig1, Figure::Fig2, Figure::Fig3, Figure::Fig4];

    pub fn regime(self) -> Regime {
        match self {
            Figure::Fig1 | Figure::Fig3 => Regime::RealPositive,
            Figure::Fig2 | Figure::Fig4 => Regime::UnitCircle,
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            Figure::Fig1 => 1,
            Figure::Fig2 => 2,
            Figure::Fig3 => 3,
            Figure::Fig4 => 4,
        };
        write!(f, "fig{n}")
    }
}

impl std::str::FromStr for Figure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "fig1" => Ok(Figure::Fig1),
            "2" | "fig2" => Ok(Figure::Fig2),
            "3" | "fig3" => Ok(Figure::Fig3),
            "4" | "fig4" => Ok(Figure::Fig4),
            _ => Err(Error::InvalidParameter(format!("unknown figure {s:?}"))),
        }
    }
}

/// Prefix of the curve id used for dropped grid points.
pub const WARNING_PREFIX: &str = "warning:";

fn curves_at(figure: Figure, qp: &QParam) -> Vec<(String, f64)> {
    let mut out = Vec::new();
    let level = |l: u32, branch| energy_closed_form(0, l, CasimirKind::Cq, branch, qp).ok();
    match figure {
        Figure::Fig1 => {
            out.extend(level(0, RootBranch::Plus).map(|e| ("E_00q+".to_string(), e)));
            out.extend(level(0, RootBranch::Minus).map(|e| ("E_00q-".to_string(), e)));
            for l in 1..=6 {
                out.extend(level(l, RootBranch::Plus).map(|e| (format!("E_0{l}q"), e)));
            }
        }
        Figure::Fig2 => {
            for l in 0..=3 {
                let roots = alpha_roots(l, CasimirKind::Cq, qp);
                if let Some(e) = level(l, RootBranch::Plus) {
                    let suffix = if roots.len() > 1 { "+" } else { "" };
                    out.push((format!("E_0{l}q{suffix}"), e));
                }
            }
        }
        Figure::Fig3 | Figure::Fig4 => {
            let circle = figure == Figure::Fig4;
            for n in 0..=1 {
                let mut push = |id: String, kind, branch| {
                    if let Ok(q) = quadrupole_moment(n, kind, branch, qp) {
                        out.push((id, q.value));
                    }
                };
                if circle {
                    push(format!("Q_{n}0q"), CasimirKind::Cq, RootBranch::Plus);
                } else {
                    push(format!("Q_{n}0q+"), CasimirKind::Cq, RootBranch::Plus);
                    push(format!("Q_{n}0q-"), CasimirKind::Cq, RootBranch::Minus);
                }
                push(format!("Q'_{n}0q"), CasimirKind::CqPrime, RootBranch::Plus);
            }
        }
    }
    out
}

/// Tidy table `w, curve, value` for one figure.
///
/// Unit-circle grid points within [`FIGURE_ROOT_TOL`] of a root of unity,
/// or outside `0 < |w| < π`, become a single warning row with a NaN value.
pub fn figure_data(figure: Figure, w_grid: &[f64]) -> Table {
    let mut table = Table::new(["w", "curve", "value"]);
    for &w in w_grid {
        let warn = |table: &mut Table, what: String| {
            table.push(vec![Cell::Real(w), Cell::Text(format!("{WARNING_PREFIX}{what}")), Cell::Real(f64::NAN)]);
        };
        if figure.regime() == Regime::UnitCircle {
            if let Some((p, s, _)) = nearest_root_of_unity(w, ROOT_OF_UNITY_MAX_DENOM, FIGURE_ROOT_TOL) {
                warn(&mut table, format!("root_of_unity:{p}/{s}"));
                continue;
            }
        }
        let qp = match QParam::new(figure.regime(), w) {
            Ok(qp) => qp,
            Err(_) => {
                warn(&mut table, "outside_domain".into());
                continue;
            }
        };
        for (id, value) in curves_at(figure, &qp) {
            table.push(vec![Cell::Real(w), Cell::Text(id), Cell::Real(value)]);
        }
    }
    table
}
