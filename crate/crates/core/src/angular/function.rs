//! Closed class of angular functions in the variable `ρ = cot(θ/2)`:
//! finite sums of `coeff · ρ^p · ∏ (1 + c ρ²)^e` times a common phase
//! `e^{imφ}`. The class is closed under `ρ → sρ` (complex `s`),
//! multiplication by `ρ^{±1}` and `ρ∂ρ`, which is all the su_q(2)
//! generators need.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Factors whose `c` differ by less than this (relative) are merged.
pub const FACTOR_MERGE_TOL: f64 = 1e-13;
/// Terms below this fraction of the largest coefficient are dropped.
pub const TERM_DROP_TOL: f64 = 1e-15;

/// `(1 + c ρ²)^exponent`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub c: Complex64,
    pub exponent: i32,
}

/// `coeff · ρ^power · ∏ factors`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Complex64,
    pub power: i32,
    pub factors: Vec<Factor>,
}

impl Term {
    pub fn new(coeff: Complex64, power: i32, factors: Vec<Factor>) -> Self {
        let mut t = Term {
            coeff,
            power,
            factors,
        };
        t.normalize_factors();
        t
    }

    fn normalize_factors(&mut self) {
        self.factors.retain(|f| f.exponent != 0 && f.c != Complex64::new(0.0, 0.0));
        self.factors
            .sort_by(|a, b| a.c.re.total_cmp(&b.c.re).then(a.c.im.total_cmp(&b.c.im)));
        let mut merged: Vec<Factor> = Vec::with_capacity(self.factors.len());
        for f in self.factors.drain(..) {
            match merged.iter_mut().find(|g| same_c(g.c, f.c)) {
                Some(g) => g.exponent += f.exponent,
                None => merged.push(f),
            }
        }
        merged.retain(|f| f.exponent != 0);
        self.factors = merged;
    }

    fn same_shape(&self, other: &Term) -> bool {
        self.power == other.power
            && self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| a.exponent == b.exponent && same_c(a.c, b.c))
    }

    pub fn eval(&self, rho: Complex64) -> Complex64 {
        let rho2 = rho * rho;
        let mut v = self.coeff * rho.powi(self.power);
        for f in &self.factors {
            v *= (Complex64::new(1.0, 0.0) + f.c * rho2).powi(f.exponent);
        }
        v
    }

    /// Total degree in ρ as ρ → ∞.
    fn degree_at_infinity(&self) -> i32 {
        self.power + 2 * self.factors.iter().map(|f| f.exponent).sum::<i32>()
    }

    fn leading_coefficient_at_infinity(&self) -> Complex64 {
        self.factors
            .iter()
            .fold(self.coeff, |acc, f| acc * f.c.powi(f.exponent))
    }
}

fn same_c(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= FACTOR_MERGE_TOL * a.norm().max(b.norm()).max(1.0)
}

/// Angular function with azimuthal index `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularFunction {
    m: i32,
    terms: Vec<Term>,
}

impl AngularFunction {
    pub fn new(m: i32, terms: Vec<Term>) -> Self {
        let mut f = AngularFunction { m, terms };
        f.simplify();
        f
    }

    pub fn zero(m: i32) -> Self {
        AngularFunction { m, terms: vec![] }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(0, vec![Term::new(c, 0, vec![])])
    }

    /// `cos θ = (ρ² − 1)/(ρ² + 1)`.
    pub fn cos_theta() -> Self {
        let inv = Factor {
            c: Complex64::new(1.0, 0.0),
            exponent: -1,
        };
        Self::new(
            0,
            vec![
                Term::new(Complex64::new(1.0, 0.0), 2, vec![inv]),
                Term::new(Complex64::new(-1.0, 0.0), 0, vec![inv]),
            ],
        )
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merges factors and like terms, then drops negligible terms.
    fn simplify(&mut self) {
        for t in &mut self.terms {
            t.normalize_factors();
        }
        let mut merged: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.iter_mut().find(|u| u.same_shape(&t)) {
                Some(u) => u.coeff += t.coeff,
                None => merged.push(t),
            }
        }
        let scale = merged.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max);
        merged.retain(|t| t.coeff.norm() > TERM_DROP_TOL * scale);
        self.terms = merged;
    }

    /// Same terms, new azimuthal index.
    pub fn with_m(mut self, m: i32) -> Self {
        self.m = m;
        self
    }

    /// Multiplies every term by `ρ^dp`.
    pub fn times_rho_power(mut self, dp: i32) -> Self {
        for t in &mut self.terms {
            t.power += dp;
        }
        self
    }

    /// `prefactor · f(sρ)`, exact: `ρ^p → s^p ρ^p`, `(1 + cρ²) → (1 + c s² ρ²)`.
    pub fn rescaled(&self, s: Complex64, prefactor: Complex64) -> Self {
        let s2 = s * s;
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: prefactor * t.coeff * s.powi(t.power),
                power: t.power,
                factors: t
                    .factors
                    .iter()
                    .map(|f| Factor {
                        c: f.c * s2,
                        exponent: f.exponent,
                    })
                    .collect(),
            })
            .collect();
        Self::new(self.m, terms)
    }

    /// `ρ ∂ρ f`, with `ρ∂ρ (1+cρ²)^e = 2e (1+cρ²)^e − 2e (1+cρ²)^{e−1}`.
    pub fn rho_d_rho(&self) -> Self {
        let mut out = Vec::new();
        for t in &self.terms {
            let total = t.power + 2 * t.factors.iter().map(|f| f.exponent).sum::<i32>();
            if total != 0 {
                out.push(Term {
                    coeff: t.coeff * f64::from(total),
                    ..t.clone()
                });
            }
            for (j, f) in t.factors.iter().enumerate() {
                let mut factors = t.factors.clone();
                factors[j].exponent -= 1;
                out.push(Term::new(
                    t.coeff * (-2.0 * f64::from(f.exponent)),
                    t.power,
                    factors,
                ));
            }
        }
        Self::new(self.m, out)
    }

    /// Pointwise complex conjugate on real θ: coefficients and factor
    /// constants conjugated, `m → −m`.
    pub fn conj(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.conj(),
                power: t.power,
                factors: t
                    .factors
                    .iter()
                    .map(|f| Factor {
                        c: f.c.conj(),
                        exponent: f.exponent,
                    })
                    .collect(),
            })
            .collect();
        Self::new(-self.m, terms)
    }

    /// Value of the ρ-part (no azimuthal phase) at a possibly complex ρ.
    pub fn eval_rho(&self, rho: Complex64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(rho)).sum()
    }

    /// Value at `(θ, φ)`. The poles θ = 0, π are resolved through the
    /// limiting behaviour of the term list; a divergent limit is a domain
    /// error.
    pub fn evaluate(&self, theta: f64, phi: f64) -> Result<Complex64> {
        if !(0.0..=PI).contains(&theta) || !theta.is_finite() {
            return Err(Error::Domain(format!("θ = {theta} outside [0, π]")));
        }
        let phase = Complex64::from_polar(1.0, f64::from(self.m) * phi);
        let theta_part = if theta == 0.0 {
            self.limit_at_infinity()?
        } else if theta == PI {
            self.limit_at_zero()?
        } else {
            let half = 0.5 * theta;
            self.eval_rho(Complex64::new(half.cos() / half.sin(), 0.0))
        };
        Ok(theta_part * phase)
    }

    fn limit_scale(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.norm())
            .fold(0.0, f64::max)
    }

    fn limit_at_zero(&self) -> Result<Complex64> {
        let tol = 1e-12 * self.limit_scale();
        let mut by_power: Vec<(i32, Complex64)> = Vec::new();
        for t in &self.terms {
            match by_power.iter_mut().find(|(p, _)| *p == t.power) {
                Some((_, c)) => *c += t.coeff,
                None => by_power.push((t.power, t.coeff)),
            }
        }
        if let Some((p, _)) = by_power.iter().find(|(p, c)| *p < 0 && c.norm() > tol) {
            return Err(Error::Domain(format!("divergent at θ = π (ρ^{p} term)")));
        }
        Ok(by_power
            .iter()
            .filter(|(p, _)| *p == 0)
            .map(|(_, c)| *c)
            .sum())
    }

    fn limit_at_infinity(&self) -> Result<Complex64> {
        let mut by_degree: Vec<(i32, Complex64, f64)> = Vec::new();
        for t in &self.terms {
            let d = t.degree_at_infinity();
            let lead = t.leading_coefficient_at_infinity();
            match by_degree.iter_mut().find(|(e, _, _)| *e == d) {
                Some((_, c, s)) => {
                    *c += lead;
                    *s = s.max(lead.norm());
                }
                None => by_degree.push((d, lead, lead.norm())),
            }
        }
        by_degree.sort_by_key(|(d, _, _)| std::cmp::Reverse(*d));
        for (d, c, s) in &by_degree {
            if *d > 0 && c.norm() > 1e-12 * s.max(1e-300) {
                return Err(Error::Domain(format!("divergent at θ = 0 (degree {d})")));
            }
        }
        Ok(by_degree
            .iter()
            .filter(|(d, _, _)| *d == 0)
            .map(|(_, c, _)| *c)
            .sum())
    }
}

impl Add for AngularFunction {
    type Output = AngularFunction;
    fn add(mut self, rhs: AngularFunction) -> AngularFunction {
        assert_eq!(self.m, rhs.m, "adding angular functions with different m");
        self.terms.extend(rhs.terms);
        self.simplify();
        self
    }
}

impl Sub for AngularFunction {
    type Output = AngularFunction;
    fn sub(self, rhs: AngularFunction) -> AngularFunction {
        self + (-rhs)
    }
}

impl Neg for AngularFunction {
    type Output = AngularFunction;
    fn neg(mut self) -> AngularFunction {
        for t in &mut self.terms {
            t.coeff = -t.coeff;
        }
        self
    }
}

impl Mul<Complex64> for AngularFunction {
    type Output = AngularFunction;
    fn mul(mut self, rhs: Complex64) -> AngularFunction {
        for t in &mut self.terms {
            t.coeff *= rhs;
        }
        self.simplify();
        self
    }
}

impl Mul<f64> for AngularFunction {
    type Output = AngularFunction;
    fn mul(self, rhs: f64) -> AngularFunction {
        self * Complex64::new(rhs, 0.0)
    }
}

impl Mul<&AngularFunction> for &AngularFunction {
    type Output = AngularFunction;
    fn mul(self, rhs: &AngularFunction) -> AngularFunction {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let mut factors = a.factors.clone();
                factors.extend_from_slice(&b.factors);
                terms.push(Term::new(a.coeff * b.coeff, a.power + b.power, factors));
            }
        }
        AngularFunction::new(self.m + rhs.m, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn constant_evaluates_everywhere() {
        let k = 1.0 / (4.0 * PI).sqrt();
        let f = AngularFunction::constant(c(k));
        for theta in [0.0, 0.3, PI / 2.0, PI] {
            let v = f.evaluate(theta, 1.1).unwrap();
            assert!((v - c(0.282_094_791_773_878_1)).norm() < 1e-15);
        }
    }

    #[test]
    fn cos_theta_matches_trig() {
        let f = AngularFunction::cos_theta();
        for theta in [0.0, 0.2, 1.0, 2.0, 3.0, PI] {
            let v = f.evaluate(theta, 0.0).unwrap();
            assert!((v.re - theta.cos()).abs() < 1e-14, "θ={theta}");
        }
    }

    #[test]
    fn merging_and_cancellation() {
        let fac = Factor {
            c: c(2.0),
            exponent: -1,
        };
        let a = AngularFunction::new(1, vec![Term::new(c(1.0), 2, vec![fac, fac])]);
        assert_eq!(a.terms()[0].factors.len(), 1);
        assert_eq!(a.terms()[0].factors[0].exponent, -2);
        let z = a.clone() - a;
        assert!(z.is_zero());
    }

    #[test]
    fn rescale_is_argument_substitution() {
        let f = AngularFunction::new(
            0,
            vec![
                Term::new(c(1.5), 3, vec![Factor { c: c(0.5), exponent: -2 }]),
                Term::new(Complex64::new(0.0, 1.0), 0, vec![]),
            ],
        );
        let s = Complex64::from_polar(1.0, 0.4);
        let g = f.rescaled(s, c(2.0));
        for rho in [0.1, 0.9, 3.0] {
            let lhs = g.eval_rho(c(rho));
            let rhs = f.eval_rho(s * rho) * 2.0;
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn rho_d_rho_against_finite_difference() {
        let f = AngularFunction::new(
            2,
            vec![
                Term::new(c(0.7), 2, vec![Factor { c: Complex64::new(0.3, 0.4), exponent: -3 }]),
                Term::new(c(-1.1), 4, vec![Factor { c: c(2.0), exponent: -1 }]),
            ],
        );
        let d = f.rho_d_rho();
        for rho in [0.2, 1.0, 2.5] {
            let h = 1e-5;
            let fd = (f.eval_rho(c(rho + h)) - f.eval_rho(c(rho - h))) / (2.0 * h) * rho;
            assert!((d.eval_rho(c(rho)) - fd).norm() < 1e-8);
        }
    }

    #[test]
    fn poles_limits_and_divergence() {
        // ρ/(1+ρ²) = sinθ/2 vanishes at both poles
        let s = AngularFunction::new(1, vec![Term::new(c(1.0), 1, vec![Factor { c: c(1.0), exponent: -1 }])]);
        assert!(s.evaluate(0.0, 0.0).unwrap().norm() < 1e-15);
        assert!(s.evaluate(PI, 0.0).unwrap().norm() < 1e-15);
        let blow = AngularFunction::new(0, vec![Term::new(c(1.0), -1, vec![])]);
        assert!(blow.evaluate(PI, 0.0).is_err());
        let grow = AngularFunction::new(0, vec![Term::new(c(1.0), 2, vec![])]);
        assert!(grow.evaluate(0.0, 0.0).is_err());
        assert!(grow.evaluate(-0.1, 0.0).is_err());
    }

    #[test]
    fn product_and_conjugate() {
        let f = AngularFunction::cos_theta();
        let g = &f * &f;
        let v = g.evaluate(1.2, 0.0).unwrap();
        assert!((v.re - 1.2f64.cos().powi(2)).abs() < 1e-14);
        let h = AngularFunction::new(2, vec![Term::new(Complex64::new(1.0, 2.0), 2, vec![])]);
        let hc = h.conj();
        assert_eq!(hc.m(), -2);
        let (a, b) = (h.evaluate(0.8, 0.3).unwrap(), hc.evaluate(0.8, 0.3).unwrap());
        assert!((a.conj() - b).norm() < 1e-14);
    }
}
