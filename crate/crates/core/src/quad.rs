//! Adaptive Gauss–Kronrod quadrature (21-point Kronrod / 10-point Gauss)
//! for real and complex integrands, with a semi-infinite map.

#![allow(clippy::excessive_precision)] // tabulated constants kept at full published precision

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated.
pub trait Integrand:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    /// Real projection used in error reports.
    fn real_part(self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn real_part(self) -> f64 {
        self
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn real_part(self) -> f64 {
        self.re
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            rel_tol: 0.0,
            max_subdivisions: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub subdivisions: usize,
    /// The error estimate stalled at the rounding floor of the integrand
    /// before reaching the requested tolerance.
    pub roundoff_limited: bool,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
    floored: bool,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One Gauss–Kronrod 10/21 panel: `(value, error, error is the rounding floor)`.
fn gk21<T: Integrand, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> (T, f64, bool) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = T::zero();
    let mut abs_sum = fc.magnitude() * WGK[10];
    let mut samples = [(T::zero(), T::zero()); 10];
    for (j, sample) in samples.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        kronrod = kronrod + (f1 + f2) * WGK[j];
        abs_sum += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
        *sample = (f1, f2);
    }
    let mean = kronrod * 0.5;
    let mut asc = (fc - mean).magnitude() * WGK[10];
    for (j, (f1, f2)) in samples.iter().enumerate() {
        asc += ((*f1 - mean).magnitude() + (*f2 - mean).magnitude()) * WGK[j];
    }
    let result = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).magnitude();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    let floored = res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && err <= floor;
    if floored {
        err = floor;
    }
    (result, err, floored)
}

/// Integrates `f` over `[a, b]` by adaptive bisection of the segment with
/// the largest error estimate.
///
/// Segments whose error estimate has reached the rounding floor of the
/// integrand are set aside instead of split. If the remaining error meets
/// the tolerance only once those are excluded, the result is returned with
/// `roundoff_limited` set.
pub fn integrate<T, F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult<T>>
where
    T: Integrand,
    F: Fn(f64) -> T,
{
    integrate_with_breaks(f, &[a, b], cfg)
}

/// [`integrate`] over `[breaks[0], breaks[last]]`, starting from one panel
/// per consecutive pair of break points. Use when the integrand is
/// concentrated in a small part of a long interval that a single panel
/// might step over.
pub fn integrate_with_breaks<T, F>(f: F, breaks: &[f64], cfg: &QuadConfig) -> Result<QuadResult<T>>
where
    T: Integrand,
    F: Fn(f64) -> T,
{
    assert!(breaks.len() >= 2, "need at least one interval");
    let mut heap = BinaryHeap::new();
    let (mut total, mut total_err) = (T::zero(), 0.0);
    for w in breaks.windows(2) {
        let (value, error, floored) = gk21(&f, w[0], w[1]);
        total = total + value;
        total_err += error;
        heap.push(Segment { a: w[0], b: w[1], value, error, floored });
    }
    let (mut settled_value, mut settled_err) = (T::zero(), 0.0);
    let mut subdivisions = heap.len();

    loop {
        let target = cfg.abs_tol.max(cfg.rel_tol * total.magnitude());
        let done = |roundoff_limited| QuadResult {
            value: total,
            error: total_err,
            subdivisions,
            roundoff_limited,
        };
        if total_err <= target {
            return Ok(done(false));
        }
        if heap.is_empty() || total_err - settled_err <= target {
            return Ok(done(true));
        }
        let worst = heap.pop().expect("heap is not empty");
        if worst.floored {
            settled_value = settled_value + worst.value;
            settled_err += worst.error;
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let narrow = (worst.b - worst.a).abs() <= 1e3 * f64::EPSILON * (worst.a.abs() + worst.b.abs());
        if subdivisions >= cfg.max_subdivisions || narrow {
            return Err(Error::Quadrature {
                estimate: total.real_part(),
                error: total_err,
                requested: target,
            });
        }
        let (lv, le, lf) = gk21(&f, worst.a, mid);
        let (rv, re, rf) = gk21(&f, mid, worst.b);
        total = total - worst.value + lv + rv;
        total_err += le + re - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: lv, error: le, floored: lf });
        heap.push(Segment { a: mid, b: worst.b, value: rv, error: re, floored: rf });
        subdivisions += 1;
        // Recompute periodically so the running sums do not drift.
        if subdivisions % 64 == 0 {
            total = heap.iter().fold(settled_value, |acc, s| acc + s.value);
            total_err = settled_err + heap.iter().map(|s| s.error).sum::<f64>();
        }
    }
}

/// Integrates `f` over `[0, ∞)` through `x = t/(1−t)`, `t ∈ (0, 1)`.
pub fn integrate_semi_infinite<T, F>(f: F, cfg: &QuadConfig) -> Result<QuadResult<T>>
where
    T: Integrand,
    F: Fn(f64) -> T,
{
    integrate(
        |t: f64| {
            let s = 1.0 - t;
            f(t / s) * (1.0 / (s * s))
        },
        0.0,
        1.0,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x: f64| 3.0 * x * x, 0.0, 2.0, &QuadConfig::default()).unwrap();
        assert!((r.value - 8.0).abs() < 1e-13);
        assert_eq!(r.subdivisions, 1);
    }

    #[test]
    fn gaussian_semi_infinite() {
        let r = integrate_semi_infinite(|x: f64| (-x * x).exp(), &QuadConfig::default()).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-11);
    }

    #[test]
    fn complex_integrand() {
        // ∫₀^π e^{ix} dx = 2i
        let r = integrate(
            |x: f64| Complex64::from_polar(1.0, x),
            0.0,
            std::f64::consts::PI,
            &QuadConfig::default(),
        )
        .unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn sharp_peak_needs_refinement() {
        let f = |x: f64| 1.0 / ((x - 0.3).powi(2) + 1e-6);
        let r = integrate(f, 0.0, 1.0, &QuadConfig::default()).unwrap();
        let exact = ((0.7f64 / 1e-3).atan() + (0.3f64 / 1e-3).atan()) / 1e-3;
        assert!((r.value - exact).abs() < 1e-8, "{} vs {}", r.value, exact);
        assert!(r.subdivisions > 1);
    }

    #[test]
    fn non_convergence_reported() {
        let cfg = QuadConfig {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_subdivisions: 4,
        };
        let err = integrate(|x: f64| (1.0 / x.max(1e-300)).sqrt(), 0.0, 1.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
    }
}
