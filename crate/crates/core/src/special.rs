//! Gamma function and associated Laguerre polynomials.

#![allow(clippy::excessive_precision)] // tabulated constants kept at full published precision

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx)
        return (PI / (PI * x).sin()).abs().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    ln_gamma(x).exp()
}

/// `ln n!`
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| f64::from(k).ln()).sum()
}

/// Associated Laguerre polynomial `L_n^a(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+a−x) L_k − (k+a) L_{k−1}`.
pub fn laguerre(n: u32, a: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_at_integers_and_half_integers() {
        let mut fact = 1.0f64;
        for n in 1..30u32 {
            assert!(rel(gamma(f64::from(n)), fact) < 1e-13, "Γ({n})");
            fact *= f64::from(n);
        }
        // Γ(n + ½) = (2n)! √π / (4^n n!)
        let mut v = PI.sqrt();
        for n in 0..38u32 {
            let x = f64::from(n) + 0.5;
            assert!(rel(gamma(x), v) < 1e-13, "Γ({x})");
            v *= x;
        }
    }

    #[test]
    fn ln_gamma_large_argument() {
        // Stirling with two correction terms is accurate to ~1e-12 at x = 300.
        let x = 300.0f64;
        let stirling = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x.powi(3));
        assert!((ln_gamma(x) - stirling).abs() < 1e-10);
    }

    /// Explicit sum `Σ_k binom(n+a, n−k) (−x)^k / k!`.
    fn laguerre_series(n: u32, a: f64, x: f64) -> f64 {
        let binom = |top: f64, k: u32| -> f64 {
            (0..k).fold(1.0, |acc, j| acc * (top - f64::from(j)) / f64::from(j + 1))
        };
        (0..=n)
            .map(|k| {
                let kf = (1..=k).map(f64::from).product::<f64>();
                binom(f64::from(n) + a, n - k) * (-x).powi(k as i32) / kf
            })
            .sum()
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, 0.3, 2.0), 1.0);
        assert!((laguerre(1, 0.3, 2.0) - (1.0 + 0.3 - 2.0)).abs() < 1e-15);
        let v = laguerre(3, 0.5, 1.0);
        assert!((v - laguerre_series(3, 0.5, 1.0)).abs() < 1e-14);
        for n in 0..8 {
            for &a in &[-0.4, 0.0, 0.5, 1.7, 6.2] {
                for &x in &[0.0, 0.3, 1.0, 4.5, 12.0] {
                    let (r, s) = (laguerre(n, a, x), laguerre_series(n, a, x));
                    assert!((r - s).abs() <= 1e-10 * s.abs().max(1.0), "n={n} a={a} x={x}");
                }
            }
        }
    }
}
