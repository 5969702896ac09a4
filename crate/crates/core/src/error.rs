use thiserror::Error;

/// Errors produced by the oscillator library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid deformation parameter: {0}")]
    InvalidParameter(String),

    #[error("w = {w} lies within {tol:e} of the root-of-unity angle {p}π/{s}")]
    RootOfUnity { w: f64, p: i64, s: u32, tol: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("harmonic Y({l},{m}) undefined at w = {w}: bracket [{j}]_q = {value} is not positive")]
    HarmonicUndefined {
        l: u32,
        m: i32,
        w: f64,
        j: u32,
        value: f64,
    },

    #[error("no real roots: 1/4 + C = {radicand} < 0")]
    NoRealRoots { radicand: f64 },

    #[error("quadrature did not converge: estimate {estimate}, error {error:e} (requested {requested:e})")]
    Quadrature {
        estimate: f64,
        error: f64,
        requested: f64,
    },

    #[error("inner product has non-negligible imaginary part {imag:e}")]
    ImaginaryResidue { imag: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
