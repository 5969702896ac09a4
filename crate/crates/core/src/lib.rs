//! Solutions of the su_q(2)-invariant Schrödinger equation of the
//! three-dimensional isotropic harmonic oscillator (units ħ = μ = ω = 1).
//!
//! - [`qnum`]: q-brackets, q-factorials, Casimir eigenvalues, λ and γ
//! - [`angular`]: su_q(2) generators on angular functions, q-spherical
//!   harmonics and the deformed scalar product
//! - [`radial`]: admissible exponents, radial wave functions, ⟨r²⟩
//! - [`spectrum`]: level enumeration, closed forms, small-w series, figure data
//! - [`observables`]: quadrupole moment of l = 0 states
//! - [`table`], [`check`]: tabular output and the invariant suite
//! - [`config`], [`cli`]: layered run configuration and the command line

pub mod angular;
pub mod check;
pub mod cli;
pub mod config;
pub mod error;
pub mod qnum;
pub mod quad;
pub mod observables;
pub mod radial;
pub mod spectrum;
pub mod special;
pub mod table;

pub use error::{Error, Result};
pub use qnum::{CasimirKind, QParam, Regime};
