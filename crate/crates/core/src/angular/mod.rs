//! Deformed angular sector: exact su_q(2) generators on a closed function
//! class, q-spherical harmonics and the deformed scalar product.

mod function;
mod harmonic;
mod operators;
mod product;

pub use function::{AngularFunction, Factor, Term, FACTOR_MERGE_TOL, TERM_DROP_TOL};
pub use harmonic::{angular_profile, norm_constant, spherical_harmonic, QSphericalHarmonic};
pub use operators::{
    apply_casimir, apply_generator, apply_j3, apply_jminus, apply_jplus, bracket_operator,
    commutator_j3, commutator_plus_minus, scale_operator, ScaleOp,
};
pub use product::{
    constructible_labels, deformed_inner_product, deformed_matrix_element, gram_matrix,
    scalar_product_prefactor, ScalarProduct, IMAGINARY_TOL,
};

/// `evaluate(f, θ, φ)`.
pub fn evaluate(f: &AngularFunction, theta: f64, phi: f64) -> crate::Result<num_complex::Complex64> {
    f.evaluate(theta, phi)
}
