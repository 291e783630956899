//! Sparse polynomial arithmetic.
//!
//! [`TorusPoly`] carries the orthogonal polynomials in `d` variables with
//! floating complex coefficients; [`HermitianPoly`] is the exact integer ring
//! in `(z, z̄)` used for scattering polynomials.

mod hermitian;
mod monomial;
mod torus_poly;

pub use hermitian::HermitianPoly;
pub use monomial::Monomial;
pub use torus_poly::TorusPoly;
