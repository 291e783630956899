//! Quadrature on `T^d` against normalized Lebesgue measure, torus-line averages,
//! and the measure identities of Schur convergents.

mod grid;
mod line;
mod measures;
mod szego;

pub use grid::{pairwise_sum, TorusGrid};
pub use line::TorusLine;
pub use measures::{
    allocation_monomials, gram, poisson_check, poisson_kernel, star_orthogonality, Gram,
    MeasureWeight, PoissonCheck, POISSON_RADIUS,
};
pub use szego::{
    counterexample, counterexample_reference, lambda, lambda_profile, log_density_integral,
    szego_integral, szego_log_w, SzegoIntegral, SzegoLogW, NEAR_SINGULAR,
};
