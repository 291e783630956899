//! Exact decomposition of a positive frequency vector `η` as `A q`, with `A` a
//! non-negative integer matrix and `q` positive, so that `ℓ_η = σ_A ∘ ℓ_q`.

mod decompose;
mod field;

pub use decompose::{
    decompose, decompose_with_budget, factorization_residual, verify, Certificate,
    LatticeDecomposition, LatticeInput, DEFAULT_APPROXIMANTS,
};
pub use field::{parse_rational, QuadElem, QuadField};
