//! Schur functions from Schur parameters and a variable allocation.
//!
//! With `M_0 = [[1, 1], [-1, 1]]` and `M_n = [[z_{ν_n}, r_n z_{ν_n}], [conj r_n, 1]]`
//! the product `P_n = M_0 ⋯ M_n` has entries `[[Ψ_n, Ψ*_n], [-Φ_n, Φ*_n]]`, and the
//! `n`-th convergent is `f_n = (Ψ*_n - Φ*_n) / (Ψ*_n + Φ*_n)`.

mod data;
pub mod identities;
mod inverse;
mod model;
mod quads;
mod substitution;
mod taylor;

pub use data::SchurData;
pub use inverse::{schur_algorithm_1d, univariate_rational, DEFAULT_MAX_STEPS};
pub use model::{eval_convergent, eval_g, eval_tail, SchurModel};
pub use quads::{build_quads, PolyQuad};
pub use substitution::{substitute, MonomialSubstitution};
pub use taylor::{series_max_diff, taylor_from_rational, taylor_from_weights, TaylorSeries};
