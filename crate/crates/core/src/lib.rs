//! Multivariate Schur functions and their orthogonal polynomials on the torus.
//!
//! Starting from a finite sequence of Schur parameters `r` and a variable
//! allocation `nu`, the crate builds the 2×2 matrix products whose entries are
//! the polynomials `Psi_n`, `Psi*_n`, `Phi_n`, `Phi*_n`, evaluates convergents
//! and tails, computes Taylor coefficients (through scattering weights and
//! through power-series division), and checks the measure-theoretic identities
//! on the torus by tensor trapezoid quadrature.
//!
//! Module map:
//!
//! - [`poly`]: sparse polynomials in `d` complex variables and the exact
//!   integer `(z, z̄)` ring.
//! - [`scattering`]: scattering polynomials, Laplace–Beltrami eigen check,
//!   scattering weights.
//! - [`schur`]: the Schur function engine.
//! - [`torus`]: quadrature over `T^d`, torus lines and measure checks.
//! - [`lattice`]: exact lattice decomposition `eta = A q`.
//! - [`layered`]: piecewise-constant impedance media and the trace formula.
//! - [`verify`]: configuration, fixtures and the aggregated report.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x < y)` deliberately rejects NaN

pub mod error;
pub mod lattice;
pub mod layered;
pub mod poly;
pub mod scattering;
pub mod schur;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use num::complex::Complex64;
pub use poly::{HermitianPoly, Monomial, TorusPoly};
pub use schur::{PolyQuad, SchurData, SchurModel};
pub use torus::{TorusGrid, TorusLine};
