//! Residuals of the structural identities satisfied by the quads.
//!
//! Polynomial identities are measured as the largest coefficient difference;
//! pointwise identities on the torus as relative errors.

use num::complex::Complex64;

use super::{build_quads, PolyQuad, SchurData, SchurModel};
use crate::error::Result;
use crate::poly::TorusPoly;

/// `Ψ_n Φ*_n + Φ_n Ψ*_n - 2 z_{ν_1}⋯z_{ν_n} ∏(1 - |r_j|²)`, largest coefficient.
pub fn determinant_residual(data: &SchurData, quad: &PolyQuad) -> Result<f64> {
    let n = quad.level;
    let lhs = quad
        .psi
        .mul(&quad.phi_star)?
        .add(&quad.phi.mul(&quad.psi_star)?)?;
    let rhs = TorusPoly::monomial(
        data.allocation_monomial(n),
        Complex64::new(2.0 * data.norm_product(n), 0.0),
    );
    lhs.max_coeff_diff(&rhs)
}

/// Largest coefficient difference between `star(Φ_n)` and `Φ*_n`, and likewise for `Ψ`.
pub fn star_residual(data: &SchurData, quad: &PolyQuad) -> Result<f64> {
    let bound = data.allocation_monomial(quad.level);
    let phi = quad.phi.star(&bound)?.max_coeff_diff(&quad.phi_star)?;
    let psi = quad.psi.star(&bound)?.max_coeff_diff(&quad.psi_star)?;
    Ok(phi.max(psi))
}

/// Whether negating all parameters swaps `Φ ↔ Ψ` and `Φ* ↔ Ψ*` exactly, at every level.
pub fn sign_flip_swaps(data: &SchurData) -> Result<bool> {
    let a = build_quads(data)?;
    let b = build_quads(&data.negated())?;
    Ok(a.iter().zip(&b).all(|(p, q)| {
        p.phi == q.psi && p.psi == q.phi && p.phi_star == q.psi_star && p.psi_star == q.phi_star
    }))
}

/// Pointwise relative residuals at a torus point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointResiduals {
    /// `Re((1 + f_n)/(1 - f_n))` against `∏(1 - |r_j|²)/|Φ*_n|²`
    pub real_part: f64,
    /// `1 - |f_n|²` against `|g_n|²`
    pub transmission: f64,
    /// `(1 - |f|²)|1 + B k_n|²` against `(1 - |f_n|²)(1 - |k_n|²)`; `None` at the top level
    pub tail: Option<f64>,
    /// `f` against the recombination of `f_n`-data with `k_n`; `None` at the top level
    pub recombination: Option<f64>,
    /// `|B_n|` against `|f_n|`
    pub b_modulus: f64,
}

impl PointResiduals {
    pub fn max(&self) -> f64 {
        [
            self.real_part,
            self.transmission,
            self.tail.unwrap_or(0.0),
            self.recombination.unwrap_or(0.0),
            self.b_modulus,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn rel_c(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Residuals of the pointwise identities at level `n` and torus point `z`.
pub fn point_residuals(model: &SchurModel, n: usize, z: &[Complex64]) -> Result<PointResiduals> {
    let one = Complex64::new(1.0, 0.0);
    let fz = model.eval_convergent(n, z)?;
    let w = model.weight_density(n, z)?;
    let real_part = rel(((one + fz) / (one - fz)).re, w);
    let g = model.eval_g(n, z)?;
    let transmission = rel(1.0 - fz.norm_sqr(), g.norm_sqr());
    let b = model.eval_b(n, z)?;
    let b_modulus = (b.norm() - fz.norm()).abs() / fz.norm().max(1.0);
    let (tail, recombination) = if n < model.top_level() {
        let f = model.eval(z)?;
        let k = model.eval_tail(n, z)?;
        let lhs = (1.0 - f.norm_sqr()) * (one + b * k).norm_sqr();
        let rhs = (1.0 - fz.norm_sqr()) * (1.0 - k.norm_sqr());
        (
            Some(rel(lhs, rhs)),
            Some(rel_c(model.recombine(n, k, z)?, f)),
        )
    } else {
        (None, None)
    };
    Ok(PointResiduals {
        real_part,
        transmission,
        tail,
        recombination,
        b_modulus,
    })
}

/// Smallest of `|Φ*_n(z)|` and `|Ψ*_n(z) + Φ*_n(z)|` over the given points.
pub fn zero_free_min<'a, I>(model: &SchurModel, n: usize, points: I) -> Result<f64>
where
    I: IntoIterator<Item = &'a [Complex64]>,
{
    let mut min = f64::INFINITY;
    for z in points {
        let [_, ps, _, fs] = model.eval_quad(n, z)?;
        min = min.min(fs.norm()).min((ps + fs).norm());
    }
    Ok(min)
}
