use num::complex::Complex64;

use super::PolyQuad;
use crate::error::{Error, Result};
use crate::poly::TorusPoly;

pub const DEFAULT_MAX_STEPS: usize = 64;

const BOUNDARY_TOL: f64 = 1e-12;
const DIVISIBILITY_TOL: f64 = 1e-12;
const ZERO_TOL: f64 = 1e-12;

fn sup(p: &[Complex64]) -> f64 {
    p.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn trim(mut p: Vec<Complex64>) -> Vec<Complex64> {
    while p.last() == Some(&Complex64::new(0.0, 0.0)) {
        p.pop();
    }
    p
}

/// Schur parameters of the univariate rational function `num / den`.
///
/// Polynomials are coefficient vectors in ascending powers. Each step extracts
/// `r_n = h_n(0)` and forms `h_{n+1} = (h_n - r_n) / (z (1 - conj(r_n) h_n))`;
/// the factor `z` is cancelled after discarding the (rounding-level) constant term.
/// Stops after the first zero parameter whose remainder vanishes, or after `max_steps`.
pub fn schur_algorithm_1d(
    num: &[Complex64],
    den: &[Complex64],
    max_steps: usize,
) -> Result<Vec<Complex64>> {
    let mut num = trim(num.to_vec());
    let mut den = trim(den.to_vec());
    if den.first().is_none_or(|d| d.norm() == 0.0) {
        return Err(Error::InvalidArgument(
            "denominator must be nonzero at 0".into(),
        ));
    }
    let mut out = Vec::new();
    for index in 0..max_steps {
        let scale = sup(&den);
        if sup(&num) <= ZERO_TOL * scale {
            out.push(Complex64::new(0.0, 0.0));
            break;
        }
        let r = num.first().copied().unwrap_or_default() / den[0];
        if r.norm() >= 1.0 - BOUNDARY_TOL {
            return Err(Error::ParameterOnBoundary {
                index,
                modulus: r.norm(),
            });
        }
        out.push(r);
        let len = num.len().max(den.len());
        let at = |p: &[Complex64], i: usize| p.get(i).copied().unwrap_or_default();
        let shifted: Vec<Complex64> = (0..len).map(|i| at(&num, i) - r * at(&den, i)).collect();
        let residual = shifted[0].norm() / scale;
        if residual > DIVISIBILITY_TOL {
            return Err(Error::NotDivisible {
                step: index,
                residual,
            });
        }
        let new_den: Vec<Complex64> = (0..len)
            .map(|i| at(&den, i) - r.conj() * at(&num, i))
            .collect();
        num = trim(shifted[1..].to_vec());
        den = trim(new_den);
    }
    Ok(out)
}

fn univariate_coeffs(p: &TorusPoly) -> Vec<Complex64> {
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); deg + 1];
    for (m, c) in p.terms() {
        out[m.exponents()[0] as usize] = *c;
    }
    trim(out)
}

/// Coefficient vectors of `Ψ*_n - Φ*_n` and `Ψ*_n + Φ*_n` for a one-variable quad.
pub fn univariate_rational(quad: &PolyQuad) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    if quad.psi.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: quad.psi.dim(),
        });
    }
    Ok((
        univariate_coeffs(&quad.numerator()?),
        univariate_coeffs(&quad.denominator()?),
    ))
}
