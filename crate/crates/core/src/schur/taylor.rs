use std::collections::BTreeMap;

use num::complex::Complex64;

use super::{PolyQuad, SchurData};
use crate::error::{Error, Result};
use crate::poly::{Monomial, TorusPoly};
use crate::scattering::{enumerate_indices, weight};

/// Truncated power series: monomial to coefficient, exact zeros omitted.
pub type TaylorSeries = BTreeMap<Monomial, Complex64>;

fn accumulate(series: &mut TaylorSeries, m: Monomial, c: Complex64) {
    let slot = series.entry(m.clone()).or_insert(Complex64::new(0.0, 0.0));
    *slot += c;
    if *slot == Complex64::new(0.0, 0.0) {
        series.remove(&m);
    }
}

/// Taylor coefficients up to total degree `max_degree` as sums of scattering weights.
///
/// Each admissible multi-index `α` contributes `c_α(r)` to `z_{ν_1}^{α_1} ⋯ z_{ν_n}^{α_n}`.
pub fn taylor_from_weights(data: &SchurData, max_degree: u32) -> Result<TaylorSeries> {
    let mut out = TaylorSeries::new();
    for alpha in enumerate_indices(data.top_level(), max_degree) {
        let c = weight(&alpha, data.r())?;
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut e = vec![0u32; data.dim()];
        for (j, &a) in alpha.entries().iter().enumerate() {
            e[data.nu()[j]] += a;
        }
        accumulate(&mut out, Monomial::new(e), c);
    }
    Ok(out)
}

fn by_degree(p: &TorusPoly) -> BTreeMap<u32, Vec<(Monomial, Complex64)>> {
    let mut out: BTreeMap<u32, Vec<_>> = BTreeMap::new();
    for (m, c) in p.terms() {
        out.entry(m.total_degree())
            .or_default()
            .push((m.clone(), *c));
    }
    out
}

/// Taylor coefficients of `(Ψ*_n - Φ*_n) / (Ψ*_n + Φ*_n)` by power-series division,
/// degree by degree up to total degree `max_degree`.
pub fn taylor_from_rational(quad: &PolyQuad, max_degree: u32) -> Result<TaylorSeries> {
    let num = by_degree(&quad.numerator()?);
    let den_poly = quad.denominator()?;
    let den0 = den_poly.constant_term();
    if den0 == Complex64::new(0.0, 0.0) {
        return Err(Error::IllConditioned { modulus: 0.0 });
    }
    let den = by_degree(&den_poly);
    // quotient coefficients grouped by total degree
    let mut q: Vec<TaylorSeries> = Vec::with_capacity(max_degree as usize + 1);
    for t in 0..=max_degree {
        let mut acc = TaylorSeries::new();
        if let Some(terms) = num.get(&t) {
            for (m, c) in terms {
                accumulate(&mut acc, m.clone(), *c);
            }
        }
        let higher = if t == 0 {
            den.range(1..1)
        } else {
            den.range(1..=t)
        };
        for (&k, dterms) in higher {
            for (dm, dc) in dterms {
                for (qm, qc) in &q[(t - k) as usize] {
                    accumulate(&mut acc, dm.mul(qm), -dc * qc);
                }
            }
        }
        for c in acc.values_mut() {
            *c /= den0;
        }
        q.push(acc);
    }
    Ok(q.into_iter().flatten().collect())
}

/// Largest coefficient difference between two series over the union of supports.
pub fn series_max_diff(a: &TaylorSeries, b: &TaylorSeries) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    a.keys()
        .chain(b.keys())
        .map(|m| {
            let x = a.get(m).copied().unwrap_or(zero);
            let y = b.get(m).copied().unwrap_or(zero);
            (x - y).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::build_quads;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn level_zero_series_is_zero() {
        let data = SchurData::trivial(2).unwrap();
        let q = &build_quads(&data).unwrap()[0];
        assert!(taylor_from_rational(q, 5).unwrap().is_empty());
        assert!(taylor_from_weights(&data, 5).unwrap().is_empty());
    }

    #[test]
    fn low_order_coefficients() {
        let (r1, r2) = (c(0.3, -0.1), c(-0.2, 0.25));
        let data = SchurData::new(2, vec![c(0.0, 0.0), r1, r2], vec![1, 2]).unwrap();
        let w = taylor_from_weights(&data, 3).unwrap();
        let z1 = Monomial::new(vec![1, 0]);
        let z1z2 = Monomial::new(vec![1, 1]);
        assert!((w[&z1] - r1).norm() < 1e-15);
        assert!((w[&z1z2] - (1.0 - r1.norm_sqr()) * r2).norm() < 1e-15);
        let quads = build_quads(&data).unwrap();
        let rat = taylor_from_rational(&quads[2], 3).unwrap();
        assert!(series_max_diff(&w, &rat) < 1e-14);
    }
}
