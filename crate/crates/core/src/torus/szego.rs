use num::complex::Complex64;
use serde::Serialize;

use super::TorusGrid;
use crate::error::{Error, Result};
use crate::schur::{SchurData, SchurModel};

/// Above this parameter modulus the integrands approach a singularity.
pub const NEAR_SINGULAR: f64 = 0.95;

/// `∫ log(1 - |f_m|²) dτ` against `Σ log(1 - |r_j|²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SzegoIntegral {
    pub value: f64,
    pub reference: f64,
    /// Set when some `|r_j| > 0.95`; refine the grid before trusting `value`.
    pub near_singular: bool,
}

impl SzegoIntegral {
    pub fn error(&self) -> f64 {
        (self.value - self.reference).abs()
    }
}

/// `∫ log w dτ` with `w = Re((1 + f_m)/(1 - f_m))`, plus the outer-function integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SzegoLogW {
    pub value: f64,
    pub reference: f64,
    /// `∫ log|1 - f_m| dτ`, which vanishes
    pub outer: f64,
    pub near_singular: bool,
}

impl SzegoLogW {
    pub fn error(&self) -> f64 {
        (self.value - self.reference).abs()
    }
}

fn model_on(data: &SchurData, grid: &TorusGrid) -> Result<SchurModel> {
    if data.dim() != grid.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            found: grid.dim(),
        });
    }
    SchurModel::new(data.clone())
}

pub fn szego_integral(data: &SchurData, grid: &TorusGrid) -> Result<SzegoIntegral> {
    let model = model_on(data, grid)?;
    let value = grid.try_integrate(|z| Ok((1.0 - model.eval(z)?.norm_sqr()).ln()))?;
    Ok(SzegoIntegral {
        value,
        reference: data.log_norm_sum(),
        near_singular: data.max_modulus() > NEAR_SINGULAR,
    })
}

pub fn szego_log_w(data: &SchurData, grid: &TorusGrid) -> Result<SzegoLogW> {
    let model = model_on(data, grid)?;
    let one = Complex64::new(1.0, 0.0);
    let pair = grid.try_integrate_many(1, |z| {
        let f = model.eval(z)?;
        Ok(vec![Complex64::new(
            ((one + f) / (one - f)).re.ln(),
            (one - f).norm().ln(),
        )])
    })?[0];
    Ok(SzegoLogW {
        value: pair.re,
        reference: data.log_norm_sum(),
        outer: pair.im,
        near_singular: data.max_modulus() > NEAR_SINGULAR,
    })
}

/// `∫ log Re((1 + h)/(1 - h)) dτ` for an arbitrary function `h` into the disk.
pub fn log_density_integral<H>(grid: &TorusGrid, h: H) -> Result<f64>
where
    H: Fn(&[Complex64]) -> Complex64 + Sync,
{
    let one = Complex64::new(1.0, 0.0);
    grid.integrate(|z| {
        let v = h(z);
        ((one + v) / (one - v)).re.ln()
    })
}

/// `h(z_1, z_2) = (z_1 + z_2) / 4`, whose log-density integral differs from `log(3/4)`.
pub fn counterexample(z: &[Complex64]) -> Complex64 {
    (z[0] + z[1]) / 4.0
}

/// Closed form `-log(112 - 64√3)` of the counterexample's log-density integral.
pub fn counterexample_reference() -> f64 {
    -(112.0 - 64.0 * 3f64.sqrt()).ln()
}

/// `Λ(ε) = -∫ log(1 - |f_m(εz)|²) dτ`.
pub fn lambda(data: &SchurData, grid: &TorusGrid, eps: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidArgument(format!(
            "dilation {eps} outside [0, 1]"
        )));
    }
    let model = model_on(data, grid)?;
    grid.try_integrate(|z| {
        let w: Vec<Complex64> = z.iter().map(|zj| zj * eps).collect();
        Ok(-(1.0 - model.eval(&w)?.norm_sqr()).ln())
    })
}

/// `Λ` at each dilation, and whether the values strictly increase.
pub fn lambda_profile(data: &SchurData, grid: &TorusGrid, eps: &[f64]) -> Result<(Vec<f64>, bool)> {
    let values = eps
        .iter()
        .map(|&e| lambda(data, grid, e))
        .collect::<Result<Vec<_>>>()?;
    let increasing = values.windows(2).all(|w| w[1] > w[0]);
    Ok((values, increasing))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn one_step_szego() {
        let data = SchurData::new(1, vec![c(0.0, 0.0), c(0.5, 0.0)], vec![1]).unwrap();
        let grid = TorusGrid::new(1, 64).unwrap();
        let s = szego_integral(&data, &grid).unwrap();
        assert!((s.value - 0.75f64.ln()).abs() < 1e-10);
        assert!(!s.near_singular);
        let w = szego_log_w(&data, &grid).unwrap();
        assert!((w.value - 0.75f64.ln()).abs() < 1e-10);
        assert!(w.outer.abs() < 1e-10);
    }

    #[test]
    fn trivial_data() {
        let data = SchurData::trivial(2).unwrap();
        let grid = TorusGrid::new(2, 8).unwrap();
        assert_eq!(szego_integral(&data, &grid).unwrap().value, 0.0);
        assert_eq!(szego_log_w(&data, &grid).unwrap().value, 0.0);
        let (_, inc) = lambda_profile(&data, &grid, &[0.2, 0.4]).unwrap();
        assert!(!inc);
    }

    #[test]
    fn flags_near_singular() {
        let data = SchurData::new(1, vec![c(0.0, 0.0), c(0.97, 0.0)], vec![1]).unwrap();
        let grid = TorusGrid::new(1, 16).unwrap();
        assert!(szego_integral(&data, &grid).unwrap().near_singular);
    }

    #[test]
    fn closed_form_value() {
        assert!((counterexample_reference() + 0.138_672_9).abs() < 1e-6);
    }
}
