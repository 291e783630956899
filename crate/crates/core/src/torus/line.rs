use std::f64::consts::TAU;

use num::complex::Complex64;
use rayon::prelude::*;

use super::grid::pairwise_sum;
use crate::error::{Error, Result};

/// Torus line `ω ↦ (e^{iη_1 ω}, …, e^{iη_d ω})`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusLine {
    eta: Vec<f64>,
}

impl TorusLine {
    pub fn new(eta: Vec<f64>) -> Result<Self> {
        if eta.is_empty() {
            return Err(Error::InvalidArgument("eta must be nonempty".into()));
        }
        if let Some(index) = eta.iter().position(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(Error::NonPositiveEta { index });
        }
        Ok(TorusLine { eta })
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    pub fn dim(&self) -> usize {
        self.eta.len()
    }

    pub fn point(&self, omega: f64) -> Vec<Complex64> {
        self.eta
            .iter()
            .map(|e| Complex64::from_polar(1.0, e * omega))
            .collect()
    }

    /// Line with every frequency multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<TorusLine> {
        TorusLine::new(self.eta.iter().map(|e| e * c).collect())
    }

    /// `2π / (20 Ω)` with `Ω = (Σ η_j) · max(degree, 1)`.
    pub fn default_step(&self, degree: usize) -> f64 {
        let omega: f64 = self.eta.iter().sum::<f64>() * degree.max(1) as f64;
        TAU / (20.0 * omega)
    }

    /// Composite trapezoid approximation of `(1/2L) ∫_{-L}^{L} g(ℓ_η(ω)) dω`.
    ///
    /// The step is shrunk to `2L / ceil(2L / step)` so the nodes hit both endpoints.
    pub fn try_line_average<G>(&self, g: G, l: f64, step: f64) -> Result<f64>
    where
        G: Fn(&[Complex64]) -> Result<f64> + Sync,
    {
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "L must be positive, got {l}"
            )));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "step must be positive, got {step}"
            )));
        }
        let n = (2.0 * l / step).ceil().max(1.0) as usize;
        let h = 2.0 * l / n as f64;
        let v: Vec<f64> = (0..=n)
            .into_par_iter()
            .map(|k| {
                let omega = -l + h * k as f64;
                let w = if k == 0 || k == n { 0.5 } else { 1.0 };
                Ok(w * g(&self.point(omega))?)
            })
            .collect::<Result<_>>()?;
        if let Some(k) = v.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                location: format!("line point omega = {}", -l + h * k as f64),
            });
        }
        Ok(pairwise_sum(&v) / n as f64)
    }

    pub fn line_average<G>(&self, g: G, l: f64, step: f64) -> Result<f64>
    where
        G: Fn(&[Complex64]) -> f64 + Sync,
    {
        self.try_line_average(|z| Ok(g(z)), l, step)
    }
}
