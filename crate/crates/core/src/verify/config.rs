use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Tolerance per numeric claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub taylor: f64,
    pub coefficient: f64,
    pub pointwise: f64,
    pub round_trip: f64,
    pub gram: f64,
    pub gram_d3: f64,
    pub mass: f64,
    pub szego: f64,
    pub szego_d3: f64,
    pub poisson: f64,
    pub counterexample: f64,
    /// Minimum distance between the counterexample integral and `log(3/4)`.
    pub counterexample_gap: f64,
    pub birkhoff: f64,
    pub factorization: f64,
    pub cross_oracle: f64,
    pub trace_constant: f64,
    pub trace: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            taylor: 1e-10,
            coefficient: 1e-12,
            pointwise: 1e-10,
            round_trip: 1e-10,
            gram: 1e-8,
            gram_d3: 1e-6,
            mass: 1e-10,
            szego: 1e-8,
            szego_d3: 1e-6,
            poisson: 1e-8,
            counterexample: 1e-6,
            counterexample_gap: 0.14,
            birkhoff: 5e-3,
            factorization: 1e-12,
            cross_oracle: 1e-10,
            trace_constant: 1e-10,
            trace: 1e-2,
        }
    }
}

/// Settings of `run_verify_all`. Every field has a default; a partial JSON
/// object overrides only the fields it names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Model files; `None` uses the bundled fixtures.
    pub models: Option<Vec<String>>,
    /// Medium files; `None` uses the bundled media, an empty list skips layered checks.
    pub media: Option<Vec<String>>,
    /// Points per axis for the Szegő and monotonicity integrals; `None` means 64 for
    /// `d <= 2` and 32 otherwise.
    pub grid: Option<usize>,
    /// Points per axis for the pointwise identity sweep.
    pub identity_grid: usize,
    /// Points per axis for the Gram and orthogonality checks (`d <= 2`).
    pub gram_grid: usize,
    pub poisson_grid: usize,
    pub counterexample_grid: usize,
    pub eigen_max: u32,
    pub taylor_degree: u32,
    pub lambda_eps: Vec<f64>,
    pub birkhoff_eta: Vec<f64>,
    pub l_schedule: Vec<f64>,
    pub cross_oracle_samples: usize,
    pub omega_max: f64,
    pub factorization_samples: usize,
    pub seed: u64,
    /// Include wall-clock runtimes in the report (makes it non-reproducible).
    pub timing: bool,
    /// Run independent check groups concurrently; report order is unchanged.
    pub parallel: bool,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            models: None,
            media: None,
            grid: None,
            identity_grid: 32,
            gram_grid: 64,
            poisson_grid: 128,
            counterexample_grid: 256,
            eigen_max: 12,
            taylor_degree: 6,
            lambda_eps: vec![0.2, 0.4, 0.6, 0.8, 0.95],
            birkhoff_eta: vec![1.0, std::f64::consts::SQRT_2],
            l_schedule: vec![250.0, 500.0, 1000.0, 2000.0, 4000.0],
            cross_oracle_samples: 1000,
            omega_max: 100.0,
            factorization_samples: 100,
            seed: 0x5eed,
            timing: false,
            parallel: false,
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn load(path: &str) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Szegő grid for dimension `d`.
    pub fn grid_for(&self, d: usize) -> usize {
        self.grid
            .unwrap_or_else(|| crate::torus::TorusGrid::default_points(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_json_keeps_defaults() {
        let c = RunConfig::from_json(r#"{"grid": 4, "tolerances": {"trace": 0.5}}"#).unwrap();
        assert_eq!(c.grid, Some(4));
        assert_eq!(c.tolerances.trace, 0.5);
        assert_eq!(c.tolerances.taylor, 1e-10);
        assert_eq!(c.l_schedule.len(), 5);
        assert!(RunConfig::from_json(r#"{"gird": 4}"#).is_err());
    }

    #[test]
    fn grid_defaults() {
        let c = RunConfig::default();
        assert_eq!(c.grid_for(2), 64);
        assert_eq!(c.grid_for(3), 32);
    }
}
