use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Schur parameters `r_0..r_m` and variable allocation `ν_1..ν_m` in dimension `d`.
///
/// Only standard data is accepted: `r_0 = 0` and `|r_j| < 1`. The allocation is
/// 1-based in the public constructor and in JSON, 0-based in [`SchurData::nu`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "SchurDataRepr", try_from = "SchurDataRepr")]
pub struct SchurData {
    dim: usize,
    r: Vec<Complex64>,
    nu: Vec<usize>,
}

impl SchurData {
    /// `nu` holds 1-based variable indices.
    pub fn new(dim: usize, r: Vec<Complex64>, nu: Vec<usize>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSchurData(
                "dimension must be at least 1".into(),
            ));
        }
        if r.is_empty() {
            return Err(Error::InvalidSchurData("r must contain r_0".into()));
        }
        if r[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidSchurData(format!(
                "r_0 must be 0 for a standard Schur function, got {}",
                r[0]
            )));
        }
        for (j, rj) in r.iter().enumerate() {
            if !(rj.norm() < 1.0) {
                return Err(Error::InvalidSchurData(format!(
                    "|r_{j}| = {} is not < 1",
                    rj.norm()
                )));
            }
        }
        if nu.len() + 1 != r.len() {
            return Err(Error::InvalidSchurData(format!(
                "nu has {} entries, expected {}",
                nu.len(),
                r.len() - 1
            )));
        }
        let nu = nu
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                if (1..=dim).contains(&v) {
                    Ok(v - 1)
                } else {
                    Err(Error::InvalidSchurData(format!(
                        "nu_{} = {v} outside 1..={dim}",
                        i + 1
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SchurData { dim, r, nu })
    }

    /// Zero function: `r = (0)`, empty allocation.
    pub fn trivial(dim: usize) -> Result<Self> {
        Self::new(dim, vec![Complex64::new(0.0, 0.0)], Vec::new())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `r_0..r_m`
    pub fn r(&self) -> &[Complex64] {
        &self.r
    }

    /// 0-based variable index of step `j` (1-based step), i.e. `ν_j - 1`.
    pub fn nu_at(&self, j: usize) -> usize {
        self.nu[j - 1]
    }

    /// 0-based allocation `ν_1 - 1, …, ν_m - 1`.
    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    /// 1-based allocation, as serialized.
    pub fn nu_one_based(&self) -> Vec<usize> {
        self.nu.iter().map(|v| v + 1).collect()
    }

    /// Top level `m` (number of steps).
    pub fn top_level(&self) -> usize {
        self.r.len() - 1
    }

    /// Exponent vector of `z_{ν_1} ⋯ z_{ν_n}`.
    pub fn allocation_monomial(&self, n: usize) -> Monomial {
        let mut e = vec![0u32; self.dim];
        for &v in &self.nu[..n] {
            e[v] += 1;
        }
        Monomial::new(e)
    }

    /// `∏_{j=1}^n (1 - |r_j|²)`
    pub fn norm_product(&self, n: usize) -> f64 {
        self.r[1..=n].iter().map(|r| 1.0 - r.norm_sqr()).product()
    }

    /// `Σ_{j=1}^m log(1 - |r_j|²)`
    pub fn log_norm_sum(&self) -> f64 {
        self.r[1..].iter().map(|r| (1.0 - r.norm_sqr()).ln()).sum()
    }

    pub fn max_modulus(&self) -> f64 {
        self.r.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }

    /// All parameters negated; swaps `Φ ↔ Ψ` and `Φ* ↔ Ψ*`.
    pub fn negated(&self) -> SchurData {
        SchurData {
            dim: self.dim,
            r: self.r.iter().map(|r| -r).collect(),
            nu: self.nu.clone(),
        }
    }

    /// Keep `r_0..r_n`.
    pub fn truncated(&self, n: usize) -> Result<SchurData> {
        if n > self.top_level() {
            return Err(Error::LevelOutOfRange {
                level: n,
                max: self.top_level(),
            });
        }
        Ok(SchurData {
            dim: self.dim,
            r: self.r[..=n].to_vec(),
            nu: self.nu[..n].to_vec(),
        })
    }

    /// Whether every parameter is zero (the zero function).
    pub fn is_trivial(&self) -> bool {
        self.r.iter().all(|r| *r == Complex64::new(0.0, 0.0))
    }
}

#[derive(Serialize, Deserialize)]
struct SchurDataRepr {
    d: usize,
    r: Vec<[f64; 2]>,
    nu: Vec<usize>,
}

impl From<SchurData> for SchurDataRepr {
    fn from(s: SchurData) -> Self {
        SchurDataRepr {
            d: s.dim,
            r: s.r.iter().map(|c| [c.re, c.im]).collect(),
            nu: s.nu_one_based(),
        }
    }
}

impl TryFrom<SchurDataRepr> for SchurData {
    type Error = Error;

    fn try_from(r: SchurDataRepr) -> Result<Self> {
        SchurData::new(
            r.d,
            r.r.iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect(),
            r.nu,
        )
    }
}
