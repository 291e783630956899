use std::collections::BTreeSet;

use num::complex::Complex64;
use serde::Serialize;

use super::TorusGrid;
use crate::error::{Error, Result};
use crate::poly::Monomial;
use crate::schur::{SchurData, SchurModel};

/// Density `w = ∏(1 - |r_j|²) / |Φ*_n|²` of the measure attached to level `n`.
#[derive(Debug, Clone)]
pub struct MeasureWeight {
    model: SchurModel,
    level: usize,
}

impl MeasureWeight {
    pub fn new(data: &SchurData, level: usize) -> Result<Self> {
        Ok(MeasureWeight {
            model: SchurModel::new(data.truncated(level)?)?,
            level,
        })
    }

    /// Weight of the top-level convergent.
    pub fn top(data: &SchurData) -> Result<Self> {
        Self::new(data, data.top_level())
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn model(&self) -> &SchurModel {
        &self.model
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<f64> {
        self.model.weight_density(self.level, z)
    }

    /// `∫ w dτ`, equal to 1 for a probability measure.
    pub fn mass(&self, grid: &TorusGrid) -> Result<f64> {
        grid.try_integrate(|z| self.eval(z))
    }
}

/// Gram matrix `G[j][k] = ∫ Φ_j conj(Φ_k) w dτ` with the expected diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gram {
    pub matrix: Vec<Vec<Complex64>>,
    /// `∏_{s ≤ j} (1 - |r_s|²)`
    pub reference: Vec<f64>,
}

impl Gram {
    pub fn max_off_diagonal(&self) -> f64 {
        let mut out: f64 = 0.0;
        for (j, row) in self.matrix.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if j != k {
                    out = out.max(v.norm());
                }
            }
        }
        out
    }

    pub fn max_diagonal_error(&self) -> f64 {
        self.reference
            .iter()
            .enumerate()
            .map(|(j, r)| (self.matrix[j][j] - r).norm())
            .fold(0.0, f64::max)
    }
}

fn check_dim(data: &SchurData, grid: &TorusGrid) -> Result<()> {
    if data.dim() != grid.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            found: grid.dim(),
        });
    }
    Ok(())
}

/// Gram matrix of `Φ_0, …, Φ_jmax` against the top-level measure.
pub fn gram(data: &SchurData, grid: &TorusGrid, jmax: usize) -> Result<Gram> {
    check_dim(data, grid)?;
    if jmax > data.top_level() {
        return Err(Error::LevelOutOfRange {
            level: jmax,
            max: data.top_level(),
        });
    }
    let weight = MeasureWeight::top(data)?;
    let quads = &weight.model().quads()[..=jmax];
    let size = jmax + 1;
    let flat = grid.try_integrate_many(size * size, |z| {
        let w = weight.eval(z)?;
        let phis: Vec<Complex64> = quads.iter().map(|q| q.phi.eval_unchecked(z)).collect();
        let mut row = Vec::with_capacity(size * size);
        for pj in &phis {
            for pk in &phis {
                row.push(pj * pk.conj() * w);
            }
        }
        Ok(row)
    })?;
    Ok(Gram {
        matrix: flat.chunks(size).map(<[_]>::to_vec).collect(),
        reference: (0..=jmax).map(|j| data.norm_product(j)).collect(),
    })
}

/// Distinct monomials `z_{ν_{i_1}} ⋯ z_{ν_{i_k}}` over nonempty `{i_1 < … < i_k} ⊆ {1..j}`.
pub fn allocation_monomials(data: &SchurData, j: usize) -> Vec<Monomial> {
    let mut set = BTreeSet::new();
    set.insert(Monomial::one(data.dim()));
    for &v in &data.nu()[..j] {
        let step = Monomial::var(data.dim(), v);
        let grown: Vec<Monomial> = set.iter().map(|m| m.mul(&step)).collect();
        set.extend(grown);
    }
    set.remove(&Monomial::one(data.dim()));
    set.into_iter().collect()
}

/// `max_{1≤j≤m, p} |∫ Φ*_j conj(p) w dτ|` over the allocation monomials `p` of level `j`.
pub fn star_orthogonality(data: &SchurData, grid: &TorusGrid) -> Result<f64> {
    check_dim(data, grid)?;
    let weight = MeasureWeight::top(data)?;
    let quads = weight.model().quads();
    let pairs: Vec<(usize, Monomial)> = (1..=data.top_level())
        .flat_map(|j| {
            allocation_monomials(data, j)
                .into_iter()
                .map(move |p| (j, p))
        })
        .collect();
    let ints = grid.try_integrate_many(pairs.len(), |z| {
        let w = weight.eval(z)?;
        Ok(pairs
            .iter()
            .map(|(j, p)| quads[*j].phi_star.eval_unchecked(z) * p.eval(z).conj() * w)
            .collect())
    })?;
    Ok(ints.iter().map(|c| c.norm()).fold(0.0, f64::max))
}

/// Two sides of the Poisson reproducing identity at an interior point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoissonCheck {
    /// `Re((1 + f(z)) / (1 - f(z)))`
    pub lhs: f64,
    /// `∫ K_z w dτ`
    pub rhs: f64,
}

impl PoissonCheck {
    pub fn error(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// Largest modulus accepted for the Poisson point.
pub const POISSON_RADIUS: f64 = 0.9;

/// Poisson kernel `K_z(ζ) = ∏ (1 - |z_j|²) / |ζ_j - z_j|²`.
pub fn poisson_kernel(z: &[Complex64], zeta: &[Complex64]) -> f64 {
    z.iter()
        .zip(zeta)
        .map(|(a, b)| (1.0 - a.norm_sqr()) / (b - a).norm_sqr())
        .product()
}

pub fn poisson_check(data: &SchurData, grid: &TorusGrid, z: &[Complex64]) -> Result<PoissonCheck> {
    check_dim(data, grid)?;
    if z.len() != data.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            found: z.len(),
        });
    }
    if let Some(zj) = z.iter().find(|zj| !(zj.norm() <= POISSON_RADIUS)) {
        return Err(Error::InvalidArgument(format!(
            "Poisson point coordinate {zj} has modulus above {POISSON_RADIUS}"
        )));
    }
    let weight = MeasureWeight::top(data)?;
    let one = Complex64::new(1.0, 0.0);
    let f = weight.model().eval(z)?;
    let lhs = ((one + f) / (one - f)).re;
    let rhs = grid.try_integrate(|zeta| Ok(poisson_kernel(z, zeta) * weight.eval(zeta)?))?;
    Ok(PoissonCheck { lhs, rhs })
}
