use num::complex::Complex64;

use super::SchurData;
use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Substitution `z_j ↦ w^{κ(j)}` from `d` variables into `D` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSubstitution {
    target_dim: usize,
    kappa: Vec<Monomial>,
}

impl MonomialSubstitution {
    /// `kappa[j]` is the exponent vector (length `target_dim`) replacing variable `j`.
    pub fn new(target_dim: usize, kappa: Vec<Vec<u32>>) -> Result<Self> {
        let kappa = kappa
            .into_iter()
            .enumerate()
            .map(|(j, e)| {
                if e.len() != target_dim {
                    return Err(Error::DimensionMismatch {
                        expected: target_dim,
                        found: e.len(),
                    });
                }
                let m = Monomial::new(e);
                if m.is_one() {
                    return Err(Error::ZeroMultiIndex { variable: j + 1 });
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialSubstitution { target_dim, kappa })
    }

    /// `κ(j) = e_j`.
    pub fn identity(dim: usize) -> Self {
        MonomialSubstitution {
            target_dim: dim,
            kappa: (0..dim).map(|j| Monomial::var(dim, j)).collect(),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.kappa.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn kappa(&self) -> &[Monomial] {
        &self.kappa
    }

    /// `(w^{κ(1)}, …, w^{κ(d)})`
    pub fn apply(&self, w: &[Complex64]) -> Vec<Complex64> {
        self.kappa.iter().map(|m| m.eval(w)).collect()
    }

    /// Variables of `κ(j)` in ascending order, each repeated by its exponent (0-based).
    fn ordering(&self, j: usize) -> Vec<usize> {
        self.kappa[j]
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(v, &e)| std::iter::repeat_n(v, e as usize))
            .collect()
    }

    /// Level of the substituted data that corresponds to level `n` of the source.
    pub fn level(&self, data: &SchurData, n: usize) -> usize {
        data.nu()[..n]
            .iter()
            .map(|&v| self.kappa[v].total_degree() as usize)
            .sum()
    }
}

/// Data in `D` variables whose convergents satisfy `f̃_{n'}(w) = f_n(w^κ)`, where
/// `n' = sub.level(data, n)`. Step `j` becomes the block `(0, …, 0, r_j)`.
pub fn substitute(data: &SchurData, sub: &MonomialSubstitution) -> Result<SchurData> {
    if sub.source_dim() != data.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            found: sub.source_dim(),
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut r = vec![zero];
    let mut nu = Vec::new();
    for j in 1..=data.top_level() {
        let order = sub.ordering(data.nu_at(j));
        r.extend(std::iter::repeat_n(zero, order.len() - 1));
        r.push(data.r()[j]);
        nu.extend(order.into_iter().map(|v| v + 1));
    }
    SchurData::new(sub.target_dim(), r, nu)
}
