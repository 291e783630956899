use std::f64::consts::TAU;

use num::complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Sum in a fixed binary tree, so the result depends only on the order of `xs`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Tensor grid of `N` equispaced nodes per axis on `T^d`, each of weight `N^{-d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusGrid {
    dim: usize,
    n: usize,
    roots: Vec<Complex64>,
}

impl TorusGrid {
    pub fn new(dim: usize, points_per_axis: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("grid dimension must be >= 1".into()));
        }
        if points_per_axis < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 points per axis, got {points_per_axis}"
            )));
        }
        if (points_per_axis as u128)
            .checked_pow(dim as u32)
            .is_none_or(|t| t > 1 << 32)
        {
            return Err(Error::InvalidArgument("grid too large".into()));
        }
        let roots = (0..points_per_axis)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / points_per_axis as f64))
            .collect();
        Ok(TorusGrid {
            dim,
            n: points_per_axis,
            roots,
        })
    }

    /// 64 points per axis for `d <= 2`, 32 otherwise.
    pub fn default_for(dim: usize) -> Result<Self> {
        Self::new(dim, Self::default_points(dim))
    }

    pub fn default_points(dim: usize) -> usize {
        if dim <= 2 {
            64
        } else {
            32
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Per-axis node indices of the flat index `i`; the last axis varies fastest.
    pub fn node_indices(&self, mut i: usize) -> Vec<usize> {
        let mut k = vec![0; self.dim];
        for slot in k.iter_mut().rev() {
            *slot = i % self.n;
            i /= self.n;
        }
        k
    }

    pub fn node(&self, i: usize) -> Vec<Complex64> {
        self.node_indices(i)
            .into_iter()
            .map(|k| self.roots[k])
            .collect()
    }

    fn non_finite(&self, i: usize) -> Error {
        Error::NonFinite {
            location: format!("torus node {:?} of {}", self.node_indices(i), self.n),
        }
    }

    /// Values of `f` at every node, in node order.
    fn values<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&[Complex64]) -> Result<T> + Sync,
    {
        (0..self.len())
            .into_par_iter()
            .map(|i| f(&self.node(i)))
            .collect()
    }

    /// Mean of a fallible real integrand over the nodes.
    pub fn try_integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(&[Complex64]) -> Result<f64> + Sync,
    {
        let v = self.values(f)?;
        if let Some(i) = v.iter().position(|x| !x.is_finite()) {
            return Err(self.non_finite(i));
        }
        Ok(pairwise_sum(&v) / self.len() as f64)
    }

    /// Mean of a real integrand over the nodes.
    pub fn integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(&[Complex64]) -> f64 + Sync,
    {
        self.try_integrate(|z| Ok(f(z)))
    }

    /// Means of `k` complex integrands evaluated together at each node.
    pub fn try_integrate_many<F>(&self, k: usize, f: F) -> Result<Vec<Complex64>>
    where
        F: Fn(&[Complex64]) -> Result<Vec<Complex64>> + Sync,
    {
        let v = self.values(f)?;
        for (i, row) in v.iter().enumerate() {
            if row.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: row.len(),
                });
            }
            if row.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(self.non_finite(i));
            }
        }
        let total = self.len() as f64;
        let mut col = vec![0.0; v.len()];
        let mut out = Vec::with_capacity(k);
        for j in 0..k {
            col.iter_mut().zip(&v).for_each(|(c, row)| *c = row[j].re);
            let re = pairwise_sum(&col);
            col.iter_mut().zip(&v).for_each(|(c, row)| *c = row[j].im);
            let im = pairwise_sum(&col);
            out.push(Complex64::new(re / total, im / total));
        }
        Ok(out)
    }

    /// Mean of a fallible complex integrand over the nodes.
    pub fn try_integrate_complex<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(&[Complex64]) -> Result<Complex64> + Sync,
    {
        Ok(self.try_integrate_many(1, |z| Ok(vec![f(z)?]))?[0])
    }

    /// Mean of a complex integrand over the nodes.
    pub fn integrate_complex<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(&[Complex64]) -> Complex64 + Sync,
    {
        self.try_integrate_complex(|z| Ok(f(z)))
    }
}
