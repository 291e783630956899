use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::Zero;
use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};

/// Sparse polynomial in `d` commuting complex variables with complex
/// floating-point coefficients.
///
/// Terms are kept in canonical form: lexicographic order on exponents and no
/// stored coefficient equal to exactly zero. There is no epsilon pruning, so
/// identities that cancel exactly in floating point stay exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "TorusPolyRepr", try_from = "TorusPolyRepr")]
pub struct TorusPoly {
    dim: usize,
    terms: BTreeMap<Monomial, Complex64>,
}

impl TorusPoly {
    pub fn zero(dim: usize) -> Self {
        TorusPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        Self::monomial(Monomial::one(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Complex64::new(1.0, 0.0))
    }

    /// `z_j` with 0-based variable index.
    pub fn var(dim: usize, j: usize) -> Self {
        Self::monomial(Monomial::var(dim, j), Complex64::new(1.0, 0.0))
    }

    pub fn monomial(m: Monomial, c: Complex64) -> Self {
        let dim = m.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TorusPoly { dim, terms }
    }

    /// Build from arbitrary terms; repeated monomials are summed.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        let mut p = TorusPoly::zero(dim);
        for (m, c) in terms {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_else(Complex64::zero)
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeff(&Monomial::one(self.dim))
    }

    fn add_term(&mut self, m: Monomial, c: Complex64) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_dim(&self, other: &TorusPoly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TorusPoly) -> Result<TorusPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TorusPoly) -> Result<TorusPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -*c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &TorusPoly) -> Result<TorusPoly> {
        self.check_dim(other)?;
        let mut out = TorusPoly::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> TorusPoly {
        let mut out = TorusPoly::zero(self.dim);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn neg(&self) -> TorusPoly {
        TorusPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Multiply by the single variable `z_j` (0-based). Exact: only exponents move.
    pub fn shift(&self, j: usize) -> TorusPoly {
        TorusPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.exponents_mut()[j] += 1;
                    (m, *c)
                })
                .collect(),
        }
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: z.len(),
            });
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| c * m.eval(z))
            .fold(Complex64::zero(), |a, b| a + b)
    }

    /// Largest exponent of each variable over all terms.
    pub fn multidegree(&self) -> Monomial {
        let mut deg = vec![0u32; self.dim];
        for m in self.terms.keys() {
            for (d, e) in deg.iter_mut().zip(m.exponents()) {
                *d = (*d).max(*e);
            }
        }
        Monomial::new(deg)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Conjugate reciprocal with respect to `bound`: the coefficient at `e` is
    /// the conjugate of the coefficient at `bound - e`. On the torus this is
    /// `z^bound · conj(p(1/conj z))`.
    pub fn star(&self, bound: &Monomial) -> Result<TorusPoly> {
        if bound.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: bound.dim(),
            });
        }
        let deg = self.multidegree();
        for (j, (&b, &d)) in bound.exponents().iter().zip(deg.exponents()).enumerate() {
            if d > b {
                return Err(Error::MultidegreeTooSmall {
                    variable: j + 1,
                    bound: b,
                    degree: d,
                });
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (bound.checked_div(m).expect("bound dominates"), c.conj()))
            .collect();
        Ok(TorusPoly {
            dim: self.dim,
            terms,
        })
    }

    /// Largest coefficient-wise modulus of `self - other`, with missing terms read as zero.
    pub fn max_coeff_diff(&self, other: &TorusPoly) -> Result<f64> {
        let diff = self.sub(other)?;
        Ok(diff.terms.values().map(|c| c.norm()).fold(0.0, f64::max))
    }
}

impl fmt::Display for TorusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}{:+}i)", c.re, c.im)?;
            if !m.is_one() {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    e: Vec<u32>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct TorusPolyRepr {
    dim: usize,
    terms: Vec<TermRepr>,
}

impl From<TorusPoly> for TorusPolyRepr {
    fn from(p: TorusPoly) -> Self {
        TorusPolyRepr {
            dim: p.dim,
            terms: p
                .terms
                .into_iter()
                .map(|(m, c)| TermRepr {
                    e: m.exponents().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<TorusPolyRepr> for TorusPoly {
    type Error = Error;

    fn try_from(r: TorusPolyRepr) -> Result<Self> {
        TorusPoly::from_terms(
            r.dim,
            r.terms
                .into_iter()
                .map(|t| (Monomial::new(t.e), Complex64::new(t.re, t.im))),
        )
    }
}
