use std::fmt;

/// Exponent vector of a monomial `z_1^{e_1} ⋯ z_d^{e_d}`.
///
/// Ordering is lexicographic on the exponent vector, which is the canonical
/// term order for every polynomial in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    /// The single variable `z_j` (0-based index).
    pub fn var(dim: usize, j: usize) -> Self {
        let mut e = vec![0; dim];
        e[j] = 1;
        Monomial(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Raise `z_j` to the power in variable `j` and multiply out.
    pub fn eval(&self, z: &[num::complex::Complex64]) -> num::complex::Complex64 {
        self.0
            .iter()
            .zip(z)
            .filter(|(e, _)| **e > 0)
            .fold(num::complex::Complex64::new(1.0, 0.0), |acc, (&e, zj)| {
                acc * zj.powu(e)
            })
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{}", j + 1)?;
            } else {
                write!(f, "z{}^{}", j + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
