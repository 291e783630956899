use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::{BigInt, One, Signed, ToPrimitive, Zero};

/// Polynomial in the pair `(z, z̄)` with exact integer coefficients.
///
/// Keys are `(a, b)` meaning `z^a z̄^b`. Canonical form: no zero coefficients,
/// lexicographic key order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HermitianPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl HermitianPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, 0, BigInt::one())
    }

    /// `c · z^a z̄^b`
    pub fn term(a: u32, b: u32, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term((a, b), c);
        p
    }

    /// `1 - z z̄`
    pub fn one_minus_norm() -> Self {
        let mut p = Self::one();
        p.add_term((1, 1), -BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub(crate) fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// Formal `∂/∂z`, treating `z̄` as independent.
    pub fn d_z(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            if a > 0 {
                out.add_term((a - 1, b), c * BigInt::from(a));
            }
        }
        out
    }

    /// Formal `∂/∂z̄`, treating `z` as independent.
    pub fn d_zbar(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            if b > 0 {
                out.add_term((a, b - 1), c * BigInt::from(b));
            }
        }
        out
    }

    /// Mixed derivative `∂²/∂z̄∂z`.
    pub fn dbar_d(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            if a > 0 && b > 0 {
                out.add_term((a - 1, b - 1), c * BigInt::from(a) * BigInt::from(b));
            }
        }
        out
    }

    /// Scattering-disk Laplace–Beltrami operator `-(1 - z z̄) ∂²/∂z̄∂z`.
    pub fn laplace_beltrami(&self) -> Self {
        Self::one_minus_norm()
            .mul(&self.dbar_d())
            .scale(&-BigInt::one())
    }

    /// Exact division of every coefficient; `None` if some coefficient is not divisible.
    pub fn exact_div(&self, d: &BigInt) -> Option<Self> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            if !(c % d).is_zero() {
                return None;
            }
            out.add_term(*k, c / d);
        }
        Some(out)
    }

    /// Evaluate at `z`, with `z̄` the complex conjugate. `z^0 = 1` even at `z = 0`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms
            .iter()
            .map(|(&(a, b), c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                z.powu(a) * zb.powu(b) * c
            })
            .fold(Complex64::zero(), |acc, t| acc + t)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, a: u32, b: u32) -> fmt::Result {
    let mut parts = Vec::new();
    match a {
        0 => {}
        1 => parts.push("z".to_string()),
        _ => parts.push(format!("z^{a}")),
    }
    match b {
        0 => {}
        1 => parts.push("zb".to_string()),
        _ => parts.push(format!("zb^{b}")),
    }
    f.write_str(&parts.join("*"))
}

/// Canonical text form, e.g. `1 - z*zb`. Terms follow lexicographic `(a, b)` order.
impl fmt::Display for HermitianPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let constant = a == 0 && b == 0;
            if constant {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, a, b)?;
            }
        }
        Ok(())
    }
}
