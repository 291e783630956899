use num::complex::Complex64;

use super::{build_quads, PolyQuad, SchurData};
use crate::error::{Error, Result};

/// Denominators below this modulus are reported as ill-conditioned.
pub const DENOMINATOR_GUARD: f64 = 1e-14;

const POLYDISK_SLACK: f64 = 1e-12;

/// Schur data together with its precomputed quads, for repeated evaluation.
#[derive(Debug, Clone)]
pub struct SchurModel {
    data: SchurData,
    quads: Vec<PolyQuad>,
}

impl SchurModel {
    pub fn new(data: SchurData) -> Result<Self> {
        let quads = build_quads(&data)?;
        Ok(SchurModel { data, quads })
    }

    pub fn data(&self) -> &SchurData {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn top_level(&self) -> usize {
        self.data.top_level()
    }

    pub fn quads(&self) -> &[PolyQuad] {
        &self.quads
    }

    pub fn quad(&self, n: usize) -> Result<&PolyQuad> {
        self.quads.get(n).ok_or(Error::LevelOutOfRange {
            level: n,
            max: self.top_level(),
        })
    }

    fn check_point(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: z.len(),
            });
        }
        if let Some((j, zj)) = z
            .iter()
            .enumerate()
            .find(|(_, zj)| !(zj.norm() <= 1.0 + POLYDISK_SLACK))
        {
            return Err(Error::InvalidArgument(format!(
                "z_{} = {zj} lies outside the closed polydisk",
                j + 1
            )));
        }
        Ok(())
    }

    /// `(Ψ_n, Ψ*_n, Φ_n, Φ*_n)` at `z`.
    pub fn eval_quad(&self, n: usize, z: &[Complex64]) -> Result<[Complex64; 4]> {
        let q = self.quad(n)?;
        self.check_point(z)?;
        Ok([
            q.psi.eval_unchecked(z),
            q.psi_star.eval_unchecked(z),
            q.phi.eval_unchecked(z),
            q.phi_star.eval_unchecked(z),
        ])
    }

    fn guarded(den: Complex64) -> Result<Complex64> {
        if !(den.norm() >= DENOMINATOR_GUARD) {
            return Err(Error::IllConditioned {
                modulus: den.norm(),
            });
        }
        Ok(den)
    }

    /// `f_n(z) = (Ψ*_n - Φ*_n) / (Ψ*_n + Φ*_n)`
    pub fn eval_convergent(&self, n: usize, z: &[Complex64]) -> Result<Complex64> {
        let [_, ps, _, fs] = self.eval_quad(n, z)?;
        Ok((ps - fs) / Self::guarded(ps + fs)?)
    }

    /// `f_m` at the top level.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        self.eval_convergent(self.top_level(), z)
    }

    /// `g_n(z) = 2 ∏ √(1 - |r_j|²) / (Ψ*_n + Φ*_n)`
    pub fn eval_g(&self, n: usize, z: &[Complex64]) -> Result<Complex64> {
        let [_, ps, _, fs] = self.eval_quad(n, z)?;
        let num = 2.0 * self.data.norm_product(n).sqrt();
        Ok(Complex64::new(num, 0.0) / Self::guarded(ps + fs)?)
    }

    /// `B_n(z) = (Ψ_n - Φ_n) / (Ψ*_n + Φ*_n)`
    pub fn eval_b(&self, n: usize, z: &[Complex64]) -> Result<Complex64> {
        let [p, ps, f, fs] = self.eval_quad(n, z)?;
        Ok((p - f) / Self::guarded(ps + fs)?)
    }

    /// Tail `k_n(z)`: projective action of `M_{n+1} ⋯ M_m` on `(0, 1)ᵗ`.
    pub fn eval_tail(&self, n: usize, z: &[Complex64]) -> Result<Complex64> {
        let m = self.top_level();
        if n >= m {
            return Err(Error::LevelOutOfRange {
                level: n,
                max: m.saturating_sub(1),
            });
        }
        self.check_point(z)?;
        // (x, y) ← M_j (x, y), applied from j = m down to n + 1
        let mut x = Complex64::new(0.0, 0.0);
        let mut y = Complex64::new(1.0, 0.0);
        for j in (n + 1..=m).rev() {
            let r = self.data.r()[j];
            let zj = z[self.data.nu_at(j)];
            let nx = zj * (x + r * y);
            let ny = r.conj() * x + y;
            x = nx;
            y = ny;
        }
        Ok(x / Self::guarded(y)?)
    }

    /// `f = ((Ψ_n + Φ_n) k + Ψ*_n - Φ*_n) / ((Ψ_n - Φ_n) k + Ψ*_n + Φ*_n)`
    pub fn recombine(&self, n: usize, k: Complex64, z: &[Complex64]) -> Result<Complex64> {
        let [p, ps, f, fs] = self.eval_quad(n, z)?;
        Ok(((p + f) * k + ps - fs) / Self::guarded((p - f) * k + ps + fs)?)
    }

    /// Density `w = ∏(1 - |r_j|²) / |Φ*_n|²` of `μ_{f_n}` on the torus.
    pub fn weight_density(&self, n: usize, z: &[Complex64]) -> Result<f64> {
        let [_, _, _, fs] = self.eval_quad(n, z)?;
        Ok(self.data.norm_product(n) / fs.norm_sqr())
    }
}

/// `f_n(z)` for one-off evaluation; prefer [`SchurModel`] in loops.
pub fn eval_convergent(data: &SchurData, n: usize, z: &[Complex64]) -> Result<Complex64> {
    SchurModel::new(data.truncated(n)?)?.eval_convergent(n, z)
}

/// `k_n(z)` for one-off evaluation.
pub fn eval_tail(data: &SchurData, n: usize, z: &[Complex64]) -> Result<Complex64> {
    SchurModel::new(data.clone())?.eval_tail(n, z)
}

/// `g_n(z)` for one-off evaluation.
pub fn eval_g(data: &SchurData, n: usize, z: &[Complex64]) -> Result<Complex64> {
    SchurModel::new(data.truncated(n)?)?.eval_g(n, z)
}
