use num::complex::Complex64;
use serde::Serialize;

use super::SchurData;
use crate::error::Result;
use crate::poly::TorusPoly;

/// Entries of `P_n = M_0 ⋯ M_n = [[Ψ_n, Ψ*_n], [-Φ_n, Φ*_n]]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyQuad {
    pub level: usize,
    pub psi: TorusPoly,
    pub psi_star: TorusPoly,
    pub phi: TorusPoly,
    pub phi_star: TorusPoly,
}

impl PolyQuad {
    fn initial(dim: usize) -> Self {
        let one = TorusPoly::one(dim);
        PolyQuad {
            level: 0,
            psi: one.clone(),
            psi_star: one.clone(),
            phi: one.clone(),
            phi_star: one,
        }
    }

    /// `P_{n+1} = P_n M_{n+1}` with `M_{n+1} = [[z_j, r z_j], [conj r, 1]]`.
    fn step(&self, r: Complex64, var: usize) -> Result<PolyQuad> {
        let rb = r.conj();
        let z_psi = self.psi.shift(var);
        let z_phi = self.phi.shift(var);
        Ok(PolyQuad {
            level: self.level + 1,
            psi: z_psi.add(&self.psi_star.scale(rb))?,
            psi_star: z_psi.scale(r).add(&self.psi_star)?,
            phi: z_phi.sub(&self.phi_star.scale(rb))?,
            phi_star: self.phi_star.sub(&z_phi.scale(r))?,
        })
    }

    /// `Ψ*_n - Φ*_n`, numerator of the convergent.
    pub fn numerator(&self) -> Result<TorusPoly> {
        self.psi_star.sub(&self.phi_star)
    }

    /// `Ψ*_n + Φ*_n`, denominator of the convergent.
    pub fn denominator(&self) -> Result<TorusPoly> {
        self.psi_star.add(&self.phi_star)
    }
}

/// Quads for levels `0..=m`.
pub fn build_quads(data: &SchurData) -> Result<Vec<PolyQuad>> {
    let mut out = Vec::with_capacity(data.top_level() + 1);
    out.push(PolyQuad::initial(data.dim()));
    for n in 1..=data.top_level() {
        let next = out[n - 1].step(data.r()[n], data.nu_at(n))?;
        out.push(next);
    }
    Ok(out)
}
