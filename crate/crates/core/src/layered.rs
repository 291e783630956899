//! Piecewise-constant impedance media on `[0, b]`.
//!
//! The reflection coefficient is computed two ways: exactly, by 2×2 layer
//! propagators for `(ζu')' + ω²ζu = 0`, and as the Schur function with
//! parameters `r_j = (a_{j-1} - a_j)/(a_{j-1} + a_j)` evaluated on a torus line.
//! With the boundary normalization used here the two agree as complex numbers
//! when the line has frequencies `2η_j`: a wave crossing layer `j` and coming
//! back accumulates phase `2η_j ω`.

use num::complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schur::{SchurData, SchurModel};
use crate::torus::TorusLine;

/// Below this modulus the incident amplitude is treated as singular.
const TRANSFER_GUARD: f64 = 1e-12;

/// Interfaces `0 < y_1 < … < y_d < b` and impedances `a_0, …, a_d > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MediumRepr")]
pub struct LayeredMedium {
    b: f64,
    y: Vec<f64>,
    a: Vec<f64>,
}

#[derive(Deserialize)]
struct MediumRepr {
    b: f64,
    y: Vec<f64>,
    a: Vec<f64>,
}

impl TryFrom<MediumRepr> for LayeredMedium {
    type Error = Error;

    fn try_from(r: MediumRepr) -> Result<Self> {
        LayeredMedium::new(r.b, r.y, r.a)
    }
}

impl LayeredMedium {
    pub fn new(b: f64, y: Vec<f64>, a: Vec<f64>) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::InvalidMedium(
                "at least one interface is required".into(),
            ));
        }
        if a.len() != y.len() + 1 {
            return Err(Error::InvalidMedium(format!(
                "{} interfaces need {} impedances, got {}",
                y.len(),
                y.len() + 1,
                a.len()
            )));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::InvalidMedium(format!("b = {b} is not positive")));
        }
        let mut prev = 0.0;
        for (j, &yj) in y.iter().enumerate() {
            if !(yj.is_finite() && yj > prev) {
                return Err(Error::InvalidMedium(format!(
                    "y_{} = {yj} does not exceed {prev}",
                    j + 1
                )));
            }
            prev = yj;
        }
        if !(prev < b) {
            return Err(Error::InvalidMedium(format!(
                "last interface {prev} is not below b = {b}"
            )));
        }
        if let Some((j, aj)) = a
            .iter()
            .enumerate()
            .find(|(_, x)| !(x.is_finite() && **x > 0.0))
        {
            return Err(Error::InvalidMedium(format!(
                "impedance a_{j} = {aj} is not positive"
            )));
        }
        Ok(LayeredMedium { b, y, a })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// Number of interfaces `d`.
    pub fn interfaces(&self) -> usize {
        self.y.len()
    }

    /// `r_j = (a_{j-1} - a_j) / (a_{j-1} + a_j)`, `j = 1..d`.
    pub fn reflectivities(&self) -> Vec<f64> {
        self.a
            .windows(2)
            .map(|w| (w[0] - w[1]) / (w[0] + w[1]))
            .collect()
    }

    /// Layer thicknesses `η_j = y_j - y_{j-1}` with `y_0 = 0`.
    pub fn gaps(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.y
            .iter()
            .map(|&yj| {
                let g = yj - prev;
                prev = yj;
                g
            })
            .collect()
    }

    /// `Σ log(1 - r_j²)`
    pub fn trace_reference(&self) -> f64 {
        self.reflectivities()
            .iter()
            .map(|r| (1.0 - r * r).ln())
            .sum()
    }

    /// The same medium read from `b` back to `0`.
    pub fn reversed(&self) -> LayeredMedium {
        LayeredMedium {
            b: self.b,
            y: self.y.iter().rev().map(|yj| self.b - yj).collect(),
            a: self.a.iter().rev().copied().collect(),
        }
    }

    /// Same layers with the right boundary moved to `b`.
    pub fn with_b(&self, b: f64) -> Result<LayeredMedium> {
        LayeredMedium::new(b, self.y.clone(), self.a.clone())
    }
}

/// Schur data `r = (0, r_1, …, r_d)`, `ν = (1, …, d)` and the line with `η_j = y_j - y_{j-1}`.
pub fn medium_to_schur(m: &LayeredMedium) -> Result<(SchurData, TorusLine)> {
    let d = m.interfaces();
    let mut r = vec![Complex64::new(0.0, 0.0)];
    r.extend(
        m.reflectivities()
            .into_iter()
            .map(|x| Complex64::new(x, 0.0)),
    );
    let data = SchurData::new(d, r, (1..=d).collect())?;
    Ok((data, TorusLine::new(m.gaps())?))
}

/// Reflection through the Schur function on the round-trip line `ℓ_{2η}`.
#[derive(Debug, Clone)]
pub struct SchurReflection {
    model: SchurModel,
    line: TorusLine,
}

impl SchurReflection {
    pub fn new(m: &LayeredMedium) -> Result<Self> {
        let (data, line) = medium_to_schur(m)?;
        Ok(SchurReflection {
            model: SchurModel::new(data)?,
            line: line.scaled(2.0)?,
        })
    }

    pub fn model(&self) -> &SchurModel {
        &self.model
    }

    /// Line with frequencies `2η_j`.
    pub fn line(&self) -> &TorusLine {
        &self.line
    }

    pub fn eval(&self, omega: f64) -> Result<Complex64> {
        self.model.eval(&self.line.point(omega))
    }
}

/// `f(e^{2iη_1ω}, …, e^{2iη_dω})`.
pub fn reflection_schur(m: &LayeredMedium, omega: f64) -> Result<Complex64> {
    SchurReflection::new(m)?.eval(omega)
}

/// Exact reflection `R(ω) = ½(u(0) - u'(0)/(iω))` under the normalization
/// `½(u(0) + u'(0)/(iω)) = 1`, `½(u(b) - u'(b)/(iω)) = 0`.
pub fn reflection_ode(m: &LayeredMedium, omega: f64) -> Result<Complex64> {
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "omega = {omega} must be finite and nonzero"
        )));
    }
    let i = Complex64::new(0.0, 1.0);
    // state (u, v) with v = ζ u' / (iω); continuous across interfaces
    let a_last = *m.a.last().expect("nonempty");
    let mut u = Complex64::new(1.0, 0.0);
    let mut v = Complex64::new(a_last, 0.0);
    let mut right = m.b;
    for (k, &ak) in m.a.iter().enumerate().rev() {
        let left = if k == 0 { 0.0 } else { m.y[k - 1] };
        let h = left - right;
        let (s, c) = (omega * h).sin_cos();
        let nu = u * c + i * s * v / ak;
        let nv = i * ak * s * u + v * c;
        u = nu;
        v = nv;
        right = left;
    }
    let w = v / m.a[0];
    let incident = u + w;
    let scale = u.norm().max(w.norm());
    if !(incident.norm() > TRANSFER_GUARD * scale) {
        return Err(Error::SingularTransfer {
            omega,
            modulus: incident.norm(),
        });
    }
    Ok((u - w) / incident)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReflectionSource {
    Schur,
    Ode,
}

/// Reflection values on a frequency grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReflectionSpectrum {
    pub omegas: Vec<f64>,
    pub values: Vec<Complex64>,
    pub source: ReflectionSource,
}

fn reflection_at(
    m: &LayeredMedium,
    schur: &SchurReflection,
    source: ReflectionSource,
    omega: f64,
) -> Result<Complex64> {
    match source {
        ReflectionSource::Schur => schur.eval(omega),
        ReflectionSource::Ode => reflection_ode(m, omega),
    }
}

/// `R(ω_k)` at `ω_k = ω_max k / n`, `k = 1..n`.
pub fn sweep(
    m: &LayeredMedium,
    omega_max: f64,
    n: usize,
    source: ReflectionSource,
) -> Result<ReflectionSpectrum> {
    if n == 0 || !(omega_max.is_finite() && omega_max > 0.0) {
        return Err(Error::InvalidArgument(
            "sweep needs n >= 1 and omega_max > 0".into(),
        ));
    }
    let schur = SchurReflection::new(m)?;
    let omegas: Vec<f64> = (1..=n).map(|k| omega_max * k as f64 / n as f64).collect();
    let values = omegas
        .par_iter()
        .map(|&w| reflection_at(m, &schur, source, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReflectionSpectrum {
        omegas,
        values,
        source,
    })
}

/// Largest discrepancies between the two reflection computations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossOracle {
    pub max_modulus_diff: f64,
    pub max_complex_diff: f64,
    pub max_modulus: f64,
}

pub fn cross_oracle(m: &LayeredMedium, omegas: &[f64]) -> Result<CrossOracle> {
    let schur = SchurReflection::new(m)?;
    let pairs = omegas
        .par_iter()
        .map(|&w| Ok((schur.eval(w)?, reflection_ode(m, w)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = CrossOracle {
        max_modulus_diff: 0.0,
        max_complex_diff: 0.0,
        max_modulus: 0.0,
    };
    for (s, o) in pairs {
        out.max_modulus_diff = out.max_modulus_diff.max((s.norm() - o.norm()).abs());
        out.max_complex_diff = out.max_complex_diff.max((s - o).norm());
        out.max_modulus = out.max_modulus.max(o.norm());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    #[serde(rename = "L")]
    pub l: f64,
    pub average: f64,
    pub reference: f64,
    pub abs_error: f64,
}

/// Line averages of `log(1 - |R|²)` over `[-L, L]` against `Σ log(1 - r_j²)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceTable {
    pub rows: Vec<TraceRow>,
    pub step: f64,
}

impl TraceTable {
    /// Whether the error does not grow across the last `k` transitions of the schedule.
    pub fn non_increasing_tail(&self, k: usize) -> bool {
        let n = self.rows.len();
        if n < k + 1 {
            return false;
        }
        self.rows[n - k - 1..]
            .windows(2)
            .all(|w| w[1].abs_error <= w[0].abs_error)
    }

    pub fn max_error(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_error).fold(0.0, f64::max)
    }
}

pub fn trace_check(m: &LayeredMedium, schedule: &[f64]) -> Result<TraceTable> {
    let schur = SchurReflection::new(m)?;
    let step = schur.line().default_step(m.interfaces());
    trace_check_with_step(&schur, m.trace_reference(), schedule, step)
}

pub fn trace_check_with_step(
    schur: &SchurReflection,
    reference: f64,
    schedule: &[f64],
    step: f64,
) -> Result<TraceTable> {
    let rows = schedule
        .iter()
        .map(|&l| {
            let average = schur.line().try_line_average(
                |z| Ok((1.0 - schur.model().eval(z)?.norm_sqr()).ln()),
                l,
                step,
            )?;
            Ok(TraceRow {
                l,
                average,
                reference,
                abs_error: (average - reference).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TraceTable { rows, step })
}
