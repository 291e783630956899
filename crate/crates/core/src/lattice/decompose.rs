use num::complex::Complex64;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::field::{parse_rational, QuadElem, QuadField};
use crate::error::{Error, Result};

/// Default number of rational approximants tried before giving up.
pub const DEFAULT_APPROXIMANTS: usize = 64;

/// Largest power of two tried for `t`.
const MAX_T_EXPONENT: u32 = 60;

/// `η = B b` with `B` a rational `d × D` matrix and `b` positive field elements.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeInput {
    pub field: QuadField,
    pub basis: Vec<Vec<BigRational>>,
    pub b: Vec<QuadElem>,
}

#[derive(Deserialize, Serialize)]
struct LatticeInputRepr {
    #[serde(rename = "B")]
    basis: Vec<Vec<String>>,
    /// `[rational part, coefficient of the square root]`
    b: Vec<[String; 2]>,
}

impl LatticeInput {
    pub fn new(field: QuadField, basis: Vec<Vec<BigRational>>, b: Vec<QuadElem>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidArgument("B has no rows".into()));
        }
        if let Some(row) = basis.iter().find(|row| row.len() != b.len()) {
            return Err(Error::DimensionMismatch {
                expected: b.len(),
                found: row.len(),
            });
        }
        if b.is_empty() {
            return Err(Error::InvalidArgument("b is empty".into()));
        }
        if let Some(x) = b.iter().find(|x| x.field() != field) {
            return Err(Error::Field(format!("{x} does not lie in {field}")));
        }
        if let Some(j) = b.iter().position(|x| !x.is_positive()) {
            return Err(Error::InvalidArgument(format!(
                "b_{} is not positive",
                j + 1
            )));
        }
        Ok(LatticeInput { field, basis, b })
    }

    /// `{"B": [["1", "0"], ...], "b": [["1", "0"], ["0", "1"]]}` over `field`.
    pub fn from_json(s: &str, field: QuadField) -> Result<Self> {
        let repr: LatticeInputRepr = serde_json::from_str(s)?;
        let basis = repr
            .basis
            .iter()
            .map(|row| row.iter().map(|x| parse_rational(x)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let b = repr
            .b
            .iter()
            .map(|[a, c]| field.elem(parse_rational(a)?, parse_rational(c)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, basis, b)
    }

    pub fn rows(&self) -> usize {
        self.basis.len()
    }

    pub fn cols(&self) -> usize {
        self.b.len()
    }

    /// `η = B b`, exactly.
    pub fn eta(&self) -> Vec<QuadElem> {
        self.basis
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.b)
                    .fold(self.field.zero(), |acc, (c, x)| acc.add(&x.scale(c)))
            })
            .collect()
    }
}

/// Which branch of the construction produced the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Index `j` of the approximant `q^(j)`; `None` when `B ≥ 0` needed no projection.
    pub approximant: Option<usize>,
    pub approximant_values: Vec<BigRational>,
    pub t: BigRational,
    /// Common denominator cleared from `B Q`.
    pub s: BigInt,
}

/// `η = A q` with `A` a non-negative integer matrix and `q` positive.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeDecomposition {
    pub a: Vec<Vec<BigInt>>,
    pub q: Vec<QuadElem>,
    pub certificate: Certificate,
}

impl LatticeDecomposition {
    pub fn q_f64(&self) -> Vec<f64> {
        self.q.iter().map(QuadElem::to_f64).collect()
    }
}

fn lcm_denominators<'a, I: IntoIterator<Item = &'a BigRational>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn to_integer_matrix(m: &[Vec<BigRational>], s: &BigInt) -> Vec<Vec<BigInt>> {
    let sr = BigRational::from_integer(s.clone());
    m.iter()
        .map(|row| row.iter().map(|x| (x * &sr).to_integer()).collect())
        .collect()
}

/// Positive decomposition with the default approximant budget.
pub fn decompose(input: &LatticeInput) -> Result<LatticeDecomposition> {
    decompose_with_budget(input, DEFAULT_APPROXIMANTS)
}

/// Searches approximants `q^(j)` of `b` and powers of two `t` until
/// `B + t B P_j > 0` and `Q^{-1} b > 0`, where `P_j` projects onto `q^(j)` and
/// `Q = I + t P_j`. Then `A = s B Q` and `q = s^{-1} Q^{-1} b`.
pub fn decompose_with_budget(
    input: &LatticeInput,
    max_approximants: usize,
) -> Result<LatticeDecomposition> {
    let eta = input.eta();
    if let Some(index) = eta.iter().position(|e| !e.is_positive()) {
        return Err(Error::NonPositiveEta { index });
    }
    let zero = BigRational::zero();
    if input.basis.iter().flatten().all(|x| *x >= zero) {
        let s = lcm_denominators(input.basis.iter().flatten());
        let s_inv = BigRational::new(BigInt::one(), s.clone());
        let out = LatticeDecomposition {
            a: to_integer_matrix(&input.basis, &s),
            q: input.b.iter().map(|x| x.scale(&s_inv)).collect(),
            certificate: Certificate {
                approximant: None,
                approximant_values: Vec::new(),
                t: zero,
                s,
            },
        };
        return checked(out, input);
    }

    let approximants = input
        .b
        .iter()
        .map(|x| x.convergents(max_approximants))
        .collect::<Result<Vec<_>>>()?;
    let mut last_t = BigRational::zero();
    let mut best = None;
    for j in 0..max_approximants {
        let q: Vec<BigRational> = approximants.iter().map(|c| c[j].clone()).collect();
        if q.iter().any(|x| *x <= zero) {
            continue;
        }
        best = Some(j);
        let qq: BigRational = q.iter().map(|x| x * x).sum();
        // B P = (B q) qᵗ / ⟨q, q⟩
        let bq: Vec<BigRational> = input
            .basis
            .iter()
            .map(|row| row.iter().zip(&q).map(|(a, b)| a * b).sum())
            .collect();
        let bp: Vec<Vec<BigRational>> = bq
            .iter()
            .map(|v| q.iter().map(|x| v * x / &qq).collect())
            .collect();
        let mut t = BigRational::one();
        let mut found = None;
        for _ in 0..=MAX_T_EXPONENT {
            let m: Vec<Vec<BigRational>> = input
                .basis
                .iter()
                .zip(&bp)
                .map(|(row, prow)| row.iter().zip(prow).map(|(a, p)| a + &t * p).collect())
                .collect();
            if m.iter().flatten().all(|x| *x > zero) {
                found = Some(m);
                break;
            }
            last_t = t.clone();
            t = &t * BigRational::from_integer(BigInt::from(2));
        }
        let Some(bq_matrix) = found else { continue };
        last_t = t.clone();
        // Q^{-1} b = b - (t / (1 + t)) q ⟨q, b⟩ / ⟨q, q⟩
        let qb = q
            .iter()
            .zip(&input.b)
            .fold(input.field.zero(), |acc, (x, y)| acc.add(&y.scale(x)));
        let c = &t / (BigRational::one() + &t) / &qq;
        let qinv_b: Vec<QuadElem> = input
            .b
            .iter()
            .zip(&q)
            .map(|(y, x)| y.sub(&qb.scale(&(&c * x))))
            .collect();
        if !qinv_b.iter().all(QuadElem::is_positive) {
            continue;
        }
        let s = lcm_denominators(bq_matrix.iter().flatten());
        let s_inv = BigRational::new(BigInt::one(), s.clone());
        let out = LatticeDecomposition {
            a: to_integer_matrix(&bq_matrix, &s),
            q: qinv_b.iter().map(|x| x.scale(&s_inv)).collect(),
            certificate: Certificate {
                approximant: Some(j),
                approximant_values: q,
                t,
                s,
            },
        };
        return checked(out, input);
    }
    Err(Error::LatticeBudget {
        best_index: best,
        last_t: last_t.to_string(),
    })
}

fn checked(out: LatticeDecomposition, input: &LatticeInput) -> Result<LatticeDecomposition> {
    if verify(&out, input) {
        Ok(out)
    } else {
        Err(Error::InvalidArgument(
            "decomposition failed its own exact check".into(),
        ))
    }
}

/// `η = A q` exactly, `A ≥ 0`, `q > 0`.
pub fn verify(decomp: &LatticeDecomposition, input: &LatticeInput) -> bool {
    if decomp.a.len() != input.rows() || decomp.q.len() != input.cols() {
        return false;
    }
    if decomp.a.iter().any(|row| row.len() != input.cols()) {
        return false;
    }
    if decomp.a.iter().flatten().any(|x| x.is_negative()) {
        return false;
    }
    if !decomp.q.iter().all(QuadElem::is_positive) {
        return false;
    }
    input.eta().iter().zip(&decomp.a).all(|(e, row)| {
        let aq = row
            .iter()
            .zip(&decomp.q)
            .fold(input.field.zero(), |acc, (a, q)| {
                acc.add(&q.scale(&BigRational::from_integer(a.clone())))
            });
        aq == *e
    })
}

/// Largest `|e^{iη_i ω} - ∏_k e^{i q_k ω A_ik}|` over `samples` random `ω ∈ [-10, 10]`.
pub fn factorization_residual<R: Rng>(
    decomp: &LatticeDecomposition,
    input: &LatticeInput,
    samples: usize,
    rng: &mut R,
) -> f64 {
    let eta: Vec<f64> = input.eta().iter().map(QuadElem::to_f64).collect();
    let q = decomp.q_f64();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let omega: f64 = rng.gen_range(-10.0..=10.0);
        let w: Vec<Complex64> = q
            .iter()
            .map(|x| Complex64::from_polar(1.0, x * omega))
            .collect();
        for (e, row) in eta.iter().zip(&decomp.a) {
            let lhs = Complex64::from_polar(1.0, e * omega);
            let rhs = row
                .iter()
                .zip(&w)
                .fold(Complex64::new(1.0, 0.0), |acc, (a, wk)| {
                    acc * wk.powu(a.to_u32().unwrap_or(u32::MAX))
                });
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn integer_column() {
        let f = QuadField::rationals();
        let input = LatticeInput::new(
            f,
            vec![vec![q(2, 1)], vec![q(3, 1)]],
            vec![f.from_rational(q(1, 1))],
        )
        .unwrap();
        let d = decompose(&input).unwrap();
        assert_eq!(d.a, ints(&[&[2], &[3]]));
        assert_eq!(d.q, vec![f.from_rational(q(1, 1))]);
        assert!(verify(&d, &input));
    }

    #[test]
    fn cleared_denominators() {
        let f = QuadField::rationals();
        let input = LatticeInput::new(
            f,
            vec![vec![q(1, 2)], vec![q(1, 3)]],
            vec![f.from_rational(q(1, 1))],
        )
        .unwrap();
        let d = decompose(&input).unwrap();
        assert_eq!(d.a, ints(&[&[3], &[2]]));
        assert_eq!(d.q, vec![f.from_rational(q(1, 6))]);
    }

    #[test]
    fn tampering_is_detected() {
        let f = QuadField::rationals();
        let input = LatticeInput::new(
            f,
            vec![vec![q(1, 2)], vec![q(1, 3)]],
            vec![f.from_rational(q(1, 1))],
        )
        .unwrap();
        let mut d = decompose(&input).unwrap();
        d.a[0][0] -= 1;
        assert!(!verify(&d, &input));
    }

    #[test]
    fn rejects_non_positive_eta() {
        let f = QuadField::rationals();
        let input =
            LatticeInput::new(f, vec![vec![q(-1, 1)]], vec![f.from_rational(q(1, 1))]).unwrap();
        assert!(matches!(
            decompose(&input),
            Err(Error::NonPositiveEta { index: 0 })
        ));
    }

    #[test]
    fn parses_json() {
        let f: QuadField = "Q(sqrt2)".parse().unwrap();
        let s = r#"{"B": [["1", "0"], ["0", "1/2"]], "b": [["1", "0"], ["0", "1"]]}"#;
        let input = LatticeInput::from_json(s, f).unwrap();
        assert_eq!(input.rows(), 2);
        assert_eq!(input.eta()[1], f.elem(q(0, 1), q(1, 2)).unwrap());
        let bad = r#"{"B": [["1"]], "b": [["-1", "0"]]}"#;
        assert!(LatticeInput::from_json(bad, f).is_err());
    }
}
