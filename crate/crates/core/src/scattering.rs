//! Scattering polynomials and scattering weights.
//!
//! `phi(p, q)` is an eigenfunction of the scattering-disk Laplace–Beltrami
//! operator `-(1 - z z̄) ∂²/∂z̄∂z` with eigenvalue `p q`. Products of their
//! values at the Schur parameters give the Taylor coefficients of a Schur
//! function, see [`weight`].

use std::fmt;

use num::complex::Complex64;
use num::{BigInt, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::HermitianPoly;

/// Pascal row `C(n, 0..=n)` in exact integer arithmetic.
fn pascal_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

/// Exact binomial coefficient by Pascal recursion; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    pascal_row(n).swap_remove(k as usize)
}

/// Index pair `(p, q)` of a scattering polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScatteringIndex {
    pub p: u32,
    pub q: u32,
}

impl ScatteringIndex {
    pub fn new(p: u32, q: u32) -> Self {
        ScatteringIndex { p, q }
    }

    pub fn eigenvalue(&self) -> u64 {
        u64::from(self.p) * u64::from(self.q)
    }

    pub fn poly(&self) -> HermitianPoly {
        phi(self.p, self.q)
    }
}

/// The scattering polynomial `φ^(p,q)` as an exact `(z, z̄)` polynomial.
///
/// For `min(p, q) ≥ 1` this is
/// `Σ_{j=1}^{min(p,q)} C(p,j) C(q-1,j-1) z^{p-j} (-z̄)^{q-j} (1 - z z̄)^j`;
/// otherwise `z^p` when `q = 0`, and zero when `p = 0 < q`.
pub fn phi(p: u32, q: u32) -> HermitianPoly {
    if q == 0 {
        return HermitianPoly::term(p, 0, BigInt::one());
    }
    if p == 0 {
        return HermitianPoly::zero();
    }
    let row_p = pascal_row(p);
    let row_q = pascal_row(q - 1);
    let mut out = HermitianPoly::zero();
    for j in 1..=p.min(q) {
        let outer = &row_p[j as usize] * &row_q[(j - 1) as usize];
        let sign_zb = if (q - j).is_multiple_of(2) { 1 } else { -1 };
        let row_j = pascal_row(j);
        // (1 - z z̄)^j = Σ_k C(j,k) (-1)^k (z z̄)^k
        for k in 0..=j {
            let sign = if k % 2 == 0 { sign_zb } else { -sign_zb };
            let c = &outer * &row_j[k as usize] * BigInt::from(sign);
            out.add_term((p - j + k, q - j + k), c);
        }
    }
    out
}

/// Value of `φ^(p,q)` at `z = r`, `z̄ = conj(r)`.
pub fn phi_eval(p: u32, q: u32, r: Complex64) -> Complex64 {
    if q == 0 {
        return r.powu(p);
    }
    if p == 0 {
        return Complex64::zero();
    }
    let row_p = pascal_row(p);
    let row_q = pascal_row(q - 1);
    let one_minus = 1.0 - r.norm_sqr();
    let minus_rb = -r.conj();
    let mut acc = Complex64::zero();
    for j in 1..=p.min(q) {
        let c = (&row_p[j as usize] * &row_q[(j - 1) as usize])
            .to_f64()
            .unwrap_or(f64::INFINITY);
        acc += r.powu(p - j) * minus_rb.powu(q - j) * (c * one_minus.powi(j as i32));
    }
    acc
}

/// `Δ φ^(p,q) = p q φ^(p,q)` checked exactly in integer arithmetic.
pub fn verify_eigen(p: u32, q: u32) -> bool {
    let f = phi(p, q);
    let lhs = f.laplace_beltrami();
    let rhs = f.scale(&BigInt::from(u64::from(p) * u64::from(q)));
    lhs == rhs
}

/// Finitely supported multi-index `α = (α_1, α_2, …)`, stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        MultiIndex(entries)
    }

    pub fn zero() -> Self {
        MultiIndex(Vec::new())
    }

    /// `α_j` for 1-based `j`; zero beyond the support.
    pub fn get(&self, j: usize) -> u32 {
        if j == 0 {
            return 0;
        }
        self.0.get(j - 1).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `max supp α`, or 0 for the zero multi-index.
    pub fn max_support(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `supp α = {1, …, max supp α}`.
    pub fn is_contiguous(&self) -> bool {
        self.0.iter().all(|&a| a > 0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Scattering weight `c_α(r) = φ^(1,α_1)(r_0) ∏_{j=1}^n φ^(α_j,α_{j+1})(r_j)`
/// with `n = max supp α` and `α_{n+1} = 0`.
pub fn weight(alpha: &MultiIndex, r: &[Complex64]) -> Result<Complex64> {
    let n = alpha.max_support();
    if r.len() <= n {
        return Err(Error::InsufficientParameters {
            needed: n,
            available: r.len(),
        });
    }
    let mut c = phi_eval(1, alpha.get(1), r[0]);
    for (j, &rj) in r.iter().enumerate().take(n + 1).skip(1) {
        if c.is_zero() {
            break;
        }
        c *= phi_eval(alpha.get(j), alpha.get(j + 1), rj);
    }
    Ok(c)
}

/// Multi-indices in `A_n` with `|α| ≤ max_total_degree` that can carry a
/// nonzero weight when `r_0 = 0`: the zero index, and contiguous indices with
/// `α_1 = 1`. Returned in lexicographic order.
pub fn enumerate_indices(n: usize, max_total_degree: u32) -> Vec<MultiIndex> {
    let mut out = vec![MultiIndex::zero()];
    if n == 0 || max_total_degree == 0 {
        return out;
    }
    let mut stack = vec![vec![1u32]];
    while let Some(prefix) = stack.pop() {
        let total: u32 = prefix.iter().sum();
        if prefix.len() < n {
            for next in 1..=(max_total_degree - total) {
                let mut extended = prefix.clone();
                extended.push(next);
                stack.push(extended);
            }
        }
        out.push(MultiIndex(prefix));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(
            binomial(60, 30),
            "118264581564861424".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn phi_small_cases() {
        assert_eq!(phi(1, 1), HermitianPoly::one_minus_norm());
        assert_eq!(phi(3, 0), HermitianPoly::term(3, 0, BigInt::one()));
        assert!(phi(0, 2).is_zero());
        assert_eq!(phi(0, 0), HermitianPoly::one());
        // hand expansion: φ^(1,2) = -z̄ (1 - z z̄)
        let expected =
            HermitianPoly::term(0, 1, BigInt::from(-1)).mul(&HermitianPoly::one_minus_norm());
        assert_eq!(phi(1, 2), expected);
        assert_eq!(phi(1, 2).to_string(), "-zb + z*zb^2");
    }

    #[test]
    fn phi_eval_cases() {
        assert_eq!(phi_eval(1, 1, Complex64::zero()), c(1.0, 0.0));
        assert_eq!(phi_eval(1, 3, Complex64::zero()), c(0.0, 0.0));
        assert!(close(phi_eval(2, 0, c(0.0, 0.5)), c(-0.25, 0.0), 1e-15));
        assert_eq!(phi_eval(0, 0, Complex64::zero()), c(1.0, 0.0));
    }

    #[test]
    fn phi_eval_matches_exact_polynomial() {
        let r = c(0.37, -0.52);
        for p in 0..7 {
            for q in 0..7 {
                let exact = phi(p, q).eval(r);
                let fast = phi_eval(p, q, r);
                assert!(close(exact, fast, 1e-12), "({p},{q}): {exact} vs {fast}");
            }
        }
    }

    #[test]
    fn eigen_identity_small() {
        assert!(verify_eigen(1, 1));
        assert!(verify_eigen(0, 0));
        assert!(verify_eigen(2, 3));
        let f = phi(2, 3);
        assert_eq!(f.laplace_beltrami(), f.scale(&BigInt::from(6)));
    }

    #[test]
    fn weights_by_hand() {
        let r1 = c(0.3, 0.2);
        let r2 = c(-0.1, 0.4);
        let r = [Complex64::zero(), r1, r2];
        assert_eq!(weight(&MultiIndex::zero(), &r).unwrap(), r[0]);
        let w1 = weight(&MultiIndex::new(vec![1]), &r).unwrap();
        assert!(close(w1, r1, 1e-15));
        let w12 = weight(&MultiIndex::new(vec![1, 2]), &r).unwrap();
        let expected = -r1.conj() * (1.0 - r1.norm_sqr()) * r2 * r2;
        assert!(close(w12, expected, 1e-15));
        // α_1 = 0 ≠ α_2
        assert_eq!(
            weight(&MultiIndex::new(vec![0, 2]), &r).unwrap(),
            Complex64::zero()
        );
    }

    #[test]
    fn weight_zero_index_nonstandard() {
        let r = [c(0.25, -0.1)];
        assert_eq!(weight(&MultiIndex::zero(), &r).unwrap(), r[0]);
    }

    #[test]
    fn weight_needs_enough_parameters() {
        let r = [Complex64::zero(), c(0.1, 0.0)];
        let err = weight(&MultiIndex::new(vec![1, 1, 1]), &r).unwrap_err();
        assert!(matches!(
            err,
            Error::InsufficientParameters {
                needed: 3,
                available: 2
            }
        ));
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_indices(0, 5), vec![MultiIndex::zero()]);
        assert_eq!(
            enumerate_indices(2, 2),
            vec![
                MultiIndex::zero(),
                MultiIndex::new(vec![1]),
                MultiIndex::new(vec![1, 1])
            ]
        );
    }

    #[test]
    fn enumerate_matches_brute_force() {
        let n = 4;
        let m = 4u32;
        let mut brute = Vec::new();
        for a in 0..=m {
            for b in 0..=m {
                for c in 0..=m {
                    for d in 0..=m {
                        let v = vec![a, b, c, d];
                        if v.iter().sum::<u32>() > m {
                            continue;
                        }
                        let alpha = MultiIndex::new(v);
                        if alpha.is_zero() || (alpha.get(1) == 1 && alpha.is_contiguous()) {
                            brute.push(alpha);
                        }
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(enumerate_indices(n, m), brute);
    }

    #[test]
    fn multi_index_trims_and_checks_support() {
        let a = MultiIndex::new(vec![1, 0, 2, 0, 0]);
        assert_eq!(a.max_support(), 3);
        assert!(!a.is_contiguous());
        assert_eq!(a.get(3), 2);
        assert_eq!(a.get(7), 0);
        assert_eq!(a.to_string(), "(1,0,2)");
    }
}
