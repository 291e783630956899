use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::integer::Roots;
use num::{BigInt, BigRational, FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `Q` or a real quadratic field `Q(√k)` with `k` a positive non-square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadField {
    /// 0 for `Q`
    radicand: u64,
}

impl QuadField {
    pub fn rationals() -> Self {
        QuadField { radicand: 0 }
    }

    pub fn sqrt(k: u64) -> Result<Self> {
        let r = Roots::sqrt(&k);
        if k < 2 || r * r == k {
            return Err(Error::Field(format!("sqrt({k}) is rational")));
        }
        Ok(QuadField { radicand: k })
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 0
    }

    pub fn zero(&self) -> QuadElem {
        self.from_rational(BigRational::zero())
    }

    pub fn from_rational(&self, a: BigRational) -> QuadElem {
        QuadElem {
            a,
            b: BigRational::zero(),
            k: self.radicand,
        }
    }

    /// `a + b√k`; `b` must vanish over `Q`.
    pub fn elem(&self, a: BigRational, b: BigRational) -> Result<QuadElem> {
        if self.is_rational() && !b.is_zero() {
            return Err(Error::Field("irrational part given over Q".into()));
        }
        Ok(QuadElem {
            a,
            b,
            k: self.radicand,
        })
    }
}

/// Accepts `Q`, `Q(sqrt5)` and `Q(sqrt(5))`.
impl FromStr for QuadField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "Q" {
            return Ok(Self::rationals());
        }
        let inner = t
            .strip_prefix("Q(sqrt")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Field(format!("unrecognized field {s:?}")))?;
        let inner = inner
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(inner);
        let k: u64 = inner
            .parse()
            .map_err(|_| Error::Field(format!("bad radicand in {s:?}")))?;
        Self::sqrt(k)
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            f.write_str("Q")
        } else {
            write!(f, "Q(sqrt{})", self.radicand)
        }
    }
}

/// Exact element `a + b√k` of a quadratic field (`b = 0`, `k = 0` over `Q`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a: BigRational,
    b: BigRational,
    k: u64,
}

impl QuadElem {
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn field(&self) -> QuadField {
        QuadField { radicand: self.k }
    }

    fn joint(&self, other: &QuadElem) -> u64 {
        debug_assert!(self.k == other.k || self.b.is_zero() || other.b.is_zero());
        self.k.max(other.k)
    }

    pub fn add(&self, other: &QuadElem) -> QuadElem {
        QuadElem {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            k: self.joint(other),
        }
    }

    pub fn sub(&self, other: &QuadElem) -> QuadElem {
        QuadElem {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            k: self.joint(other),
        }
    }

    pub fn mul(&self, other: &QuadElem) -> QuadElem {
        let k = self.joint(other);
        let kr = BigRational::from_integer(BigInt::from(k));
        QuadElem {
            a: &self.a * &other.a + &self.b * &other.b * kr,
            b: &self.a * &other.b + &self.b * &other.a,
            k,
        }
    }

    pub fn scale(&self, c: &BigRational) -> QuadElem {
        QuadElem {
            a: &self.a * c,
            b: &self.b * c,
            k: self.k,
        }
    }

    /// `a² - k b²`
    fn norm(&self) -> BigRational {
        let kr = BigRational::from_integer(BigInt::from(self.k));
        &self.a * &self.a - &self.b * &self.b * kr
    }

    pub fn inv(&self) -> Result<QuadElem> {
        if self.is_zero() {
            return Err(Error::Field("division by zero".into()));
        }
        let n = self.norm();
        Ok(QuadElem {
            a: &self.a / &n,
            b: -&self.b / &n,
            k: self.k,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            // opposite signs: compare a² with k b²
            (x, _) => match self.norm().cmp(&BigRational::zero()) {
                Ordering::Greater => x,
                Ordering::Less => x.reverse(),
                Ordering::Equal => Ordering::Equal,
            },
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.k as f64).sqrt()
    }

    /// Exact `⌊x⌋`.
    pub fn floor(&self) -> BigInt {
        let approx = self.to_f64().floor();
        let mut c = BigInt::from_f64(approx).unwrap_or_else(BigInt::zero);
        let diff = |c: &BigInt| {
            self.sub(
                &self
                    .field()
                    .from_rational(BigRational::from_integer(c.clone())),
            )
        };
        while diff(&c).signum() == Ordering::Less {
            c -= 1;
        }
        while diff(&(&c + 1)).signum() != Ordering::Less {
            c += 1;
        }
        c
    }

    /// Continued-fraction convergents `p_j / q_j` for `j = 0..count`; a finite
    /// expansion repeats its last convergent.
    pub fn convergents(&self, count: usize) -> Result<Vec<BigRational>> {
        let mut out = Vec::with_capacity(count);
        let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
        let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
        let mut x = Some(self.clone());
        while out.len() < count {
            match x.take() {
                Some(cur) => {
                    let a = cur.floor();
                    let p = &a * &p0 + &p1;
                    let q = &a * &q0 + &q1;
                    out.push(BigRational::new(p.clone(), q.clone()));
                    (p1, q1) = (p0, q0);
                    (p0, q0) = (p, q);
                    let frac = cur.sub(&cur.field().from_rational(BigRational::from_integer(a)));
                    if !frac.is_zero() {
                        x = Some(frac.inv()?);
                    }
                }
                None => {
                    let last = out.last().cloned().expect("at least one convergent");
                    out.push(last);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let k = self.k;
        let b_abs = self.b.abs();
        let rad = if b_abs.is_one() {
            format!("sqrt{k}")
        } else {
            format!("{b_abs}*sqrt{k}")
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{rad}"),
            (true, true) => write!(f, "-{rad}"),
            (false, false) => write!(f, "{} + {rad}", self.a),
            (false, true) => write!(f, "{} - {rad}", self.a),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    BigRational::from_str(t).map_err(|_| Error::Field(format!("bad rational {s:?}")))
}
