use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactPolynomial;
use crate::error::{Error, Result};
use crate::exact::binomial;

/// Power series `Σ_{i<N} c_i u^i + O(u^N)` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Pads or truncates `coeffs` to exactly `order` entries.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order, BigRational::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    pub fn from_polynomial(p: &ExactPolynomial, order: usize) -> Self {
        Self::new(
            p.coeffs()
                .iter()
                .take(order)
                .map(|c| BigRational::from(c.clone()))
                .collect(),
            order,
        )
    }

    /// `1 + c u^j`.
    pub fn one_plus_monomial(c: BigRational, j: usize, order: usize) -> Self {
        let mut s = Self::one(order);
        if j < order {
            s.coeffs[j] += c;
        }
        s
    }

    /// `Σ_{i<N} u^i = 1/(1-u)`.
    pub fn geometric(order: usize) -> Self {
        Self::new(vec![BigRational::one(); order], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let mut out = vec![BigRational::zero(); n];
        out[0] = inv0.clone();
        for i in 1..n {
            let mut acc = BigRational::zero();
            for k in 1..=i {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[i - k];
                }
            }
            out[i] = -acc * &inv0;
        }
        Ok(Self { coeffs: out })
    }

    /// `self^e` for any integer `e`, including exponents far beyond machine range.
    ///
    /// Writing `self = c_0 (1 + h)` with `h = O(u)`, this is
    /// `c_0^e Σ_{m<N} C(e, m) h^m`, which needs only `N` products regardless of `e`.
    /// When `c_0 != ±1` the exponent must fit in an `i64`.
    pub fn pow(&self, e: &BigInt) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            if e < &BigInt::zero() {
                return Err(Error::ZeroConstantTerm);
            }
            return self.pow_by_squaring(e);
        }
        let h = Self {
            coeffs: std::iter::once(BigRational::zero())
                .chain(self.coeffs[1..].iter().map(|c| c / &c0))
                .collect(),
        };
        let mut sum = Self::one(n);
        let mut h_pow = Self::one(n);
        for m in 1..n {
            h_pow = &h_pow * &h;
            if h_pow.coeffs.iter().all(Zero::is_zero) {
                break;
            }
            let c = BigRational::from(binomial(e, m));
            if !c.is_zero() {
                sum = &sum + &h_pow.scale(&c);
            }
        }
        let lead = rational_pow(&c0, e)?;
        Ok(sum.scale(&lead))
    }

    fn pow_by_squaring(&self, e: &BigInt) -> Result<Self> {
        let mut e: u64 = e.try_into().map_err(|_| {
            Error::InvalidArgument("exponent too large for a series without constant term".into())
        })?;
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Index of the first coefficient where `self` and `other` differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}

fn rational_pow(c: &BigRational, e: &BigInt) -> Result<BigRational> {
    let one = BigRational::one();
    if *c == one {
        return Ok(one);
    }
    let even = (e % BigInt::from(2)).is_zero();
    if *c == -one.clone() {
        return Ok(if even { one } else { -one });
    }
    let e: i64 = e.try_into().map_err(|_| {
        Error::InvalidArgument("exponent too large for a constant term other than ±1".into())
    })?;
    let base = if e < 0 { c.recip() } else { c.clone() };
    Ok(num_traits::pow(base, e.unsigned_abs() as usize))
}

/// `base^e` as a truncated series; `base` must have a nonzero constant term when `e < 0`.
pub fn series_inverse_power(base: &TruncatedSeries, e: i64) -> Result<TruncatedSeries> {
    base.pow(&BigInt::from(e))
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "truncation order mismatch");
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "truncation order mismatch");
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "truncation order mismatch");
        let n = self.order();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}
