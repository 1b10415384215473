use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense univariate polynomial over the integers, lowest degree first.
///
/// The highest stored coefficient is nonzero unless the polynomial is zero,
/// in which case nothing is stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<BigInt>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `c t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `(1 - t)^m`.
    pub fn one_minus_t_pow(m: usize) -> Self {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut c = BigInt::one();
        for k in 0..=m {
            coeffs.push(if k % 2 == 0 { c.clone() } else { -c.clone() });
            c = c * BigInt::from(m - k) / BigInt::from(k + 1);
        }
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `t^m`.
    pub fn shift(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divides every coefficient by `d`, failing if any division is inexact.
    pub fn div_exact_scalar(&self, d: &BigInt, context: &str) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::NonIntegral {
                    context: context.to_string(),
                    index: i,
                    value: format!("{c}/{d}"),
                });
            }
            out.push(q);
        }
        Ok(Self::new(out))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from(c.clone())
            })
    }

    /// Sign of `p(num/den)` for `den > 0`, computed as the sign of the
    /// homogenized value `Σ c_i num^i den^{d-i}`.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> Ordering {
        debug_assert!(den.is_positive());
        if self.is_zero() {
            return Ordering::Equal;
        }
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // Horner in num with den powers: acc = Σ c_i num^i den^{d-i}.
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * num + c * &den_pow;
            if i > 0 {
                den_pow *= den;
            }
        }
        acc.sign_ordering()
    }

    /// Sign of the polynomial as `t -> +∞`.
    pub fn sign_at_pos_infinity(&self) -> Ordering {
        self.leading()
            .map_or(Ordering::Equal, |c| c.sign_ordering())
    }

    /// Sign of the polynomial as `t -> -∞`.
    pub fn sign_at_neg_infinity(&self) -> Ordering {
        match self.degree() {
            None => Ordering::Equal,
            Some(d) => {
                let s = self.sign_at_pos_infinity();
                if d % 2 == 0 {
                    s
                } else {
                    s.reverse()
                }
            }
        }
    }

    /// Multiplicity of `0` as a root; 0 for the zero polynomial.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count() * usize::from(!self.is_zero())
    }

    /// Splits `p = t^m q` with `q(0) != 0`.
    pub fn strip_zero_roots(&self) -> (usize, Self) {
        let m = self.zero_root_multiplicity();
        (m, Self::new(self.coeffs[m..].to_vec()))
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Divides out the (positive) content only, preserving signs.
    pub fn positive_primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder scaled so that it has the same sign as the true
    /// remainder: `|lc(b)|^{δ+1} a = q b + r` with `deg r < deg b`.
    pub fn sign_preserving_prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("division by zero polynomial");
        let lc = b.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < db {
            return self.clone();
        }
        let steps = da - db + 1;
        // Each step: r <- lc * r - r_lead * t^{k} b, which scales by lc (possibly negative).
        for k in (0..steps).rev() {
            let top = r[k + db].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            if !top.is_zero() {
                for (j, bc) in b.coeffs.iter().enumerate() {
                    r[k + j] -= &top * bc;
                }
            }
            debug_assert!(r[k + db].is_zero());
        }
        r.truncate(db);
        let mut rem = Self::new(r);
        // We multiplied by lc^{steps}; fix the sign to match |lc|^{steps}.
        if lc.is_negative() && steps % 2 == 1 {
            rem = -rem;
        }
        rem
    }

    /// Exact quotient over the rationals; fails unless `b` divides `self` with
    /// an integer quotient.
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        let db = b.degree().expect("division by zero polynomial");
        let Some(da) = self.degree() else {
            return Ok(Self::zero());
        };
        if da < db {
            return Err(Error::InternalMismatch {
                what: "exact polynomial division".into(),
                detail: "divisor has larger degree".into(),
            });
        }
        let lc = b.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let (c, rem) = r[k + db].div_rem(lc);
            if !rem.is_zero() {
                return Err(Error::NonIntegral {
                    context: "exact polynomial division".into(),
                    index: k,
                    value: format!("{}/{}", r[k + db], lc),
                });
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k + j] -= &c * bc;
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::InternalMismatch {
                what: "exact polynomial division".into(),
                detail: "nonzero remainder".into(),
            });
        }
        Ok(Self::new(q))
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.sign_preserving_prem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Coefficients reversed within a window of length `len`:
    /// `t^{len-1} p(1/t)`. Requires `len > degree`.
    pub fn reflect(&self, len: usize) -> Self {
        assert!(self.coeffs.len() <= len, "reflection window too small");
        let mut c = self.coeffs.clone();
        c.resize(len, BigInt::zero());
        c.reverse();
        Self::new(c)
    }

    /// True when the nonzero span of coefficients reads the same backwards.
    pub fn stripped_is_palindromic(&self) -> bool {
        let (_, q) = self.strip_zero_roots();
        q.coeffs.iter().eq(q.coeffs.iter().rev())
    }

    /// Coefficients between the lowest and highest nonzero ones, inclusive.
    pub fn stripped_coeffs(&self) -> Vec<BigInt> {
        self.strip_zero_roots().1.coeffs
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `t = 1` of the `r`-th derivative.
    pub fn derivative_at_one(&self, r: usize) -> BigInt {
        let mut p = self.clone();
        for _ in 0..r {
            p = p.derivative();
        }
        p.coeffs.iter().sum()
    }

    pub fn max_coefficient_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPolynomial::new(out)
    }
}

impl Neg for ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        ExactPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{a}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{a}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Wire form: `{"offset": lowest exponent, "coefficients": [decimal strings]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub offset: usize,
    pub coefficients: Vec<String>,
}

impl From<&ExactPolynomial> for PolynomialJson {
    fn from(p: &ExactPolynomial) -> Self {
        let (offset, q) = p.strip_zero_roots();
        Self {
            offset,
            coefficients: q.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<PolynomialJson> for ExactPolynomial {
    type Error = Error;
    fn try_from(j: PolynomialJson) -> Result<Self> {
        let coeffs = j
            .coefficients
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|e| Error::InvalidArgument(format!("bad coefficient {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactPolynomial::new(coeffs).shift(j.offset))
    }
}

impl Serialize for ExactPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolynomialJson::deserialize(d)?;
        ExactPolynomial::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> ExactPolynomial {
        ExactPolynomial::from_i64s(c)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn binomial_power() {
        assert_eq!(ExactPolynomial::one_minus_t_pow(3), p(&[1, -3, 3, -1]));
        assert_eq!(ExactPolynomial::one_minus_t_pow(0), p(&[1]));
        assert_eq!(ExactPolynomial::one_minus_t_pow(5), p(&[1, -1]).pow(5));
    }

    #[test]
    fn strip_and_reflect() {
        let a = p(&[0, 0, 6, 6]);
        assert_eq!(a.zero_root_multiplicity(), 2);
        assert_eq!(a.strip_zero_roots().1, p(&[6, 6]));
        assert_eq!(p(&[0, 1, 2]).reflect(4), p(&[0, 2, 1]));
        assert!(p(&[0, 1, 14, 30, 14, 1]).stripped_is_palindromic());
    }

    #[test]
    fn gcd_of_products() {
        let f = p(&[1, 1]); // 1 + t
        let g = p(&[-2, 0, 1]); // t^2 - 2
        let h = p(&[3, 0, 5]);
        let a = &(&f * &g) * &p(&[2]);
        let b = &(&f * &h) * &p(&[-6]);
        assert_eq!(a.gcd(&b), f);
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 2])), p(&[1]));
    }

    #[test]
    fn exact_division() {
        let f = p(&[1, 1]);
        let g = p(&[-2, 0, 3]);
        assert_eq!((&f * &g).div_exact(&g).unwrap(), f);
        assert!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])).is_err());
    }

    #[test]
    fn sign_at_rational_points() {
        let q = p(&[-2, 0, 1]); // t^2 - 2
        let one = BigInt::one();
        assert_eq!(q.sign_at(&BigInt::from(1), &one), Ordering::Less);
        assert_eq!(
            q.sign_at(&BigInt::from(3), &BigInt::from(2)),
            Ordering::Greater
        );
        assert_eq!(
            q.sign_at(&BigInt::from(-7), &BigInt::from(5)),
            Ordering::Less
        );
        assert_eq!(p(&[0, 1]).sign_at(&BigInt::zero(), &one), Ordering::Equal);
        assert_eq!(p(&[1, 1, 1]).sign_at_neg_infinity(), Ordering::Greater);
        assert_eq!(p(&[1, 1]).sign_at_neg_infinity(), Ordering::Less);
    }

    #[test]
    fn json_round_trip_with_offset() {
        let a = p(&[0, 0, 6, 6]);
        let j = PolynomialJson::from(&a);
        assert_eq!(j.offset, 2);
        assert_eq!(j.coefficients, vec!["6", "6"]);
        assert_eq!(ExactPolynomial::try_from(j).unwrap(), a);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 1, -4, 1]).to_string(), "t - 4t^2 + t^3");
        assert_eq!(p(&[-1]).to_string(), "-1");
    }

    proptest! {
        #[test]
        fn prem_is_positive_multiple_of_remainder(
            a in proptest::collection::vec(-20i64..20, 1..7),
            b in proptest::collection::vec(-20i64..20, 1..5),
        ) {
            let a = p(&a);
            let b = p(&b);
            prop_assume!(!b.is_zero() && a.degree() >= b.degree());
            let r = a.sign_preserving_prem(&b);
            let db = b.degree().unwrap();
            prop_assert!(r.degree().map_or(true, |d| d < db));
            // |lc(b)|^{δ+1} a - r must be divisible by b over Q.
            let steps = a.degree().unwrap() - db + 1;
            let scale = num_traits::pow(b.leading().unwrap().abs(), steps);
            let lhs = &a.scale(&scale) - &r;
            let bc: Vec<BigRational> =
                b.coeffs().iter().map(|c| BigRational::from(c.clone())).collect();
            let mut rem: Vec<BigRational> =
                lhs.coeffs().iter().map(|c| BigRational::from(c.clone())).collect();
            while rem.len() > db {
                let top = rem.last().unwrap().clone() / bc[db].clone();
                let shift = rem.len() - 1 - db;
                for (j, c) in bc.iter().enumerate() {
                    rem[shift + j] = rem[shift + j].clone() - top.clone() * c;
                }
                rem.pop();
            }
            prop_assert!(rem.iter().all(|c| c.is_zero()));
        }

        #[test]
        fn gcd_divides_both(
            a in proptest::collection::vec(-9i64..9, 1..6),
            b in proptest::collection::vec(-9i64..9, 1..6),
            f in proptest::collection::vec(-5i64..5, 1..4),
        ) {
            let f = p(&f);
            prop_assume!(!f.is_zero());
            let a = &p(&a) * &f;
            let b = &p(&b) * &f;
            prop_assume!(!a.is_zero() && !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(a.primitive_part().div_exact(&g).is_ok());
            prop_assert!(b.primitive_part().div_exact(&g).is_ok());
            prop_assert!(g.degree() >= f.degree());
        }
    }
}
