//! Small exact-arithmetic helpers shared across modules: binomials, powers,
//! and lossless rendering of rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Generalized binomial coefficient `top (top-1) ⋯ (top-k+1) / k!`, valid for any
/// integer `top`, including negative values and `0 <= top < k` (which give 0).
pub fn binomial(top: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= top - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// `C(top, k)` with the convention that it is 0 whenever `k < 0` or `0 <= top < k`.
pub fn binomial_i64(top: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    binomial(&BigInt::from(top), k as usize)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn pow_u64(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Renders `r` with at most `sig` significant digits, rounding half away from zero.
/// Plain positional notation is used for moderate magnitudes, scientific otherwise.
pub fn decimal_string(r: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let a = r.numer().abs();
    let b = r.denom().clone();
    let ten = BigInt::from(10);
    let digits = |x: &BigInt| x.to_string().len() as i64;

    // e = floor(log10(a / b)).
    let mut e = digits(&a) - digits(&b);
    let scaled_le = |e: i64| -> bool {
        // 10^e <= a/b
        if e >= 0 {
            num_traits::pow(ten.clone(), e as usize) * &b <= a
        } else {
            b.clone() <= &a * num_traits::pow(ten.clone(), (-e) as usize)
        }
    };
    while !scaled_le(e) {
        e -= 1;
    }
    while scaled_le(e + 1) {
        e += 1;
    }

    let shift = sig as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (&a * num_traits::pow(ten.clone(), shift as usize), b.clone())
    } else {
        (
            a.clone(),
            &b * num_traits::pow(ten.clone(), (-shift) as usize),
        )
    };
    let (mut q, rem) = num.div_rem(&den);
    if rem * 2 >= den {
        q += 1;
    }
    if q == num_traits::pow(ten.clone(), sig) {
        q /= &ten;
        e += 1;
    }
    let mantissa = q.to_string();
    debug_assert_eq!(mantissa.len(), sig);

    let body = if (-7..21).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if int_len >= mantissa.len() {
                format!("{}{}", mantissa, "0".repeat(int_len - mantissa.len()))
            } else {
                let (int_part, frac) = mantissa.split_at(int_len);
                let frac = frac.trim_end_matches('0');
                if frac.is_empty() {
                    int_part.to_string()
                } else {
                    format!("{int_part}.{frac}")
                }
            }
        } else {
            let frac = format!("{}{}", "0".repeat((-e - 1) as usize), mantissa);
            format!("0.{}", frac.trim_end_matches('0'))
        }
    } else {
        let (lead, rest) = mantissa.split_at(1);
        let rest = rest.trim_end_matches('0');
        if rest.is_empty() {
            format!("{lead}e{e}")
        } else {
            format!("{lead}.{rest}e{e}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Lossless `p/q` plus a human-readable decimal, as emitted in JSON payloads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactValue {
    pub exact: String,
    pub numerator: String,
    pub denominator: String,
    pub decimal: String,
}

impl From<&BigRational> for ExactValue {
    fn from(r: &BigRational) -> Self {
        Self {
            exact: format!("{}/{}", r.numer(), r.denom()),
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
            decimal: decimal_string(r, 15),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial_i64(4, 3), BigInt::from(4));
        assert_eq!(binomial_i64(2, 3), BigInt::zero());
        assert_eq!(binomial_i64(5, -1), BigInt::zero());
        assert_eq!(binomial_i64(-2, 3), BigInt::from(-4));
        assert_eq!(binomial_i64(0, 0), BigInt::one());
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal_string(&ratio(3, 4), 15), "0.75");
        assert_eq!(decimal_string(&ratio(1, 3), 15), "0.333333333333333");
        assert_eq!(decimal_string(&ratio(2, 3), 15), "0.666666666666667");
        assert_eq!(decimal_string(&ratio(-5, 2), 15), "-2.5");
        assert_eq!(decimal_string(&ratio(120, 1), 15), "120");
        let half_plus = ratio(1, 2) + ratio(1, 1u64 << 28);
        assert_eq!(decimal_string(&half_plus, 15), "0.50000000372529");
        assert_eq!(decimal_string(&ratio(1, 1u64 << 40), 3), "9.09e-13");
        assert_eq!(decimal_string(&ratio(999_999, 1_000_000), 3), "1");
    }

    #[test]
    fn exact_value_fields() {
        let v = ExactValue::from(&ratio(6, 8));
        assert_eq!(v.exact, "3/4");
        assert_eq!(v.decimal, "0.75");
    }
}
