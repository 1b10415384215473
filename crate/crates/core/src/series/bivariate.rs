use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::ExactPolynomial;
use crate::error::{Error, Result};

/// Homogeneous polynomial `Σ_j c_j s^{d-j} t^j` of total degree `d`.
///
/// The zero polynomial still carries its degree so that operator images stay
/// in the right graded piece.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousBivariate {
    degree: usize,
    coeffs: Vec<BigInt>,
}

/// Coefficients are written as decimal strings, like every big integer on the wire.
impl Serialize for HomogeneousBivariate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut st = s.serialize_struct("HomogeneousBivariate", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

/// The degree-raising operators built from `D = st(∂/∂s + ∂/∂t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    /// `s + t + D`
    T,
    /// `s + D/2`
    Ts,
    /// `t + D/2`
    Tt,
    /// `s + t + 2D`
    U,
}

impl HomogeneousBivariate {
    /// `coeffs[j]` is the coefficient of `s^{degree-j} t^j`; missing entries are zero.
    pub fn new(degree: usize, mut coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() > degree + 1 && coeffs[degree + 1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients do not fit a homogeneous polynomial of degree {degree}",
                coeffs.len()
            )));
        }
        coeffs.resize(degree + 1, BigInt::zero());
        Ok(Self { degree, coeffs })
    }

    pub fn from_i64s(degree: usize, coeffs: &[i64]) -> Result<Self> {
        Self::new(degree, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![BigInt::zero(); degree + 1],
        }
    }

    /// `(s^n / t) A(t/s)` for a type A row polynomial `A(t) = Σ_{k=1}^n a_k t^k`.
    pub fn from_type_a(n: usize, a: &ExactPolynomial) -> Result<Self> {
        if n == 0 || !a.coeff(0).is_zero() || a.degree().is_some_and(|d| d > n) {
            return Err(Error::InvalidArgument(format!(
                "not a type A row polynomial of degree {n}: {a}"
            )));
        }
        Self::new(n - 1, (1..=n).map(|k| a.coeff(k)).collect())
    }

    /// `s^n B(t/s)` for a type B row polynomial `B(t) = Σ_{k=0}^n b_k t^k`.
    pub fn from_type_b(n: usize, b: &ExactPolynomial) -> Result<Self> {
        if b.degree().is_some_and(|d| d > n) {
            return Err(Error::InvalidArgument(format!(
                "not a type B row polynomial of degree {n}: {b}"
            )));
        }
        Self::new(n, (0..=n).map(|k| b.coeff(k)).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `s^{d-j} t^j`.
    pub fn coeff(&self, j: usize) -> &BigInt {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Setting `s = 1`: `Σ_j c_j t^j`.
    pub fn dehomogenize(&self) -> ExactPolynomial {
        ExactPolynomial::new(self.coeffs.clone())
    }

    /// Inverse of [`from_type_a`](Self::from_type_a): `t · p(1, t)`.
    pub fn to_type_a(&self) -> ExactPolynomial {
        self.dehomogenize().shift(1)
    }

    /// Exchanges `s` and `t`.
    pub fn swap_variables(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self {
            degree: self.degree,
            coeffs,
        }
    }

    /// `s · p`.
    pub fn mul_s(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(BigInt::zero());
        Self {
            degree: self.degree + 1,
            coeffs,
        }
    }

    /// `t · p`.
    pub fn mul_t(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self {
            degree: self.degree + 1,
            coeffs,
        }
    }

    /// `D p = st(∂p/∂s + ∂p/∂t)`.
    pub fn d_image(&self) -> Self {
        let d = self.degree;
        let mut coeffs = vec![BigInt::zero(); d + 2];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j + 1] += c * BigInt::from(d - j);
            coeffs[j] += c * BigInt::from(j);
        }
        Self {
            degree: d + 1,
            coeffs,
        }
    }

    /// Twice the image under `op`, which always has integer coefficients.
    fn apply_doubled(&self, op: Operator) -> Vec<BigInt> {
        let d = self.degree;
        let mut out = vec![BigInt::zero(); d + 2];
        // Multipliers of s·p, t·p and D p inside 2·op.
        let (s_mult, t_mult, d_mult) = match op {
            Operator::T => (2, 2, 2),
            Operator::Ts => (2, 0, 1),
            Operator::Tt => (0, 2, 1),
            Operator::U => (2, 2, 4),
        };
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // s · s^{d-j} t^j keeps index j; t · (...) moves to j+1.
            out[j] += c * s_mult;
            out[j + 1] += c * t_mult;
            // D s^{d-j} t^j = (d-j) s^{d-j} t^{j+1} + j s^{d-j+1} t^j.
            out[j + 1] += c * BigInt::from((d - j) * d_mult);
            out[j] += c * BigInt::from(j * d_mult);
        }
        out
    }

    fn halve(degree: usize, doubled: Vec<BigInt>, context: &str) -> Result<Self> {
        let two = BigInt::from(2);
        let mut coeffs = Vec::with_capacity(doubled.len());
        for (i, c) in doubled.into_iter().enumerate() {
            let (q, r) = c.div_rem(&two);
            if !r.is_zero() {
                return Err(Error::NonIntegral {
                    context: context.to_string(),
                    index: i,
                    value: format!("{c}/2"),
                });
            }
            coeffs.push(q);
        }
        Ok(Self { degree, coeffs })
    }

    /// `2 · op(p)`, which is integral even when `op(p)` is not; it has the same
    /// roots as `op(p)`.
    pub fn apply_doubled_image(&self, op: Operator) -> Self {
        Self {
            degree: self.degree + 1,
            coeffs: self.apply_doubled(op),
        }
    }

    /// Applies `op`; the result has degree one higher. Fails only if a half-integer
    /// coefficient appears (possible for `T_s`, `T_t`).
    pub fn apply(&self, op: Operator) -> Result<Self> {
        Self::halve(
            self.degree + 1,
            self.apply_doubled(op),
            &format!("{op:?} image"),
        )
    }

    /// `T_s p + T_t q`, with half-integers allowed in the individual terms as long
    /// as the sum is integral.
    pub fn apply_ts_tt(p: &Self, q: &Self) -> Result<Self> {
        assert_eq!(p.degree, q.degree, "degree mismatch in T_s p + T_t q");
        let a = p.apply_doubled(Operator::Ts);
        let b = q.apply_doubled(Operator::Tt);
        let sum = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        Self::halve(p.degree + 1, sum, "T_s p + T_t q")
    }
}

pub fn apply_operator(op: Operator, p: &HomogeneousBivariate) -> Result<HomogeneousBivariate> {
    p.apply(op)
}

impl Add for &HomogeneousBivariate {
    type Output = HomogeneousBivariate;
    fn add(self, rhs: &HomogeneousBivariate) -> HomogeneousBivariate {
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        HomogeneousBivariate {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for HomogeneousBivariate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree;
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = String::new();
            if *c != BigInt::from(1) || d == 0 {
                term.push_str(&c.to_string());
            }
            match d - j {
                0 => {}
                1 => term.push('s'),
                e => term.push_str(&format!("s^{e}")),
            }
            match j {
                0 => {}
                1 => term.push('t'),
                e => term.push_str(&format!("t^{e}")),
            }
            terms.push(term);
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: usize, c: &[i64]) -> HomogeneousBivariate {
        HomogeneousBivariate::from_i64s(d, c).unwrap()
    }

    #[test]
    fn t_maps_eulerian_row_three_to_four() {
        let a3 = h(2, &[1, 4, 1]);
        assert_eq!(a3.apply(Operator::T).unwrap(), h(3, &[1, 11, 11, 1]));
    }

    #[test]
    fn operators_on_zero() {
        for op in [Operator::T, Operator::Ts, Operator::Tt, Operator::U] {
            let z = HomogeneousBivariate::zero(4).apply(op).unwrap();
            assert!(z.is_zero());
            assert_eq!(z.degree(), 5);
        }
    }

    #[test]
    fn ts_tt_gives_positive_row_four() {
        let plus = h(2, &[1, 2, 0]);
        let minus = h(2, &[0, 2, 1]);
        let a4p = HomogeneousBivariate::apply_ts_tt(&plus, &minus).unwrap();
        assert_eq!(a4p, h(3, &[1, 5, 5, 1]));
        assert_eq!(a4p.to_string(), "s^3 + 5s^2t + 5st^2 + t^3");
        let a4m = HomogeneousBivariate::apply_ts_tt(&minus, &plus).unwrap();
        assert_eq!(a4m, h(3, &[0, 6, 6, 0]));
    }

    #[test]
    fn u_builds_type_b_rows() {
        let mut b = h(1, &[1, 1]);
        b = b.apply(Operator::U).unwrap();
        assert_eq!(b, h(2, &[1, 6, 1]));
        b = b.apply(Operator::U).unwrap();
        assert_eq!(b, h(3, &[1, 23, 23, 1]));
    }

    #[test]
    fn half_integer_image_is_rejected() {
        // D s = st, so T_s s = s^2 + st/2.
        let err = h(1, &[1, 0]).apply(Operator::Ts).unwrap_err();
        assert!(matches!(err, Error::NonIntegral { .. }));
    }

    #[test]
    fn homogenization_round_trip() {
        let a = ExactPolynomial::from_i64s(&[0, 1, 2]);
        let hom = HomogeneousBivariate::from_type_a(3, &a).unwrap();
        assert_eq!(hom, h(2, &[1, 2, 0]));
        assert_eq!(hom.to_type_a(), a);
        assert!(HomogeneousBivariate::from_type_a(3, &ExactPolynomial::from_i64s(&[1])).is_err());
    }

    #[test]
    fn operator_decomposes_into_pieces() {
        let p = h(3, &[1, 11, 11, 1]);
        let sum = &(&p.mul_s() + &p.mul_t()) + &p.d_image();
        assert_eq!(p.apply(Operator::T).unwrap(), sum);
    }

    #[test]
    fn linearity() {
        let p = h(3, &[2, -1, 5, 7]);
        let q = h(3, &[0, 3, 3, -2]);
        for op in [Operator::T, Operator::U] {
            assert_eq!(
                (&p + &q).apply(op).unwrap(),
                &p.apply(op).unwrap() + &q.apply(op).unwrap()
            );
        }
    }
}
