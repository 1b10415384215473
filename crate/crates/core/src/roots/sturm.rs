use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::series::ExactPolynomial;

/// Sturm sequence `p_0 = p, p_1 = p', p_{k+1} = -rem(p_{k-1}, p_k)` of a
/// square-free polynomial, each term scaled by a positive rational.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<ExactPolynomial>,
}

/// The chain grew past the configured coefficient size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainOverflow {
    pub bits: u64,
}

impl SturmChain {
    /// `p` must be square-free and nonzero.
    pub fn new(p: &ExactPolynomial) -> Self {
        Self::with_cap(p, u64::MAX).expect("uncapped chain cannot overflow")
    }

    pub fn with_cap(p: &ExactPolynomial, max_bits: u64) -> Result<Self, ChainOverflow> {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let p0 = p.positive_primitive();
        let mut chain = vec![p0.clone()];
        if p0.degree() == Some(0) {
            return Ok(Self { chain });
        }
        chain.push(p0.derivative().positive_primitive());
        loop {
            let k = chain.len();
            let r = chain[k - 2].sign_preserving_prem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            let next = (-r).positive_primitive();
            let bits = next.max_coefficient_bits();
            if bits > max_bits {
                return Err(ChainOverflow { bits });
            }
            chain.push(next);
        }
        Ok(Self { chain })
    }

    pub fn polynomials(&self) -> &[ExactPolynomial] {
        &self.chain
    }

    pub fn max_coefficient_bits(&self) -> u64 {
        self.chain
            .iter()
            .map(ExactPolynomial::max_coefficient_bits)
            .max()
            .unwrap_or(0)
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x.numer(), x.denom())))
    }

    pub fn variations_at_pos_infinity(&self) -> usize {
        Self::variations(self.chain.iter().map(ExactPolynomial::sign_at_pos_infinity))
    }

    pub fn variations_at_neg_infinity(&self) -> usize {
        Self::variations(self.chain.iter().map(ExactPolynomial::sign_at_neg_infinity))
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        self.variations_at_neg_infinity() - self.variations_at_pos_infinity()
    }

    /// Number of distinct roots in the half-open interval `(a, b]`, `a < b`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        debug_assert!(a < b);
        self.variations_at(a) - self.variations_at(b)
    }

    /// Number of distinct roots in `(a, +∞)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at_pos_infinity()
    }
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn squarefree_part(p: &ExactPolynomial) -> ExactPolynomial {
    assert!(!p.is_zero(), "square-free part of the zero polynomial");
    let g = p.gcd(&p.derivative());
    p.div_exact(&g)
        .expect("gcd divides its argument")
        .primitive_part()
}

/// A half-open interval `(lo, hi]` containing exactly one distinct real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn midpoint_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / BigRational::from(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// Summary of one isolated root, for reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSummary {
    pub approx: f64,
    pub multiplicity: usize,
}

/// `1 + ⌈max_i |a_i| / |a_d|⌉`, an integer bound on the absolute value of every root.
pub fn cauchy_bound(p: &ExactPolynomial) -> BigInt {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let (q, r) = num_integer::Integer::div_rem(&max, &lead);
    BigInt::one() + q + if r.is_zero() { 0 } else { 1 }
}

/// Isolates the distinct real roots of `p` into disjoint intervals, sorted increasingly.
pub fn isolate_real_roots(p: &ExactPolynomial) -> Vec<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sq = squarefree_part(p);
    let chain = SturmChain::new(&sq);
    let b = BigRational::from(cauchy_bound(&sq));
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let two = BigRational::from(BigInt::from(2));
    while let Some((lo, hi)) = stack.pop() {
        match chain.count_in(&lo, &hi) {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / &two;
                // Upper half first so that popping yields increasing order.
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Multiplicity of the unique root of `p`'s square-free part in `iv`, or 0 if
/// `iv` contains no root of `p`. `iv` must isolate at most one root of `p`.
pub fn multiplicity_in(p: &ExactPolynomial, iv: &RootInterval) -> usize {
    let mut g = p.clone();
    let mut mult = 0;
    while g.degree().unwrap_or(0) > 0 {
        let chain = SturmChain::new(&squarefree_part(&g));
        if chain.count_in(&iv.lo, &iv.hi) == 0 {
            break;
        }
        mult += 1;
        g = g.gcd(&g.derivative());
    }
    mult
}
