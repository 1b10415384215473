//! Riffle shuffles and shelf shufflers: exact outcome probabilities, exact
//! post-shuffle sign probabilities, and a seeded Monte Carlo simulator.
//!
//! Decks start at the identity and a deck is read as the permutation
//! `w(i) = ` the card in position `i` (position 1 on top).

mod simulate;

pub use simulate::{simulate, SimulationResult, RNG_ALGORITHM};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    enumerate_hyperoctahedral, enumerate_symmetric, EnumerationCaps, Permutation, SignedPermutation,
};
use crate::error::{Error, Result};
use crate::exact::{binomial_i64, pow_u64};
use crate::series::verify::Checker;
use crate::series::Verification;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShuffleVariant {
    /// Gilbert–Shannon–Reeds `a`-shuffle on `S_n`.
    Gsr,
    /// Type B `a`-shuffle on `B_n`, `a` odd.
    TypeB,
    /// Shelf shuffler with `m` shelves.
    Shelf,
}

impl fmt::Display for ShuffleVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShuffleVariant::Gsr => "gsr",
            ShuffleVariant::TypeB => "typeb",
            ShuffleVariant::Shelf => "shelf",
        })
    }
}

impl FromStr for ShuffleVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gsr" => Ok(ShuffleVariant::Gsr),
            "typeb" | "type-b" | "b" => Ok(ShuffleVariant::TypeB),
            "shelf" => Ok(ShuffleVariant::Shelf),
            _ => Err(Error::InvalidArgument(format!(
                "unknown shuffle variant {s:?}"
            ))),
        }
    }
}

/// `iterations` successive shuffles of an `n`-card deck with parameter
/// `a` (riffles) or `m` (shelves).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShuffleSpec {
    pub variant: ShuffleVariant,
    pub n: usize,
    pub parameter: u64,
    pub iterations: u32,
}

impl ShuffleSpec {
    pub fn new(variant: ShuffleVariant, n: usize, parameter: u64, iterations: u32) -> Result<Self> {
        let spec = Self {
            variant,
            n,
            parameter,
            iterations,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument(
                "deck size must be at least 1".into(),
            ));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidArgument(
                "iterations must be at least 1".into(),
            ));
        }
        if self.parameter == 0 {
            return Err(Error::InvalidArgument(
                "shuffle parameter must be at least 1".into(),
            ));
        }
        if self.variant == ShuffleVariant::TypeB && self.parameter % 2 == 0 {
            return Err(Error::EvenTypeBParameter(self.parameter));
        }
        Ok(())
    }

    /// Exact probability that the final deck has sign `+1`.
    pub fn exact_sign_probability(&self) -> Result<BigRational> {
        self.validate()?;
        match self.variant {
            ShuffleVariant::Gsr => Ok(sign_probability_exact(
                self.n,
                self.parameter,
                self.iterations,
            )),
            ShuffleVariant::TypeB => {
                b_sign_probability_exact(self.n, self.parameter, self.iterations)
            }
            ShuffleVariant::Shelf => Ok(shelf_sign_probability_exact(self.n)),
        }
    }
}

fn check_n(n: usize) {
    assert!(n >= 1, "deck size must be at least 1");
}

/// `C(n + a - d - 1, n) / a^n`: probability of any `w` with `des(w^{-1}) = d`
/// after one `a`-shuffle.
pub fn gsr_probability_by_descents(n: usize, a: u64, d: usize) -> BigRational {
    check_n(n);
    BigRational::new(
        binomial_i64(n as i64 + a as i64 - d as i64 - 1, n as i64),
        pow_u64(a, n as u64),
    )
}

/// Probability of `w` after one `a`-shuffle from the identity.
pub fn gsr_probability(w: &Permutation, a: u64) -> BigRational {
    gsr_probability_by_descents(w.n(), a, w.inverse().descent_count())
}

/// `1/2 + 1/(2 a^{k ⌊n/2⌋})`.
pub fn sign_probability_exact(n: usize, a: u64, k: u32) -> BigRational {
    check_n(n);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let e = k as u64 * (n as u64 / 2);
    &half + &half / BigRational::from(pow_u64(a, e))
}

/// `C(n + (a-1)/2 - d, n) / a^n` for `des_B(w^{-1}) = d`, `a` odd.
pub fn b_shuffle_probability_by_descents(n: usize, a: u64, d: usize) -> Result<BigRational> {
    check_n(n);
    if a % 2 == 0 {
        return Err(Error::EvenTypeBParameter(a));
    }
    let top = n as i64 + (a as i64 - 1) / 2 - d as i64;
    Ok(BigRational::new(
        binomial_i64(top, n as i64),
        pow_u64(a, n as u64),
    ))
}

/// Probability of `w` after one type B `a`-shuffle from the identity.
pub fn b_shuffle_probability(w: &SignedPermutation, a: u64) -> Result<BigRational> {
    b_shuffle_probability_by_descents(w.n(), a, w.inverse().descent_count())
}

/// `1/2 + 1/(2 a^{rn})`, `a` odd.
pub fn b_sign_probability_exact(n: usize, a: u64, r: u32) -> Result<BigRational> {
    check_n(n);
    if a % 2 == 0 {
        return Err(Error::EvenTypeBParameter(a));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(&half + &half / BigRational::from(pow_u64(a, r as u64 * n as u64)))
}

/// Probability of any `w` with `v` valleys after one pass through a shelf
/// shuffler with `m` shelves:
/// `4^{v+1} / (2 (2m)^n) Σ_{a=0}^{m-1} C(n+m-a-1, n) C(n-1-2v, a-v)`.
pub fn shelf_probability_by_valleys(n: usize, m: u64, v: usize) -> BigRational {
    check_n(n);
    assert!(m >= 1, "a shelf shuffler needs at least one shelf");
    let (n_i, m_i, v_i) = (n as i64, m as i64, v as i64);
    let sum: BigInt = (0..m_i)
        .map(|a| binomial_i64(n_i + m_i - a - 1, n_i) * binomial_i64(n_i - 1 - 2 * v_i, a - v_i))
        .sum();
    let num = (BigInt::one() << (2 * (v + 1))) * sum;
    let den = BigInt::from(2) * pow_u64(2 * m, n as u64);
    BigRational::new(num, den)
}

/// Probability of `w` after one pass through a shelf shuffler with `m` shelves.
pub fn shelf_probability(w: &Permutation, m: u64) -> BigRational {
    shelf_probability_by_valleys(w.n(), m, w.valley_count())
}

/// 1 for a single card, otherwise exactly 1/2, after any number of passes.
///
/// Swapping the values `n` and `n - 1` preserves valleys and flips the sign,
/// so one pass has zero sign bias, and so does every later pass.
pub fn shelf_sign_probability_exact(n: usize) -> BigRational {
    check_n(n);
    if n == 1 {
        BigRational::one()
    } else {
        BigRational::new(BigInt::one(), BigInt::from(2))
    }
}

/// `Σ_{w ∈ S_n} P_{n,a}(w) sgn(w)` by enumeration.
pub fn sign_eigenfunction_sum(n: usize, a: u64, caps: &EnumerationCaps) -> Result<BigRational> {
    let mut by_class = vec![BigInt::zero(); n];
    for w in enumerate_symmetric(n, caps)? {
        by_class[w.inverse().descent_count()] += w.sign().value();
    }
    Ok(by_class
        .into_iter()
        .enumerate()
        .map(|(d, c)| BigRational::from(c) * gsr_probability_by_descents(n, a, d))
        .sum())
}

/// Checks `Σ_w P_{n,a}(w) sgn(w) = a^{-⌊n/2⌋}`, i.e. `sgn` is a right
/// eigenfunction of the `a`-shuffle chain with that eigenvalue.
pub fn verify_sign_eigenfunction(n: usize, a: u64, caps: &EnumerationCaps) -> Result<Verification> {
    let mut c = Checker::new("eigenfunction");
    let expected = BigRational::new(BigInt::one(), pow_u64(a, n as u64 / 2));
    c.check(
        &format!("Σ P_(n,a)(w) sgn(w), n = {n}, a = {a}"),
        n,
        &expected,
        &sign_eigenfunction_sum(n, a, caps)?,
    );
    Ok(c.finish())
}

/// Total mass and positive-sign mass of one pass, by enumeration of the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMass {
    pub total: BigRational,
    pub positive: BigRational,
}

/// Sums the exact one-pass formula of `spec` over the whole group.
pub fn exact_mass(spec: &ShuffleSpec, caps: &EnumerationCaps) -> Result<ExactMass> {
    spec.validate()?;
    let (n, p) = (spec.n, spec.parameter);
    let mut total = BigRational::zero();
    let mut positive = BigRational::zero();
    let mut add = |prob: BigRational, plus: bool| {
        if plus {
            positive += &prob;
        }
        total += prob;
    };
    match spec.variant {
        ShuffleVariant::Gsr => {
            for w in enumerate_symmetric(n, caps)? {
                add(gsr_probability(&w, p), w.sign().is_plus());
            }
        }
        ShuffleVariant::Shelf => {
            for w in enumerate_symmetric(n, caps)? {
                add(shelf_probability(&w, p), w.sign().is_plus());
            }
        }
        ShuffleVariant::TypeB => {
            for w in enumerate_hyperoctahedral(n, caps)? {
                add(b_shuffle_probability(&w, p)?, w.sign().is_plus());
            }
        }
    }
    Ok(ExactMass { total, positive })
}

/// Checks that the one-pass distribution of `spec` sums to 1 over the group.
pub fn verify_normalization(spec: &ShuffleSpec, caps: &EnumerationCaps) -> Result<Verification> {
    let mut c = Checker::new("normalization");
    let mass = exact_mass(spec, caps)?;
    c.check(
        &format!(
            "Σ P(w) for {} n={} parameter={}",
            spec.variant, spec.n, spec.parameter
        ),
        spec.n,
        &BigRational::one(),
        &mass.total,
    );
    Ok(c.finish())
}

/// Exact probability that `des(w^{-1}) = d` (type A, `k = des + 1` convention is
/// not used here) or `des_B(w^{-1}) = d` (type B) after `spec.iterations` riffles,
/// for `d = 0..=n`.
pub fn exact_descent_histogram(spec: &ShuffleSpec) -> Result<Vec<BigRational>> {
    spec.validate()?;
    let n = spec.n;
    let a_eff = num_traits::pow(BigInt::from(spec.parameter), spec.iterations as usize);
    let a_eff: u64 = a_eff
        .try_into()
        .map_err(|_| Error::Unsupported("effective shuffle parameter exceeds 64 bits".into()))?;
    match spec.variant {
        ShuffleVariant::Gsr => {
            let row = crate::eulerian::eulerian_table(n)?;
            let mut out: Vec<BigRational> = (0..n)
                .map(|d| {
                    BigRational::from(row.count(d + 1)) * gsr_probability_by_descents(n, a_eff, d)
                })
                .collect();
            out.push(BigRational::zero());
            Ok(out)
        }
        ShuffleVariant::TypeB => {
            let row = crate::eulerian::b_eulerian_table(n)?;
            (0..=n)
                .map(|d| {
                    Ok(BigRational::from(row.count(d))
                        * b_shuffle_probability_by_descents(n, a_eff, d)?)
                })
                .collect()
        }
        ShuffleVariant::Shelf => Err(Error::Unsupported(
            "descent histogram is defined for riffle shuffles only".into(),
        )),
    }
}
