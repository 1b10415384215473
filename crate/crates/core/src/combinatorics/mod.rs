//! Permutations of `[n]`, signed permutations of `[±n]`, their statistics,
//! exhaustive enumeration, and the number-theoretic counts (Möbius function,
//! primitive necklaces) used by the series identities.

mod enumerate;
mod number_theory;
mod permutation;
mod signed;

pub use enumerate::{
    enumerate_hyperoctahedral, enumerate_symmetric, EnumerationCaps, HyperoctahedralIter,
    SymmetricIter,
};
pub use number_theory::{divisors, mobius, necklace_count, reiner_exponent};
pub use permutation::{PermStats, Permutation};
pub use signed::{SignedCycleType, SignedPermutation, SignedStats};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Mul, Neg};

/// A value in `{+1, -1}`: the sign of a permutation or a one-dimensional character value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^k`.
    pub fn from_parity(k: usize) -> Self {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}
