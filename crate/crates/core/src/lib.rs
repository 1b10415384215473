//! Sign-refined Eulerian distributions for the symmetric group `S_n` (type A)
//! and the hyperoctahedral group `B_n` (type B).
//!
//! The crate computes the classical and positive/negative Eulerian triangles
//! exactly, checks the generating-function identities they satisfy, certifies
//! real-rootedness of the associated polynomials with Sturm sequences, and
//! reproduces exact and simulated sign probabilities after riffle shuffles.
//!
//! Everything that is a count or a probability is computed with arbitrary
//! precision integers or rationals; floating point appears only in the
//! normality diagnostic and in Monte Carlo summaries.

pub mod combinatorics;
mod error;
pub mod eulerian;
pub mod exact;
pub mod roots;
pub mod series;
pub mod shuffle;
pub mod stats;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Type A is `S_n`, type B is `B_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    A,
    B,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::A => "A",
            Group::B => "B",
        })
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Group::A),
            "B" | "b" => Ok(Group::B),
            _ => Err(Error::InvalidArgument(format!("unknown group {s:?}"))),
        }
    }
}

/// Which elements a table counts: all of them, or only those of sign `+1` / `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    All,
    Positive,
    Negative,
}

impl Variant {
    pub fn opposite(self) -> Self {
        match self {
            Variant::All => Variant::All,
            Variant::Positive => Variant::Negative,
            Variant::Negative => Variant::Positive,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::All => "all",
            Variant::Positive => "positive",
            Variant::Negative => "negative",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Variant::All),
            "positive" | "pos" | "+" => Ok(Variant::Positive),
            "negative" | "neg" | "-" => Ok(Variant::Negative),
            _ => Err(Error::InvalidArgument(format!("unknown variant {s:?}"))),
        }
    }
}

/// One of the four signed polynomial families `A_n^+`, `A_n^-`, `B_n^+`, `B_n^-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "A+")]
    APlus,
    #[serde(rename = "A-")]
    AMinus,
    #[serde(rename = "B+")]
    BPlus,
    #[serde(rename = "B-")]
    BMinus,
}

impl Family {
    pub fn group(self) -> Group {
        match self {
            Family::APlus | Family::AMinus => Group::A,
            Family::BPlus | Family::BMinus => Group::B,
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            Family::APlus | Family::BPlus => Variant::Positive,
            Family::AMinus | Family::BMinus => Variant::Negative,
        }
    }

    /// Smallest degree for which the family is defined as a nonzero polynomial.
    pub fn min_n(self) -> usize {
        match self {
            Family::AMinus => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::APlus => "A+",
            Family::AMinus => "A-",
            Family::BPlus => "B+",
            Family::BMinus => "B-",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A+" | "a+" => Ok(Family::APlus),
            "A-" | "a-" | "A−" => Ok(Family::AMinus),
            "B+" | "b+" => Ok(Family::BPlus),
            "B-" | "b-" | "B−" => Ok(Family::BMinus),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        }
    }
}
