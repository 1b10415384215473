use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{Permutation, Sign};
use crate::error::{Error, Result};

/// An element `w = u^J` of the hyperoctahedral group `B_n`: `|w(j)| = u(j)` and
/// `w(j) < 0` exactly when `j ∈ J`. Values at negative arguments follow from
/// `w(-i) = -w(i)` and are never stored; neither is the fixed point `w(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    underlying: Permutation,
    negated: Vec<bool>,
}

/// Counts of positive (`n_i`) and negative (`m_i`) cycles by size `i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SignedCycleType {
    pub positive: BTreeMap<usize, usize>,
    pub negative: BTreeMap<usize, usize>,
}

impl SignedCycleType {
    pub fn positive_cycle_count(&self) -> usize {
        self.positive.values().sum()
    }

    pub fn negative_cycle_count(&self) -> usize {
        self.negative.values().sum()
    }

    /// `Σ_i i·(n_i + m_i)`; always equals the degree.
    pub fn weight(&self) -> usize {
        self.positive
            .iter()
            .chain(self.negative.iter())
            .map(|(size, count)| size * count)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedStats {
    pub des_b: usize,
    pub inv_b: usize,
    pub sgn_b: Sign,
    pub delta: Sign,
    pub eta: Sign,
    pub cycle_type: SignedCycleType,
}

impl SignedPermutation {
    /// Builds `u^J` where `negated[j - 1]` says whether `j ∈ J`.
    pub fn new(underlying: Permutation, negated: Vec<bool>) -> Result<Self> {
        if negated.len() != underlying.n() {
            return Err(Error::InvalidArgument(format!(
                "negation mask has length {} but degree is {}",
                negated.len(),
                underlying.n()
            )));
        }
        Ok(Self {
            underlying,
            negated,
        })
    }

    /// From signed one-line values, e.g. `[-1, 3, 2]` for `1̄32`.
    pub fn from_values(values: &[i64]) -> Result<Self> {
        let word: Vec<usize> = values.iter().map(|v| v.unsigned_abs() as usize).collect();
        let negated = values.iter().map(|&v| v < 0).collect();
        Self::new(Permutation::new(word)?, negated)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            underlying: Permutation::identity(n),
            negated: vec![false; n],
        }
    }

    /// Parses `"-1 3 2"`, `"-1,3,2"` or compact `"-132"` (a minus binds to the next digit).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<i64> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|e| Error::InvalidArgument(format!("bad entry {t:?}: {e}")))
                })
                .collect::<Result<_>>()?
        } else {
            let mut out = Vec::new();
            let mut negative = false;
            for c in s.chars() {
                if c == '-' {
                    negative = true;
                    continue;
                }
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad digit {c:?}")))?
                    as i64;
                out.push(if negative { -d } else { d });
                negative = false;
            }
            out
        };
        Self::from_values(&values)
    }

    pub fn n(&self) -> usize {
        self.underlying.n()
    }

    pub fn underlying(&self) -> &Permutation {
        &self.underlying
    }

    pub fn negated(&self) -> &[bool] {
        &self.negated
    }

    /// `w(i)` for `0 <= i <= n`, with `w(0) = 0`.
    pub fn at(&self, i: usize) -> i64 {
        if i == 0 {
            return 0;
        }
        let v = self.underlying.at(i) as i64;
        if self.negated[i - 1] {
            -v
        } else {
            v
        }
    }

    pub fn values(&self) -> Vec<i64> {
        (1..=self.n()).map(|i| self.at(i)).collect()
    }

    pub fn negation_count(&self) -> usize {
        self.negated.iter().filter(|&&b| b).count()
    }

    /// `w̄` with `w̄(i) = -w(i)`.
    pub fn negate_all(&self) -> Self {
        Self {
            underlying: self.underlying.clone(),
            negated: self.negated.iter().map(|b| !b).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut word = vec![0; n];
        let mut negated = vec![false; n];
        for i in 1..=n {
            let target = self.underlying.at(i);
            word[target - 1] = i;
            negated[target - 1] = self.negated[i - 1];
        }
        Self {
            underlying: Permutation::from_word_unchecked(word),
            negated,
        }
    }

    /// Type B descents: `0 <= i <= n-1` with `w(i) > w(i+1)`, using `w(0) = 0`.
    pub fn descent_count(&self) -> usize {
        (0..self.n())
            .filter(|&i| self.at(i) > self.at(i + 1))
            .count()
    }

    pub fn inversion_count(&self) -> usize {
        let v = self.values();
        let n = v.len();
        let mut count = v.iter().filter(|&&x| x < 0).count();
        for i in 0..n {
            for j in i + 1..n {
                if v[i] > v[j] {
                    count += 1;
                }
                if -v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `sgn_B(u^J) = (-1)^{|J|} sgn(u)`.
    pub fn sign(&self) -> Sign {
        self.delta() * self.eta()
    }

    /// `δ(w) = (-1)^{|J|}`.
    pub fn delta(&self) -> Sign {
        Sign::from_parity(self.negation_count())
    }

    /// `η(w) = sgn(u)`.
    pub fn eta(&self) -> Sign {
        self.underlying.sign()
    }

    /// Signed cycle type: a cycle `j_1 -> ε_1 j_2 -> ... -> ε_i j_1` is positive
    /// when `ε_1 ⋯ ε_i = +1`.
    pub fn cycle_type(&self) -> SignedCycleType {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut ty = SignedCycleType::default();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut negatives = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                if self.negated[j] {
                    negatives += 1;
                }
                j = self.underlying.word()[j] - 1;
                len += 1;
            }
            let slot = if negatives % 2 == 0 {
                &mut ty.positive
            } else {
                &mut ty.negative
            };
            *slot.entry(len).or_insert(0) += 1;
        }
        ty
    }

    pub fn statistics(&self) -> SignedStats {
        let cycle_type = self.cycle_type();
        let sgn_b = Sign::from_parity(self.n() - cycle_type.positive_cycle_count());
        let delta = self.delta();
        let eta = self.eta();
        debug_assert_eq!(sgn_b, delta * eta);
        SignedStats {
            des_b: self.descent_count(),
            inv_b: self.inversion_count(),
            sgn_b,
            delta,
            eta,
            cycle_type,
        }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values().iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}
