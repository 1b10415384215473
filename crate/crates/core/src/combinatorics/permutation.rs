use std::fmt;

use serde::{Deserialize, Serialize};

use super::Sign;
use crate::error::{Error, Result};

/// A permutation of `[n] = {1, ..., n}` in one-line notation `w(1) w(2) ... w(n)`.
///
/// Values are stored 1-based; `word()[i - 1]` is `w(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    word: Vec<usize>,
}

/// All six statistics of a permutation, computed together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PermStats {
    pub des: usize,
    pub asc: usize,
    pub inv: usize,
    pub sgn: Sign,
    pub cycles: usize,
    pub valleys: usize,
}

impl Permutation {
    /// Validates that `word` is a bijection of `{1..n}` with `n >= 1`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::InvalidArgument("permutation of degree 0".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "{word:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { word })
    }

    /// Caller guarantees `word` is a bijection of `{1..n}`.
    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Self::new(word.clone()).is_ok());
        Self { word }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutation of degree 0");
        Self {
            word: (1..=n).collect(),
        }
    }

    /// Parses compact one-line notation such as `"34812765"` (single digits only)
    /// or whitespace/comma separated values such as `"10 1 2 3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Result<Vec<usize>> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::InvalidArgument(format!("bad entry {t:?}: {e}")))
                })
                .collect()
        } else {
            s.chars()
                .filter(|&c| c != '|')
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidArgument(format!("bad digit {c:?}")))
                })
                .collect()
        };
        Self::new(word?)
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { word: inv }
    }

    /// The reversal `w(n) w(n-1) ... w(1)`.
    pub fn reversal(&self) -> Self {
        let mut word = self.word.clone();
        word.reverse();
        Self { word }
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "degree mismatch in composition");
        Self {
            word: other.word.iter().map(|&j| self.word[j - 1]).collect(),
        }
    }

    /// Exchanges the values `a` and `b` wherever they occur.
    pub fn swap_values(&self, a: usize, b: usize) -> Self {
        let word = self
            .word
            .iter()
            .map(|&v| {
                if v == a {
                    b
                } else if v == b {
                    a
                } else {
                    v
                }
            })
            .collect();
        Self { word }
    }

    pub fn descent_count(&self) -> usize {
        self.word.windows(2).filter(|p| p[0] > p[1]).count()
    }

    pub fn ascent_count(&self) -> usize {
        self.word.windows(2).filter(|p| p[0] < p[1]).count()
    }

    pub fn inversion_count(&self) -> usize {
        let w = &self.word;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count())
            .sum()
    }

    /// Interior positions `i` with `w(i-1) > w(i) < w(i+1)`.
    pub fn valley_count(&self) -> usize {
        self.word
            .windows(3)
            .filter(|t| t[0] > t[1] && t[1] < t[2])
            .count()
    }

    /// Cycle lengths, in order of each cycle's smallest element.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.word[j] - 1;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_lengths().len()
    }

    /// `(-1)^{n - c(w)}`, from the cycle decomposition.
    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.n() - self.cycle_count())
    }

    pub fn statistics(&self) -> PermStats {
        let n = self.n();
        let des = self.descent_count();
        let inv = self.inversion_count();
        let cycles = self.cycle_count();
        let sgn = Sign::from_parity(n - cycles);
        debug_assert_eq!(sgn, Sign::from_parity(inv));
        PermStats {
            des,
            asc: n - 1 - des,
            inv,
            sgn,
            cycles,
            valleys: self.valley_count(),
        }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(word: Vec<usize>) -> Result<Self> {
        Self::new(word)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() < 10 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn descents_of_worked_example() {
        assert_eq!(p("4|3|126|5").descent_count(), 3);
        assert_eq!(p("431265").descent_count(), 3);
        assert_eq!(p("231").descent_count(), 1);
        assert_eq!(Permutation::identity(7).descent_count(), 0);
    }

    #[test]
    fn identity_statistics() {
        let s = Permutation::identity(6).statistics();
        assert_eq!(
            s,
            PermStats {
                des: 0,
                asc: 5,
                inv: 0,
                sgn: Sign::Plus,
                cycles: 6,
                valleys: 0
            }
        );
    }

    #[test]
    fn sign_of_3412_is_plus() {
        assert_eq!(p("3412").statistics().sgn, Sign::Plus);
    }

    #[test]
    fn valley_swap_example() {
        let w = p("34812765");
        let w2 = p("34712865");
        assert_eq!(w.swap_values(8, 7), w2);
        assert_eq!(w.valley_count(), w2.valley_count());
        assert_eq!(w.sign(), -w2.sign());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![3, 1]).is_err());
    }

    #[test]
    fn inverse_and_compose() {
        let w = p("3142");
        assert_eq!(w.compose(&w.inverse()), Permutation::identity(4));
        assert_eq!(w.inverse(), p("2413"));
    }

    #[test]
    fn parse_multi_digit() {
        let w = p("10 1 2 3 4 5 6 7 8 9");
        assert_eq!(w.n(), 10);
        assert_eq!(w.descent_count(), 1);
        assert_eq!(w.to_string(), "10 1 2 3 4 5 6 7 8 9");
    }
}
