use super::{Permutation, SignedPermutation};
use crate::error::{Error, Result};
use crate::Group;

/// Largest degrees for which exhaustive enumeration is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub symmetric: usize,
    pub hyperoctahedral: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        Self {
            symmetric: 10,
            hyperoctahedral: 7,
        }
    }
}

impl EnumerationCaps {
    pub fn check(&self, group: Group, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        let cap = match group {
            Group::A => self.symmetric,
            Group::B => self.hyperoctahedral,
        };
        if n > cap {
            return Err(Error::EnumerationCap { group, n, cap });
        }
        Ok(())
    }
}

/// All of `S_n` in lexicographic order of one-line words.
#[derive(Debug, Clone)]
pub struct SymmetricIter {
    next: Option<Vec<usize>>,
}

impl Iterator for SymmetricIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation::from_word_unchecked(current))
    }
}

/// Advances `w` to its lexicographic successor; false when `w` was the last word.
fn next_lexicographic(w: &mut [usize]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

pub fn enumerate_symmetric(n: usize, caps: &EnumerationCaps) -> Result<SymmetricIter> {
    caps.check(Group::A, n)?;
    Ok(SymmetricIter {
        next: Some((1..=n).collect()),
    })
}

/// All of `B_n`: underlying permutations in lexicographic order, and for each one
/// the negation sets `J` in binary-counter order (bit `j-1` set iff `j ∈ J`).
#[derive(Debug, Clone)]
pub struct HyperoctahedralIter {
    perms: SymmetricIter,
    current: Option<Permutation>,
    mask: u64,
    n: usize,
}

impl Iterator for HyperoctahedralIter {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        if self.current.is_none() || self.mask == 1u64 << self.n {
            self.current = Some(self.perms.next()?);
            self.mask = 0;
        }
        let u = self.current.clone()?;
        let negated = (0..self.n).map(|j| self.mask >> j & 1 == 1).collect();
        self.mask += 1;
        Some(SignedPermutation::new(u, negated).expect("mask length equals degree"))
    }
}

pub fn enumerate_hyperoctahedral(n: usize, caps: &EnumerationCaps) -> Result<HyperoctahedralIter> {
    caps.check(Group::B, n)?;
    if n >= 64 {
        return Err(Error::EnumerationCap {
            group: Group::B,
            n,
            cap: 63,
        });
    }
    Ok(HyperoctahedralIter {
        perms: enumerate_symmetric(
            n,
            &EnumerationCaps {
                symmetric: n,
                hyperoctahedral: n,
            },
        )?,
        current: None,
        mask: 0,
        n,
    })
}
