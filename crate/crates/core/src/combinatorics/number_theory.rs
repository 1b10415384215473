use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The Möbius function `μ(n)` for `n >= 1`.
pub fn mobius(mut n: u64) -> i32 {
    assert!(n >= 1);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of primitive necklaces of length `j` over `k` letters:
/// `f_{j,k} = (1/j) Σ_{d | j} μ(d) k^{j/d}`.
pub fn necklace_count(j: u64, k: u64) -> BigInt {
    assert!(j >= 1 && k >= 1, "necklace_count needs j >= 1 and k >= 1");
    let kb = BigInt::from(k);
    let total: BigInt = divisors(j)
        .into_iter()
        .map(|d| BigInt::from(mobius(d)) * Pow::pow(&kb, (j / d) as u32))
        .sum();
    let (q, r) = total.div_rem(&BigInt::from(j));
    assert!(r.is_zero(), "necklace sum not divisible by j");
    q
}

/// `N*(2k-1, 2m) = (1/2m) Σ_{d | m, d odd} μ(d) [(2k-1)^{m/d} - 1]`.
pub fn reiner_exponent(k: u64, m: u64) -> BigInt {
    assert!(k >= 1 && m >= 1, "reiner_exponent needs k >= 1 and m >= 1");
    let base = BigInt::from(2 * k - 1);
    let total: BigInt = divisors(m)
        .into_iter()
        .filter(|d| d % 2 == 1)
        .map(|d| BigInt::from(mobius(d)) * (Pow::pow(&base, (m / d) as u32) - BigInt::one()))
        .sum();
    let (q, r) = total.div_rem(&BigInt::from(2 * m));
    assert!(r.is_zero(), "N* sum not divisible by 2m");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts aperiodic words of length j over k letters up to rotation by brute force.
    fn primitive_necklaces_brute(j: usize, k: usize) -> usize {
        let total = k.pow(j as u32);
        let mut count = 0;
        for code in 0..total {
            let mut word = vec![0; j];
            let mut c = code;
            for slot in word.iter_mut() {
                *slot = c % k;
                c /= k;
            }
            let rotations: Vec<Vec<usize>> = (0..j)
                .map(|r| word[r..].iter().chain(word[..r].iter()).copied().collect())
                .collect();
            let aperiodic = rotations[1..].iter().all(|r| *r != word);
            // Count each necklace once via its lexicographically least rotation.
            let canonical = rotations.iter().all(|r| word <= *r);
            if aperiodic && canonical {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), e, "mu({})", i + 1);
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn necklace_examples() {
        assert_eq!(necklace_count(1, 5), BigInt::from(5));
        assert_eq!(necklace_count(2, 2), BigInt::from(1));
        assert_eq!(necklace_count(3, 2), BigInt::from(2));
        for j in 2..8 {
            assert_eq!(necklace_count(j, 1), BigInt::zero());
        }
    }

    #[test]
    fn necklaces_match_enumeration() {
        for j in 1..=7 {
            for k in 1..=4 {
                assert_eq!(
                    necklace_count(j as u64, k as u64),
                    BigInt::from(primitive_necklaces_brute(j, k)),
                    "f_{{{j},{k}}}"
                );
            }
        }
    }

    #[test]
    fn reiner_exponent_examples() {
        for m in 1..10 {
            assert_eq!(reiner_exponent(1, m), BigInt::zero());
        }
        assert_eq!(reiner_exponent(2, 1), BigInt::from(1));
        assert_eq!(reiner_exponent(2, 2), BigInt::from(2));
    }
}
