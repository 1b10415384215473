//! The six Eulerian triangles: classical, positive and negative, in types A and B.
//!
//! Every signed row is produced by two independent routes which must agree:
//! the closed-form combination with the `t = -1` specialization, and a
//! coefficient recurrence. A third route, exhaustive enumeration, is exposed as
//! [`brute_force_table`] for use as an oracle.

use std::fmt::Write as _;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{enumerate_hyperoctahedral, enumerate_symmetric, EnumerationCaps, Sign};
use crate::error::{Error, Result};
use crate::exact::factorial;
use crate::series::{ExactPolynomial, HomogeneousBivariate};
use crate::{Group, Variant};

/// Row `n` of one triangle.
///
/// Type A rows are keyed by `k = des + 1` for `k = 1..=n` (the exponent in
/// `A_n(t)`); type B rows by `k = des_B` for `k = 0..=n` (the exponent in `B_n(t)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    group: Group,
    n: usize,
    variant: Variant,
    counts: Vec<BigInt>,
}

#[derive(Serialize)]
struct TableJson {
    group: Group,
    variant: Variant,
    n: usize,
    k_min: usize,
    counts: Vec<String>,
}

impl Serialize for DistributionTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson {
            group: self.group,
            variant: self.variant,
            n: self.n,
            k_min: self.k_min(),
            counts: self.counts.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl DistributionTable {
    /// Builds a table and checks the size and nonnegativity invariants.
    pub fn new(group: Group, n: usize, variant: Variant, counts: Vec<BigInt>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        let expected_len = match group {
            Group::A => n,
            Group::B => n + 1,
        };
        if counts.len() != expected_len {
            return Err(Error::InternalMismatch {
                what: format!("{group} row {n} ({variant})"),
                detail: format!("{} entries, expected {expected_len}", counts.len()),
            });
        }
        let table = Self {
            group,
            n,
            variant,
            counts,
        };
        if let Some(k) = table.counts.iter().position(Signed::is_negative) {
            return Err(Error::InternalMismatch {
                what: format!("{group} row {n} ({variant})"),
                detail: format!("negative count at k = {}", k + table.k_min()),
            });
        }
        let total = table.total();
        let expected = expected_total(group, n, variant);
        if total != expected {
            return Err(Error::InternalMismatch {
                what: format!("{group} row {n} ({variant})"),
                detail: format!("counts sum to {total}, expected {expected}"),
            });
        }
        Ok(table)
    }

    /// Reads the coefficients of a row polynomial in the group's convention.
    pub fn from_polynomial(
        group: Group,
        n: usize,
        variant: Variant,
        p: &ExactPolynomial,
    ) -> Result<Self> {
        let (lo, hi) = match group {
            Group::A => (1, n),
            Group::B => (0, n),
        };
        if p.degree().is_some_and(|d| d > hi) || (lo == 1 && !p.coeff(0).is_zero()) {
            return Err(Error::InternalMismatch {
                what: format!("{group} row {n} ({variant})"),
                detail: format!("polynomial {p} has terms outside t^{lo}..t^{hi}"),
            });
        }
        Self::new(group, n, variant, (lo..=hi).map(|k| p.coeff(k)).collect())
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Smallest key: 1 in type A, 0 in type B.
    pub fn k_min(&self) -> usize {
        match self.group {
            Group::A => 1,
            Group::B => 0,
        }
    }

    pub fn k_max(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    /// Count at key `k`; zero outside the row.
    pub fn count(&self, k: usize) -> BigInt {
        k.checked_sub(self.k_min())
            .and_then(|i| self.counts.get(i))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// `(k, count)` pairs in increasing `k`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        let k0 = self.k_min();
        self.counts
            .iter()
            .enumerate()
            .map(move |(i, c)| (i + k0, c))
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// `Σ_k count(k) t^k`.
    pub fn to_polynomial(&self) -> ExactPolynomial {
        ExactPolynomial::new(self.counts.clone()).shift(self.k_min())
    }

    /// Comma-separated counts, e.g. `0,6,6,0`.
    pub fn to_row_string(&self) -> String {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }

    /// CSV with header `n,k,count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,count\n");
        for (k, c) in self.entries() {
            let _ = writeln!(out, "{},{k},{c}", self.n);
        }
        out
    }
}

/// Size of the set a row counts: `n!`, `n!/2`, `2^n n!` or `2^{n-1} n!`.
pub fn expected_total(group: Group, n: usize, variant: Variant) -> BigInt {
    match (group, variant) {
        (Group::A, Variant::All) => factorial(n),
        (Group::A, _) if n == 1 => {
            if variant == Variant::Positive {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }
        (Group::A, _) => factorial(n) / 2,
        (Group::B, Variant::All) => factorial(n) << n,
        (Group::B, _) => factorial(n) << (n - 1),
    }
}

/// Memoized rows indexed by `n`; slot 0 is unused.
struct RowCache<T> {
    rows: Mutex<Vec<T>>,
}

impl<T: Clone> RowCache<T> {
    const fn new() -> Self {
        Self {
            rows: Mutex::new(Vec::new()),
        }
    }

    /// Extends the cache up to `n` with `next(previous_rows, m)` and returns row `n`.
    fn get(&self, n: usize, next: impl Fn(&[T], usize) -> Result<T>) -> Result<T> {
        let mut rows = self.rows.lock().unwrap_or_else(|e| e.into_inner());
        while rows.len() <= n {
            let m = rows.len();
            let row = next(&rows, m)?;
            rows.push(row);
        }
        Ok(rows[n].clone())
    }
}

fn at(row: &[BigInt], i: isize) -> BigInt {
    if i < 0 {
        return BigInt::zero();
    }
    row.get(i as usize).cloned().unwrap_or_else(BigInt::zero)
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("degree must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Classical rows: `rows[n][k - 1] = ⟨n k⟩`.
fn eulerian_row(n: usize) -> Result<Vec<BigInt>> {
    static CACHE: RowCache<Vec<BigInt>> = RowCache::new();
    CACHE.get(n, |rows, m| {
        Ok(match m {
            0 => Vec::new(),
            1 => vec![BigInt::one()],
            _ => {
                let prev = &rows[m - 1];
                // ⟨m k⟩ = (m + 1 - k)⟨m-1, k-1⟩ + k⟨m-1, k⟩, index i = k - 1.
                (0..m)
                    .map(|i| {
                        let k = i + 1;
                        at(prev, i as isize - 1) * BigInt::from(m + 1 - k)
                            + at(prev, i as isize) * BigInt::from(k)
                    })
                    .collect()
            }
        })
    })
}

/// `A_n(t) = Σ_{k=1}^n ⟨n k⟩ t^k`.
pub fn eulerian_polynomial(n: usize) -> Result<ExactPolynomial> {
    check_degree(n)?;
    Ok(ExactPolynomial::new(eulerian_row(n)?).shift(1))
}

/// Row `n` of the classical Eulerian triangle.
pub fn eulerian_table(n: usize) -> Result<DistributionTable> {
    check_degree(n)?;
    DistributionTable::new(Group::A, n, Variant::All, eulerian_row(n)?)
}

/// `(plus, minus)` rows by the signed coefficient recurrences.
fn pm_row_by_recurrence(n: usize) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    static CACHE: RowCache<(Vec<BigInt>, Vec<BigInt>)> = RowCache::new();
    CACHE.get(n, |rows, m| {
        if m == 0 {
            return Ok((Vec::new(), Vec::new()));
        }
        if m == 1 {
            return Ok((vec![BigInt::one()], vec![BigInt::zero()]));
        }
        let (plus, minus) = &rows[m - 1];
        if m % 2 == 1 {
            // Odd degree: each sign class obeys the classical recurrence.
            let step = |prev: &[BigInt]| -> Vec<BigInt> {
                (0..m)
                    .map(|i| {
                        let k = i + 1;
                        at(prev, i as isize - 1) * BigInt::from(m + 1 - k)
                            + at(prev, i as isize) * BigInt::from(k)
                    })
                    .collect()
            };
            return Ok((step(plus), step(minus)));
        }
        // Even degree m = 2h: the half-integer terms are combined before halving.
        let full = eulerian_row(m - 1)?;
        let two = BigInt::from(2);
        let mut out_plus = Vec::with_capacity(m);
        let mut out_minus = Vec::with_capacity(m);
        for i in 0..m {
            let k = i + 1;
            let lo = i as isize - 1;
            let hi = i as isize;
            let doubled_shared =
                at(&full, lo) * BigInt::from(m - k) + at(&full, hi) * BigInt::from(k - 1);
            let (half, r) = doubled_shared.div_rem(&two);
            if !r.is_zero() {
                return Err(Error::NonIntegral {
                    context: format!("signed Eulerian recurrence, n = {m}"),
                    index: k,
                    value: format!("{doubled_shared}/2"),
                });
            }
            out_plus.push(at(minus, lo) + &half + at(plus, hi));
            out_minus.push(at(plus, lo) + &half + at(minus, hi));
        }
        Ok((out_plus, out_minus))
    })
}

/// `A_n^±(t)` from `2A_n^± = A_n ± (1 - t)^{⌊n/2⌋} A_{⌈n/2⌉}`.
fn pm_polynomial_by_combination(n: usize, plus: bool) -> Result<ExactPolynomial> {
    let full = eulerian_polynomial(n)?;
    let correction =
        &ExactPolynomial::one_minus_t_pow(n / 2) * &eulerian_polynomial(n.div_ceil(2))?;
    let doubled = if plus {
        &full + &correction
    } else {
        &full - &correction
    };
    doubled.div_exact_scalar(&BigInt::from(2), "2A_n^± combination")
}

fn signed_table(
    group: Group,
    n: usize,
    variant: Variant,
    by_formula: ExactPolynomial,
    by_recurrence: Vec<BigInt>,
) -> Result<DistributionTable> {
    let a = DistributionTable::from_polynomial(group, n, variant, &by_formula)?;
    let b = DistributionTable::new(group, n, variant, by_recurrence)?;
    if a != b {
        return Err(Error::InternalMismatch {
            what: format!("{group} row {n} ({variant})"),
            detail: format!(
                "combination gives {}, recurrence gives {}",
                a.to_row_string(),
                b.to_row_string()
            ),
        });
    }
    Ok(a)
}

/// Row `n` of the positive or negative type A triangle, cross-checked between
/// the closed-form combination and the signed recurrence.
pub fn pm_eulerian_table(n: usize, variant: Variant) -> Result<DistributionTable> {
    check_degree(n)?;
    let (plus, minus) = pm_row_by_recurrence(n)?;
    match variant {
        Variant::All => eulerian_table(n),
        Variant::Positive => signed_table(
            Group::A,
            n,
            variant,
            pm_polynomial_by_combination(n, true)?,
            plus,
        ),
        Variant::Negative => signed_table(
            Group::A,
            n,
            variant,
            pm_polynomial_by_combination(n, false)?,
            minus,
        ),
    }
}

/// Type B rows as homogeneous polynomials: `B_1 = s + t`, `B_{n+1} = U B_n`.
fn b_homogeneous(n: usize) -> Result<HomogeneousBivariate> {
    static CACHE: RowCache<HomogeneousBivariate> = RowCache::new();
    CACHE.get(n, |rows, m| match m {
        0 => Ok(HomogeneousBivariate::zero(0)),
        1 => HomogeneousBivariate::from_i64s(1, &[1, 1]),
        _ => rows[m - 1].apply(crate::series::Operator::U),
    })
}

/// `B_n(t) = Σ_{k=0}^n ⟨B_n k⟩ t^k`.
pub fn b_eulerian_polynomial(n: usize) -> Result<ExactPolynomial> {
    check_degree(n)?;
    Ok(b_homogeneous(n)?.dehomogenize())
}

/// Row `n` of the type B Eulerian triangle.
pub fn b_eulerian_table(n: usize) -> Result<DistributionTable> {
    check_degree(n)?;
    DistributionTable::new(
        Group::B,
        n,
        Variant::All,
        b_homogeneous(n)?.coeffs().to_vec(),
    )
}

/// Signed type B rows by `B_{n+1}^± = s B_n^± + t B_n^∓ + D B_n`, from
/// `B_1^+ = s`, `B_1^- = t`.
fn b_pm_by_recurrence(n: usize) -> Result<(HomogeneousBivariate, HomogeneousBivariate)> {
    static CACHE: RowCache<(HomogeneousBivariate, HomogeneousBivariate)> = RowCache::new();
    CACHE.get(n, |rows, m| match m {
        0 => Ok((HomogeneousBivariate::zero(0), HomogeneousBivariate::zero(0))),
        1 => Ok((
            HomogeneousBivariate::from_i64s(1, &[1, 0])?,
            HomogeneousBivariate::from_i64s(1, &[0, 1])?,
        )),
        _ => {
            let (plus, minus) = &rows[m - 1];
            let d = b_homogeneous(m - 1)?.d_image();
            Ok((
                &(&plus.mul_s() + &minus.mul_t()) + &d,
                &(&minus.mul_s() + &plus.mul_t()) + &d,
            ))
        }
    })
}

/// `B_n^±(t)` from `2B_n^± = B_n ± (1 - t)^n`.
fn b_pm_polynomial_by_combination(n: usize, plus: bool) -> Result<ExactPolynomial> {
    let full = b_eulerian_polynomial(n)?;
    let correction = ExactPolynomial::one_minus_t_pow(n);
    let doubled = if plus {
        &full + &correction
    } else {
        &full - &correction
    };
    doubled.div_exact_scalar(&BigInt::from(2), "2B_n^± combination")
}

/// Row `n` of the positive or negative type B triangle, cross-checked between
/// the closed form and the operator recurrence.
pub fn b_pm_eulerian_table(n: usize, variant: Variant) -> Result<DistributionTable> {
    check_degree(n)?;
    let (plus, minus) = b_pm_by_recurrence(n)?;
    match variant {
        Variant::All => b_eulerian_table(n),
        Variant::Positive => signed_table(
            Group::B,
            n,
            variant,
            b_pm_polynomial_by_combination(n, true)?,
            plus.coeffs().to_vec(),
        ),
        Variant::Negative => signed_table(
            Group::B,
            n,
            variant,
            b_pm_polynomial_by_combination(n, false)?,
            minus.coeffs().to_vec(),
        ),
    }
}

/// Any of the six rows by recurrence.
pub fn table(group: Group, n: usize, variant: Variant) -> Result<DistributionTable> {
    match group {
        Group::A => pm_eulerian_table(n, variant),
        Group::B => b_pm_eulerian_table(n, variant),
    }
}

/// Extra restriction applied during enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatFilter {
    /// Type A only: permutations with exactly this many valleys.
    Valleys(usize),
    /// Type B only: elements with `δ(w) = (-1)^{|J|}` equal to this sign.
    Delta(Sign),
    /// Type B only: elements with `η(w) = sgn(u)` equal to this sign.
    Eta(Sign),
}

fn variant_admits(variant: Variant, sign: Sign) -> bool {
    match variant {
        Variant::All => true,
        Variant::Positive => sign == Sign::Plus,
        Variant::Negative => sign == Sign::Minus,
    }
}

/// Counts by exhaustive enumeration. Filtered tables skip the size invariant.
pub fn brute_force_table(
    group: Group,
    n: usize,
    variant: Variant,
    filter: Option<StatFilter>,
    caps: &EnumerationCaps,
) -> Result<DistributionTable> {
    caps.check(group, n)?;
    let counts = match group {
        Group::A => {
            if matches!(filter, Some(StatFilter::Delta(_) | StatFilter::Eta(_))) {
                return Err(Error::InvalidArgument(
                    "δ and η filters apply to type B only".into(),
                ));
            }
            let mut counts = vec![0u64; n];
            for w in enumerate_symmetric(n, caps)? {
                if !variant_admits(variant, w.sign()) {
                    continue;
                }
                if let Some(StatFilter::Valleys(v)) = filter {
                    if w.valley_count() != v {
                        continue;
                    }
                }
                counts[w.descent_count()] += 1;
            }
            counts
        }
        Group::B => {
            if matches!(filter, Some(StatFilter::Valleys(_))) {
                return Err(Error::InvalidArgument(
                    "the valley filter applies to type A only".into(),
                ));
            }
            let mut counts = vec![0u64; n + 1];
            for w in enumerate_hyperoctahedral(n, caps)? {
                if !variant_admits(variant, w.sign()) {
                    continue;
                }
                match filter {
                    Some(StatFilter::Delta(s)) if w.delta() != s => continue,
                    Some(StatFilter::Eta(s)) if w.eta() != s => continue,
                    _ => {}
                }
                counts[w.descent_count()] += 1;
            }
            counts
        }
    };
    let counts = counts.into_iter().map(BigInt::from).collect();
    if filter.is_some() {
        Ok(DistributionTable {
            group,
            n,
            variant,
            counts,
        })
    } else {
        DistributionTable::new(group, n, variant, counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial_i64;

    fn row(t: &DistributionTable) -> Vec<i64> {
        t.counts().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn classical_rows() {
        assert_eq!(row(&eulerian_table(4).unwrap()), [1, 11, 11, 1]);
        assert_eq!(row(&eulerian_table(1).unwrap()), [1]);
        assert_eq!(eulerian_table(7).unwrap().count(4), BigInt::from(2416));
    }

    #[test]
    fn signed_type_a_rows() {
        assert_eq!(
            row(&pm_eulerian_table(6, Variant::Positive).unwrap()),
            [1, 29, 147, 155, 28, 0]
        );
        assert_eq!(
            row(&pm_eulerian_table(4, Variant::Negative).unwrap()),
            [0, 6, 6, 0]
        );
        assert_eq!(
            row(&pm_eulerian_table(2, Variant::Positive).unwrap()),
            [1, 0]
        );
        assert_eq!(row(&pm_eulerian_table(1, Variant::Negative).unwrap()), [0]);
    }

    #[test]
    fn type_b_rows() {
        assert_eq!(row(&b_eulerian_table(3).unwrap()), [1, 23, 23, 1]);
        assert_eq!(row(&b_eulerian_table(1).unwrap()), [1, 1]);
        assert_eq!(b_eulerian_table(6).unwrap().count(3), BigInt::from(23548));
        assert_eq!(
            row(&b_pm_eulerian_table(3, Variant::Positive).unwrap()),
            [1, 10, 13, 0]
        );
        assert_eq!(
            row(&b_pm_eulerian_table(4, Variant::Negative).unwrap()),
            [0, 40, 112, 40, 0]
        );
        assert_eq!(
            row(&b_pm_eulerian_table(2, Variant::Negative).unwrap()),
            [0, 4, 0]
        );
    }

    #[test]
    fn brute_force_examples() {
        let caps = EnumerationCaps::default();
        let t = brute_force_table(Group::A, 5, Variant::Positive, None, &caps).unwrap();
        assert_eq!(row(&t), [1, 14, 30, 14, 1]);
        let t = brute_force_table(Group::B, 2, Variant::All, None, &caps).unwrap();
        assert_eq!(row(&t), [1, 6, 1]);
        let t = brute_force_table(
            Group::A,
            3,
            Variant::All,
            Some(StatFilter::Valleys(0)),
            &caps,
        )
        .unwrap();
        assert_eq!(t.total(), BigInt::from(4));
    }

    #[test]
    fn recurrence_matches_enumeration() {
        let caps = EnumerationCaps::default();
        for n in 1..=7 {
            for v in [Variant::All, Variant::Positive, Variant::Negative] {
                assert_eq!(
                    pm_eulerian_table(n, v).unwrap(),
                    brute_force_table(Group::A, n, v, None, &caps).unwrap()
                );
            }
        }
        for n in 1..=5 {
            for v in [Variant::All, Variant::Positive, Variant::Negative] {
                assert_eq!(
                    b_pm_eulerian_table(n, v).unwrap(),
                    brute_force_table(Group::B, n, v, None, &caps).unwrap()
                );
            }
        }
    }

    #[test]
    fn signed_rows_sum_to_full_row() {
        for n in 1..=30 {
            let p = pm_eulerian_table(n, Variant::Positive)
                .unwrap()
                .to_polynomial();
            let m = pm_eulerian_table(n, Variant::Negative)
                .unwrap()
                .to_polynomial();
            assert_eq!(&p + &m, eulerian_polynomial(n).unwrap());
            let p = b_pm_eulerian_table(n, Variant::Positive)
                .unwrap()
                .to_polynomial();
            let m = b_pm_eulerian_table(n, Variant::Negative)
                .unwrap()
                .to_polynomial();
            assert_eq!(&p + &m, b_eulerian_polynomial(n).unwrap());
        }
    }

    #[test]
    fn worpitzky() {
        for n in 1..=10usize {
            let t = eulerian_table(n).unwrap();
            for a in 1..=6i64 {
                let sum: BigInt = t
                    .entries()
                    .map(|(k, c)| c * binomial_i64(n as i64 + a - k as i64, n as i64))
                    .sum();
                assert_eq!(sum, num_traits::pow(BigInt::from(a), n), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn rejects_degree_zero_and_cap() {
        assert!(eulerian_table(0).is_err());
        assert!(matches!(
            brute_force_table(Group::B, 8, Variant::All, None, &EnumerationCaps::default()),
            Err(Error::EnumerationCap { .. })
        ));
    }

    #[test]
    fn serialization() {
        let t = pm_eulerian_table(4, Variant::Negative).unwrap();
        assert_eq!(t.to_row_string(), "0,6,6,0");
        assert_eq!(t.to_csv(), "n,k,count\n4,1,0\n4,2,6\n4,3,6\n4,4,0\n");
        let j = serde_json::to_value(&t).unwrap();
        assert_eq!(j["group"], "A");
        assert_eq!(j["variant"], "negative");
        assert_eq!(j["counts"][1], "6");
        assert_eq!(j["k_min"], 1);
    }
}
