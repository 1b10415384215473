//! Exact moments of the Eulerian-type distributions and a numeric normality
//! diagnostic.
//!
//! A table is read as a probability distribution on its keys, each key weighted
//! by its count over the row total. Type A rows are keyed by `k = des + 1`;
//! both that and `des` itself are reported. Type B rows are keyed by `des_B`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eulerian::{eulerian_polynomial, table, DistributionTable};
use crate::exact::{ratio, ExactValue};
use crate::series::verify::Checker;
use crate::series::{ExactPolynomial, Verification};
use crate::{Family, Group, Variant};

/// Which statistic the moments are taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Convention {
    /// `k = des + 1`, the exponent in `A_n(t)`.
    #[serde(rename = "des+1")]
    DesPlusOne,
    #[serde(rename = "des")]
    Des,
    #[serde(rename = "des_B")]
    DesB,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::DesPlusOne => "des+1",
            Convention::Des => "des",
            Convention::DesB => "des_B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatMoments {
    pub convention: Convention,
    /// `E[X^r]`.
    pub raw_moment: ExactValue,
    /// `E[X (X - 1) ... (X - r + 1)]`.
    pub falling_moment: ExactValue,
    pub mean: ExactValue,
    pub variance: ExactValue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub group: Group,
    pub n: usize,
    pub variant: Variant,
    pub r: usize,
    pub conventions: Vec<StatMoments>,
}

impl MomentReport {
    pub fn get(&self, c: Convention) -> Option<&StatMoments> {
        self.conventions.iter().find(|m| m.convention == c)
    }
}

/// Exact moments of one distribution given as `(value, weight)` pairs.
#[derive(Debug, Clone, PartialEq)]
struct Moments {
    raw: BigRational,
    falling: BigRational,
    mean: BigRational,
    variance: BigRational,
}

fn falling_factorial(x: i64, r: usize) -> BigInt {
    (0..r as i64).map(|i| BigInt::from(x - i)).product()
}

/// `offset` is added to every key before taking moments.
fn table_moments(t: &DistributionTable, r: usize, offset: i64) -> Result<Moments> {
    let total = t.total();
    if total.is_zero() {
        return Err(Error::EmptyTable);
    }
    let e = |f: &dyn Fn(i64) -> BigInt| -> BigRational {
        let s: BigInt = t.entries().map(|(k, c)| c * f(k as i64 + offset)).sum();
        BigRational::new(s, total.clone())
    };
    let mean = e(&|x| BigInt::from(x));
    let second = e(&|x| BigInt::from(x) * x);
    let variance = &second - &mean * &mean;
    let raw = e(&|x| num_traits::pow(BigInt::from(x), r));
    let falling = e(&|x| falling_factorial(x, r));

    // Second method: differentiate the generating polynomial at t = 1.
    let p = shifted_polynomial(t, offset);
    let via_derivative = BigRational::new(p.derivative_at_one(r), total.clone());
    if via_derivative != falling {
        return Err(Error::InternalMismatch {
            what: "falling moment".into(),
            detail: format!(
                "{} n={} {}: counts give {falling}, derivative gives {via_derivative}",
                t.group(),
                t.n(),
                t.variant()
            ),
        });
    }
    debug_assert!(variance >= BigRational::zero());
    Ok(Moments {
        raw,
        falling,
        mean,
        variance,
    })
}

/// `Σ count(k) t^{k + offset}`; `offset >= -k_min`.
fn shifted_polynomial(t: &DistributionTable, offset: i64) -> ExactPolynomial {
    let k0 = t.k_min() as i64 + offset;
    assert!(k0 >= 0, "offset moves keys below zero");
    ExactPolynomial::new(t.counts().to_vec()).shift(k0 as usize)
}

/// Moments of order `r` of the distribution in `t`, in every convention that
/// applies to its group.
pub fn moments(t: &DistributionTable, r: usize) -> Result<MomentReport> {
    if r == 0 {
        return Err(Error::InvalidArgument(
            "moment order must be at least 1".into(),
        ));
    }
    let conventions: &[(Convention, i64)] = match t.group() {
        Group::A => &[(Convention::DesPlusOne, 0), (Convention::Des, -1)],
        Group::B => &[(Convention::DesB, 0)],
    };
    let conventions = conventions
        .iter()
        .map(|&(convention, offset)| {
            let m = table_moments(t, r, offset)?;
            Ok(StatMoments {
                convention,
                raw_moment: (&m.raw).into(),
                falling_moment: (&m.falling).into(),
                mean: (&m.mean).into(),
                variance: (&m.variance).into(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(MomentReport {
        group: t.group(),
        n: t.n(),
        variant: t.variant(),
        r,
        conventions,
    })
}

/// For one group and order `r`: the smallest `n` from which the signed moments
/// must agree with the full ones, and the largest smaller `n` where they do not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentBoundary {
    pub group: Group,
    pub r: usize,
    pub threshold_n: usize,
    pub last_mismatch_n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentMatchReport {
    pub verification: Verification,
    pub boundaries: Vec<MomentBoundary>,
}

/// Smallest `n` with `⌊n/2⌋ > r` (type A) or `n > r` (type B).
fn matching_threshold(group: Group, r: usize) -> usize {
    match group {
        Group::A => 2 * r + 2,
        Group::B => r + 1,
    }
}

fn moments_agree(group: Group, n: usize, r: usize) -> Result<bool> {
    let full = table_moments(&table(group, n, Variant::All)?, r, 0)?;
    for v in [Variant::Positive, Variant::Negative] {
        let t = table(group, n, v)?;
        if t.total().is_zero() {
            return Ok(false);
        }
        let m = table_moments(&t, r, 0)?;
        if m.raw != full.raw || m.falling != full.falling {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks, for `n <= n_max` and `1 <= r <= r_max`:
/// the `r`-th raw and falling moments of both signed tables equal those of the
/// full table above the threshold; the correction term
/// `(1-t)^{⌊n/2⌋} A_{⌈n/2⌉}(t)` has vanishing `r`-th derivative at 1 when
/// `⌊n/2⌋ > r`; means and variances take their closed forms.
pub fn verify_moment_matching(n_max: usize, r_max: usize) -> Result<MomentMatchReport> {
    let mut c = Checker::new("moment-match");
    let mut boundaries = Vec::new();
    for group in [Group::A, Group::B] {
        for r in 1..=r_max {
            let threshold = matching_threshold(group, r);
            let mut last_mismatch_n = None;
            for n in 1..=n_max {
                let agree = moments_agree(group, n, r)?;
                if n >= threshold {
                    c.check(
                        &format!("{group} n={n} r={r} signed moments match"),
                        n,
                        &true,
                        &agree,
                    );
                } else if !agree {
                    last_mismatch_n = Some(n);
                }
            }
            boundaries.push(MomentBoundary {
                group,
                r,
                threshold_n: threshold,
                last_mismatch_n,
            });
        }
    }

    for n in 2..=n_max {
        let correction =
            &ExactPolynomial::one_minus_t_pow(n / 2) * &eulerian_polynomial(n.div_ceil(2))?;
        for r in 0..(n / 2).min(r_max + 1) {
            c.check(
                &format!("r-th derivative at 1 of the type A correction, n={n} r={r}"),
                n,
                &BigInt::zero(),
                &correction.derivative_at_one(r),
            );
        }
    }

    let twelfth = |n: usize| ratio(n as i64 + 1, 12);
    for n in 1..=n_max {
        let full = table_moments(&table(Group::A, n, Variant::All)?, 1, 0)?;
        c.check(
            &format!("A n={n} mean"),
            n,
            &ratio(n as i64 + 1, 2),
            &full.mean,
        );
        for v in [Variant::Positive, Variant::Negative] {
            if n >= 4 {
                let m = table_moments(&table(Group::A, n, v)?, 1, 0)?;
                c.check(
                    &format!("A{v} n={n} mean"),
                    n,
                    &ratio(n as i64 + 1, 2),
                    &m.mean,
                );
                if n >= 6 {
                    c.check(&format!("A{v} n={n} variance"), n, &twelfth(n), &m.variance);
                }
            }
            if n >= 2 {
                let m = table_moments(&table(Group::B, n, v)?, 1, 0)?;
                c.check(&format!("B{v} n={n} mean"), n, &ratio(n as i64, 2), &m.mean);
                if n >= 3 {
                    c.check(&format!("B{v} n={n} variance"), n, &twelfth(n), &m.variance);
                }
            }
        }
    }
    Ok(MomentMatchReport {
        verification: c.finish(),
        boundaries,
    })
}

/// `Φ(x) = erfc(-x / √2) / 2`.
///
/// `libm::erfc` is the fdlibm rational approximation, within about one ulp,
/// so `Φ` is accurate to well under 1e-12 absolute.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalityEntry {
    pub family: Family,
    pub n: usize,
    pub mean: ExactValue,
    pub variance: ExactValue,
    pub kolmogorov_distance: f64,
}

/// `sup_x |F(x) - Φ((x - μ) / σ)|` for the step CDF `F` of `t`.
///
/// Between atoms `F` is constant and `Φ` monotone, so the supremum is reached
/// at an atom, either at `F(x)` or at the left limit `F(x-)`.
pub fn kolmogorov_distance(t: &DistributionTable) -> Result<f64> {
    let m = table_moments(t, 1, 0)?;
    if m.variance.is_zero() {
        return Err(Error::ZeroVariance);
    }
    let mu = m.mean.to_f64().expect("finite mean");
    let sigma = m.variance.to_f64().expect("finite variance").sqrt();
    let total = t.total();
    let mut cum = BigInt::zero();
    let mut sup = 0.0f64;
    for (k, count) in t.entries() {
        if count.is_zero() {
            continue;
        }
        let phi = normal_cdf((k as f64 - mu) / sigma);
        let before = BigRational::new(cum.clone(), total.clone())
            .to_f64()
            .unwrap();
        cum += count;
        let after = BigRational::new(cum.clone(), total.clone())
            .to_f64()
            .unwrap();
        sup = sup.max((before - phi).abs()).max((after - phi).abs());
    }
    Ok(sup)
}

pub fn normality_diagnostic(family: Family, ns: &[usize]) -> Result<Vec<NormalityEntry>> {
    ns.iter()
        .map(|&n| {
            let t = table(family.group(), n, family.variant())?;
            let m = table_moments(&t, 1, 0)?;
            Ok(NormalityEntry {
                family,
                n,
                mean: (&m.mean).into(),
                variance: (&m.variance).into(),
                kolmogorov_distance: kolmogorov_distance(&t)?,
            })
        })
        .collect()
}

/// Header `family,n,mean_num,mean_den,var_num,var_den,kolmogorov_distance`.
pub fn normality_csv(entries: &[NormalityEntry]) -> String {
    let mut out = String::from("family,n,mean_num,mean_den,var_num,var_den,kolmogorov_distance\n");
    for e in entries {
        out.push_str(&format!(
            "{},{},{},{},{},{},{:.12e}\n",
            e.family,
            e.n,
            e.mean.numerator,
            e.mean.denominator,
            e.variance.numerator,
            e.variance.denominator,
            e.kolmogorov_distance
        ));
    }
    out
}

/// Returns true when `xs` is strictly decreasing.
pub fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::EnumerationCaps;
    use crate::eulerian::brute_force_table;
    use proptest::prelude::*;

    fn exact(v: &ExactValue) -> BigRational {
        BigRational::new(v.numerator.parse().unwrap(), v.denominator.parse().unwrap())
    }

    #[test]
    fn small_examples() {
        let r = moments(&table(Group::A, 4, Variant::Positive).unwrap(), 1).unwrap();
        assert_eq!(
            exact(&r.get(Convention::DesPlusOne).unwrap().mean),
            ratio(5, 2)
        );
        assert_eq!(exact(&r.get(Convention::Des).unwrap().mean), ratio(3, 2));
        let r = moments(&table(Group::B, 2, Variant::Positive).unwrap(), 2).unwrap();
        assert_eq!(exact(&r.get(Convention::DesB).unwrap().mean), ratio(1, 1));
        assert!(r.get(Convention::Des).is_none());
        let point = moments(&table(Group::A, 1, Variant::All).unwrap(), 3).unwrap();
        assert_eq!(exact(&point.conventions[0].variance), ratio(0, 1));
        assert_eq!(exact(&point.conventions[0].raw_moment), ratio(1, 1));
    }

    #[test]
    fn empty_table_is_refused() {
        let t = table(Group::A, 1, Variant::Negative).unwrap();
        assert_eq!(moments(&t, 1).unwrap_err(), Error::EmptyTable);
        assert!(moments(&table(Group::A, 3, Variant::All).unwrap(), 0).is_err());
    }

    #[test]
    fn closed_form_variances() {
        for v in [Variant::Positive, Variant::Negative] {
            let r = moments(&table(Group::A, 6, v).unwrap(), 2).unwrap();
            assert_eq!(exact(&r.conventions[0].variance), ratio(7, 12));
            let r = moments(&table(Group::B, 3, v).unwrap(), 2).unwrap();
            assert_eq!(exact(&r.conventions[0].variance), ratio(1, 3));
        }
    }

    #[test]
    fn moments_from_brute_force_rows() {
        // Direct average over permutations of S_5 of (des + 1)^3.
        let caps = EnumerationCaps::default();
        let mut s = BigInt::zero();
        let mut count = 0i64;
        for w in crate::combinatorics::enumerate_symmetric(5, &caps).unwrap() {
            if w.sign().is_plus() {
                s += BigInt::from(w.descent_count() + 1).pow(3);
                count += 1;
            }
        }
        let t = brute_force_table(Group::A, 5, Variant::Positive, None, &caps).unwrap();
        let r = moments(&t, 3).unwrap();
        assert_eq!(
            exact(&r.get(Convention::DesPlusOne).unwrap().raw_moment),
            BigRational::new(s, BigInt::from(count))
        );
    }

    #[test]
    fn moment_matching_and_boundaries() {
        let report = verify_moment_matching(14, 3).unwrap();
        assert!(
            report.verification.passed,
            "{:?}",
            report.verification.mismatch
        );
        // A_3^+ = t + 2t^2 has mean 5/3, not 2.
        let a1 = report
            .boundaries
            .iter()
            .find(|b| b.group == Group::A && b.r == 1)
            .unwrap();
        assert_eq!(a1.threshold_n, 4);
        assert_eq!(a1.last_mismatch_n, Some(3));
    }

    #[test]
    fn normal_cdf_reference_values() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-12);
        assert!((normal_cdf(1.0) - 0.8413447460685429).abs() < 1e-12);
        assert!((normal_cdf(-2.0) - 0.022750131948179195).abs() < 1e-12);
        assert!((normal_cdf(3.5) - 0.9997673709209645).abs() < 1e-12);
    }

    #[test]
    fn kolmogorov_distances_shrink() {
        let d: Vec<f64> = normality_diagnostic(Family::APlus, &[8, 16, 32])
            .unwrap()
            .iter()
            .map(|e| e.kolmogorov_distance)
            .collect();
        assert!(strictly_decreasing(&d), "{d:?}");
        let d: Vec<f64> = normality_diagnostic(Family::BMinus, &[6, 12, 24])
            .unwrap()
            .iter()
            .map(|e| e.kolmogorov_distance)
            .collect();
        assert!(strictly_decreasing(&d), "{d:?}");
        assert_eq!(
            normality_diagnostic(Family::APlus, &[1]).unwrap_err(),
            Error::ZeroVariance
        );
    }

    #[test]
    fn csv_layout() {
        let e = normality_diagnostic(Family::BPlus, &[4]).unwrap();
        let csv = normality_csv(&e);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "family,n,mean_num,mean_den,var_num,var_den,kolmogorov_distance"
        );
        assert!(lines.next().unwrap().starts_with("B+,4,2,1,5,12,"));
    }

    proptest! {
        #[test]
        fn variance_is_nonnegative_and_consistent(n in 1usize..25, fam in 0usize..4, r in 1usize..5) {
            let family = [Family::APlus, Family::AMinus, Family::BPlus, Family::BMinus][fam];
            prop_assume!(n >= family.min_n());
            let t = table(family.group(), n, family.variant()).unwrap();
            let m = table_moments(&t, r, 0).unwrap();
            prop_assert!(m.variance >= BigRational::zero());
            if r == 1 {
                prop_assert_eq!(&m.raw, &m.mean);
                prop_assert_eq!(&m.falling, &m.mean);
            }
        }
    }
}
