//! Exact real-rootedness certificates via square-free decomposition and Sturm
//! sequences, reciprocal-root structure of the signed Eulerian polynomials, and
//! an interlacing probe for pairs of real-rooted polynomials.

mod interlace;
mod sturm;

pub use interlace::{
    interlacing_probe, interlacing_sweep, operator_pair_probe, InterlacingOutcome,
    InterlacingReport, PairProbeEntry, SweepEntry,
};
pub use sturm::{
    cauchy_bound, isolate_real_roots, multiplicity_in, squarefree_part, RootInterval, RootSummary,
    SturmChain,
};

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eulerian::table;
use crate::series::verify::Checker;
use crate::series::{ExactPolynomial, Verification};
use crate::{Family, Group, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AllReal,
    NotAllReal,
    InconclusiveOverflow,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::AllReal => "all_real",
            Verdict::NotAllReal => "not_all_real",
            Verdict::InconclusiveOverflow => "inconclusive_overflow",
        })
    }
}

/// Outcome of certifying one polynomial `p = t^m q` with `q(0) != 0`.
///
/// `degree = zero_root_multiplicity + squarefree_degree + repeated_degree`, where
/// `repeated_degree` is the degree of `gcd(q, q')`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootCertificate {
    pub label: String,
    pub degree: usize,
    pub zero_root_multiplicity: usize,
    pub squarefree_degree: usize,
    pub repeated_degree: usize,
    pub distinct_real_roots: usize,
    pub verdict: Verdict,
    /// Certificate of `gcd(q, q')` when it is nonconstant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repeated_part: Option<Box<RootCertificate>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Largest coefficient size, in bits, allowed anywhere in a Sturm chain.
    pub max_coefficient_bits: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            max_coefficient_bits: 1 << 20,
        }
    }
}

/// Certifies with [`CertifyOptions::default`].
pub fn certify_real_rooted(p: &ExactPolynomial, label: &str) -> Result<RootCertificate> {
    certify_with(p, label, &CertifyOptions::default())
}

pub fn certify_with(
    p: &ExactPolynomial,
    label: &str,
    opts: &CertifyOptions,
) -> Result<RootCertificate> {
    let degree = p
        .degree()
        .ok_or_else(|| Error::InvalidArgument("cannot certify the zero polynomial".into()))?;
    let (m, q) = p.strip_zero_roots();
    let q = q.primitive_part();
    let mut cert = RootCertificate {
        label: label.to_string(),
        degree,
        zero_root_multiplicity: m,
        squarefree_degree: 0,
        repeated_degree: 0,
        distinct_real_roots: 0,
        verdict: Verdict::AllReal,
        repeated_part: None,
    };
    if q.degree() == Some(0) {
        return Ok(cert);
    }
    let g = q.gcd(&q.derivative());
    let sq = q.div_exact(&g)?.primitive_part();
    cert.squarefree_degree = sq.degree().unwrap_or(0);
    cert.repeated_degree = g.degree().unwrap_or(0);
    let chain = match SturmChain::with_cap(&sq, opts.max_coefficient_bits) {
        Ok(c) => c,
        Err(_) => {
            cert.verdict = Verdict::InconclusiveOverflow;
            return Ok(cert);
        }
    };
    cert.distinct_real_roots = chain.count_real_roots();
    if cert.distinct_real_roots != cert.squarefree_degree {
        cert.verdict = Verdict::NotAllReal;
        return Ok(cert);
    }
    if cert.repeated_degree > 0 {
        let sub = certify_with(&g, &format!("{label} gcd(q, q')"), opts)?;
        cert.verdict = sub.verdict;
        cert.repeated_part = Some(Box::new(sub));
    }
    Ok(cert)
}

/// The row polynomial of one signed family.
pub fn family_polynomial(family: Family, n: usize) -> Result<ExactPolynomial> {
    Ok(table(family.group(), n, family.variant())?.to_polynomial())
}

/// Limits on a conjecture sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepBudget {
    /// Largest degree the sweep may attempt.
    pub max_n: usize,
    /// Wall-clock limit; degrees not started before it expires are skipped.
    pub time_limit: Option<Duration>,
    pub certify: CertifyOptions,
}

impl SweepBudget {
    /// 40 for type A, 30 for type B, no time limit.
    pub fn default_for(family: Family) -> Self {
        Self {
            max_n: match family.group() {
                Group::A => 40,
                Group::B => 30,
            },
            time_limit: None,
            certify: CertifyOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub family: Family,
    pub requested_n_max: usize,
    pub certificates: Vec<RootCertificate>,
    /// Largest `n` such that every degree up to it was certified.
    pub last_certified: Option<usize>,
    pub complete: bool,
}

impl SweepReport {
    pub fn all_real(&self) -> bool {
        self.certificates
            .iter()
            .all(|c| c.verdict == Verdict::AllReal)
    }

    /// CSV with header `family,n,verdict,distinct_real_roots,degree`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,n,verdict,distinct_real_roots,degree\n");
        let n0 = self.family.min_n();
        for (i, c) in self.certificates.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                self.family,
                n0 + i,
                c.verdict,
                c.distinct_real_roots,
                c.degree
            );
        }
        out
    }
}

/// Certificates for every `n` from the family's smallest degree to `n_max`,
/// computed in parallel and reported in order of `n`. If the budget runs out the
/// report holds the longest fully certified prefix and `complete` is false.
pub fn certify_conjecture_sweep(
    family: Family,
    n_max: usize,
    budget: &SweepBudget,
) -> Result<SweepReport> {
    let start = Instant::now();
    let n0 = family.min_n();
    let top = n_max.min(budget.max_n);
    let results: Vec<Option<Result<RootCertificate>>> = (n0..=top)
        .into_par_iter()
        .map(|n| {
            if budget.time_limit.is_some_and(|lim| start.elapsed() > lim) {
                return None;
            }
            Some(
                family_polynomial(family, n)
                    .and_then(|p| certify_with(&p, &format!("{family}, n={n}"), &budget.certify)),
            )
        })
        .collect();
    let mut certificates = Vec::new();
    for r in results {
        match r {
            Some(c) => certificates.push(c?),
            None => break,
        }
    }
    let last_certified = certificates.len().checked_sub(1).map(|i| n0 + i);
    let complete =
        n_max <= budget.max_n && last_certified.is_some_and(|l| l >= n_max) || n_max < n0;
    Ok(SweepReport {
        family,
        requested_n_max: n_max,
        certificates,
        last_certified,
        complete,
    })
}

/// Coefficient-level form of the reciprocal-root structure: after removing
/// zero roots, each signed row is palindromic (type A with `n ≡ 0, 1 mod 4`,
/// type B with `n` even), or else the positive row reversed is the negative row.
pub fn reciprocal_structure_check(group: Group, n: usize) -> Result<Verification> {
    let mut c = Checker::new("reciprocal-structure");
    let plus = table(group, n, Variant::Positive)?.to_polynomial();
    let minus = table(group, n, Variant::Negative)?.to_polynomial();
    let sp = plus.stripped_coeffs();
    let sm = minus.stripped_coeffs();
    let rev =
        |v: &[num_bigint::BigInt]| -> Vec<num_bigint::BigInt> { v.iter().rev().cloned().collect() };
    let self_reciprocal = match group {
        Group::A => matches!(n % 4, 0 | 1),
        Group::B => n % 2 == 0,
    };
    let mut cmp = |ctx: &str, expected: Vec<num_bigint::BigInt>, actual: &[num_bigint::BigInt]| {
        c.check(ctx, 0, &expected.len(), &actual.len());
        for (i, (e, a)) in expected.iter().zip(actual).enumerate() {
            c.check(ctx, i, e, a);
        }
    };
    if self_reciprocal {
        cmp("stripped positive row is palindromic", rev(&sp), &sp);
        cmp("stripped negative row is palindromic", rev(&sm), &sm);
    } else {
        cmp(
            "stripped positive row reversed equals stripped negative row",
            rev(&sp),
            &sm,
        );
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{HomogeneousBivariate, Operator};

    fn poly(c: &[i64]) -> ExactPolynomial {
        ExactPolynomial::from_i64s(c)
    }

    #[test]
    fn small_certificates() {
        let c = certify_real_rooted(&poly(&[0, 1, 2]), "A3+").unwrap();
        assert_eq!(c.verdict, Verdict::AllReal);
        assert_eq!((c.zero_root_multiplicity, c.distinct_real_roots), (1, 1));

        let c = certify_real_rooted(&poly(&[0, 0, 6, 6]), "A4-").unwrap();
        assert_eq!(c.verdict, Verdict::AllReal);
        assert_eq!(c.zero_root_multiplicity, 2);

        let c = certify_real_rooted(&poly(&[1, 0, 1]), "t^2+1").unwrap();
        assert_eq!(c.verdict, Verdict::NotAllReal);
        assert_eq!(c.distinct_real_roots, 0);

        assert!(certify_real_rooted(&ExactPolynomial::zero(), "0").is_err());
    }

    #[test]
    fn repeated_roots_are_certified_recursively() {
        // (t + 1)^3 (t + 2)
        let p = &poly(&[1, 1]).pow(3) * &poly(&[2, 1]);
        let c = certify_real_rooted(&p, "p").unwrap();
        assert_eq!(c.verdict, Verdict::AllReal);
        assert_eq!((c.squarefree_degree, c.repeated_degree), (2, 2));
        assert_eq!(
            c.degree,
            c.zero_root_multiplicity + c.squarefree_degree + c.repeated_degree
        );
        assert!(c.repeated_part.is_some());
        // (t^2 + 1)^2 has no real roots at all.
        let c = certify_real_rooted(&poly(&[1, 0, 1]).pow(2), "q").unwrap();
        assert_eq!(c.verdict, Verdict::NotAllReal);
    }

    #[test]
    fn overflow_cap_is_inconclusive() {
        let p = &poly(&[1, 3, 1]) * &poly(&[7, 1, 5]);
        let opts = CertifyOptions {
            max_coefficient_bits: 1,
        };
        assert_eq!(
            certify_with(&p, "p", &opts).unwrap().verdict,
            Verdict::InconclusiveOverflow
        );
    }

    #[test]
    fn scaling_does_not_change_verdict() {
        for p in [
            poly(&[0, 1, 14, 30, 14, 1]),
            poly(&[1, 0, 1]),
            poly(&[2, -3, 1]),
        ] {
            let a = certify_real_rooted(&p, "p").unwrap();
            for c in [-7i64, 3, 12] {
                let b = certify_real_rooted(&p.scale(&c.into()), "p").unwrap();
                assert_eq!(a.verdict, b.verdict);
                assert_eq!(a.distinct_real_roots, b.distinct_real_roots);
            }
        }
    }

    #[test]
    fn sweeps() {
        let r =
            certify_conjecture_sweep(Family::APlus, 10, &SweepBudget::default_for(Family::APlus))
                .unwrap();
        assert_eq!(r.certificates.len(), 10);
        assert!(r.all_real() && r.complete);
        assert_eq!(r.last_certified, Some(10));

        let r =
            certify_conjecture_sweep(Family::AMinus, 2, &SweepBudget::default_for(Family::AMinus))
                .unwrap();
        assert_eq!(r.certificates.len(), 1);
        assert_eq!(r.certificates[0].zero_root_multiplicity, 2);
        assert_eq!(
            r.to_csv(),
            "family,n,verdict,distinct_real_roots,degree\nA-,2,all_real,0,2\n"
        );

        let p = family_polynomial(Family::BMinus, 2).unwrap();
        assert_eq!(p, poly(&[0, 4]));
        assert_eq!(
            certify_real_rooted(&p, "B2-").unwrap().verdict,
            Verdict::AllReal
        );
    }

    #[test]
    fn budget_truncates_sweep() {
        let budget = SweepBudget {
            max_n: 5,
            ..SweepBudget::default_for(Family::BPlus)
        };
        let r = certify_conjecture_sweep(Family::BPlus, 8, &budget).unwrap();
        assert!(!r.complete);
        assert_eq!(r.last_certified, Some(5));
    }

    #[test]
    fn signed_rows_have_no_positive_roots() {
        for n in 2..=16 {
            for v in [Variant::Positive, Variant::Negative] {
                let p = table(Group::A, n, v).unwrap().to_polynomial();
                let chain = SturmChain::new(&squarefree_part(&p));
                assert_eq!(
                    chain.count_above(&num_rational::BigRational::from_integer(0.into())),
                    0
                );
            }
        }
    }

    #[test]
    fn t_image_stays_real_rooted() {
        for n in 1..=12 {
            let p = crate::eulerian::eulerian_polynomial(n).unwrap();
            let h = HomogeneousBivariate::from_type_a(n, &p).unwrap();
            let image = h.apply(Operator::T).unwrap().dehomogenize();
            let c = certify_real_rooted(&image, "T image").unwrap();
            assert_eq!(c.verdict, Verdict::AllReal);
        }
    }

    #[test]
    fn reciprocal_structure() {
        for n in 1..=24 {
            let v = reciprocal_structure_check(Group::A, n).unwrap();
            assert!(v.passed, "A n={n}: {:?}", v.mismatch);
            let v = reciprocal_structure_check(Group::B, n).unwrap();
            assert!(v.passed, "B n={n}: {:?}", v.mismatch);
        }
    }
}
