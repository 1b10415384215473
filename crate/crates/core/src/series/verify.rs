//! Exact verifiers for the generating-function identities, symmetries and
//! recurrences of the Eulerian triangles.
//!
//! Each verifier returns a [`Verification`] carrying the number of exact
//! comparisons made and, on failure, the first mismatching coefficient.

use std::fmt::Display;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{
    series_inverse_power, ExactPolynomial, HomogeneousBivariate, Operator, TruncatedSeries,
};
use crate::combinatorics::{necklace_count, reiner_exponent, EnumerationCaps, Sign};
use crate::error::Result;
use crate::eulerian::{
    b_eulerian_polynomial, brute_force_table, eulerian_polynomial, table, StatFilter,
};
use crate::exact::{pow_u64, ratio};
use crate::{Group, Variant};

/// First disagreement found by a verifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub context: String,
    pub index: usize,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one verifier run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub name: String,
    pub passed: bool,
    pub checks: u64,
    pub mismatch: Option<Mismatch>,
}

impl Verification {
    /// Folds several runs into one; the first recorded mismatch wins.
    pub fn combine(name: &str, parts: impl IntoIterator<Item = Verification>) -> Self {
        let mut c = Checker::new(name);
        for p in parts {
            c.absorb(p);
        }
        c.finish()
    }
}

pub(crate) struct Checker {
    name: String,
    checks: u64,
    mismatch: Option<Mismatch>,
}

impl Checker {
    pub(crate) fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            checks: 0,
            mismatch: None,
        }
    }

    pub(crate) fn check<T: PartialEq + Display>(
        &mut self,
        context: &str,
        index: usize,
        expected: &T,
        actual: &T,
    ) -> bool {
        self.checks += 1;
        let ok = expected == actual;
        if !ok && self.mismatch.is_none() {
            self.mismatch = Some(Mismatch {
                context: context.to_string(),
                index,
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
        ok
    }

    /// Coefficient-wise comparison; `index` in a mismatch is the exponent.
    pub(crate) fn check_poly(
        &mut self,
        context: &str,
        expected: &ExactPolynomial,
        actual: &ExactPolynomial,
    ) -> bool {
        let top = expected.coeffs().len().max(actual.coeffs().len());
        let mut ok = true;
        for k in 0..top {
            ok &= self.check(context, k, &expected.coeff(k), &actual.coeff(k));
        }
        ok
    }

    pub(crate) fn absorb(&mut self, v: Verification) {
        self.checks += v.checks;
        if self.mismatch.is_none() {
            self.mismatch = v.mismatch.map(|mut m| {
                m.context = format!("{}: {}", v.name, m.context);
                m
            });
        }
    }

    pub(crate) fn finish(self) -> Verification {
        Verification {
            name: self.name,
            passed: self.mismatch.is_none(),
            checks: self.checks,
            mismatch: self.mismatch,
        }
    }
}

fn a_pm(n: usize, variant: Variant) -> Result<ExactPolynomial> {
    Ok(table(Group::A, n, variant)?.to_polynomial())
}

fn b_pm(n: usize, variant: Variant) -> Result<ExactPolynomial> {
    Ok(table(Group::B, n, variant)?.to_polynomial())
}

/// `p(t) / (1 - t)^{m}` truncated to `order` terms.
fn divide_by_one_minus_t_pow(
    p: &ExactPolynomial,
    m: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    let one_minus_t = TruncatedSeries::new(vec![ratio(1, 1), ratio(-1, 1)], order);
    let inv = series_inverse_power(&one_minus_t, -(m as i64))?;
    Ok(&TruncatedSeries::from_polynomial(p, order) * &inv)
}

fn int(x: BigInt) -> BigRational {
    BigRational::from(x)
}

/// `A_n(t) / (1 - t)^{n+1} = Σ_{k≥0} k^n t^k`, checked for `k <= k_max`.
pub fn verify_eulerian_series(n: usize, k_max: usize) -> Result<Verification> {
    let mut c = Checker::new("seriesA");
    let s = divide_by_one_minus_t_pow(&eulerian_polynomial(n)?, n + 1, k_max + 1)?;
    for k in 0..=k_max {
        c.check(
            &format!("[t^k] A_{n}(t)/(1-t)^{}", n + 1),
            k,
            &int(pow_u64(k as u64, n as u64)),
            s.coeff(k),
        );
    }
    Ok(c.finish())
}

/// The signed series identity for `A_n^±`:
///
/// * `A_n^+ - A_n^- = (1 - t)^{n+1} Σ_{k≥1} k^{⌈n/2⌉} t^k`, where the right side is
///   expanded well past degree `n + 1` and its tail must vanish;
/// * `[t^k] A_n^±(t) / (1 - t)^{n+1} = (k^n ± k^{⌈n/2⌉}) / 2` for `k <= k_max`.
pub fn verify_sign_descent_series(n: usize, k_max: usize) -> Result<Verification> {
    let mut c = Checker::new("seriesApm");
    let half = n.div_ceil(2) as u64;
    let plus = a_pm(n, Variant::Positive)?;
    let minus = a_pm(n, Variant::Negative)?;
    let diff = &plus - &minus;

    let order = n + 2 + k_max;
    let power_sum = TruncatedSeries::new(
        (0..order)
            .map(|k| {
                int(if k == 0 {
                    BigInt::zero()
                } else {
                    pow_u64(k as u64, half)
                })
            })
            .collect(),
        order,
    );
    let rhs = &TruncatedSeries::from_polynomial(&ExactPolynomial::one_minus_t_pow(n + 1), order)
        * &power_sum;
    for d in 0..order {
        let context = if d <= n {
            "A^+ - A^- against (1-t)^{n+1} Σ k^{⌈n/2⌉} t^k"
        } else {
            "vanishing tail of (1-t)^{n+1} Σ k^{⌈n/2⌉} t^k"
        };
        c.check(context, d, &int(diff.coeff(d)), rhs.coeff(d));
    }

    for (variant, sign) in [(Variant::Positive, 1i64), (Variant::Negative, -1i64)] {
        let p = if sign > 0 { &plus } else { &minus };
        let s = divide_by_one_minus_t_pow(p, n + 1, k_max + 1)?;
        for k in 0..=k_max {
            let kn = pow_u64(k as u64, n as u64);
            let kh = pow_u64(k as u64, half);
            let expected = BigRational::new(kn + BigInt::from(sign) * kh, BigInt::from(2));
            c.check(
                &format!("[t^k] A_{n}^{}(t)/(1-t)^{}", variant_mark(variant), n + 1),
                k,
                &expected,
                s.coeff(k),
            );
        }
    }
    Ok(c.finish())
}

fn variant_mark(v: Variant) -> &'static str {
    match v {
        Variant::All => "",
        Variant::Positive => "+",
        Variant::Negative => "-",
    }
}

/// `A_{2n}^+ - A_{2n}^- = (1 - t)^n A_n` and `A_{2n+1}^+ - A_{2n+1}^- = (1 - t)^n A_{n+1}`.
pub fn verify_desarmenien_foata(n: usize) -> Result<Verification> {
    let mut c = Checker::new("desarmenien-foata");
    let factor = ExactPolynomial::one_minus_t_pow(n);
    for (deg, rhs_deg) in [(2 * n, n), (2 * n + 1, n + 1)] {
        let lhs = &a_pm(deg, Variant::Positive)? - &a_pm(deg, Variant::Negative)?;
        let rhs = &factor * &eulerian_polynomial(rhs_deg)?;
        c.check_poly(
            &format!("A_{deg}^+ - A_{deg}^- = (1-t)^{n} A_{rhs_deg}"),
            &rhs,
            &lhs,
        );
    }
    Ok(c.finish())
}

/// `B_n(t) / (1 - t)^{n+1} = Σ_{k≥0} (2k + 1)^n t^k` for `k <= k_max`.
pub fn verify_b_eulerian_series(n: usize, k_max: usize) -> Result<Verification> {
    let mut c = Checker::new("seriesB");
    let s = divide_by_one_minus_t_pow(&b_eulerian_polynomial(n)?, n + 1, k_max + 1)?;
    for k in 0..=k_max {
        c.check(
            &format!("[t^k] B_{n}(t)/(1-t)^{}", n + 1),
            k,
            &int(pow_u64(2 * k as u64 + 1, n as u64)),
            s.coeff(k),
        );
    }
    Ok(c.finish())
}

/// `B_n^+ - B_n^- = (1 - t)^n`.
pub fn verify_b_minus_one(n: usize) -> Result<Verification> {
    let mut c = Checker::new("b-minus-one");
    let lhs = &b_pm(n, Variant::Positive)? - &b_pm(n, Variant::Negative)?;
    c.check_poly(
        &format!("B_{n}^+ - B_{n}^- = (1-t)^{n}"),
        &ExactPolynomial::one_minus_t_pow(n),
        &lhs,
    );
    Ok(c.finish())
}

/// The type B signed series identity: `B_n^+ - B_n^- = (1 - t)^n` and
/// `[t^k] B_n^±(t) / (1 - t)^{n+1} = ((2k + 1)^n ± 1) / 2` for `k <= k_max`.
pub fn verify_type_b_series(n: usize, k_max: usize) -> Result<Verification> {
    let mut c = Checker::new("seriesBpm");
    c.absorb(verify_b_minus_one(n)?);
    for (variant, sign) in [(Variant::Positive, 1i64), (Variant::Negative, -1i64)] {
        let s = divide_by_one_minus_t_pow(&b_pm(n, variant)?, n + 1, k_max + 1)?;
        for k in 0..=k_max {
            let expected = BigRational::new(
                pow_u64(2 * k as u64 + 1, n as u64) + BigInt::from(sign),
                BigInt::from(2),
            );
            c.check(
                &format!("[t^k] B_{n}^{}(t)/(1-t)^{}", variant_mark(variant), n + 1),
                k,
                &expected,
                s.coeff(k),
            );
        }
    }
    Ok(c.finish())
}

/// `∏_{j≥1} (1 - u^j / k^j)^{-f_{j,k}} = 1 / (1 - u)` to order `u^order`.
/// Factors with `j >= order` are `≡ 1` and are omitted.
pub fn verify_necklace_product(k: u64, order: usize) -> Result<Verification> {
    let mut c = Checker::new("necklace");
    let kq = BigRational::from(BigInt::from(k));
    let mut product = TruncatedSeries::one(order);
    for j in 1..order {
        let coeff = -num_traits::pow(kq.recip(), j);
        let base = TruncatedSeries::one_plus_monomial(coeff, j, order);
        let factor = base.pow(&-necklace_count(j as u64, k))?;
        product = &product * &factor;
    }
    let expected = TruncatedSeries::geometric(order);
    for i in 0..order {
        c.check(
            &format!("[u^i] ∏ (1 - u^j/{k}^j)^(-f_(j,{k}))"),
            i,
            expected.coeff(i),
            product.coeff(i),
        );
    }
    Ok(c.finish())
}

/// `∏_{m≥1} ((1 - (-u)^m) / (1 + (-u)^m))^{N*(2k-1, 2m)} = (1 + (2k-1)u) / (1 + u)`
/// to order `u^order`.
pub fn verify_fnp_product(k: u64, order: usize) -> Result<Verification> {
    let mut c = Checker::new("fnp-product");
    let mut product = TruncatedSeries::one(order);
    for m in 1..order {
        let e = reiner_exponent(k, m as u64);
        if e.is_zero() {
            continue;
        }
        // (-u)^m = (-1)^m u^m.
        let sign = if m % 2 == 0 {
            ratio(1, 1)
        } else {
            ratio(-1, 1)
        };
        let num = TruncatedSeries::one_plus_monomial(-sign.clone(), m, order);
        let den = TruncatedSeries::one_plus_monomial(sign, m, order);
        let base = &num * &den.inverse()?;
        product = &product * &base.pow(&e)?;
    }
    let numerator =
        TruncatedSeries::one_plus_monomial(BigRational::from(BigInt::from(2 * k - 1)), 1, order);
    let one_plus_u = TruncatedSeries::one_plus_monomial(BigRational::one(), 1, order);
    let expected = &numerator * &one_plus_u.inverse()?;
    for i in 0..order {
        c.check(
            &format!("[u^i] FNP product, k = {k}"),
            i,
            expected.coeff(i),
            product.coeff(i),
        );
    }
    Ok(c.finish())
}

/// `Σ_w χ(w) t^{des_B(w)}` over `B_n` for a character given by a pair of filters.
fn character_sum(
    n: usize,
    plus: Option<StatFilter>,
    minus: Option<StatFilter>,
    variants: (Variant, Variant),
    caps: &EnumerationCaps,
) -> Result<ExactPolynomial> {
    let p = brute_force_table(Group::B, n, variants.0, plus, caps)?.to_polynomial();
    let m = brute_force_table(Group::B, n, variants.1, minus, caps)?.to_polynomial();
    Ok(&p - &m)
}

/// By enumeration of `B_n`: `Σ sgn_B(w) t^{des_B} = Σ δ(w) t^{des_B} = (1 - t)^n`.
pub fn verify_reiner_delta(n: usize, caps: &EnumerationCaps) -> Result<Verification> {
    let mut c = Checker::new("reiner-delta");
    let target = ExactPolynomial::one_minus_t_pow(n);
    let sgn = character_sum(n, None, None, (Variant::Positive, Variant::Negative), caps)?;
    c.check_poly(&format!("Σ sgn_B t^des_B over B_{n}"), &target, &sgn);
    let delta = character_sum(
        n,
        Some(StatFilter::Delta(Sign::Plus)),
        Some(StatFilter::Delta(Sign::Minus)),
        (Variant::All, Variant::All),
        caps,
    )?;
    c.check_poly(&format!("Σ δ t^des_B over B_{n}"), &target, &delta);
    Ok(c.finish())
}

/// `(1 - t)^n` for `n` even and `(1 + t)(1 - t)^{n-1}` for `n` odd.
pub fn eta_target(n: usize) -> ExactPolynomial {
    if n % 2 == 0 {
        ExactPolynomial::one_minus_t_pow(n)
    } else {
        &ExactPolynomial::from_i64s(&[1, 1]) * &ExactPolynomial::one_minus_t_pow(n - 1)
    }
}

/// By enumeration of `B_n`: `Σ η(w) t^{des_B}` against [`eta_target`].
pub fn verify_reiner_eta(n: usize, caps: &EnumerationCaps) -> Result<Verification> {
    let mut c = Checker::new("reiner-eta");
    let eta = character_sum(
        n,
        Some(StatFilter::Eta(Sign::Plus)),
        Some(StatFilter::Eta(Sign::Minus)),
        (Variant::All, Variant::All),
        caps,
    )?;
    c.check_poly(&format!("Σ η t^des_B over B_{n}"), &eta_target(n), &eta);
    Ok(c.finish())
}

/// The three character specializations for `n <= n_max` and the FNP product for
/// `k <= k_max`.
pub fn verify_reiner_specializations(
    n_max: usize,
    k_max: u64,
    order: usize,
    caps: &EnumerationCaps,
) -> Result<Verification> {
    let mut parts = Vec::new();
    for n in 1..=n_max {
        parts.push(verify_reiner_delta(n, caps)?);
        parts.push(verify_reiner_eta(n, caps)?);
    }
    for k in 1..=k_max {
        parts.push(verify_fnp_product(k, order)?);
    }
    Ok(Verification::combine("reiner-specializations", parts))
}

/// Palindromy of the signed rows (or their exchange under reversal), the
/// `s ↔ t` symmetry of the full homogeneous polynomial, and the
/// homogenization round-trip.
pub fn verify_symmetry(group: Group, n: usize) -> Result<Verification> {
    let mut c = Checker::new("symmetry");
    let plus = table(group, n, Variant::Positive)?;
    let minus = table(group, n, Variant::Negative)?;
    let full = table(group, n, Variant::All)?;
    let rev = |v: &[BigInt]| -> Vec<BigInt> { v.iter().rev().cloned().collect() };
    let self_dual = match group {
        Group::A => matches!(n % 4, 0 | 1),
        Group::B => n % 2 == 0,
    };
    let check_rows = |c: &mut Checker, ctx: &str, expected: Vec<BigInt>, actual: &[BigInt]| {
        for (i, (e, a)) in expected.iter().zip(actual).enumerate() {
            c.check(ctx, i + plus.k_min(), e, a);
        }
    };
    if self_dual {
        check_rows(
            &mut c,
            "positive row is palindromic",
            rev(plus.counts()),
            plus.counts(),
        );
        check_rows(
            &mut c,
            "negative row is palindromic",
            rev(minus.counts()),
            minus.counts(),
        );
    } else {
        check_rows(
            &mut c,
            "positive row reversed equals negative row",
            rev(plus.counts()),
            minus.counts(),
        );
    }
    check_rows(
        &mut c,
        "full row is palindromic",
        rev(full.counts()),
        full.counts(),
    );

    let p = full.to_polynomial();
    let hom = match group {
        Group::A => HomogeneousBivariate::from_type_a(n, &p)?,
        Group::B => HomogeneousBivariate::from_type_b(n, &p)?,
    };
    let swapped = hom.swap_variables();
    for j in 0..=hom.degree() {
        c.check(
            "homogeneous polynomial is symmetric in s, t",
            j,
            hom.coeff(j),
            swapped.coeff(j),
        );
    }
    let back = match group {
        Group::A => hom.to_type_a(),
        Group::B => hom.dehomogenize(),
    };
    c.check_poly("homogenization round-trip", &p, &back);
    Ok(c.finish())
}

fn homogeneous(group: Group, n: usize, variant: Variant) -> Result<HomogeneousBivariate> {
    let p = table(group, n, variant)?.to_polynomial();
    match group {
        Group::A => HomogeneousBivariate::from_type_a(n, &p),
        Group::B => HomogeneousBivariate::from_type_b(n, &p),
    }
}

fn check_hom(
    c: &mut Checker,
    ctx: &str,
    expected: &HomogeneousBivariate,
    actual: &HomogeneousBivariate,
) {
    c.check(ctx, 0, &expected.degree(), &actual.degree());
    for j in 0..=expected.degree().min(actual.degree()) {
        c.check(ctx, j, expected.coeff(j), actual.coeff(j));
    }
}

/// Operator recurrences producing row `n` from row `n - 1` (`n >= 2`):
///
/// * `A_n = T A_{n-1}` and `B_n = U B_{n-1}`;
/// * `A_n^± = T_s A_{n-1}^± + T_t A_{n-1}^∓` for `n` even, `A_n^± = T A_{n-1}^±` for `n` odd;
/// * `B_n^± = s B_{n-1}^± + t B_{n-1}^∓ + D B_{n-1}` with `D = st(∂_s + ∂_t)`.
pub fn verify_recurrence(n: usize) -> Result<Verification> {
    let mut c = Checker::new("recurrence");
    if n < 2 {
        return Ok(c.finish());
    }
    let m = n - 1;
    let a_prev = homogeneous(Group::A, m, Variant::All)?;
    check_hom(
        &mut c,
        &format!("A_{n} = T A_{m}"),
        &homogeneous(Group::A, n, Variant::All)?,
        &a_prev.apply(Operator::T)?,
    );
    let b_prev = homogeneous(Group::B, m, Variant::All)?;
    check_hom(
        &mut c,
        &format!("B_{n} = U B_{m}"),
        &homogeneous(Group::B, n, Variant::All)?,
        &b_prev.apply(Operator::U)?,
    );
    for variant in [Variant::Positive, Variant::Negative] {
        let same = homogeneous(Group::A, m, variant)?;
        let other = homogeneous(Group::A, m, variant.opposite())?;
        let image = if n % 2 == 0 {
            HomogeneousBivariate::apply_ts_tt(&same, &other)?
        } else {
            same.apply(Operator::T)?
        };
        check_hom(
            &mut c,
            &format!("A_{n}^{} from row {m}", variant_mark(variant)),
            &homogeneous(Group::A, n, variant)?,
            &image,
        );

        let same = homogeneous(Group::B, m, variant)?;
        let other = homogeneous(Group::B, m, variant.opposite())?;
        let image = &(&same.mul_s() + &other.mul_t()) + &b_prev.d_image();
        check_hom(
            &mut c,
            &format!("B_{n}^{} from row {m}", variant_mark(variant)),
            &homogeneous(Group::B, n, variant)?,
            &image,
        );
    }
    Ok(c.finish())
}
