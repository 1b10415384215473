use serde::Serialize;

use super::sturm::{isolate_real_roots, multiplicity_in, RootSummary};
use super::{certify_real_rooted, Verdict};
use crate::error::Result;
use crate::eulerian::table;
use crate::series::{ExactPolynomial, HomogeneousBivariate, Operator};
use crate::{Group, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InterlacingOutcome {
    Interlacing,
    NotInterlacing,
    Undefined,
}

impl std::fmt::Display for InterlacingOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InterlacingOutcome::Interlacing => "interlacing",
            InterlacingOutcome::NotInterlacing => "not_interlacing",
            InterlacingOutcome::Undefined => "undefined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterlacingReport {
    pub outcome: InterlacingOutcome,
    /// Why the outcome is `undefined`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub p_roots: Vec<RootSummary>,
    pub q_roots: Vec<RootSummary>,
}

impl InterlacingReport {
    fn undefined(reason: String) -> Self {
        Self {
            outcome: InterlacingOutcome::Undefined,
            reason: Some(reason),
            p_roots: Vec::new(),
            q_roots: Vec::new(),
        }
    }
}

/// `x_1 <= y_1 <= x_2 <= y_2 <= ...` on rank sequences, with `|x| ∈ {|y|, |y| + 1}`.
fn alternates(x: &[usize], y: &[usize]) -> bool {
    if !(x.len() == y.len() || x.len() == y.len() + 1) {
        return false;
    }
    let mut merged = Vec::with_capacity(x.len() + y.len());
    for i in 0..x.len() {
        merged.push(x[i]);
        if i < y.len() {
            merged.push(y[i]);
        }
    }
    merged.windows(2).all(|w| w[0] <= w[1])
}

/// Decides whether the roots of two real-rooted polynomials weakly interlace.
///
/// The distinct real roots of `p q` are isolated exactly and ranked; each
/// polynomial's roots, repeated by multiplicity, are compared by rank, so ties at
/// shared roots are resolved without any floating point.
pub fn interlacing_probe(p: &ExactPolynomial, q: &ExactPolynomial) -> Result<InterlacingReport> {
    if p.is_zero() || q.is_zero() {
        return Ok(InterlacingReport::undefined("zero polynomial".into()));
    }
    for (name, f) in [("p", p), ("q", q)] {
        let c = certify_real_rooted(f, name)?;
        if c.verdict != Verdict::AllReal {
            return Ok(InterlacingReport::undefined(format!(
                "{name} is not certified real-rooted ({})",
                c.verdict
            )));
        }
    }
    let (dp, dq) = (p.degree().unwrap(), q.degree().unwrap());
    if dp.abs_diff(dq) > 1 {
        return Ok(InterlacingReport::undefined(format!(
            "degrees {dp} and {dq} differ by more than one"
        )));
    }
    let roots = isolate_real_roots(&(p * q));
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut p_roots = Vec::new();
    let mut q_roots = Vec::new();
    for (rank, iv) in roots.iter().enumerate() {
        let mp = multiplicity_in(p, iv);
        let mq = multiplicity_in(q, iv);
        xs.extend(std::iter::repeat(rank).take(mp));
        ys.extend(std::iter::repeat(rank).take(mq));
        let approx = iv.midpoint_f64();
        if mp > 0 {
            p_roots.push(RootSummary {
                approx,
                multiplicity: mp,
            });
        }
        if mq > 0 {
            q_roots.push(RootSummary {
                approx,
                multiplicity: mq,
            });
        }
    }
    debug_assert_eq!(xs.len(), dp);
    debug_assert_eq!(ys.len(), dq);
    let outcome = if alternates(&xs, &ys) || alternates(&ys, &xs) {
        InterlacingOutcome::Interlacing
    } else {
        InterlacingOutcome::NotInterlacing
    };
    Ok(InterlacingReport {
        outcome,
        reason: None,
        p_roots,
        q_roots,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepEntry {
    pub n: usize,
    pub outcome: InterlacingOutcome,
}

/// Probes `A_n^+` against `A_n^-` (or `B_n^+` against `B_n^-`) for
/// `2 <= n <= n_max`, comparing the full polynomials including roots at zero.
pub fn interlacing_sweep(group: Group, n_max: usize) -> Result<Vec<SweepEntry>> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        let p = table(group, n, Variant::Positive)?.to_polynomial();
        let q = table(group, n, Variant::Negative)?.to_polynomial();
        out.push(SweepEntry {
            n,
            outcome: interlacing_probe(&p, &q)?.outcome,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairProbeEntry {
    pub m: usize,
    pub variant: Variant,
    pub first_real_rooted: bool,
    pub second_real_rooted: bool,
    pub outcome: InterlacingOutcome,
}

/// For `1 <= m <= m_max`, probes the pair `T_s T A_{2m}^±`, `T_t T A_{2m}^∓` whose
/// sum is `A_{2m+2}^±`. Findings only; nothing is asserted about them.
pub fn operator_pair_probe(m_max: usize) -> Result<Vec<PairProbeEntry>> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        let n = 2 * m;
        for variant in [Variant::Positive, Variant::Negative] {
            let hom = |v: Variant| -> Result<HomogeneousBivariate> {
                HomogeneousBivariate::from_type_a(n, &table(Group::A, n, v)?.to_polynomial())
            };
            let same = hom(variant)?.apply(Operator::T)?;
            let other = hom(variant.opposite())?.apply(Operator::T)?;
            // Doubling keeps the roots and clears the halves.
            let p = same.apply_doubled_image(Operator::Ts).dehomogenize();
            let q = other.apply_doubled_image(Operator::Tt).dehomogenize();
            let real = |f: &ExactPolynomial| -> Result<bool> {
                Ok(!f.is_zero() && certify_real_rooted(f, "pair")?.verdict == Verdict::AllReal)
            };
            out.push(PairProbeEntry {
                m,
                variant,
                first_real_rooted: real(&p)?,
                second_real_rooted: real(&q)?,
                outcome: interlacing_probe(&p, &q)?.outcome,
            });
        }
    }
    Ok(out)
}
