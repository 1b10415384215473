use std::fmt::Write as _;
use std::time::Duration;

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use eulersign::combinatorics::EnumerationCaps;
use eulersign::eulerian::{brute_force_table, table};
use eulersign::exact::ExactValue;
use eulersign::roots::{
    certify_conjecture_sweep, interlacing_sweep, CertifyOptions, InterlacingOutcome, SweepBudget,
    Verdict,
};
use eulersign::series::verify as v;
use eulersign::series::{Verification, DEFAULT_COEFF_BOUND};
use eulersign::shuffle::{exact_descent_histogram, simulate, ShuffleSpec, ShuffleVariant};
use eulersign::stats::{moments, normality_csv, normality_diagnostic};
use eulersign::{Error, Group};

use crate::args::*;

pub const SCHEMA_VERSION: &str = "1";

/// Process exit status, stable across releases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Failure = 1,
    Usage = 2,
    Budget = 3,
}

pub struct Outcome {
    pub payload: String,
    pub status: Status,
    /// Extra lines for stderr that must not pollute a machine-readable payload.
    pub notes: Vec<String>,
    pub seed: Option<u64>,
}

impl Outcome {
    fn new(payload: String, status: Status) -> Self {
        Self {
            payload,
            status,
            notes: Vec::new(),
            seed: None,
        }
    }
}

pub fn status_for(e: &Error) -> Status {
    match e {
        Error::InternalMismatch { .. } | Error::NonIntegral { .. } => Status::Failure,
        _ => Status::Usage,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("payload serializes");
    s.push('\n');
    s
}

fn n_usize(n: u64) -> Result<usize, Error> {
    usize::try_from(n).map_err(|_| Error::InvalidArgument(format!("n = {n} is too large")))
}

pub fn run(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Table(a) => run_table(a),
        Command::Verify(a) => run_verify(a),
        Command::Roots(a) => run_roots(a),
        Command::Shuffle(a) => run_shuffle(a),
        Command::Moments(a) => run_moments(a),
        Command::Clt(a) => run_clt(a),
    }
}

fn run_table(a: &TableArgs) -> Result<Outcome, Error> {
    let n = n_usize(a.n)?;
    let t = table(a.group, n, a.variant)?;
    let oracle = if a.oracle {
        let caps = EnumerationCaps::default();
        Some(brute_force_table(a.group, n, a.variant, None, &caps)? == t)
    } else {
        None
    };
    let verdict = oracle.map(|ok| {
        if ok {
            "oracle: match"
        } else {
            "oracle: MISMATCH"
        }
    });
    let mut out = match a.format {
        TableFormat::Row => {
            let mut s = t.to_row_string();
            s.push('\n');
            if let Some(line) = verdict {
                s.push_str(line);
                s.push('\n');
            }
            Outcome::new(s, Status::Pass)
        }
        TableFormat::Csv => {
            let mut o = Outcome::new(t.to_csv(), Status::Pass);
            o.notes.extend(verdict.map(String::from));
            o
        }
        TableFormat::Json => {
            let mut value = json!({
                "kind": "table",
                "schema_version": SCHEMA_VERSION,
                "table": t,
            });
            if let Some(ok) = oracle {
                value["oracle_match"] = json!(ok);
            }
            Outcome::new(to_json(&value), Status::Pass)
        }
    };
    if oracle == Some(false) {
        out.status = Status::Failure;
    }
    Ok(out)
}

fn run_verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let n = n_usize(a.n)?;
    let caps = EnumerationCaps::default();
    let k_bound = || a.param.map_or(Ok(DEFAULT_COEFF_BOUND), n_usize);
    let each = |f: &dyn Fn(usize) -> eulersign::Result<Verification>| -> eulersign::Result<Vec<Verification>> {
        (1..=n).map(f).collect()
    };
    let name = serde_json::to_value(a.identity)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default();
    let mut param = a.param;
    let parts = match a.identity {
        Identity::SeriesA => {
            let k = k_bound()?;
            param = Some(k as u64);
            each(&|m| v::verify_eulerian_series(m, k))?
        }
        Identity::SeriesApm => {
            let k = k_bound()?;
            param = Some(k as u64);
            each(&|m| v::verify_sign_descent_series(m, k))?
        }
        Identity::SeriesB => {
            let k = k_bound()?;
            param = Some(k as u64);
            each(&|m| v::verify_b_eulerian_series(m, k))?
        }
        Identity::SeriesBpm => {
            let k = k_bound()?;
            param = Some(k as u64);
            each(&|m| v::verify_type_b_series(m, k))?
        }
        Identity::Necklace => each(&|k| v::verify_necklace_product(k as u64, a.order))?,
        Identity::FnpProduct => each(&|k| v::verify_fnp_product(k as u64, a.order))?,
        Identity::DesarmenienFoata => each(&v::verify_desarmenien_foata)?,
        Identity::BMinusOne => each(&v::verify_b_minus_one)?,
        Identity::ReinerDelta => each(&|m| v::verify_reiner_delta(m, &caps))?,
        Identity::ReinerEta => each(&|m| v::verify_reiner_eta(m, &caps))?,
        Identity::Symmetry => {
            let mut parts = each(&|m| v::verify_symmetry(Group::A, m))?;
            parts.extend(each(&|m| v::verify_symmetry(Group::B, m))?);
            parts
        }
        Identity::Recurrence => each(&v::verify_recurrence)?,
        Identity::MomentMatch => {
            let r = a.param.unwrap_or(5);
            param = Some(r);
            let report = eulersign::stats::verify_moment_matching(n, n_usize(r)?)?;
            let status = if report.verification.passed {
                Status::Pass
            } else {
                Status::Failure
            };
            let value = json!({
                "kind": "verify",
                "schema_version": SCHEMA_VERSION,
                "identity": name,
                "n": n,
                "order": a.order,
                "param": param,
                "verification": report.verification,
                "boundaries": report.boundaries,
            });
            return Ok(Outcome::new(to_json(&value), status));
        }
        Identity::Eigenfunction => {
            let base = a.param.unwrap_or(2);
            if base == 0 {
                return Err(Error::InvalidArgument(
                    "shuffle parameter must be at least 1".into(),
                ));
            }
            param = Some(base);
            each(&|m| eulersign::shuffle::verify_sign_eigenfunction(m, base, &caps))?
        }
    };
    let verification = Verification::combine(&name, parts);
    let status = if verification.passed {
        Status::Pass
    } else {
        Status::Failure
    };
    let value = json!({
        "kind": "verify",
        "schema_version": SCHEMA_VERSION,
        "identity": name,
        "n": n,
        "order": a.order,
        "param": param,
        "verification": verification,
    });
    Ok(Outcome::new(to_json(&value), status))
}

fn run_roots(a: &RootsArgs) -> Result<Outcome, Error> {
    let mut budget = SweepBudget::default_for(a.family);
    budget.max_n = a.budget_n.unwrap_or(budget.max_n.max(a.max_n));
    budget.time_limit = a.time_limit.map(Duration::from_secs_f64);
    budget.certify = CertifyOptions {
        max_coefficient_bits: a.max_bits,
    };
    let report = certify_conjecture_sweep(a.family, a.max_n, &budget)?;
    let interlacing = if a.interlacing {
        Some(interlacing_sweep(a.family.group(), a.max_n)?)
    } else {
        None
    };
    let smallest_not_interlacing = interlacing.as_ref().and_then(|s| {
        s.iter()
            .find(|e| e.outcome == InterlacingOutcome::NotInterlacing)
            .map(|e| e.n)
    });

    let inconclusive = report
        .certificates
        .iter()
        .any(|c| c.verdict == Verdict::InconclusiveOverflow);
    let not_real = report
        .certificates
        .iter()
        .any(|c| c.verdict == Verdict::NotAllReal);
    let status = if not_real {
        Status::Failure
    } else if !report.complete || inconclusive {
        Status::Budget
    } else {
        Status::Pass
    };
    let summary = if not_real {
        "not_all_real"
    } else if inconclusive {
        "inconclusive"
    } else if !report.complete {
        "incomplete"
    } else {
        "all_real"
    };

    let payload = match a.format {
        RootsFormat::Json => to_json(&json!({
            "kind": "roots",
            "schema_version": SCHEMA_VERSION,
            "family": a.family,
            "max_n": a.max_n,
            "summary": summary,
            "report": report,
            "interlacing": interlacing,
            "smallest_not_interlacing": smallest_not_interlacing,
        })),
        RootsFormat::Csv => report.to_csv(),
        RootsFormat::Text => {
            let mut s = String::new();
            let n0 = a.family.min_n();
            for (i, c) in report.certificates.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{} n={} {} degree={} distinct_real_roots={}",
                    a.family,
                    n0 + i,
                    c.verdict,
                    c.degree,
                    c.distinct_real_roots
                );
            }
            let _ = writeln!(
                s,
                "summary: {summary} (certified through n={})",
                report
                    .last_certified
                    .map_or_else(|| "none".to_string(), |n| n.to_string())
            );
            if let Some(entries) = &interlacing {
                for e in entries {
                    let _ = writeln!(
                        s,
                        "interlacing {} n={} {}",
                        a.family.group(),
                        e.n,
                        e.outcome
                    );
                }
                let _ = writeln!(
                    s,
                    "smallest not_interlacing n: {}",
                    smallest_not_interlacing.map_or_else(|| "none".to_string(), |n| n.to_string())
                );
            }
            s
        }
    };
    Ok(Outcome::new(payload, status))
}

fn run_shuffle(a: &ShuffleArgs) -> Result<Outcome, Error> {
    let spec = ShuffleSpec::new(a.variant, n_usize(a.n)?, a.param, a.iters)?;
    let exact = spec.exact_sign_probability()?;
    // Unavailable for shelves, or when a^k does not fit in 64 bits.
    let exact_histogram = match a.variant {
        ShuffleVariant::Shelf => None,
        _ => exact_descent_histogram(&spec).ok(),
    };
    let simulated = if a.exact_only || a.variant == ShuffleVariant::Shelf {
        None
    } else {
        Some(simulate(&spec, a.trials, a.seed)?)
    };
    let exact_f64 = exact.to_f64().unwrap_or(f64::NAN);
    let mut value = json!({
        "kind": "shuffle",
        "schema_version": SCHEMA_VERSION,
        "variant": a.variant,
        "n": spec.n,
        "parameter": spec.parameter,
        "iterations": spec.iterations,
        "exact_probability": ExactValue::from(&exact),
        "trials": Value::Null,
        "seed": Value::Null,
        "rng": Value::Null,
        "positive_fraction": Value::Null,
        "z_score": Value::Null,
        "histogram": Value::Null,
    });
    if let Some(h) = &exact_histogram {
        value["exact_histogram"] = json!(h.iter().map(ExactValue::from).collect::<Vec<_>>());
    }
    if a.variant == ShuffleVariant::Shelf && !a.exact_only {
        value["note"] = json!("the shelf shuffler is exact-only; no simulation was run");
    }
    let mut seed = None;
    if let Some(r) = &simulated {
        seed = Some(r.seed);
        value["trials"] = json!(r.trials);
        value["seed"] = json!(r.seed);
        value["rng"] = json!(r.rng);
        value["positive_fraction"] = json!(r.positive_fraction());
        value["z_score"] = json!(r.z_score(exact_f64));
        value["histogram"] = json!(r.descent_of_inverse_histogram);
    }
    let mut out = Outcome::new(to_json(&value), Status::Pass);
    out.seed = seed;
    Ok(out)
}

fn run_moments(a: &MomentsArgs) -> Result<Outcome, Error> {
    let t = table(a.group, n_usize(a.n)?, a.variant)?;
    let report = moments(&t, n_usize(a.r)?)?;
    Ok(Outcome::new(
        to_json(&json!({
            "kind": "moments",
            "schema_version": SCHEMA_VERSION,
            "report": report,
        })),
        Status::Pass,
    ))
}

fn run_clt(a: &CltArgs) -> Result<Outcome, Error> {
    let entries = normality_diagnostic(a.family, &a.n)?;
    let payload = match a.format {
        CltFormat::Csv => normality_csv(&entries),
        CltFormat::Json => to_json(&json!({
            "kind": "clt",
            "schema_version": SCHEMA_VERSION,
            "family": a.family,
            "entries": entries,
        })),
    };
    Ok(Outcome::new(payload, Status::Pass))
}
