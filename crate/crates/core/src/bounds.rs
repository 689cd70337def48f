//! Closed-form bounds on the minimal entanglement consistent with stabilizer data.
//!
//! All quantities are in bits. For a record `a` on `n` qubits and a coloring
//! with `|B|` Blue vertices:
//!
//! | quantity            | value                                                  |
//! |---------------------|--------------------------------------------------------|
//! | fidelity floor `F`  | `max(0, (sum_i a_i - n + 2) / 2)`                      |
//! | robustness lower    | `max(0, 2^|B| F - 1)`                                  |
//! | robustness upper    | `max(0, 2^|B| max(0, (sum_{i in B} a_i - |B| + 2)/2) - 1)` |
//! | `S_max`             | `sum_i H2((1 + a_i) / 2)`                              |
//! | rel. entropy lower  | `max(0, |B| - S_max)`                                  |
//! | rel. entropy upper  | `|B| - sum_{i in B} H2((1 + a_i) / 2)`                 |
//!
//! Everything is `O(n)`; no `2^n` structure is ever built here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::TwoColoring;
use crate::state::MeasurementRecord;

const DOMAIN_TOL: f64 = 1e-12;

/// Every bound for one record, plus the ingredients they are built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub fidelity_floor: f64,
    pub rob_lower: f64,
    pub rob_upper: f64,
    /// `log2(1 + rob_lower)`
    pub log_rob_lower: f64,
    /// `log2(1 + rob_upper)`
    pub log_rob_upper: f64,
    pub rel_ent_lower: f64,
    pub rel_ent_upper: f64,
    pub s_max: f64,
    pub blue_count: usize,
}

/// `H2(p)` in bits with `0 log 0 = 0`. Arguments within `1e-12` outside
/// `[0, 1]` are clamped.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(-DOMAIN_TOL..=1.0 + DOMAIN_TOL).contains(&p) {
        return Err(Error::DomainError(format!("binary entropy of {p}")));
    }
    Ok(h2(p.clamp(0.0, 1.0)))
}

fn h2(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Entropy of the outcome distribution of one generator with expectation `a`.
fn outcome_entropy(a: f64) -> f64 {
    h2((1.0 + a) / 2.0)
}

/// `sum (a_i - 1)` over the given generators; never positive.
fn slack<'a>(a: impl Iterator<Item = &'a f64>) -> f64 {
    a.map(|x| x - 1.0).sum()
}

fn fidelity_from_slack(slack: f64) -> f64 {
    (0.5 * (slack + 2.0)).clamp(0.0, 1.0)
}

/// `1 + R = max(1, 2^|B| F)`, returned as `(R, log2(1 + R))`.
fn robustness_from_fidelity(blue_count: usize, fidelity: f64) -> (f64, f64) {
    let log_scaled = if fidelity > 0.0 {
        blue_count as f64 + fidelity.log2()
    } else {
        f64::NEG_INFINITY
    };
    if log_scaled <= 0.0 {
        return (0.0, 0.0);
    }
    let scale = 2f64.powi(blue_count.min(i32::MAX as usize) as i32);
    ((scale * fidelity - 1.0).max(0.0), log_scaled)
}

fn blue_values<'a>(a: &'a MeasurementRecord, col: &'a TwoColoring) -> impl Iterator<Item = &'a f64> {
    col.blue().iter().map(move |&v| &a[v])
}

fn amber_values<'a>(a: &'a MeasurementRecord, col: &'a TwoColoring) -> impl Iterator<Item = &'a f64> {
    col.amber().iter().map(move |&v| &a[v])
}

/// Least fidelity with the target graph state over all states reproducing `a`.
pub fn min_fidelity(a: &MeasurementRecord) -> f64 {
    fidelity_from_slack(slack(a.values().iter()))
}

pub fn robustness_lower(a: &MeasurementRecord, col: &TwoColoring) -> f64 {
    robustness_from_fidelity(col.blue_count(), min_fidelity(a)).0
}

/// Upper bound from the Blue generators alone; clamped at zero.
pub fn robustness_upper(a: &MeasurementRecord, col: &TwoColoring) -> f64 {
    let blue_fidelity = fidelity_from_slack(slack(blue_values(a, col)));
    robustness_from_fidelity(col.blue_count(), blue_fidelity).0
}

/// Maximal entropy of any graph-diagonal state reproducing `a`, attained by
/// the product of the per-generator outcome distributions.
pub fn max_entropy(a: &MeasurementRecord) -> f64 {
    a.values().iter().map(|&x| outcome_entropy(x)).sum()
}

pub fn rel_entropy_lower(a: &MeasurementRecord, col: &TwoColoring) -> f64 {
    (col.blue_count() as f64 - max_entropy(a)).max(0.0)
}

pub fn rel_entropy_upper(a: &MeasurementRecord, col: &TwoColoring) -> f64 {
    let blue = col.blue_count() as f64;
    let h: f64 = blue_values(a, col).map(|&x| outcome_entropy(x)).sum();
    (blue - h).clamp(0.0, blue)
}

/// All bounds at once.
///
/// Blue and Amber contributions are accumulated separately and then
/// combined, so the orderings `lower <= upper` hold exactly in floating point
/// rather than up to round-off.
pub fn report(a: &MeasurementRecord, col: &TwoColoring) -> Result<BoundsReport> {
    if a.len() != col.n() {
        return Err(Error::LengthMismatch {
            expected: col.n(),
            actual: a.len(),
        });
    }
    let blue_count = col.blue_count();
    let blue = blue_count as f64;

    let blue_slack = slack(blue_values(a, col));
    let total_slack = blue_slack + slack(amber_values(a, col));
    let fidelity_floor = fidelity_from_slack(total_slack);
    let (rob_lower, log_rob_lower) = robustness_from_fidelity(blue_count, fidelity_floor);
    let (rob_upper, log_rob_upper) = robustness_from_fidelity(blue_count, fidelity_from_slack(blue_slack));

    let blue_entropy: f64 = blue_values(a, col).map(|&x| outcome_entropy(x)).sum();
    let amber_entropy: f64 = amber_values(a, col).map(|&x| outcome_entropy(x)).sum();
    let s_max = blue_entropy + amber_entropy;
    let rel_ent_upper = (blue - blue_entropy).clamp(0.0, blue);
    let rel_ent_lower = (blue - s_max).max(0.0);

    Ok(BoundsReport {
        fidelity_floor,
        rob_lower,
        rob_upper,
        log_rob_lower,
        log_rob_upper,
        rel_ent_lower,
        rel_ent_upper,
        s_max,
        blue_count,
    })
}
