//! Entanglement of states supported on one Amber subspace.
//!
//! For a graph-diagonal state whose weight sits on basis states sharing one
//! fixed assignment of the Amber bits, `E_R = |B| - S(rho)` and
//! `R = 2^|B| max_k lambda_k - 1`. These are entanglement values of a state
//! that reproduces its own expectations, so they can be compared with the
//! bounds computed from those expectations.

use crate::bounds::{report, BoundsReport};
use crate::error::{Error, Result};
use crate::graph::TwoColoring;
use crate::state::{GraphDiagonalState, NEGATIVITY_TOL};

/// Slack allowed in every comparison.
pub const SANDWICH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceCheck {
    /// Amber bits shared by the whole support.
    pub amber_bits: usize,
    pub rel_entropy: f64,
    pub robustness: f64,
    pub report: BoundsReport,
}

impl SubspaceCheck {
    pub fn rel_entropy_above_lower(&self) -> bool {
        self.report.rel_ent_lower <= self.rel_entropy + SANDWICH_TOL
    }

    pub fn rel_entropy_below_upper(&self) -> bool {
        self.rel_entropy <= self.report.rel_ent_upper + SANDWICH_TOL
    }

    pub fn robustness_above_lower(&self) -> bool {
        self.report.rob_lower <= self.robustness + SANDWICH_TOL
    }

    pub fn robustness_below_upper(&self) -> bool {
        self.robustness <= self.report.rob_upper + SANDWICH_TOL
    }

    /// `lower <= value <= upper` for both measures.
    pub fn sandwiched(&self) -> bool {
        self.rel_entropy_above_lower()
            && self.rel_entropy_below_upper()
            && self.robustness_above_lower()
            && self.robustness_below_upper()
    }
}

pub fn subspace_identities(s: &GraphDiagonalState, col: &TwoColoring) -> Result<SubspaceCheck> {
    if s.n() != col.n() {
        return Err(Error::LengthMismatch {
            expected: col.n(),
            actual: s.n(),
        });
    }
    let amber = col.amber_mask() as usize;
    let mut support = s
        .lambda()
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > NEGATIVITY_TOL)
        .map(|(k, _)| k & amber);
    let amber_bits = support.next().ok_or_else(|| Error::NotAState("empty support".into()))?;
    if support.any(|bits| bits != amber_bits) {
        return Err(Error::NotSubspaceSupported);
    }

    let blue = col.blue_count();
    let max_lambda = s.lambda().iter().copied().fold(0.0, f64::max);
    Ok(SubspaceCheck {
        amber_bits,
        rel_entropy: blue as f64 - s.entropy(),
        robustness: 2f64.powi(blue as i32) * max_lambda - 1.0,
        report: report(&s.expectations(), col)?,
    })
}

/// Random state supported on the Amber subspace labelled by `amber_bits`
/// (a subset of the Amber mask), with i.i.d. uniform weights.
pub fn random_subspace_state<R: rand::Rng + ?Sized>(
    rng: &mut R,
    col: &TwoColoring,
    amber_bits: usize,
) -> Result<GraphDiagonalState> {
    let n = col.n();
    let mask = col.amber_mask() as usize;
    if amber_bits & !mask != 0 {
        return Err(Error::InvalidParams("amber_bits outside the Amber mask".into()));
    }
    let mut lam: Vec<f64> = (0..1usize << n)
        .map(|k| {
            if k & mask == amber_bits {
                rng.random_range(0.0..1.0)
            } else {
                0.0
            }
        })
        .collect();
    let total: f64 = lam.iter().sum();
    lam.iter_mut().for_each(|l| *l /= total);
    GraphDiagonalState::from_lambda(n, lam)
}

/// Amber bits fixed to `amber_bits`, Blue bits independent with
/// `P(b_v = 0) = plus[j]` for the `j`-th Blue vertex.
pub fn product_subspace_state(col: &TwoColoring, amber_bits: usize, plus: &[f64]) -> Result<GraphDiagonalState> {
    if plus.len() != col.blue_count() {
        return Err(Error::LengthMismatch {
            expected: col.blue_count(),
            actual: plus.len(),
        });
    }
    let mask = col.amber_mask() as usize;
    let lam = (0..1usize << col.n())
        .map(|k| {
            if k & mask != amber_bits {
                return 0.0;
            }
            col.blue()
                .iter()
                .zip(plus)
                .map(|(&v, &p)| if k >> v & 1 == 0 { p } else { 1.0 - p })
                .product()
        })
        .collect();
    GraphDiagonalState::from_lambda(col.n(), lam)
}
