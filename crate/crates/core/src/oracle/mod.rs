//! Brute-force checks of the closed-form bounds at small `n`.
//!
//! Nothing here is used by [`crate::bounds`]; these routines recompute the
//! same quantities along independent routes (exact LP vertices, numerical
//! entropy maximization, dense Pauli matrices) so the closed forms can be
//! verified against them.

pub mod dense;
pub mod entropy;
pub mod lp;
pub mod subspace;
pub mod suite;

pub use entropy::{numeric_max_entropy, MaxEntropyOptions, MaxEntropySolution};
pub use lp::{lp_min_fidelity, DualCertificate, MarginalLp};
pub use subspace::{subspace_identities, SubspaceCheck};
pub use suite::{run_suite, Fault, PropertyOutcome, SuiteConfig};

use rand::Rng;

use crate::state::MeasurementRecord;

/// Range from which random expectation values are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordRange {
    /// `a_i` uniform in `[-1, 1]`.
    Full,
    /// `a_i` uniform in `[0, 1]`.
    NonNegative,
}

pub fn random_record<R: Rng + ?Sized>(rng: &mut R, n: usize, range: RecordRange) -> MeasurementRecord {
    let lo = match range {
        RecordRange::Full => -1.0,
        RecordRange::NonNegative => 0.0,
    };
    let a = (0..n).map(|_| rng.random_range(lo..=1.0)).collect();
    MeasurementRecord::new(a).expect("sampled inside [-1, 1]")
}

/// Sign `(-1)^{k_i}` of generator `i` on graph basis state `k`.
pub(crate) fn sign(k: usize, i: usize) -> f64 {
    if k >> i & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}
