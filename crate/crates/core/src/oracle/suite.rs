//! Seeded batch verification of every closed form against the oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{self, report};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::noise::{chain_state, DephasingParams};
use crate::state::{c_from_lambda, lambda_from_c, GraphDiagonalState, MeasurementRecord};

use super::dense::{density_matrix, spectrum, DENSE_MAX_QUBITS};
use super::entropy::{numeric_max_entropy_with, MaxEntropyOptions, ENTROPY_MAX_QUBITS};
use super::lp::{lp_min_fidelity, DualCertificate, LP_MAX_QUBITS};
use super::subspace::{product_subspace_state, random_subspace_state, subspace_identities};
use super::{random_record, RecordRange};

pub const SUITE_MAX_QUBITS: usize = 12;

/// Deliberate corruption of a closed form, used to check that the suite
/// actually detects drift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Fidelity floor computed as `(sum a_i - n + 1) / 2`.
    FidelityOffset,
    /// `S_max` computed with natural instead of binary logarithms.
    EntropyBase,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub n_max: usize,
    pub lp_records: usize,
    pub entropy_records: usize,
    pub ordering_records: usize,
    pub fault: Option<Fault>,
}

impl SuiteConfig {
    pub fn new(seed: u64, n_max: usize) -> Result<Self> {
        if !(1..=SUITE_MAX_QUBITS).contains(&n_max) {
            return Err(Error::InvalidParams(format!(
                "n_max must be in 1..={SUITE_MAX_QUBITS}, got {n_max}"
            )));
        }
        Ok(Self {
            seed,
            n_max,
            lp_records: 1000,
            entropy_records: 100,
            ordering_records: 10_000,
            fault: None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl PropertyOutcome {
    fn new(name: &'static str, residuals: &[f64], tolerance: f64) -> Self {
        let worst = residuals
            .iter()
            .copied()
            .fold(0.0, |m: f64, r| if r.is_nan() { f64::NAN } else { m.max(r) });
        Self {
            name,
            cases: residuals.len(),
            worst_residual: worst,
            tolerance,
            passed: worst <= tolerance,
        }
    }
}

fn closed_form_fidelity(a: &MeasurementRecord, fault: Option<Fault>) -> f64 {
    match fault {
        Some(Fault::FidelityOffset) => {
            let n = a.len() as f64;
            (0.5 * (a.values().iter().sum::<f64>() - n + 1.0)).max(0.0)
        }
        _ => bounds::min_fidelity(a),
    }
}

fn closed_form_entropy(a: &MeasurementRecord, fault: Option<Fault>) -> f64 {
    match fault {
        Some(Fault::EntropyBase) => bounds::max_entropy(a) * std::f64::consts::LN_2,
        _ => bounds::max_entropy(a),
    }
}

/// Alternates the two sampling ranges so both regimes are covered.
fn sample_records(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<MeasurementRecord> {
    (0..count)
        .map(|j| {
            let range = if j % 2 == 0 {
                RecordRange::Full
            } else {
                RecordRange::NonNegative
            };
            random_record(rng, n, range)
        })
        .collect()
}

fn random_lambda(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut lam: Vec<f64> = (0..1usize << n).map(|_| rng.random_range(0.0..1.0)).collect();
    let total: f64 = lam.iter().sum();
    lam.iter_mut().for_each(|l| *l /= total);
    lam
}

fn stream(seed: u64, property: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(property);
    rng
}

/// `|closed form - LP|` and the two duality checks, for every `n <= 4`.
pub fn lp_agreement(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let mut rng = stream(cfg.seed, 1);
    let mut gap = Vec::new();
    let mut duality = Vec::new();
    for n in 1..=cfg.n_max.min(LP_MAX_QUBITS) {
        let records = sample_records(&mut rng, n, cfg.lp_records);
        let random_mu: Vec<Vec<f64>> = (0..records.len())
            .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let rows: Vec<(f64, f64)> = records
            .par_iter()
            .zip(random_mu)
            .map(|(a, mu)| {
                let lp = lp_min_fidelity(a).expect("n within LP cap");
                let analytic = DualCertificate::analytic(a);
                let completed = DualCertificate::completing(mu);
                let dual_residual = analytic
                    .max_violation()
                    .max(analytic.value(a) - lp)
                    .max(completed.max_violation())
                    .max(completed.value(a) - lp)
                    .max(0.0);
                ((closed_form_fidelity(a, cfg.fault) - lp).abs(), dual_residual)
            })
            .collect();
        for (g, d) in rows {
            gap.push(g);
            duality.push(d);
        }
    }
    vec![
        PropertyOutcome::new("fidelity closed form = LP optimum", &gap, 1e-9),
        PropertyOutcome::new("dual certificates feasible, weak duality", &duality, 1e-9),
    ]
}

pub fn entropy_saturation(cfg: &SuiteConfig) -> PropertyOutcome {
    let mut rng = stream(cfg.seed, 2);
    let mut jobs = Vec::new();
    for n in 2..=cfg.n_max.min(ENTROPY_MAX_QUBITS) {
        let count = if n <= 4 {
            cfg.entropy_records
        } else {
            (cfg.entropy_records / 10).max(1)
        };
        for a in sample_records(&mut rng, n, count) {
            jobs.push((a, rng.random::<u64>()));
        }
    }
    let residuals: Vec<f64> = jobs
        .par_iter()
        .map(|(a, seed)| {
            let opts = MaxEntropyOptions {
                seed: *seed,
                ..MaxEntropyOptions::default()
            };
            match numeric_max_entropy_with(a, &opts) {
                Ok(sol) => (sol.entropy - closed_form_entropy(a, cfg.fault)).abs(),
                Err(_) => f64::INFINITY,
            }
        })
        .collect();
    PropertyOutcome::new("max entropy = numeric maximum", &residuals, 1e-6)
}

pub fn wht_involution(cfg: &SuiteConfig) -> PropertyOutcome {
    let mut rng = stream(cfg.seed, 3);
    let mut residuals = Vec::new();
    for n in 1..=cfg.n_max {
        for _ in 0..20 {
            let lam = random_lambda(&mut rng, n);
            let back = c_from_lambda(&lam, n).and_then(|c| lambda_from_c(&c, n));
            residuals.push(match back {
                Ok(back) => lam.iter().zip(&back).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max),
                Err(_) => f64::INFINITY,
            });
        }
    }
    PropertyOutcome::new("WHT round trip", &residuals, 1e-12)
}

pub fn dense_spectra(cfg: &SuiteConfig) -> PropertyOutcome {
    let mut rng = stream(cfg.seed, 4);
    let mut residuals = Vec::new();
    for n in 1..=cfg.n_max.min(DENSE_MAX_QUBITS - 1) {
        let graphs = [Graph::chain(n), Graph::star(n)];
        for g in graphs.into_iter().map(|g| g.expect("n >= 1")) {
            for _ in 0..10 {
                let s = GraphDiagonalState::from_lambda(n, random_lambda(&mut rng, n)).expect("valid");
                let eig = spectrum(density_matrix(&g, &s.coefficients()).expect("within cap"));
                let mut lam = s.lambda().to_vec();
                lam.sort_by(f64::total_cmp);
                residuals.push(eig.iter().zip(&lam).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
            }
        }
    }
    PropertyOutcome::new("dense Pauli spectrum = eigenvalues", &residuals, 1e-9)
}

pub const POSITIVITY_GRID: [f64; 5] = [0.0, 0.01, 0.1, 1.0, 10.0];

pub fn chain_positivity(cfg: &SuiteConfig) -> PropertyOutcome {
    let mut residuals = Vec::new();
    for n in 1..=cfg.n_max.min(crate::noise::CHAIN_STATE_CAP) {
        for gt in POSITIVITY_GRID {
            let p = DephasingParams::new(gt).expect("grid is nonnegative");
            residuals.push(match chain_state(n, p) {
                Ok(s) => (-s.lambda().iter().copied().fold(f64::INFINITY, f64::min)).max(0.0),
                Err(_) => f64::INFINITY,
            });
        }
    }
    PropertyOutcome::new("dephased chain state is positive", &residuals, 1e-12)
}

/// Largest violation of `0 <= lower <= upper` (and `rel_ent_upper <= |B|`).
pub fn ordering_violation(r: &bounds::BoundsReport) -> f64 {
    let blue = r.blue_count as f64;
    [
        -r.rob_lower,
        r.rob_lower - r.rob_upper,
        -r.rel_ent_lower,
        r.rel_ent_lower - r.rel_ent_upper,
        r.rel_ent_upper - blue,
        r.log_rob_lower - r.log_rob_upper,
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

pub fn bound_ordering(cfg: &SuiteConfig) -> PropertyOutcome {
    let mut rng = stream(cfg.seed, 5);
    let mut residuals = Vec::with_capacity(cfg.ordering_records);
    for j in 0..cfg.ordering_records {
        let n = rng.random_range(1..=16);
        let g = match j % 3 {
            0 => Graph::chain(n),
            1 => Graph::star(n),
            _ => Graph::grid(2, n.div_ceil(2)),
        }
        .expect("n >= 1");
        let col = g.two_color().expect("bipartite family");
        let range = if j % 2 == 0 {
            RecordRange::Full
        } else {
            RecordRange::NonNegative
        };
        let a = random_record(&mut rng, g.n(), range);
        residuals.push(report(&a, &col).map_or(f64::INFINITY, |r| ordering_violation(&r)));
    }
    PropertyOutcome::new("0 <= lower <= upper", &residuals, 0.0)
}

/// Lower bounds never exceed the entanglement of a state reproducing the
/// data, and the Blue product state attains the relative entropy upper bound.
pub fn subspace_checks(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let mut rng = stream(cfg.seed, 6);
    let mut lower = Vec::new();
    let mut attained = Vec::new();
    for n in 2..=cfg.n_max.min(8) {
        let col = Graph::chain(n).and_then(|g| g.two_color()).expect("chain");
        let mask = col.amber_mask() as usize;
        for _ in 0..20 {
            let amber_bits = rng.random_range(0..1usize << n) & mask;
            let s = random_subspace_state(&mut rng, &col, amber_bits).expect("valid");
            lower.push(match subspace_identities(&s, &col) {
                Ok(c) => (c.report.rel_ent_lower - c.rel_entropy)
                    .max(c.report.rob_lower - c.robustness)
                    .max(0.0),
                Err(_) => f64::INFINITY,
            });

            let plus: Vec<f64> = (0..col.blue_count()).map(|_| rng.random_range(0.0..=1.0)).collect();
            let s = product_subspace_state(&col, amber_bits, &plus).expect("valid");
            attained.push(match subspace_identities(&s, &col) {
                Ok(c) => (c.rel_entropy - c.report.rel_ent_upper).abs(),
                Err(_) => f64::INFINITY,
            });
        }
    }
    vec![
        PropertyOutcome::new("subspace entanglement >= lower bounds", &lower, 1e-9),
        PropertyOutcome::new("Blue product state attains E_R upper", &attained, 1e-9),
    ]
}

/// Runs every property; deterministic for a given configuration.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<PropertyOutcome> {
    let mut out = lp_agreement(cfg);
    out.push(entropy_saturation(cfg));
    out.push(wht_involution(cfg));
    out.push(dense_spectra(cfg));
    out.push(chain_positivity(cfg));
    out.push(bound_ordering(cfg));
    out.extend(subspace_checks(cfg));
    out
}
