//! Numerical entropy maximization under fixed generator marginals.
//!
//! Each start is first made feasible by iterative proportional fitting (IPF)
//! onto the `n` marginal constraints in round-robin. From the uniform start
//! IPF lands directly on the maximizer; random starts land on other feasible
//! points, from which a Newton ascent restricted to the null space of the
//! constraints climbs to the maximum. Agreement between starts is reported.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::state::MeasurementRecord;

use super::sign;

pub const ENTROPY_MAX_QUBITS: usize = 10;

const IPF_TOL: f64 = 1e-10;
const RESIDUAL_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct MaxEntropyOptions {
    pub random_starts: usize,
    pub seed: u64,
    pub max_ipf_sweeps: usize,
    pub max_newton_steps: usize,
}

impl Default for MaxEntropyOptions {
    fn default() -> Self {
        Self {
            random_starts: 5,
            seed: 0x5eed,
            max_ipf_sweeps: 100_000,
            max_newton_steps: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxEntropySolution {
    /// Best entropy found, in bits.
    pub entropy: f64,
    pub distribution: Vec<f64>,
    /// Largest marginal constraint violation of `distribution`.
    pub residual: f64,
    /// Largest minus smallest entropy over all starts.
    pub spread: f64,
    pub starts: usize,
}

/// Maximal entropy of a distribution on `2^n` outcomes with
/// `sum_k (-1)^{k_i} lambda_k = a_i`, using default options.
pub fn numeric_max_entropy(a: &MeasurementRecord) -> Result<MaxEntropySolution> {
    numeric_max_entropy_with(a, &MaxEntropyOptions::default())
}

pub fn numeric_max_entropy_with(a: &MeasurementRecord, opts: &MaxEntropyOptions) -> Result<MaxEntropySolution> {
    let n = a.len();
    if n > ENTROPY_MAX_QUBITS {
        return Err(Error::CapExceeded {
            n,
            cap: ENTROPY_MAX_QUBITS,
        });
    }
    let size = 1usize << n;
    let plus: Vec<f64> = a.values().iter().map(|x| (1.0 + x) / 2.0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut starts = vec![vec![1.0 / size as f64; size]];
    for _ in 0..opts.random_starts {
        let mut v: Vec<f64> = (0..size).map(|_| rng.random_range(0.05..1.0)).collect();
        let total: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= total);
        starts.push(v);
    }

    let mut best: Option<(f64, Vec<f64>, f64)> = None;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for start in starts.iter_mut() {
        ipf(start, &plus, opts.max_ipf_sweeps)?;
        newton_ascent(start, &plus, opts.max_newton_steps);
        let residual = marginal_residual(start, &plus);
        if residual > RESIDUAL_LIMIT {
            return Err(Error::NonConvergence(format!(
                "marginal residual {residual:e} after Newton ascent"
            )));
        }
        let h = entropy_bits(start);
        lo = lo.min(h);
        hi = hi.max(h);
        if best.as_ref().is_none_or(|b| h > b.0) {
            best = Some((h, start.clone(), residual));
        }
    }
    let (entropy, distribution, residual) = best.expect("at least the uniform start");
    Ok(MaxEntropySolution {
        entropy,
        distribution,
        residual,
        spread: hi - lo,
        starts: starts.len(),
    })
}

fn entropy_bits(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Probability that generator `i` reads `+1`.
fn plus_mass(p: &[f64], i: usize) -> f64 {
    p.iter()
        .enumerate()
        .filter(|(k, _)| k >> i & 1 == 0)
        .map(|(_, x)| x)
        .sum()
}

fn marginal_residual(p: &[f64], plus: &[f64]) -> f64 {
    let total: f64 = p.iter().sum();
    plus.iter()
        .enumerate()
        .map(|(i, &target)| (plus_mass(p, i) - target).abs())
        .fold((total - 1.0).abs(), f64::max)
}

fn ipf(p: &mut [f64], plus: &[f64], max_sweeps: usize) -> Result<()> {
    for _ in 0..max_sweeps {
        for (i, &target) in plus.iter().enumerate() {
            let up = plus_mass(p, i);
            let down = p.iter().sum::<f64>() - up;
            let f_up = if up > 0.0 { target / up } else { 0.0 };
            let f_down = if down > 0.0 { (1.0 - target) / down } else { 0.0 };
            for (k, x) in p.iter_mut().enumerate() {
                *x *= if k >> i & 1 == 0 { f_up } else { f_down };
            }
        }
        if marginal_residual(p, plus) < IPF_TOL {
            return Ok(());
        }
    }
    Err(Error::NonConvergence(format!(
        "IPF residual {:e} after {max_sweeps} sweeps",
        marginal_residual(p, plus)
    )))
}

/// Feasible-start Newton method for `max -sum x ln x` subject to `A x = b`,
/// run on the support of `p`. Constraints of generators with a deterministic
/// outcome coincide with normalization on that support and are dropped.
fn newton_ascent(p: &mut [f64], plus: &[f64], max_steps: usize) {
    let support: Vec<usize> = (0..p.len()).filter(|&k| p[k] > 0.0).collect();
    let free: Vec<usize> = (0..plus.len()).filter(|&i| plus[i] > 0.0 && plus[i] < 1.0).collect();
    let rows = free.len() + 1;
    let cols = support.len();
    let a = DMatrix::from_fn(
        rows,
        cols,
        |r, c| if r == 0 { 1.0 } else { sign(support[c], free[r - 1]) },
    );

    let objective = |x: &DVector<f64>| -> f64 { x.iter().map(|&v| -v * v.ln()).sum() };
    let mut x = DVector::from_iterator(cols, support.iter().map(|&k| p[k]));

    for _ in 0..max_steps {
        let grad = x.map(|v| -(v.ln() + 1.0));
        let scaled_at = DMatrix::from_fn(cols, rows, |c, r| a[(r, c)] * x[c]);
        let normal = &a * &scaled_at;
        let rhs = -(&a * x.component_mul(&grad));
        let Some(w) = normal.cholesky().map(|ch| ch.solve(&rhs)) else {
            break;
        };
        let step = x.component_mul(&(&grad + a.transpose() * w));
        let decrement = grad.dot(&step);
        if decrement.is_nan() || decrement <= 1e-16 {
            break;
        }
        let mut t = 1.0;
        while (0..cols).any(|c| x[c] + t * step[c] <= 0.0) {
            t *= 0.5;
        }
        let f0 = objective(&x);
        while t > 1e-12 && objective(&(&x + t * &step)) < f0 + 0.25 * t * decrement {
            t *= 0.5;
        }
        if t <= 1e-12 {
            break;
        }
        x += t * &step;
    }
    for (c, &k) in support.iter().enumerate() {
        p[k] = x[c];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(a: &[f64]) -> MeasurementRecord {
        MeasurementRecord::new(a.to_vec()).unwrap()
    }

    #[test]
    fn uniform_and_pure() {
        let s = numeric_max_entropy(&rec(&[0.0; 3])).unwrap();
        assert!((s.entropy - 3.0).abs() < 1e-9);
        let s = numeric_max_entropy(&rec(&[1.0; 3])).unwrap();
        assert!(s.entropy.abs() < 1e-9);
    }

    #[test]
    fn matches_product_entropy() {
        // 4 * H2(0.95)
        let s = numeric_max_entropy(&rec(&[0.9; 4])).unwrap();
        assert!((s.entropy - 1.145_587_828_463_825).abs() < 1e-6, "{}", s.entropy);
        assert!(s.residual < 1e-8);
        assert!(s.spread < 1e-6, "starts disagree by {}", s.spread);
        assert_eq!(s.starts, 6);
    }

    #[test]
    fn random_starts_alone_reach_the_maximum() {
        // without the uniform start's shortcut the Newton phase must do the work
        let a = rec(&[0.3, -0.6, 0.85, 0.1]);
        let plus: Vec<f64> = a.values().iter().map(|x| (1.0 + x) / 2.0).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut p: Vec<f64> = (0..16).map(|_| rng.random_range(0.05..1.0)).collect();
        ipf(&mut p, &plus, 10_000).unwrap();
        let before = entropy_bits(&p);
        newton_ascent(&mut p, &plus, 200);
        let product: f64 = plus.iter().map(|&q| -q * q.log2() - (1.0 - q) * (1.0 - q).log2()).sum();
        assert!(before < product - 1e-4, "random start should begin below the maximum");
        assert!((entropy_bits(&p) - product).abs() < 1e-9);
        assert!(marginal_residual(&p, &plus) < 1e-10);
    }

    #[test]
    fn deterministic_generators() {
        let s = numeric_max_entropy(&rec(&[1.0, 0.2, -1.0])).unwrap();
        let q: f64 = 0.6;
        let expected = -q * q.log2() - (1.0 - q) * (1.0 - q).log2();
        assert!((s.entropy - expected).abs() < 1e-9);
    }

    #[test]
    fn cap() {
        assert!(matches!(
            numeric_max_entropy(&rec(&[0.0; 11])),
            Err(Error::CapExceeded { .. })
        ));
    }
}
