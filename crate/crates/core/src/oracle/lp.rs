//! Exact fidelity LP by enumeration of basic feasible solutions.
//!
//! The primal is `min lambda_target` over distributions `lambda` on `2^n`
//! graph basis states with `sum_k (-1)^{k_i} lambda_k = a_i`. Its dual is
//! `max y_0 + sum_i mu_i a_i` subject to
//! `y_0 + sum_i mu_i (-1)^{k_i} <= [k = target]` for every `k`, which is the
//! operator condition `|G_t><G_t| - y_0 1 - sum_i mu_i K_i >= 0` read off in
//! the graph basis.

use crate::error::{Error, Result};
use crate::state::MeasurementRecord;

use super::sign;

/// Largest `n` for which the vertex enumeration is run.
pub const LP_MAX_QUBITS: usize = 4;

const ROWS: usize = LP_MAX_QUBITS + 1;
const FEASIBILITY_TOL: f64 = 1e-11;

/// The marginal-constrained fidelity LP for one record.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalLp {
    n: usize,
    /// `p_i = (1 + a_i) / 2`, the probability of the `+1` outcome of `K_i`.
    pub marginals: Vec<f64>,
    /// Graph basis state whose weight is minimized.
    pub target: usize,
    a: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    /// An optimal vertex of the feasible polytope.
    pub vertex: Vec<f64>,
}

impl MarginalLp {
    pub fn new(a: &MeasurementRecord, target: usize) -> Result<Self> {
        let n = a.len();
        if n > LP_MAX_QUBITS {
            return Err(Error::CapExceeded { n, cap: LP_MAX_QUBITS });
        }
        if target >= 1 << n {
            return Err(Error::InvalidParams(format!(
                "target {target} out of range for n = {n}"
            )));
        }
        Ok(Self {
            n,
            marginals: a.values().iter().map(|x| (1.0 + x) / 2.0).collect(),
            target,
            a: a.values().to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn column(&self, k: usize) -> [f64; ROWS] {
        let mut col = [0.0; ROWS];
        col[0] = 1.0;
        for (i, entry) in col.iter_mut().enumerate().skip(1).take(self.n) {
            *entry = sign(k, i - 1);
        }
        col
    }

    fn rhs(&self) -> [f64; ROWS] {
        let mut b = [0.0; ROWS];
        b[0] = 1.0;
        b[1..=self.n].copy_from_slice(&self.a);
        b
    }

    /// Minimum over every basis of `n + 1` columns whose basic solution is
    /// nonnegative. The constraint matrix has `+-1` entries, so singular
    /// bases have determinant exactly zero and nonsingular ones `|det| >= 1`.
    pub fn solve(&self) -> LpSolution {
        let m = self.n + 1;
        let cols = 1usize << self.n;
        let columns: Vec<[f64; ROWS]> = (0..cols).map(|k| self.column(k)).collect();
        let rhs = self.rhs();

        let mut best: Option<LpSolution> = None;
        for_each_combination(cols, m, |basis| {
            let mut mat = [[0.0; ROWS]; ROWS];
            for (c, &k) in basis.iter().enumerate() {
                for r in 0..m {
                    mat[r][c] = columns[k][r];
                }
            }
            let Some(x) = solve_dense(&mut mat, rhs, m) else {
                return;
            };
            if x[..m].iter().any(|&v| v < -FEASIBILITY_TOL) {
                return;
            }
            let value = basis
                .iter()
                .position(|&k| k == self.target)
                .map_or(0.0, |pos| x[pos].max(0.0));
            if best.as_ref().is_none_or(|b| value < b.value) {
                let mut vertex = vec![0.0; cols];
                for (pos, &k) in basis.iter().enumerate() {
                    vertex[k] = x[pos].max(0.0);
                }
                best = Some(LpSolution { value, vertex });
            }
        });
        // the product distribution is feasible, so some vertex always exists
        best.expect("marginal LP is always feasible")
    }
}

/// Exact least fidelity with `|G_0>` consistent with `a`, for `n <= 4`.
pub fn lp_min_fidelity(a: &MeasurementRecord) -> Result<f64> {
    Ok(MarginalLp::new(a, 0)?.solve().value)
}

/// Gaussian elimination with partial pivoting; `None` for singular systems.
fn solve_dense(mat: &mut [[f64; ROWS]; ROWS], mut b: [f64; ROWS], m: usize) -> Option<[f64; ROWS]> {
    let mut det = 1.0;
    for col in 0..m {
        let pivot = (col..m).max_by(|&r, &s| mat[r][col].abs().total_cmp(&mat[s][col].abs()))?;
        if mat[pivot][col].abs() < 1e-9 {
            return None;
        }
        mat.swap(col, pivot);
        b.swap(col, pivot);
        det *= mat[col][col];
        let (head, tail) = mat.split_at_mut(col + 1);
        let pivot_row = &head[col];
        for (r, row) in tail[..m - col - 1].iter_mut().enumerate() {
            let f = row[col] / pivot_row[col];
            if f != 0.0 {
                for (x, p) in row[col..m].iter_mut().zip(&pivot_row[col..m]) {
                    *x -= f * p;
                }
                b[col + 1 + r] -= f * b[col];
            }
        }
    }
    if det.abs() < 0.5 {
        return None;
    }
    let mut x = [0.0; ROWS];
    for r in (0..m).rev() {
        let tail: f64 = (r + 1..m).map(|c| mat[r][c] * x[c]).sum();
        x[r] = (b[r] - tail) / mat[r][r];
    }
    Some(x)
}

fn for_each_combination(len: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > len {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + len - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Dual point `(y_0, mu)` for the target `|G_0>`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate {
    pub offset: f64,
    pub mu: Vec<f64>,
}

impl DualCertificate {
    /// The dual optimum matching the closed form: `y_0 = 1 - n/2`,
    /// `mu_i = 1/2` when `sum a_i > n - 2`, and the zero certificate otherwise.
    pub fn analytic(a: &MeasurementRecord) -> Self {
        let n = a.len();
        let raw: f64 = a.values().iter().map(|x| x - 1.0).sum::<f64>() + 2.0;
        if raw > 0.0 {
            Self {
                offset: 1.0 - n as f64 / 2.0,
                mu: vec![0.5; n],
            }
        } else {
            Self {
                offset: 0.0,
                mu: vec![0.0; n],
            }
        }
    }

    /// Completes arbitrary multipliers `mu` with the largest feasible offset.
    pub fn completing(mu: Vec<f64>) -> Self {
        let offset = (0..1usize << mu.len())
            .map(|k| indicator(k) - weighted_sign(&mu, k))
            .fold(f64::INFINITY, f64::min);
        Self { offset, mu }
    }

    pub fn value(&self, a: &MeasurementRecord) -> f64 {
        self.offset + self.mu.iter().zip(a.values()).map(|(m, x)| m * x).sum::<f64>()
    }

    /// Largest violation of `y_0 + sum_i mu_i (-1)^{k_i} <= [k = 0]`; feasible
    /// certificates give a value `<= 0`.
    pub fn max_violation(&self) -> f64 {
        (0..1usize << self.mu.len())
            .map(|k| self.offset + weighted_sign(&self.mu, k) - indicator(k))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn indicator(k: usize) -> f64 {
    if k == 0 {
        1.0
    } else {
        0.0
    }
}

fn weighted_sign(mu: &[f64], k: usize) -> f64 {
    mu.iter().enumerate().map(|(i, m)| m * sign(k, i)).sum()
}
