//! Dense density matrices built from Pauli operators.
//!
//! `K_j` acts on computational basis states as
//! `K_j |x> = (-1)^{sum_{q in Ngb(j)} x_q} |x xor e_j>`, so every product of
//! generators is a real signed permutation matrix and
//! `rho = 2^-n sum_i c_i prod_j K_j^{i_j}` is real symmetric.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{Graph, StabilizerGenerator};

pub const DENSE_MAX_QUBITS: usize = 6;

fn generator_matrix(k: &StabilizerGenerator, dim: usize) -> DMatrix<f64> {
    let flip = k.x_support.iter().fold(0usize, |m, &q| m | 1 << q);
    let phase = k.z_support.iter().fold(0usize, |m, &q| m | 1 << q);
    let mut mat = DMatrix::zeros(dim, dim);
    for x in 0..dim {
        let s = if (x & phase).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        mat[(x ^ flip, x)] = s;
    }
    mat
}

/// `rho` from stabilizer coefficients `c` (same bit order as the state model).
pub fn density_matrix(g: &Graph, c: &[f64]) -> Result<DMatrix<f64>> {
    let n = g.n();
    if n > DENSE_MAX_QUBITS {
        return Err(Error::CapExceeded {
            n,
            cap: DENSE_MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    if c.len() != dim {
        return Err(Error::LengthMismatch {
            expected: dim,
            actual: c.len(),
        });
    }
    let gens: Vec<_> = g.generators().iter().map(|k| generator_matrix(k, dim)).collect();
    let mut rho = DMatrix::zeros(dim, dim);
    for (i, &ci) in c.iter().enumerate() {
        if ci == 0.0 {
            continue;
        }
        let mut op = DMatrix::identity(dim, dim);
        for (j, kj) in gens.iter().enumerate() {
            if i >> j & 1 == 1 {
                op = kj * op;
            }
        }
        rho += op * ci;
    }
    Ok(rho / dim as f64)
}

/// Ascending eigenvalues of `rho`.
pub fn spectrum(rho: DMatrix<f64>) -> Vec<f64> {
    let mut eig: Vec<f64> = SymmetricEigen::new(rho).eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    eig
}
