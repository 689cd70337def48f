//! Stabilizer data and explicit graph-diagonal states.
//!
//! A twirled state is diagonal in the graph basis,
//! `rho = sum_k lambda_k |G_k><G_k| = 2^-n sum_i c_i K_1^{i_1} ... K_n^{i_n}`,
//! with `c = WHT(lambda)` and `lambda = 2^-n WHT(c)`, so `c_0 = sum lambda = 1`
//! and `a_i = c_{e_i}`. Bitstrings are integers with vertex 0 in the least
//! significant bit.

use std::cell::Cell;

use crate::error::{Error, Result};

/// Largest `n` for which a `2^n` vector is ever materialized.
pub const MAX_EXPLICIT_QUBITS: usize = 20;

/// Negative eigenvalues down to `-NEGATIVITY_TOL` are accepted as round-off.
pub const NEGATIVITY_TOL: f64 = 1e-12;

thread_local! {
    static WIDEST_EXPLICIT: Cell<usize> = const { Cell::new(0) };
}

/// Largest `n` whose explicit `2^n` vector was built on this thread.
pub fn widest_explicit_state() -> usize {
    WIDEST_EXPLICIT.with(Cell::get)
}

fn claim_explicit(n: usize) -> Result<usize> {
    if n > MAX_EXPLICIT_QUBITS {
        return Err(Error::CapExceeded {
            n,
            cap: MAX_EXPLICIT_QUBITS,
        });
    }
    WIDEST_EXPLICIT.with(|w| w.set(w.get().max(n)));
    Ok(1 << n)
}

/// Expectation values `a_i = tr(rho K_i)` of the `n` stabilizer generators.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord(Vec<f64>);

impl MeasurementRecord {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidMeasurement("record is empty".into()));
        }
        for (i, &ai) in a.iter().enumerate() {
            if !ai.is_finite() || ai.abs() > 1.0 {
                return Err(Error::InvalidMeasurement(format!("a[{i}] out of [-1,1]: {ai}")));
            }
        }
        Ok(Self(a))
    }

    /// All generators with the same expectation value.
    pub fn uniform(n: usize, a: f64) -> Result<Self> {
        Self::new(vec![a; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Index<usize> for MeasurementRecord {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Unnormalized in-place Walsh-Hadamard transform; `data.len()` must be a
/// power of two. Applying it twice multiplies by the length.
pub fn fwht(data: &mut [f64]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "WHT length {len} is not a power of two");
    let mut h = 1;
    while h < len {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*x, *y);
                *x = u + v;
                *y = u - v;
            }
        }
        h *= 2;
    }
}

fn check_len(len: usize, n: usize) -> Result<()> {
    let expected = claim_explicit(n)?;
    if len != expected {
        return Err(Error::LengthMismatch { expected, actual: len });
    }
    Ok(())
}

/// Graph-basis eigenvalues from stabilizer coefficients: `lambda = 2^-n WHT(c)`.
pub fn lambda_from_c(c: &[f64], n: usize) -> Result<Vec<f64>> {
    check_len(c.len(), n)?;
    if (c[0] - 1.0).abs() > 1e-9 {
        return Err(Error::NotAState(format!("identity coefficient c_0 = {} != 1", c[0])));
    }
    let mut lam = c.to_vec();
    fwht(&mut lam);
    let scale = (c.len() as f64).recip();
    for (j, l) in lam.iter_mut().enumerate() {
        *l *= scale;
        if *l < -NEGATIVITY_TOL {
            return Err(Error::NotAState(format!("eigenvalue lambda[{j}] = {l} is negative")));
        }
    }
    Ok(lam)
}

/// Stabilizer coefficients from eigenvalues: `c = WHT(lambda)`.
pub fn c_from_lambda(lam: &[f64], n: usize) -> Result<Vec<f64>> {
    check_len(lam.len(), n)?;
    let mut c = lam.to_vec();
    fwht(&mut c);
    Ok(c)
}

/// A state diagonal in the graph basis, stored by its eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDiagonalState {
    n: usize,
    lambda: Vec<f64>,
}

impl GraphDiagonalState {
    /// Accepts eigenvalues that are nonnegative (up to round-off) and sum to
    /// one within `1e-9`.
    pub fn from_lambda(n: usize, lambda: Vec<f64>) -> Result<Self> {
        check_len(lambda.len(), n)?;
        if let Some((j, l)) = lambda
            .iter()
            .enumerate()
            .find(|(_, l)| !l.is_finite() || **l < -NEGATIVITY_TOL)
        {
            return Err(Error::NotAState(format!("lambda[{j}] = {l}")));
        }
        let total: f64 = lambda.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::NotAState(format!("eigenvalues sum to {total}")));
        }
        Ok(Self { n, lambda })
    }

    pub fn from_coefficients(n: usize, c: &[f64]) -> Result<Self> {
        let lambda = lambda_from_c(c, n)?;
        Ok(Self { n, lambda })
    }

    /// The target graph state `|G_0>`.
    pub fn pure(n: usize) -> Result<Self> {
        let mut lambda = vec![0.0; claim_explicit(n)?];
        lambda[0] = 1.0;
        Ok(Self { n, lambda })
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        let len = claim_explicit(n)?;
        Ok(Self {
            n,
            lambda: vec![(len as f64).recip(); len],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn coefficients(&self) -> Vec<f64> {
        let mut c = self.lambda.clone();
        fwht(&mut c);
        c
    }

    /// `a_i = sum_k (-1)^{k_i} lambda_k`.
    pub fn expectations(&self) -> MeasurementRecord {
        let a = (0..self.n)
            .map(|i| {
                self.lambda
                    .iter()
                    .enumerate()
                    .map(|(k, l)| if k >> i & 1 == 0 { *l } else { -*l })
                    .sum::<f64>()
                    .clamp(-1.0, 1.0)
            })
            .collect();
        MeasurementRecord(a)
    }

    /// Fidelity with the graph basis state `|G_target>`.
    pub fn fidelity(&self, target: usize) -> f64 {
        self.lambda[target]
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        self.lambda.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.log2()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn single_qubit_expansion() {
        let a = 0.3;
        let lam = lambda_from_c(&[1.0, a], 1).unwrap();
        assert!(close(&lam, &[(1.0 + a) / 2.0, (1.0 - a) / 2.0], 1e-15));
    }

    #[test]
    fn pure_and_mixed_from_coefficients() {
        assert_eq!(lambda_from_c(&[1.0; 4], 2).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(lambda_from_c(&[1.0, 0.0, 0.0, 0.0], 2).unwrap(), vec![0.25; 4]);
    }

    #[test]
    fn coefficients_from_eigenvalues() {
        assert_eq!(c_from_lambda(&[1.0, 0.0], 1).unwrap(), vec![1.0, 1.0]);
        assert_eq!(c_from_lambda(&[0.5, 0.5], 1).unwrap(), vec![1.0, 0.0]);
    }

    #[test]
    fn rejects_non_states() {
        assert!(matches!(lambda_from_c(&[1.0, 2.0], 1), Err(Error::NotAState(_))));
        assert!(matches!(lambda_from_c(&[0.5, 0.0], 1), Err(Error::NotAState(_))));
        assert!(matches!(
            lambda_from_c(&[1.0, 0.0, 0.0], 2),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            GraphDiagonalState::pure(MAX_EXPLICIT_QUBITS + 1),
            Err(Error::CapExceeded { .. })
        ));
        assert!(GraphDiagonalState::from_lambda(1, vec![0.7, 0.7]).is_err());
    }

    #[test]
    fn expectations_and_fidelity() {
        let pure = GraphDiagonalState::pure(3).unwrap();
        assert_eq!(pure.expectations().values(), &[1.0; 3]);
        assert_eq!(
            GraphDiagonalState::maximally_mixed(3).unwrap().expectations().values(),
            &[0.0; 3]
        );

        let s = GraphDiagonalState::from_lambda(2, vec![0.9, 0.1, 0.0, 0.0]).unwrap();
        // k = 1 flips bit 0 only: a_0 = 0.9 - 0.1, a_1 = 0.9 + 0.1
        assert!(close(s.expectations().values(), &[0.8, 1.0], 1e-15));
        assert_eq!(s.fidelity(0b01), 0.1);
        assert_eq!(GraphDiagonalState::maximally_mixed(2).unwrap().fidelity(0), 0.25);
    }

    #[test]
    fn measurement_validation() {
        let err = MeasurementRecord::new(vec![1.5, 0.0]).unwrap_err();
        assert!(err.to_string().contains("a[0] out of [-1,1]"), "{err}");
        assert!(MeasurementRecord::new(vec![f64::NAN]).is_err());
        assert!(MeasurementRecord::new(vec![]).is_err());
        assert!(MeasurementRecord::new(vec![-1.0, 1.0]).is_ok());
    }
}
