//! Local dephasing of the linear-chain graph state.
//!
//! Under independent Z dephasing, the stabilizer coefficient of the product
//! `K^i` decays as `c_i(t) = exp(-gamma t * weight(i))`. Only the dimensionless
//! product `gamma t` enters.

use crate::error::{Error, Result};
use crate::state::{GraphDiagonalState, MeasurementRecord};

/// Largest chain for which [`chain_state`] builds the explicit state.
pub const CHAIN_STATE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingParams {
    gamma_t: f64,
}

impl DephasingParams {
    pub fn new(gamma_t: f64) -> Result<Self> {
        if !(gamma_t.is_finite() && gamma_t >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "gamma_t must be finite and nonnegative, got {gamma_t}"
            )));
        }
        Ok(Self { gamma_t })
    }

    pub fn gamma_t(&self) -> f64 {
        self.gamma_t
    }

    /// Coefficient of any stabilizer element with `weight` generator factors.
    pub fn decay(&self, weight: u32) -> f64 {
        (-self.gamma_t * f64::from(weight)).exp()
    }
}

/// `c_i(t)` for the bitstring `index` (vertex 0 in the lowest bit).
pub fn chain_coefficient(index: u64, p: DephasingParams) -> f64 {
    p.decay(index.count_ones())
}

/// Generator expectations `a_i = exp(-gamma t)` for a chain of `n` qubits.
pub fn chain_expectations(n: usize, p: DephasingParams) -> Result<MeasurementRecord> {
    if n == 0 {
        return Err(Error::InvalidParams("chain needs at least one qubit".into()));
    }
    MeasurementRecord::uniform(n, p.decay(1))
}

/// The full dephased chain state, for `n <= CHAIN_STATE_CAP`.
pub fn chain_state(n: usize, p: DephasingParams) -> Result<GraphDiagonalState> {
    if n > CHAIN_STATE_CAP {
        return Err(Error::CapExceeded {
            n,
            cap: CHAIN_STATE_CAP,
        });
    }
    if n == 0 {
        return Err(Error::InvalidParams("chain needs at least one qubit".into()));
    }
    let c: Vec<f64> = (0..1u64 << n).map(|i| chain_coefficient(i, p)).collect();
    GraphDiagonalState::from_coefficients(n, &c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gt(x: f64) -> DephasingParams {
        DephasingParams::new(x).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(chain_coefficient(0, gt(3.0)), 1.0);
        assert!((chain_coefficient(0b101, gt(1.0)) - 0.135_335_283_236_612_7).abs() < 1e-15);
        assert_eq!(chain_coefficient(0b1111, gt(0.0)), 1.0);
    }

    #[test]
    fn expectation_examples() {
        assert_eq!(chain_expectations(5, gt(0.0)).unwrap().values(), &[1.0; 5]);
        for &a in chain_expectations(3, gt(0.1)).unwrap().values() {
            assert!((a - 0.904_837_418_035_959_6).abs() < 1e-15);
        }
        assert!(chain_expectations(4, gt(50.0))
            .unwrap()
            .values()
            .iter()
            .all(|&a| a < 1e-21));
    }

    #[test]
    fn state_examples() {
        assert_eq!(chain_state(4, gt(0.0)).unwrap(), GraphDiagonalState::pure(4).unwrap());

        let e = (-0.7f64).exp();
        let single = chain_state(1, gt(0.7)).unwrap();
        assert!((single.lambda()[0] - (1.0 + e) / 2.0).abs() < 1e-15);
        assert!((single.lambda()[1] - (1.0 - e) / 2.0).abs() < 1e-15);

        let s = chain_state(3, gt(0.5)).unwrap();
        assert_eq!(s.expectations(), chain_expectations(3, gt(0.5)).unwrap());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(DephasingParams::new(-0.1).is_err());
        assert!(DephasingParams::new(f64::INFINITY).is_err());
        assert!(matches!(
            chain_state(13, gt(0.1)),
            Err(Error::CapExceeded { n: 13, cap: 12 })
        ));
    }

    #[test]
    fn semigroup() {
        let (t1, t2) = (0.13, 0.42);
        for i in 0..256u64 {
            let lhs = chain_coefficient(i, gt(t1)) * chain_coefficient(i, gt(t2));
            let rhs = chain_coefficient(i, gt(t1 + t2));
            assert!((lhs - rhs).abs() <= 1e-15 * rhs.max(1e-300) + 1e-300);
        }
    }
}
