use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// The graph has an odd cycle, listed as its vertex sequence.
    #[error("graph is not two-colorable: odd cycle {}", format_cycle(.cycle))]
    NotTwoColorable { cycle: Vec<usize> },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid measurement record: {0}")]
    InvalidMeasurement(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("not a state: {0}")]
    NotAState(String),

    #[error("explicit state with n = {n} exceeds the cap of {cap} qubits")]
    CapExceeded { n: usize, cap: usize },

    #[error("argument outside domain: {0}")]
    DomainError(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("state is not supported on a single Amber subspace")]
    NotSubspaceSupported,

    #[error("parse error: {0}")]
    Parse(String),
}

fn format_cycle(cycle: &[usize]) -> String {
    let mut s = cycle.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-");
    if let Some(first) = cycle.first() {
        s.push_str(&format!("-{first}"));
    }
    s
}
