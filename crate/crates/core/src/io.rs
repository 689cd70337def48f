//! JSON ingestion for graphs, measurement records, explicit states and sweep
//! specifications. Every parser takes untrusted text and returns an error
//! instead of panicking.
//!
//! ```text
//! graph        {"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}
//! measurements {"a": [0.9, 0.9, 0.9, 0.9]}
//! state        {"n": 2, "lambda": [0.9, 0.1, 0, 0]}   or   {"n": 2, "c": [...]}
//! sweep spec   {"family": "chain", "sizes": [4, 8], "gamma_t": [0.1]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::state::{GraphDiagonalState, MeasurementRecord, MAX_EXPLICIT_QUBITS};
use crate::sweep::SweepSpec;

/// Largest vertex count accepted from a graph file.
pub const MAX_GRAPH_VERTICES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementFile {
    pub a: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<f64>>,
}

fn from_json<'a, T: Deserialize<'a>>(what: &str, text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let file: GraphFile = from_json("graph", text)?;
    if file.n > MAX_GRAPH_VERTICES {
        return Err(Error::InvalidGraph(format!(
            "n = {} exceeds the limit of {MAX_GRAPH_VERTICES} vertices",
            file.n
        )));
    }
    Graph::new(file.n, file.edges.into_iter().map(|[u, v]| (u, v)))
}

pub fn graph_to_json(g: &Graph) -> String {
    let file = GraphFile {
        n: g.n(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&file).expect("graph serializes")
}

pub fn parse_measurements(text: &str) -> Result<MeasurementRecord> {
    let file: MeasurementFile = from_json("measurements", text)?;
    MeasurementRecord::new(file.a)
}

pub fn measurements_to_json(a: &MeasurementRecord) -> String {
    serde_json::to_string(&MeasurementFile { a: a.values().to_vec() }).expect("record serializes")
}

pub fn parse_state(text: &str) -> Result<GraphDiagonalState> {
    let file: StateFile = from_json("state", text)?;
    if file.n > MAX_EXPLICIT_QUBITS {
        return Err(Error::CapExceeded {
            n: file.n,
            cap: MAX_EXPLICIT_QUBITS,
        });
    }
    match (file.lambda, file.c) {
        (Some(lambda), None) => GraphDiagonalState::from_lambda(file.n, lambda),
        (None, Some(c)) => GraphDiagonalState::from_coefficients(file.n, &c),
        _ => Err(Error::Parse(
            "state: exactly one of \"lambda\" and \"c\" must be given".into(),
        )),
    }
}

pub fn parse_sweep_spec(text: &str) -> Result<SweepSpec> {
    let spec: SweepSpec = from_json("sweep spec", text)?;
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::grid(2, 3).unwrap();
        assert_eq!(parse_graph(&graph_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn graph_errors_carry_location() {
        let err = parse_graph("{\"n\": 3,\n \"edges\": [[0, 1], [1]]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(matches!(
            parse_graph(r#"{"n": 2, "edges": [[0, 5]]}"#),
            Err(Error::InvalidGraph(_))
        ));
        assert!(parse_graph(r#"{"n": 2, "edges": [], "weights": []}"#).is_err());
        assert!(parse_graph(r#"{"n": 18446744073709551615, "edges": []}"#).is_err());
    }

    #[test]
    fn measurements() {
        let a = parse_measurements(r#"{"a": [0.9, -0.2]}"#).unwrap();
        assert_eq!(a.values(), &[0.9, -0.2]);
        assert_eq!(parse_measurements(&measurements_to_json(&a)).unwrap(), a);
        let err = parse_measurements(r#"{"a": [1.5, 0.0]}"#).unwrap_err();
        assert!(err.to_string().contains("a[0] out of [-1,1]"));
    }

    #[test]
    fn states_need_exactly_one_representation() {
        let s = parse_state(r#"{"n": 1, "lambda": [0.75, 0.25]}"#).unwrap();
        assert_eq!(s, parse_state(r#"{"n": 1, "c": [1.0, 0.5]}"#).unwrap());
        assert!(parse_state(r#"{"n": 1}"#).is_err());
        assert!(parse_state(r#"{"n": 1, "lambda": [1, 0], "c": [1, 1]}"#).is_err());
        assert!(matches!(
            parse_state(r#"{"n": 64, "c": []}"#),
            Err(Error::CapExceeded { .. })
        ));
    }
}
