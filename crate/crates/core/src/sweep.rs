//! Dephasing sweeps over chain sizes and `gamma t`, and the CSV tables they
//! produce.
//!
//! Rows are always ordered n-major, `gamma t`-minor, whatever order the
//! parallel workers finish in. CSV output uses `,` separators, `.` decimals
//! and `#`-prefixed comment lines.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{report, BoundsReport};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::noise::{chain_expectations, DephasingParams};

/// Largest chain a sweep will evaluate.
pub const MAX_SWEEP_SIZE: usize = 10_000_000;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Bound columns of a sweep table; `n` and `gamma_t` always come first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Column {
    F,
    #[serde(rename = "rob_lower")]
    RobLower,
    #[serde(rename = "rob_upper")]
    RobUpper,
    #[serde(rename = "log_rob_lower")]
    LogRobLower,
    #[serde(rename = "log_rob_upper")]
    LogRobUpper,
    #[serde(rename = "rel_ent_lower")]
    RelEntLower,
    #[serde(rename = "rel_ent_upper")]
    RelEntUpper,
}

impl Column {
    pub const ALL: [Column; 7] = [
        Column::F,
        Column::RobLower,
        Column::RobUpper,
        Column::LogRobLower,
        Column::LogRobUpper,
        Column::RelEntLower,
        Column::RelEntUpper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::F => "F",
            Column::RobLower => "rob_lower",
            Column::RobUpper => "rob_upper",
            Column::LogRobLower => "log_rob_lower",
            Column::LogRobUpper => "log_rob_upper",
            Column::RelEntLower => "rel_ent_lower",
            Column::RelEntUpper => "rel_ent_upper",
        }
    }

    fn value(self, r: &BoundsReport) -> f64 {
        match self {
            Column::F => r.fidelity_floor,
            Column::RobLower => r.rob_lower,
            Column::RobUpper => r.rob_upper,
            Column::LogRobLower => r.log_rob_lower,
            Column::LogRobUpper => r.log_rob_upper,
            Column::RelEntLower => r.rel_ent_lower,
            Column::RelEntUpper => r.rel_ent_upper,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub family: String,
    pub sizes: Vec<usize>,
    pub gamma_t: Vec<f64>,
    /// Bound columns to emit; all of them when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<Column>>,
}

impl SweepSpec {
    pub fn chain(sizes: Vec<usize>, gamma_t: Vec<f64>) -> Self {
        Self {
            family: "chain".into(),
            sizes,
            gamma_t,
            outputs: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.family != "chain" {
            return Err(Error::InvalidParams(format!(
                "sweeps support the \"chain\" family only, got \"{}\"",
                self.family
            )));
        }
        if self.sizes.is_empty() {
            return Err(Error::InvalidParams("sizes must be nonempty".into()));
        }
        if self.gamma_t.is_empty() {
            return Err(Error::InvalidParams("gamma_t must be nonempty".into()));
        }
        if let Some((i, n)) = self
            .sizes
            .iter()
            .enumerate()
            .find(|(_, &n)| !(2..=MAX_SWEEP_SIZE).contains(&n))
        {
            return Err(Error::InvalidParams(format!(
                "sizes[{i}] = {n} outside 2..={MAX_SWEEP_SIZE}"
            )));
        }
        for (i, &gt) in self.gamma_t.iter().enumerate() {
            DephasingParams::new(gt)
                .map_err(|_| Error::InvalidParams(format!("gamma_t[{i}] = {gt} is not a finite nonnegative number")))?;
        }
        if matches!(&self.outputs, Some(cols) if cols.is_empty()) {
            return Err(Error::InvalidParams("outputs must be nonempty when given".into()));
        }
        Ok(())
    }

    /// Requested columns in canonical order, without duplicates.
    pub fn columns(&self) -> Vec<Column> {
        match &self.outputs {
            None => Column::ALL.to_vec(),
            Some(cols) => Column::ALL.into_iter().filter(|c| cols.contains(c)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub n: usize,
    pub gamma_t: f64,
    pub report: BoundsReport,
}

/// Bounds for the dephased chain of `n` qubits.
pub fn chain_row(n: usize, gamma_t: f64) -> Result<ReportRow> {
    let col = Graph::chain(n)?.two_color()?;
    let a = chain_expectations(n, DephasingParams::new(gamma_t)?)?;
    Ok(ReportRow {
        n,
        gamma_t,
        report: report(&a, &col)?,
    })
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<ReportRow>> {
    spec.validate()?;
    let rows: Vec<Vec<ReportRow>> = spec
        .sizes
        .par_iter()
        .map(|&n| {
            let col = Graph::chain(n)?.two_color()?;
            spec.gamma_t
                .iter()
                .map(|&gt| {
                    let a = chain_expectations(n, DephasingParams::new(gt)?)?;
                    Ok(ReportRow {
                        n,
                        gamma_t: gt,
                        report: report(&a, &col)?,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Shortest round-trip decimal, switching to exponent form for very large
/// magnitudes so robustness values at large `|B|` stay readable.
pub fn format_number(v: f64) -> String {
    if v.is_finite() && v.abs() >= 1e16 {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// A CSV table with leading comment lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub columns: Vec<Column>,
    pub rows: Vec<ReportRow>,
}

impl Table {
    pub fn header(&self) -> Vec<&'static str> {
        let mut h = vec!["n", "gamma_t"];
        h.extend(self.columns.iter().map(|c| c.name()));
        h
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let io = |e: std::io::Error| Error::Parse(format!("write failed: {e}"));
        for c in &self.comments {
            writeln!(out, "# {c}").map_err(io)?;
        }
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::Parse(format!("write failed: {e}"));
        w.write_record(self.header()).map_err(csv_err)?;
        for row in &self.rows {
            let mut rec = vec![row.n.to_string(), format_number(row.gamma_t)];
            rec.extend(self.columns.iter().map(|c| format_number(c.value(&row.report))));
            w.write_record(rec).map_err(csv_err)?;
        }
        w.flush().map_err(io)
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

pub fn sweep_table(spec: &SweepSpec) -> Result<Table> {
    let rows = run_sweep(spec)?;
    let sizes = describe_sizes(&spec.sizes);
    Ok(Table {
        comments: vec![format!(
            "entbound {VERSION} sweep: family={} sizes={sizes} gamma_t={:?}",
            spec.family, spec.gamma_t
        )],
        columns: spec.columns(),
        rows,
    })
}

fn describe_sizes(sizes: &[usize]) -> String {
    let contiguous = sizes.windows(2).all(|w| w[1] == w[0] + 1);
    match (sizes.first(), sizes.last()) {
        (Some(a), Some(b)) if contiguous && sizes.len() > 2 => format!("{a}..={b}"),
        _ => format!("{sizes:?}"),
    }
}

pub const FIG1_MAX_SIZE: usize = 100;
pub const FIG1_GAMMA_T: [f64; 6] = [0.0, 0.01, 0.02, 0.05, 0.1, 0.2];
pub const FIG2_MAX_SIZE: usize = 1000;
pub const FIG2_GAMMA_T: [f64; 7] = [0.0, 0.001, 0.002, 0.005, 0.01, 0.02, 0.05];

/// Log-robustness bounds for dephased chains, restricted to the rows where a
/// positive fidelity floor is inferred.
pub fn figure1() -> Result<Table> {
    let spec = SweepSpec {
        outputs: Some(vec![Column::F, Column::LogRobLower, Column::LogRobUpper]),
        ..SweepSpec::chain((2..=FIG1_MAX_SIZE).collect(), FIG1_GAMMA_T.to_vec())
    };
    let mut table = sweep_table(&spec)?;
    table.rows.retain(|r| r.report.fidelity_floor > 0.0);
    table.comments = vec![format!(
        "entbound {VERSION} fig1: log2(1+R) bounds, family=chain sizes=2..={FIG1_MAX_SIZE} gamma_t={:?}, rows with F > 0",
        FIG1_GAMMA_T
    )];
    Ok(table)
}

/// Relative entropy bounds for dephased chains up to 1000 qubits.
pub fn figure2() -> Result<Table> {
    let spec = SweepSpec {
        outputs: Some(vec![Column::RelEntLower, Column::RelEntUpper]),
        ..SweepSpec::chain((2..=FIG2_MAX_SIZE).collect(), FIG2_GAMMA_T.to_vec())
    };
    let mut table = sweep_table(&spec)?;
    table.comments = vec![format!(
        "entbound {VERSION} fig2: relative entropy bounds (bits), family=chain sizes=2..={FIG2_MAX_SIZE} gamma_t={:?}",
        FIG2_GAMMA_T
    )];
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_n_major() {
        let rows = run_sweep(&SweepSpec::chain(vec![6, 3], vec![0.2, 0.0])).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.n, r.gamma_t)).collect();
        assert_eq!(keys, [(6, 0.2), (6, 0.0), (3, 0.2), (3, 0.0)]);
    }

    #[test]
    fn validation() {
        assert!(SweepSpec::chain(vec![], vec![0.1]).validate().is_err());
        assert!(SweepSpec::chain(vec![1], vec![0.1]).validate().is_err());
        assert!(SweepSpec::chain(vec![4], vec![]).validate().is_err());
        assert!(SweepSpec::chain(vec![4], vec![-0.1]).validate().is_err());
        let star = SweepSpec {
            family: "star".into(),
            ..SweepSpec::chain(vec![4], vec![0.1])
        };
        assert!(star.validate().is_err());
    }

    #[test]
    fn output_selection_keeps_canonical_order() {
        let spec = SweepSpec {
            outputs: Some(vec![Column::RelEntUpper, Column::F, Column::F]),
            ..SweepSpec::chain(vec![4], vec![0.1])
        };
        assert_eq!(spec.columns(), [Column::F, Column::RelEntUpper]);
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(0.1), "0.1");
        assert_eq!(format_number(3.0), "3");
        assert_eq!(format_number(2f64.powi(60)), "1.152921504606847e18");
        assert_eq!(format_number(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_layout() {
        let spec = SweepSpec::chain(vec![4], vec![0.0]);
        let csv = sweep_table(&spec).unwrap().to_csv_string();
        let lines: Vec<_> = csv.lines().collect();
        assert!(lines[0].starts_with("# entbound "));
        assert_eq!(
            lines[1],
            "n,gamma_t,F,rob_lower,rob_upper,log_rob_lower,log_rob_upper,rel_ent_lower,rel_ent_upper"
        );
        assert_eq!(lines[2], "4,0,1,3,3,2,2,2,2");
    }
}
