//! `entbound`: entanglement bounds for graph states from stabilizer data.
//!
//! Exit codes: 0 success, 1 input error, 2 graph not two-colorable,
//! 3 oracle property violated.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use entbound::io::{parse_graph, parse_measurements, parse_sweep_spec};
use entbound::oracle::suite::{run_suite, Fault, SuiteConfig, SUITE_MAX_QUBITS};
use entbound::sweep::{figure1, figure2, sweep_table, Table};
use entbound::{report, Error};

#[derive(Parser)]
#[command(
    name = "entbound",
    version,
    about = "Entanglement bounds for two-colorable graph states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bounds for one graph and one set of generator expectation values.
    Bounds {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        measurements: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Dephased-chain sweep over sizes and gamma*t, written as CSV.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write fig1.csv (log-robustness) and fig2.csv (relative entropy).
    Figures {
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Check every closed form against the brute-force oracles.
    Oracle {
        #[arg(long, default_value_t = 2010)]
        seed: u64,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..=SUITE_MAX_QUBITS as u64))]
        n_max: u64,
        /// Corrupt a closed form on purpose to confirm the suite catches it.
        #[arg(long, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    FidelityOffset,
    EntropyBase,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotTwoColorable { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 1,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn write_table(table: &Table, path: &Path) -> Result<(), Failure> {
    let file = fs::File::create(path).map_err(|e| Failure {
        code: 1,
        message: format!("cannot create {}: {e}", path.display()),
    })?;
    table.write_csv(std::io::BufWriter::new(file))?;
    Ok(())
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

fn cmd_bounds(graph: &Path, measurements: &Path, json: bool) -> Result<(), Failure> {
    let g = parse_graph(&read(graph)?).map_err(in_file(graph))?;
    let a = parse_measurements(&read(measurements)?).map_err(in_file(measurements))?;
    if a.len() != g.n() {
        return Err(Failure {
            code: 1,
            message: format!(
                "{}: field \"a\" has {} values but the graph has n = {}",
                measurements.display(),
                a.len(),
                g.n()
            ),
        });
    }
    let col = g.two_color()?;
    let r = report(&a, &col)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
    } else {
        println!(
            "qubits                  {} (|A| = {}, |B| = {})",
            g.n(),
            col.amber().len(),
            col.blue_count()
        );
        println!("fidelity floor F        {}", r.fidelity_floor);
        println!("robustness R            [{}, {}]", r.rob_lower, r.rob_upper);
        println!("log2(1 + R)             [{}, {}]", r.log_rob_lower, r.log_rob_upper);
        println!("relative entropy E_R    [{}, {}]", r.rel_ent_lower, r.rel_ent_upper);
        println!("max entropy S_max       {}", r.s_max);
    }
    Ok(())
}

fn cmd_sweep(spec: &Path, out: &Path) -> Result<(), Failure> {
    let spec_value = parse_sweep_spec(&read(spec)?).map_err(in_file(spec))?;
    let table = sweep_table(&spec_value)?;
    write_table(&table, out)?;
    eprintln!("wrote {} rows to {}", table.rows.len(), out.display());
    Ok(())
}

fn cmd_figures(out_dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(out_dir).map_err(|e| Failure {
        code: 1,
        message: format!("cannot create {}: {e}", out_dir.display()),
    })?;
    for (name, table) in [("fig1.csv", figure1()?), ("fig2.csv", figure2()?)] {
        let path = out_dir.join(name);
        write_table(&table, &path)?;
        eprintln!("wrote {} rows to {}", table.rows.len(), path.display());
    }
    Ok(())
}

fn cmd_oracle(seed: u64, n_max: usize, fault: Option<FaultArg>) -> Result<(), Failure> {
    let mut cfg = SuiteConfig::new(seed, n_max)?;
    cfg.fault = fault.map(|f| match f {
        FaultArg::FidelityOffset => Fault::FidelityOffset,
        FaultArg::EntropyBase => Fault::EntropyBase,
    });
    let outcomes = run_suite(&cfg);
    println!("oracle suite: seed = {seed}, n_max = {n_max}");
    println!(
        "{:<4} {:<44} {:>7} {:>12} {:>9}",
        "", "property", "cases", "worst", "tol"
    );
    for o in &outcomes {
        println!(
            "{:<4} {:<44} {:>7} {:>12.3e} {:>9.0e}",
            if o.passed { "ok" } else { "FAIL" },
            o.name,
            o.cases,
            o.worst_residual,
            o.tolerance
        );
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        return Err(Failure {
            code: 3,
            message: format!("{failed} oracle properties violated"),
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Bounds {
            graph,
            measurements,
            json,
        } => cmd_bounds(&graph, &measurements, json),
        Command::Sweep { spec, out } => cmd_sweep(&spec, &out),
        Command::Figures { out_dir } => cmd_figures(&out_dir),
        Command::Oracle {
            seed,
            n_max,
            inject_fault,
        } => cmd_oracle(seed, n_max as usize, inject_fault),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
