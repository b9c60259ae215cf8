//! `zconn`: decide group connectivity and nowhere-zero flows, classify
//! graphs, reduce them, and run the small-graph census.
//!
//! Exit status: 0 when every verdict is positive (or the command has no
//! yes/no answer), 1 when a verdict is negative, 2 on errors.

mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use zconn_core::catalog::{derive_exception_set, parse_catalog, verify_catalog, Catalog};
use zconn_core::census::census_range;
use zconn_core::classifier::{ClassifyError, OutcomeClass};
use zconn_core::flow::Budget;
use zconn_core::reduction::{contracts_to, reduce_greedy, ReductionTrace, SearchBudget, Target, TraceRecord};
use zconn_core::{classify, encode_graph6, predict_nz3, CensusConstraints, Engine, Oracle};

use input::{parse_graphs, read_source, InputGraph};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, #[source] io::Error),
    #[error("input line {0}: {1}")]
    Input(usize, String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}: {1}")]
    Graph(String, String),
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Parser)]
#[command(name = "zconn", version, about = "Exact Z_k group connectivity and Z_3-contraction for small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Debug, Args)]
struct RunConfig {
    /// Group order k for Z_k.
    #[arg(long = "group", global = true, default_value_t = 3)]
    group: u32,
    /// Edge budget for value enumeration.
    #[arg(long, global = true, default_value_t = 24)]
    max_edges: usize,
    /// Largest order handed to the exhaustive contraction search.
    #[arg(long, global = true, default_value_t = 8)]
    search_order: usize,
    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Sumset)]
    engine: EngineArg,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Sumset,
    Gray,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Jsonl,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    K1,
    K4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvertTo {
    Dot,
    Graph6,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide Z_k group connectivity.
    Decide {
        /// graph6 file, `-` for standard input, or an inline graph.
        input: String,
    },
    /// Decide whether a nowhere-zero Z_k flow exists.
    Nzflow {
        input: String,
        /// Also print the structural prediction (k = 3 only).
        #[arg(long)]
        predict: bool,
    },
    /// Z_3-connected, contracts to K4, or one of the exceptional graphs.
    Classify { input: String },
    /// Contract certified patterns greedily, then optionally search for a target.
    Reduce {
        input: String,
        #[arg(long, value_enum)]
        target: Option<TargetArg>,
    },
    /// Classify every 3-edge-connected graph with independence number at
    /// most two in an order range and compare with the oracle.
    Census {
        #[arg(long, default_value_t = 4)]
        min_n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Exceptional-graph table.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Convert between graph6 and DOT.
    Convert {
        input: String,
        #[arg(long, value_enum, default_value_t = ConvertTo::Dot)]
        to: ConvertTo,
    },
    /// Replay and re-certify a reduction trace (TSV or JSON records).
    VerifyTrace { input: String },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    /// Check the table (or `--file`) entry by entry.
    Verify {
        #[arg(long)]
        file: Option<PathBuf>,
        /// Also recompute the exceptional set from the census.
        #[arg(long)]
        derive: bool,
    },
    /// Print the table.
    Show,
}

/// Report lines plus whether every verdict was positive.
struct Report {
    lines: Vec<String>,
    positive: bool,
}

impl Report {
    fn new(lines: Vec<String>, positive: bool) -> Self {
        Self { lines, positive }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<(), CliError> {
        if self.group < 3 {
            return Err(CliError::Config(format!("--group must be at least 3, got {}", self.group)));
        }
        if self.max_edges == 0 || self.search_order == 0 || self.workers == Some(0) {
            return Err(CliError::Config("budgets and worker counts must be positive".into()));
        }
        Ok(())
    }

    fn oracle(&self) -> Oracle {
        let engine = match self.engine {
            EngineArg::Sumset => Engine::Sumset,
            EngineArg::Gray => Engine::GrayCode,
        };
        Oracle::new(
            engine,
            Budget {
                max_edges: self.max_edges,
                ..Budget::default()
            },
        )
    }

    fn search(&self) -> SearchBudget {
        SearchBudget {
            max_order: self.search_order,
        }
    }

    fn three_only(&self, what: &str) -> Result<(), CliError> {
        if self.group == 3 {
            Ok(())
        } else {
            Err(CliError::Config(format!("{what} is defined for --group 3 only")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let config = &cli.config;
    config.validate()?;
    if let Some(workers) = config.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let report = dispatch(&cli.command, config)?;
    let mut out: Box<dyn Write> = match &config.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::Io(path.display().to_string(), e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let write_err = |e| CliError::Io("output".into(), e);
    for line in &report.lines {
        writeln!(out, "{line}").map_err(write_err)?;
    }
    out.flush().map_err(write_err)?;
    Ok(report.positive)
}

fn dispatch(command: &Command, config: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::Decide { input } => decide(input, config),
        Command::Nzflow { input, predict } => nzflow(input, *predict, config),
        Command::Classify { input } => classify_cmd(input, config),
        Command::Reduce { input, target } => reduce(input, *target, config),
        Command::Census { min_n, max_n } => census(*min_n, *max_n, config),
        Command::Catalog { action } => catalog(action, config),
        Command::Convert { input, to } => convert(input, *to),
        Command::VerifyTrace { input } => verify_trace(input, config),
    }
}

fn load(input: &str) -> Result<Vec<InputGraph>, CliError> {
    parse_graphs(&read_source(input)?)
}

/// Run `f` on every graph in parallel, keeping input order.
fn per_graph<T: Send>(
    graphs: &[InputGraph],
    f: impl Fn(&InputGraph) -> Result<T, String> + Sync,
) -> Result<Vec<T>, CliError> {
    graphs
        .par_iter()
        .map(|g| f(g).map_err(|e| CliError::Graph(g.label.clone(), e)))
        .collect()
}

fn decide(input: &str, config: &RunConfig) -> Result<Report, CliError> {
    let graphs = load(input)?;
    let oracle = config.oracle();
    let k = config.group;
    let verdicts = per_graph(&graphs, |g| {
        oracle.is_group_connected(&g.graph, k).map_err(|e| e.to_string())
    })?;
    let lines = graphs
        .iter()
        .zip(&verdicts)
        .map(|(g, &ok)| match config.format {
            Format::Jsonl => json!({"graph": g.label, "group": k, "group_connected": ok}).to_string(),
            _ => format!("{}\t{}z{k}-connected", g.label, if ok { "" } else { "not-" }),
        })
        .collect();
    Ok(Report::new(lines, verdicts.iter().all(|&v| v)))
}

fn nzflow(input: &str, predict: bool, config: &RunConfig) -> Result<Report, CliError> {
    if predict {
        config.three_only("--predict")?;
    }
    let graphs = load(input)?;
    let oracle = config.oracle();
    let k = config.group;
    let catalog = if predict {
        Some(Catalog::load_verified(&oracle).map_err(|e| CliError::Other(e.to_string()))?)
    } else {
        None
    };
    let results = per_graph(&graphs, |g| {
        let flow = oracle.has_nowhere_zero_flow(&g.graph, k).map_err(|e| e.to_string())?;
        let predicted = match &catalog {
            Some(c) => Some(predict_nz3(&g.graph, c).map_err(|e| e.to_string())?),
            None => None,
        };
        Ok((flow, predicted))
    })?;
    let lines = graphs
        .iter()
        .zip(&results)
        .map(|(g, &(flow, predicted))| match config.format {
            Format::Jsonl => {
                json!({"graph": g.label, "group": k, "nowhere_zero_flow": flow, "predicted": predicted}).to_string()
            }
            _ => {
                let mut line = format!("{}\t{}nowhere-zero-{k}-flow", g.label, if flow { "" } else { "no-" });
                if let Some(p) = predicted {
                    line.push_str(&format!("\tpredicted={p}"));
                }
                line
            }
        })
        .collect();
    Ok(Report::new(lines, results.iter().all(|r| r.0)))
}

fn classify_cmd(input: &str, config: &RunConfig) -> Result<Report, CliError> {
    config.three_only("classify")?;
    let graphs = load(input)?;
    let oracle = config.oracle();
    let catalog = Catalog::load_verified(&oracle).map_err(|e| CliError::Other(e.to_string()))?;
    let verdicts = per_graph(&graphs, |g| {
        classify(&g.graph, &catalog, &oracle, config.search()).map_err(|e| e.to_string())
    })?;
    let lines = graphs
        .iter()
        .zip(&verdicts)
        .map(|(g, v)| match config.format {
            Format::Jsonl => serde_json::to_string(&v.record(&g.label)).expect("serializable"),
            _ => v.tsv_line(&g.label),
        })
        .collect();
    Ok(Report::new(lines, true))
}

fn reduce(input: &str, target: Option<TargetArg>, config: &RunConfig) -> Result<Report, CliError> {
    let graphs = load(input)?;
    let oracle = config.oracle();
    let traces = per_graph(&graphs, |g| {
        let mut trace = reduce_greedy(&g.graph);
        let Some(target) = target else {
            return Ok(Some(trace));
        };
        let target = match target {
            TargetArg::K1 => Target::K1,
            TargetArg::K4 => Target::K4,
        };
        let rest = contracts_to(&trace.terminal, target, &oracle, config.search()).map_err(|e| e.to_string())?;
        Ok(rest.map(|rest| {
            trace.extend(rest);
            trace
        }))
    })?;
    let mut lines = Vec::new();
    for (g, trace) in graphs.iter().zip(&traces) {
        match (config.format, trace) {
            (Format::Jsonl, t) => lines.push(
                json!({"graph": g.label, "reached": t.is_some(), "trace": t.as_ref().map(ReductionTrace::records)})
                    .to_string(),
            ),
            (Format::Dot, Some(t)) => lines.push(t.terminal.to_dot().trim_end().to_owned()),
            (Format::Tsv, Some(t)) => {
                lines.push(format!("# {}", g.label));
                lines.extend(t.to_tsv().lines().map(str::to_owned));
            }
            (_, None) => lines.push(format!("# {}\ttarget not reached", g.label)),
        }
    }
    Ok(Report::new(lines, traces.iter().all(Option::is_some)))
}

fn census(min_n: usize, max_n: usize, config: &RunConfig) -> Result<Report, CliError> {
    config.three_only("census")?;
    if min_n > max_n {
        return Err(CliError::Config(format!("--min-n {min_n} exceeds --max-n {max_n}")));
    }
    let oracle = config.oracle();
    let catalog = Catalog::load_verified(&oracle).map_err(|e| CliError::Other(e.to_string()))?;
    let mut members: Vec<_> = census_range(min_n..=max_n, CensusConstraints::CLASSIFIABLE)
        .map_err(|e| CliError::Other(e.to_string()))?
        .into_iter()
        .flatten()
        .collect();
    members.sort_by(|a, b| a.form.cmp(&b.form));
    let rows = members
        .par_iter()
        .map(|c| -> Result<(String, OutcomeClass, bool, bool), CliError> {
            let label = c.graph6();
            let z3 = oracle
                .is_group_connected(&c.graph, 3)
                .map_err(|e| CliError::Graph(label.clone(), e.to_string()))?;
            let verdict = classify(&c.graph, &catalog, &oracle, config.search())
                .map_err(|e: ClassifyError| CliError::Graph(label.clone(), e.to_string()))?;
            let class = verdict.class();
            let agree = (class == OutcomeClass::Z3Connected) == z3;
            Ok((label, class, z3, agree))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut lines = Vec::with_capacity(rows.len() + 2);
    if config.format == Format::Tsv {
        lines.push("# graph6\tn\tm\toracle\toutcome\tagree".to_owned());
    }
    let mut counts = [0usize; 3];
    let mut disagreements = 0;
    for (c, (label, class, z3, agree)) in members.iter().zip(&rows) {
        counts[*class as usize] += 1;
        disagreements += usize::from(!agree);
        let oracle_text = if *z3 { "z3-connected" } else { "not-z3-connected" };
        lines.push(match config.format {
            Format::Jsonl => json!({
                "graph6": label, "n": c.graph.order(), "m": c.graph.size(),
                "oracle": oracle_text, "outcome": class, "agree": agree,
            })
            .to_string(),
            _ => format!(
                "{label}\t{}\t{}\t{oracle_text}\t{class}\t{agree}",
                c.graph.order(),
                c.graph.size()
            ),
        });
    }
    lines.push(match config.format {
        Format::Jsonl => json!({
            "summary": {
                "classes": rows.len(), "z3_connected": counts[0], "contracts_to_k4": counts[1],
                "exceptional": counts[2], "disagreements": disagreements,
            }
        })
        .to_string(),
        _ => format!(
            "# summary\tclasses={}\tz3-connected={}\tcontracts-to-k4={}\texceptional={}\tdisagreements={disagreements}",
            rows.len(),
            counts[0],
            counts[1],
            counts[2]
        ),
    });
    Ok(Report::new(lines, disagreements == 0))
}

fn catalog(action: &CatalogAction, config: &RunConfig) -> Result<Report, CliError> {
    config.three_only("catalog")?;
    let oracle = config.oracle();
    match action {
        CatalogAction::Show => {
            let table = Catalog::builtin_unverified().to_tsv();
            Ok(Report::new(table.lines().map(str::to_owned).collect(), true))
        }
        CatalogAction::Verify { file, derive } => {
            let entries = match file {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Io(path.display().to_string(), e))?;
                    parse_catalog(&text).map_err(|e| CliError::Other(e.to_string()))?
                }
                None => Catalog::builtin_unverified().entries().to_vec(),
            };
            let mut report = verify_catalog(&entries, &oracle);
            if *derive {
                let derived = derive_exception_set(4..=8, &oracle, SearchBudget::default())
                    .map_err(|e| CliError::Other(e.to_string()))?;
                let stored: std::collections::BTreeSet<_> =
                    entries.iter().map(|e| zconn_core::canonical_form(&e.graph)).collect();
                report.checks.push(zconn_core::catalog::Check {
                    subject: "catalog".into(),
                    check: "matches-census-derivation".into(),
                    passed: derived == stored,
                    detail: format!("{} derived classes", derived.len()),
                });
            }
            let lines = match config.format {
                Format::Jsonl => report
                    .checks
                    .iter()
                    .map(|c| serde_json::to_string(c).expect("serializable"))
                    .collect(),
                _ => report.to_tsv().lines().map(str::to_owned).collect(),
            };
            Ok(Report::new(lines, report.passed()))
        }
    }
}

fn convert(input: &str, to: ConvertTo) -> Result<Report, CliError> {
    let graphs = load(input)?;
    let mut lines = Vec::new();
    for g in &graphs {
        match to {
            ConvertTo::Dot => lines.push(g.graph.to_dot().trim_end().to_owned()),
            ConvertTo::Graph6 => lines.push(
                encode_graph6(&g.graph).map_err(|e| CliError::Graph(g.label.clone(), e.to_string()))?,
            ),
        }
    }
    Ok(Report::new(lines, true))
}

fn verify_trace(input: &str, config: &RunConfig) -> Result<Report, CliError> {
    let text = read_source(input)?;
    let trace = if text.trim_start().starts_with(['[', '{']) {
        let records: Vec<TraceRecord> = if text.trim_start().starts_with('[') {
            serde_json::from_str(&text).map_err(|e| CliError::Input(0, e.to_string()))?
        } else {
            text.lines()
                .filter(|l| !l.trim().is_empty())
                .enumerate()
                .map(|(i, l)| serde_json::from_str(l).map_err(|e| CliError::Input(i + 1, e.to_string())))
                .collect::<Result<_, _>>()?
        };
        ReductionTrace::from_records(&records)
    } else {
        ReductionTrace::from_tsv(&text)
    }
    .map_err(|e| CliError::Other(e.to_string()))?;
    Ok(match trace.verify(&config.oracle()) {
        Ok(()) => Report::new(
            vec![format!("valid\tsteps={}\tterminal={}", trace.len(), trace.terminal)],
            true,
        ),
        Err(e) => Report::new(vec![format!("invalid\t{e}")], false),
    })
}
