use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use dcover::{
    parse_graph6, read_graph6_file, run_census, scan_hierarchy, CdcReport, CensusOptions, Graph,
    GraphReport, PairReport,
};

/// Walk matrices, main eigenvalues and canonical double covers of small graphs.
///
/// Exit status: 0 on success, 1 when hierarchy violations or CDC-but-not-comain pairs are
/// found, 2 on any error.
#[derive(Parser)]
#[command(name = "dcover", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarise one graph6 string, or every graph in a graph6 file.
    Analyze {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare two graphs: relation profile, TF witness, relating matrix Q.
    Pair {
        a: String,
        b: String,
        /// Add isolated vertices to the smaller graph.
        #[arg(long)]
        pad: bool,
        #[arg(long)]
        json: bool,
    },
    /// Canonical double cover of a graph.
    Cdc {
        graph: String,
        #[arg(long)]
        json: bool,
    },
    /// Census of a graph6 corpus.
    Census {
        file: PathBuf,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the reported pairs as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Leave out per-stage timings, making the report reproducible byte for byte.
        #[arg(long)]
        omit_timings: bool,
    },
    /// Check every implication of the hierarchy on all pairs of a corpus.
    VerifyHierarchy {
        file: PathBuf,
        /// Only use graphs with at most this many vertices.
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

fn graph_arg(s: &str) -> Result<Graph> {
    parse_graph6(s).with_context(|| format!("parsing graph6 string {s:?}"))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn status(findings: bool) -> ExitCode {
    if findings {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { input, json } => {
            let graphs = if Path::new(&input).is_file() {
                read_graph6_file(&input).with_context(|| format!("reading {input}"))?
            } else {
                vec![graph_arg(&input)?]
            };
            let reports = graphs
                .iter()
                .map(GraphReport::new)
                .collect::<Result<Vec<_>, _>>()?;
            if json {
                if reports.len() == 1 {
                    print_json(&reports[0])?;
                } else {
                    print_json(&reports)?;
                }
            } else {
                let texts: Vec<String> = reports.iter().map(GraphReport::to_text).collect();
                print!("{}", texts.join("\n"));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pair { a, b, pad, json } => {
            let report = PairReport::new(&graph_arg(&a)?, &graph_arg(&b)?, pad)?;
            if json {
                print_json(&report)?;
            } else {
                print!("{}", report.to_text());
            }
            Ok(status(!report.violations.is_empty()))
        }
        Command::Cdc { graph, json } => {
            let report = CdcReport::new(&graph_arg(&graph)?)?;
            if json {
                print_json(&report)?;
            } else {
                print!("{}", report.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Census {
            file,
            out,
            csv,
            jobs,
            omit_timings,
        } => {
            let report = run_census(&file, &CensusOptions { jobs, omit_timings })
                .with_context(|| format!("census of {}", file.display()))?;
            if let Some(path) = &out {
                let mut body = serde_json::to_string_pretty(&report)?;
                body.push('\n');
                fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = &csv {
                fs::write(path, report.to_csv())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            print!("{}", report.to_text());
            Ok(status(report.has_findings()))
        }
        Command::VerifyHierarchy {
            file,
            max_order,
            jobs,
            json,
        } => {
            let graphs =
                read_graph6_file(&file).with_context(|| format!("reading {}", file.display()))?;
            let scan = scan_hierarchy(&graphs, max_order, jobs)?;
            if json {
                print_json(&scan)?;
            } else {
                println!("graphs considered  {}", scan.graphs_considered);
                println!("pairs checked      {}", scan.pairs_checked);
                println!("violations         {}", scan.violations.len());
                for v in &scan.violations {
                    let labels: Vec<&str> = v.labels.iter().map(|l| l.label()).collect();
                    println!("  {:>6} {:>6}  {}", v.i, v.j, labels.join(","));
                }
            }
            Ok(status(!scan.violations.is_empty()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
