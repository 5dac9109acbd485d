//! `burnside`: certificates for matrix algebra generation.
//!
//! Matrices travel as JSON (`{"ring", "size", "entries"}`, single object
//! or array); reports are JSON on stdout, DOT graphs go to files. Exit
//! codes: 0 on success or PASS, 1 on FAIL/obstructed, 2 on INCONCLUSIVE,
//! 3 on usage or input errors.

use burnside_core::criteria::{
    check_laffey, check_thm_2gens, check_thm_qgens, CriteriaVerdict, CriterionStatus,
};
use burnside_core::graph::{build_graph, obstruction_verdict, scc, to_dot, BurnsideGraph};
use burnside_core::kippenhahn::{
    build_family, integer_grid, laffey_pair, verify_counterexample, FamilyParams,
};
use burnside_core::matrix::Matrix;
use burnside_core::oracle::algebra_dimension;
use burnside_core::scalar::Scalar;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "burnside",
    version,
    about = "Decide, with certificates, whether matrices generate the full matrix algebra",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Burnside graph of a matrix set as JSON
    Graph {
        #[arg(long)]
        input: PathBuf,
        /// Write the graph in DOT format to this file
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Strongly connected components in condensation order
    Scc {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Obstruction certificate: invariant subspace and Burnside form
    Obstruct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Span-closure dimension of the generated unital algebra
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run a sufficient-condition checker and print its verdict
    Certify {
        /// Matrix H, or the full matrix set for --theorem laffey
        #[arg(long)]
        input: PathBuf,
        /// Diagonal companion matrix K
        #[arg(long)]
        k: PathBuf,
        /// Block size (q for --theorem qgens; must be 2 for 2gens)
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, value_enum)]
        theorem: TheoremKind,
        #[arg(long = "max-word-len", default_value_t = 3)]
        max_word_len: usize,
    },
    /// Generate a counterexample family pair [H, K] and write it to a file
    KipGen {
        /// Half-size; matrices are 2n x 2n, n >= 4
        #[arg(long)]
        n: usize,
        /// Rational parameter, e.g. 1, -3, 1/2
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify the counterexample family and print the report
    KipVerify {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Inclusive integer sample range for both pencil coordinates,
        /// written lo..hi (default -2..2)
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Emit the classical 8x8 counterexample pair [H, K]
    Laffey {
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum TheoremKind {
    #[value(name = "2gens")]
    TwoGens,
    #[value(name = "qgens")]
    QGens,
    #[value(name = "laffey")]
    Laffey,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                let _ = err.print();
                return ExitCode::from(0);
            }
            eprintln!("{err}");
            return ExitCode::from(3);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn load_matrix_set(path: &Path) -> Result<Vec<Matrix>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let items: Vec<serde_json::Value> = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    if items.is_empty() {
        return Err(format!("{}: empty matrix list", path.display()));
    }
    items
        .into_iter()
        .enumerate()
        .map(|(idx, item)| {
            serde_json::from_value(item)
                .map_err(|e| format!("{}: matrix {}: {e}", path.display(), idx + 1))
        })
        .collect()
}

fn load_single_matrix(path: &Path) -> Result<Matrix, String> {
    let set = load_matrix_set(path)?;
    if set.len() != 1 {
        return Err(format!(
            "{}: expected exactly one matrix, found {}",
            path.display(),
            set.len()
        ));
    }
    Ok(set.into_iter().next().unwrap())
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serialization cannot fail")
    );
}

fn write_dot(graph: &BurnsideGraph, path: Option<&Path>) -> Result<(), String> {
    if let Some(path) = path {
        std::fs::write(path, to_dot(graph)).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn parse_parameter(text: &str) -> Result<Scalar, String> {
    text.parse::<Scalar>().map_err(|e| e.to_string())
}

fn parse_grid(range: Option<&str>) -> Result<Vec<(Scalar, Scalar)>, String> {
    let (lo, hi) = match range {
        None => (-2, 2),
        Some(text) => {
            let (lo, hi) = text
                .split_once("..")
                .ok_or_else(|| format!("grid must be written lo..hi, got {text:?}"))?;
            let lo: i64 = lo
                .trim()
                .parse()
                .map_err(|_| format!("bad grid bound {lo:?}"))?;
            let hi: i64 = hi
                .trim()
                .parse()
                .map_err(|_| format!("bad grid bound {hi:?}"))?;
            (lo, hi)
        }
    };
    if lo > hi {
        return Err(format!("empty grid range {lo}..{hi}"));
    }
    Ok(integer_grid(lo, hi))
}

#[derive(Serialize)]
struct OracleJson {
    dimension: usize,
    full: bool,
}

fn status_code(status: CriterionStatus) -> u8 {
    match status {
        CriterionStatus::Pass => 0,
        CriterionStatus::FailObstructed => 1,
        CriterionStatus::Inconclusive => 2,
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Graph { input, dot } => {
            let set = load_matrix_set(&input)?;
            let graph = build_graph(&set).map_err(|e| e.to_string())?;
            write_dot(&graph, dot.as_deref())?;
            print_json(&graph.to_json());
            Ok(0)
        }
        Command::Scc { input, dot } => {
            let set = load_matrix_set(&input)?;
            let graph = build_graph(&set).map_err(|e| e.to_string())?;
            write_dot(&graph, dot.as_deref())?;
            print_json(&scc(&graph).to_json());
            Ok(0)
        }
        Command::Obstruct { input, dot } => {
            let set = load_matrix_set(&input)?;
            let graph = build_graph(&set).map_err(|e| e.to_string())?;
            write_dot(&graph, dot.as_deref())?;
            let verdict = obstruction_verdict(&set).map_err(|e| e.to_string())?;
            let obstructed = !verdict.strongly_connected;
            print_json(&verdict.to_json());
            Ok(if obstructed { 1 } else { 0 })
        }
        Command::Oracle { input, dot } => {
            let set = load_matrix_set(&input)?;
            let graph = build_graph(&set).map_err(|e| e.to_string())?;
            write_dot(&graph, dot.as_deref())?;
            let dimension = algebra_dimension(&set, true).map_err(|e| e.to_string())?;
            let n = set[0].rows();
            print_json(&OracleJson {
                dimension,
                full: dimension == n * n,
            });
            Ok(0)
        }
        Command::Certify {
            input,
            k,
            p,
            theorem,
            max_word_len,
        } => {
            let verdict: CriteriaVerdict = match theorem {
                TheoremKind::TwoGens => {
                    if p != 2 {
                        return Err(format!("--theorem 2gens requires --p 2, got {p}"));
                    }
                    let h = load_single_matrix(&input)?;
                    let k = load_single_matrix(&k)?;
                    check_thm_2gens(&h, &k, max_word_len).map_err(|e| e.to_string())?
                }
                TheoremKind::QGens => {
                    let h = load_single_matrix(&input)?;
                    let k = load_single_matrix(&k)?;
                    check_thm_qgens(&h, &k, p, max_word_len).map_err(|e| e.to_string())?
                }
                TheoremKind::Laffey => {
                    let set = load_matrix_set(&input)?;
                    let b = load_single_matrix(&k)?;
                    check_laffey(&set, &b).map_err(|e| e.to_string())?
                }
            };
            let code = status_code(verdict.status);
            print_json(&verdict.to_json());
            Ok(code)
        }
        Command::KipGen { n, b, out } => {
            let b = parse_parameter(&b)?;
            let params = FamilyParams::new(n, b).map_err(|e| e.to_string())?;
            let pair = build_family(&params);
            let text = serde_json::to_string_pretty(&[&pair.h, &pair.k])
                .expect("serialization cannot fail");
            std::fs::write(&out, text + "\n").map_err(|e| format!("{}: {e}", out.display()))?;
            Ok(0)
        }
        Command::KipVerify { n, b, grid } => {
            let b = parse_parameter(&b)?;
            let params = FamilyParams::new(n, b).map_err(|e| e.to_string())?;
            let grid = parse_grid(grid.as_deref())?;
            let report = verify_counterexample(&params, &grid, 3).map_err(|e| e.to_string())?;
            let code = if report.pass { 0 } else { 1 };
            print_json(&report.to_json());
            Ok(code)
        }
        Command::Laffey { out } => {
            let (h, k) = laffey_pair();
            let text = serde_json::to_string_pretty(&[&h, &k]).expect("serialization cannot fail");
            match out {
                Some(path) => {
                    std::fs::write(&path, text + "\n")
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                }
                None => println!("{text}"),
            }
            Ok(0)
        }
    }
}
