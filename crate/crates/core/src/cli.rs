//! `chipfire` command line front end.
//!
//! Every subcommand prints one JSON object on stdout and a short human summary
//! on stderr. Exit codes: 0 success, 1 domain error, 2 usage error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bounds;
use crate::divisor::{self, Divisor, DivisorError};
use crate::gonality::{self, SearchConfig};
use crate::graph::{MultiGraph, NodeId};
use crate::oracles;
use crate::reduction::{self, CertificateRecord};

pub const WORKERS_ENV: &str = "CHIPFIRE_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "chipfire", version, about = "Divisors, rank and gonality on multigraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph file in the `node` / `edge` text format.
    pub file: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact gonality with a witness divisor.
    Gonality {
        #[command(flatten)]
        graph: GraphArg,
        /// Base point for the reduced-divisor search.
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        max_degree: Option<u64>,
        /// Worker threads (the CHIPFIRE_WORKERS variable takes precedence).
        #[arg(long)]
        workers: Option<usize>,
        /// Start the search at the spectral lower bound.
        #[arg(long)]
        spectral_pruning: bool,
        /// Cross-check against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Baker-Norine rank of a divisor.
    Rank {
        #[command(flatten)]
        graph: GraphArg,
        /// `1,0,2` in node order or `name:count,...`.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long)]
        oracle: bool,
    },
    /// q-reduced form of a divisor and the firing script reaching it.
    Reduce {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long)]
        q: Option<String>,
    },
    /// Build the independent-set gadget of a graph.
    Gadget {
        #[command(flatten)]
        graph: GraphArg,
        /// Write the gadget graph here instead of embedding it in the output.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Certificate divisor on the gadget for an independent set, with verification.
    Certify {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated node names; defaults to a maximum independent set.
        #[arg(long)]
        set: Option<String>,
        /// Worker threads for the verification (CHIPFIRE_WORKERS takes precedence).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Independence number by brute force, and the gadget gonality it predicts.
    Alpha {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Spectral lower bound and the conjectured upper bound.
    Bounds {
        #[command(flatten)]
        graph: GraphArg,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutcome {
    pub output: Value,
    pub summary: String,
    pub exit_code: i32,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<DivisorError> for Failure {
    fn from(e: DivisorError) -> Self {
        match e {
            DivisorError::Literal(_) | DivisorError::LengthMismatch { .. } => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn load_graph(path: &Path) -> Result<MultiGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    MultiGraph::parse(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn node_arg(g: &MultiGraph, name: Option<&str>) -> Result<NodeId, Failure> {
    match name {
        None => Ok(NodeId(0)),
        Some(n) => g.node_by_name(n).ok_or_else(|| Failure::Usage(format!("unknown node `{n}`"))),
    }
}

fn names(g: &MultiGraph, nodes: &[NodeId]) -> Vec<String> {
    nodes.iter().map(|&v| g.name(v).to_string()).collect()
}

/// Runs one parsed command. `env_workers` is the value of `CHIPFIRE_WORKERS`.
pub fn run(cli: Cli, env_workers: Option<&str>) -> CommandOutcome {
    match dispatch(cli.command, env_workers) {
        Ok((output, summary, exit_code)) => CommandOutcome { output, summary, exit_code },
        Err(Failure::Usage(msg)) => {
            CommandOutcome { output: json!({ "error": msg, "kind": "usage" }), summary: format!("error: {msg}"), exit_code: 2 }
        }
        Err(Failure::Domain(msg)) => {
            CommandOutcome { output: json!({ "error": msg, "kind": "domain" }), summary: format!("error: {msg}"), exit_code: 1 }
        }
    }
}

/// Parses `args` (program name first) and runs the command. Usage errors from
/// argument parsing come back as exit code 2.
pub fn run_args<I, T>(args: I, env_workers: Option<&str>) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, env_workers),
        Err(e) => CommandOutcome {
            output: json!({ "error": e.to_string(), "kind": "usage" }),
            summary: e.to_string(),
            exit_code: 2,
        },
    }
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let env = std::env::var(WORKERS_ENV).ok();
    let outcome = run(cli, env.as_deref());
    println!("{}", serde_json::to_string_pretty(&outcome.output).expect("json output"));
    eprintln!("{}", outcome.summary);
    outcome.exit_code
}

fn resolve_workers(flag: Option<usize>, env_workers: Option<&str>) -> Result<usize, Failure> {
    let workers = match env_workers {
        Some(w) => w.trim().parse().map_err(|_| Failure::Usage(format!("{WORKERS_ENV}=`{w}` is not a count")))?,
        None => flag.unwrap_or_else(|| SearchConfig::default().workers),
    };
    if workers == 0 {
        return Err(Failure::Usage("worker count must be at least 1".into()));
    }
    Ok(workers)
}

type Dispatched = Result<(Value, String, i32), Failure>;

fn dispatch(command: Command, env_workers: Option<&str>) -> Dispatched {
    match command {
        Command::Gonality { graph, q, max_degree, workers, spectral_pruning, oracle } => {
            let g = load_graph(&graph.file)?;
            let base_point = node_arg(&g, q.as_deref())?;
            let workers = resolve_workers(workers, env_workers)?;
            let cfg = SearchConfig { base_point, max_degree, workers, spectral_pruning };
            let result = gonality::gonality(&g, &cfg).map_err(domain)?;
            let mut out = json!({
                "gonality": result.gonality,
                "witness": result.witness,
                "witness_named": result.witness.to_named(&g),
                "candidates_examined": result.candidates_examined,
                "degree_schedule": result.degree_schedule,
            });
            let mut summary = format!("gonality {}", result.gonality);
            if oracle {
                let expected = oracles::gonality_bruteforce(&g).map_err(domain)?;
                out["oracle_gonality"] = json!(expected);
                if expected != result.gonality {
                    return Err(Failure::Domain(format!(
                        "solver gonality {} disagrees with oracle {expected}",
                        result.gonality
                    )));
                }
                summary.push_str(" (oracle agrees)");
            }
            Ok((out, summary, 0))
        }
        Command::Rank { graph, divisor, oracle } => {
            let g = load_graph(&graph.file)?;
            let d = Divisor::parse_literal(&divisor, &g)?;
            let r = divisor::rank(&g, &d)?;
            let mut out = json!({ "rank": r, "divisor": d });
            if oracle {
                let expected = oracles::rank_bruteforce(&g, &d).map_err(domain)?;
                out["oracle_rank"] = json!(expected);
                if expected != r {
                    return Err(Failure::Domain(format!("solver rank {r} disagrees with oracle {expected}")));
                }
            }
            Ok((out, format!("rank {r}"), 0))
        }
        Command::Reduce { graph, divisor, q } => {
            let g = load_graph(&graph.file)?;
            let d = Divisor::parse_literal(&divisor, &g)?;
            let q = node_arg(&g, q.as_deref())?;
            let r = divisor::reduce(&g, &d, q)?;
            let out = json!({
                "q": g.name(q),
                "reduced": r.reduced,
                "reduced_named": r.reduced.to_named(&g),
                "script": r.script,
            });
            Ok((out, format!("reduced {}", r.reduced), 0))
        }
        Command::Gadget { graph, output } => {
            let g = load_graph(&graph.file)?;
            let gadget = reduction::build_gadget(&g);
            let ghat = gadget.graph();
            let roles: Vec<Value> =
                ghat.nodes().map(|w| json!({ "name": ghat.name(w), "role": gadget.describe_role(w) })).collect();
            let mut out = json!({
                "m": gadget.m(),
                "nodes": ghat.node_count(),
                "edges": ghat.edge_count(),
                "roles": roles,
            });
            match output {
                Some(path) => {
                    std::fs::write(&path, gadget.to_string())
                        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
                    out["written_to"] = json!(path.display().to_string());
                }
                None => out["graph"] = json!(gadget.to_string()),
            }
            Ok((out, format!("gadget with {} nodes, M = {}", ghat.node_count(), gadget.m()), 0))
        }
        Command::Certify { graph, set, workers } => {
            let workers = resolve_workers(workers, env_workers)?;
            let g = load_graph(&graph.file)?;
            let chosen: Vec<NodeId> = match set {
                Some(list) => list
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| node_arg(&g, Some(s)))
                    .collect::<Result<_, _>>()?,
                None => oracles::alpha_bruteforce(&g).map_err(domain)?.1,
            };
            let gadget = reduction::build_gadget(&g);
            let cert = reduction::certificate_divisor(&gadget, &chosen).map_err(domain)?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(domain)?;
            let report = pool.install(|| reduction::verify_certificate(&gadget, &cert)).map_err(domain)?;
            let ghat = gadget.graph();
            let out = json!({
                "certificate": CertificateRecord::new(&gadget, &cert),
                "verification": {
                    "schedule_effective": report.schedule_effective,
                    "schedule_delivers": report.schedule_delivers,
                    "covered_nodes": names(ghat, &report.covered_nodes),
                    "reduction_confirms": report.reduction_confirms,
                    "positive_rank_confirmed": report.positive_rank_confirmed,
                },
                "gadget": { "m": gadget.m(), "nodes": ghat.node_count() },
            });
            let code = if report.positive_rank_confirmed { 0 } else { 1 };
            let verdict = if report.positive_rank_confirmed { "verified" } else { "NOT verified" };
            Ok((out, format!("certificate degree {}, {verdict}", cert.degree()), code))
        }
        Command::Alpha { graph } => {
            let g = load_graph(&graph.file)?;
            let (alpha, witness) = oracles::alpha_bruteforce(&g).map_err(domain)?;
            let predicted = reduction::certificate_degree(&g, alpha);
            let out = json!({
                "alpha": alpha,
                "witness": names(&g, &witness),
                "gadget_gonality": predicted,
            });
            Ok((out, format!("alpha {alpha}"), 0))
        }
        Command::Bounds { graph } => {
            let g = load_graph(&graph.file)?;
            let report = bounds::bounds_report(&g).map_err(domain)?;
            let summary = format!(
                "{} <= gonality <= {}; spectral {:?}; conjectured upper {}",
                report.trivial_lower, report.trivial_upper, report.spectral_lower, report.brill_noether_conjecture
            );
            Ok((serde_json::to_value(&report).expect("json"), summary, 0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn graph_file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    fn run_on(file: &tempfile::NamedTempFile, args: &[&str]) -> CommandOutcome {
        let mut full = vec!["chipfire".to_string(), args[0].to_string(), file.path().display().to_string()];
        full.extend(args[1..].iter().map(|s| s.to_string()));
        run_args(full, None)
    }

    const K2: &str = "node a\nnode b\nedge a b 1\n";

    #[test]
    fn gonality_command() {
        let f = graph_file(K2);
        let out = run_on(&f, &["gonality", "--oracle"]);
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.summary, "gonality 1 (oracle agrees)");
        let c3 = graph_file("node a\nnode b\nnode c\nedge a b 1\nedge b c 1\nedge a c 1\n");
        assert_eq!(run_on(&c3, &["gonality"]).output["gonality"], 2);
        let split = graph_file("node a\nnode b\n");
        assert_eq!(run_on(&split, &["gonality"]).exit_code, 1);
    }

    #[test]
    fn rank_and_reduce_commands() {
        let f = graph_file(K2);
        assert_eq!(run_on(&f, &["rank", "--divisor", "1,0", "--oracle"]).output["rank"], 1);
        assert_eq!(run_on(&f, &["rank", "--divisor", "\u{2212}1,0"]).output["rank"], -1);
        assert_eq!(run_on(&f, &["rank", "--divisor", "-1,0"]).output["rank"], -1);
        assert_eq!(run_on(&f, &["rank", "--divisor", "1,x"]).exit_code, 2);
        let r = run_on(&f, &["reduce", "--divisor", "2,0", "--q", "b"]);
        assert_eq!(r.output["reduced"]["values"], json!([0, 2]));
        assert_eq!(run_on(&f, &["reduce", "--divisor", "2,0", "--q", "zz"]).exit_code, 2);
    }

    #[test]
    fn gadget_certify_alpha_bounds() {
        let f = graph_file(K2);
        let g = run_on(&f, &["gadget"]);
        assert_eq!((g.output["m"].clone(), g.output["nodes"].clone()), (json!(10), json!(9)));
        let c = run_on(&f, &["certify", "--set", "a"]);
        assert_eq!(c.exit_code, 0);
        assert_eq!(c.output["certificate"]["degree"], 9);
        assert_eq!(run_on(&f, &["certify", "--set", "a,b"]).exit_code, 1);
        assert_eq!(run_on(&f, &["certify"]).exit_code, 0);
        assert_eq!(run_on(&f, &["alpha"]).output["alpha"], 1);
        assert_eq!(run_on(&f, &["bounds"]).output["brill_noether_conjecture"], 1);
        assert_eq!(run_args(["chipfire", "frobnicate"], None).exit_code, 2);
    }

    #[test]
    fn gadget_file_output_parses() {
        let f = graph_file("node a\nnode b\nnode c\nnode d\nedge a b 1\nedge b c 1\nedge c d 1\nedge a d 1\n");
        let dir = tempfile::tempdir().unwrap();
        let out_path = dir.path().join("ghat.txt");
        let out = run_on(&f, &["gadget", "-o", out_path.to_str().unwrap()]);
        assert_eq!(out.exit_code, 0);
        let text = std::fs::read_to_string(&out_path).unwrap();
        assert!(text.contains("# M = 22"));
        assert_eq!(MultiGraph::parse(&text).unwrap().node_count(), 21);
    }

    #[test]
    fn env_workers_must_be_numeric() {
        let f = graph_file(K2);
        let args = ["chipfire", "gonality", f.path().to_str().unwrap()];
        assert_eq!(run_args(args, Some("four")).exit_code, 2);
        assert_eq!(run_args(args, Some("4")).exit_code, 0);
        let certify = ["chipfire", "certify", f.path().to_str().unwrap(), "--workers", "0"];
        assert_eq!(run_args(certify, None).exit_code, 2);
        assert_eq!(run_args(certify, Some("2")).exit_code, 0);
    }
}
