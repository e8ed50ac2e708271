//! Command-line front end. The `treedim` binary is a thin wrapper around
//! [`run`].
//!
//! Exit codes: 0 success, 1 the checked set is not a landmark set, 2 usage
//! or input errors, 3 the tree is too large for exhaustive search.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::cost::Cost;
use crate::gen::{self, CostMode, TreeKind};
use crate::io::{emit_tree, parse_tree, ResultDocument};
use crate::oracle::{brute_min, verify_landmark_fast, Model, ModelKind, OracleError, DEFAULT_CAP};
use crate::solver::{solve, solve_classified};
use crate::topology::{classify, VertexClass};
use crate::tree::{VertexId, WeightedTree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

/// Environment variable that takes precedence over `gen --seed`.
pub const SEED_ENV: &str = "TREEDIM_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "treedim",
    version,
    about = "Minimum-cost landmark sets (non-landmarks model, k = 2) for vertex-weighted trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a minimum-cost landmark set.
    Solve {
        /// Tree file, or `-` for stdin.
        file: PathBuf,
        #[arg(long, conflicts_with = "explain")]
        json: bool,
        /// Show the per-core leg assignments.
        #[arg(long)]
        explain: bool,
    },
    /// Check whether a vertex set is a landmark set.
    Verify {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        landmarks: Vec<u32>,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value = "nl")]
        model: ModelKind,
    },
    /// Exhaustive minimum over all vertex subsets.
    Brute {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value = "nl")]
        model: ModelKind,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Print vertex classes, g-legs and the case tag.
    Classify {
        file: PathBuf,
        /// Emit a Graphviz digraph instead of text.
        #[arg(long)]
        dot: bool,
    },
    /// Write a generated tree file to stdout.
    Gen {
        #[arg(long)]
        kind: TreeKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// unit, random, or file (with --cost-file).
        #[arg(long, default_value = "unit")]
        costs: String,
        #[arg(long)]
        cost_file: Option<PathBuf>,
    },
    /// Time the solver on generated trees.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "100000,1000000")]
        sizes: Vec<usize>,
        #[arg(long, default_value = "random")]
        kind: TreeKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Best of this many runs per size.
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

/// Runs the command line `args` (program name first), reading the seed
/// override from the process environment.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with_seed_env(args, std::env::var(SEED_ENV).ok(), out, err)
}

/// Like [`run`], with the seed override passed explicitly.
pub fn run_with_seed_env<I, S>(
    args: I,
    seed_env: Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, seed_env, out) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        usage(e.to_string())
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn load(path: &Path) -> Result<WeightedTree, Failure> {
    let text = read_input(path)?;
    parse_tree(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn join(ids: &[VertexId]) -> String {
    ids.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn dispatch(command: Command, seed_env: Option<String>, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Solve {
            file,
            json,
            explain,
        } => {
            let tree = load(&file)?;
            let result = solve(&tree).map_err(|e| usage(e.to_string()))?;
            if json {
                writeln!(out, "{}", ResultDocument::new(&tree, &result).to_json())?;
                return Ok(EXIT_OK);
            }
            writeln!(out, "case: {}", result.case_tag.as_str())?;
            writeln!(out, "landmarks: {}", join(&result.landmarks))?;
            writeln!(out, "cost: {}", result.cost)?;
            if explain {
                for a in &result.explanation {
                    writeln!(out, "core {} (cost {}):", a.core, a.cost())?;
                    for leg in &a.legs {
                        writeln!(
                            out,
                            "  leg at {} [{}]: {} {{{}}}",
                            leg.root,
                            leg.kind.as_str(),
                            leg.solution_type,
                            join(&leg.vertices)
                        )?;
                    }
                }
                if let Some(v) = result.added_core_vertex {
                    writeln!(out, "added core vertex: {v}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            file,
            landmarks,
            k,
            model,
        } => {
            let tree = load(&file)?;
            let ids: Vec<VertexId> = landmarks.iter().map(|&x| VertexId(x)).collect();
            if let Some(bad) = ids.iter().find(|v| v.index() >= tree.len()) {
                return Err(usage(format!(
                    "landmark {bad} is out of range for a tree with {} vertices",
                    tree.len()
                )));
            }
            let verdict = verify_landmark_fast(&tree, &ids, Model::new(model, k), 10);
            if verdict.is_valid() {
                writeln!(out, "valid ({model}, k = {k})")?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "invalid ({model}, k = {k})")?;
                for v in &verdict.violations {
                    writeln!(
                        out,
                        "  pair ({}, {}) separated by {} landmark(s)",
                        v.x, v.y, v.separators
                    )?;
                }
                Ok(EXIT_INVALID)
            }
        }
        Command::Brute {
            file,
            k,
            model,
            cap,
        } => {
            let tree = load(&file)?;
            match brute_min(&tree, Model::new(model, k), cap) {
                Ok((set, cost)) => {
                    writeln!(out, "landmarks: {}", join(&set))?;
                    writeln!(out, "cost: {cost}")?;
                    Ok(EXIT_OK)
                }
                Err(e @ OracleError::TooLarge { .. }) => Err(Failure {
                    code: EXIT_TOO_LARGE,
                    message: e.to_string(),
                }),
                Err(e) => Err(usage(e.to_string())),
            }
        }
        Command::Classify { file, dot } => {
            let tree = load(&file)?;
            let topology = classify(&tree).map_err(|e| usage(e.to_string()))?;
            if dot {
                write_dot(&tree, &topology.class, out)?;
                return Ok(EXIT_OK);
            }
            writeln!(out, "vertex class")?;
            for (v, class) in topology.class.iter().enumerate() {
                writeln!(out, "{v} {}", class.label())?;
            }
            for core in &topology.cores {
                writeln!(out, "core {} [{}]", core.core, topology.class[core.core.index()].label())?;
                for leg in &core.legs {
                    writeln!(out, "  g-leg at {} [{}]: {}", leg.root, leg.kind.as_str(), join(&leg.vertices))?;
                }
            }
            writeln!(out, "case_tag={}", topology.case_tag.as_str())?;
            Ok(EXIT_OK)
        }
        Command::Gen {
            kind,
            n,
            seed,
            costs,
            cost_file,
        } => {
            let seed = match seed_env {
                Some(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("{SEED_ENV}={s:?} is not an unsigned integer")))?,
                None => seed,
            };
            let tree = match costs.as_str() {
                "file" => {
                    let path = cost_file.ok_or_else(|| usage("--costs file needs --cost-file"))?;
                    let values = read_costs(&path)?;
                    if values.len() != n {
                        return Err(usage(format!(
                            "{}: expected {n} costs, found {}",
                            path.display(),
                            values.len()
                        )));
                    }
                    let mut rng = gen::rng(seed);
                    let edges = gen::shape_edges(kind, n, &mut rng).map_err(|e| usage(e.to_string()))?;
                    WeightedTree::new(n, &edges, values).map_err(|e| usage(e.to_string()))?
                }
                other => {
                    let mode: CostMode = other.parse().map_err(|e: gen::GenError| usage(e.to_string()))?;
                    gen::generate(kind, n, seed, mode).map_err(|e| usage(e.to_string()))?
                }
            };
            out.write_all(emit_tree(&tree).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            sizes,
            kind,
            seed,
            repeats,
        } => {
            writeln!(out, "{:>10} {:>12} {:>14}", "n", "seconds", "ns_per_vertex")?;
            for n in sizes {
                let tree = gen::generate(kind, n, seed, CostMode::Random).map_err(|e| usage(e.to_string()))?;
                let secs = time_solve(&tree, repeats.max(1));
                writeln!(
                    out,
                    "{n:>10} {secs:>12.6} {:>14.1}",
                    secs * 1e9 / n.max(1) as f64
                )?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Best-of-`repeats` wall time of classification plus solving, in seconds.
pub fn time_solve(tree: &WeightedTree, repeats: usize) -> f64 {
    (0..repeats)
        .map(|_| {
            let start = Instant::now();
            let topology = classify(tree).expect("generated trees classify");
            let result = solve_classified(tree, &topology).expect("generated trees solve");
            std::hint::black_box(result);
            start.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

fn read_costs(path: &Path) -> Result<Vec<Cost>, Failure> {
    let text = read_input(path)?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for token in line.split_whitespace() {
            values.push(token.parse().map_err(|e| {
                usage(format!("{}: line {}: cost {token:?}: {e}", path.display(), i + 1))
            })?);
        }
    }
    Ok(values)
}

fn write_dot(tree: &WeightedTree, class: &[VertexClass], out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "graph tree {{")?;
    writeln!(out, "  node [style=filled];")?;
    for v in tree.vertices() {
        let color = match class[v.index()] {
            VertexClass::Isolated | VertexClass::PathVertex => "white",
            VertexClass::Leaf => "lightgray",
            VertexClass::SmallCore => "gold",
            VertexClass::RegularCore(crate::topology::CoreRank::Minor) => "lightblue",
            VertexClass::RegularCore(crate::topology::CoreRank::Main) => "tomato",
        };
        writeln!(
            out,
            "  {v} [label=\"{v}\\n{}\", fillcolor={color}, tooltip=\"{}\"];",
            tree.cost(v),
            class[v.index()].label()
        )?;
    }
    for (u, v) in tree.edges() {
        writeln!(out, "  {u} -- {v};")?;
    }
    writeln!(out, "}}")
}
