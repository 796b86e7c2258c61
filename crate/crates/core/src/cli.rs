//! Command-line front end. Every command renders deterministic text; the
//! `dbb` binary is a thin wrapper around [`main_with_args`].

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, Zero};

use crate::balance::{poisson_residual, BalanceReport, EdgeWeightAssignment};
use crate::cycles::{
    cycle_listing, edge_cost_projection, enumerate_simple_cycles, verify_equal_means,
    DEFAULT_CYCLE_CAP,
};
use crate::error::{Error, Result};
use crate::general::{general_value_table, k_regular_value_table};
use crate::graph::{
    parse_digraph, parse_vertex_weights, serialize_digraph, DeBruijnGraph, Digraph, DirectedGraph,
    VertexWeights,
};
use crate::rational::{format_rational, Precision, Rational};
use crate::value::{
    solve_dpp, solve_mixed_unchecked, solve_schedule, GameConfig, GameVariant, TurnRole, TurnSet,
    ValueTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dbb",
    version,
    about = "Balanced edge weights on de Bruijn graphs"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the primary output here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Render rationals as decimals with this many digits (half-to-even).
    #[arg(long, global = true)]
    pub decimal: Option<u32>,
    #[arg(long = "cycle-cap", env = "DBB_CYCLE_CAP", global = true, default_value_t = DEFAULT_CYCLE_CAP)]
    pub cycle_cap: usize,
}

#[derive(Debug, Args)]
pub struct DeBruijnArgs {
    /// Number of symbols.
    #[arg(long)]
    pub n: usize,
    /// Word length.
    #[arg(long)]
    pub d: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write B(n, d) as an edge list.
    Build(DeBruijnArgs),
    /// Solve the game and print `t vertex value` lines.
    Solve {
        #[command(flatten)]
        graph: DeBruijnArgs,
        #[arg(long = "T")]
        horizon: usize,
        #[arg(long)]
        weights: PathBuf,
        /// Turns (comma separated) on which Paul picks weights; the rest are swapped.
        #[arg(long)]
        mixed: Option<String>,
        #[arg(long, conflicts_with = "mixed")]
        maxmin: bool,
    },
    /// Compute the balanced edge weights and a balance report.
    Balance {
        #[command(flatten)]
        graph: DeBruijnArgs,
        #[arg(long)]
        weights: PathBuf,
    },
    /// Check that every cycle has the global mean weight.
    Verify {
        #[arg(long, required_unless_present = "graph", requires = "d")]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, conflicts_with = "n")]
        graph: Option<PathBuf>,
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        edges: PathBuf,
        /// Also list every simple cycle with its mean.
        #[arg(long)]
        list_cycles: bool,
    },
    /// Value table of the uniform-walk game on an arbitrary sink-free digraph.
    General {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        weights: PathBuf,
        #[arg(long = "T")]
        horizon: usize,
    },
    /// Balance, then verify, in one report.
    Report {
        #[command(flatten)]
        graph: DeBruijnArgs,
        #[arg(long)]
        weights: PathBuf,
    },
}

/// Rendered result of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    /// Goes to `--out` when given, else stdout.
    pub primary: String,
    /// Always goes to stdout.
    pub report: Option<String>,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(primary: String) -> Self {
        Self {
            primary,
            report: None,
            exit_code: EXIT_OK,
        }
    }
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::Equality(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn load_weights(path: &Path, vertex_count: usize) -> Result<VertexWeights> {
    parse_vertex_weights(&read(path)?, vertex_count)
}

fn table_text(table: &ValueTable, precision: Precision) -> String {
    let mut out = String::new();
    for t in 0..=table.horizon() {
        for (m, v) in table.slice(t).iter().enumerate() {
            let _ = writeln!(out, "{t} {m} {}", format_rational(v, precision));
        }
    }
    out
}

fn max_poisson_residual(g: &DeBruijnGraph, c: &VertexWeights) -> Result<Rational> {
    let cfg = GameConfig::new(g.clone(), c.clone(), g.word_length() + 2)?;
    let table = solve_dpp(&cfg);
    let mut worst = Rational::zero();
    for t in 0..cfg.horizon - g.word_length() {
        for r in poisson_residual(&cfg, &table, t)? {
            if r.abs() > worst {
                worst = r.abs();
            }
        }
    }
    Ok(worst)
}

pub fn cmd_build(n: usize, d: usize) -> Result<CommandOutput> {
    Ok(CommandOutput::ok(serialize_digraph(&DeBruijnGraph::new(
        n, d,
    )?)))
}

pub fn cmd_solve(
    n: usize,
    d: usize,
    horizon: usize,
    c: VertexWeights,
    mixed: Option<&str>,
    maxmin: bool,
    precision: Precision,
) -> Result<CommandOutput> {
    let cfg = GameConfig::new(DeBruijnGraph::new(n, d)?, c, horizon)?;
    let baseline = solve_dpp(&cfg);
    let (table, check) = if let Some(list) = mixed {
        let turns = TurnSet::parse(horizon, list)?;
        let table = solve_mixed_unchecked(&cfg, &turns)?;
        let same = table.same_values(&baseline);
        (table, Some(format!("mixed_equals_baseline {same}")))
    } else if maxmin {
        let table = solve_schedule(&cfg, |_| TurnRole::CarolSetsWeights, GameVariant::MaxMin);
        let same = table.same_values(&baseline);
        (table, Some(format!("maxmin_equals_baseline {same}")))
    } else {
        (baseline, None)
    };
    let mut out = table_text(&table, precision);
    let mut exit_code = EXIT_OK;
    if let Some(line) = check {
        if line.ends_with("false") {
            exit_code = EXIT_VERIFY_FAILED;
        }
        out.push_str(&line);
        out.push('\n');
    }
    Ok(CommandOutput {
        primary: out,
        report: None,
        exit_code,
    })
}

pub fn cmd_balance(
    n: usize,
    d: usize,
    c: VertexWeights,
    cycle_cap: usize,
    precision: Precision,
) -> Result<CommandOutput> {
    let g = DeBruijnGraph::new(n, d)?;
    c.check_len(g.vertex_count())?;
    let cycles = enumerate_simple_cycles(&g.to_digraph(), cycle_cap).ok();
    let (f, report) = BalanceReport::compute(&g, &c, cycles.as_deref())?;
    Ok(CommandOutput {
        primary: f.to_text(precision),
        report: Some(report.to_text(precision)),
        exit_code: EXIT_OK,
    })
}

pub fn cmd_verify(
    graph: &Digraph,
    c: &VertexWeights,
    f: &EdgeWeightAssignment,
    cycle_cap: usize,
    list_cycles: bool,
    precision: Precision,
) -> Result<CommandOutput> {
    c.check_len(graph.vertex_count())?;
    let report = verify_equal_means(graph, c, f, cycle_cap)?;
    let mut out = report.to_text(precision);
    let mut poisson_ok = true;
    if let Some(dbg) = DeBruijnGraph::recognize(graph) {
        let worst = max_poisson_residual(&dbg, c)?;
        poisson_ok = worst.is_zero();
        let _ = writeln!(
            out,
            "poisson_residual_max {}",
            format_rational(&worst, precision)
        );
    }
    let unbalanced = f.first_unbalanced_vertex(graph.vertex_count());
    let _ = writeln!(
        out,
        "sum_zero {}",
        unbalanced.map_or("true".to_string(), |v| format!("false (vertex {v})"))
    );
    if list_cycles && report.enumeration_complete {
        let costs = edge_cost_projection(graph, c, f)?;
        out.push_str(&cycle_listing(graph, &costs, cycle_cap, precision)?);
    }
    let exit_code = if !report.all_equal || !poisson_ok {
        EXIT_VERIFY_FAILED
    } else if !report.enumeration_complete {
        EXIT_CAPACITY
    } else {
        EXIT_OK
    };
    Ok(CommandOutput {
        primary: out,
        report: None,
        exit_code,
    })
}

pub fn cmd_general(
    graph: &Digraph,
    c: &VertexWeights,
    horizon: usize,
    precision: Precision,
) -> Result<CommandOutput> {
    let table = general_value_table(graph, c, horizon)?;
    let mut out = table_text(&table, precision);
    if graph.regular_degree().is_ok() {
        let same = k_regular_value_table(graph, c, horizon)?.same_values(&table);
        let _ = writeln!(out, "k_regular_cross_check {same}");
    }
    Ok(CommandOutput::ok(out))
}

pub fn cmd_report(
    n: usize,
    d: usize,
    c: VertexWeights,
    cycle_cap: usize,
    precision: Precision,
) -> Result<CommandOutput> {
    let g = DeBruijnGraph::new(n, d)?;
    c.check_len(g.vertex_count())?;
    let dg = g.to_digraph();
    let cycles = enumerate_simple_cycles(&dg, cycle_cap).ok();
    let (f, balance) = BalanceReport::compute(&g, &c, cycles.as_deref())?;
    let verify = cmd_verify(&dg, &c, &f, cycle_cap, false, precision)?;
    let mut out = balance.to_text(precision);
    out.push_str(&verify.primary);
    Ok(CommandOutput {
        primary: out,
        report: None,
        exit_code: verify.exit_code,
    })
}

pub fn execute(config: &RunConfig) -> Result<CommandOutput> {
    let precision = config.decimal.map_or(Precision::Exact, Precision::Decimal);
    let cap = config.cycle_cap;
    match &config.command {
        Command::Build(DeBruijnArgs { n, d }) => cmd_build(*n, *d),
        Command::Solve {
            graph,
            horizon,
            weights,
            mixed,
            maxmin,
        } => {
            let g = DeBruijnGraph::new(graph.n, graph.d)?;
            let c = load_weights(weights, g.vertex_count())?;
            cmd_solve(
                graph.n,
                graph.d,
                *horizon,
                c,
                mixed.as_deref(),
                *maxmin,
                precision,
            )
        }
        Command::Balance { graph, weights } => {
            let g = DeBruijnGraph::new(graph.n, graph.d)?;
            let c = load_weights(weights, g.vertex_count())?;
            cmd_balance(graph.n, graph.d, c, cap, precision)
        }
        Command::Verify {
            n,
            d,
            graph,
            weights,
            edges,
            list_cycles,
        } => {
            let g = match (graph, n, d) {
                (Some(path), _, _) => parse_digraph(&read(path)?)?,
                (None, Some(n), Some(d)) => DeBruijnGraph::new(*n, *d)?.to_digraph(),
                _ => {
                    return Err(Error::Domain(
                        "verify needs --graph or both --n and --d".into(),
                    ))
                }
            };
            let c = load_weights(weights, g.vertex_count())?;
            let f = EdgeWeightAssignment::parse(&read(edges)?, &g)?;
            cmd_verify(&g, &c, &f, cap, *list_cycles, precision)
        }
        Command::General {
            graph,
            weights,
            horizon,
        } => {
            let g = parse_digraph(&read(graph)?)?;
            let c = load_weights(weights, g.vertex_count())?;
            cmd_general(&g, &c, *horizon, precision)
        }
        Command::Report { graph, weights } => {
            let g = DeBruijnGraph::new(graph.n, graph.d)?;
            let c = load_weights(weights, g.vertex_count())?;
            cmd_report(graph.n, graph.d, c, cap, precision)
        }
    }
}

/// Writes via a sibling temp file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Parses `args`, runs the command, prints to the given sinks, returns the exit code.
pub fn main_with_args<I, T>(
    args: I,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if code == EXIT_OK {
                let _ = write!(stdout, "{e}");
            } else {
                let _ = write!(stderr, "{e}");
            }
            return code;
        }
    };
    let output = match execute(&config) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code_for(&e);
        }
    };
    match &config.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &output.primary) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = stdout.write_all(output.primary.as_bytes());
        }
    }
    if let Some(report) = &output.report {
        let _ = stdout.write_all(report.as_bytes());
    }
    output.exit_code
}
