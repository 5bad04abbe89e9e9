//! Command-line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use super::session::{snapshot_of, DEFAULT_RNG_SEED};
use super::{error_report, exit_code, render, EXIT_CHECK, EXIT_OK, EXIT_USAGE};
use crate::braid::BraidWord;
use crate::cluster::{exchange_graph, explore, Seed, DEFAULT_BUDGET, DEFAULT_SAMPLES};
use crate::flags::{check_minor_identity, check_x_duality, sample_conf, square_move_check, SquareConfig};
use crate::pinch::{pinch_cluster_count, pinch_count, two_braid_classes};
use crate::plabic::{fan_triangulation, le_graph, plabic_orbit_count, triangulation_graph, zigzag_triangulation, PlabicGraph};
use crate::separated::weakly_separated_count;
use crate::weave::compile_braid_weave;
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "fillings", version, about = "Counts and identity checks for fillings of positive braid closures")]
pub struct Cli {
    /// Human-readable output instead of JSON lines.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count weakly separated collections, plabic orbits, clusters or pinch fillings.
    #[command(subcommand)]
    Count(CountCmd),
    /// Compile the weave of a braid.
    #[command(subcommand)]
    Compile(CompileCmd),
    /// Check an identity at random exact points.
    Verify(VerifyArgs),
    /// Export an exchange graph.
    #[command(subcommand)]
    Export(ExportCmd),
    /// Run the HTTP session service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SeedArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_RNG_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Subcommand, Debug)]
pub enum CountCmd {
    Separated {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Square-move orbit of a reduced plabic graph: the Le graph of Gr(k,m),
    /// a polygon triangulation, or a `plabic.v1` file.
    PlabicOrbit {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum)]
        triangulation: Option<TriangulationKind>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        limit: usize,
    },
    Clusters {
        #[arg(long)]
        braid: String,
        #[command(flatten)]
        seed: SeedArgs,
    },
    Pinch {
        #[arg(long)]
        braid: String,
        #[command(flatten)]
        seed: SeedArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum TriangulationKind {
    Fan,
    Zigzag,
}

#[derive(Subcommand, Debug)]
pub enum CompileCmd {
    Weave {
        #[arg(long)]
        braid: String,
        /// Also write an SVG drawing.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Minors,
    Duality,
    SquareMove,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub identity: Identity,
    #[arg(long, default_value = "s1^3")]
    pub braid: String,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_RNG_SEED)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum ExportCmd {
    Exchange {
        #[arg(long)]
        braid: String,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Stop at this many mutations from the initial seed.
        #[arg(long)]
        depth: Option<usize>,
        #[command(flatten)]
        seed: SeedArgs,
    },
}

/// Result of a command: the rendered text and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one parsed command.  `serve` blocks.
pub fn dispatch(cli: &Cli) -> Outcome {
    match run(cli) {
        Ok((reports, code)) => finish(cli, reports, code),
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: render(&[error_report(&e)], false) },
    }
}

fn finish(cli: &Cli, reports: Vec<Output>, code: i32) -> Outcome {
    let text = reports
        .iter()
        .map(|r| match r {
            Output::Report(v) => render(std::slice::from_ref(v), cli.pretty),
            Output::Raw(s) => s.clone(),
        })
        .collect::<String>();
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            let e = Error::from(e);
            return Outcome { code: exit_code(&e), stdout: String::new(), stderr: render(&[error_report(&e)], false) };
        }
        return Outcome { code, stdout: String::new(), stderr: String::new() };
    }
    Outcome { code, stdout: text, stderr: String::new() }
}

enum Output {
    Report(Value),
    Raw(String),
}

fn run(cli: &Cli) -> Result<(Vec<Output>, i32)> {
    let one = |v: Value| Ok((vec![Output::Report(v)], EXIT_OK));
    match &cli.command {
        Command::Count(CountCmd::Separated { k, m }) => {
            let t = Instant::now();
            let r = weakly_separated_count(*k, *m)?;
            one(json!({
                "schema": "count.separated.v1", "k": r.k, "m": r.m, "count": r.count,
                "expected_size": r.expected_size, "pure": r.pure, "wall_ms": t.elapsed().as_millis() as u64,
            }))
        }
        Command::Count(CountCmd::PlabicOrbit { k, m, triangulation, graph, limit }) => {
            let (source, g) = orbit_source(*k, *m, *triangulation, graph.as_ref())?;
            let count = plabic_orbit_count(&g, *limit)?;
            one(json!({"schema": "count.plabic_orbit.v1", "source": source, "count": count}))
        }
        Command::Count(CountCmd::Clusters { braid, seed }) => {
            let beta = BraidWord::parse(braid)?;
            let t = Instant::now();
            let g = graph_for(&beta, seed)?;
            one(json!({
                "schema": "count.clusters.v1", "braid": beta.to_string(), "count": g.len(),
                "samples": g.samples, "seed": seed.seed, "wall_ms": t.elapsed().as_millis() as u64,
            }))
        }
        Command::Count(CountCmd::Pinch { braid, seed }) => {
            let beta = BraidWord::parse(braid)?;
            let t = Instant::now();
            let r = if seed.samples == DEFAULT_SAMPLES {
                pinch_count(&beta, seed.seed, seed.budget)?.0
            } else {
                pinch_cluster_count(&beta, &graph_for(&beta, seed)?)?
            };
            let classes = if beta.strands() == 2 && (2..=8).contains(&beta.len()) { Some(two_braid_classes(beta.len())?) } else { None };
            one(json!({
                "schema": "count.pinch.v1", "braid": r.braid, "orders": r.orders, "classes": classes,
                "count": r.clusters, "exchange": r.exchange, "all_members": r.all_members,
                "wall_ms": t.elapsed().as_millis() as u64,
            }))
        }
        Command::Compile(CompileCmd::Weave { braid, svg }) => {
            let beta = BraidWord::parse(braid)?;
            let w = compile_braid_weave(&beta);
            if let Some(path) = svg {
                std::fs::write(path, w.geometry().to_svg())?;
            }
            one(w.to_json())
        }
        Command::Verify(args) => verify(args),
        Command::Export(ExportCmd::Exchange { braid, dot, json: _, depth, seed }) => {
            let beta = BraidWord::parse(braid)?;
            let root = Seed::from_braid(&beta, seed.samples, seed.seed)?;
            let g = match depth {
                Some(d) => explore(&root, seed.budget, Some(*d))?,
                None => graph_for(&beta, seed)?,
            };
            if *dot {
                Ok((vec![Output::Raw(g.to_dot())], EXIT_OK))
            } else {
                one(g.to_json())
            }
        }
        Command::Serve { port } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(super::server::serve(*port))?;
            Ok((Vec::new(), EXIT_OK))
        }
    }
}

fn graph_for(beta: &BraidWord, seed: &SeedArgs) -> Result<crate::cluster::ExchangeGraph> {
    if seed.samples == DEFAULT_SAMPLES {
        exchange_graph(beta, seed.seed, seed.budget)
    } else {
        explore(&Seed::from_braid(beta, seed.samples, seed.seed)?, seed.budget, None)
    }
}

fn orbit_source(
    k: Option<usize>,
    m: Option<usize>,
    tri: Option<TriangulationKind>,
    graph: Option<&PathBuf>,
) -> Result<(String, PlabicGraph)> {
    if let Some(path) = graph {
        let j = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        return Ok((path.display().to_string(), PlabicGraph::from_json(&j)?));
    }
    match (k, m, tri) {
        (_, Some(m), Some(t)) => {
            let tris = match t {
                TriangulationKind::Fan => fan_triangulation(m),
                TriangulationKind::Zigzag => zigzag_triangulation(m),
            };
            Ok((format!("{t:?} triangulation of the {m}-gon").to_lowercase(), triangulation_graph(m, &tris)?))
        }
        (Some(k), Some(m), None) => Ok((format!("Le graph Gr({k},{m})"), le_graph(k, m)?)),
        _ => Err(Error::OutOfRange("give --k and --m, --m with --triangulation, or --graph".into())),
    }
}

fn verify(args: &VerifyArgs) -> Result<(Vec<Output>, i32)> {
    let beta = BraidWord::parse(&args.braid)?;
    let mut checked = 0;
    let mut witnesses = Vec::new();
    let mut degenerate = 0;
    for trial in 0..args.trials as u64 {
        let s = args.seed.wrapping_add(trial);
        match args.identity {
            Identity::Minors => {
                let r = check_minor_identity(&sample_conf(&beta, s)?)?;
                checked += r.checked;
                witnesses.extend(r.failures);
            }
            Identity::Duality => {
                let r = check_x_duality(&sample_conf(&beta, s)?)?;
                checked += r.checked;
                witnesses.extend(r.failures);
                let w = compile_braid_weave(&beta);
                checked += 2;
                if !w.check_duality() {
                    witnesses.push("relative/closed pairing is not the identity".into());
                }
                if !w.check_chain_identity() {
                    witnesses.push("chain identity fails".into());
                }
            }
            Identity::SquareMove => {
                let r = square_move_check(&SquareConfig::random(s))?;
                if r.degenerate {
                    degenerate += 1;
                }
                checked += r.checked;
                witnesses.extend(r.failures);
            }
        }
    }
    let pass = witnesses.is_empty();
    let name = match args.identity {
        Identity::Minors => "minors",
        Identity::Duality => "duality",
        Identity::SquareMove => "square-move",
    };
    let report = json!({
        "schema": "verify.v1", "identity": name,
        "braid": if args.identity == Identity::SquareMove { Value::Null } else { beta.to_string().into() }, "trials": args.trials,
        "seed": args.seed, "checked": checked, "degenerate": degenerate,
        "result": if pass { "PASS" } else { "FAIL" }, "witnesses": witnesses,
    });
    Ok((vec![Output::Report(report)], if pass { EXIT_OK } else { EXIT_CHECK }))
}

/// Parses `args` (program name first) and dispatches.
pub fn run_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

/// Snapshot of a fresh session, as `POST /session` would return it.
pub fn initial_snapshot(braid: &str, samples: usize, seed: u64) -> Result<super::session::Snapshot> {
    let beta = BraidWord::parse(braid)?;
    Ok(snapshot_of("", &beta, &Seed::from_braid(&beta, samples, seed)?, seed))
}
