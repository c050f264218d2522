use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use chpot::applications::{ApplicationError, AvoidFlags, ScaleFactor, Scenario, ScenarioTables, TdWeights, lower_bound_weights};
use chpot::ch::ContractionHierarchy;
use chpot::harness::{
    box_stats_by_group, generate_synthetic_instance, run_prepared, summarize, write_box_csv, write_summary_csv,
    Algorithm, ExperimentPlan, GeneratorParams, HarnessError, InstanceKind, Optimizations, Prepared, SummaryRow,
};
use chpot::io::{self, write_results_csv, InstanceBundle};

#[derive(Parser)]
#[command(name = "chpot", version, about = "Exact A* route planning with hierarchy-derived potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a contraction hierarchy and write it to disk.
    Preprocess {
        /// A DIMACS `.gr` file or an instance directory.
        graph: PathBuf,
        #[arg(long, default_value = "ch.bin")]
        out: PathBuf,
        /// Build for the minima of the travel time functions instead of freeflow.
        #[arg(long)]
        td: bool,
        /// Travel time functions; defaults to the instance's own.
        #[arg(long)]
        ttf: Option<PathBuf>,
    },
    /// Run a random query workload and report measurements.
    Query(QueryArgs),
    /// Write a synthetic instance directory.
    Gen {
        #[arg(long, value_enum, default_value_t = Kind::Grid)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        td: bool,
        #[arg(long)]
        live: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Grid,
    RandomGeometric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScenarioName {
    Scaled,
    Avoid,
    Live,
    Td,
    #[value(name = "td+live")]
    TdLive,
}

#[derive(clap::Args)]
struct QueryArgs {
    /// Instance directory (as written by `gen`).
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = ScenarioName::Scaled)]
    scenario: ScenarioName,
    /// Scale factors for the scaled scenario; one run per value.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    alpha: Vec<String>,
    /// Tags to avoid: `t`/`tunnels`, `h`/`highways`.
    #[arg(long, value_delimiter = ',')]
    avoid: Vec<String>,
    /// Route with turn costs, from this file or the instance's own table.
    #[arg(long, num_args = 0..=1)]
    turns: Option<Option<PathBuf>>,
    #[arg(long)]
    ttf: Option<PathBuf>,
    #[arg(long)]
    live: Option<PathBuf>,
    /// Live weights hold until this many ms after departure.
    #[arg(long)]
    tau_soon: Option<u32>,
    #[arg(long, value_delimiter = ',', default_value = "chpot")]
    algo: Vec<String>,
    #[arg(long)]
    no_bcc: bool,
    #[arg(long)]
    no_deg2: bool,
    #[arg(long)]
    no_deg3: bool,
    #[arg(long, default_value_t = 10_000)]
    queries: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-query records.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Per-group means and speedups.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Running-time box statistics per group.
    #[arg(long = "box")]
    box_csv: Option<PathBuf>,
    /// Hierarchy from `preprocess`; built on the fly otherwise.
    #[arg(long)]
    ch: Option<PathBuf>,
    #[arg(long)]
    landmarks: Option<usize>,
    /// Check every distance against plain Dijkstra.
    #[arg(long)]
    verify: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_contract_violation(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn is_contract_violation(e: &anyhow::Error) -> bool {
    e.chain().any(|cause| {
        let app = cause.downcast_ref::<ApplicationError>().or_else(|| match cause.downcast_ref::<HarnessError>() {
            Some(HarnessError::Scenario(a)) => Some(a),
            _ => None,
        });
        matches!(app, Some(ApplicationError::ContractViolation { .. } | ApplicationError::ScaleBelowOne(_)))
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Preprocess { graph, out, td, ttf } => preprocess(&graph, &out, td, ttf.as_deref()),
        Command::Query(args) => query(args),
        Command::Gen { kind, n, seed, td, live, out } => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            let kind = match kind {
                Kind::Grid => InstanceKind::Grid,
                Kind::RandomGeometric => InstanceKind::RandomGeometric,
            };
            let bundle = generate_synthetic_instance(GeneratorParams { kind, num_nodes: n, seed, td, live });
            bundle.save(&out)?;
            println!("wrote {} nodes, {} edges to {}", bundle.graph.num_nodes(), bundle.graph.num_edges(), out.display());
            Ok(())
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).with_context(|| format!("cannot open {}", path.display()))?))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("cannot create {}", path.display()))?))
}

fn load_instance(path: &Path) -> Result<InstanceBundle> {
    if path.is_dir() {
        Ok(InstanceBundle::load(path)?)
    } else {
        let graph = io::read_dimacs_gr(open(path)?).with_context(|| format!("in {}", path.display()))?;
        Ok(InstanceBundle::new(graph))
    }
}

fn preprocess(path: &Path, out: &Path, td: bool, ttf: Option<&Path>) -> Result<()> {
    let mut bundle = load_instance(path)?;
    if let Some(p) = ttf {
        bundle.ttf = Some(io::read_ttf_file(open(p)?, &bundle.graph).with_context(|| format!("in {}", p.display()))?);
    }
    let scenario = if td { Scenario::TimeDependent } else { Scenario::Scaled(ScaleFactor::ONE) };
    let predicted = bundle.ttf.as_deref().map(TdWeights::new);
    let tables = ScenarioTables { predicted: predicted.as_ref(), live: None };
    let lower = bundle.graph.with_weights(lower_bound_weights(&bundle.graph, scenario, tables)?);
    let start = Instant::now();
    let ch = ContractionHierarchy::build(&lower);
    let elapsed = start.elapsed();
    let mut w = create(out)?;
    ch.write_to(&mut w)?;
    w.flush()?;
    println!(
        "contracted {} nodes in {:.3} s, {} shortcuts, wrote {}",
        ch.num_nodes(),
        elapsed.as_secs_f64(),
        ch.num_shortcuts(),
        out.display()
    );
    Ok(())
}

fn parse_avoid(items: &[String]) -> Result<AvoidFlags> {
    let mut flags = AvoidFlags::default();
    for item in items {
        match item.trim() {
            "t" | "tunnel" | "tunnels" => flags.tunnels = true,
            "h" | "highway" | "highways" => flags.highways = true,
            other => bail!("unknown tag to avoid: {other:?}"),
        }
    }
    Ok(flags)
}

fn query(args: QueryArgs) -> Result<()> {
    let mut bundle = InstanceBundle::load(&args.instance)?;
    let graph = &bundle.graph;
    if let Some(p) = &args.ttf {
        bundle.ttf = Some(io::read_ttf_file(open(p)?, graph).with_context(|| format!("in {}", p.display()))?);
    }
    if let Some(p) = &args.live {
        bundle.live = Some(io::read_live_file(open(p)?, graph).with_context(|| format!("in {}", p.display()))?);
    }
    if let Some(Some(p)) = &args.turns {
        bundle.turns = Some(io::read_turns_file(open(p)?, graph).with_context(|| format!("in {}", p.display()))?);
    }

    let scenarios: Vec<Scenario> = match args.scenario {
        ScenarioName::Scaled => args.alpha.iter().map(|a| a.parse().map(Scenario::Scaled)).collect::<Result<_, _>>()?,
        ScenarioName::Avoid => vec![Scenario::Avoid(parse_avoid(&args.avoid)?)],
        ScenarioName::Live => vec![Scenario::Live],
        ScenarioName::Td => vec![Scenario::TimeDependent],
        ScenarioName::TdLive => vec![Scenario::LiveAndPredicted],
    };
    let algorithms = args
        .algo
        .iter()
        .map(|name| Algorithm::from_name(name.trim()).with_context(|| format!("unknown algorithm {name:?}")))
        .collect::<Result<Vec<_>>>()?;

    let ch = match &args.ch {
        Some(p) => Some(ContractionHierarchy::read_from(&mut open(p)?).with_context(|| format!("in {}", p.display()))?),
        None => None,
    };
    let start = Instant::now();
    let prepared = Prepared::new(&bundle, scenarios[0], ch)?;
    log::info!("preprocessing took {:.3} s", start.elapsed().as_secs_f64());

    let mut records = Vec::new();
    for &scenario in &scenarios {
        let mut plan = ExperimentPlan::new(scenario, algorithms.clone());
        plan.turns = args.turns.is_some();
        plan.optimizations = Optimizations { bcc: !args.no_bcc, deg2: !args.no_deg2, deg3: !args.no_deg3 };
        plan.num_queries = args.queries;
        plan.seed = args.seed;
        plan.verify = args.verify;
        if let Some(soon) = args.tau_soon {
            plan.soon = soon;
        }
        if let Some(k) = args.landmarks {
            plan.num_landmarks = k;
        }
        records.extend(run_prepared(&prepared, &plan)?);
    }

    if let Some(p) = &args.csv {
        let mut w = create(p)?;
        write_results_csv(&records, &mut w)?;
        w.flush()?;
    }
    let summary = summarize(&records);
    if let Some(p) = &args.summary {
        let mut w = create(p)?;
        write_summary_csv(&summary, &mut w)?;
        w.flush()?;
    }
    if let Some(p) = &args.box_csv {
        let mut w = create(p)?;
        write_box_csv(&box_stats_by_group(&records), &mut w)?;
        w.flush()?;
    }
    print_summary(&summary);
    Ok(())
}

fn print_summary(rows: &[SummaryRow]) {
    println!(
        "{:<24} {:<9} {:>8} {:>12} {:>12} {:>12} {:>10} {:>9}",
        "scenario", "algorithm", "queries", "time [ms]", "pushes", "settled", "incr [%]", "speedup"
    );
    for r in rows {
        let opt = |v: Option<f64>, prec: usize| v.map_or("-".to_string(), |x| format!("{x:.prec$}"));
        println!(
            "{:<24} {:<9} {:>8} {:>12.3} {:>12.1} {:>12.1} {:>10} {:>9}",
            r.scenario,
            r.algorithm,
            r.queries,
            r.mean_running_time_ms,
            r.mean_queue_pushes,
            r.mean_settled_nodes,
            opt(r.mean_length_increase_pct, 2),
            opt(r.speedup, 1)
        );
    }
}
