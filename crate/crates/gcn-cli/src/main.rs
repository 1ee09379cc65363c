//! Command line interface: exact colouring numbers, order evaluation,
//! decomposition builders with certificates, the seeded verification matrix,
//! and cost sweeps.

use clap::{Args, Parser, Subcommand};
use gcn::decomp::{certify, SpreadFunction};
use gcn::graph::{Graph, Vertex};
use gcn::harness::{self, Strategy};
use gcn::io;
use gcn::planar::{validate_embedding, EmbeddingMode, PlanarEmbedding};
use gcn::reach::{cost_of_order, Mode, Radius};
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "gcn", about = "Generalised colouring numbers: exact values and certified orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact col_r / wcol_r by search over all orders (small graphs).
    Exact {
        #[command(flatten)]
        input: InputArgs,
        /// Radius: a non-negative integer or "inf".
        #[arg(long)]
        r: String,
        #[arg(long, default_value = "strong")]
        mode: String,
        /// Vertex-count cap for the exact search.
        #[arg(long, default_value_t = gcn::exact::DEFAULT_EXACT_CAP)]
        cap: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cost of a supplied order at each radius in the range.
    Evaluate {
        #[command(flatten)]
        input: InputArgs,
        /// Path to the order file: one line of space-separated vertex ids.
        #[arg(long)]
        order: PathBuf,
        /// Radius range, e.g. "3" or "1..5" (inclusive).
        #[arg(long, default_value = "1..5")]
        r: String,
        /// weak, strong, or both.
        #[arg(long, default_value = "both")]
        mode: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a builder and emit its decomposition or order plus certificate.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        strategy: StrategyArgs,
        /// Radius range for the certificate cost rows.
        #[arg(long, default_value = "1..5")]
        r: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the seeded verification matrix and emit a bound report.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Matrix size multiplier.
        #[arg(long, default_value_t = 1)]
        scale: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Measured costs against bounds across a radius range, as CSV or JSON.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        strategy: StrategyArgs,
        #[arg(long, default_value = "1..5")]
        r: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Generate a graph family instance (and embedding where applicable).
    Generate {
        /// Family: path, cycle, complete, grid, forest, k-tree,
        /// random-maximal-planar, series-parallel.
        #[arg(long)]
        family: String,
        /// Family parameters, e.g. "20" or "4x5" or "k=2,n=30".
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output graph file (graph6 when the extension is .g6, else edges).
        #[arg(long)]
        out: PathBuf,
        /// Output rotation-system file for planar families.
        #[arg(long)]
        emb_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Graph file: graph6 or whitespace edge list ("u v" per line).
    #[arg(long)]
    input: PathBuf,
    /// Rotation-system file for planar strategies.
    #[arg(long)]
    embedding: Option<PathBuf>,
}

#[derive(Args)]
struct StrategyArgs {
    /// ipd-planar | lexbfs-planar | kt-flat | h-ipd | degeneracy
    #[arg(long)]
    strategy: String,
    /// Excluded clique size for kt-flat.
    #[arg(long)]
    t: Option<usize>,
    /// Pattern graph file for h-ipd.
    #[arg(long = "H")]
    pattern: Option<PathBuf>,
    /// Apex vertex of the pattern for h-ipd.
    #[arg(long)]
    apex: Option<Vertex>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// json or csv (csv only where a tabular form exists).
    #[arg(long, default_value = "json")]
    format: String,
}

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err}");
        std::process::exit(1);
    }
}

type AnyError = Box<dyn std::error::Error>;

fn run() -> Result<(), AnyError> {
    match Cli::parse().command {
        Command::Exact { input, r, mode, cap, out } => cmd_exact(input, &r, &mode, cap, out),
        Command::Evaluate { input, order, r, mode, out } => {
            cmd_evaluate(input, &order, &r, &mode, out)
        }
        Command::Decompose { input, strategy, r, out } => cmd_decompose(input, strategy, &r, out),
        Command::Verify { seed, scale, out } => cmd_verify(seed, scale, out),
        Command::Sweep { input, strategy, r, out } => cmd_sweep(input, strategy, &r, out),
        Command::Generate { family, params, seed, out, emb_out } => {
            cmd_generate(&family, &params, seed, &out, emb_out.as_deref())
        }
    }
}

fn load_graph(args: &InputArgs) -> Result<(Graph, Option<PlanarEmbedding>), AnyError> {
    let text = std::fs::read_to_string(&args.input)?;
    let g = io::parse_graph_auto(&text)?;
    let emb = match &args.embedding {
        Some(path) => {
            let rot = io::rotation_from_text(&std::fs::read_to_string(path)?)?;
            Some(validate_embedding(&g, &rot, EmbeddingMode::Any)?)
        }
        None => None,
    };
    Ok((g, emb))
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<u32>, AnyError> {
    if let Some((a, b)) = text.split_once("..") {
        let lo: u32 = a.trim().parse()?;
        let hi: u32 = b.trim_start_matches('=').trim().parse()?;
        if lo > hi {
            return Err(format!("empty radius range {text:?}").into());
        }
        Ok(lo..=hi)
    } else {
        let r: u32 = text.trim().parse()?;
        Ok(r..=r)
    }
}

fn emit(out: &OutputArgs, text: String) -> Result<(), AnyError> {
    match &out.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn build_strategy(args: &StrategyArgs) -> Result<Strategy, AnyError> {
    Ok(match args.strategy.as_str() {
        "ipd-planar" => Strategy::IpdPlanar,
        "lexbfs-planar" => Strategy::LexbfsPlanar,
        "kt-flat" => {
            let t = args.t.ok_or("kt-flat needs --t")?;
            Strategy::KtFlat { t }
        }
        "h-ipd" => {
            let path = args.pattern.as_ref().ok_or("h-ipd needs --H <pattern file>")?;
            let pattern = io::parse_graph_auto(&std::fs::read_to_string(path)?)?;
            let apex = args.apex.ok_or("h-ipd needs --apex")?;
            Strategy::HIpd { pattern, apex }
        }
        "degeneracy" => Strategy::Degeneracy,
        other => return Err(format!("unknown strategy {other:?}").into()),
    })
}

#[derive(Serialize)]
struct ExactOutput {
    n: usize,
    r: String,
    mode: String,
    value: usize,
    order: String,
}

fn cmd_exact(
    input: InputArgs,
    r: &str,
    mode: &str,
    cap: usize,
    out: OutputArgs,
) -> Result<(), AnyError> {
    let (g, _) = load_graph(&input)?;
    let radius: Radius = r.parse()?;
    let mode: Mode = mode.parse()?;
    let (value, order) = gcn::exact::exact_gcn_with_cap(&g, radius, mode, cap)?;
    let report = ExactOutput {
        n: g.vertex_count(),
        r: radius.to_string(),
        mode: mode.to_string(),
        value,
        order: order.to_string(),
    };
    emit(&out, format!("{}\n", serde_json::to_string_pretty(&report)?))
}

#[derive(Serialize)]
struct EvaluateRow {
    r: u32,
    mode: String,
    cost: usize,
}

fn cmd_evaluate(
    input: InputArgs,
    order_path: &Path,
    r: &str,
    mode: &str,
    out: OutputArgs,
) -> Result<(), AnyError> {
    let (g, _) = load_graph(&input)?;
    let order = io::parse_order(&std::fs::read_to_string(order_path)?)?;
    if order.len() != g.vertex_count() {
        return Err(format!(
            "order lists {} vertices, graph has {}",
            order.len(),
            g.vertex_count()
        )
        .into());
    }
    let modes: Vec<Mode> = match mode {
        "both" => vec![Mode::Strong, Mode::Weak],
        other => vec![other.parse::<Mode>()?],
    };
    let mut rows = Vec::new();
    for r in parse_range(r)? {
        for &m in &modes {
            rows.push(EvaluateRow {
                r,
                mode: m.to_string(),
                cost: cost_of_order(&g, &order, Radius::Finite(r), m),
            });
        }
    }
    if out.format == "csv" {
        let mut text = String::from("r,mode,cost\n");
        for row in rows {
            text.push_str(&format!("{},{},{}\n", row.r, row.mode, row.cost));
        }
        emit(&out, text)
    } else {
        emit(&out, format!("{}\n", serde_json::to_string_pretty(&rows)?))
    }
}

#[derive(Serialize)]
struct DecomposeOutput {
    strategy: String,
    order: String,
    decomposition: Option<String>,
    certificate: Option<gcn::decomp::CertificateReport>,
    minor_certificate: Option<gcn::minor::MinorModel>,
    builder_trace: Option<gcn::builders::BuilderTrace>,
    costs: Vec<CostPair>,
}

#[derive(Serialize)]
struct CostPair {
    r: u32,
    strong: usize,
    weak: usize,
}

fn cmd_decompose(
    input: InputArgs,
    strategy_args: StrategyArgs,
    r: &str,
    out: OutputArgs,
) -> Result<(), AnyError> {
    let (g, emb) = load_graph(&input)?;
    let strategy = build_strategy(&strategy_args)?;
    let range = parse_range(r)?;

    // run the builder directly so decompositions, certificates and minor
    // models can all be reported
    let (decomposition, minor, trace, spread) = match &strategy {
        Strategy::IpdPlanar => {
            let emb = emb.as_ref().ok_or("ipd-planar needs --embedding")?;
            let d = gcn::planar::ipd_maximal_planar(&g, emb)?;
            (Some(d), None, None, Some(SpreadFunction::isometric_path()))
        }
        Strategy::KtFlat { t } => match gcn::builders::kt_flat_decomposition(&g, *t)? {
            gcn::builders::KtOutcome::Flat(o) => (
                Some(o.decomposition),
                None,
                None,
                Some(SpreadFunction::path_union((*t - 3) as u64)),
            ),
            gcn::builders::KtOutcome::Minor(m) => (None, Some(m), None, None),
        },
        Strategy::HIpd { pattern, apex } => match gcn::builders::h_ipd(&g, pattern, *apex)? {
            gcn::builders::HIpdOutcome::Paths(o) => (
                Some(o.decomposition),
                None,
                Some(o.trace),
                Some(SpreadFunction::isometric_path()),
            ),
            gcn::builders::HIpdOutcome::Minor(m) => (None, Some(m), None, None),
        },
        Strategy::LexbfsPlanar | Strategy::Degeneracy => (None, None, None, None),
    };

    let report = if let Some(minor) = minor {
        DecomposeOutput {
            strategy: strategy.name(),
            order: String::new(),
            decomposition: None,
            certificate: None,
            minor_certificate: Some(minor),
            builder_trace: trace,
            costs: Vec::new(),
        }
    } else {
        let order = match &decomposition {
            Some(d) => {
                gcn::decomp::order_from_decomposition(d, gcn::decomp::WithinPartRule::Stored)
            }
            None => harness::strategy_order(&g, emb.as_ref(), &strategy)?,
        };
        let costs = range
            .clone()
            .map(|r| CostPair {
                r,
                strong: cost_of_order(&g, &order, Radius::Finite(r), Mode::Strong),
                weak: cost_of_order(&g, &order, Radius::Finite(r), Mode::Weak),
            })
            .collect();
        let certificate = match (&decomposition, &spread) {
            (Some(d), Some(f)) => Some(certify(&g, d, f, range)?),
            _ => None,
        };
        DecomposeOutput {
            strategy: strategy.name(),
            order: order.to_string(),
            decomposition: decomposition.as_ref().map(io::decomposition_to_text),
            certificate,
            minor_certificate: None,
            builder_trace: trace,
            costs,
        }
    };
    emit(&out, format!("{}\n", serde_json::to_string_pretty(&report)?))
}

fn cmd_verify(seed: u64, scale: usize, out: OutputArgs) -> Result<(), AnyError> {
    let report = harness::run_verify_spec(harness::ExperimentSpec { seed, scale })?;
    if out.format == "csv" {
        emit(&out, harness::rows_to_csv(&report.rows))
    } else {
        emit(&out, format!("{}\n", serde_json::to_string_pretty(&report)?))
    }
}

fn cmd_sweep(
    input: InputArgs,
    strategy_args: StrategyArgs,
    r: &str,
    out: OutputArgs,
) -> Result<(), AnyError> {
    let (g, emb) = load_graph(&input)?;
    let strategy = build_strategy(&strategy_args)?;
    let id = input
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".into());
    let rows = harness::measure(&id, "input", &g, emb.as_ref(), &strategy, parse_range(r)?)?;
    if out.format == "csv" {
        emit(&out, harness::rows_to_csv(&rows))
    } else {
        emit(&out, format!("{}\n", serde_json::to_string_pretty(&rows)?))
    }
}

fn cmd_generate(
    family: &str,
    params: &str,
    seed: u64,
    out: &Path,
    emb_out: Option<&Path>,
) -> Result<(), AnyError> {
    let kv = |key: &str| -> Option<usize> {
        params.split(',').find_map(|part| {
            let (k, v) = part.split_once('=')?;
            (k.trim() == key).then(|| v.trim().parse().ok())?
        })
    };
    let single = || -> Result<usize, AnyError> {
        params
            .trim()
            .parse()
            .map_err(|_| format!("family {family:?} expects --params <n>").into())
    };
    let (g, rot) = match family {
        "path" => (gcn::generate::path(single()?)?, None),
        "cycle" => (gcn::generate::cycle(single()?)?, None),
        "complete" => (gcn::generate::complete(single()?)?, None),
        "grid" => {
            let (a, b) = params
                .split_once('x')
                .ok_or("grid expects --params RxC, e.g. 4x5")?;
            let (g, rot) = gcn::generate::grid(a.trim().parse()?, b.trim().parse()?)?;
            (g, Some(rot))
        }
        "forest" => (gcn::generate::forest(single()?, seed)?, None),
        "k-tree" => {
            let k = kv("k").ok_or("k-tree expects --params k=K,n=N")?;
            let n = kv("n").ok_or("k-tree expects --params k=K,n=N")?;
            (gcn::generate::k_tree(k, n, seed)?, None)
        }
        "random-maximal-planar" => {
            let (g, rot) = gcn::generate::random_maximal_planar(single()?, seed)?;
            (g, Some(rot))
        }
        "series-parallel" => (gcn::generate::series_parallel(single()?, seed)?, None),
        other => return Err(format!("unknown family {other:?}").into()),
    };
    let text = if out.extension().is_some_and(|e| e == "g6") {
        format!("{}\n", io::to_graph6(&g))
    } else {
        io::to_edge_list(&g)
    };
    std::fs::write(out, text)?;
    if let Some(path) = emb_out {
        let rot = rot.ok_or_else(|| format!("family {family:?} has no embedding"))?;
        std::fs::write(path, io::rotation_to_text(&rot))?;
    }
    Ok(())
}
