//! Command-line interface: generation, Laplacian construction, distances,
//! means, curvature, expression ingestion, and the three experiment presets.
//!
//! Exit codes: 0 ok, 2 usage, 3 I/O, 4 invalid data, 5 non-convergence.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use manifoldnet::error::{AppError, Result};
use manifoldnet::harness::{self, pairwise_matrix, GeometryConfig, Metric};
use manifoldnet::io;
use manifoldnet_core::correlate::{build_cohort_with, WeightMode};
use manifoldnet_core::curvature::{
    ollivier_curvature_with, spectral_curvature_report_with, CurvatureConfig,
};
use manifoldnet_core::graph::DEFAULT_EPS;
use manifoldnet_core::manifold::SPDPoint;
use manifoldnet_core::netgen::{GenSpec, GraphKind};
use manifoldnet_core::rng::mix;
use manifoldnet_core::stats::{frechet_mean, FrechetConfig};
use manifoldnet_core::WeightedGraph;

#[derive(Parser)]
#[command(
    name = "manifoldnet",
    about = "Riemannian statistics over families of weighted networks",
    version
)]
struct Cli {
    /// Worker threads for pairwise computations (default: machine
    /// parallelism; env: MANIFOLDNET_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate synthetic graphs as edge-list TSV files plus a manifest.
    Generate(GenerateArgs),
    /// Write the eps-shifted normalized Laplacian of a graph as matrix CSV.
    Laplacian(LaplacianArgs),
    /// Pairwise distance matrix over graph or matrix files.
    Dist(DistArgs),
    /// Fréchet mean of the inputs' Laplacians, as matrix CSV.
    Mean(MeanArgs),
    /// Ollivier-Ricci edge curvature, or the full spectrum/curvature report.
    Curvature(CurvatureArgs),
    /// Build a correlation-network cohort from expression data.
    Ingest(IngestArgs),
    /// Run an experiment preset.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Chain,
    Star,
    Gnm,
    Ba,
}

impl From<KindArg> for GraphKind {
    fn from(k: KindArg) -> GraphKind {
        match k {
            KindArg::Chain => GraphKind::Chain,
            KindArg::Star => GraphKind::Star,
            KindArg::Gnm => GraphKind::Gnm,
            KindArg::Ba => GraphKind::Ba,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// Topology family.
    #[arg(long, value_enum, required_unless_present = "spec")]
    kind: Option<KindArg>,
    /// Node count.
    #[arg(long, required_unless_present = "spec")]
    n: Option<usize>,
    /// Edge count (chain, star, gnm).
    #[arg(long, conflicts_with = "m_attach")]
    m: Option<usize>,
    /// Attachments per node (ba).
    #[arg(long)]
    m_attach: Option<usize>,
    /// Base seed; graph i uses the derived seed mix(seed, i).
    #[arg(long, required_unless_present = "spec")]
    seed: Option<u64>,
    /// How many graphs to emit.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 1.0)]
    weight_low: f64,
    #[arg(long, default_value_t = 1.0)]
    weight_high: f64,
    /// JSON spec file with fields {kind, n, m, seed, weight_low, weight_high};
    /// explicit flags override its values.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Print the resolved configuration and exit.
    #[arg(long)]
    show_config: bool,
}

#[derive(Args)]
struct GeometryArgs {
    /// Diagonal shift of the normalized Laplacian.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    /// Scale Laplacians to unit trace before measuring.
    #[arg(long, default_value_t = false)]
    trace_normalize: bool,
}

impl GeometryArgs {
    fn config(&self) -> GeometryConfig {
        GeometryConfig {
            eps: self.eps,
            trace_normalize: self.trace_normalize,
        }
    }
}

#[derive(Args)]
struct LaplacianArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    geometry: GeometryArgs,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    show_config: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    /// Edge-list TSV, converted through the approximated Laplacian.
    Graph,
    /// Dense symmetric matrix CSV, used as an SPD point directly.
    Matrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Riemannian,
    Frobenius,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Metric {
        match m {
            MetricArg::Riemannian => Metric::Riemannian,
            MetricArg::Frobenius => Metric::Frobenius,
        }
    }
}

#[derive(Args)]
struct DistArgs {
    /// Two or more input files.
    #[arg(required = true, num_args = 2..)]
    files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = MetricArg::Riemannian)]
    metric: MetricArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Graph)]
    format: FormatArg,
    #[command(flatten)]
    geometry: GeometryArgs,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    show_config: bool,
}

#[derive(Args)]
struct MeanArgs {
    #[arg(required = true, num_args = 1..)]
    files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Graph)]
    format: FormatArg,
    #[command(flatten)]
    geometry: GeometryArgs,
    /// Convergence threshold on the mean-update gradient norm.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    show_config: bool,
}

#[derive(Args)]
struct CurvatureArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Endpoints of one edge/pair; prints a single curvature value.
    #[arg(long, num_args = 2, conflicts_with = "report")]
    edge: Option<Vec<usize>>,
    /// Print the full spectrum/curvature report as JSON instead.
    #[arg(long)]
    report: bool,
    /// Lazy-walk component of the node measures, in [0, 1).
    #[arg(long, default_value_t = 0.0)]
    idleness: f64,
    #[arg(long)]
    show_config: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightModeArg {
    /// Absolute Pearson correlation.
    Abs,
    /// Squared Pearson correlation.
    R2,
}

#[derive(Args)]
struct IngestArgs {
    /// Expression CSV (header of sample ids, gene ids in the first column).
    #[arg(long)]
    expression: PathBuf,
    /// Topology TSV of gene pairs.
    #[arg(long)]
    topology: PathBuf,
    /// Number of networks to build.
    #[arg(long)]
    count: usize,
    /// Samples drawn (without replacement) per network.
    #[arg(long)]
    subset_size: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = WeightModeArg::Abs)]
    weight_mode: WeightModeArg,
    /// Output directory for the numbered edge lists and manifest.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    show_config: bool,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Chain vs random vs star distance ordering under weight noise.
    Toy(ToyArgs),
    /// Scale-free vs random separation and clustering.
    Scalefree(ScalefreeArgs),
    /// Two-class expression cohorts over a fixed topology.
    Expression(ExpressionArgs),
}

#[derive(Args)]
struct ToyArgs {
    /// Number of seeds; seed i of the run is mix(seed, i).
    #[arg(long, default_value_t = 10)]
    seeds: usize,
    /// Base seed.
    #[arg(long)]
    seed: u64,
    /// Weight supports as `low,high` pairs separated by `;`
    /// (the unweighted (1,1) run is always included first).
    #[arg(long, default_value = "1,1.5;1,2")]
    supports: String,
    #[command(flatten)]
    geometry: GeometryArgs,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    show_config: bool,
}

#[derive(Args)]
struct ScalefreeArgs {
    #[arg(long, default_value_t = 20)]
    n_per_class: usize,
    #[arg(long, default_value_t = 200)]
    n: usize,
    #[arg(long, default_value_t = 6)]
    m_attach: usize,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    geometry: GeometryArgs,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    show_config: bool,
}

#[derive(Args)]
struct ExpressionArgs {
    #[arg(long)]
    expr_a: PathBuf,
    #[arg(long)]
    expr_b: PathBuf,
    #[arg(long)]
    topology: PathBuf,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 20)]
    subset_size: usize,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    geometry: GeometryArgs,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    show_config: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("MANIFOLDNET_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        // Failure here only means a pool already exists; keep going.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Generate(args) => cmd_generate(args),
        Command::Laplacian(args) => cmd_laplacian(args),
        Command::Dist(args) => cmd_dist(args),
        Command::Mean(args) => cmd_mean(args),
        Command::Curvature(args) => cmd_curvature(args),
        Command::Ingest(args) => cmd_ingest(args),
        Command::Experiment(cmd) => match cmd {
            ExperimentCmd::Toy(args) => cmd_toy(args),
            ExperimentCmd::Scalefree(args) => cmd_scalefree(args),
            ExperimentCmd::Expression(args) => cmd_expression(args),
        },
    }
}

#[derive(serde::Deserialize)]
struct SpecFile {
    kind: String,
    n: usize,
    m: usize,
    seed: u64,
    #[serde(default = "one")]
    weight_low: f64,
    #[serde(default = "one")]
    weight_high: f64,
}

fn one() -> f64 {
    1.0
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let from_file = match &args.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
            let spec: SpecFile = serde_json::from_str(&text)
                .map_err(|e| AppError::format(path, format!("bad spec JSON: {e}")))?;
            let kind = match spec.kind.as_str() {
                "chain" => GraphKind::Chain,
                "star" => GraphKind::Star,
                "gnm" => GraphKind::Gnm,
                "ba" => GraphKind::Ba,
                other => return Err(AppError::format(path, format!("unknown kind {other:?}"))),
            };
            Some(GenSpec {
                kind,
                n: spec.n,
                m: spec.m,
                seed: spec.seed,
                weight_low: spec.weight_low,
                weight_high: spec.weight_high,
            })
        }
        None => None,
    };

    let kind: GraphKind = match (args.kind, &from_file) {
        (Some(k), _) => k.into(),
        (None, Some(s)) => s.kind,
        (None, None) => return Err(AppError::Usage("missing --kind".into())),
    };
    let n = args
        .n
        .or(from_file.as_ref().map(|s| s.n))
        .ok_or_else(|| AppError::Usage("missing --n".into()))?;
    let m = match kind {
        GraphKind::Ba => args.m_attach.or(from_file.as_ref().map(|s| s.m)),
        _ => args.m.or(from_file.as_ref().map(|s| s.m)),
    }
    .ok_or_else(|| AppError::Usage("missing --m (or --m-attach for ba)".into()))?;
    let seed = args
        .seed
        .or(from_file.as_ref().map(|s| s.seed))
        .ok_or_else(|| AppError::Usage("missing --seed".into()))?;
    let (weight_low, weight_high) = match &from_file {
        Some(s) if args.weight_low == 1.0 && args.weight_high == 1.0 => {
            (s.weight_low, s.weight_high)
        }
        _ => (args.weight_low, args.weight_high),
    };

    let spec = GenSpec {
        kind,
        n,
        m,
        seed,
        weight_low,
        weight_high,
    };
    if args.show_config {
        println!(
            "{}",
            json!({
                "kind": kind_name(kind),
                "n": spec.n,
                "m": spec.m,
                "seed": spec.seed,
                "weight_low": spec.weight_low,
                "weight_high": spec.weight_high,
                "count": args.count,
            })
        );
        return Ok(());
    }

    std::fs::create_dir_all(&args.out).map_err(|e| AppError::io(&args.out, e))?;
    let mut files = Vec::new();
    let mut seeds = Vec::new();
    for i in 0..args.count {
        let derived = mix(spec.seed, i as u64);
        let per_graph = GenSpec {
            seed: derived,
            ..spec.clone()
        };
        let g = per_graph.generate()?;
        let name = format!("{}_{i:03}.tsv", kind_name(kind));
        io::write_edge_list(&g, &args.out.join(&name))?;
        files.push(name);
        seeds.push(derived);
    }
    let manifest = json!({
        "kind": kind_name(kind),
        "n": spec.n,
        "m": spec.m,
        "base_seed": spec.seed,
        "seeds": seeds,
        "weight_low": spec.weight_low,
        "weight_high": spec.weight_high,
        "files": files,
    });
    let manifest_path = args.out.join("manifest.json");
    std::fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    )
    .map_err(|e| AppError::io(&manifest_path, e))?;
    Ok(())
}

fn kind_name(kind: GraphKind) -> &'static str {
    match kind {
        GraphKind::Chain => "chain",
        GraphKind::Star => "star",
        GraphKind::Gnm => "gnm",
        GraphKind::Ba => "ba",
    }
}

fn show_geometry_config(geometry: &GeometryConfig, extra: serde_json::Value) -> String {
    let mut base = json!({
        "eps": geometry.eps,
        "trace_normalize": geometry.trace_normalize,
    });
    if let (Some(obj), Some(add)) = (base.as_object_mut(), extra.as_object()) {
        for (k, v) in add {
            obj.insert(k.clone(), v.clone());
        }
    }
    base.to_string()
}

fn cmd_laplacian(args: LaplacianArgs) -> Result<()> {
    let geometry = args.geometry.config();
    if args.show_config {
        println!("{}", show_geometry_config(&geometry, json!({})));
        return Ok(());
    }
    let g = io::read_edge_list(&args.graph)?;
    let point = harness::laplacian_point(&g, &geometry)?;
    emit_matrix_csv(point.entries(), args.out.as_deref())?;
    if let Some(out) = &args.out {
        sidecar_labels(&g, out)?;
    }
    Ok(())
}

fn emit_matrix_csv(m: &manifoldnet_core::Matrix, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => io::write_matrix_csv(m, path),
        None => {
            print!("{}", io::matrix_csv_string(m));
            Ok(())
        }
    }
}

fn sidecar_labels(g: &WeightedGraph, out: &Path) -> Result<()> {
    if g.labels().is_some() {
        let sidecar = out.with_extension("labels.json");
        io::write_label_map(g, &sidecar)?;
    }
    Ok(())
}

/// Loads each input as an SPD point: graphs go through the approximated
/// Laplacian, matrix CSVs are used directly.
fn load_points(
    files: &[PathBuf],
    format: FormatArg,
    geometry: &GeometryConfig,
) -> Result<(Vec<SPDPoint>, Vec<String>)> {
    let mut points = Vec::with_capacity(files.len());
    let mut labels = Vec::with_capacity(files.len());
    for file in files {
        let point = match format {
            FormatArg::Graph => {
                let g = io::read_edge_list(file)?;
                harness::laplacian_point(&g, geometry)?
            }
            FormatArg::Matrix => {
                let m = io::read_matrix_csv(file)?;
                let p = SPDPoint::new(m)
                    .map_err(|e| AppError::manifold(file.display().to_string(), e))?;
                if geometry.trace_normalize {
                    manifoldnet_core::graph::trace_normalize(&p)
                } else {
                    p
                }
            }
        };
        points.push(point);
        labels.push(
            file.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| file.display().to_string()),
        );
    }
    Ok((points, labels))
}

fn cmd_dist(args: DistArgs) -> Result<()> {
    let geometry = args.geometry.config();
    if args.show_config {
        println!(
            "{}",
            show_geometry_config(
                &geometry,
                json!({"metric": Metric::from(args.metric).name()})
            )
        );
        return Ok(());
    }
    let (points, labels) = load_points(&args.files, args.format, &geometry)?;
    let dm = pairwise_matrix(&points, labels, args.metric.into())?;
    match &args.out {
        Some(path) => io::write_distance_csv(&dm, path),
        None => {
            println!("{}", dm.labels().join(","));
            print!("{}", io::matrix_csv_string(dm.entries()));
            Ok(())
        }
    }
}

fn cmd_mean(args: MeanArgs) -> Result<()> {
    let geometry = args.geometry.config();
    if args.show_config {
        println!(
            "{}",
            show_geometry_config(
                &geometry,
                json!({"tol": args.tol, "max_iter": args.max_iter})
            )
        );
        return Ok(());
    }
    let (points, _) = load_points(&args.files, args.format, &geometry)?;
    let cfg = FrechetConfig {
        tol: args.tol,
        max_iter: args.max_iter,
    };
    let result = frechet_mean(&points, &cfg).map_err(|e| AppError::manifold("frechet mean", e))?;
    eprintln!(
        "converged in {} iterations (gradient norm {:.3e})",
        result.iterations, result.grad_norm
    );
    emit_matrix_csv(result.mean.entries(), args.out.as_deref())
}

fn cmd_curvature(args: CurvatureArgs) -> Result<()> {
    let cfg = CurvatureConfig {
        idleness: args.idleness,
    };
    if args.show_config {
        println!("{}", json!({"idleness": cfg.idleness}));
        return Ok(());
    }
    let g = io::read_edge_list(&args.graph)?;
    let context = args.graph.display().to_string();
    if args.report {
        let report =
            spectral_curvature_report_with(&g, &cfg).map_err(|e| AppError::graph(context, e))?;
        let out = json!({
            "eigenvalues": report.eigenvalues,
            "min_edge_curvature": report.min_edge_curvature,
            "bound_satisfied": report.bound_satisfied,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializes")
        );
        return Ok(());
    }
    match args.edge {
        Some(edge) => {
            let k = ollivier_curvature_with(&g, edge[0], edge[1], &cfg)
                .map_err(|e| AppError::graph(context, e))?;
            println!("{k}");
        }
        None => {
            for e in g.edges() {
                let k = ollivier_curvature_with(&g, e.u, e.v, &cfg)
                    .map_err(|err| AppError::graph(context.clone(), err))?;
                println!("{}\t{}\t{k}", e.u, e.v);
            }
        }
    }
    Ok(())
}

fn cmd_ingest(args: IngestArgs) -> Result<()> {
    if args.show_config {
        println!(
            "{}",
            json!({
                "count": args.count,
                "subset_size": args.subset_size,
                "seed": args.seed,
                "weight_mode": match args.weight_mode {
                    WeightModeArg::Abs => "abs",
                    WeightModeArg::R2 => "r2",
                },
                "zero_weight_eps": manifoldnet_core::correlate::ZERO_WEIGHT_EPS,
            })
        );
        return Ok(());
    }
    let expr = io::load_expression(&args.expression)?;
    let topo = io::load_topology(&args.topology)?;
    let mode = match args.weight_mode {
        WeightModeArg::Abs => WeightMode::AbsCorrelation,
        WeightModeArg::R2 => WeightMode::SquaredCorrelation,
    };
    let cohort = build_cohort_with(&expr, &topo, args.count, args.subset_size, args.seed, mode)?;

    std::fs::create_dir_all(&args.out).map_err(|e| AppError::io(&args.out, e))?;
    let mut files = Vec::new();
    let mut warnings = Vec::new();
    for (i, net) in cohort.networks.iter().enumerate() {
        let name = format!("network_{i:03}.tsv");
        io::write_edge_list(&net.graph, &args.out.join(&name))?;
        for w in &net.warnings {
            warnings.push(format!("{name}: {w}"));
        }
        files.push(name);
    }
    if let Some(first) = cohort.networks.first() {
        io::write_label_map(&first.graph, &args.out.join("labels.json"))?;
    }
    let subsets: Vec<Vec<String>> = cohort
        .subsets
        .iter()
        .map(|s| s.iter().map(|&i| expr.sample_ids()[i].clone()).collect())
        .collect();
    let manifest = json!({
        "seed": args.seed,
        "count": args.count,
        "subset_size": args.subset_size,
        "files": files,
        "subsets": subsets,
        "warnings": warnings,
    });
    let manifest_path = args.out.join("manifest.json");
    std::fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    )
    .map_err(|e| AppError::io(&manifest_path, e))?;
    Ok(())
}

fn parse_supports(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut supports = vec![(1.0, 1.0)];
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let mut it = part.split(',');
        let low: f64 = it
            .next()
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| AppError::Usage(format!("bad support {part:?}")))?;
        let high: f64 = it
            .next()
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| AppError::Usage(format!("bad support {part:?}")))?;
        if !(low > 0.0 && low <= high) {
            return Err(AppError::Usage(format!(
                "support ({low}, {high}) must satisfy 0 < low <= high"
            )));
        }
        if !supports.contains(&(low, high)) {
            supports.push((low, high));
        }
    }
    Ok(supports)
}

fn cmd_toy(args: ToyArgs) -> Result<()> {
    let geometry = args.geometry.config();
    let supports = parse_supports(&args.supports)?;
    if args.show_config {
        println!(
            "{}",
            show_geometry_config(
                &geometry,
                json!({"seeds": args.seeds, "seed": args.seed, "supports": supports})
            )
        );
        return Ok(());
    }
    let seeds: Vec<u64> = (0..args.seeds).map(|i| mix(args.seed, i as u64)).collect();
    let report = harness::run_toy(&seeds, &supports, &geometry, &args.out)?;
    println!("{}", report.display());
    Ok(())
}

fn cmd_scalefree(args: ScalefreeArgs) -> Result<()> {
    let geometry = args.geometry.config();
    if args.show_config {
        println!(
            "{}",
            show_geometry_config(
                &geometry,
                json!({
                    "n_per_class": args.n_per_class,
                    "n": args.n,
                    "m_attach": args.m_attach,
                    "seed": args.seed,
                })
            )
        );
        return Ok(());
    }
    let report = harness::run_scalefree(
        args.n_per_class,
        args.seed,
        args.n,
        args.m_attach,
        &geometry,
        &args.out,
    )?;
    println!("{}", report.display());
    Ok(())
}

fn cmd_expression(args: ExpressionArgs) -> Result<()> {
    let geometry = args.geometry.config();
    if args.show_config {
        println!(
            "{}",
            show_geometry_config(
                &geometry,
                json!({
                    "count": args.count,
                    "subset_size": args.subset_size,
                    "seed": args.seed,
                })
            )
        );
        return Ok(());
    }
    let expr_a = io::load_expression(&args.expr_a)?;
    let expr_b = io::load_expression(&args.expr_b)?;
    let topo = io::load_topology(&args.topology)?;
    let report = harness::run_expression(
        &expr_a,
        &expr_b,
        &topo,
        args.count,
        args.subset_size,
        args.seed,
        &geometry,
        &args.out,
    )?;
    println!("{}", report.display());
    Ok(())
}
