//! Experiment orchestration: cohorts to Laplacians to pairwise distance
//! matrices under both metrics, class statistics, k-medoids clustering, and
//! deterministic report emission (JSON + CSV + PPM).

use std::fs;
use std::path::{Path, PathBuf};

use manifoldnet_core::cluster::{k_medoids_restarts, KMedoidsResult};
use manifoldnet_core::correlate::{build_cohort, ExpressionMatrix, TopologyTemplate};
use manifoldnet_core::graph::{approx_laplacian, trace_normalize};
use manifoldnet_core::manifold::{frobenius_dist, riem_dist, ManifoldError};
use manifoldnet_core::matrix::Matrix;
use manifoldnet_core::netgen::{assign_weights, gen_ba, gen_chain, gen_gnm, gen_star};
use manifoldnet_core::rng::mix;
use manifoldnet_core::{SPDPoint, WeightedGraph};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AppError, Result};
use crate::heatmap::write_heatmap;
use crate::io::write_distance_csv;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Riemannian,
    Frobenius,
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Riemannian => "riemannian",
            Metric::Frobenius => "frobenius",
        }
    }
}

/// Labeled symmetric distance matrix with a metric tag. Entries are computed
/// once per unordered pair and mirrored, so symmetry is exact by construction
/// and the result does not depend on the parallel schedule.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    metric: Metric,
    entries: Matrix,
}

impl DistanceMatrix {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Reorders networks by `perm` (new index -> old index), rows and columns
    /// simultaneously.
    pub fn permuted(&self, perm: &[usize]) -> DistanceMatrix {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut entries = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                entries[(i, j)] = self.entries[(perm[i], perm[j])];
            }
        }
        DistanceMatrix {
            labels: perm.iter().map(|&k| self.labels[k].clone()).collect(),
            metric: self.metric,
            entries,
        }
    }
}

/// Pairwise distances between SPD points under the chosen metric, in
/// parallel over the strict upper triangle.
pub fn pairwise_matrix(
    points: &[SPDPoint],
    labels: Vec<String>,
    metric: Metric,
) -> Result<DistanceMatrix> {
    assert_eq!(points.len(), labels.len(), "one label per point");
    let n = points.len();
    type PairResult =
        std::result::Result<Vec<((usize, usize), f64)>, (usize, usize, ManifoldError)>;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let computed: PairResult = pairs
        .par_iter()
        .map(|&(i, j)| {
            let d = match metric {
                Metric::Riemannian => riem_dist(&points[i], &points[j]),
                Metric::Frobenius => frobenius_dist(points[i].entries(), points[j].entries()),
            };
            match d {
                Ok(d) => Ok(((i, j), d)),
                Err(e) => Err((i, j, e)),
            }
        })
        .collect();
    let computed = computed.map_err(|(i, j, e)| {
        AppError::manifold(format!("distance ({}, {})", labels[i], labels[j]), e)
    })?;
    let mut entries = Matrix::zeros(n, n);
    for ((i, j), d) in computed {
        entries[(i, j)] = d;
        entries[(j, i)] = d;
    }
    Ok(DistanceMatrix {
        labels,
        metric,
        entries,
    })
}

/// Mean and population standard deviation of distances between one unordered
/// class pair. Intra-class entries use the strict upper triangle; a class of
/// size one has no intra pairs and reports `None`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassPairStat {
    pub class_a: String,
    pub class_b: String,
    pub pair_count: usize,
    pub mean: Option<f64>,
    pub std_dev: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub metric: Metric,
    pub pairs: Vec<ClassPairStat>,
}

/// Per-class-pair distance statistics. `classes` assigns one class per label,
/// positionally.
pub fn class_stats(dm: &DistanceMatrix, classes: &[String]) -> Result<ClassReport> {
    if classes.len() != dm.len() || classes.iter().any(|c| c.is_empty()) {
        return Err(AppError::Usage(format!(
            "every network needs a class label: got {} classes for {} networks",
            classes.len(),
            dm.len()
        )));
    }
    let mut names: Vec<String> = classes.to_vec();
    names.sort();
    names.dedup();

    let mut pairs = Vec::new();
    for (ai, a) in names.iter().enumerate() {
        for b in &names[ai..] {
            let mut values = Vec::new();
            for i in 0..dm.len() {
                for j in (i + 1)..dm.len() {
                    let (ci, cj) = (&classes[i], &classes[j]);
                    let matches = (ci == a && cj == b) || (ci == b && cj == a);
                    if matches {
                        values.push(dm.get(i, j));
                    }
                }
            }
            let (mean, std_dev) = if values.is_empty() {
                (None, None)
            } else {
                let n = values.len() as f64;
                let mean = values.iter().sum::<f64>() / n;
                let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
                (Some(mean), Some(var.sqrt()))
            };
            pairs.push(ClassPairStat {
                class_a: a.clone(),
                class_b: b.clone(),
                pair_count: values.len(),
                mean,
                std_dev,
            });
        }
    }
    Ok(ClassReport {
        metric: dm.metric(),
        pairs,
    })
}

/// Fraction of points whose cluster matches its class under the best of the
/// k! cluster-to-class bijections.
pub fn clustering_accuracy(assignment: &[usize], classes: &[String]) -> f64 {
    assert_eq!(assignment.len(), classes.len());
    let mut names: Vec<&String> = classes.iter().collect();
    names.sort();
    names.dedup();
    let k = names.len();
    let class_idx: Vec<usize> = classes
        .iter()
        .map(|c| names.iter().position(|n| *n == c).unwrap())
        .collect();
    let clusters = assignment.iter().copied().max().map_or(1, |m| m + 1);

    let mut perm: Vec<usize> = (0..k.max(clusters)).collect();
    let mut best = 0usize;
    permute(&mut perm, 0, &mut |p| {
        let correct = assignment
            .iter()
            .zip(&class_idx)
            .filter(|&(&cl, &cls)| p[cl] == cls)
            .count();
        best = best.max(correct);
    });
    best as f64 / assignment.len() as f64
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClusterOutcome {
    pub metric: Metric,
    pub medoids: Vec<usize>,
    pub assignment: Vec<usize>,
    pub cost: f64,
    pub accuracy: f64,
}

fn cluster_outcome(
    dm: &DistanceMatrix,
    classes: &[String],
    k: usize,
    seed: u64,
    restarts: usize,
) -> ClusterOutcome {
    let KMedoidsResult {
        assignment,
        medoids,
        cost,
    } = k_medoids_restarts(dm.entries(), k, seed, restarts);
    let accuracy = clustering_accuracy(&assignment, classes);
    ClusterOutcome {
        metric: dm.metric(),
        medoids,
        assignment,
        cost,
        accuracy,
    }
}

/// Geometry knobs shared by every experiment.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GeometryConfig {
    /// Diagonal shift of the normalized Laplacian.
    pub eps: f64,
    /// Scale each Laplacian to unit trace before measuring.
    pub trace_normalize: bool,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig {
            eps: manifoldnet_core::graph::DEFAULT_EPS,
            trace_normalize: false,
        }
    }
}

/// Graph to manifold point under the configured geometry.
pub fn laplacian_point(g: &WeightedGraph, cfg: &GeometryConfig) -> Result<SPDPoint> {
    let rho = approx_laplacian(g, cfg.eps).map_err(|e| AppError::graph("laplacian", e))?;
    Ok(if cfg.trace_normalize {
        trace_normalize(&rho)
    } else {
        rho
    })
}

fn laplacian_points(graphs: &[WeightedGraph], cfg: &GeometryConfig) -> Result<Vec<SPDPoint>> {
    graphs.par_iter().map(|g| laplacian_point(g, cfg)).collect()
}

/// Uniform report envelope; the experiment-specific payloads live in
/// `config`, `class_stats`, and `ordering_summary`.
#[derive(Debug, Serialize)]
pub struct Report<C: Serialize, S: Serialize> {
    pub config: C,
    pub seed: u64,
    /// Relative paths of emitted matrix artifacts (CSV and PPM).
    pub matrices: Vec<String>,
    pub class_stats: S,
    pub clustering: Option<Vec<ClusterOutcome>>,
    pub ordering_summary: Option<OrderingSummary>,
    pub warnings: Vec<String>,
}

fn write_report<C: Serialize, S: Serialize>(report: &Report<C, S>, dir: &Path) -> Result<PathBuf> {
    let path = dir.join("report.json");
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    fs::write(&path, json).map_err(|e| AppError::io(&path, e))?;
    Ok(path)
}

fn emit_matrix(
    dm: &DistanceMatrix,
    dir: &Path,
    stem: &str,
    matrices: &mut Vec<String>,
) -> Result<()> {
    let csv = format!("{stem}.csv");
    let ppm = format!("{stem}.ppm");
    write_distance_csv(dm, &dir.join(&csv))?;
    write_heatmap(dm.entries(), &dir.join(&ppm))?;
    matrices.push(csv);
    matrices.push(ppm);
    Ok(())
}

// ---------------------------------------------------------------------------
// Toy experiment: chain vs random vs star under widening weight supports.
// ---------------------------------------------------------------------------

pub const TOY_N: usize = 200;
pub const TOY_M: usize = 400;

#[derive(Debug, Clone, Serialize)]
pub struct ToyConfig {
    pub n: usize,
    pub m: usize,
    pub geometry: GeometryConfig,
    pub seeds: Vec<u64>,
    /// Weight supports; `(1, 1)` is the unweighted baseline.
    pub supports: Vec<(f64, f64)>,
}

/// One (seed, support) measurement: the three pairwise distances per metric.
#[derive(Debug, Clone, Serialize)]
pub struct ToyRecord {
    pub seed: u64,
    pub support: (f64, f64),
    pub metric: Metric,
    pub star_random: f64,
    pub star_chain: f64,
    pub chain_random: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SupportSummary {
    pub support: (f64, f64),
    pub total_seeds: usize,
    /// Seeds where d(star, random) is the strict minimum of the three.
    pub riemannian_star_random_smallest: usize,
    /// Same count under the Frobenius baseline, reported for comparison.
    pub frobenius_star_random_smallest: usize,
    /// Mean distances across seeds, keyed like the records.
    pub riemannian_means: (f64, f64, f64),
    pub frobenius_means: (f64, f64, f64),
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderingSummary {
    pub per_support: Vec<SupportSummary>,
    pub records: Vec<ToyRecord>,
}

/// Builds the three topologies per seed, weights them per support, and
/// records the distance orderings. Exemplar matrices for the first seed of
/// each support are written alongside the report.
pub fn run_toy(
    seeds: &[u64],
    supports: &[(f64, f64)],
    geometry: &GeometryConfig,
    out_dir: &Path,
) -> Result<PathBuf> {
    if seeds.is_empty() {
        return Err(AppError::Usage(
            "toy experiment needs at least one seed".into(),
        ));
    }
    fs::create_dir_all(out_dir).map_err(|e| AppError::io(out_dir, e))?;
    let labels = vec![
        "chain".to_string(),
        "random".to_string(),
        "star".to_string(),
    ];
    let mut matrices = Vec::new();
    let mut records = Vec::new();
    let mut per_support = Vec::new();

    for &support in supports {
        let (low, high) = support;
        let mut rie_hits = 0usize;
        let mut fro_hits = 0usize;
        let mut rie_sums = (0.0, 0.0, 0.0);
        let mut fro_sums = (0.0, 0.0, 0.0);
        for (si, &seed) in seeds.iter().enumerate() {
            let chain = gen_chain(TOY_N, TOY_M)?;
            let star = gen_star(TOY_N, TOY_M, mix(seed, 1))?;
            let random = gen_gnm(TOY_N, TOY_M, mix(seed, 2))?;
            let weighted: Vec<WeightedGraph> = [chain, random, star]
                .iter()
                .enumerate()
                .map(|(k, g)| assign_weights(g, low, high, mix(seed, 10 + k as u64)))
                .collect();
            let points = laplacian_points(&weighted, geometry)?;
            for metric in [Metric::Riemannian, Metric::Frobenius] {
                let dm = pairwise_matrix(&points, labels.clone(), metric)?;
                // Order: chain = 0, random = 1, star = 2.
                let record = ToyRecord {
                    seed,
                    support,
                    metric,
                    star_random: dm.get(2, 1),
                    star_chain: dm.get(2, 0),
                    chain_random: dm.get(0, 1),
                };
                let strict_min = record.star_random < record.star_chain
                    && record.star_random < record.chain_random;
                match metric {
                    Metric::Riemannian => {
                        rie_hits += strict_min as usize;
                        rie_sums.0 += record.star_random;
                        rie_sums.1 += record.star_chain;
                        rie_sums.2 += record.chain_random;
                    }
                    Metric::Frobenius => {
                        fro_hits += strict_min as usize;
                        fro_sums.0 += record.star_random;
                        fro_sums.1 += record.star_chain;
                        fro_sums.2 += record.chain_random;
                    }
                }
                if si == 0 {
                    let stem = format!(
                        "toy_{}_{}_{}",
                        metric.name(),
                        format_support(low),
                        format_support(high)
                    );
                    emit_matrix(&dm, out_dir, &stem, &mut matrices)?;
                }
                records.push(record);
            }
        }
        let n = seeds.len() as f64;
        per_support.push(SupportSummary {
            support,
            total_seeds: seeds.len(),
            riemannian_star_random_smallest: rie_hits,
            frobenius_star_random_smallest: fro_hits,
            riemannian_means: (rie_sums.0 / n, rie_sums.1 / n, rie_sums.2 / n),
            frobenius_means: (fro_sums.0 / n, fro_sums.1 / n, fro_sums.2 / n),
        });
    }

    let report = Report {
        config: ToyConfig {
            n: TOY_N,
            m: TOY_M,
            geometry: *geometry,
            seeds: seeds.to_vec(),
            supports: supports.to_vec(),
        },
        seed: seeds[0],
        matrices,
        class_stats: (),
        clustering: None,
        ordering_summary: Some(OrderingSummary {
            per_support,
            records,
        }),
        warnings: Vec::new(),
    };
    write_report(&report, out_dir)
}

fn format_support(x: f64) -> String {
    format!("{x}").replace('.', "p")
}

// ---------------------------------------------------------------------------
// Scale-free vs random separation.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ScaleFreeConfig {
    pub n: usize,
    pub m_attach: usize,
    pub m_random: usize,
    pub n_per_class: usize,
    pub geometry: GeometryConfig,
    pub k_medoids_restarts: usize,
}

/// Generates `n_per_class` scale-free and random networks, measures both
/// metrics, clusters with k-medoids (k = 2), and emits matrices plus report.
pub fn run_scalefree(
    n_per_class: usize,
    seed: u64,
    n: usize,
    m_attach: usize,
    geometry: &GeometryConfig,
    out_dir: &Path,
) -> Result<PathBuf> {
    if n_per_class < 2 {
        return Err(AppError::Usage("need at least 2 networks per class".into()));
    }
    fs::create_dir_all(out_dir).map_err(|e| AppError::io(out_dir, e))?;
    let m_random = m_attach * (n - m_attach);

    let mut graphs = Vec::with_capacity(2 * n_per_class);
    let mut labels = Vec::with_capacity(2 * n_per_class);
    let mut classes = Vec::with_capacity(2 * n_per_class);
    for i in 0..n_per_class {
        graphs.push(gen_ba(n, m_attach, mix(seed, i as u64))?);
        labels.push(format!("scalefree_{i:02}"));
        classes.push("scalefree".to_string());
    }
    for i in 0..n_per_class {
        graphs.push(gen_gnm(n, m_random, mix(seed, 1_000_000 + i as u64))?);
        labels.push(format!("random_{i:02}"));
        classes.push("random".to_string());
    }

    let points = laplacian_points(&graphs, geometry)?;
    let restarts = 10;
    let mut matrices = Vec::new();
    let mut stats = Vec::new();
    let mut clustering = Vec::new();
    for metric in [Metric::Riemannian, Metric::Frobenius] {
        let dm = pairwise_matrix(&points, labels.clone(), metric)?;
        stats.push(class_stats(&dm, &classes)?);
        clustering.push(cluster_outcome(&dm, &classes, 2, seed, restarts));
        emit_matrix(
            &dm,
            out_dir,
            &format!("scalefree_{}", metric.name()),
            &mut matrices,
        )?;
    }

    let report = Report {
        config: ScaleFreeConfig {
            n,
            m_attach,
            m_random,
            n_per_class,
            geometry: *geometry,
            k_medoids_restarts: restarts,
        },
        seed,
        matrices,
        class_stats: stats,
        clustering: Some(clustering),
        ordering_summary: None,
        warnings: Vec::new(),
    };
    write_report(&report, out_dir)
}

// ---------------------------------------------------------------------------
// Expression-cohort experiment.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ExpressionConfig {
    pub n_networks: usize,
    pub subset_size: usize,
    pub geometry: GeometryConfig,
    pub class_a: String,
    pub class_b: String,
    pub k_medoids_restarts: usize,
}

/// Builds one correlation-network cohort per expression matrix over the
/// shared topology (class seeds `mix(seed, 1)` and `mix(seed, 2)`), then
/// measures, clusters, and reports exactly like the scale-free run.
#[allow(clippy::too_many_arguments)]
pub fn run_expression(
    expr_a: &ExpressionMatrix,
    expr_b: &ExpressionMatrix,
    topo: &TopologyTemplate,
    n_networks: usize,
    subset_size: usize,
    seed: u64,
    geometry: &GeometryConfig,
    out_dir: &Path,
) -> Result<PathBuf> {
    fs::create_dir_all(out_dir).map_err(|e| AppError::io(out_dir, e))?;
    let cohort_a = build_cohort(expr_a, topo, n_networks, subset_size, mix(seed, 1))?;
    let cohort_b = build_cohort(expr_b, topo, n_networks, subset_size, mix(seed, 2))?;

    let mut warnings = Vec::new();
    let mut graphs = Vec::with_capacity(2 * n_networks);
    let mut labels = Vec::with_capacity(2 * n_networks);
    let mut classes = Vec::with_capacity(2 * n_networks);
    for (i, net) in cohort_a.networks.iter().enumerate() {
        for w in &net.warnings {
            warnings.push(format!("a_{i:02}: {w}"));
        }
        graphs.push(net.graph.clone());
        labels.push(format!("a_{i:02}"));
        classes.push("a".to_string());
    }
    for (i, net) in cohort_b.networks.iter().enumerate() {
        for w in &net.warnings {
            warnings.push(format!("b_{i:02}: {w}"));
        }
        graphs.push(net.graph.clone());
        labels.push(format!("b_{i:02}"));
        classes.push("b".to_string());
    }

    let points = laplacian_points(&graphs, geometry)?;
    let restarts = 10;
    let mut matrices = Vec::new();
    let mut stats = Vec::new();
    let mut clustering = Vec::new();
    for metric in [Metric::Riemannian, Metric::Frobenius] {
        let dm = pairwise_matrix(&points, labels.clone(), metric)?;
        stats.push(class_stats(&dm, &classes)?);
        clustering.push(cluster_outcome(&dm, &classes, 2, seed, restarts));
        emit_matrix(
            &dm,
            out_dir,
            &format!("expression_{}", metric.name()),
            &mut matrices,
        )?;
    }

    let report = Report {
        config: ExpressionConfig {
            n_networks,
            subset_size,
            geometry: *geometry,
            class_a: "a".to_string(),
            class_b: "b".to_string(),
            k_medoids_restarts: restarts,
        },
        seed,
        matrices,
        class_stats: stats,
        clustering: Some(clustering),
        ordering_summary: None,
        warnings,
    };
    write_report(&report, out_dir)
}
