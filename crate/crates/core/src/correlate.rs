//! Correlation-weighted biological networks: a fixed interaction topology is
//! joined with an expression matrix, and each edge weight becomes the
//! absolute Pearson correlation of its endpoint genes over a chosen sample
//! subset.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{GraphError, WeightedGraph};
use crate::rng::{mix, Xoshiro256};
use crate::scalar;

/// Weight assigned in place of a zero correlation so the fixed topology stays
/// intact and connected.
pub const ZERO_WEIGHT_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum IngestError {
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    DuplicateId {
        id: String,
    },
    MissingGene {
        gene: String,
    },
    SubsetTooSmall {
        size: usize,
    },
    SubsetTooLarge {
        size: usize,
        available: usize,
    },
    UnknownSample {
        id: String,
    },
    Graph(GraphError),
}

impl fmt::Display for IngestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IngestError::Parse {
                line,
                column,
                message,
            } => write!(f, "parse error at line {line}, column {column}: {message}"),
            IngestError::DuplicateId { id } => write!(f, "duplicate id {id:?}"),
            IngestError::MissingGene { gene } => {
                write!(
                    f,
                    "topology gene {gene:?} is absent from the expression matrix"
                )
            }
            IngestError::SubsetTooSmall { size } => {
                write!(
                    f,
                    "sample subset of size {size} is too small (need at least 2)"
                )
            }
            IngestError::SubsetTooLarge { size, available } => {
                write!(
                    f,
                    "sample subset of size {size} exceeds the {available} available"
                )
            }
            IngestError::UnknownSample { id } => write!(f, "unknown sample id {id:?}"),
            IngestError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for IngestError {}

impl From<GraphError> for IngestError {
    fn from(e: GraphError) -> Self {
        IngestError::Graph(e)
    }
}

pub type Result<T> = core::result::Result<T, IngestError>;

/// Gene-by-sample expression values with their row and column ids.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpressionMatrix {
    gene_ids: Vec<String>,
    sample_ids: Vec<String>,
    /// Row-major, `gene_count * sample_count`.
    values: Vec<f64>,
}

impl ExpressionMatrix {
    pub fn new(gene_ids: Vec<String>, sample_ids: Vec<String>, values: Vec<f64>) -> Result<Self> {
        if values.len() != gene_ids.len() * sample_ids.len() {
            return Err(IngestError::Parse {
                line: 0,
                column: 0,
                message: "value buffer does not match gene x sample dimensions".to_string(),
            });
        }
        check_distinct(&gene_ids)?;
        check_distinct(&sample_ids)?;
        Ok(ExpressionMatrix {
            gene_ids,
            sample_ids,
            values,
        })
    }

    /// Parses the exchange CSV: header row of sample ids (first cell is a
    /// corner label and is ignored), one row per gene with the gene id in the
    /// first column. Non-numeric cells are rejected with their coordinates.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(IngestError::Parse {
            line: 1,
            column: 1,
            message: "empty file".to_string(),
        })?;
        let sample_ids: Vec<String> = header
            .split(',')
            .skip(1)
            .map(|s| s.trim().to_string())
            .collect();
        if sample_ids.is_empty() {
            return Err(IngestError::Parse {
                line: 1,
                column: 2,
                message: "header has no sample ids".to_string(),
            });
        }
        let mut gene_ids = Vec::new();
        let mut values = Vec::new();
        for (line_idx, line) in lines {
            let mut fields = line.split(',');
            let gene = fields.next().unwrap_or("").trim().to_string();
            if gene.is_empty() {
                return Err(IngestError::Parse {
                    line: line_idx + 1,
                    column: 1,
                    message: "missing gene id".to_string(),
                });
            }
            let mut row = Vec::with_capacity(sample_ids.len());
            for (col_idx, field) in fields.enumerate() {
                let trimmed = field.trim();
                let value: f64 = trimmed.parse().map_err(|_| IngestError::Parse {
                    line: line_idx + 1,
                    column: col_idx + 2,
                    message: format!("not a number: {trimmed:?}"),
                })?;
                row.push(value);
            }
            if row.len() != sample_ids.len() {
                return Err(IngestError::Parse {
                    line: line_idx + 1,
                    column: row.len() + 2,
                    message: format!("expected {} values, found {}", sample_ids.len(), row.len()),
                });
            }
            gene_ids.push(gene);
            values.extend_from_slice(&row);
        }
        ExpressionMatrix::new(gene_ids, sample_ids, values)
    }

    pub fn gene_ids(&self) -> &[String] {
        &self.gene_ids
    }

    pub fn sample_ids(&self) -> &[String] {
        &self.sample_ids
    }

    pub fn gene_count(&self) -> usize {
        self.gene_ids.len()
    }

    pub fn sample_count(&self) -> usize {
        self.sample_ids.len()
    }

    pub fn gene_index(&self, gene: &str) -> Option<usize> {
        self.gene_ids.iter().position(|g| g == gene)
    }

    pub fn row(&self, gene: usize) -> &[f64] {
        let s = self.sample_count();
        &self.values[gene * s..(gene + 1) * s]
    }

    /// Maps sample ids to indices, preserving order.
    pub fn resolve_samples(&self, ids: &[String]) -> Result<Vec<usize>> {
        ids.iter()
            .map(|id| {
                self.sample_ids
                    .iter()
                    .position(|s| s == id)
                    .ok_or_else(|| IngestError::UnknownSample { id: id.clone() })
            })
            .collect()
    }
}

fn check_distinct(ids: &[String]) -> Result<()> {
    let mut sorted: Vec<&String> = ids.iter().collect();
    sorted.sort();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(IngestError::DuplicateId {
                id: pair[0].clone(),
            });
        }
    }
    Ok(())
}

/// An unweighted interaction topology over gene ids. Weights come later from
/// correlations; the template itself is fixed across a cohort.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologyTemplate {
    pairs: Vec<(String, String)>,
}

impl TopologyTemplate {
    /// Validates simplicity: no self-pairs, no duplicate pairs in either order.
    pub fn new(pairs: Vec<(String, String)>) -> Result<Self> {
        let mut seen: Vec<(&str, &str)> = Vec::with_capacity(pairs.len());
        for (a, b) in &pairs {
            if a == b {
                return Err(IngestError::DuplicateId { id: a.clone() });
            }
            let key = if a < b {
                (a.as_str(), b.as_str())
            } else {
                (b.as_str(), a.as_str())
            };
            if seen.contains(&key) {
                return Err(IngestError::DuplicateId {
                    id: format!("{}--{}", key.0, key.1),
                });
            }
            seen.push(key);
        }
        Ok(TopologyTemplate { pairs })
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.len()
    }

    /// Genes in first-appearance order; this fixes the cohort's node ids.
    pub fn genes(&self) -> Vec<String> {
        let mut genes: Vec<String> = Vec::new();
        for (a, b) in &self.pairs {
            if !genes.contains(a) {
                genes.push(a.clone());
            }
            if !genes.contains(b) {
                genes.push(b.clone());
            }
        }
        genes
    }
}

/// Pearson correlation by the direct sum formula. `None` when either side has
/// zero variance over the window.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mean_x: f64 = x.iter().sum::<f64>() / n;
    let mean_y: f64 = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        let dx = a - mean_x;
        let dy = b - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    Some(sxy / scalar::sqrt(sxx * syy))
}

/// How an edge correlation becomes a weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightMode {
    /// Absolute correlation `|r|`; keeps weights in `[0, 1]` and the
    /// Laplacian well-defined under anticorrelation.
    #[default]
    AbsCorrelation,
    /// Squared correlation `r^2`.
    SquaredCorrelation,
}

impl WeightMode {
    fn apply(&self, r: f64) -> f64 {
        match self {
            WeightMode::AbsCorrelation => scalar::abs(r),
            WeightMode::SquaredCorrelation => r * r,
        }
    }
}

/// Non-fatal events recorded while weighting a topology.
#[derive(Debug, Clone, PartialEq)]
pub enum CorrelationWarning {
    /// A gene was constant over the subset; the affected edge weight was set
    /// to zero (then raised to [`ZERO_WEIGHT_EPS`]).
    ConstantGene {
        gene: String,
        edge: (String, String),
    },
    /// A zero weight was raised to [`ZERO_WEIGHT_EPS`] to preserve topology.
    ZeroWeightRaised { edge: (String, String) },
}

impl fmt::Display for CorrelationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrelationWarning::ConstantGene { gene, edge } => write!(
                f,
                "gene {gene:?} constant over subset; edge {}--{} weighted 0",
                edge.0, edge.1
            ),
            CorrelationWarning::ZeroWeightRaised { edge } => write!(
                f,
                "edge {}--{} weight 0 raised to {ZERO_WEIGHT_EPS}",
                edge.0, edge.1
            ),
        }
    }
}

/// A weighted graph built from one sample subset, with its warnings.
#[derive(Debug, Clone)]
pub struct CorrelationNetwork {
    pub graph: WeightedGraph,
    pub warnings: Vec<CorrelationWarning>,
}

/// Weights `topo`'s edges with correlations over the given sample indices.
/// Nodes are `topo.genes()` in first-appearance order, labels attached.
pub fn correlation_network(
    expr: &ExpressionMatrix,
    topo: &TopologyTemplate,
    samples: &[usize],
) -> Result<CorrelationNetwork> {
    correlation_network_with(expr, topo, samples, WeightMode::default())
}

pub fn correlation_network_with(
    expr: &ExpressionMatrix,
    topo: &TopologyTemplate,
    samples: &[usize],
    mode: WeightMode,
) -> Result<CorrelationNetwork> {
    if samples.len() < 2 {
        return Err(IngestError::SubsetTooSmall {
            size: samples.len(),
        });
    }
    for &s in samples {
        if s >= expr.sample_count() {
            return Err(IngestError::UnknownSample {
                id: format!("#{s}"),
            });
        }
    }
    let genes = topo.genes();
    let mut expr_rows = Vec::with_capacity(genes.len());
    for gene in &genes {
        let idx = expr
            .gene_index(gene)
            .ok_or_else(|| IngestError::MissingGene { gene: gene.clone() })?;
        let full = expr.row(idx);
        let window: Vec<f64> = samples.iter().map(|&s| full[s]).collect();
        expr_rows.push(window);
    }
    let node_of = |gene: &str| {
        genes
            .iter()
            .position(|g| g == gene)
            .expect("gene collected")
    };

    let mut warnings = Vec::new();
    let mut edges = Vec::with_capacity(topo.edge_count());
    for (a, b) in topo.pairs() {
        let (ia, ib) = (node_of(a), node_of(b));
        let weight = match pearson(&expr_rows[ia], &expr_rows[ib]) {
            Some(r) => mode.apply(r),
            None => {
                let constant = variance_is_zero(&expr_rows[ia]);
                let gene = if constant { a.clone() } else { b.clone() };
                warnings.push(CorrelationWarning::ConstantGene {
                    gene,
                    edge: (a.clone(), b.clone()),
                });
                0.0
            }
        };
        let weight = if weight == 0.0 {
            warnings.push(CorrelationWarning::ZeroWeightRaised {
                edge: (a.clone(), b.clone()),
            });
            ZERO_WEIGHT_EPS
        } else {
            weight
        };
        edges.push((ia, ib, weight));
    }
    let graph = WeightedGraph::new(genes.len(), edges)?.with_labels(genes)?;
    Ok(CorrelationNetwork { graph, warnings })
}

fn variance_is_zero(x: &[f64]) -> bool {
    x.windows(2).all(|w| w[0] == w[1])
}

/// One generated cohort: networks over an identical topology, each weighted
/// from its own seeded sample subset.
#[derive(Debug, Clone)]
pub struct Cohort {
    pub networks: Vec<CorrelationNetwork>,
    /// Per-network sample indices, in draw order.
    pub subsets: Vec<Vec<usize>>,
}

/// Builds `n_networks` correlation networks, each over a sample subset of
/// size `subset_size` drawn without replacement with the per-network seed
/// `mix(seed, i)`. Subsets are independent across networks.
pub fn build_cohort(
    expr: &ExpressionMatrix,
    topo: &TopologyTemplate,
    n_networks: usize,
    subset_size: usize,
    seed: u64,
) -> Result<Cohort> {
    build_cohort_with(
        expr,
        topo,
        n_networks,
        subset_size,
        seed,
        WeightMode::default(),
    )
}

pub fn build_cohort_with(
    expr: &ExpressionMatrix,
    topo: &TopologyTemplate,
    n_networks: usize,
    subset_size: usize,
    seed: u64,
    mode: WeightMode,
) -> Result<Cohort> {
    if subset_size > expr.sample_count() {
        return Err(IngestError::SubsetTooLarge {
            size: subset_size,
            available: expr.sample_count(),
        });
    }
    let mut networks = Vec::with_capacity(n_networks);
    let mut subsets = Vec::with_capacity(n_networks);
    for i in 0..n_networks {
        let mut rng = Xoshiro256::from_seed(mix(seed, i as u64));
        let subset = rng.sample_indices(expr.sample_count(), subset_size);
        let network = correlation_network_with(expr, topo, &subset, mode)?;
        networks.push(network);
        subsets.push(subset);
    }
    Ok(Cohort { networks, subsets })
}
