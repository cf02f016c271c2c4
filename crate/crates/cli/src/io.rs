//! File formats: edge-list TSV (with string-label sidecar), dense symmetric
//! matrix CSV, labeled distance-matrix CSV, and the expression/topology
//! loaders for the ingest pipeline.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use manifoldnet_core::correlate::{ExpressionMatrix, TopologyTemplate};
use manifoldnet_core::matrix::Matrix;
use manifoldnet_core::WeightedGraph;

use crate::error::{AppError, Result};
use crate::harness::DistanceMatrix;

/// Relative asymmetry tolerated by the matrix reader.
pub const MATRIX_SYMMETRY_RTOL: f64 = 1e-8;

/// Reads an edge-list TSV: `u<TAB>v[<TAB>weight]`, `#` comments and blank
/// lines ignored, weight defaulting to 1. Integer tokens are used as node ids
/// directly (count = max id + 1); if any endpoint is non-numeric, all ids are
/// treated as string labels and mapped to dense ids in first-appearance order.
pub fn read_edge_list(path: &Path) -> Result<WeightedGraph> {
    let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    let mut raw: Vec<(String, String, f64)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let u = fields.next().unwrap_or("").trim();
        let v = fields.next().map(str::trim).unwrap_or("");
        if u.is_empty() || v.is_empty() {
            return Err(AppError::format(
                path,
                format!("line {}: expected `u<TAB>v[<TAB>weight]`", lineno + 1),
            ));
        }
        let w = match fields.next().map(str::trim) {
            None | Some("") => 1.0,
            Some(tok) => tok.parse::<f64>().map_err(|_| {
                AppError::format(path, format!("line {}: bad weight {tok:?}", lineno + 1))
            })?,
        };
        raw.push((u.to_string(), v.to_string(), w));
    }
    if raw.is_empty() {
        return Err(AppError::format(path, "no edges found"));
    }

    let all_integer = raw
        .iter()
        .all(|(u, v, _)| u.parse::<usize>().is_ok() && v.parse::<usize>().is_ok());
    let (node_count, edges, labels) = if all_integer {
        let edges: Vec<(usize, usize, f64)> = raw
            .iter()
            .map(|(u, v, w)| (u.parse().unwrap(), v.parse().unwrap(), *w))
            .collect();
        let max = edges.iter().map(|&(u, v, _)| u.max(v)).max().unwrap_or(0);
        (max + 1, edges, None)
    } else {
        let mut ids: Vec<String> = Vec::new();
        let index = |label: &str, ids: &mut Vec<String>| -> usize {
            match ids.iter().position(|l| l == label) {
                Some(i) => i,
                None => {
                    ids.push(label.to_string());
                    ids.len() - 1
                }
            }
        };
        let edges: Vec<(usize, usize, f64)> = raw
            .iter()
            .map(|(u, v, w)| (index(u, &mut ids), index(v, &mut ids), *w))
            .collect();
        (ids.len(), edges, Some(ids))
    };

    let graph = WeightedGraph::new(node_count, edges)
        .map_err(|e| AppError::graph(path.display().to_string(), e))?;
    match labels {
        Some(l) => graph
            .with_labels(l)
            .map_err(|e| AppError::graph(path.display().to_string(), e)),
        None => Ok(graph),
    }
}

/// Writes the canonical edge list. Labeled graphs use their labels as ids.
pub fn write_edge_list(g: &WeightedGraph, path: &Path) -> Result<()> {
    let mut out = String::new();
    for e in g.edges() {
        match g.labels() {
            Some(labels) => out.push_str(&format!("{}\t{}\t{}\n", labels[e.u], labels[e.v], e.w)),
            None => out.push_str(&format!("{}\t{}\t{}\n", e.u, e.v, e.w)),
        }
    }
    fs::write(path, out).map_err(|e| AppError::io(path, e))
}

/// Sidecar mapping `{label: id}` for graphs read from string-labeled files.
pub fn write_label_map(g: &WeightedGraph, path: &Path) -> Result<()> {
    let Some(labels) = g.labels() else {
        return Ok(());
    };
    let map: BTreeMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let json = serde_json::to_string_pretty(&map).expect("label map serializes");
    fs::write(path, json).map_err(|e| AppError::io(path, e))
}

/// Reads a dense matrix CSV (no header, one row per line) and validates
/// squareness plus symmetry at 1e-8 relative tolerance.
pub fn read_matrix_csv(path: &Path) -> Result<Matrix> {
    let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|t| t.trim().parse::<f64>()).collect();
        let row = row.map_err(|_| {
            AppError::format(path, format!("line {}: non-numeric cell", lineno + 1))
        })?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(AppError::format(path, "matrix is not square"));
    }
    let m = Matrix::from_vec(n, n, rows.into_iter().flatten().collect());
    if m.asymmetry() > MATRIX_SYMMETRY_RTOL * m.frobenius_norm() {
        return Err(AppError::format(
            path,
            format!("matrix is not symmetric within {MATRIX_SYMMETRY_RTOL:e} relative tolerance"),
        ));
    }
    Ok(m)
}

/// Writes a dense matrix as CSV, full storage, no header. Float formatting is
/// the shortest round-trip representation, so write/read is lossless.
pub fn write_matrix_csv(m: &Matrix, path: &Path) -> Result<()> {
    fs::write(path, matrix_csv_string(m)).map_err(|e| AppError::io(path, e))
}

pub fn matrix_csv_string(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format!("{}", m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Distance matrix CSV: one header row of labels, then the full square matrix.
pub fn write_distance_csv(dm: &DistanceMatrix, path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push_str(&dm.labels().join(","));
    out.push('\n');
    out.push_str(&matrix_csv_string(dm.entries()));
    fs::write(path, out).map_err(|e| AppError::io(path, e))
}

/// Loads a gene-by-sample expression CSV (header of sample ids, gene id in
/// the first column).
pub fn load_expression(path: &Path) -> Result<ExpressionMatrix> {
    let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    ExpressionMatrix::parse_csv(&text).map_err(AppError::from)
}

/// Loads an unweighted topology template from a TSV of gene pairs. A third
/// column, when present, is ignored (templates carry no weights).
pub fn load_topology(path: &Path) -> Result<TopologyTemplate> {
    let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let a = fields.next().unwrap_or("").trim();
        let b = fields.next().map(str::trim).unwrap_or("");
        if a.is_empty() || b.is_empty() {
            return Err(AppError::format(
                path,
                format!("line {}: expected `geneA<TAB>geneB`", lineno + 1),
            ));
        }
        pairs.push((a.to_string(), b.to_string()));
    }
    TopologyTemplate::new(pairs).map_err(AppError::from)
}
