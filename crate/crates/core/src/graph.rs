//! Weighted undirected graphs, their normalized and eps-shifted Laplacians,
//! and the unweighted hop metric.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::manifold::{ManifoldError, SPDPoint};
use crate::matrix::Matrix;
use crate::scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphError {
    NodeOutOfRange {
        node: usize,
        node_count: usize,
    },
    SelfLoop {
        node: usize,
    },
    DuplicateEdge {
        u: usize,
        v: usize,
    },
    NonPositiveWeight {
        u: usize,
        v: usize,
        weight: f64,
    },
    /// A node with no incident edges, where a positive degree is required.
    IsolatedNode {
        node: usize,
    },
    /// Two nodes in different connected components.
    Disconnected {
        x: usize,
        y: usize,
    },
    SameNode {
        node: usize,
    },
    LabelCountMismatch {
        labels: usize,
        node_count: usize,
    },
    /// Node-measure masses do not sum to one.
    UnnormalizedMeasure {
        total: f64,
    },
    MeasureNegativeMass {
        node: usize,
        mass: f64,
    },
    MeasureDuplicateSupport {
        node: usize,
    },
    EmptyMeasure,
    /// Transportation simplex hit its pivot cap; practically unreachable.
    TransportPivotLimit,
    Manifold(ManifoldError),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NodeOutOfRange { node, node_count } => {
                write!(f, "node {node} out of range (node count {node_count})")
            }
            GraphError::SelfLoop { node } => write!(f, "self-loop at node {node}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u}, {v})"),
            GraphError::NonPositiveWeight { u, v, weight } => {
                write!(f, "non-positive weight {weight} on edge ({u}, {v})")
            }
            GraphError::IsolatedNode { node } => write!(f, "isolated node {node}"),
            GraphError::Disconnected { x, y } => {
                write!(f, "nodes {x} and {y} lie in different components")
            }
            GraphError::SameNode { node } => {
                write!(f, "expected two distinct nodes, got {node} twice")
            }
            GraphError::LabelCountMismatch { labels, node_count } => {
                write!(f, "{labels} labels for {node_count} nodes")
            }
            GraphError::UnnormalizedMeasure { total } => {
                write!(f, "measure mass sums to {total}, expected 1")
            }
            GraphError::MeasureNegativeMass { node, mass } => {
                write!(f, "negative mass {mass} at node {node}")
            }
            GraphError::MeasureDuplicateSupport { node } => {
                write!(f, "node {node} appears twice in a measure support")
            }
            GraphError::EmptyMeasure => write!(f, "measure has empty or inconsistent support"),
            GraphError::TransportPivotLimit => {
                write!(f, "transportation simplex exceeded its pivot limit")
            }
            GraphError::Manifold(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for GraphError {}

impl From<ManifoldError> for GraphError {
    fn from(e: ManifoldError) -> Self {
        GraphError::Manifold(e)
    }
}

pub type Result<T> = core::result::Result<T, GraphError>;

/// Undirected edge in canonical `u < v` form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Simple undirected graph with positive edge weights. Edges are stored
/// canonically (`u < v`, sorted, no duplicates); nodes may carry string
/// labels (gene names, file-sourced ids).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    node_count: usize,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
}

impl WeightedGraph {
    /// Validates and canonicalizes an edge list: orders endpoints, sorts,
    /// rejects self-loops, duplicates, out-of-range ids, and weights `<= 0`.
    pub fn new(node_count: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u >= node_count {
                return Err(GraphError::NodeOutOfRange {
                    node: u,
                    node_count,
                });
            }
            if v >= node_count {
                return Err(GraphError::NodeOutOfRange {
                    node: v,
                    node_count,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop { node: u });
            }
            if w <= 0.0 || w.is_nan() || !w.is_finite() {
                return Err(GraphError::NonPositiveWeight { u, v, weight: w });
            }
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            canon.push(Edge { u, v, w });
        }
        canon.sort_by_key(|e| (e.u, e.v));
        for pair in canon.windows(2) {
            if pair[0].u == pair[1].u && pair[0].v == pair[1].v {
                return Err(GraphError::DuplicateEdge {
                    u: pair[0].u,
                    v: pair[0].v,
                });
            }
        }
        Ok(WeightedGraph {
            node_count,
            edges: canon,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.node_count {
            return Err(GraphError::LabelCountMismatch {
                labels: labels.len(),
                node_count: self.node_count,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    fn check_node(&self, x: usize) -> Result<()> {
        if x >= self.node_count {
            return Err(GraphError::NodeOutOfRange {
                node: x,
                node_count: self.node_count,
            });
        }
        Ok(())
    }

    /// Neighbor lists as `(neighbor, weight)` pairs, ascending by neighbor id.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for e in &self.edges {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        for nbrs in &mut adj {
            nbrs.sort_by_key(|&(y, _)| y);
        }
        adj
    }

    /// Weighted degree of every node.
    pub fn degrees(&self) -> Vec<f64> {
        let mut deg = vec![0.0; self.node_count];
        for e in &self.edges {
            deg[e.u] += e.w;
            deg[e.v] += e.w;
        }
        deg
    }

    /// Dense symmetric adjacency matrix.
    pub fn adjacency_matrix(&self) -> Matrix {
        let mut a = Matrix::zeros(self.node_count, self.node_count);
        for e in &self.edges {
            a[(e.u, e.v)] = e.w;
            a[(e.v, e.u)] = e.w;
        }
        a
    }

    /// Breadth-first hop distances from `start`; `usize::MAX` marks
    /// unreachable nodes.
    pub fn bfs_hops(&self, start: usize) -> Result<Vec<usize>> {
        self.check_node(start)?;
        let adj = self.adjacency();
        let mut dist = vec![usize::MAX; self.node_count];
        dist[start] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        Ok(dist)
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return true;
        }
        match self.bfs_hops(0) {
            Ok(d) => d.iter().all(|&x| x != usize::MAX),
            Err(_) => false,
        }
    }

    /// Same structure with every weight replaced.
    pub fn with_edge_weights(&self, weights: &[f64]) -> Result<Self> {
        assert_eq!(weights.len(), self.edges.len(), "one weight per edge");
        let edges = self
            .edges
            .iter()
            .zip(weights)
            .map(|(e, &w)| (e.u, e.v, w))
            .collect();
        let g = WeightedGraph::new(self.node_count, edges)?;
        match &self.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }
}

/// Unweighted shortest-path (hop) distance between two nodes.
pub fn hop_distance(g: &WeightedGraph, x: usize, y: usize) -> Result<usize> {
    g.check_node(x)?;
    g.check_node(y)?;
    if x == y {
        return Ok(0);
    }
    let dist = g.bfs_hops(x)?;
    if dist[y] == usize::MAX {
        return Err(GraphError::Disconnected { x, y });
    }
    Ok(dist[y])
}

/// Normalized graph Laplacian `L = I - D^{-1/2} A D^{-1/2}` over weighted
/// degrees. Eigenvalues lie in `[0, 2]`; requires every node to have positive
/// degree.
pub fn normalized_laplacian(g: &WeightedGraph) -> Result<Matrix> {
    let deg = g.degrees();
    if let Some(node) = deg.iter().position(|&d| d <= 0.0) {
        return Err(GraphError::IsolatedNode { node });
    }
    let n = g.node_count();
    let inv_sqrt_deg: Vec<f64> = deg.iter().map(|&d| 1.0 / scalar::sqrt(d)).collect();
    let mut l = Matrix::identity(n);
    for e in g.edges() {
        let off = -e.w * inv_sqrt_deg[e.u] * inv_sqrt_deg[e.v];
        l[(e.u, e.v)] = off;
        l[(e.v, e.u)] = off;
    }
    Ok(l)
}

/// Positive-definite surrogate `L + eps I` placing the graph on the SPD
/// manifold. The spectrum is the Laplacian spectrum shifted by `eps` with
/// unchanged eigenvectors. Disconnected graphs are rejected: the extra kernel
/// dimensions would silently collapse distances instead of failing loudly.
pub fn approx_laplacian(g: &WeightedGraph, eps: f64) -> Result<SPDPoint> {
    assert!(eps > 0.0, "eps must be positive");
    if g.node_count() > 0 {
        if let Some(y) = g.bfs_hops(0)?.iter().position(|&d| d == usize::MAX) {
            return Err(GraphError::Disconnected { x: 0, y });
        }
    }
    let mut l = normalized_laplacian(g)?;
    for i in 0..g.node_count() {
        l[(i, i)] += eps;
    }
    Ok(SPDPoint::new(l)?)
}

/// Scales a point to unit trace, preserving eigenvalue ratios.
pub fn trace_normalize(rho: &SPDPoint) -> SPDPoint {
    let t = rho.trace();
    assert!(t > 0.0, "SPD trace is positive");
    SPDPoint::with_floor(rho.entries().scale(1.0 / t), rho.eig_floor() / t)
        .expect("scaling preserves positive-definiteness")
}

/// Default diagonal shift for [`approx_laplacian`]: small against the `[0, 2]`
/// spectral range while keeping the whitening transform well-conditioned.
pub const DEFAULT_EPS: f64 = 1e-3;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix;

    pub(crate) fn k(n: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v, 1.0));
            }
        }
        WeightedGraph::new(n, edges).unwrap()
    }

    pub(crate) fn cycle(n: usize) -> WeightedGraph {
        let edges = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
        WeightedGraph::new(n, edges).unwrap()
    }

    pub(crate) fn path(n: usize) -> WeightedGraph {
        let edges = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
        WeightedGraph::new(n, edges).unwrap()
    }

    #[test]
    fn rejects_invalid_edges() {
        assert!(matches!(
            WeightedGraph::new(3, vec![(0, 0, 1.0)]),
            Err(GraphError::SelfLoop { node: 0 })
        ));
        assert!(matches!(
            WeightedGraph::new(3, vec![(0, 5, 1.0)]),
            Err(GraphError::NodeOutOfRange { node: 5, .. })
        ));
        assert!(matches!(
            WeightedGraph::new(3, vec![(0, 1, 1.0), (1, 0, 2.0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        ));
        assert!(matches!(
            WeightedGraph::new(3, vec![(0, 1, 0.0)]),
            Err(GraphError::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn laplacian_of_k2() {
        let l = normalized_laplacian(&k(2)).unwrap();
        let expect = Matrix::from_rows(&[&[1.0, -1.0], &[-1.0, 1.0]]);
        assert!(l.sub(&expect).frobenius_norm() < 1e-15);
    }

    #[test]
    fn laplacian_of_k4_spectrum() {
        // Complete graph: nonzero eigenvalues all n/(n-1).
        let l = normalized_laplacian(&k(4)).unwrap();
        let vals = matrix::sym_eigenvalues(&l).unwrap();
        assert!(vals[0].abs() < 1e-12);
        for &v in &vals[1..] {
            assert!((v - 4.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn laplacian_kernel_is_sqrt_degree_vector() {
        let g = WeightedGraph::new(4, vec![(0, 1, 2.0), (1, 2, 1.0), (2, 3, 3.0), (0, 3, 1.0)])
            .unwrap();
        let l = normalized_laplacian(&g).unwrap();
        let deg = g.degrees();
        let n = g.node_count();
        // L (D^{1/2} 1) = 0.
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += l[(i, j)] * scalar::sqrt(deg[j]);
            }
            assert!(acc.abs() < 1e-10);
        }
        // Connected graph: smallest eigenvalue 0.
        let vals = matrix::sym_eigenvalues(&l).unwrap();
        assert!(vals[0].abs() < 1e-10);
        assert!(*vals.last().unwrap() <= 2.0 + 1e-10);
    }

    #[test]
    fn laplacian_rejects_isolated_node() {
        let g = WeightedGraph::new(3, vec![(0, 1, 1.0)]).unwrap();
        assert!(matches!(
            normalized_laplacian(&g),
            Err(GraphError::IsolatedNode { node: 2 })
        ));
    }

    #[test]
    fn approx_laplacian_shifts_spectrum() {
        let eps = 1e-3;
        let rho = approx_laplacian(&k(2), eps).unwrap();
        let vals = rho.eigenvalues();
        assert!((vals[0] - eps).abs() < 1e-12);
        assert!((vals[1] - (2.0 + eps)).abs() < 1e-12);
    }

    #[test]
    fn approx_laplacian_rejects_disconnected() {
        let g = WeightedGraph::new(4, vec![(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(matches!(
            approx_laplacian(&g, 1e-3),
            Err(GraphError::Disconnected { .. })
        ));
    }

    #[test]
    fn trace_normalize_unit_trace_and_idempotent() {
        let rho = approx_laplacian(&cycle(4), 1e-3).unwrap();
        let t = trace_normalize(&rho);
        assert!((t.trace() - 1.0).abs() < 1e-12);
        let tt = trace_normalize(&t);
        assert!((tt.trace() - 1.0).abs() < 1e-12);
        assert!(tt.entries().sub(t.entries()).frobenius_norm() < 1e-12);
        // Eigenvalue ratios preserved.
        let r0 = rho.eigenvalues()[1] / rho.eigenvalues()[0];
        let r1 = t.eigenvalues()[1] / t.eigenvalues()[0];
        assert!((r0 - r1).abs() < 1e-12 * r0);
    }

    #[test]
    fn identity_trace_normalized() {
        let t = trace_normalize(&SPDPoint::identity(4));
        for i in 0..4 {
            assert!((t.entries()[(i, i)] - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn hop_distance_paths_and_stars() {
        assert_eq!(hop_distance(&path(5), 0, 4).unwrap(), 4);
        // Star: leaf to leaf through the hub.
        let star = WeightedGraph::new(4, vec![(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        assert_eq!(hop_distance(&star, 1, 2).unwrap(), 2);
        assert_eq!(hop_distance(&star, 2, 2).unwrap(), 0);
    }

    #[test]
    fn hop_distance_reports_disconnection() {
        let g = WeightedGraph::new(4, vec![(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(matches!(
            hop_distance(&g, 0, 3),
            Err(GraphError::Disconnected { x: 0, y: 3 })
        ));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn hop_distance_matches_floyd_warshall() {
        // Fixed small graph; all-pairs oracle by Floyd-Warshall.
        let g = WeightedGraph::new(
            7,
            vec![
                (0, 1, 1.0),
                (1, 2, 1.0),
                (2, 3, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (5, 6, 1.0),
                (0, 6, 1.0),
                (1, 5, 1.0),
            ],
        )
        .unwrap();
        let n = g.node_count();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for i in 0..n {
            d[i][i] = 0;
        }
        for e in g.edges() {
            d[e.u][e.v] = 1;
            d[e.v][e.u] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                assert_eq!(hop_distance(&g, x, y).unwrap(), d[x][y]);
            }
        }
    }
}
