//! Probability measures on graph nodes and the Wasserstein-1 distance
//! between them, solved exactly by the transportation simplex with the
//! unweighted hop metric as ground cost.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{GraphError, Result, WeightedGraph};
use crate::scalar;

/// Tolerance on total mass of a [`NodeMeasure`].
pub const MASS_TOL: f64 = 1e-12;

/// A probability measure supported on finitely many graph nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeMeasure {
    support: Vec<usize>,
    mass: Vec<f64>,
}

impl NodeMeasure {
    /// Validates distinct support, nonnegative masses, and unit total mass.
    pub fn new(support: Vec<usize>, mass: Vec<f64>) -> Result<Self> {
        if support.is_empty() || support.len() != mass.len() {
            return Err(GraphError::EmptyMeasure);
        }
        for (k, &node) in support.iter().enumerate() {
            if support[..k].contains(&node) {
                return Err(GraphError::MeasureDuplicateSupport { node });
            }
        }
        for (&node, &m) in support.iter().zip(&mass) {
            if m < 0.0 || !m.is_finite() {
                return Err(GraphError::MeasureNegativeMass { node, mass: m });
            }
        }
        let total: f64 = mass.iter().sum();
        if scalar::abs(total - 1.0) > MASS_TOL {
            return Err(GraphError::UnnormalizedMeasure { total });
        }
        Ok(NodeMeasure { support, mass })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Point mass at a single node.
    pub fn dirac(node: usize) -> Self {
        NodeMeasure {
            support: vec![node],
            mass: vec![1.0],
        }
    }

    /// Mass carried by `node` (zero off the support).
    pub fn mass_at(&self, node: usize) -> f64 {
        self.support
            .iter()
            .position(|&s| s == node)
            .map_or(0.0, |k| self.mass[k])
    }
}

/// One-step random-walk measure at `x`: `alpha` stays put, the rest spreads
/// over the neighbors proportionally to edge weight. `alpha = 0` is the
/// convention used by the edge-curvature computation.
pub fn neighbor_measure_with_idleness(
    g: &WeightedGraph,
    x: usize,
    alpha: f64,
) -> Result<NodeMeasure> {
    assert!((0.0..1.0).contains(&alpha), "idleness must lie in [0, 1)");
    if x >= g.node_count() {
        return Err(GraphError::NodeOutOfRange {
            node: x,
            node_count: g.node_count(),
        });
    }
    let adj = g.adjacency();
    let nbrs = &adj[x];
    if nbrs.is_empty() {
        return Err(GraphError::IsolatedNode { node: x });
    }
    let degree: f64 = nbrs.iter().map(|&(_, w)| w).sum();
    let mut support = Vec::with_capacity(nbrs.len() + 1);
    let mut mass = Vec::with_capacity(nbrs.len() + 1);
    if alpha > 0.0 {
        support.push(x);
        mass.push(alpha);
    }
    for &(y, w) in nbrs {
        support.push(y);
        mass.push((1.0 - alpha) * w / degree);
    }
    NodeMeasure::new(support, mass)
}

/// Weight-proportional neighbor measure with zero idleness.
pub fn neighbor_measure(g: &WeightedGraph, x: usize) -> Result<NodeMeasure> {
    neighbor_measure_with_idleness(g, x, 0.0)
}

/// Wasserstein-1 distance between two node measures with hop-metric ground
/// cost, via an exact transportation LP.
pub fn wasserstein1(mu: &NodeMeasure, nu: &NodeMeasure, g: &WeightedGraph) -> Result<f64> {
    let m = mu.support().len();
    let n = nu.support().len();
    let mut cost = vec![0.0f64; m * n];
    for (i, &s) in mu.support().iter().enumerate() {
        let hops = g.bfs_hops(s)?;
        for (j, &t) in nu.support().iter().enumerate() {
            if hops[t] == usize::MAX {
                return Err(GraphError::Disconnected { x: s, y: t });
            }
            cost[i * n + j] = hops[t] as f64;
        }
    }
    transport_simplex(mu.mass(), nu.mass(), &cost, n)
}

/// Exact minimum-cost transportation between balanced supply and demand
/// vectors, `cost` given row-major with `n` columns. Northwest-corner start,
/// dual (u, v) pricing, Bland's entering rule for guaranteed termination.
pub fn transport_simplex(supply: &[f64], demand: &[f64], cost: &[f64], n: usize) -> Result<f64> {
    let m = supply.len();
    assert_eq!(demand.len(), n);
    assert_eq!(cost.len(), m * n);
    assert!(m > 0 && n > 0, "empty transportation problem");

    // Northwest-corner initial basic feasible solution: exactly m + n - 1
    // cells forming a spanning tree of the bipartite row/column graph.
    let mut basis: Vec<(usize, usize, f64)> = Vec::with_capacity(m + n - 1);
    {
        let mut ra = supply.to_vec();
        let mut rb = demand.to_vec();
        let (mut i, mut j) = (0, 0);
        loop {
            let f = ra[i].min(rb[j]);
            basis.push((i, j, f));
            ra[i] -= f;
            rb[j] -= f;
            if i == m - 1 && j == n - 1 {
                break;
            }
            if ra[i] <= rb[j] && i < m - 1 {
                i += 1;
            } else if j < n - 1 {
                j += 1;
            } else {
                i += 1;
            }
        }
    }
    debug_assert_eq!(basis.len(), m + n - 1);

    let max_cost = cost.iter().fold(0.0f64, |a, &c| a.max(scalar::abs(c)));
    let tol = 1e-12 * (1.0 + max_cost);
    let pivot_limit = 1000 * (m + n) + 10_000;

    let mut u = vec![0.0f64; m];
    let mut v = vec![0.0f64; n];
    for _ in 0..pivot_limit {
        solve_duals(&basis, m, n, cost, &mut u, &mut v);

        // Entering variable: first (lexicographically smallest) cell with a
        // negative reduced cost. Bland's rule; rules out cycling.
        let mut entering = None;
        'scan: for i in 0..m {
            for j in 0..n {
                if cost[i * n + j] - u[i] - v[j] < -tol
                    && !basis.iter().any(|&(bi, bj, _)| bi == i && bj == j)
                {
                    entering = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((ei, ej)) = entering else {
            let total = basis
                .iter()
                .map(|&(i, j, f)| f.max(0.0) * cost[i * n + j])
                .sum();
            return Ok(total);
        };

        // The basis tree plus the entering cell contains a unique cycle;
        // cells at odd positions along the tree path lose theta.
        let path = tree_path(&basis, m, n, ei, ej);
        let mut theta = f64::INFINITY;
        let mut leaving = usize::MAX;
        for (pos, &cell_idx) in path.iter().enumerate() {
            if pos % 2 == 0 {
                let flow = basis[cell_idx].2;
                if flow < theta {
                    theta = flow;
                    leaving = cell_idx;
                }
            }
        }
        debug_assert!(leaving != usize::MAX);
        for (pos, &cell_idx) in path.iter().enumerate() {
            if pos % 2 == 0 {
                basis[cell_idx].2 -= theta;
            } else {
                basis[cell_idx].2 += theta;
            }
        }
        basis[leaving] = (ei, ej, theta);
    }
    Err(GraphError::TransportPivotLimit)
}

/// Duals from the spanning-tree basis: fix `u[0] = 0`, propagate
/// `u_i + v_j = c_ij` across basic cells.
fn solve_duals(
    basis: &[(usize, usize, f64)],
    m: usize,
    n: usize,
    cost: &[f64],
    u: &mut [f64],
    v: &mut [f64],
) {
    let mut row_cells: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut col_cells: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, &(i, j, _)) in basis.iter().enumerate() {
        row_cells[i].push(idx);
        col_cells[j].push(idx);
    }
    let mut row_done = vec![false; m];
    let mut col_done = vec![false; n];
    u[0] = 0.0;
    row_done[0] = true;
    let mut stack: Vec<(bool, usize)> = vec![(true, 0)];
    while let Some((is_row, k)) = stack.pop() {
        if is_row {
            for &idx in &row_cells[k] {
                let (_, j, _) = basis[idx];
                if !col_done[j] {
                    v[j] = cost[k * n + j] - u[k];
                    col_done[j] = true;
                    stack.push((false, j));
                }
            }
        } else {
            for &idx in &col_cells[k] {
                let (i, _, _) = basis[idx];
                if !row_done[i] {
                    u[i] = cost[i * n + k] - v[k];
                    row_done[i] = true;
                    stack.push((true, i));
                }
            }
        }
    }
    debug_assert!(row_done.iter().all(|&d| d) && col_done.iter().all(|&d| d));
}

/// Indices of the basic cells on the tree path from column node `ej` back to
/// row node `ei` (the unique cycle closes through the entering cell).
fn tree_path(
    basis: &[(usize, usize, f64)],
    m: usize,
    n: usize,
    ei: usize,
    ej: usize,
) -> Vec<usize> {
    // Node encoding: rows are 0..m, columns are m..m+n.
    let total = m + n;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); total];
    for (idx, &(i, j, _)) in basis.iter().enumerate() {
        adj[i].push((m + j, idx));
        adj[m + j].push((i, idx));
    }
    let start = m + ej;
    let goal = ei;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; total];
    let mut visited = vec![false; total];
    visited[start] = true;
    let mut queue = alloc::collections::VecDeque::new();
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        if x == goal {
            break;
        }
        for &(y, cell) in &adj[x] {
            if !visited[y] {
                visited[y] = true;
                parent[y] = Some((x, cell));
                queue.push_back(y);
            }
        }
    }
    // Walk goal -> start; reversing yields start (column ej) first, which is
    // exactly the cell order the alternating signs expect.
    let mut cells = Vec::new();
    let mut at = goal;
    while let Some((prev, cell)) = parent[at] {
        cells.push(cell);
        at = prev;
    }
    debug_assert_eq!(at, start, "basis must span all rows and columns");
    cells.reverse();
    cells
}
