//! Seeded generators for the synthetic topologies the experiments compare:
//! ring-lattice chains, multi-hub stars, G(n, m) random graphs, and
//! Barabasi-Albert preferential attachment, plus uniform weight assignment.
//!
//! Every generator is a pure function of its arguments; identical inputs
//! produce bit-identical graphs (see [`crate::rng`] for the PRNG contract).

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::WeightedGraph;
use crate::rng::Xoshiro256;

#[derive(Debug, Clone, PartialEq)]
pub enum GenError {
    /// Requested node/edge counts cannot be realized by the generator.
    InfeasibleSpec { reason: String },
    /// G(n, m) rejection sampling failed to find a connected graph.
    ConnectivityRetryExceeded { attempts: usize },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::InfeasibleSpec { reason } => write!(f, "infeasible spec: {reason}"),
            GenError::ConnectivityRetryExceeded { attempts } => {
                write!(f, "no connected sample after {attempts} attempts")
            }
        }
    }
}

impl core::error::Error for GenError {}

pub type Result<T> = core::result::Result<T, GenError>;

/// Which synthetic topology to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Chain,
    Star,
    Gnm,
    Ba,
}

/// Full description of one generated graph. `m` is the target edge count for
/// `chain`/`star`/`gnm` and the per-node attachment count for `ba`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub kind: GraphKind,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub weight_low: f64,
    pub weight_high: f64,
}

impl GenSpec {
    /// Generates the topology and assigns weights; `weight_low == weight_high
    /// == 1` leaves the graph effectively unweighted.
    pub fn generate(&self) -> Result<WeightedGraph> {
        if !(self.weight_low > 0.0 && self.weight_low <= self.weight_high) {
            return Err(GenError::InfeasibleSpec {
                reason: alloc::format!(
                    "weight bounds ({}, {}) must satisfy 0 < low <= high",
                    self.weight_low,
                    self.weight_high
                ),
            });
        }
        let g = match self.kind {
            GraphKind::Chain => gen_chain(self.n, self.m)?,
            GraphKind::Star => gen_star(self.n, self.m, self.seed)?,
            GraphKind::Gnm => gen_gnm(self.n, self.m, self.seed)?,
            GraphKind::Ba => gen_ba(self.n, self.m, self.seed)?,
        };
        Ok(assign_weights(
            &g,
            self.weight_low,
            self.weight_high,
            self.seed,
        ))
    }
}

fn max_edges(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Chain-like topology: a ring lattice. Full rings at hop offsets 1, 2, ...
/// are laid down while the edge budget allows, then the remainder goes to the
/// first nodes at the next offset. Exactly `m` edges, connected, near-uniform
/// degree `2m/n`.
pub fn gen_chain(n: usize, m: usize) -> Result<WeightedGraph> {
    if n < 3 || m < n {
        return Err(GenError::InfeasibleSpec {
            reason: alloc::format!("chain needs n >= 3 and m >= n, got n={n}, m={m}"),
        });
    }
    if m > max_edges(n) {
        return Err(GenError::InfeasibleSpec {
            reason: alloc::format!("m={m} exceeds the simple-graph maximum for n={n}"),
        });
    }
    let mut edges = Vec::with_capacity(m);
    let mut remaining = m;
    let mut offset = 1usize;
    while remaining > 0 {
        // A full ring at this offset; offset n/2 on even n halves the count.
        let ring_size = if 2 * offset == n { n / 2 } else { n };
        let take = remaining.min(ring_size);
        for i in 0..take {
            edges.push((i, (i + offset) % n, 1.0));
        }
        remaining -= take;
        offset += 1;
    }
    WeightedGraph::new(n, edges).map_err(|e| GenError::InfeasibleSpec {
        reason: alloc::format!("internal: {e}"),
    })
}

/// Star-like topology: the largest hub set whose hub-leaf plus hub-hub edges
/// fit the budget, each hub joined to every non-hub and to the other hubs;
/// the leftover budget becomes seeded random leaf-leaf edges.
pub fn gen_star(n: usize, m: usize, seed: u64) -> Result<WeightedGraph> {
    if n < 2 || m < n - 1 {
        return Err(GenError::InfeasibleSpec {
            reason: alloc::format!("star needs m >= n - 1, got n={n}, m={m}"),
        });
    }
    if m > max_edges(n) {
        return Err(GenError::InfeasibleSpec {
            reason: alloc::format!("m={m} exceeds the simple-graph maximum for n={n}"),
        });
    }
    let base_edges = |h: usize| h * (n - h) + h * (h - 1) / 2;
    let mut hubs = 1usize;
    while hubs + 1 < n && base_edges(hubs + 1) <= m {
        hubs += 1;
    }
    let mut edges = Vec::with_capacity(m);
    for h in 0..hubs {
        for other in (h + 1)..hubs {
            edges.push((h, other, 1.0));
        }
        for leaf in hubs..n {
            edges.push((h, leaf, 1.0));
        }
    }
    // Fill with random leaf-leaf edges, rejecting duplicates.
    let mut rng = Xoshiro256::from_seed(seed);
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    while edges.len() < m {
        let a = hubs + rng.below(n - hubs);
        let b = hubs + rng.below(n - hubs);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if used.insert(key) {
            edges.push((key.0, key.1, 1.0));
        }
    }
    WeightedGraph::new(n, edges).map_err(|e| GenError::InfeasibleSpec {
        reason: alloc::format!("internal: {e}"),
    })
}

const GNM_MAX_ATTEMPTS: usize = 1000;

/// G(n, m): uniform over simple graphs with exactly `m` edges, resampled
/// until connected (up to 1000 attempts).
pub fn gen_gnm(n: usize, m: usize, seed: u64) -> Result<WeightedGraph> {
    if n < 2 || m < n - 1 || m > max_edges(n) {
        return Err(GenError::InfeasibleSpec {
            reason: alloc::format!(
                "gnm needs n - 1 <= m <= n(n-1)/2 for connectivity, got n={n}, m={m}"
            ),
        });
    }
    let mut rng = Xoshiro256::from_seed(seed);
    for _ in 0..GNM_MAX_ATTEMPTS {
        let mut chosen: BTreeSet<(usize, usize)> = BTreeSet::new();
        while chosen.len() < m {
            let a = rng.below(n);
            let b = rng.below(n);
            if a == b {
                continue;
            }
            chosen.insert((a.min(b), a.max(b)));
        }
        let edges: Vec<(usize, usize, f64)> =
            chosen.into_iter().map(|(u, v)| (u, v, 1.0)).collect();
        let g = WeightedGraph::new(n, edges).map_err(|e| GenError::InfeasibleSpec {
            reason: alloc::format!("internal: {e}"),
        })?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GenError::ConnectivityRetryExceeded {
        attempts: GNM_MAX_ATTEMPTS,
    })
}

/// Barabasi-Albert preferential attachment. The first `m_attach` nodes start
/// edgeless; node `m_attach` joins to all of them (a star), and every later
/// node attaches to `m_attach` distinct existing nodes drawn proportionally
/// to degree. Edge count is exactly `m_attach * (n - m_attach)`.
pub fn gen_ba(n: usize, m_attach: usize, seed: u64) -> Result<WeightedGraph> {
    if m_attach == 0 || m_attach >= n {
        return Err(GenError::InfeasibleSpec {
            reason: alloc::format!("ba needs 1 <= m_attach < n, got n={n}, m_attach={m_attach}"),
        });
    }
    let mut rng = Xoshiro256::from_seed(seed);
    let mut edges: Vec<(usize, usize, f64)> = Vec::with_capacity(m_attach * (n - m_attach));
    // Each edge endpoint is appended once, so sampling an index uniformly
    // from this list is degree-proportional sampling.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * m_attach * (n - m_attach));
    for hub in 0..m_attach {
        edges.push((hub, m_attach, 1.0));
        endpoints.push(hub);
        endpoints.push(m_attach);
    }
    for node in (m_attach + 1)..n {
        let mut targets: BTreeSet<usize> = BTreeSet::new();
        while targets.len() < m_attach {
            let t = endpoints[rng.below(endpoints.len())];
            targets.insert(t);
        }
        for t in targets {
            edges.push((t, node, 1.0));
            endpoints.push(t);
            endpoints.push(node);
        }
    }
    WeightedGraph::new(n, edges).map_err(|e| GenError::InfeasibleSpec {
        reason: alloc::format!("internal: {e}"),
    })
}

/// Replaces every weight with an i.i.d. Uniform[low, high) draw, in canonical
/// edge order. `low == high` sets every weight to `low` exactly.
pub fn assign_weights(g: &WeightedGraph, low: f64, high: f64, seed: u64) -> WeightedGraph {
    assert!(low > 0.0 && low <= high, "need 0 < low <= high");
    let mut rng = Xoshiro256::from_seed(seed);
    let weights: Vec<f64> = g.edges().iter().map(|_| rng.uniform(low, high)).collect();
    g.with_edge_weights(&weights)
        .expect("weights stay positive")
}
