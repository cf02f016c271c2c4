//! PAM-style k-medoids over a precomputed distance matrix, with seeded
//! restarts. The paper-facing experiments only inspect heat maps; this gives
//! the harness an algorithmic stand-in whose output can be scored.

use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::rng::{mix, Xoshiro256};

#[derive(Debug, Clone, PartialEq)]
pub struct KMedoidsResult {
    /// Cluster index per point (position of its medoid in `medoids`).
    pub assignment: Vec<usize>,
    pub medoids: Vec<usize>,
    /// Total distance of points to their medoids.
    pub cost: f64,
}

/// One PAM run: seeded medoid initialization, then best-improvement swaps
/// until no single (medoid, non-medoid) exchange lowers the cost. Ties in
/// assignment and swap selection break toward lower indices, so the result is
/// a deterministic function of (matrix, k, seed).
pub fn k_medoids(dist: &Matrix, k: usize, seed: u64) -> KMedoidsResult {
    let n = dist.rows();
    assert!(dist.is_square(), "distance matrix must be square");
    assert!(k >= 1 && k <= n, "need 1 <= k <= n");

    let mut rng = Xoshiro256::from_seed(seed);
    let mut medoids = rng.sample_indices(n, k);
    medoids.sort_unstable();

    let mut cost = assignment_cost(dist, &medoids);
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for mi in 0..k {
            for candidate in 0..n {
                if medoids.contains(&candidate) {
                    continue;
                }
                let mut trial = medoids.clone();
                trial[mi] = candidate;
                let c = assignment_cost(dist, &trial);
                if c + 1e-15 < best.map_or(cost, |(_, _, bc)| bc) {
                    best = Some((mi, candidate, c));
                }
            }
        }
        match best {
            Some((mi, candidate, c)) => {
                medoids[mi] = candidate;
                cost = c;
            }
            None => break,
        }
    }
    medoids.sort_unstable();
    let assignment = assign(dist, &medoids);
    KMedoidsResult {
        assignment,
        medoids,
        cost,
    }
}

/// Best of `restarts` PAM runs with per-restart seeds `mix(seed, r)`; ties on
/// cost keep the earliest restart.
pub fn k_medoids_restarts(dist: &Matrix, k: usize, seed: u64, restarts: usize) -> KMedoidsResult {
    assert!(restarts >= 1);
    let mut best: Option<KMedoidsResult> = None;
    for r in 0..restarts {
        let run = k_medoids(dist, k, mix(seed, r as u64));
        if best.as_ref().is_none_or(|b| run.cost < b.cost) {
            best = Some(run);
        }
    }
    best.expect("at least one restart")
}

fn assign(dist: &Matrix, medoids: &[usize]) -> Vec<usize> {
    let n = dist.rows();
    (0..n)
        .map(|p| {
            let mut best = 0;
            let mut best_d = dist[(p, medoids[0])];
            for (c, &m) in medoids.iter().enumerate().skip(1) {
                let d = dist[(p, m)];
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            best
        })
        .collect()
}

fn assignment_cost(dist: &Matrix, medoids: &[usize]) -> f64 {
    let n = dist.rows();
    (0..n)
        .map(|p| {
            medoids
                .iter()
                .map(|&m| dist[(p, m)])
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}
