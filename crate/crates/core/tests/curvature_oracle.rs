//! Brute-force verification of the transportation solver and the edge
//! curvatures built on it. The oracle enumerates every basic solution of the
//! transportation polytope (spanning trees of the bipartite supply/demand
//! graph), solves the tree flows by leaf elimination, and minimizes cost over
//! the feasible ones. An LP optimum is always attained at such a vertex, so
//! agreement with the simplex on these instances is a full correctness check.

use manifoldnet_core::curvature::{ollivier_curvature, spectral_curvature_report, CurvatureConfig};
use manifoldnet_core::graph::hop_distance;
use manifoldnet_core::oracles::brute_force_transport;
use manifoldnet_core::rng::Xoshiro256;
use manifoldnet_core::transport::{neighbor_measure, transport_simplex, wasserstein1, NodeMeasure};
use manifoldnet_core::WeightedGraph;

fn complete(n: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v, 1.0));
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

fn cycle(n: usize) -> WeightedGraph {
    WeightedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect()).unwrap()
}

/// W1 between neighbor measures computed entirely through the oracle.
fn w1_oracle(g: &WeightedGraph, x: usize, y: usize) -> f64 {
    let mu = neighbor_measure(g, x).unwrap();
    let nu = neighbor_measure(g, y).unwrap();
    let m = mu.support().len();
    let n = nu.support().len();
    let mut cost = vec![0.0; m * n];
    for (i, &s) in mu.support().iter().enumerate() {
        for (j, &t) in nu.support().iter().enumerate() {
            cost[i * n + j] = hop_distance(g, s, t).unwrap() as f64;
        }
    }
    brute_force_transport(mu.mass(), nu.mass(), &cost)
}

#[test]
fn k2_curvature_is_zero() {
    let g = complete(2);
    let k = ollivier_curvature(&g, 0, 1).unwrap();
    let expect = 1.0 - w1_oracle(&g, 0, 1) / 1.0;
    assert!((k - expect).abs() < 1e-9);
    assert!(k.abs() < 1e-9);
}

#[test]
fn k3_curvature_is_half() {
    let g = complete(3);
    let k = ollivier_curvature(&g, 0, 1).unwrap();
    let expect = 1.0 - w1_oracle(&g, 0, 1);
    assert!((k - expect).abs() < 1e-9);
    assert!((k - 0.5).abs() < 1e-9);
}

#[test]
fn c4_curvature_is_zero() {
    let g = cycle(4);
    let k = ollivier_curvature(&g, 0, 1).unwrap();
    let expect = 1.0 - w1_oracle(&g, 0, 1);
    assert!((k - expect).abs() < 1e-9);
    assert!(k.abs() < 1e-9);
}

#[test]
fn complete_graphs_match_closed_form_and_oracle() {
    for n in 3..=6 {
        let g = complete(n);
        let k = ollivier_curvature(&g, 0, 1).unwrap();
        let closed = (n as f64 - 2.0) / (n as f64 - 1.0);
        let oracle = 1.0 - w1_oracle(&g, 0, 1);
        assert!((k - closed).abs() < 1e-9, "K{n} closed form");
        assert!((k - oracle).abs() < 1e-9, "K{n} oracle");
    }
}

#[test]
fn spectral_bound_tight_on_complete_graphs() {
    for n in 3..=6 {
        let g = complete(n);
        let report = spectral_curvature_report(&g).unwrap();
        let k = (n as f64 - 2.0) / (n as f64 - 1.0);
        assert!((report.min_edge_curvature - k).abs() < 1e-9);
        // lambda_max = n/(n-1) = 2 - k exactly.
        let lambda_max = report.eigenvalues.last().unwrap();
        assert!((lambda_max - (2.0 - k)).abs() < 1e-9);
        assert!(report.bound_satisfied);
    }
}

#[test]
fn simplex_matches_oracle_on_random_instances() {
    let mut rng = Xoshiro256::from_seed(0xF1FE);
    for trial in 0..60 {
        let m = 2 + trial % 3;
        let n = 2 + (trial / 3) % 3;
        let mut supply: Vec<f64> = (0..m).map(|_| rng.uniform(0.05, 1.0)).collect();
        let mut demand: Vec<f64> = (0..n).map(|_| rng.uniform(0.05, 1.0)).collect();
        let st: f64 = supply.iter().sum();
        let dt: f64 = demand.iter().sum();
        supply.iter_mut().for_each(|x| *x /= st);
        demand.iter_mut().for_each(|x| *x /= dt);
        let cost: Vec<f64> = (0..m * n).map(|_| (rng.below(5)) as f64).collect();
        let fast = transport_simplex(&supply, &demand, &cost, n).unwrap();
        let slow = brute_force_transport(&supply, &demand, &cost);
        assert!(
            (fast - slow).abs() < 1e-9,
            "simplex {fast} vs oracle {slow} on {m}x{n} (trial {trial})"
        );
    }
}

#[test]
fn w1_metric_axioms_on_small_measures() {
    // Random measures with supports of size <= 3 on a 10-node graph, checked
    // against the enumeration oracle and for symmetry plus the triangle
    // inequality.
    let mut rng = Xoshiro256::from_seed(0xBAD5EED);
    let g = {
        let mut edges = vec![];
        for i in 0..10 {
            edges.push((i, (i + 1) % 10, 1.0));
        }
        edges.push((0, 5, 1.0));
        edges.push((2, 7, 1.0));
        WeightedGraph::new(10, edges).unwrap()
    };
    let random_measure = |rng: &mut Xoshiro256| {
        let size = 1 + rng.below(3);
        let support = rng.sample_indices(10, size);
        let mut mass: Vec<f64> = (0..size).map(|_| rng.uniform(0.1, 1.0)).collect();
        let total: f64 = mass.iter().sum();
        mass.iter_mut().for_each(|x| *x /= total);
        // Balance the roundoff into the largest atom so the sum is exactly 1.
        let drift: f64 = 1.0 - mass.iter().sum::<f64>();
        mass[0] += drift;
        NodeMeasure::new(support, mass).unwrap()
    };
    for _ in 0..40 {
        let mu = random_measure(&mut rng);
        let nu = random_measure(&mut rng);
        let pi = random_measure(&mut rng);
        let d_ab = wasserstein1(&mu, &nu, &g).unwrap();
        let d_ba = wasserstein1(&nu, &mu, &g).unwrap();
        let d_ac = wasserstein1(&mu, &pi, &g).unwrap();
        let d_cb = wasserstein1(&pi, &nu, &g).unwrap();
        assert!((d_ab - d_ba).abs() < 1e-9, "symmetry");
        assert!(d_ab <= d_ac + d_cb + 1e-8, "triangle inequality");
        assert!(wasserstein1(&mu, &mu, &g).unwrap().abs() < 1e-12);

        // Oracle agreement.
        let m = mu.support().len();
        let n = nu.support().len();
        let mut cost = vec![0.0; m * n];
        for (i, &s) in mu.support().iter().enumerate() {
            for (j, &t) in nu.support().iter().enumerate() {
                cost[i * n + j] = hop_distance(&g, s, t).unwrap() as f64;
            }
        }
        let oracle = brute_force_transport(mu.mass(), nu.mass(), &cost);
        assert!((d_ab - oracle).abs() < 1e-9, "oracle agreement");
    }
}

#[test]
fn curvature_invariant_under_weight_scaling() {
    let g = WeightedGraph::new(
        5,
        vec![
            (0, 1, 0.5),
            (1, 2, 2.0),
            (2, 3, 1.5),
            (3, 4, 1.0),
            (0, 4, 3.0),
            (1, 3, 0.25),
        ],
    )
    .unwrap();
    let scaled = {
        let weights: Vec<f64> = g.edges().iter().map(|e| e.w * 17.0).collect();
        g.with_edge_weights(&weights).unwrap()
    };
    for e in g.edges() {
        let a = ollivier_curvature(&g, e.u, e.v).unwrap();
        let b = ollivier_curvature(&scaled, e.u, e.v).unwrap();
        assert!((a - b).abs() < 1e-10, "scaling changed curvature");
    }
}

#[test]
fn idleness_knob_changes_the_measure_convention() {
    let g = complete(3);
    let zero = ollivier_curvature(&g, 0, 1).unwrap();
    let lazy = manifoldnet_core::curvature::ollivier_curvature_with(
        &g,
        0,
        1,
        &CurvatureConfig { idleness: 0.5 },
    )
    .unwrap();
    assert!((zero - 0.5).abs() < 1e-12);
    assert!(lazy > zero, "lazy walks move less mass");
}
