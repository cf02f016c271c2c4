//! Brute-force reference implementations for test suites (enabled by the
//! `test-oracles` feature, never by default). These deliberately share no
//! code with the production solvers they check.

use alloc::vec;
use alloc::vec::Vec;

/// Minimum transportation cost by exhaustive enumeration of basic solutions:
/// every spanning tree of the bipartite supply/demand graph is a vertex of
/// the transportation polytope, its flows are solved by leaf elimination, and
/// the cheapest feasible vertex is optimal. Exponential; supports of a
/// handful of atoms only.
pub fn brute_force_transport(supply: &[f64], demand: &[f64], cost: &[f64]) -> f64 {
    let m = supply.len();
    let n = demand.len();
    assert_eq!(cost.len(), m * n);
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let need = m + n - 1;
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(need);
    let mut best = f64::INFINITY;
    let mut parent: Vec<usize> = (0..m + n).collect();
    recurse(
        &cells,
        0,
        &mut chosen,
        &mut parent,
        need,
        m,
        n,
        supply,
        demand,
        cost,
        &mut best,
    );
    best
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    cells: &[(usize, usize)],
    from: usize,
    chosen: &mut Vec<(usize, usize)>,
    parent: &mut Vec<usize>,
    need: usize,
    m: usize,
    n: usize,
    supply: &[f64],
    demand: &[f64],
    cost: &[f64],
    best: &mut f64,
) {
    if chosen.len() == need {
        if let Some(total) = solve_tree(chosen, m, n, supply, demand, cost) {
            if total < *best {
                *best = total;
            }
        }
        return;
    }
    if cells.len() - from < need - chosen.len() {
        return;
    }
    for idx in from..cells.len() {
        let (i, j) = cells[idx];
        let ri = find(parent, i);
        let rj = find(parent, m + j);
        if ri == rj {
            continue; // would close a cycle
        }
        let saved = parent.clone();
        parent[ri] = rj;
        chosen.push((i, j));
        recurse(
            cells,
            idx + 1,
            chosen,
            parent,
            need,
            m,
            n,
            supply,
            demand,
            cost,
            best,
        );
        chosen.pop();
        *parent = saved;
    }
}

/// Unique flows on a spanning tree of basic cells, by repeatedly resolving a
/// row or column with exactly one unresolved cell. `None` when the flows are
/// not all nonnegative (infeasible vertex) or the cells do not span.
fn solve_tree(
    chosen: &[(usize, usize)],
    m: usize,
    n: usize,
    supply: &[f64],
    demand: &[f64],
    cost: &[f64],
) -> Option<f64> {
    let mut rem_supply = supply.to_vec();
    let mut rem_demand = demand.to_vec();
    let mut row_count = vec![0usize; m];
    let mut col_count = vec![0usize; n];
    for &(i, j) in chosen {
        row_count[i] += 1;
        col_count[j] += 1;
    }
    let mut flows = vec![f64::NAN; chosen.len()];
    let mut resolved = vec![false; chosen.len()];
    for _ in 0..chosen.len() {
        let mut progressed = false;
        for (k, &(i, j)) in chosen.iter().enumerate() {
            if resolved[k] {
                continue;
            }
            let flow = if row_count[i] == 1 {
                rem_supply[i]
            } else if col_count[j] == 1 {
                rem_demand[j]
            } else {
                continue;
            };
            flows[k] = flow;
            resolved[k] = true;
            rem_supply[i] -= flow;
            rem_demand[j] -= flow;
            row_count[i] -= 1;
            col_count[j] -= 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    if resolved.iter().any(|&r| !r) {
        return None;
    }
    if flows.iter().any(|&f| f < -1e-9) {
        return None;
    }
    let total = chosen
        .iter()
        .zip(&flows)
        .map(|(&(i, j), &f)| f.max(0.0) * cost[i * n + j])
        .sum();
    Some(total)
}
