#![allow(dead_code)]

use matpoly_core::graphs::{complete_graph, MultiGraph};
use matpoly_core::matroids::{make_pg, make_uniform};
use matpoly_core::targets::Target;

/// Simple graphs on `n` vertices, one per isomorphism class, in a fixed
/// order (by edge count, then by canonical edge mask).
pub fn graphs_on(n: usize) -> Vec<MultiGraph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let canonical = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(u, v))| acc | 1 << index(p[u], p[v]))
            })
            .min()
            .unwrap_or(mask);
        seen.insert((canonical.count_ones(), canonical));
    }
    seen.into_iter()
        .map(|(_, mask)| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            MultiGraph::new(n, edges).unwrap()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// All simple graphs on at most `n` vertices up to isomorphism.
pub fn small_graphs(n: usize) -> Vec<MultiGraph> {
    (0..=n).flat_map(graphs_on).collect()
}

/// `K_5` minus one edge.
pub fn k5_minus_edge() -> MultiGraph {
    let mut edges = complete_graph(5).edges().to_vec();
    edges.pop();
    MultiGraph::new(5, edges).unwrap()
}

/// Small graphs with a loop and with parallel edges.
pub fn multigraphs() -> Vec<MultiGraph> {
    vec![
        MultiGraph::new(2, vec![(0, 1), (1, 1)]).unwrap(),
        MultiGraph::new(2, vec![(0, 1), (0, 1)]).unwrap(),
        MultiGraph::new(3, vec![(0, 1), (0, 1), (1, 2), (0, 2)]).unwrap(),
        MultiGraph::new(1, vec![(0, 0), (0, 0)]).unwrap(),
    ]
}

pub fn uniform_targets() -> Vec<Target> {
    (0..=7)
        .flat_map(|n| (0..=n).map(move |m| (m, n)))
        .map(|(m, n)| Target::matroid(make_uniform(m, n).unwrap(), format!("uniform:{m},{n}")))
        .collect()
}

pub fn graph_targets() -> Vec<Target> {
    small_graphs(5)
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            let desc = format!("graph#{i}(v={},e={})", g.vertex_count(), g.edge_count());
            Target::graph(g, desc)
        })
        .collect()
}

pub const PG_PARAMS: [(usize, u64); 3] = [(2, 2), (3, 2), (2, 3)];

pub fn pg_targets() -> Vec<Target> {
    PG_PARAMS
        .iter()
        .map(|&(n, p)| Target::matroid(make_pg(n, p).unwrap(), format!("pg:{n},{p}")))
        .collect()
}

/// Uniform matroids with `m <= n <= 7`, simple graphs on at most five
/// vertices, and three small projective geometries.
pub fn corpus() -> Vec<Target> {
    let mut all = uniform_targets();
    all.extend(graph_targets());
    all.extend(pg_targets());
    all
}
