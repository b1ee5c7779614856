//! Undirected multigraphs with loops and parallel edges.
//!
//! Edge identity is the position in the edge list; those indices double as
//! ground-set elements of the graphic matroid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{EdgeSubset, Subset, MAX_GROUND};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

/// On-disk form: `{"n": 3, "edges": [[0,1],[1,2]]}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u >= vertex_count || v >= vertex_count)
        {
            return Err(Error::bad_params(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{vertex_count}"
            )));
        }
        Ok(MultiGraph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn all_edges(&self) -> EdgeSubset {
        Subset::full(self.edges.len())
    }

    /// Fails when edge subsets of this graph cannot be represented as bitmasks.
    pub fn check_edge_limit(&self) -> Result<()> {
        if self.edges.len() > MAX_GROUND {
            return Err(Error::too_large("edge set", self.edges.len() as u64, MAX_GROUND as u64));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        MultiGraph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }

    pub fn to_json(&self) -> String {
        let raw = GraphJson {
            n: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&raw).expect("graph serialization cannot fail")
    }

    /// Number of connected components of the whole graph, isolated vertices
    /// included.
    pub fn component_count(&self) -> usize {
        let mut dsu = DisjointSets::new(self.vertex_count);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        dsu.count_roots()
    }

    /// `(c(A), |V(A)|)`: components and vertex count of the subgraph formed
    /// by the edges in `a` on their own endpoints.
    pub fn components(&self, a: EdgeSubset) -> (usize, usize) {
        let mut dsu = DisjointSets::new(self.vertex_count);
        let mut touched = vec![false; self.vertex_count];
        let mut support = 0;
        let mut merges = 0;
        for e in a.iter() {
            let (u, v) = self.edges[e];
            for w in [u, v] {
                if !touched[w] {
                    touched[w] = true;
                    support += 1;
                }
            }
            if dsu.union(u, v) {
                merges += 1;
            }
        }
        (support - merges, support)
    }

    /// Graphic-matroid rank `|V(A)| - c(A)`: the size of a spanning forest of `a`.
    pub fn rank(&self, a: EdgeSubset) -> usize {
        if self.vertex_count <= 128 {
            let mut parent = [0u8; 128];
            for (i, p) in parent.iter_mut().enumerate().take(self.vertex_count) {
                *p = i as u8;
            }
            let find = |parent: &mut [u8; 128], mut x: usize| {
                while parent[x] as usize != x {
                    let up = parent[parent[x] as usize];
                    parent[x] = up;
                    x = up as usize;
                }
                x
            };
            let mut rank = 0;
            for e in a.iter() {
                let (u, v) = self.edges[e];
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv as u8;
                    rank += 1;
                }
            }
            rank
        } else {
            let (c, support) = self.components(a);
            support - c
        }
    }

    /// `H(A)`: the edges of `a` on their endpoints, vertices relabelled densely
    /// in ascending original order.
    pub fn edge_subgraph(&self, a: EdgeSubset) -> MultiGraph {
        let mut label = vec![usize::MAX; self.vertex_count];
        for e in a.iter() {
            let (u, v) = self.edges[e];
            label[u] = 0;
            label[v] = 0;
        }
        let mut next = 0;
        for l in label.iter_mut().filter(|l| **l == 0) {
            *l = next;
            next += 1;
        }
        MultiGraph {
            vertex_count: next,
            edges: a
                .iter()
                .map(|e| {
                    let (u, v) = self.edges[e];
                    (label[u], label[v])
                })
                .collect(),
        }
    }

    /// `G / H(A)`: every component of `H(A)` shrinks to one vertex and the
    /// edges of `a` disappear. The remaining edges keep their relative order;
    /// those with both ends in one merged component become loops. New vertex
    /// labels follow the smallest original vertex of each class.
    pub fn quotient(&self, a: EdgeSubset) -> MultiGraph {
        let mut dsu = DisjointSets::new(self.vertex_count);
        for e in a.iter() {
            let (u, v) = self.edges[e];
            dsu.union(u, v);
        }
        let mut class_label = vec![usize::MAX; self.vertex_count];
        let mut label = vec![0; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            let root = dsu.find(v);
            if class_label[root] == usize::MAX {
                class_label[root] = next;
                next += 1;
            }
            label[v] = class_label[root];
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(e, _)| !a.contains(*e))
            .map(|(_, &(u, v))| (label[u], label[v]))
            .collect();
        MultiGraph {
            vertex_count: next,
            edges,
        }
    }

    /// Edges with both endpoints in `block`.
    fn induced_edges(&self, block: &[usize]) -> EdgeSubset {
        let mut inside = vec![false; self.vertex_count];
        for &v in block {
            inside[v] = true;
        }
        Subset::from_elements(
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| inside[u] && inside[v])
                .map(|(e, _)| e),
        )
    }

    /// Every partition of the vertex set whose blocks each induce a connected
    /// subgraph, paired with the set of edges lying inside blocks.
    pub fn connected_partitions(&self) -> Result<ConnectedPartitions<'_>> {
        self.check_edge_limit()?;
        Ok(ConnectedPartitions {
            graph: self,
            growth: RestrictedGrowth::new(self.vertex_count),
        })
    }
}

pub fn complete_graph(n: usize) -> MultiGraph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    MultiGraph {
        vertex_count: n,
        edges,
    }
}

pub fn cycle_graph(n: usize) -> MultiGraph {
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MultiGraph {
        vertex_count: n,
        edges,
    }
}

pub fn path_graph(n: usize) -> MultiGraph {
    let edges = (1..n).map(|i| (i - 1, i)).collect();
    MultiGraph {
        vertex_count: n,
        edges,
    }
}

/// A vertex partition into connected blocks, plus the edges inside blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedPartition {
    pub blocks: Vec<Vec<usize>>,
    pub inner_edges: EdgeSubset,
}

pub struct ConnectedPartitions<'g> {
    graph: &'g MultiGraph,
    growth: RestrictedGrowth,
}

impl Iterator for ConnectedPartitions<'_> {
    type Item = ConnectedPartition;

    fn next(&mut self) -> Option<ConnectedPartition> {
        loop {
            let blocks = self.growth.next()?;
            let mut inner = Subset::EMPTY;
            let mut connected = true;
            for block in &blocks {
                let edges = self.graph.induced_edges(block);
                if block.len() > 1 {
                    let (c, support) = self.graph.components(edges);
                    if c != 1 || support != block.len() {
                        connected = false;
                        break;
                    }
                }
                inner = inner.union(edges);
            }
            if connected {
                return Some(ConnectedPartition {
                    blocks,
                    inner_edges: inner,
                });
            }
        }
    }
}

/// Set partitions of `0..n` as restricted growth strings, yielded as block
/// lists (blocks ordered by smallest element, elements ascending).
struct RestrictedGrowth {
    labels: Vec<usize>,
    /// `prefix_max[i] = max(labels[0..=i])`
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl RestrictedGrowth {
    fn new(n: usize) -> Self {
        RestrictedGrowth {
            labels: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.labels.len();
        for i in (1..n).rev() {
            if self.labels[i] <= self.prefix_max[i - 1] {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }

    fn next(&mut self) -> Option<Vec<Vec<usize>>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        let count = self.prefix_max.last().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (v, &l) in self.labels.iter().enumerate() {
            blocks[l].push(v);
        }
        Some(blocks)
    }
}

/// Union-find with path halving.
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when `a` and `b` were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }

    fn count_roots(&mut self) -> usize {
        (0..self.parent.len()).filter(|&v| self.find(v) == v).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_examples() {
        let k3 = complete_graph(3);
        assert_eq!(k3.components(Subset::EMPTY), (0, 0));
        assert_eq!(k3.components(k3.all_edges()), (1, 3));
        let two = MultiGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.components(two.all_edges()), (2, 4));
    }

    #[test]
    fn rank_paths_agree() {
        let g = MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (3, 3), (3, 4), (4, 3)]).unwrap();
        for a in g.all_edges().subsets() {
            let (c, s) = g.components(a);
            assert_eq!(g.rank(a), s - c, "{a:?}");
        }
    }

    #[test]
    fn quotient_examples() {
        let k3 = complete_graph(3);
        assert_eq!(k3.quotient(Subset::EMPTY), k3);
        let one = k3.quotient(Subset::singleton(0));
        assert_eq!(one, MultiGraph::new(2, vec![(0, 1), (0, 1)]).unwrap());
        let two = k3.quotient(Subset::from_elements([0, 1]));
        assert_eq!(two, MultiGraph::new(1, vec![(0, 0)]).unwrap());
    }

    #[test]
    fn quotient_keeps_untouched_vertices() {
        let g = MultiGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let q = g.quotient(Subset::singleton(1));
        assert_eq!(q, MultiGraph::new(3, vec![(0, 1)]).unwrap());
    }

    #[test]
    fn connected_partitions_examples() {
        let single = MultiGraph::new(1, vec![]).unwrap();
        let parts: Vec<_> = single.connected_partitions().unwrap().collect();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].blocks, vec![vec![0]]);
        assert!(parts[0].inner_edges.is_empty());

        assert_eq!(complete_graph(3).connected_partitions().unwrap().count(), 5);

        let path = path_graph(3);
        let blocks: Vec<_> = path
            .connected_partitions()
            .unwrap()
            .map(|p| p.blocks)
            .collect();
        assert_eq!(blocks.len(), 4);
        assert!(!blocks.contains(&vec![vec![0, 2], vec![1]]));
    }

    #[test]
    fn bell_four() {
        assert_eq!(complete_graph(4).connected_partitions().unwrap().count(), 15);
    }

    #[test]
    fn empty_graph_has_one_partition() {
        let g = MultiGraph::new(0, vec![]).unwrap();
        let parts: Vec<_> = g.connected_partitions().unwrap().collect();
        assert_eq!(parts.len(), 1);
        assert!(parts[0].blocks.is_empty());
    }

    #[test]
    fn complete_graph_sizes() {
        assert_eq!(complete_graph(0).edge_count(), 0);
        assert_eq!(complete_graph(3).edge_count(), 3);
        assert_eq!(complete_graph(5).edge_count(), 10);
        assert!(!complete_graph(5).has_loop());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let g = MultiGraph::from_json(r#"{"n": 3, "edges": [[0,1],[1,1]]}"#).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 1)]);
        assert_eq!(MultiGraph::from_json(&g.to_json()).unwrap(), g);
        assert!(matches!(
            MultiGraph::from_json(r#"{"n": 2, "edges": [[0,2]]}"#),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(MultiGraph::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn edge_subgraph_relabels() {
        let g = MultiGraph::new(5, vec![(0, 4), (1, 2), (4, 2)]).unwrap();
        let h = g.edge_subgraph(Subset::from_elements([0, 2]));
        assert_eq!(h, MultiGraph::new(3, vec![(0, 2), (2, 1)]).unwrap());
    }
}
