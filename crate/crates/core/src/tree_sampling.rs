//! Random breadth-first trees and the per-edge contrast they induce.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;

use crate::{seed, EdgeValues, Error, Graph, Result, RootedTree, VertexId};

/// Breadth-first spanning tree from `root`, scanning each vertex's incident
/// edges in a random order. Edge weights are ignored.
pub fn sample_bft_from(g: &Graph, root: VertexId, rng: &mut seed::Rng) -> Result<RootedTree> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut parent_edge = vec![None; n];
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    let mut incident = Vec::new();
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        incident.clear();
        incident.extend(g.neighbors(u));
        incident.shuffle(rng);
        for &(t, e) in &incident {
            if parent[t] == usize::MAX {
                parent[t] = u;
                parent_edge[t] = Some(e);
                queue.push_back(t);
                reached += 1;
            }
        }
    }
    if reached != n {
        return Err(Error::Disconnected);
    }
    RootedTree::from_parent_links(root, parent, parent_edge)
}

/// Breadth-first spanning tree with a uniformly random root.
pub fn sample_bft(g: &Graph, seed: u64) -> Result<RootedTree> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("empty graph".into()));
    }
    let mut rng = seed::rng(seed);
    let root = rng.random_range(0..g.n());
    sample_bft_from(g, root, &mut rng)
}

/// For every edge `{u, v}` with `u < v`: the number of sampled trees that
/// contain the edge with `u` nearer to the root (`toward_larger`), and with
/// `v` nearer to the root (`toward_smaller`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedEdgeCounts {
    pub toward_larger: Vec<u32>,
    pub toward_smaller: Vec<u32>,
    pub trees: u32,
}

impl DirectedEdgeCounts {
    pub fn new(m: usize) -> Self {
        DirectedEdgeCounts { toward_larger: vec![0; m], toward_smaller: vec![0; m], trees: 0 }
    }

    /// Adds one tree. A tree edge always joins vertices on adjacent levels,
    /// so the parent is the endpoint nearer to the root.
    pub fn add_tree(&mut self, g: &Graph, tree: &RootedTree) {
        for v in 0..tree.n() {
            if let Some(e) = tree.parent_edge(v) {
                if tree.parent(v) < v {
                    self.toward_larger[e] += 1;
                } else {
                    self.toward_smaller[e] += 1;
                }
            }
        }
        debug_assert_eq!(self.toward_larger.len(), g.m());
        self.trees += 1;
    }

    fn merge(mut self, other: &Self) -> Self {
        for (a, b) in self.toward_larger.iter_mut().zip(&other.toward_larger) {
            *a += b;
        }
        for (a, b) in self.toward_smaller.iter_mut().zip(&other.toward_smaller) {
            *a += b;
        }
        self.trees += other.trees;
        self
    }

    /// `γ(e) = min{n(u, v), n(v, u)}`.
    pub fn contrast(&self) -> EdgeValues {
        EdgeValues::new(self.toward_larger.iter().zip(&self.toward_smaller).map(|(&a, &b)| a.min(b) as f64).collect())
    }
}

/// Samples `trees` random BFT trees; tree `i` uses the sub-seed
/// `seed::derive(seed, i)`.
pub fn directed_edge_counts(g: &Graph, trees: usize, seed: u64) -> Result<DirectedEdgeCounts> {
    if trees == 0 {
        return Err(Error::InvalidParameter("at least one tree is required".into()));
    }
    // Counts are integers, so the merge order cannot change the result.
    (0..trees as u64)
        .into_par_iter()
        .map(|i| sample_bft(g, seed::derive(seed, i)))
        .try_fold(
            || DirectedEdgeCounts::new(g.m()),
            |mut acc, tree| {
                acc.add_tree(g, &tree?);
                Ok(acc)
            },
        )
        .try_reduce(|| DirectedEdgeCounts::new(g.m()), |a, b| Ok(a.merge(&b)))
}

/// Per-edge contrast `γ` over `trees` random BFT trees.
pub fn contrast(g: &Graph, trees: usize, seed: u64) -> Result<EdgeValues> {
    Ok(directed_edge_counts(g, trees, seed)?.contrast())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_unweighted(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn bft_of_tree_is_the_tree() {
        for s in 0..10 {
            let t = sample_bft(&p3(), s).unwrap();
            let mut edges = t.edge_ids();
            edges.sort();
            assert_eq!(edges, vec![0, 1]);
        }
    }

    #[test]
    fn bft_deterministic() {
        let g = crate::graph::generate_scale_free(200, 3, 1).unwrap();
        let a = sample_bft(&g, 77).unwrap();
        let b = sample_bft(&g, 77).unwrap();
        assert_eq!(a.parents(), b.parents());
    }

    #[test]
    fn bft_of_cycle_omits_one_edge() {
        let g = Graph::from_unweighted(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        for s in 0..20 {
            let t = sample_bft(&g, s).unwrap();
            assert_eq!(t.edge_ids().len(), 3);
            for v in 0..4 {
                if v != t.root() {
                    assert_eq!(t.depth(v), t.depth(t.parent(v)) + 1);
                }
            }
        }
    }

    #[test]
    fn bft_levels_are_bfs_distances() {
        let g = crate::graph::generate_scale_free(300, 2, 5).unwrap();
        let t = sample_bft(&g, 3).unwrap();
        let mut dist = vec![usize::MAX; g.n()];
        dist[t.root()] = 0;
        let mut q = VecDeque::from([t.root()]);
        while let Some(u) = q.pop_front() {
            for &x in g.neighbor_ids(u) {
                if dist[x] == usize::MAX {
                    dist[x] = dist[u] + 1;
                    q.push_back(x);
                }
            }
        }
        for (v, &d) in dist.iter().enumerate() {
            assert_eq!(t.depth(v), d);
        }
    }

    #[test]
    fn bft_rejects_disconnected() {
        let g = Graph::from_unweighted(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(sample_bft(&g, 0), Err(Error::Disconnected));
    }

    #[test]
    fn contrast_is_min_of_counts() {
        let c = DirectedEdgeCounts { toward_larger: vec![10, 0], toward_smaller: vec![4, 0], trees: 20 };
        assert_eq!(&*c.contrast(), &[4.0, 0.0]);
    }

    #[test]
    fn p3_rooted_at_both_ends() {
        let g = p3();
        let mut rng = seed::rng(0);
        let mut counts = DirectedEdgeCounts::new(g.m());
        counts.add_tree(&g, &sample_bft_from(&g, 0, &mut rng).unwrap());
        counts.add_tree(&g, &sample_bft_from(&g, 2, &mut rng).unwrap());
        assert_eq!(counts.toward_larger[0], 1);
        assert_eq!(counts.toward_smaller[0], 1);
        assert_eq!(counts.contrast()[0], 1.0);
    }

    #[test]
    fn contrast_bounds_and_bridges() {
        // Two triangles joined by the bridge {2, 3}.
        let g = Graph::from_unweighted(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let trees = 40;
        let counts = directed_edge_counts(&g, trees, 11).unwrap();
        assert_eq!(counts.trees, trees as u32);
        let bridge = g.find_edge(2, 3).unwrap();
        assert_eq!(counts.toward_larger[bridge] + counts.toward_smaller[bridge], trees as u32);
        for &x in counts.contrast().iter() {
            assert!((0.0..=(trees / 2) as f64).contains(&x));
        }
        assert_eq!(contrast(&g, trees, 11).unwrap(), counts.contrast());
    }

    #[test]
    fn zero_trees_rejected() {
        assert!(contrast(&p3(), 0, 0).is_err());
    }
}
