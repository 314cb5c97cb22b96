//! Undirected weighted simple graphs in CSR form.

use std::collections::VecDeque;
use std::ops::{Deref, DerefMut};

use rand::Rng as _;

use crate::{seed, Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// An undirected, simple graph with positive integer vertex weights `c` and
/// positive real edge weights `ω`.
///
/// Every undirected edge has one canonical id: its rank in the sorted list of
/// `(min endpoint, max endpoint)` pairs. Neighbor lists are sorted by vertex
/// id.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    xadj: Vec<usize>,
    adjncy: Vec<VertexId>,
    adj_edge: Vec<EdgeId>,
    vertex_weights: Vec<u64>,
    endpoints: Vec<(VertexId, VertexId)>,
    edge_weights: Vec<f64>,
    weighted_degree: Vec<f64>,
    total_volume: f64,
}

impl Graph {
    /// Builds a graph from an edge list. Parallel edges are merged by summing
    /// their weights and self-loops are dropped.
    pub fn from_edges(
        vertex_weights: Vec<u64>,
        edges: impl IntoIterator<Item = (VertexId, VertexId, f64)>,
    ) -> Result<Self> {
        let n = vertex_weights.len();
        if let Some(v) = vertex_weights.iter().position(|&c| c == 0) {
            return Err(Error::InvalidParameter(format!("vertex {v} has zero weight")));
        }
        let mut list = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) has non-positive weight {w}")));
            }
            if u != v {
                list.push((u.min(v), u.max(v), w));
            }
        }
        list.sort_by_key(|&(a, b, _)| (a, b));

        let mut endpoints: Vec<(VertexId, VertexId)> = Vec::with_capacity(list.len());
        let mut edge_weights: Vec<f64> = Vec::with_capacity(list.len());
        for (a, b, w) in list {
            if endpoints.last() == Some(&(a, b)) {
                *edge_weights.last_mut().unwrap() += w;
            } else {
                endpoints.push((a, b));
                edge_weights.push(w);
            }
        }

        let mut xadj = vec![0usize; n + 1];
        for &(a, b) in &endpoints {
            xadj[a + 1] += 1;
            xadj[b + 1] += 1;
        }
        for v in 0..n {
            xadj[v + 1] += xadj[v];
        }
        let mut fill = xadj.clone();
        let mut adjncy = vec![0; 2 * endpoints.len()];
        let mut adj_edge = vec![0; 2 * endpoints.len()];
        // With edges sorted by (min, max), vertex x first receives every
        // smaller neighbor (edges (a, x), a ascending) and then every larger
        // one (edges (x, b), b ascending), so each list comes out sorted.
        for (e, &(a, b)) in endpoints.iter().enumerate() {
            adjncy[fill[a]] = b;
            adj_edge[fill[a]] = e;
            fill[a] += 1;
            adjncy[fill[b]] = a;
            adj_edge[fill[b]] = e;
            fill[b] += 1;
        }

        let mut weighted_degree = vec![0.0; n];
        for (&(a, b), &w) in endpoints.iter().zip(&edge_weights) {
            weighted_degree[a] += w;
            weighted_degree[b] += w;
        }
        let total_volume = weighted_degree.iter().sum();

        Ok(Graph { xadj, adjncy, adj_edge, vertex_weights, endpoints, edge_weights, weighted_degree, total_volume })
    }

    /// Unit vertex weights, unit edge weights.
    pub fn from_unweighted(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        Self::from_edges(vec![1; n], edges.iter().map(|&(u, v)| (u, v, 1.0)))
    }

    pub fn n(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn m(&self) -> usize {
        self.endpoints.len()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.xadj[v + 1] - self.xadj[v]
    }

    /// `(neighbor, edge id)` pairs of `v`, by ascending neighbor id.
    pub fn neighbors(&self, v: VertexId) -> impl ExactSizeIterator<Item = (VertexId, EdgeId)> + '_ {
        let r = self.xadj[v]..self.xadj[v + 1];
        self.adjncy[r.clone()].iter().copied().zip(self.adj_edge[r].iter().copied())
    }

    pub fn neighbor_ids(&self, v: VertexId) -> &[VertexId] {
        &self.adjncy[self.xadj[v]..self.xadj[v + 1]]
    }

    /// Endpoints `(u, v)` with `u < v`.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.endpoints[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.endpoints
    }

    pub fn edge_weight(&self, e: EdgeId) -> f64 {
        self.edge_weights[e]
    }

    pub fn edge_weights(&self) -> &[f64] {
        &self.edge_weights
    }

    pub fn vertex_weight(&self, v: VertexId) -> u64 {
        self.vertex_weights[v]
    }

    pub fn vertex_weights(&self) -> &[u64] {
        &self.vertex_weights
    }

    pub fn total_vertex_weight(&self) -> u64 {
        self.vertex_weights.iter().sum()
    }

    pub fn total_edge_weight(&self) -> f64 {
        self.edge_weights.iter().sum()
    }

    /// Looks up the id of edge `{u, v}` by binary search in `u`'s list.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let r = self.xadj[u]..self.xadj[u + 1];
        self.adjncy[r.clone()].binary_search(&v).ok().map(|i| self.adj_edge[r.start + i])
    }

    /// `vol({v})`, the weighted degree.
    pub fn vertex_volume(&self, v: VertexId) -> f64 {
        self.weighted_degree[v]
    }

    /// `vol(V) = 2·ω(E)`.
    pub fn total_volume(&self) -> f64 {
        self.total_volume
    }

    /// Sum of weighted degrees over `s`. Edges inside `s` count twice.
    pub fn volume(&self, s: &VertexSet) -> f64 {
        s.iter().map(|v| self.weighted_degree[v]).sum()
    }

    /// True iff a BFS from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let (comp, count) = self.components();
        debug_assert!(comp.len() == self.n());
        count == 1
    }

    /// Component index per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &t in self.neighbor_ids(u) {
                    if comp[t] == usize::MAX {
                        comp[t] = count;
                        queue.push_back(t);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Extracts the largest connected component (lowest component index on
    /// ties). Returns the subgraph and, per new vertex, its original id.
    pub fn largest_component(&self) -> (Graph, Vec<VertexId>) {
        let (comp, count) = self.components();
        let mut sizes = vec![0usize; count];
        for &c in &comp {
            sizes[c] += 1;
        }
        let best = (0..count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)));
        let Some(best) = best else {
            return (self.clone(), Vec::new());
        };
        let original: Vec<VertexId> = (0..self.n()).filter(|&v| comp[v] == best).collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in original.iter().enumerate() {
            new_id[v] = i;
        }
        let weights = original.iter().map(|&v| self.vertex_weights[v]).collect();
        let edges = self
            .endpoints
            .iter()
            .zip(&self.edge_weights)
            .filter(|((a, _), _)| comp[*a] == best)
            .map(|(&(a, b), &w)| (new_id[a], new_id[b], w));
        let g = Graph::from_edges(weights, edges).expect("subgraph of a valid graph");
        (g, original)
    }
}

/// Membership over `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    member: Vec<bool>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { member: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        VertexSet { member: vec![true; n] }
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut s = Self::empty(n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: VertexId) {
        self.member[v] = true;
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.member[v]
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.member.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v)
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.member.iter().any(|&b| b)
    }
}

/// A dense per-edge value array indexed by canonical edge id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EdgeValues(Vec<f64>);

impl EdgeValues {
    pub fn new(values: Vec<f64>) -> Self {
        EdgeValues(values)
    }

    pub fn filled(m: usize, value: f64) -> Self {
        EdgeValues(vec![value; m])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for EdgeValues {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for EdgeValues {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

/// Preferential-attachment (Barabási–Albert) graph with unit weights.
///
/// Starts from a clique on `attach + 1` vertices; every further vertex links
/// to `attach` distinct existing vertices chosen with probability
/// proportional to their degree.
pub fn generate_scale_free(n: usize, attach: usize, seed: u64) -> Result<Graph> {
    if attach < 1 || n < attach + 1 {
        return Err(Error::InvalidParameter(format!(
            "scale-free generator needs n >= attach + 1 >= 2, got n={n}, attach={attach}"
        )));
    }
    let mut rng = seed::rng(seed);
    let mut edges = Vec::with_capacity(attach * n);
    // Every edge endpoint appears once here, so uniform sampling from it is
    // degree-proportional sampling.
    let mut endpoint_pool: Vec<VertexId> = Vec::with_capacity(2 * attach * n);
    for u in 0..=attach {
        for v in (u + 1)..=attach {
            edges.push((u, v));
            endpoint_pool.push(u);
            endpoint_pool.push(v);
        }
    }
    let mut targets = Vec::with_capacity(attach);
    for v in (attach + 1)..n {
        targets.clear();
        while targets.len() < attach {
            let t = endpoint_pool[rng.random_range(0..endpoint_pool.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            endpoint_pool.push(t);
            endpoint_pool.push(v);
        }
    }
    Graph::from_unweighted(n, &edges)
}
