//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here calls the code paths it is used to check:
//! descendant sets come from parent walks, LCAs from ancestor-chain
//! intersection, cut-sets from explicit enumeration.

#![allow(dead_code)]

use excond::fundcut::fundamental_cut_sides;
use excond::mst::{minimum_spanning_tree, root_and_label};
use excond::{EdgeValues, Graph, RootedTree};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected graph on `n` vertices: a random tree plus random extra edges,
/// integer edge weights in `[1, max_w]`.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, max_w: u32) -> Graph {
    let mut edges = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let p = order[rng.random_range(0..i)];
        edges.push((p, order[i]));
    }
    let extra = rng.random_range(0..=n * (n - 1) / 2);
    for _ in 0..extra {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a != b {
            edges.push((a, b));
        }
    }
    edges.sort_by_key(|&(a, b)| (a.min(b), a.max(b)));
    edges.dedup_by_key(|&mut (a, b)| (a.min(b), a.max(b)));
    let weighted = edges.into_iter().map(|(a, b)| (a, b, rng.random_range(1..=max_w) as f64));
    Graph::from_edges(vec![1; n], weighted).unwrap()
}

/// Random spanning tree (MST under random values) with a random root.
pub fn random_spanning_tree(rng: &mut ChaCha8Rng, g: &Graph) -> RootedTree {
    let values = EdgeValues::new((0..g.m()).map(|_| rng.random::<f64>()).collect());
    let edges = minimum_spanning_tree(g, &values).unwrap();
    let root = rng.random_range(0..g.n());
    root_and_label(g, &edges, root).unwrap()
}

pub fn ancestors(t: &RootedTree, mut v: usize) -> Vec<usize> {
    let mut chain = vec![v];
    while v != t.root() {
        v = t.parent(v);
        chain.push(v);
    }
    chain
}

/// `D(u)` by walking every vertex's ancestor chain.
pub fn descendants(t: &RootedTree, u: usize) -> Vec<bool> {
    (0..t.n()).map(|v| ancestors(t, v).contains(&u)).collect()
}

pub fn naive_lca(t: &RootedTree, a: usize, b: usize) -> usize {
    let chain_a = ancestors(t, a);
    *ancestors(t, b).iter().find(|x| chain_a.contains(x)).unwrap()
}

pub fn is_tree_edge(t: &RootedTree, g: &Graph, e: usize) -> bool {
    let (a, b) = g.endpoints(e);
    t.parent_edge(a) == Some(e) || t.parent_edge(b) == Some(e)
}

/// Subtree volume, intra weight and inter weight of `u` straight from their
/// definitions. The inter weight is only defined for non-root vertices.
pub fn attributes_by_definition(g: &Graph, t: &RootedTree, u: usize) -> (f64, f64, Option<f64>) {
    let d = descendants(t, u);
    let subtree_vol: f64 = (0..g.n()).filter(|&v| d[v]).map(|v| g.vertex_volume(v)).sum();
    let mut intra = 0.0;
    let mut inter = 0.0;
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if is_tree_edge(t, g, e) {
            continue;
        }
        let w = g.edge_weight(e);
        if d[a] && d[b] {
            if a != u && b != u && naive_lca(t, a, b) == u {
                intra += 2.0 * w;
            } else if a == u || b == u {
                intra += w;
            }
        }
        if d[a] != d[b] {
            inter += w;
        }
    }
    let inter = (u != t.root()).then_some(inter);
    (subtree_vol, intra, inter)
}

/// Child-side membership of every fundamental cut, keyed by tree edge id.
pub fn all_cut_sides(g: &Graph, t: &RootedTree) -> Vec<(usize, Vec<bool>)> {
    t.edge_ids().into_iter().map(|e| (e, fundamental_cut_sides(g, t, e).unwrap())).collect()
}

/// Conductance of the cut given by `side`, degree-sum volumes.
pub fn cut_conductance(g: &Graph, side: &[bool]) -> f64 {
    let cut: f64 =
        g.edges().iter().enumerate().filter(|(_, &(a, b))| side[a] != side[b]).map(|(e, _)| g.edge_weight(e)).sum();
    let vol: f64 = (0..g.n()).filter(|&v| side[v]).map(|v| g.vertex_volume(v)).sum();
    cut / vol.min(g.total_volume() - vol)
}

/// `Cond(e)`: minimum conductance over all fundamental cuts whose cut-set
/// contains `e`.
pub fn cond_by_enumeration(g: &Graph, t: &RootedTree) -> Vec<f64> {
    let mut best = vec![f64::INFINITY; g.m()];
    for (_, side) in all_cut_sides(g, t) {
        let c = cut_conductance(g, &side);
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if side[a] != side[b] {
                best[e] = best[e].min(c);
            }
        }
    }
    best
}

/// Exhaustive maximum-weight matching value for small graphs.
pub fn max_weight_matching_value(g: &Graph, weights: &[f64]) -> f64 {
    fn go(g: &Graph, w: &[f64], e: usize, used: &mut Vec<bool>) -> f64 {
        if e == g.m() {
            return 0.0;
        }
        let skip = go(g, w, e + 1, used);
        let (a, b) = g.endpoints(e);
        if used[a] || used[b] {
            return skip;
        }
        used[a] = true;
        used[b] = true;
        let take = w[e] + go(g, w, e + 1, used);
        used[a] = false;
        used[b] = false;
        skip.max(take)
    }
    go(g, weights, 0, &mut vec![false; g.n()])
}

/// Smallest edge cut over all bipartitions with block weights within
/// `bound`.
pub fn exhaustive_min_balanced_cut(g: &Graph, bound: f64) -> f64 {
    let n = g.n();
    assert!(n <= 20);
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << n) {
        let w0: u64 = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| g.vertex_weight(v)).sum();
        let w1 = g.total_vertex_weight() - w0;
        if w0 as f64 > bound || w1 as f64 > bound {
            continue;
        }
        let cut: f64 = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| (mask >> a & 1) != (mask >> b & 1))
            .map(|(e, _)| g.edge_weight(e))
            .sum();
        best = best.min(cut);
    }
    best
}

/// Uniformly random bipartition with block sizes differing by at most one
/// (unit vertex weights).
pub fn random_balanced_blocks(rng: &mut ChaCha8Rng, n: usize) -> Vec<u8> {
    let mut blocks: Vec<u8> = (0..n).map(|v| (v < n / 2) as u8).collect();
    blocks.shuffle(rng);
    blocks
}
