//! Conductance of every fundamental cut of a rooted spanning tree in a
//! single postorder traversal.
//!
//! Removing a tree edge `e_T` splits the tree into the subtree `D(u)` of its
//! child endpoint `u` and the rest. Three per-vertex attributes are
//! aggregated bottom-up:
//!
//! * `subtree_vol[u] = vol(D(u))`,
//! * `intra_weight[u]`: twice the weight of the non-tree edges between two
//!   different child subtrees of `u` plus the weight of the non-tree edges
//!   between `u` and a proper descendant,
//! * `inter_weight[u]`: the weight of the non-tree edges with exactly one
//!   endpoint in `D(u)`.
//!
//! The cut weight of `e_T` is then `inter_weight[u] + ω(e_T)`.

use std::collections::VecDeque;

use crate::{EdgeId, Error, Graph, Result, RootedTree, VertexId};

/// Per-vertex aggregates after the traversal.
#[derive(Debug, Clone, PartialEq)]
pub struct CutAttributes {
    pub subtree_vol: Vec<f64>,
    pub intra_weight: Vec<f64>,
    pub inter_weight: Vec<f64>,
}

/// `cond(e_T, T)` for every tree edge, indexed by canonical edge id; `None`
/// for non-tree edges.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeEdgeConductances {
    by_edge: Vec<Option<f64>>,
}

impl TreeEdgeConductances {
    pub fn get(&self, e: EdgeId) -> Option<f64> {
        self.by_edge[e]
    }

    /// `(edge id, conductance)` over tree edges in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, f64)> + '_ {
        self.by_edge.iter().enumerate().filter_map(|(e, c)| c.map(|c| (e, c)))
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.by_edge.iter().all(Option::is_none)
    }
}

/// Full output of the traversal.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalCuts {
    pub attributes: CutAttributes,
    pub conductances: TreeEdgeConductances,
    /// Adjacency entries inspected plus vertices visited.
    pub edge_visits: usize,
}

fn check_tree_matches(g: &Graph, t: &RootedTree) -> Result<()> {
    if t.n() != g.n() {
        return Err(Error::NotSpanningTree(format!("tree has {} vertices, graph has {}", t.n(), g.n())));
    }
    for v in 0..t.n() {
        if let Some(e) = t.parent_edge(v) {
            let p = t.parent(v);
            if e >= g.m() || g.endpoints(e) != (v.min(p), v.max(p)) {
                return Err(Error::NotSpanningTree(format!("parent edge of vertex {v} is not an edge of the graph")));
            }
        }
    }
    Ok(())
}

struct Traversal<'a> {
    g: &'a Graph,
    t: &'a RootedTree,
    attrs: CutAttributes,
    cond: Vec<Option<f64>>,
    visits: usize,
}

impl Traversal<'_> {
    fn set_conductance(&mut self, u: VertexId, parent_edge: Option<EdgeId>) {
        if let Some(e) = parent_edge {
            let vol = self.attrs.subtree_vol[u];
            let denom = vol.min(self.g.total_volume() - vol);
            self.cond[e] = Some((self.attrs.inter_weight[u] + self.g.edge_weight(e)) / denom);
        }
    }

    fn leaf(&mut self, u: VertexId) {
        let (g, t) = (self.g, self.t);
        self.attrs.subtree_vol[u] = g.vertex_volume(u);
        let mut parent_edge = None;
        for (x, f) in g.neighbors(u) {
            self.visits += 1;
            if t.contains_edge(f, u, x) {
                parent_edge = Some(f);
            } else {
                let w = g.edge_weight(f);
                let lca = t.lca(u, x);
                self.attrs.intra_weight[lca] += w;
                self.attrs.inter_weight[u] += w;
            }
        }
        self.set_conductance(u, parent_edge);
    }

    fn non_leaf(&mut self, u: VertexId) {
        let (g, t) = (self.g, self.t);
        let mut parent_edge = None;
        for (x, f) in g.neighbors(u) {
            self.visits += 1;
            if t.contains_edge(f, u, x) {
                if t.label(u) < t.label(x) {
                    self.attrs.subtree_vol[u] += self.attrs.subtree_vol[x];
                    self.attrs.inter_weight[u] += self.attrs.inter_weight[x];
                } else {
                    parent_edge = Some(f);
                }
            } else if t.label(x) < t.label(u) || t.label(x) > t.max_label_descendants(u) {
                // x lies outside D(u).
                let w = g.edge_weight(f);
                let lca = t.lca(u, x);
                self.attrs.intra_weight[lca] += w;
                self.attrs.inter_weight[u] += w;
            }
        }
        self.attrs.subtree_vol[u] += g.vertex_volume(u);
        self.attrs.inter_weight[u] -= self.attrs.intra_weight[u];
        self.set_conductance(u, parent_edge);
    }
}

/// Runs the postorder traversal and returns attributes, conductances and the
/// visit count.
pub fn fundamental_cuts(g: &Graph, t: &RootedTree) -> Result<FundamentalCuts> {
    check_tree_matches(g, t)?;
    let n = g.n();
    let mut tr = Traversal {
        g,
        t,
        attrs: CutAttributes { subtree_vol: vec![0.0; n], intra_weight: vec![0.0; n], inter_weight: vec![0.0; n] },
        cond: vec![None; g.m()],
        visits: 0,
    };

    // Iterative postorder: (vertex, index of the next child to descend into).
    let mut stack: Vec<(VertexId, usize)> = vec![(t.root(), 0)];
    while let Some(top) = stack.last_mut() {
        let (u, next) = *top;
        if let Some(&c) = t.children(u).get(next) {
            top.1 += 1;
            stack.push((c, 0));
            continue;
        }
        stack.pop();
        tr.visits += 1;
        if t.is_leaf(u) {
            tr.leaf(u);
        } else {
            tr.non_leaf(u);
        }
    }

    Ok(FundamentalCuts {
        attributes: tr.attrs,
        conductances: TreeEdgeConductances { by_edge: tr.cond },
        edge_visits: tr.visits,
    })
}

/// `cond(e_T, T)` for all tree edges in `O(|E|)` plus LCA cost.
pub fn all_fundamental_conductances(g: &Graph, t: &RootedTree) -> Result<TreeEdgeConductances> {
    Ok(fundamental_cuts(g, t)?.conductances)
}

/// Side of every vertex after removing tree edge `e`: `true` on the child's
/// side. Fails if `e` is not a tree edge.
pub fn fundamental_cut_sides(g: &Graph, t: &RootedTree, e: EdgeId) -> Result<Vec<bool>> {
    check_tree_matches(g, t)?;
    let child = (0..t.n()).find(|&v| t.parent_edge(v) == Some(e)).ok_or(Error::NotTreeEdge(e))?;
    let mut side = vec![false; g.n()];
    side[child] = true;
    let mut queue = VecDeque::from([child]);
    while let Some(u) = queue.pop_front() {
        for (x, f) in g.neighbors(u) {
            if f != e && t.contains_edge(f, u, x) && !side[x] {
                side[x] = true;
                queue.push_back(x);
            }
        }
    }
    Ok(side)
}

/// Direct evaluation of `cond(e_T, T)`: remove `e_T`, two-color the tree
/// components, sum the crossing weight and divide by the smaller volume.
pub fn brute_force_conductance(g: &Graph, t: &RootedTree, e: EdgeId) -> Result<f64> {
    let side = fundamental_cut_sides(g, t, e)?;
    let mut cut = 0.0;
    for (f, &(a, b)) in g.edges().iter().enumerate() {
        if side[a] != side[b] {
            cut += g.edge_weight(f);
        }
    }
    let vol: f64 = (0..g.n()).filter(|&v| side[v]).map(|v| g.vertex_volume(v)).sum();
    Ok(cut / vol.min(g.total_volume() - vol))
}
