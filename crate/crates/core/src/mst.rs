//! Minimum spanning trees, rooted-tree labeling and LCA queries.

use crate::{EdgeId, EdgeValues, Error, Graph, Result, VertexId};

/// A rooted spanning tree with preorder labels.
///
/// `label` is a preorder numbering in which children are visited by
/// ascending vertex id, so `t` is a descendant of `u` iff
/// `label[u] <= label[t] <= max_label_descendants[u]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: VertexId,
    parent: Vec<VertexId>,
    parent_edge: Vec<Option<EdgeId>>,
    children: Vec<Vec<VertexId>>,
    label: Vec<usize>,
    max_label_descendants: Vec<usize>,
    depth: Vec<usize>,
}

impl RootedTree {
    /// Builds the tree from parent links (`parent[root] == root`). Fails if
    /// the links do not form a single tree spanning all vertices.
    pub fn from_parent_links(root: VertexId, parent: Vec<VertexId>, parent_edge: Vec<Option<EdgeId>>) -> Result<Self> {
        let n = parent.len();
        if root >= n || parent[root] != root || parent_edge[root].is_some() {
            return Err(Error::NotSpanningTree(format!("bad root {root}")));
        }
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if v == root {
                continue;
            }
            let p = parent[v];
            if p >= n || p == v || parent_edge[v].is_none() {
                return Err(Error::NotSpanningTree(format!("vertex {v} has no valid parent")));
            }
            // Ascending v, so children lists are sorted.
            children[p].push(v);
        }

        let mut label = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            label[u] = preorder.len();
            preorder.push(u);
            for &c in children[u].iter().rev() {
                depth[c] = depth[u] + 1;
                stack.push(c);
            }
        }
        if preorder.len() != n {
            return Err(Error::NotSpanningTree(format!(
                "only {} of {n} vertices reachable from the root",
                preorder.len()
            )));
        }
        let mut max_label_descendants = label.clone();
        for &u in preorder.iter().rev() {
            if u != root {
                let p = parent[u];
                max_label_descendants[p] = max_label_descendants[p].max(max_label_descendants[u]);
            }
        }
        Ok(RootedTree { root, parent, parent_edge, children, label, max_label_descendants, depth })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    /// Parent of `v`; the root maps to itself.
    pub fn parent(&self, v: VertexId) -> VertexId {
        self.parent[v]
    }

    pub fn parents(&self) -> &[VertexId] {
        &self.parent
    }

    pub fn parent_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.parent_edge[v]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.children[v].is_empty()
    }

    pub fn label(&self, v: VertexId) -> usize {
        self.label[v]
    }

    pub fn max_label_descendants(&self, v: VertexId) -> usize {
        self.max_label_descendants[v]
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v]
    }

    /// True iff `t` lies in the subtree of `u` (including `u`).
    pub fn is_descendant(&self, t: VertexId, u: VertexId) -> bool {
        self.label[u] <= self.label[t] && self.label[t] <= self.max_label_descendants[u]
    }

    /// Tree edge ids, ordered by child vertex.
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.parent_edge.iter().flatten().copied().collect()
    }

    /// True iff edge `e = {u, v}` of the underlying graph is a tree edge.
    pub fn contains_edge(&self, e: EdgeId, u: VertexId, v: VertexId) -> bool {
        self.parent_edge[u] == Some(e) || self.parent_edge[v] == Some(e)
    }

    /// Lowest common ancestor by depth-aligned two-pointer ascent.
    pub fn lca(&self, mut u: VertexId, mut v: VertexId) -> VertexId {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u];
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v];
        }
        while u != v {
            u = self.parent[u];
            v = self.parent[v];
        }
        u
    }
}

/// Weighted quick-union with path halving.
struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Kruskal's algorithm. Ties in `values` are broken by canonical edge id, so
/// the result is unique. Returns the tree edge ids in ascending order.
pub fn minimum_spanning_tree(g: &Graph, values: &EdgeValues) -> Result<Vec<EdgeId>> {
    if values.len() != g.m() {
        return Err(Error::InvalidParameter(format!("{} edge values for {} edges", values.len(), g.m())));
    }
    if let Some(e) = values.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!("edge {e} has non-finite value")));
    }
    let mut order: Vec<EdgeId> = (0..g.m()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));

    let mut sets = DisjointSets::new(g.n());
    let mut tree = Vec::with_capacity(g.n().saturating_sub(1));
    for e in order {
        let (u, v) = g.endpoints(e);
        if sets.union(u, v) {
            tree.push(e);
            if tree.len() + 1 == g.n() {
                break;
            }
        }
    }
    if tree.len() + 1 < g.n() {
        return Err(Error::Disconnected);
    }
    tree.sort_unstable();
    Ok(tree)
}

/// Roots the spanning tree given by `tree_edges` at `root` and computes
/// preorder labels, subtree label ranges and depths.
pub fn root_and_label(g: &Graph, tree_edges: &[EdgeId], root: VertexId) -> Result<RootedTree> {
    let n = g.n();
    if root >= n {
        return Err(Error::NotSpanningTree(format!("root {root} out of range")));
    }
    if tree_edges.len() + 1 != n {
        return Err(Error::NotSpanningTree(format!("{} edges for {n} vertices", tree_edges.len())));
    }
    let mut in_tree = vec![false; g.m()];
    for &e in tree_edges {
        if e >= g.m() || std::mem::replace(&mut in_tree[e], true) {
            return Err(Error::NotSpanningTree(format!("invalid or repeated edge id {e}")));
        }
    }

    let mut parent = vec![usize::MAX; n];
    let mut parent_edge = vec![None; n];
    parent[root] = root;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        for (t, e) in g.neighbors(u) {
            if in_tree[e] && parent[t] == usize::MAX {
                parent[t] = u;
                parent_edge[t] = Some(e);
                stack.push(t);
            }
        }
    }
    // n - 1 edges reaching every vertex form a tree.
    RootedTree::from_parent_links(root, parent, parent_edge)
}
