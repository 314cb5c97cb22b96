//! Edge ratings for matching-based coarsening. A higher rating makes an edge
//! more likely to be contracted.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;

use crate::fundcut::{all_fundamental_conductances, TreeEdgeConductances};
use crate::mst::{minimum_spanning_tree, root_and_label};
use crate::seed::{self, stream};
use crate::tree_sampling::contrast;
use crate::{EdgeValues, Error, Graph, Result, RootedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rating {
    /// `ω·Cond/(c(u)c(v))`.
    ExCond,
    /// `expansion*² / ρ` with algebraic distance `ρ`.
    ExAlg,
    /// `ω²/(c(u)c(v))`.
    ExpansionStar2,
}

impl Rating {
    pub fn name(self) -> &'static str {
        match self {
            Rating::ExCond => "excond",
            Rating::ExAlg => "exalg",
            Rating::ExpansionStar2 => "exp2",
        }
    }
}

impl fmt::Display for Rating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rating {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "excond" | "ex_cond" => Ok(Rating::ExCond),
            "exalg" | "ex_alg" => Ok(Rating::ExAlg),
            "exp2" | "expansion*2" | "expansion_star2" => Ok(Rating::ExpansionStar2),
            _ => Err(Error::InvalidParameter(format!("unknown rating {s:?}"))),
        }
    }
}

/// Smoothing parameters for algebraic distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraicParams {
    pub vectors: usize,
    pub iterations: usize,
    /// Over-relaxation weight `λ` in `x' = (1-λ)x + λ·(weighted neighbor mean)`.
    pub relaxation: f64,
    pub rho_min: f64,
}

impl Default for AlgebraicParams {
    fn default() -> Self {
        AlgebraicParams { vectors: 8, iterations: 10, relaxation: 0.5, rho_min: 1e-9 }
    }
}

/// Per-edge algebraic distance, clamped below by a positive minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicDistances(Vec<f64>);

impl AlgebraicDistances {
    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// `Cond(e)`: for a tree edge its own fundamental-cut conductance; for a
/// non-tree edge `{u, v}` the minimum over the tree path from `u` to `v`.
pub fn cond_all_edges(g: &Graph, t: &RootedTree, tc: &TreeEdgeConductances) -> EdgeValues {
    let child_cond: Vec<f64> = (0..t.n())
        .map(|v| t.parent_edge(v).map(|e| tc.get(e).expect("conductance of every tree edge")).unwrap_or(f64::INFINITY))
        .collect();
    let mut cond = EdgeValues::filled(g.m(), 0.0);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if let Some(c) = tc.get(e) {
            cond[e] = c;
            continue;
        }
        let (mut a, mut b) = (u, v);
        let mut best = f64::INFINITY;
        while t.depth(a) > t.depth(b) {
            best = best.min(child_cond[a]);
            a = t.parent(a);
        }
        while t.depth(b) > t.depth(a) {
            best = best.min(child_cond[b]);
            b = t.parent(b);
        }
        while a != b {
            best = best.min(child_cond[a]).min(child_cond[b]);
            a = t.parent(a);
            b = t.parent(b);
        }
        cond[e] = best;
    }
    cond
}

pub fn ex_cond(g: &Graph, cond: &EdgeValues) -> EdgeValues {
    EdgeValues::new(
        g.edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| g.edge_weight(e) * cond[e] / (g.vertex_weight(u) as f64 * g.vertex_weight(v) as f64))
            .collect(),
    )
}

pub fn expansion_star2(g: &Graph) -> EdgeValues {
    EdgeValues::new(
        g.edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| {
                let w = g.edge_weight(e);
                w * w / (g.vertex_weight(u) as f64 * g.vertex_weight(v) as f64)
            })
            .collect(),
    )
}

/// Jacobi over-relaxation of `vectors` random vectors drawn from `[0, 1)`;
/// `ρ(e)` is the L2 distance of the endpoints' smoothed coordinates.
pub fn algebraic_distance(g: &Graph, params: &AlgebraicParams, seed: u64) -> Result<AlgebraicDistances> {
    if params.vectors == 0 {
        return Err(Error::InvalidParameter("algebraic distance needs at least one vector".into()));
    }
    if params.rho_min.is_nan() || params.rho_min <= 0.0 {
        return Err(Error::InvalidParameter("rho_min must be positive".into()));
    }
    let n = g.n();
    let lambda = params.relaxation;
    let mut rng = seed::rng(seed);
    let mut dist2 = vec![0.0; g.m()];
    let mut x = vec![0.0; n];
    let mut next = vec![0.0; n];
    for _ in 0..params.vectors {
        for xi in x.iter_mut() {
            *xi = rng.random::<f64>();
        }
        for _ in 0..params.iterations {
            for v in 0..n {
                let (mut num, mut den) = (0.0, 0.0);
                for (u, e) in g.neighbors(v) {
                    let w = g.edge_weight(e);
                    num += w * x[u];
                    den += w;
                }
                next[v] = if den > 0.0 { (1.0 - lambda) * x[v] + lambda * num / den } else { x[v] };
            }
            std::mem::swap(&mut x, &mut next);
        }
        for (d, &(u, v)) in dist2.iter_mut().zip(g.edges()) {
            let diff = x[u] - x[v];
            *d += diff * diff;
        }
    }
    Ok(AlgebraicDistances(dist2.into_iter().map(|d| d.sqrt().max(params.rho_min)).collect()))
}

pub fn ex_alg(g: &Graph, rho: &AlgebraicDistances) -> EdgeValues {
    let mut r = expansion_star2(g);
    for (x, &p) in r.iter_mut().zip(rho.values()) {
        *x /= p;
    }
    r
}

/// Intermediate results of the `ex_cond` pipeline.
#[derive(Debug, Clone)]
pub struct ExCondTrace {
    pub contrast: EdgeValues,
    pub tree: RootedTree,
    pub conductances: TreeEdgeConductances,
    pub cond: EdgeValues,
    pub rating: EdgeValues,
}

/// Contrast from `trees` random BFT trees, MST over the contrast with a
/// random root, conductance of all its fundamental cuts, `Cond`, `ex_cond`.
pub fn ex_cond_pipeline(g: &Graph, trees: usize, seed: u64) -> Result<ExCondTrace> {
    let gamma = contrast(g, trees, seed::derive(seed, stream::TREES))?;
    let tree_edges = minimum_spanning_tree(g, &gamma)?;
    let root = seed::rng(seed::derive(seed, stream::MST_ROOT)).random_range(0..g.n());
    let tree = root_and_label(g, &tree_edges, root)?;
    let conductances = all_fundamental_conductances(g, &tree)?;
    let cond = cond_all_edges(g, &tree, &conductances);
    let rating = ex_cond(g, &cond);
    Ok(ExCondTrace { contrast: gamma, tree, conductances, cond, rating })
}

/// Parameters shared by all ratings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatingParams {
    pub trees: usize,
    pub algebraic: AlgebraicParams,
}

impl Default for RatingParams {
    fn default() -> Self {
        RatingParams { trees: 20, algebraic: AlgebraicParams::default() }
    }
}

pub fn compute_rating(g: &Graph, rating: Rating, params: &RatingParams, seed: u64) -> Result<EdgeValues> {
    match rating {
        Rating::ExCond => Ok(ex_cond_pipeline(g, params.trees, seed)?.rating),
        Rating::ExAlg => {
            let rho = algebraic_distance(g, &params.algebraic, seed::derive(seed, stream::ALGEBRAIC))?;
            Ok(ex_alg(g, &rho))
        }
        Rating::ExpansionStar2 => Ok(expansion_star2(g)),
    }
}
