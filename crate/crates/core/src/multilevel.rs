//! Rating-guided multilevel bipartitioning: matching, contraction, initial
//! partitioning by region growing, and boundary FM refinement.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::mcv::edge_cut;
use crate::rating::{compute_rating, RatingParams};
use crate::seed::{self, stream};
use crate::{EdgeValues, Error, Graph, Rating, Result, VertexId};

/// Pairs of adjacent vertices to contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<VertexId>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching { mate: vec![None; n] }
    }

    pub fn mate(&self, v: VertexId) -> Option<VertexId> {
        self.mate[v]
    }

    /// Number of matched pairs.
    pub fn len(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.mate.iter().all(Option::is_none)
    }

    /// Matched pairs `(u, v)` with `u < v`.
    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.mate.iter().enumerate().filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
    }
}

/// Greedy matching over edges by descending rating (ties by edge id). An
/// edge is skipped if an endpoint is already matched or the merged vertex
/// would weigh more than `max_vertex_weight`.
pub fn greedy_matching(g: &Graph, rating: &EdgeValues, max_vertex_weight: u64) -> Matching {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_by(|&a, &b| rating[b].total_cmp(&rating[a]).then(a.cmp(&b)));
    let mut m = Matching::empty(g.n());
    for e in order {
        let (u, v) = g.endpoints(e);
        if m.mate[u].is_none() && m.mate[v].is_none() && g.vertex_weight(u) + g.vertex_weight(v) <= max_vertex_weight {
            m.mate[u] = Some(v);
            m.mate[v] = Some(u);
        }
    }
    m
}

/// Merges matched pairs. Returns the coarse graph and the fine-to-coarse
/// vertex map; coarse ids follow the smallest fine id of each group.
pub fn contract(g: &Graph, m: &Matching) -> (Graph, Vec<VertexId>) {
    let mut map = vec![usize::MAX; g.n()];
    let mut weights = Vec::with_capacity(g.n() - m.len());
    for v in 0..g.n() {
        if map[v] != usize::MAX {
            continue;
        }
        let id = weights.len();
        map[v] = id;
        let mut c = g.vertex_weight(v);
        if let Some(u) = m.mate(v) {
            map[u] = id;
            c += g.vertex_weight(u);
        }
        weights.push(c);
    }
    let edges = g.edges().iter().zip(g.edge_weights()).map(|(&(a, b), &w)| (map[a], map[b], w));
    let coarse = Graph::from_edges(weights, edges).expect("contraction of a valid graph");
    (coarse, map)
}

/// `(1 + ε)·⌈W/2⌉`, the largest admissible block weight.
pub fn balance_bound(total_weight: u64, epsilon: f64) -> f64 {
    (1.0 + epsilon) * total_weight.div_ceil(2) as f64
}

/// A bipartition with maintained block weights and external degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    block: Vec<u8>,
    block_weight: [u64; 2],
    external_degree: Vec<u32>,
}

impl Partition {
    pub fn new(g: &Graph, block: Vec<u8>) -> Result<Self> {
        if block.len() != g.n() {
            return Err(Error::InvalidPartition(format!("{} block ids for {} vertices", block.len(), g.n())));
        }
        if let Some(v) = block.iter().position(|&b| b > 1) {
            return Err(Error::InvalidPartition(format!("vertex {v} has block id {}", block[v])));
        }
        let mut block_weight = [0u64; 2];
        let mut external_degree = vec![0u32; g.n()];
        for v in 0..g.n() {
            block_weight[block[v] as usize] += g.vertex_weight(v);
            external_degree[v] = g.neighbor_ids(v).iter().filter(|&&t| block[t] != block[v]).count() as u32;
        }
        Ok(Partition { block, block_weight, external_degree })
    }

    pub fn n(&self) -> usize {
        self.block.len()
    }

    pub fn block(&self, v: VertexId) -> u8 {
        self.block[v]
    }

    pub fn blocks(&self) -> &[u8] {
        &self.block
    }

    pub fn into_blocks(self) -> Vec<u8> {
        self.block
    }

    pub fn block_weights(&self) -> [u64; 2] {
        self.block_weight
    }

    pub fn max_block_weight(&self) -> u64 {
        self.block_weight[0].max(self.block_weight[1])
    }

    pub fn external_degree(&self, v: VertexId) -> u32 {
        self.external_degree[v]
    }

    pub fn external_degrees(&self) -> &[u32] {
        &self.external_degree
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        self.external_degree[v] > 0
    }

    pub fn is_balanced(&self, epsilon: f64) -> bool {
        self.max_block_weight() as f64 <= balance_bound(self.block_weight[0] + self.block_weight[1], epsilon)
    }

    /// `max(0, max block weight - bound)`.
    pub fn overweight(&self, epsilon: f64) -> f64 {
        let bound = balance_bound(self.block_weight[0] + self.block_weight[1], epsilon);
        (self.max_block_weight() as f64 - bound).max(0.0)
    }

    /// Moves `v` to the other block, updating weights and external degrees.
    pub fn move_vertex(&mut self, g: &Graph, v: VertexId) {
        let from = self.block[v];
        let to = 1 - from;
        let c = g.vertex_weight(v);
        self.block_weight[from as usize] -= c;
        self.block_weight[to as usize] += c;
        self.block[v] = to;
        let deg = g.degree(v) as u32;
        self.external_degree[v] = deg - self.external_degree[v];
        for &t in g.neighbor_ids(v) {
            if self.block[t] == to {
                self.external_degree[t] -= 1;
            } else {
                self.external_degree[t] += 1;
            }
        }
    }
}

fn grow_region(g: &Graph, start: VertexId, bound: f64, rng: &mut seed::Rng) -> Vec<u8> {
    let target = g.total_vertex_weight().div_ceil(2);
    let mut block = vec![1u8; g.n()];
    let mut seen = vec![false; g.n()];
    let mut weight = 0u64;
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut nbrs = Vec::new();
    while let Some(v) = queue.pop_front() {
        if weight >= target {
            break;
        }
        if (weight + g.vertex_weight(v)) as f64 > bound {
            continue;
        }
        block[v] = 0;
        weight += g.vertex_weight(v);
        nbrs.clear();
        nbrs.extend_from_slice(g.neighbor_ids(v));
        nbrs.shuffle(rng);
        for &t in &nbrs {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    block
}

/// Best of `attempts` BFS region growings from random start vertices, by
/// (overweight, edge cut). The result may be unbalanced if no attempt was;
/// check with [`Partition::is_balanced`].
pub fn initial_bipartition(g: &Graph, epsilon: f64, attempts: usize, seed: u64) -> Partition {
    let bound = balance_bound(g.total_vertex_weight(), epsilon);
    let mut rng = seed::rng(seed);
    let mut best: Option<(f64, f64, Partition)> = None;
    for _ in 0..attempts.max(1) {
        let start = rng.random_range(0..g.n());
        let blocks = grow_region(g, start, bound, &mut rng);
        let p = Partition::new(g, blocks).expect("two blocks");
        let score = (p.overweight(epsilon), edge_cut(g, &p));
        let better = match &best {
            None => true,
            Some((o, c, _)) => (score.0, score.1) < (*o, *c),
        };
        if better {
            best = Some((score.0, score.1, p));
        }
    }
    best.expect("at least one attempt").2
}

#[derive(Debug, PartialEq)]
struct Candidate {
    gain: f64,
    vertex: VertexId,
    version: u32,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.vertex.cmp(&self.vertex))
            .then_with(|| self.version.cmp(&other.version))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One FM pass. Returns true if the committed prefix improved the state.
fn fm_pass(g: &Graph, p: &mut Partition, epsilon: f64) -> bool {
    let n = g.n();
    let bound = balance_bound(g.total_vertex_weight(), epsilon);
    // Moves may overshoot the bound by one vertex within a pass; only the
    // best prefix by (overweight, cut) is kept.
    let slack = g.vertex_weights().iter().copied().max().unwrap_or(0) as f64;
    let mut gain: Vec<f64> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .map(|(t, e)| if p.block[t] != p.block[v] { g.edge_weight(e) } else { -g.edge_weight(e) })
                .sum()
        })
        .collect();
    let mut version = vec![0u32; n];
    let mut moved = vec![false; n];
    let mut heap: BinaryHeap<Candidate> =
        (0..n).filter(|&v| p.is_boundary(v)).map(|v| Candidate { gain: gain[v], vertex: v, version: 0 }).collect();

    let start = (p.overweight(epsilon), edge_cut(g, p));
    let mut cut = start.1;
    let mut best = start;
    let mut best_len = 0;
    let mut moves: Vec<VertexId> = Vec::new();

    while let Some(Candidate { vertex: v, version: ver, .. }) = heap.pop() {
        if moved[v] || ver != version[v] {
            continue;
        }
        let from = p.block[v] as usize;
        let c = g.vertex_weight(v);
        let mut after = p.block_weight;
        after[from] -= c;
        after[1 - from] += c;
        let max_after = after[0].max(after[1]);
        if max_after as f64 > bound + slack && max_after >= p.max_block_weight() {
            continue;
        }
        moved[v] = true;
        cut -= gain[v];
        gain[v] = -gain[v];
        p.move_vertex(g, v);
        moves.push(v);
        for (t, e) in g.neighbors(v) {
            let w = g.edge_weight(e);
            gain[t] += if p.block[t] == p.block[v] { -2.0 * w } else { 2.0 * w };
            if !moved[t] {
                version[t] += 1;
                heap.push(Candidate { gain: gain[t], vertex: t, version: version[t] });
            }
        }
        let score = (p.overweight(epsilon), cut);
        if score < best {
            best = score;
            best_len = moves.len();
        }
    }
    for &v in moves[best_len..].iter().rev() {
        p.move_vertex(g, v);
    }
    best < start
}

/// Pass-based boundary FM refinement. Each pass moves every boundary
/// vertex at most once in max-gain order and keeps the best prefix, ranked
/// by overweight and then cut. Stops
/// after a pass without improvement or after `max_passes`.
pub fn fm_refine(g: &Graph, mut p: Partition, epsilon: f64, max_passes: usize) -> Partition {
    for _ in 0..max_passes {
        if !fm_pass(g, &mut p, epsilon) {
            break;
        }
    }
    p
}

/// Multilevel partitioner settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub rating: Rating,
    pub epsilon: f64,
    pub rating_params: RatingParams,
    /// Coarsening stops once a level has at most this many vertices.
    pub coarsest_size: usize,
    pub initial_attempts: usize,
    pub fm_passes: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            rating: Rating::ExCond,
            epsilon: 0.03,
            rating_params: RatingParams::default(),
            coarsest_size: 60,
            initial_attempts: 25,
            fm_passes: 10,
        }
    }
}

/// One coarsening step: the coarse graph and the map from the finer level.
#[derive(Debug, Clone)]
pub struct Level {
    pub graph: Graph,
    pub map: Vec<VertexId>,
}

/// `G₁ … G_l`; `G₀` is the input graph.
#[derive(Debug, Clone, Default)]
pub struct Hierarchy {
    pub levels: Vec<Level>,
}

impl Hierarchy {
    pub fn coarsest<'a>(&'a self, input: &'a Graph) -> &'a Graph {
        self.levels.last().map_or(input, |l| &l.graph)
    }
}

/// Rates, matches and contracts until the graph has at most
/// `coarsest_size` vertices or a step shrinks it by less than 5%. Ratings
/// are recomputed on every level.
pub fn coarsen(g: &Graph, cfg: &Config, seed: u64) -> Result<Hierarchy> {
    let max_vertex_weight =
        ((1.5 * g.total_vertex_weight() as f64 / cfg.coarsest_size.max(1) as f64).ceil() as u64).max(2);
    let mut hierarchy = Hierarchy::default();
    let mut level = 0u64;
    loop {
        let current = hierarchy.coarsest(g);
        if current.n() <= cfg.coarsest_size.max(2) || current.m() == 0 {
            break;
        }
        let level_seed = seed::derive(seed::derive(seed, stream::LEVEL), level);
        let rating = compute_rating(current, cfg.rating, &cfg.rating_params, level_seed)?;
        let matching = greedy_matching(current, &rating, max_vertex_weight);
        if matching.is_empty() {
            break;
        }
        let (coarse, map) = contract(current, &matching);
        let shrink = current.n() as f64 / coarse.n() as f64;
        hierarchy.levels.push(Level { graph: coarse, map });
        level += 1;
        if shrink < 1.05 {
            break;
        }
    }
    Ok(hierarchy)
}

/// Full multilevel bipartition of a connected graph.
pub fn partition_multilevel(g: &Graph, cfg: &Config, seed: u64) -> Result<Partition> {
    if g.n() < 2 {
        return Err(Error::InvalidParameter("bipartitioning needs at least two vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if cfg.epsilon.is_nan() || cfg.epsilon < 0.0 {
        return Err(Error::InvalidParameter(format!("epsilon {} is negative", cfg.epsilon)));
    }
    let hierarchy = coarsen(g, cfg, seed)?;
    let coarsest = hierarchy.coarsest(g);
    let init = initial_bipartition(coarsest, cfg.epsilon, cfg.initial_attempts, seed::derive(seed, stream::INITIAL));
    let mut p = fm_refine(coarsest, init, cfg.epsilon, cfg.fm_passes);

    for i in (0..hierarchy.levels.len()).rev() {
        let finer = if i == 0 { g } else { &hierarchy.levels[i - 1].graph };
        let map = &hierarchy.levels[i].map;
        let blocks = map.iter().map(|&c| p.block(c)).collect();
        p = fm_refine(finer, Partition::new(finer, blocks)?, cfg.epsilon, cfg.fm_passes);
    }

    if !p.is_balanced(cfg.epsilon) {
        return Err(Error::Unbalanced {
            max_block: p.max_block_weight(),
            bound: balance_bound(g.total_vertex_weight(), cfg.epsilon),
        });
    }
    Ok(p)
}
