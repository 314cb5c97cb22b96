//! Edge cut, maximum communication volume (MCV) and the greedy MCV
//! postprocessing.
//!
//! For a bipartition, the communication volume `C_p` of block `p` is the
//! number of its boundary vertices. A round visits the boundary vertices in
//! random order and moves a vertex to the other block whenever that does not
//! increase `max(C_0, C_1)` and keeps the balance constraint. Deciding a move
//! takes `O(deg(v))`:
//!
//! * neighbors in the target block with external degree 1 become internal,
//! * neighbors in the source block with external degree 0 become boundary,
//! * the moved vertex leaves the source block's count (if it was boundary)
//!   and joins the target's count if it keeps a neighbor in the source.

use rand::seq::SliceRandom;

use crate::multilevel::{balance_bound, Partition};
use crate::seed::{self, stream};
use crate::{Error, Graph, Result, VertexId};

/// Total weight of edges between the blocks.
pub fn edge_cut(g: &Graph, p: &Partition) -> f64 {
    g.edges().iter().zip(g.edge_weights()).filter(|(&(a, b), _)| p.block(a) != p.block(b)).map(|(_, &w)| w).sum()
}

/// `[C_0, C_1]` from scratch.
pub fn comm_volumes(g: &Graph, p: &Partition) -> [usize; 2] {
    let mut c = [0usize; 2];
    for v in 0..g.n() {
        let b = p.block(v);
        if g.neighbor_ids(v).iter().any(|&t| p.block(t) != b) {
            c[b as usize] += 1;
        }
    }
    c
}

pub fn mcv(g: &Graph, p: &Partition) -> usize {
    let [c0, c1] = comm_volumes(g, p);
    c0.max(c1)
}

/// Incremental state of the MCV postprocessing.
#[derive(Debug, Clone)]
pub struct McvRefiner<'g> {
    g: &'g Graph,
    p: Partition,
    volumes: [usize; 2],
    bound: f64,
    /// Adjacency entries read by move decisions and updates.
    pub touches: usize,
}

impl<'g> McvRefiner<'g> {
    /// Fails if `p` violates the balance constraint for `epsilon`.
    pub fn new(g: &'g Graph, p: Partition, epsilon: f64) -> Result<Self> {
        if p.n() != g.n() {
            return Err(Error::InvalidPartition(format!("partition has {} vertices, graph has {}", p.n(), g.n())));
        }
        let bound = balance_bound(g.total_vertex_weight(), epsilon);
        if p.max_block_weight() as f64 > bound {
            return Err(Error::Unbalanced { max_block: p.max_block_weight(), bound });
        }
        let volumes = comm_volumes(g, &p);
        Ok(McvRefiner { g, p, volumes, bound, touches: 0 })
    }

    pub fn volumes(&self) -> [usize; 2] {
        self.volumes
    }

    pub fn mcv(&self) -> usize {
        self.volumes[0].max(self.volumes[1])
    }

    pub fn partition(&self) -> &Partition {
        &self.p
    }

    pub fn into_partition(self) -> Partition {
        self.p
    }

    /// Communication volumes after moving `v`, without moving it.
    pub fn volumes_after_move(&mut self, v: VertexId) -> [usize; 2] {
        let from = self.p.block(v) as usize;
        let to = 1 - from;
        let mut c = self.volumes;
        let mut stay = 0;
        for &t in self.g.neighbor_ids(v) {
            self.touches += 1;
            if self.p.block(t) as usize == to {
                if self.p.external_degree(t) == 1 {
                    c[to] -= 1;
                }
            } else {
                stay += 1;
                if self.p.external_degree(t) == 0 {
                    c[from] += 1;
                }
            }
        }
        if self.p.is_boundary(v) {
            c[from] -= 1;
        }
        if stay > 0 {
            c[to] += 1;
        }
        c
    }

    /// Moves `v` if the result is balanced and the MCV does not increase.
    pub fn try_move(&mut self, v: VertexId) -> bool {
        let to = 1 - self.p.block(v) as usize;
        if (self.p.block_weights()[to] + self.g.vertex_weight(v)) as f64 > self.bound {
            return false;
        }
        let after = self.volumes_after_move(v);
        if after[0].max(after[1]) > self.mcv() {
            return false;
        }
        self.touches += self.g.degree(v);
        self.p.move_vertex(self.g, v);
        self.volumes = after;
        true
    }

    /// One round over the boundary vertices present at its start, in random
    /// order. Returns the number of accepted moves.
    pub fn round(&mut self, rng: &mut seed::Rng) -> usize {
        self.round_with(rng, |_| {})
    }

    /// Like [`round`](Self::round), calling `after_move` after every
    /// accepted move.
    pub fn round_with(&mut self, rng: &mut seed::Rng, mut after_move: impl FnMut(&Self)) -> usize {
        let mut boundary: Vec<VertexId> = (0..self.g.n()).filter(|&v| self.p.is_boundary(v)).collect();
        boundary.shuffle(rng);
        let mut accepted = 0;
        for v in boundary {
            if self.p.is_boundary(v) && self.try_move(v) {
                accepted += 1;
                after_move(self);
            }
        }
        accepted
    }
}

/// Greedy MCV postprocessing for `rounds` rounds. The input must be
/// balanced; the output is balanced and its MCV is not larger.
pub fn mcv_postprocess(g: &Graph, p: Partition, rounds: usize, epsilon: f64, seed: u64) -> Result<Partition> {
    let mut refiner = McvRefiner::new(g, p, epsilon)?;
    let mut rng = seed::rng(seed::derive(seed, stream::MCV));
    for _ in 0..rounds {
        if refiner.round(&mut rng) == 0 {
            break;
        }
    }
    Ok(refiner.into_partition())
}
