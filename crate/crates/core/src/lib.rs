//! Multilevel graph bipartitioning for complex networks.
//!
//! The coarsening phase is driven by the `ex_cond` edge rating: random
//! breadth-first trees give every edge a contrast value, a minimum spanning
//! tree over the contrast induces `n - 1` fundamental cuts, and the
//! conductance of all of them is computed in a single postorder traversal.
//! Each edge is then rated by the lowest conductance among the fundamental
//! cuts whose cut-set contains it.
//!
//! After refinement, a greedy postprocessing pass trades edge cut for a
//! lower maximum communication volume (MCV).

pub mod bench;
mod error;
pub mod fundcut;
pub mod graph;
pub mod io;
pub mod mcv;
pub mod mst;
pub mod multilevel;
pub mod rating;
pub mod seed;
pub mod tree_sampling;

pub use error::{Error, Result};
pub use graph::{generate_scale_free, EdgeId, EdgeValues, Graph, VertexId, VertexSet};
pub use mst::RootedTree;
pub use multilevel::{Config, Partition};
pub use rating::Rating;
