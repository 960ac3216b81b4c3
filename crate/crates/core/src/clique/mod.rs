//! Maximum-clique machinery.
//!
//! * [`reduce_graph`] turns a sum-of-max fixed point into the small partite
//!   graph of erased clusters that still hold several active neurons.
//! * [`find_clique_partite`] / [`find_all_cliques_partite`] search that graph
//!   one cluster per level, with configurable candidate and cluster ordering.
//! * [`find_max_clique_cp`] is the classic general-graph branch and bound.
//! * [`brute_force_partite`] enumerates every tuple and serves as the oracle.

mod brute;
mod general;
mod graph;
mod partite;
mod reduce;

use std::time::Duration;

pub use brute::{brute_force_partite, DEFAULT_BRUTE_FORCE_CAP};
pub use general::find_max_clique_cp;
pub use graph::Graph;
pub use partite::{
    clique_union_partite, find_all_cliques_partite, find_clique_partite, find_clique_unreduced,
    Order, SortOrder,
};
pub use reduce::{reduce_graph, ReducedGraph};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CliqueSearchStats {
    /// Entries into the recursive search function.
    pub recursive_calls: u64,
    pub wall_time: Duration,
}
