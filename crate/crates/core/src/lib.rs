//! Clustered binary associative memory: storing, iterative retrieval with the
//! sum-of-sum and sum-of-max rules, escape heuristics for ambiguous fixed
//! points, and a partite maximum-clique decoder.

pub mod bench;
mod bits;
pub mod clique;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod heuristics;
pub mod network;

pub use error::{GbnnError, Result};
pub use network::{Message, Network, NetworkConfig, Neuron, Probe, Symbol};
