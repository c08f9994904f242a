//! Exact computation of split reliability for two-terminal graphs.

pub mod cache;
pub mod canon;
pub mod cli;
pub mod constructions;
mod dsu;
pub mod engine;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod io;
pub mod poly;
pub mod report;
pub mod signature;
pub mod sturm;
pub mod verify;

pub use engine::{
    connected_coefficients, spanning_tree_count, split_coefficients, two_tree_count,
    CoefficientVector, RandomSource, SweepOptions,
};
pub use error::{Error, Result};
pub use graph::{EdgeSubset, SimpleGraph, TwoTerminalGraph};
