//! Solvers for the k-labelled spanning forest (kLSF) problem.
//!
//! Given an undirected graph whose edges carry labels and a budget `k_bar`,
//! pick at most `k_bar` labels so that the subgraph made of the edges carrying
//! those labels has as few connected components as possible.
//!
//! The crate provides:
//!
//! - [`instance`]: graphs, label sets, objective evaluation and the text format,
//! - [`construction`]: greedy completion and the complementary-space constructor,
//! - [`vns`]: shaking, basic VNS, Co-VNS and the intelligent VNS driver,
//! - [`anneal`]: the Boltzmann-acceptance local search with self-tuning cooling,
//! - [`oracle`]: brute-force exact optimum for small instances,
//! - [`generator`] and [`bench`]: seeded instance generation and the benchmark matrix.

pub mod anneal;
pub mod bench;
pub mod construction;
mod error;
pub mod generator;
pub mod instance;
mod label_set;
pub mod oracle;
mod union_find;
pub mod vns;

pub use error::{Error, InstanceError, ParseError, Result};
pub use instance::{count_components, Instance, LabeledGraph, Solution};
pub use label_set::{complement, hamming_distance, LabelSet};
pub use union_find::UnionFind;
pub use vns::{solve, SearchParams, SearchTrace, Variant};
