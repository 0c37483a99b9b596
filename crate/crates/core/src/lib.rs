//! Exact analysis of cubic graphs and of the substitution families
//! `S(H, F, e)`: circumference and constrained longest cycles, 3-edge
//! colourings, cyclic edge connectivity, 2-factors and oddness, dominating
//! cycles through matchings, and the shortness and oddness bounds these
//! yield for whole families.

pub mod bounds;
pub mod error;
mod flow;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod longcycle;
pub mod named;
pub mod cycles;
pub mod factors;
pub mod search;
pub mod structure;
pub mod substitution;

pub use error::{Error, Result};
pub use graph::{Cycle, Edge, Graph, MultiGraph, Path};
