use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("empty input")]
    EmptyInput,
    #[error("loops are unsupported (vertex {0})")]
    LoopUnsupported(usize),
    #[error("graph is not cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: usize, degree: usize },
    #[error("{0} is not an edge of the graph")]
    NotAnEdge(Edge),
    #[error("graph has no cycle")]
    Acyclic,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has {n} vertices, limit is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("frame multigraph: {0}")]
    InvalidFrame(String),
    #[error("attachment vertices not distinct for edge {0}")]
    AttachmentsNotDistinct(Edge),
    #[error("not a matching: {0}")]
    NotAMatching(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("no 2-factor exists")]
    NoTwoFactor,
    #[error("all constrained cycle classes are empty")]
    NoCycleClass,
    #[error("no compatible eulerian trail")]
    NoCompatibleTrail,
    #[error("no pair of disjoint paths realises pairing at block {block}")]
    NoRealisation { block: usize },
    #[error("substitution check `{clause}` failed: {detail}")]
    Validation { clause: &'static str, detail: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
