//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("arc ({0}, {1}) is not in the graph")]
    ArcNotInGraph(usize, usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("enumeration refused: predicted {predicted} acyclic reorientations exceeds cap {cap}")]
    SizeGuard { predicted: u128, cap: u64 },
    #[error("the acyclic reorientation poset is not a lattice (graph is not vertebrate)")]
    NotALattice,
    #[error("operation requires a skeletal graph (vertebrate and filled)")]
    NotSkeletal,
    #[error("the lattice is not semidistributive (graph is not skeletal)")]
    NotSemidistributive,
    #[error("elements do not form a cover relation")]
    NotACover,
    #[error("element is not join (or meet) irreducible")]
    NotJoinIrreducible,
    #[error("rope diagram contains crossing ropes")]
    CrossingRopes,
    #[error("not an interval: lower bound is not below upper bound")]
    NotAnInterval,
    #[error("rope set is not a lower ideal of the subrope order")]
    InvalidIdeal,
    #[error("subgraph is not pathful in the ambient graph")]
    NotPathful,
    #[error("subgraph is not strongly pathful in the ambient graph")]
    NotStronglyPathful,
    #[error("direction is not generic for summand {summand}")]
    NonGenericDirection { summand: usize },
    #[error("V-representation and H-representation disagree: {0}")]
    RepresentationMismatch(String),
    #[error("point lies on the wall x[{u}] = x[{v}]")]
    OnWall { u: usize, v: usize },
    #[error("degenerate vector configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
