use std::io;

use thiserror::Error;

use crate::complex::{Face, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Stage of the cycle-solid reconstruction that rejected its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReconstructionStep {
    Dimension,
    CycleCheck,
    VertexFacetPath,
    Distinctness,
    Isomorphism,
}

impl std::fmt::Display for ReconstructionStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ReconstructionStep::Dimension => "dimension",
            ReconstructionStep::CycleCheck => "cycle-check",
            ReconstructionStep::VertexFacetPath => "vertex-facet-path",
            ReconstructionStep::Distinctness => "distinctness",
            ReconstructionStep::Isomorphism => "isomorphism",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("a complex needs at least one facet")]
    EmptyComplex,
    #[error("faces must be non-empty")]
    EmptyFace,
    #[error("vertex {0} repeated inside a face")]
    DuplicateVertex(Vertex),
    #[error("dimension {k} outside the admissible range {min}..={max}")]
    DimensionRange { k: isize, min: isize, max: isize },
    #[error("{0} is not a face of the complex")]
    NotAFace(Face),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("vertex sets overlap (shared vertex {0})")]
    VertexClash(Vertex),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown dual-graph node {0}")]
    UnknownNode(usize),
    #[error("inadmissible handle at {x} -> {image}: {reason}")]
    InadmissibleHandle { x: Vertex, image: Vertex, common_neighbor: Option<Vertex>, reason: String },
    #[error("value out of range: {0}")]
    Range(String),
    #[error("reconstruction failed at step {step}: {detail}")]
    ReconstructionFailure { step: ReconstructionStep, detail: String },
    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}
