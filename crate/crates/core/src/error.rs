use thiserror::Error;

use crate::coloring::{Color, TriangleWitness};
use crate::cycles::CycleWitness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing color for edge {{{0}, {1}}}")]
    MissingEdge(usize, usize),

    #[error("edge {{{0}, {1}}} listed more than once")]
    DuplicateEdge(usize, usize),

    #[error("color {color} outside 1..={max}")]
    ColorOutOfRange { color: usize, max: usize },

    #[error("vertex {vertex} outside 0..{order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("coloring is not Gallai: rainbow triangle {0}")]
    RainbowTriangle(TriangleWitness),

    #[error("arity mismatch: base has order {expected}, got {got} parts")]
    ArityMismatch { expected: usize, got: usize },

    #[error("search budget of {0} node expansions exhausted")]
    BudgetExceeded(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A search that a proved lemma says must succeed came back empty.
    /// Almost certainly an implementation bug.
    #[error("lemma refuted: {0}")]
    LemmaRefuted(String),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("color {color} contains a cycle of the target length: {witness}")]
    CycleFound { color: Color, witness: CycleWitness },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
