//! Construction and verification of negative arrow relations for multicolour
//! hypergraph Ramsey numbers.
//!
//! The crate builds edge colourings in layers ("colouring towers"): a 2-uniform
//! base colouring derived from a sum-free partition of an integer interval, then
//! a sequence of stepping-up rules, each of which colours subsets of a ground
//! set exponentially larger than the previous one. Vertices of every level are
//! bit vectors; a rule colours a subset by inspecting where its elements' binary
//! representations first differ. The companion modules verify the resulting
//! claims (exhaustively where the ground set is small, by sampling otherwise),
//! colour r-subsets of arbitrary hypergraphs, and tabulate the tower-function
//! bounds implied by the constructions.
//!
//! The crate is `no_std` (with `alloc`); all IO and command-line plumbing lives
//! in the companion `ramsey-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod claim;
pub mod colouring;
pub mod hypergraph;
pub mod partition;
pub mod report;
pub mod schur;
pub mod split;
pub mod subset;
pub mod tower;
pub mod verify;
pub mod vertex;

pub use claim::{ArrowClaim, GroundSize};
pub use colouring::{FnColouring, PlantedColouring, RankColouring, Restriction, TableColouring};
pub use hypergraph::Hypergraph;
pub use partition::IntegerPartition;
pub use report::{Subject, VerificationReport, Verdict, VerifyMode, Witness, WorkCounters};
pub use schur::{EdgeColouringBase, SchurPartition};
pub use split::{SplitResult, TypeTag};
pub use subset::{SubsetColouring, VertexColouring};
pub use tower::{ColouringHandle, ColouringTowerSpec, StepRule};
pub use verify::SearchBudget;
pub use vertex::{Colour, Vertex, VertexSet};

use alloc::string::String;
use core::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A value does not fit in the requested bit width.
    ValueOutOfRange { width: u64 },
    /// A bit position at or beyond the vertex width.
    PositionBeyondWidth { position: u64, width: u64 },
    /// Vertices of different widths were mixed in one operation.
    WidthMismatch { left: u64, right: u64 },
    /// A vertex set contained the same label twice.
    DuplicateVertex,
    /// The operation needs a set of at least `need` elements.
    SetTooSmall { need: usize, got: usize },
    /// The operation needs a set of exactly `need` elements.
    SizeMismatch { need: usize, got: usize },
    /// delta is only defined on caterpillars.
    NotACaterpillar,
    /// An arrow claim violated `r + 1 <= s_i <= n`.
    InvalidClaim(String),
    /// Partition parts must be positive and non-increasing.
    InvalidPartition(String),
    /// Histogram of an empty sequence.
    EmptySequence,
    /// Malformed text input (syntax level); carries a line number.
    Parse { line: usize, msg: String },
    /// Well-formed but semantically invalid input data.
    InvalidData { line: usize, msg: String },
    /// The composition formula produced an invalid partition.
    ComposedInvalid(String),
    /// A step rule is not applicable at the current level.
    BadStep(String),
    /// Evaluation refused: a vertex uses bit positions at or past the width cap.
    WidthCapExceeded { cap: u64, position: u64 },
    /// Evaluation refused: the level's vertex width is not representable.
    WidthUnrepresentable,
    /// The stepping-up table is only defined for uniformity >= 3.
    UniformityTooSmall { need: u32, got: u32 },
    /// Argument outside the operation's documented range.
    OutOfRange(String),
    /// A vertex is missing from the supplied vertex colouring.
    UncolouredVertex(usize),
    /// The work budget was exhausted before a definite answer.
    BudgetExhausted,
    /// No colouring witness could be certified within budget.
    NoWitness(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ValueOutOfRange { width } => {
                write!(f, "value does not fit in {width} bits")
            }
            Error::PositionBeyondWidth { position, width } => {
                write!(f, "bit position {position} not below width {width}")
            }
            Error::WidthMismatch { left, right } => {
                write!(f, "vertex width mismatch: {left} vs {right}")
            }
            Error::DuplicateVertex => write!(f, "duplicate vertex in set"),
            Error::SetTooSmall { need, got } => {
                write!(f, "need a set of at least {need} elements, got {got}")
            }
            Error::SizeMismatch { need, got } => {
                write!(f, "need a set of exactly {need} elements, got {got}")
            }
            Error::NotACaterpillar => write!(f, "set is not a caterpillar"),
            Error::InvalidClaim(msg) => write!(f, "invalid arrow claim: {msg}"),
            Error::InvalidPartition(msg) => write!(f, "invalid partition: {msg}"),
            Error::EmptySequence => write!(f, "empty sequence"),
            Error::Parse { line, msg } => write!(f, "parse error on line {line}: {msg}"),
            Error::InvalidData { line, msg } => {
                write!(f, "invalid data on line {line}: {msg}")
            }
            Error::ComposedInvalid(msg) => {
                write!(f, "composition produced an invalid partition: {msg}")
            }
            Error::BadStep(msg) => write!(f, "inapplicable step rule: {msg}"),
            Error::WidthCapExceeded { cap, position } => write!(
                f,
                "evaluation refused: bit position {position} is at or past the width cap {cap}"
            ),
            Error::WidthUnrepresentable => {
                write!(f, "evaluation refused: level width exceeds the width cap")
            }
            Error::UniformityTooSmall { need, got } => {
                write!(f, "uniformity {got} below required {need}")
            }
            Error::OutOfRange(msg) => write!(f, "argument out of range: {msg}"),
            Error::UncolouredVertex(v) => write!(f, "vertex {v} has no colour"),
            Error::BudgetExhausted => write!(f, "work budget exhausted"),
            Error::NoWitness(msg) => write!(f, "no certified witness: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
