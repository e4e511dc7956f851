use alloc::string::String;
use core::fmt;

/// Errors produced by graph construction, pattern validation and the
/// label-merge machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A label literal or constructor argument was negative.
    NegativeLabel(String),
    /// A rational literal could not be parsed.
    InvalidRational(String),
    /// An edge with the same ordered endpoint pair already exists.
    DuplicateEdge(String, String),
    /// The named ordered pair is not an edge of the graph.
    NotAnEdge(String, String),
    /// A pattern edge joins a vertex to itself.
    PatternLoop(usize),
    /// A pattern edge list repeats an ordered pair.
    PatternDuplicateEdge(usize, usize),
    /// A pattern vertex lies on no edge; copies of such a pattern have no
    /// well-defined edge-set identity.
    PatternIsolatedVertex(usize),
    /// A pattern must have at least one edge.
    PatternEmpty,
    /// The operation requires an acyclic graph.
    NotADag,
    /// A matrix or name list had an unexpected size.
    DimensionMismatch { expected: usize, found: usize },
    /// An integer-valued argument was required.
    NotAnInteger(String),
    /// Star evaluation point `t` is smaller than the arm count.
    StarPointTooSmall { t: u64, arms: u32 },
    /// The two edges of a merge step lie on a common copy.
    MergeSharesCopy,
    /// A merge step was oriented against the sigma ordering.
    MergeSigmaOrder,
    /// A merge step needs two distinct edges.
    MergeSameEdge,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NegativeLabel(s) => write!(f, "negative label: {s}"),
            Error::InvalidRational(s) => write!(f, "invalid rational literal: {s}"),
            Error::DuplicateEdge(a, b) => write!(f, "duplicate edge {a} -> {b}"),
            Error::NotAnEdge(a, b) => write!(f, "not an edge: {a} -> {b}"),
            Error::PatternLoop(v) => write!(f, "pattern has a loop at vertex {v}"),
            Error::PatternDuplicateEdge(a, b) => {
                write!(f, "pattern repeats edge {a} -> {b}")
            }
            Error::PatternIsolatedVertex(v) => {
                write!(f, "pattern vertex {v} lies on no edge")
            }
            Error::PatternEmpty => write!(f, "pattern has no edges"),
            Error::NotADag => write!(f, "graph has a directed cycle"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotAnInteger(s) => write!(f, "not a nonnegative integer: {s}"),
            Error::StarPointTooSmall { t, arms } => {
                write!(
                    f,
                    "evaluation point t={t} is smaller than the arm count {arms}"
                )
            }
            Error::MergeSharesCopy => write!(f, "merge pair lies on a common copy"),
            Error::MergeSigmaOrder => {
                write!(f, "merge survivor has smaller sigma than the removed edge")
            }
            Error::MergeSameEdge => write!(f, "merge needs two distinct edges"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
