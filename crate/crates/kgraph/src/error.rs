use std::fmt;

use thiserror::Error;

/// A single violated k-graph constraint reported by validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// Structural problem in the skeleton or square list (bad reference, wrong colors, ...).
    Malformed(String),
    /// A composable pair `g·h` (colors i < j) has no square.
    MissingSquare { g: String, h: String },
    /// The squares do not form a bijection onto the composable (j,i)-pairs.
    NonBijectiveSquares(String),
    /// A square whose two sides have different range or source.
    EndpointMismatch { left: (String, String), right: (String, String) },
    /// The two rewriting routes of a tricolored triple disagree.
    CubeFailure {
        colors: (usize, usize, usize),
        triple: (String, String, String),
        route_a: (String, String, String),
        route_b: (String, String, String),
    },
    /// Strict mode: vertex receives no edge of this color.
    SourceVertex { vertex: String, color: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Malformed(msg) => write!(f, "malformed: {msg}"),
            Diagnostic::MissingSquare { g, h } => write!(f, "missing square for {g}·{h}"),
            Diagnostic::NonBijectiveSquares(msg) => write!(f, "squares not bijective: {msg}"),
            Diagnostic::EndpointMismatch { left, right } => write!(
                f,
                "endpoint mismatch: {}·{} = {}·{}",
                left.0, left.1, right.0, right.1
            ),
            Diagnostic::CubeFailure { colors, triple, route_a, route_b } => write!(
                f,
                "cube failure for colors ({},{},{}) on {}·{}·{}: {}·{}·{} vs {}·{}·{}",
                colors.0,
                colors.1,
                colors.2,
                triple.0,
                triple.1,
                triple.2,
                route_a.0,
                route_a.1,
                route_a.2,
                route_b.0,
                route_b.1,
                route_b.2
            ),
            Diagnostic::SourceVertex { vertex, color } => {
                write!(f, "vertex {vertex} receives no edge of color {color}")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum KgError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid k-graph:\n{}", format_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("paths are not composable")]
    NotComposable,
    #[error("degree out of range")]
    DegreeOutOfRange,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("unknown fixture {0}")]
    UnknownFixture(String),
    #[error("empty window")]
    EmptyWindow,
    #[error("vertex {0} has a single pairing class and cannot be split")]
    IndivisibleVertex(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("vertex {0} is not a sink for any color")]
    NotASink(String),
    #[error("graph has sources; a strict graph is required")]
    NotStrict,
    #[error("monoid homomorphism is not surjective")]
    NotSurjective,
    #[error("matrix does not intertwine the vertex matrices")]
    NotIntertwining,
    #[error("flip family is not valid: {0}")]
    InvalidFlips(String),
    #[error("flip family is not coherent")]
    IncoherentPair,
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n")
}

pub type Result<T> = std::result::Result<T, KgError>;
