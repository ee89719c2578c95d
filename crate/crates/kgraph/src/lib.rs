//! Finite higher-rank graphs: validation, path arithmetic, moves, graded
//! K-theory invariants, groupoid homology and bridging search.

pub mod bridging;
pub mod cli;
pub mod constructions;
pub mod degree;
pub mod dimension;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod homology;
pub mod matrix;
pub mod moves;
pub mod path;

pub use degree::{Degree, Shift};
pub use error::{Diagnostic, KgError, Result};
pub use graph::{validate_kgraph, EdgeRecord, GraphData, KGraph, Skeleton, Square};
pub use matrix::IntMatrix;
pub use path::Path;
