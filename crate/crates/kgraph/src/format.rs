//! The k-graph text format (JSON).
//!
//! ```json
//! {
//!   "rank": 2,
//!   "vertices": ["u"],
//!   "edges": [{"id": "f", "color": 1, "src": "u", "rng": "u"},
//!             {"id": "e", "color": 2, "src": "u", "rng": "u"}],
//!   "squares": [{"left": ["f", "e"], "right": ["e", "f"]}],
//!   "strict_no_sources": true
//! }
//! ```

use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};
use crate::graph::{EdgeRecord, GraphData, KGraph, Skeleton, Square};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub color: usize,
    pub src: String,
    pub rng: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareDoc {
    pub left: [String; 2],
    pub right: [String; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doc: Option<String>,
    pub rank: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub squares: Vec<SquareDoc>,
    #[serde(default = "default_strict")]
    pub strict_no_sources: bool,
}

fn default_strict() -> bool {
    true
}

impl From<GraphDoc> for GraphData {
    fn from(d: GraphDoc) -> Self {
        GraphData {
            skeleton: Skeleton {
                rank: d.rank,
                vertices: d.vertices,
                edges: d
                    .edges
                    .into_iter()
                    .map(|e| EdgeRecord { id: e.id, color: e.color, src: e.src, rng: e.rng })
                    .collect(),
            },
            squares: d
                .squares
                .into_iter()
                .map(|s| {
                    let [g, h] = s.left;
                    let [h2, g2] = s.right;
                    Square { left: (g, h), right: (h2, g2) }
                })
                .collect(),
            strict: d.strict_no_sources,
            doc: d.doc,
        }
    }
}

impl From<&GraphData> for GraphDoc {
    fn from(d: &GraphData) -> Self {
        GraphDoc {
            doc: d.doc.clone(),
            rank: d.skeleton.rank,
            vertices: d.skeleton.vertices.clone(),
            edges: d
                .skeleton
                .edges
                .iter()
                .map(|e| EdgeDoc { id: e.id.clone(), color: e.color, src: e.src.clone(), rng: e.rng.clone() })
                .collect(),
            squares: d
                .squares
                .iter()
                .map(|s| SquareDoc {
                    left: [s.left.0.clone(), s.left.1.clone()],
                    right: [s.right.0.clone(), s.right.1.clone()],
                })
                .collect(),
            strict_no_sources: d.strict,
        }
    }
}

pub fn parse_graph_data(text: &str) -> Result<GraphData> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| KgError::Parse(e.to_string()))?;
    Ok(doc.into())
}

/// Parse and validate.
pub fn parse_graph(text: &str) -> Result<KGraph> {
    parse_graph_data(text)?.validate()
}

pub fn graph_to_json(g: &KGraph) -> String {
    data_to_json(&g.to_data())
}

pub fn data_to_json(d: &GraphData) -> String {
    serde_json::to_string_pretty(&GraphDoc::from(d)).expect("graph documents always serialize")
}

pub fn read_graph_data(path: &FsPath) -> Result<GraphData> {
    parse_graph_data(&std::fs::read_to_string(path)?)
}
