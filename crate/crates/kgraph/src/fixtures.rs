//! Bundled example graphs.
//!
//! Set `KGRAPH_FIXTURES_DIR` to load `<name>.json` from another directory
//! before falling back to the bundled copies.

use std::path::Path as FsPath;

use crate::error::{KgError, Result};
use crate::format::{parse_graph_data, read_graph_data};
use crate::graph::{GraphData, KGraph};

pub const FIXTURES_DIR_VAR: &str = "KGRAPH_FIXTURES_DIR";

const BUNDLED: &[(&str, &str)] = &[
    ("ex3.5-Lambda", include_str!("../fixtures/ex3.5-Lambda.json")),
    ("ex3.5-LambdaI", include_str!("../fixtures/ex3.5-LambdaI.json")),
    ("ex3.5-LambdaS", include_str!("../fixtures/ex3.5-LambdaS.json")),
    ("sec3-Sigma", include_str!("../fixtures/sec3-Sigma.json")),
    ("sec3-Lambda", include_str!("../fixtures/sec3-Lambda.json")),
    ("sec3-Gamma", include_str!("../fixtures/sec3-Gamma.json")),
    ("ex5.6-Lambda", include_str!("../fixtures/ex5.6-Lambda.json")),
    ("ex5.6-Omega", include_str!("../fixtures/ex5.6-Omega.json")),
    ("ex5.7-Lambda", include_str!("../fixtures/ex5.7-Lambda.json")),
    ("ex5.7-Omega", include_str!("../fixtures/ex5.7-Omega.json")),
    ("ex7.1-Lambda1", include_str!("../fixtures/ex7.1-Lambda1.json")),
    ("ex7.1-Lambda2", include_str!("../fixtures/ex7.1-Lambda2.json")),
    ("ex4.7-n2", include_str!("../fixtures/ex4.7-n2.json")),
    ("ex4.7-n3", include_str!("../fixtures/ex4.7-n3.json")),
    ("ex4.7-n4", include_str!("../fixtures/ex4.7-n4.json")),
    ("ex4.7-n5", include_str!("../fixtures/ex4.7-n5.json")),
    ("ex4.7-n6", include_str!("../fixtures/ex4.7-n6.json")),
];

pub fn fixture_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

/// Unvalidated fixture data.
pub fn fixture_data(name: &str) -> Result<GraphData> {
    if let Some(dir) = std::env::var_os(FIXTURES_DIR_VAR) {
        let path = FsPath::new(&dir).join(format!("{name}.json"));
        if path.is_file() {
            return read_graph_data(&path);
        }
    }
    let (_, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| KgError::UnknownFixture(name.to_string()))?;
    parse_graph_data(text)
}

pub fn fixture(name: &str) -> Result<KGraph> {
    fixture_data(name)?.validate()
}

/// Resolve a command-line graph argument: an existing file (with or without
/// a `.json` suffix), else a fixture named by the final path component.
pub fn resolve_graph_data(arg: &str) -> Result<GraphData> {
    let path = FsPath::new(arg);
    if path.is_file() {
        return read_graph_data(path);
    }
    let with_ext = FsPath::new(&format!("{arg}.json")).to_path_buf();
    if with_ext.is_file() {
        return read_graph_data(&with_ext);
    }
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or(arg);
    let name = name.strip_suffix(".json").unwrap_or(name);
    match fixture_data(name) {
        Err(KgError::UnknownFixture(_)) => Err(KgError::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("no graph file or fixture named {arg}"),
        ))),
        other => other,
    }
}
