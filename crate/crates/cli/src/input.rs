use std::fs;
use std::io::{self, Read};
use std::path::Path;

use zconn_core::{decode_graph6, encode_graph6, MultiGraph};

use crate::CliError;

/// One input graph with the text it was read from.
#[derive(Debug, Clone)]
pub struct InputGraph {
    pub label: String,
    pub graph: MultiGraph,
}

impl InputGraph {
    pub fn new(graph: MultiGraph) -> Self {
        let label = encode_graph6(&graph).unwrap_or_else(|_| graph.to_string());
        Self { label, graph }
    }
}

/// Read the raw input text: `-` is standard input, an existing path is a
/// file, anything else is taken literally.
pub fn read_source(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io("standard input".into(), e))?;
        return Ok(text);
    }
    if Path::new(source).is_file() {
        return fs::read_to_string(source).map_err(|e| CliError::Io(source.into(), e));
    }
    Ok(source.to_owned())
}

/// Graphs from graph6 lines (optionally `>>graph6<<` prefixed), `n:u-v,...`
/// lines, or a single DOT document.
pub fn parse_graphs(text: &str) -> Result<Vec<InputGraph>, CliError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with("graph") || trimmed.starts_with("strict graph") {
        let graph = MultiGraph::from_dot(text).map_err(|e| CliError::Input(1, e.to_string()))?;
        return Ok(vec![InputGraph::new(graph)]);
    }
    let mut graphs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let graph = if line.contains(':') && !line.starts_with(">>") {
            line.parse::<MultiGraph>()
                .map_err(|e| CliError::Input(i + 1, e.to_string()))?
        } else {
            decode_graph6(line).map_err(|e| CliError::Input(i + 1, e.to_string()))?
        };
        let label = if line.contains(':') {
            line.to_owned()
        } else {
            line.trim_start_matches(">>graph6<<").to_owned()
        };
        graphs.push(InputGraph { label, graph });
    }
    if graphs.is_empty() {
        return Err(CliError::Input(0, "no graphs in input".into()));
    }
    Ok(graphs)
}
