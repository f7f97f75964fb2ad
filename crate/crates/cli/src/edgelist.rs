//! Plain-text edge lists: one `u v` pair per line, `#` comments.

use std::io::BufRead;
use std::path::Path;

use graphon_core::GrowingGraph;

use crate::error::{CliError, Result};

/// A graph read from an edge list, with ids compacted to `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    pub graph: GrowingGraph,
    /// `original_ids[i]` is the id used in the file for vertex `i`.
    pub original_ids: Vec<u64>,
}

/// Parse an edge list. Pairs are symmetrized, self-loops dropped and
/// duplicates collapsed. Fields may be separated by whitespace or commas.
/// A vertex that only appears in a self-loop is kept, isolated.
pub fn parse_edge_list(reader: impl BufRead, path: &Path) -> Result<EdgeList> {
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| CliError::io(path, e))?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        if fields.len() != 2 {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                line: line_no,
                message: format!("expected two vertex ids, found {} fields", fields.len()),
            });
        }
        let parse = |s: &str| {
            s.parse::<u64>().map_err(|_| CliError::Parse {
                path: path.to_path_buf(),
                line: line_no,
                message: format!("{s:?} is not a nonnegative integer vertex id"),
            })
        };
        pairs.push((parse(fields[0])?, parse(fields[1])?));
    }
    if pairs.is_empty() {
        return Err(CliError::input(path, "edge list contains no edges"));
    }
    let mut ids: Vec<u64> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let local = |id: u64| {
        ids.binary_search(&id)
            .expect("every endpoint was collected")
    };
    let edges: Vec<(usize, usize)> = pairs.iter().map(|&(u, v)| (local(u), local(v))).collect();
    let graph = GrowingGraph::from_edges(ids.len(), edges)
        .map_err(|e| CliError::input(path, e.to_string()))?;
    Ok(EdgeList {
        graph,
        original_ids: ids,
    })
}

/// Read and parse an edge list, returning it with the file's bytes.
pub fn read_edge_list(path: &Path) -> Result<(EdgeList, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    let list = parse_edge_list(bytes.as_slice(), path)?;
    Ok((list, bytes))
}

/// `#`-prefixed header lines followed by one `u v` line per edge, using the
/// graph's vertex ids, `u < v`, ascending.
pub fn format_edge_list(g: &GrowingGraph, header: &[String]) -> String {
    let mut edges: Vec<(u64, u64)> = g.id_edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
