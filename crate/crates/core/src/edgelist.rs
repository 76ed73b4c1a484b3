//! Plain-text edge lists.
//!
//! Format: one `u v` pair of 0-indexed node ids per line, whitespace
//! separated; lines starting with `#` are comments. Saved files carry a
//! `# nodes: N` header so isolated trailing nodes survive a round trip;
//! files without the header infer the node count from the largest id.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Network;

/// Writes `net` as an edge list with a `# nodes:` header.
pub fn save_edge_list(net: &Network, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!("# nodes: {}\n", net.node_count()));
    for (u, v) in net.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads an edge list written by [`save_edge_list`] or by hand.
///
/// Errors carry the 1-based line number: malformed pairs, non-integer ids,
/// self-loops, duplicate edges (in either direction) and ids beyond a
/// declared node count are all rejected.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Network> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;

    let parse_err = |line: usize, reason: String| Error::EdgeListParse {
        path: path.to_path_buf(),
        line,
        reason,
    };

    let mut declared_nodes: Option<usize> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen: HashSet<(u32, u32)> = HashSet::new();
    let mut max_id: u32 = 0;
    let mut any_edge = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(rest) = comment.trim().strip_prefix("nodes:") {
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad node count `{}`", rest.trim())))?;
                declared_nodes = Some(n);
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(parse_err(line_no, format!("expected `u v`, got `{line}`"))),
        };
        let u: u32 = a
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad node id `{a}`")))?;
        let v: u32 = b
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad node id `{b}`")))?;
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at node {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(
                line_no,
                format!("duplicate edge ({}, {})", u.min(v), u.max(v)),
            ));
        }
        if let Some(n) = declared_nodes {
            if u as usize >= n || v as usize >= n {
                return Err(parse_err(
                    line_no,
                    format!("node id beyond declared count {n}"),
                ));
            }
        }
        max_id = max_id.max(u).max(v);
        any_edge = true;
        edges.push((u, v));
    }

    let node_count = declared_nodes.unwrap_or(if any_edge { max_id as usize + 1 } else { 0 });
    Network::from_edges(node_count, &edges)
}
