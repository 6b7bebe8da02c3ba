//! graph6 and JSON interchange.
//!
//! graph6 is written without the optional `>>graph6<<` header; the reader
//! accepts it either way. Bits are the upper triangle taken column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`), six per byte, offset by 63.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!("graph6: invalid byte {b:#x} at offset {i}")));
        }
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Parse("graph6: empty input".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Parse("graph6: truncated order field".into()));
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Parse("graph6: truncated order field".into()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(Error::Parse(format!(
            "graph6: order {n} needs {need} data bytes, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut idx = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = body[idx / 6] - 63;
            if (byte >> (5 - idx % 6)) & 1 == 1 {
                g.add_edge(u, v);
            }
            idx += 1;
        }
    }
    Ok(g)
}

/// Human-readable form: edges with `u < v`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub order: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            order: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        Graph::from_edges(j.order, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph JSON serializes")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Graph::try_from(j)
}

/// Reads either format, choosing by the first non-space character.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_graph6(text)
    }
}
