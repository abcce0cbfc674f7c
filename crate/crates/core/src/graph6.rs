//! graph6 short form (orders up to 62).
//!
//! Header byte `63 + n`, then the upper triangle of the adjacency matrix in
//! column-major order `x(0,1), x(0,2), x(1,2), x(0,3), …`, packed six bits per
//! byte, most significant bit first, each byte offset by 63. Unused trailing
//! bits of the last byte are zero.

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte {byte} at position {position} is outside the printable range 63..=126")]
    ByteOutOfRange { position: usize, byte: u8 },
    #[error("expected {expected} edge bytes, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("padding bits in the final byte are not zero")]
    NonzeroPadding,
    #[error("order {n} exceeds the graph6 short form limit of {MAX_ORDER}")]
    OrderTooLarge { n: usize },
}

/// A graph together with its graph6 text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph6Record {
    pub text: String,
    pub graph: Graph,
}

impl Graph6Record {
    pub fn parse(text: &str) -> Result<Self, Graph6Error> {
        let graph = parse_graph6(text.as_bytes())?;
        Ok(Graph6Record {
            text: text.to_string(),
            graph,
        })
    }

    pub fn from_graph(graph: Graph) -> Result<Self, Graph6Error> {
        let text = encode_graph6(&graph)?;
        Ok(Graph6Record { text, graph })
    }
}

fn edge_bytes(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    let (&header, body) = text.split_first().ok_or(Graph6Error::Empty)?;
    if !(63..=126).contains(&header) {
        return Err(Graph6Error::ByteOutOfRange {
            position: 0,
            byte: header,
        });
    }
    let n = (header - 63) as usize;
    if n > MAX_ORDER {
        // 126 introduces the long form
        return Err(Graph6Error::OrderTooLarge { n });
    }
    if let Some((i, &b)) = body
        .iter()
        .enumerate()
        .find(|(_, b)| !(63..=126).contains(*b))
    {
        return Err(Graph6Error::ByteOutOfRange {
            position: i + 1,
            byte: b,
        });
    }
    let expected = edge_bytes(n);
    if body.len() != expected {
        return Err(Graph6Error::LengthMismatch {
            expected,
            found: body.len(),
        });
    }

    let total_bits = n * n.saturating_sub(1) / 2;
    let bit = |k: usize| ((body[k / 6] - 63) >> (5 - k % 6)) & 1 == 1;
    if (total_bits..expected * 6).any(bit) {
        return Err(Graph6Error::NonzeroPadding);
    }

    let mut adj = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows_unchecked(adj))
}

pub fn encode_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge { n });
    }
    let mut out = Vec::with_capacity(1 + edge_bytes(n));
    out.push(63 + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
