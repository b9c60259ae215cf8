//! graph6 encoding of simple graphs.
//!
//! Only the small-order header (n <= 62, one byte) and the 4-byte header
//! (n <= 258047) are supported; bits follow the upper triangle column by
//! column, six per byte, zero-padded.

use thiserror::Error;

use crate::graph::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("graph6 input is empty")]
    Empty,
    #[error("byte {byte:#04x} at position {position} is outside the graph6 range")]
    BadByte { position: usize, byte: u8 },
    #[error("graph6 body has {found} bytes, expected {expected}")]
    Length { found: usize, expected: usize },
    #[error("graph6 padding bits are not zero")]
    Padding,
    #[error("unsupported graph6 header")]
    Header,
    #[error("graph6 can only encode simple graphs")]
    NotSimple,
}

pub fn decode_graph6(text: &str) -> Result<MultiGraph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let mut values = Vec::with_capacity(bytes.len());
    for (position, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { position, byte });
        }
        values.push(byte - 63);
    }
    let (order, body) = if values[0] != 63 {
        (values[0] as usize, &values[1..])
    } else {
        if values.len() < 4 || values[1] == 63 {
            return Err(Graph6Error::Header);
        }
        let n = (values[1] as usize) << 12 | (values[2] as usize) << 6 | values[3] as usize;
        (n, &values[4..])
    };
    let bits = order * order.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::Length {
            found: body.len(),
            expected,
        });
    }
    let bit = |k: usize| body[k / 6] >> (5 - k % 6) & 1 == 1;
    for k in bits..expected * 6 {
        if bit(k) {
            return Err(Graph6Error::Padding);
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..order {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok(MultiGraph::new(order, &edges).expect("graph6 edges are in range"))
}

pub fn encode_graph6(graph: &MultiGraph) -> Result<String, Graph6Error> {
    if !graph.is_simple() {
        return Err(Graph6Error::NotSimple);
    }
    let n = graph.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.extend([126, (n >> 12) as u8 + 63, (n >> 6 & 63) as u8 + 63, (n & 63) as u8 + 63]);
    } else {
        return Err(Graph6Error::Header);
    }
    let mut adjacent = vec![false; n * n];
    for &(u, v) in graph.edges() {
        adjacent[u * n + v] = true;
        adjacent[v * n + u] = true;
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            chunk = chunk << 1 | adjacent[u * n + v] as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
