//! graph6 encoding (McKay's format) for simple undirected graphs.
//!
//! Header: `n + 63` for `n <= 62`, `126` followed by three 6-bit groups for
//! `n <= 258047`, or `126 126` followed by six groups beyond that. Body: the
//! upper triangle in column order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! zero-padded to a multiple of six bits, six bits per byte offset by 63.

use crate::error::GraphError;
use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_SHORT: usize = 62;
const MAX_MEDIUM: usize = 258_047;
const MAX_LONG: usize = (1 << 36) - 1;

fn err(msg: impl Into<String>) -> GraphError {
    GraphError::Graph6(msg.into())
}

fn sixbits(byte: u8, pos: usize) -> Result<u64, GraphError> {
    if !(OFFSET..=126).contains(&byte) {
        return Err(err(format!(
            "byte {byte} at position {pos} outside [63, 126]"
        )));
    }
    Ok(u64::from(byte - OFFSET))
}

fn parse_order(bytes: &[u8]) -> Result<(usize, usize), GraphError> {
    let first = *bytes.first().ok_or_else(|| err("empty input"))?;
    if first != 126 {
        return Ok((sixbits(first, 0)? as usize, 1));
    }
    let (start, groups) = if bytes.get(1) == Some(&126) {
        (2, 6)
    } else {
        (1, 3)
    };
    if bytes.len() < start + groups {
        return Err(err("truncated order header"));
    }
    let mut n = 0u64;
    for (k, &b) in bytes[start..start + groups].iter().enumerate() {
        n = (n << 6) | sixbits(b, start + k)?;
    }
    Ok((n as usize, start + groups))
}

/// Parses one graph6 line. A leading `>>graph6<<` marker and surrounding
/// whitespace are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let (n, header_len) = parse_order(bytes)?;
    let body = &bytes[header_len..];
    let bits = n.saturating_sub(1) * n / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(err(format!(
            "truncated body: expected {expected} bytes for n = {n}, found {}",
            body.len()
        )));
    }
    if body.len() > expected {
        return Err(err(format!(
            "trailing data: expected {expected} body bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = sixbits(body[k / 6], header_len + k / 6)?;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if let Some(&last) = body.last() {
        let pad = expected * 6 - bits;
        if sixbits(last, header_len + expected - 1)? & ((1 << pad) - 1) != 0 {
            return Err(err("nonzero padding bits"));
        }
    }
    Graph::new(n, edges)
}

/// Encodes `g` as a graph6 line (no trailing newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= MAX_LONG, "order {n} not representable in graph6");
    let mut out: Vec<u8> = Vec::new();
    let push_groups = |out: &mut Vec<u8>, groups: usize| {
        for k in (0..groups).rev() {
            out.push(((n >> (6 * k)) & 0x3f) as u8 + OFFSET);
        }
    };
    if n <= MAX_SHORT {
        out.push(n as u8 + OFFSET);
    } else if n <= MAX_MEDIUM {
        out.push(126);
        push_groups(&mut out, 3);
    } else {
        out.extend_from_slice(&[126, 126]);
        push_groups(&mut out, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
