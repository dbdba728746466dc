use log::warn;

use super::{Graph, Vertex, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Parse an edge list: one `u v` pair per line, `#` comments, and an
/// optional `n=<count>` header that adds vertices `1..=count`.
///
/// Duplicate edges are logged and dropped; self-loops and labels outside
/// `1..=64` are rejected.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut g = Graph::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=").or_else(|| line.strip_prefix("n =")) {
            let n: usize = rest.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad vertex count {:?}", rest.trim()),
            })?;
            if n > MAX_VERTICES {
                return Err(Error::LabelOutOfRange(n));
            }
            for v in 1..=n {
                g.add_vertex(v)?;
            }
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two labels, got {:?}", line),
            });
        }
        let mut ends = [0 as Vertex; 2];
        for (slot, f) in ends.iter_mut().zip(&fields) {
            let v: i64 = f.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad vertex label {f:?}"),
            })?;
            if v < 1 || v > MAX_VERTICES as i64 {
                return Err(Error::LabelOutOfRange(v.max(0) as usize));
            }
            *slot = v as Vertex;
        }
        let [u, v] = ends;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        g.add_vertex(u)?;
        g.add_vertex(v)?;
        if !g.add_edge(u, v)? {
            warn!("line {line_no}: duplicate edge {u} {v} ignored");
        }
    }
    Ok(g)
}

const BIAS: u8 = 63;

/// Decode one graph6 string; vertices become `1..=n`.
pub fn parse_graph6(bytes: &[u8]) -> Result<Graph> {
    let mut data = bytes;
    if let Some(rest) = data.strip_prefix(b">>graph6<<") {
        data = rest;
    }
    while let [rest @ .., last] = data {
        if last.is_ascii_whitespace() {
            data = rest;
        } else {
            break;
        }
    }
    let (&first, rest) = data.split_first().ok_or_else(|| Error::Graph6("empty input".into()))?;
    let (n, payload) = match first {
        63..=125 => ((first - BIAS) as usize, rest),
        126 => {
            if rest.first() == Some(&126) {
                return Err(Error::Graph6("eight-byte size form exceeds 64 vertices".into()));
            }
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated size field".into()));
            }
            let mut n = 0usize;
            for &b in &rest[..3] {
                if !(63..=126).contains(&b) {
                    return Err(Error::Graph6(format!("invalid size byte {b}")));
                }
                n = (n << 6) | (b - BIAS) as usize;
            }
            (n, &rest[3..])
        }
        _ => return Err(Error::Graph6(format!("invalid header byte {first}"))),
    };
    if n > MAX_VERTICES {
        return Err(Error::LabelOutOfRange(n));
    }
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if payload.len() < expected {
        return Err(Error::Graph6(format!(
            "truncated payload: {} of {} bytes",
            payload.len(),
            expected
        )));
    }
    if payload.len() > expected {
        return Err(Error::Graph6(format!(
            "{} trailing bytes after payload",
            payload.len() - expected
        )));
    }
    let mut g = Graph::empty(VertexSet::range(n));
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::Graph6(format!("invalid payload byte {byte}")));
            }
            if (byte - BIAS) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i + 1, j + 1)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encode in graph6, vertices taken in ascending label order.
pub fn encode_graph6(g: &Graph) -> String {
    let labels = g.vertices().to_vec();
    let n = labels.len();
    let mut out = Vec::with_capacity(4 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(labels[i], labels[j]) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}
