//! graph6 and plain edge-list formats.

use crate::error::{Error, Result};

use super::Graph;

/// Encodes in graph6 (no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Decodes a single graph6 line (an optional `>>graph6<<` header is accepted).
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse("graph6 contains a byte outside 63..126".into()));
    }
    let take = |range: std::ops::Range<usize>| -> Result<usize> {
        bytes
            .get(range)
            .ok_or_else(|| Error::Parse("truncated graph6 header".into()))
            .map(|b| b.iter().fold(0usize, |acc, &x| (acc << 6) | (x - 63) as usize))
    };
    let (n, start) = match bytes.first() {
        None => return Err(Error::Parse("empty graph6 string".into())),
        Some(126) if bytes.get(1) == Some(&126) => (take(2..8)?, 8),
        Some(126) => (take(1..4)?, 4),
        Some(&b) => ((b - 63) as usize, 1),
    };
    let body = &bytes[start..];
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {}",
            body.len(),
            bits.div_ceil(6)
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Header `n m`, then one `u v` line per edge with `u < v`.
pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn from_edge_list(s: &str) -> Result<Graph> {
    let mut lines = s
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let parse_pair = |line: &str| -> Result<(usize, usize)> {
        let mut it = line.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
        });
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => Ok((a?, b?)),
            _ => Err(Error::Parse(format!("expected two integers, got {line:?}"))),
        }
    };
    let (n, m) = parse_pair(lines.next().ok_or_else(|| Error::Parse("missing header".into()))?)?;
    let edges = lines.map(parse_pair).collect::<Result<Vec<_>>>()?;
    if edges.len() != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, &edges).map_err(|e| Error::Parse(e.to_string()))
}
