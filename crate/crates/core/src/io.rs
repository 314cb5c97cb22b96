//! METIS/Chaco adjacency files and partition files.
//!
//! Graph files start with a header `n m [fmt [ncon]]` followed by one line
//! per vertex listing its 1-based neighbors. `fmt` is up to three binary
//! digits; the last one enables edge weights, the middle one vertex weights.
//! Vertex sizes (first digit) and multi-constraint weights are not supported.
//! Lines starting with `%` are comments.
//!
//! Partition files hold one 0-based block id per line; line `i` is the block
//! of vertex `i`.

use std::fmt::Write as _;

use crate::{Error, Graph, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Splits into `(1-based line number, line)` pairs, dropping the empty piece
/// after a trailing newline and all comment lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let lines = if text.is_empty() { None } else { Some(body.split('\n')) };
    lines
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim_start().starts_with('%'))
}

struct Format {
    vertex_weights: bool,
    edge_weights: bool,
}

fn parse_format(token: Option<&str>, ncon: Option<&str>, line: usize) -> Result<Format> {
    let Some(fmt) = token else {
        return Ok(Format { vertex_weights: false, edge_weights: false });
    };
    if fmt.is_empty() || fmt.len() > 3 || !fmt.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(parse_err(line, format!("invalid format flag {fmt:?}")));
    }
    let digits: Vec<bool> = fmt.bytes().rev().map(|b| b == b'1').collect();
    if digits.get(2) == Some(&true) {
        return Err(parse_err(line, "vertex sizes are not supported"));
    }
    let vertex_weights = digits.get(1) == Some(&true);
    if let Some(ncon) = ncon {
        match ncon.parse::<u64>() {
            Ok(1) if vertex_weights => {}
            _ => return Err(parse_err(line, format!("unsupported constraint count {ncon:?}"))),
        }
    }
    Ok(Format { vertex_weights, edge_weights: digits[0] })
}

fn parse_edge_weight(token: &str, line: usize) -> Result<f64> {
    match token.parse::<f64>() {
        Ok(w) if w.is_finite() && w > 0.0 => Ok(w),
        _ => Err(parse_err(line, format!("invalid edge weight {token:?}"))),
    }
}

/// Parses a METIS adjacency file.
///
/// Parallel edges are merged by summing their weights. The result is not
/// checked for connectivity.
pub fn parse_metis(input: &[u8]) -> Result<Graph> {
    let text = std::str::from_utf8(input).map_err(|e| parse_err(0, format!("not UTF-8: {e}")))?;
    let mut lines = content_lines(text).skip_while(|(_, l)| l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields.len() > 4 {
        return Err(parse_err(header_line, "header must be `n m [fmt [ncon]]`"));
    }
    let n: usize =
        fields[0].parse().map_err(|_| parse_err(header_line, format!("invalid vertex count {:?}", fields[0])))?;
    let m: usize =
        fields[1].parse().map_err(|_| parse_err(header_line, format!("invalid edge count {:?}", fields[1])))?;
    let format = parse_format(fields.get(2).copied(), fields.get(3).copied(), header_line)?;

    let mut vertex_weights: Vec<u64> = Vec::new();
    // Each undirected edge {u, v}, u < v, must be listed once from each side.
    let mut forward: Vec<(usize, usize, f64)> = Vec::new();
    let mut backward: Vec<(usize, usize, f64)> = Vec::new();
    let mut last_line = header_line;

    for (line_no, line) in lines {
        last_line = line_no;
        let u = vertex_weights.len();
        if u == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_err(line_no, format!("more than {n} vertex lines")));
        }
        let mut tokens = line.split_whitespace();
        let c = if format.vertex_weights {
            let tok = tokens.next().ok_or_else(|| parse_err(line_no, "missing vertex weight"))?;
            match tok.parse::<u64>() {
                Ok(c) if c > 0 => c,
                _ => return Err(parse_err(line_no, format!("invalid vertex weight {tok:?}"))),
            }
        } else {
            1
        };
        vertex_weights.push(c);

        while let Some(tok) = tokens.next() {
            let id: u64 = tok.parse().map_err(|_| parse_err(line_no, format!("invalid vertex id {tok:?}")))?;
            if id == 0 || id > n as u64 {
                return Err(Error::VertexOutOfRange { id, n, line: line_no });
            }
            let t = (id - 1) as usize;
            if t == u {
                return Err(Error::SelfLoop { vertex: u, line: line_no });
            }
            let w = if format.edge_weights {
                let wt =
                    tokens.next().ok_or_else(|| parse_err(line_no, format!("missing weight after neighbor {id}")))?;
                parse_edge_weight(wt, line_no)?
            } else {
                1.0
            };
            if u < t {
                forward.push((u, t, w));
            } else {
                backward.push((t, u, w));
            }
        }
    }
    if vertex_weights.len() < n {
        return Err(parse_err(last_line, format!("expected {n} vertex lines, found {}", vertex_weights.len())));
    }

    let key = |a: &(usize, usize, f64), b: &(usize, usize, f64)| (a.0, a.1).cmp(&(b.0, b.1)).then(a.2.total_cmp(&b.2));
    forward.sort_by(key);
    backward.sort_by(key);
    if forward != backward {
        let mismatch = forward
            .iter()
            .zip(&backward)
            .find(|(f, b)| f != b)
            .map(|(f, b)| if key(f, b).is_lt() { *f } else { *b })
            .or_else(|| forward.get(backward.len()).or(backward.get(forward.len())).copied())
            .expect("unequal lists differ somewhere");
        return Err(Error::Asymmetric(format!(
            "edge {{{}, {}}} with weight {} is not listed by both endpoints",
            mismatch.0 + 1,
            mismatch.1 + 1,
            mismatch.2
        )));
    }
    if forward.len() != m {
        return Err(Error::EdgeCountMismatch { declared: m, found: forward.len() });
    }
    Graph::from_edges(vertex_weights, forward)
}

/// Serializes `g` in METIS format. Weight columns are emitted only when some
/// weight differs from 1.
pub fn write_metis(g: &Graph) -> String {
    let edge_weights = g.edge_weights().iter().any(|&w| w != 1.0);
    let vertex_weights = g.vertex_weights().iter().any(|&c| c != 1);
    let mut out = String::new();
    let _ = write!(out, "{} {}", g.n(), g.m());
    match (vertex_weights, edge_weights) {
        (false, false) => {}
        (false, true) => out.push_str(" 1"),
        (true, false) => out.push_str(" 10"),
        (true, true) => out.push_str(" 11"),
    }
    out.push('\n');
    for v in 0..g.n() {
        let mut first = true;
        let mut sep = |out: &mut String| {
            if !first {
                out.push(' ');
            }
            first = false;
        };
        if vertex_weights {
            sep(&mut out);
            let _ = write!(out, "{}", g.vertex_weight(v));
        }
        for (t, e) in g.neighbors(v) {
            sep(&mut out);
            let _ = write!(out, "{}", t + 1);
            if edge_weights {
                let _ = write!(out, " {}", g.edge_weight(e));
            }
        }
        out.push('\n');
    }
    out
}

/// One block id per line.
pub fn write_partition(blocks: &[u8]) -> String {
    let mut out = String::with_capacity(blocks.len() * 2);
    for &b in blocks {
        let _ = writeln!(out, "{b}");
    }
    out
}

/// Parses a partition file for a graph with `n` vertices. Block ids must be
/// 0 or 1. Blank lines and `%` comments are ignored.
pub fn parse_partition(input: &[u8], n: usize) -> Result<Vec<u8>> {
    let text = std::str::from_utf8(input).map_err(|e| parse_err(0, format!("not UTF-8: {e}")))?;
    let mut blocks = Vec::new();
    for (line_no, line) in content_lines(text) {
        let tok = line.trim();
        if tok.is_empty() {
            continue;
        }
        match tok.parse::<u8>() {
            Ok(b @ (0 | 1)) => blocks.push(b),
            _ => return Err(parse_err(line_no, format!("invalid block id {tok:?}"))),
        }
        if blocks.len() > n {
            return Err(parse_err(line_no, format!("more than {n} entries")));
        }
    }
    if blocks.len() != n {
        return Err(Error::InvalidPartition(format!("expected {n} entries, found {}", blocks.len())));
    }
    Ok(blocks)
}
