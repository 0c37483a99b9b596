//! graph6 and sparse6 text encodings, following the format notes shipped
//! with nauty. Records are single lines without the trailing newline; files
//! hold one record per line and may start with a `>>graph6<<` or
//! `>>sparse6<<` header.

use crate::error::{Error, Result};
use crate::graph::{Graph, MultiGraph, MAX_VERTICES};

const BIAS: u8 = 63;
const GRAPH6_HEADER: &str = ">>graph6<<";
const SPARSE6_HEADER: &str = ">>sparse6<<";

fn parse_err(offset: usize, msg: impl Into<String>) -> Error {
    Error::Parse { offset, msg: msg.into() }
}

fn check_bytes(bytes: &[u8], from: usize) -> Result<()> {
    match bytes[from..].iter().position(|b| !(63..=126).contains(b)) {
        None => Ok(()),
        Some(i) => Err(parse_err(from + i, format!("byte 0x{:02x} outside 63..=126", bytes[from + i]))),
    }
}

/// Decodes N(n); returns (n, bytes consumed).
fn decode_size(bytes: &[u8], at: usize) -> Result<(usize, usize)> {
    let get = |i: usize| -> Result<usize> {
        bytes
            .get(at + i)
            .map(|&b| (b - BIAS) as usize)
            .ok_or_else(|| parse_err(at + i, "truncated vertex count"))
    };
    match bytes.get(at) {
        None => Err(parse_err(at, "missing vertex count")),
        Some(&126) => {
            if bytes.get(at + 1) == Some(&126) {
                let mut n = 0usize;
                for i in 2..8 {
                    n = (n << 6) | get(i)?;
                }
                Ok((n, 8))
            } else {
                let mut n = 0usize;
                for i in 1..4 {
                    n = (n << 6) | get(i)?;
                }
                Ok((n, 4))
            }
        }
        Some(&b) => Ok(((b - BIAS) as usize, 1)),
    }
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    }
}

fn strip_header<'a>(text: &'a str, header: &str) -> (&'a str, usize) {
    match text.strip_prefix(header) {
        Some(rest) => (rest, header.len()),
        None => (text, 0),
    }
}

/// Parses one graph6 record.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let (body, skipped) = strip_header(text, GRAPH6_HEADER);
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(Error::EmptyInput);
    }
    let wrap = |e: Error| match e {
        Error::Parse { offset, msg } => Error::Parse { offset: offset + skipped, msg },
        other => other,
    };
    check_bytes(bytes, 0).map_err(wrap)?;
    let (n, used) = decode_size(bytes, 0).map_err(wrap)?;
    if n > MAX_VERTICES {
        return Err(Error::TooLarge { n, max: MAX_VERTICES });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    let data = &bytes[used..];
    if data.len() < need {
        return Err(wrap(parse_err(bytes.len(), format!("expected {need} adjacency bytes, found {}", data.len()))));
    }
    if data.len() > need {
        return Err(wrap(parse_err(used + need, "trailing garbage after adjacency data")));
    }
    let bit = |k: usize| (data[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    for pad in pairs..need * 6 {
        if bit(pad) {
            return Err(wrap(parse_err(used + pad / 6, "nonzero padding bits")));
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn serialize_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn bits_for(n: usize) -> usize {
    let mut k = 0;
    let mut x = n.saturating_sub(1);
    while x > 0 {
        k += 1;
        x >>= 1;
    }
    k
}

/// Parses one sparse6 record (leading `:`). Parallel edges are preserved in
/// decoding order; loops are rejected.
pub fn parse_sparse6(text: &str) -> Result<MultiGraph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let (body, skipped) = strip_header(text, SPARSE6_HEADER);
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(Error::EmptyInput);
    }
    let wrap = |e: Error| match e {
        Error::Parse { offset, msg } => Error::Parse { offset: offset + skipped, msg },
        other => other,
    };
    if bytes[0] != b':' {
        return Err(wrap(parse_err(0, "sparse6 record must start with ':'")));
    }
    check_bytes(bytes, 1).map_err(wrap)?;
    let (n, used) = decode_size(bytes, 1).map_err(wrap)?;
    if n > MAX_VERTICES {
        return Err(Error::TooLarge { n, max: MAX_VERTICES });
    }
    let k = bits_for(n);
    let data = &bytes[1 + used..];
    let total = data.len() * 6;
    let bit = |p: usize| (data[p / 6] - BIAS) >> (5 - p % 6) & 1 == 1;
    let mut pos = 0;
    let mut v = 0usize;
    let mut edges = Vec::new();
    while pos + 1 + k <= total {
        let b = bit(pos);
        pos += 1;
        let mut x = 0usize;
        for _ in 0..k {
            x = (x << 1) | bit(pos) as usize;
            pos += 1;
        }
        if b {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            if x == v {
                let offset = 1 + used + (pos - 1) / 6 + skipped;
                return Err(Error::Parse { offset, msg: format!("loop at vertex {v} unsupported") });
            }
            edges.push((x, v));
        }
    }
    MultiGraph::new(n, edges)
}

pub fn serialize_sparse6(g: &MultiGraph) -> String {
    let n = g.n();
    let k = bits_for(n);
    let mut out = vec![b':'];
    encode_size(n, &mut out);
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.1, e.0)).collect();
    edges.sort_unstable();

    let mut bits: Vec<bool> = Vec::new();
    let push = |bits: &mut Vec<bool>, x: usize, width: usize| {
        for s in (0..width).rev() {
            bits.push((x >> s) & 1 == 1);
        }
    };
    let mut last = 0usize;
    for &(j, i) in &edges {
        if j == last {
            bits.push(false);
            push(&mut bits, i, k);
        } else {
            bits.push(true);
            if j > last + 1 {
                push(&mut bits, j, k);
                bits.push(false);
            }
            push(&mut bits, i, k);
            last = j;
        }
    }
    let rem = bits.len() % 6;
    if rem != 0 {
        let free = 6 - rem;
        if k < 6 && free > k && last + 2 == n && n == 1 << k {
            bits.push(false);
        }
        while !bits.len().is_multiple_of(6) {
            bits.push(true);
        }
    }
    for chunk in bits.chunks(6) {
        let v = chunk.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
        out.push(v + BIAS);
    }
    String::from_utf8(out).expect("sparse6 output is ASCII")
}

/// A record from a multi-record file, tagged with its 1-based line number.
pub struct Record<T> {
    pub line: usize,
    pub text: String,
    pub value: T,
}

fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Parses a newline-delimited graph6 file. Errors carry the line number and
/// the byte offset from the start of the file.
pub fn parse_graph6_file(text: &str) -> std::result::Result<Vec<Record<Graph>>, (usize, Error)> {
    let mut out = Vec::new();
    let mut base = 0usize;
    let mut offsets = Vec::new();
    for line in text.split_inclusive('\n') {
        offsets.push(base);
        base += line.len();
    }
    for (line, rec) in records(text) {
        let g = parse_graph6(rec).map_err(|e| {
            let e = match e {
                Error::Parse { offset, msg } => Error::Parse { offset: offsets[line - 1] + offset, msg },
                other => other,
            };
            (line, e)
        })?;
        out.push(Record { line, text: rec.to_string(), value: g });
    }
    Ok(out)
}

pub fn parse_sparse6_file(text: &str) -> std::result::Result<Vec<Record<MultiGraph>>, (usize, Error)> {
    records(text)
        .map(|(line, rec)| {
            parse_sparse6(rec)
                .map(|g| Record { line, text: rec.to_string(), value: g })
                .map_err(|e| (line, e))
        })
        .collect()
}

/// Parses a frame file that may hold either encoding; graph6 input is read as
/// a simple multigraph.
pub fn parse_any_multigraph(text: &str) -> Result<MultiGraph> {
    let rec = records(text).next().map(|(_, r)| r).ok_or(Error::EmptyInput)?;
    let body = rec.strip_prefix(SPARSE6_HEADER).unwrap_or(rec);
    if body.starts_with(':') {
        parse_sparse6(body)
    } else {
        parse_graph6(rec).map(|g| MultiGraph::from_graph(&g))
    }
}
