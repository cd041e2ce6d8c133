//! Text formats.
//!
//! MEL (multigraph edge list):
//!
//! ```text
//! # optional comment lines
//! n m
//! u v        (m lines, 0-based; repeated lines are parallel edges)
//! ```
//!
//! Embedding:
//!
//! ```text
//! order: v0 v1 ... v(n-1)
//! page 0: u-v u-v#1 ...
//! page 1: ...
//! ```
//!
//! Edges are written with the smaller endpoint first. When a vertex pair
//! carries several parallel edges they are numbered `#0, #1, ...` in edge-id
//! order; pairs with a single edge carry no suffix. Each page lists its edges
//! in edge-id order, and pages run from 0 to the highest page used.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::book::{CyclicOrder, Page, PageColoring};
use crate::graph::{EdgeId, GraphError, Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: loop at vertex {vertex}")]
    LoopRejected { line: usize, vertex: Vertex },
    #[error("embedding does not match graph: {0}")]
    Mismatch(String),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, FormatError> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found {tok:?}")))
}

pub fn read_mel(text: &str) -> Result<Multigraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n = parse_usize(toks[0], hline, "vertex count")?;
    let m = parse_usize(toks[1], hline, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    for (lno, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(lno, "edge line must be `u v`"));
        }
        let u = parse_usize(toks[0], lno, "vertex index")?;
        let v = parse_usize(toks[1], lno, "vertex index")?;
        edges.push((u, v));
        edge_lines.push(lno);
    }
    if edges.len() != m {
        return Err(parse_err(
            edge_lines.last().copied().unwrap_or(hline),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Multigraph::new(n, edges).map_err(|e| match e {
        GraphError::LoopRejected { edge, vertex } => FormatError::LoopRejected {
            line: edge_lines[edge],
            vertex,
        },
        GraphError::BadIndex { edge, vertex, n } => parse_err(
            edge_lines[edge],
            format!("vertex {vertex} out of range for {n} vertices"),
        ),
        other => parse_err(hline, other.to_string()),
    })
}

pub fn write_mel(g: &Multigraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// An edge named by its endpoints and parallel-copy index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    pub low: Vertex,
    pub high: Vertex,
    /// `None` when written without a `#k` suffix.
    pub copy: Option<usize>,
}

/// A parsed embedding file, independent of any graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingFile {
    pub order: Vec<Vertex>,
    pub pages: Vec<Vec<EdgeRef>>,
}

/// Per-edge names: `(low, high, copy index, multiplicity)`.
fn edge_names(g: &Multigraph) -> Vec<(Vertex, Vertex, usize, usize)> {
    let mut seen: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    g.edges()
        .iter()
        .map(|&(a, b)| {
            let key = (a.min(b), a.max(b));
            let k = seen.entry(key).or_insert(0);
            let copy = *k;
            *k += 1;
            (key.0, key.1, copy, g.multiplicity(a, b))
        })
        .collect()
}

pub fn embedding_file(g: &Multigraph, order: &CyclicOrder, c: &PageColoring) -> EmbeddingFile {
    let names = edge_names(g);
    let pages = (0..c.page_span())
        .map(|p| {
            c.page_edges(p)
                .into_iter()
                .map(|e| {
                    let (low, high, copy, mult) = names[e];
                    EdgeRef {
                        low,
                        high,
                        copy: (mult > 1).then_some(copy),
                    }
                })
                .collect()
        })
        .collect();
    EmbeddingFile {
        order: order.sequence().to_vec(),
        pages,
    }
}

pub fn write_embedding(g: &Multigraph, order: &CyclicOrder, c: &PageColoring) -> String {
    embedding_file(g, order, c).to_string()
}

impl std::fmt::Display for EmbeddingFile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "order:")?;
        for v in &self.order {
            write!(f, " {v}")?;
        }
        writeln!(f)?;
        for (p, edges) in self.pages.iter().enumerate() {
            write!(f, "page {p}:")?;
            for e in edges {
                write!(f, " {}-{}", e.low, e.high)?;
                if let Some(k) = e.copy {
                    write!(f, "#{k}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn read_embedding(text: &str) -> Result<EmbeddingFile, FormatError> {
    let mut order = None;
    let mut pages: Vec<Vec<EdgeRef>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("order:") {
            if order.is_some() {
                return Err(parse_err(lno, "duplicate order line"));
            }
            let seq = rest
                .split_whitespace()
                .map(|t| parse_usize(t, lno, "vertex index"))
                .collect::<Result<Vec<_>, _>>()?;
            order = Some(seq);
        } else if let Some(rest) = line.strip_prefix("page") {
            if order.is_none() {
                return Err(parse_err(lno, "page line before order line"));
            }
            let (idx, edges) = rest
                .split_once(':')
                .ok_or_else(|| parse_err(lno, "page line must be `page <index>: ...`"))?;
            let idx = parse_usize(idx.trim(), lno, "page index")?;
            if idx != pages.len() {
                return Err(parse_err(lno, format!("expected page {}, found page {idx}", pages.len())));
            }
            let refs = edges
                .split_whitespace()
                .map(|t| parse_edge_ref(t, lno))
                .collect::<Result<Vec<_>, _>>()?;
            pages.push(refs);
        } else {
            return Err(parse_err(lno, format!("unrecognized line {line:?}")));
        }
    }
    let order = order.ok_or_else(|| parse_err(1, "missing `order:` line"))?;
    Ok(EmbeddingFile { order, pages })
}

fn parse_edge_ref(tok: &str, line: usize) -> Result<EdgeRef, FormatError> {
    let (pair, copy) = match tok.split_once('#') {
        Some((p, k)) => (p, Some(parse_usize(k, line, "parallel copy index")?)),
        None => (tok, None),
    };
    let (a, b) = pair
        .split_once('-')
        .ok_or_else(|| parse_err(line, format!("edge must be `u-v`, found {tok:?}")))?;
    let a = parse_usize(a, line, "vertex index")?;
    let b = parse_usize(b, line, "vertex index")?;
    if a == b {
        return Err(FormatError::LoopRejected { line, vertex: a });
    }
    Ok(EdgeRef {
        low: a.min(b),
        high: a.max(b),
        copy,
    })
}

impl EmbeddingFile {
    /// Resolves edge names against `g`. Every listed edge must exist and
    /// appear at most once; unlisted edges stay uncolored.
    pub fn resolve(&self, g: &Multigraph) -> Result<(CyclicOrder, PageColoring), FormatError> {
        if self.order.len() != g.vertex_count() {
            return Err(FormatError::Mismatch(format!(
                "order lists {} vertices, graph has {}",
                self.order.len(),
                g.vertex_count()
            )));
        }
        let order = CyclicOrder::new(self.order.clone()).map_err(|e| FormatError::Mismatch(e.to_string()))?;
        let mut lookup: HashMap<(Vertex, Vertex, usize), EdgeId> = HashMap::new();
        for (e, &(low, high, copy, _)) in edge_names(g).iter().enumerate() {
            lookup.insert((low, high, copy), e);
        }
        let mut pages: Vec<Option<Page>> = vec![None; g.edge_count()];
        for (p, refs) in self.pages.iter().enumerate() {
            for r in refs {
                let copy = r.copy.unwrap_or(0);
                let e = *lookup.get(&(r.low, r.high, copy)).ok_or_else(|| {
                    FormatError::Mismatch(format!("edge {}-{}#{} not in graph", r.low, r.high, copy))
                })?;
                if pages[e].is_some() {
                    return Err(FormatError::Mismatch(format!("edge {}-{}#{} listed twice", r.low, r.high, copy)));
                }
                pages[e] = Some(p);
            }
        }
        Ok((order, PageColoring::partial(pages)))
    }
}
