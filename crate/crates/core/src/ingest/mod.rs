//! Reading corpus exports into dependency graphs.
//!
//! Two table formats are understood, chosen by file extension:
//!
//! * TSV (`nodes.tsv`, `edges.tsv`) with headers `id\tkind\tname\tparent`
//!   and `src\tdst\tkind`;
//! * JSON lines (`.jsonl`, `.ndjson`), one object per row with the same keys.
//!
//! Line endings may be LF or CRLF and trailing spaces are ignored. Strict
//! parsing rejects unknown kinds; lenient parsing maps unknown entity kinds to
//! `other` and skips edges of unknown kind.

mod header;

use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    DepEdge, DependencyGraph, EdgeKind, Entity, EntityKind, GraphBuilder, GraphError, SealMode,
};

pub use header::{parse_theory_header, TheoryHeader};

pub const NODES_HEADER: &str = "id\tkind\tname\tparent";
pub const EDGES_HEADER: &str = "src\tdst\tkind";

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: expected header `{expected}`")]
    BadHeader { line: usize, expected: &'static str },
    #[error("line {line}: {reason}")]
    BadRow { line: usize, reason: String },
    #[error("line {line}: unknown edge kind `{kind}`")]
    UnknownEdgeKind { line: usize, kind: String },
    #[error("parse error at byte {position}: expected {expected}")]
    ParseError { position: usize, expected: String },
    #[error("theory header has no `begin`")]
    MissingBegin,
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Read(#[from] io::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl PartialEq for IngestError {
    fn eq(&self, other: &Self) -> bool {
        use IngestError::*;
        match (self, other) {
            (BadHeader { line: a, .. }, BadHeader { line: b, .. }) => a == b,
            (BadRow { line: a, reason: r }, BadRow { line: b, reason: s }) => a == b && r == s,
            (UnknownEdgeKind { line: a, kind: k }, UnknownEdgeKind { line: b, kind: l }) => {
                a == b && k == l
            }
            (
                ParseError {
                    position: a,
                    expected: x,
                },
                ParseError {
                    position: b,
                    expected: y,
                },
            ) => a == b && x == y,
            (MissingBegin, MissingBegin) => true,
            (Graph(a), Graph(b)) => a == b,
            _ => false,
        }
    }
}

/// Table encoding of an input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Tsv,
    JsonLines,
}

impl TableFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl" | "ndjson") => TableFormat::JsonLines,
            _ => TableFormat::Tsv,
        }
    }
}

#[derive(Debug, Deserialize)]
struct NodeRecord {
    id: String,
    kind: String,
    #[serde(default)]
    name: String,
    #[serde(default)]
    parent: Option<String>,
}

#[derive(Debug, Deserialize)]
struct EdgeRecord {
    src: String,
    dst: String,
    kind: String,
}

/// Reads lines, strips line terminators and trailing spaces, skips blank lines.
struct Lines<R> {
    reader: R,
    buf: String,
    line_no: usize,
}

impl<R: BufRead> Lines<R> {
    fn new(reader: R) -> Self {
        Lines {
            reader,
            buf: String::new(),
            line_no: 0,
        }
    }

    fn next_line(&mut self) -> Result<Option<(usize, &str)>, IngestError> {
        loop {
            self.buf.clear();
            if self.reader.read_line(&mut self.buf)? == 0 {
                return Ok(None);
            }
            self.line_no += 1;
            let trimmed = self.buf.trim_end_matches(['\n', '\r', ' ']);
            if !trimmed.is_empty() {
                let len = trimmed.len();
                return Ok(Some((self.line_no, &self.buf[..len])));
            }
        }
    }
}

fn entity_kind(s: &str, lenient: bool, line: usize) -> Result<EntityKind, IngestError> {
    match s.parse::<EntityKind>() {
        Ok(k) => Ok(k),
        Err(_) if lenient => Ok(EntityKind::Other),
        Err(_) => Err(IngestError::BadRow {
            line,
            reason: format!("unknown entity kind `{s}`"),
        }),
    }
}

fn make_entity(
    id: &str,
    kind: &str,
    name: &str,
    parent: Option<&str>,
    lenient: bool,
    line: usize,
) -> Result<Entity, IngestError> {
    if id.is_empty() {
        return Err(IngestError::BadRow {
            line,
            reason: "empty id".into(),
        });
    }
    Ok(Entity {
        id: id.to_owned(),
        kind: entity_kind(kind, lenient, line)?,
        name: name.to_owned(),
        parent: parent.filter(|p| !p.is_empty()).map(str::to_owned),
    })
}

/// `Ok(None)` for rows skipped in lenient mode.
fn make_edge(
    src: &str,
    dst: &str,
    kind: &str,
    lenient: bool,
    line: usize,
) -> Result<Option<DepEdge>, IngestError> {
    if src.is_empty() || dst.is_empty() {
        return Err(IngestError::BadRow {
            line,
            reason: "empty endpoint".into(),
        });
    }
    match kind.parse::<EdgeKind>() {
        Ok(kind) => Ok(Some(DepEdge::new(src, dst, kind))),
        Err(_) if lenient => Ok(None),
        Err(_) => Err(IngestError::UnknownEdgeKind {
            line,
            kind: kind.to_owned(),
        }),
    }
}

fn json_row<T: for<'de> Deserialize<'de>>(text: &str, line: usize) -> Result<T, IngestError> {
    serde_json::from_str(text).map_err(|e| IngestError::BadRow {
        line,
        reason: e.to_string(),
    })
}

fn expect_header<R: BufRead>(
    lines: &mut Lines<R>,
    expected: &'static str,
) -> Result<(), IngestError> {
    match lines.next_line()? {
        Some((_, text)) if text == expected => Ok(()),
        Some((line, _)) => Err(IngestError::BadHeader { line, expected }),
        None => Err(IngestError::BadHeader { line: 1, expected }),
    }
}

fn for_each_node<R: BufRead>(
    reader: R,
    format: TableFormat,
    lenient: bool,
    mut f: impl FnMut(Entity) -> Result<(), IngestError>,
) -> Result<(), IngestError> {
    let mut lines = Lines::new(reader);
    if format == TableFormat::Tsv {
        expect_header(&mut lines, NODES_HEADER)?;
    }
    while let Some((line, text)) = lines.next_line()? {
        let entity = match format {
            TableFormat::Tsv => {
                let cols: Vec<&str> = text.split('\t').collect();
                if cols.len() != 4 {
                    return Err(IngestError::BadRow {
                        line,
                        reason: format!("expected 4 columns, found {}", cols.len()),
                    });
                }
                make_entity(cols[0], cols[1], cols[2], Some(cols[3]), lenient, line)?
            }
            TableFormat::JsonLines => {
                let r: NodeRecord = json_row(text, line)?;
                make_entity(&r.id, &r.kind, &r.name, r.parent.as_deref(), lenient, line)?
            }
        };
        f(entity)?;
    }
    Ok(())
}

/// Calls `f` for every edge row; returns the number of rows skipped.
fn for_each_edge<R: BufRead>(
    reader: R,
    format: TableFormat,
    lenient: bool,
    mut f: impl FnMut(DepEdge) -> Result<(), IngestError>,
) -> Result<usize, IngestError> {
    let mut lines = Lines::new(reader);
    if format == TableFormat::Tsv {
        expect_header(&mut lines, EDGES_HEADER)?;
    }
    let mut skipped = 0;
    while let Some((line, text)) = lines.next_line()? {
        let edge = match format {
            TableFormat::Tsv => {
                let cols: Vec<&str> = text.split('\t').collect();
                if cols.len() != 3 {
                    return Err(IngestError::BadRow {
                        line,
                        reason: format!("expected 3 columns, found {}", cols.len()),
                    });
                }
                make_edge(cols[0], cols[1], cols[2], lenient, line)?
            }
            TableFormat::JsonLines => {
                let r: EdgeRecord = json_row(text, line)?;
                make_edge(&r.src, &r.dst, &r.kind, lenient, line)?
            }
        };
        match edge {
            Some(e) => f(e)?,
            None => skipped += 1,
        }
    }
    Ok(skipped)
}

/// One entity per data row of a `nodes.tsv` stream.
pub fn parse_nodes<R: BufRead>(reader: R, lenient: bool) -> Result<Vec<Entity>, IngestError> {
    parse_nodes_as(reader, TableFormat::Tsv, lenient)
}

pub fn parse_nodes_as<R: BufRead>(
    reader: R,
    format: TableFormat,
    lenient: bool,
) -> Result<Vec<Entity>, IngestError> {
    let mut out = Vec::new();
    for_each_node(reader, format, lenient, |e| {
        out.push(e);
        Ok(())
    })?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedEdges {
    pub edges: Vec<DepEdge>,
    /// Rows of unknown kind dropped in lenient mode.
    pub skipped: usize,
}

/// One edge per data row of an `edges.tsv` stream. Self-loops are accepted
/// here and rejected when the graph is built.
pub fn parse_edges<R: BufRead>(reader: R, lenient: bool) -> Result<ParsedEdges, IngestError> {
    parse_edges_as(reader, TableFormat::Tsv, lenient)
}

pub fn parse_edges_as<R: BufRead>(
    reader: R,
    format: TableFormat,
    lenient: bool,
) -> Result<ParsedEdges, IngestError> {
    let mut edges = Vec::new();
    let skipped = for_each_edge(reader, format, lenient, |e| {
        edges.push(e);
        Ok(())
    })?;
    Ok(ParsedEdges { edges, skipped })
}

/// What a build discarded or could not place.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub nodes: usize,
    pub edges: usize,
    /// Edge rows of unknown kind (lenient parsing).
    pub skipped_rows: usize,
    /// Edges whose endpoints are not entities (lenient build).
    pub dropped_edges: usize,
    /// Parents that are not entities (lenient build).
    pub cleared_parents: usize,
}

impl IngestReport {
    pub fn warnings(&self) -> usize {
        self.skipped_rows + self.dropped_edges + self.cleared_parents
    }
}

fn finish(
    builder: GraphBuilder,
    lenient: bool,
    skipped_rows: usize,
) -> Result<(DependencyGraph, IngestReport), IngestError> {
    let mode = if lenient {
        SealMode::Lenient
    } else {
        SealMode::Strict
    };
    let (graph, warnings) = builder.seal_with(mode)?;
    let report = IngestReport {
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        skipped_rows,
        dropped_edges: warnings.dropped_edges,
        cleared_parents: warnings.cleared_parents,
    };
    Ok((graph, report))
}

/// Builds and seals a graph. In lenient mode edges with unknown endpoints are
/// dropped and counted instead of failing.
pub fn build_graph(
    entities: impl IntoIterator<Item = Entity>,
    edges: impl IntoIterator<Item = DepEdge>,
    lenient: bool,
) -> Result<(DependencyGraph, IngestReport), IngestError> {
    let mut b = GraphBuilder::new();
    for e in entities {
        b.add_entity(e)?;
    }
    for e in edges {
        b.add_edge(e)?;
    }
    finish(b, lenient, 0)
}

fn open(path: &Path) -> Result<BufReader<File>, IngestError> {
    File::open(path)
        .map(|f| BufReader::with_capacity(1 << 20, f))
        .map_err(|source| IngestError::Io {
            path: path.to_owned(),
            source,
        })
}

/// Streams a node table and an edge table straight into a graph builder.
pub fn load_graph(
    nodes: &Path,
    edges: &Path,
    lenient: bool,
) -> Result<(DependencyGraph, IngestReport), IngestError> {
    let mut b = GraphBuilder::new();
    for_each_node(open(nodes)?, TableFormat::from_path(nodes), lenient, |e| {
        b.add_entity(e)?;
        Ok(())
    })?;
    let skipped = for_each_edge(open(edges)?, TableFormat::from_path(edges), lenient, |e| {
        b.add_edge(e)?;
        Ok(())
    })?;
    finish(b, lenient, skipped)
}
