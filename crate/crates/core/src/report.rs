//! Corpus statistics and tabular output.
//!
//! Every writer emits LF line endings, no timestamps and floats in shortest
//! round-trip form, so identical inputs give identical bytes.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;
use walkdir::WalkDir;

use crate::community::RefactoringRecommendation;
use crate::degree::DegreeDistribution;
use crate::graph::{DependencyGraph, EntityKind};
use crate::ingest::{EDGES_HEADER, NODES_HEADER};
use crate::metrics::NodeMetrics;
use crate::mining::{AssociationRule, FrequentItemset};

/// File extension counted by [`corpus_stats`].
pub const SOURCE_EXTENSION: &str = "thy";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("field cannot be written as TSV: {0:?}")]
    Unrepresentable(String),
    #[error(transparent)]
    Write(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    /// Keyed by the kind's table name.
    pub nodes_by_kind: BTreeMap<String, usize>,
    pub node_count: usize,
    pub edge_count: usize,
    pub entries: usize,
    pub lemmas: usize,
    /// Physical lines in source files, when a source directory was given.
    pub loc: Option<u64>,
}

pub fn corpus_stats(
    graph: &DependencyGraph,
    source_dir: Option<&Path>,
) -> Result<StatsReport, ReportError> {
    let nodes_by_kind = EntityKind::ALL
        .iter()
        .map(|&k| (k.as_str().to_owned(), graph.kind_count(k)))
        .collect();
    let loc = source_dir.map(count_source_lines).transpose()?;
    Ok(StatsReport {
        nodes_by_kind,
        node_count: graph.node_count(),
        edge_count: graph.edge_count(),
        entries: graph.kind_count(EntityKind::Session),
        lemmas: graph.kind_count(EntityKind::Fact),
        loc,
    })
}

/// Newline count summed over every `.thy` file below `dir`.
pub fn count_source_lines(dir: &Path) -> Result<u64, ReportError> {
    let io_err = |path: &Path, source| ReportError::Io {
        path: path.to_owned(),
        source,
    };
    let mut total = 0u64;
    let mut buf = vec![0u8; 1 << 16];
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(dir).to_owned();
            ReportError::Io {
                path,
                source: e.into(),
            }
        })?;
        let path = entry.path();
        if !entry.file_type().is_file()
            || path.extension().and_then(|e| e.to_str()) != Some(SOURCE_EXTENSION)
        {
            continue;
        }
        let mut f = BufReader::new(File::open(path).map_err(|e| io_err(path, e))?);
        loop {
            let read = f.read(&mut buf).map_err(|e| io_err(path, e))?;
            if read == 0 {
                break;
            }
            total += buf[..read].iter().filter(|&&b| b == b'\n').count() as u64;
        }
    }
    Ok(total)
}

/// Counts how many bytes pass through.
struct Counting<'a, W: Write + ?Sized> {
    inner: &'a mut W,
    written: usize,
}

impl<W: Write + ?Sized> Write for Counting<'_, W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.written += n;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Writes `deg,count` (or `deg,pr`) rows in ascending degree order and returns
/// the number of bytes written.
pub fn emit_degree_csv<W: Write + ?Sized>(
    dist: &DegreeDistribution,
    normalized: bool,
    sink: &mut W,
) -> io::Result<usize> {
    let mut w = Counting {
        inner: sink,
        written: 0,
    };
    if normalized {
        writeln!(w, "deg,pr")?;
        for (d, p) in dist.pmf() {
            writeln!(w, "{d},{p}")?;
        }
    } else {
        writeln!(w, "deg,count")?;
        for (d, c) in &dist.histogram {
            writeln!(w, "{d},{c}")?;
        }
    }
    Ok(w.written)
}

/// Quotes a CSV field when it contains a separator, quote or line break.
pub fn csv_field(s: &str) -> std::borrow::Cow<'_, str> {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\"")).into()
    } else {
        s.into()
    }
}

pub const METRICS_HEADER: &str =
    "id,in_degree,out_degree,ego_nodes,ego_edges,clustering,betweenness,centrality";

pub fn write_metrics_csv<W: Write>(rows: &[NodeMetrics], mut w: W) -> io::Result<()> {
    writeln!(w, "{METRICS_HEADER}")?;
    for m in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            csv_field(&m.node),
            m.in_degree,
            m.out_degree,
            m.ego_nodes,
            m.ego_edges,
            m.clustering,
            m.betweenness,
            m.centrality
        )?;
    }
    w.flush()
}

pub const RECOMMENDATIONS_HEADER: &str = "entity,declared,suggested,confidence";

pub fn write_recommendations_csv<W: Write>(
    rows: &[RefactoringRecommendation],
    mut w: W,
) -> io::Result<()> {
    writeln!(w, "{RECOMMENDATIONS_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            csv_field(&r.entity),
            csv_field(&r.declared_group),
            csv_field(&r.suggested_group),
            r.confidence
        )?;
    }
    w.flush()
}

pub const ITEMSETS_HEADER: &str = "items,support";

pub fn write_itemsets_csv<W: Write>(rows: &[FrequentItemset], mut w: W) -> io::Result<()> {
    writeln!(w, "{ITEMSETS_HEADER}")?;
    for s in rows {
        writeln!(w, "{},{}", csv_field(&s.items.join(";")), s.support)?;
    }
    w.flush()
}

pub const RULES_HEADER: &str = "antecedent,consequent,support,confidence";

pub fn write_rules_csv<W: Write>(rows: &[AssociationRule], mut w: W) -> io::Result<()> {
    writeln!(w, "{RULES_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            csv_field(&r.antecedent.join(";")),
            csv_field(&r.consequent.join(";")),
            r.support,
            r.confidence
        )?;
    }
    w.flush()
}

fn tsv_field(s: &str, last: bool) -> Result<&str, ReportError> {
    if s.contains(['\t', '\n', '\r']) || (last && s.ends_with(' ')) {
        return Err(ReportError::Unrepresentable(s.to_owned()));
    }
    Ok(s)
}

/// Writes the node table read back by [`crate::ingest::parse_nodes`].
pub fn write_nodes_tsv<W: Write>(graph: &DependencyGraph, mut w: W) -> Result<(), ReportError> {
    writeln!(w, "{NODES_HEADER}")?;
    for e in graph.entities() {
        writeln!(
            w,
            "{}\t{}\t{}\t{}",
            tsv_field(&e.id, false)?,
            e.kind.as_str(),
            tsv_field(&e.name, false)?,
            tsv_field(e.parent.as_deref().unwrap_or(""), true)?
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the edge table read back by [`crate::ingest::parse_edges`].
pub fn write_edges_tsv<W: Write>(graph: &DependencyGraph, mut w: W) -> Result<(), ReportError> {
    writeln!(w, "{EDGES_HEADER}")?;
    let ents = graph.entities();
    for (s, d, k) in graph.edges() {
        writeln!(w, "{}\t{}\t{}", ents[s].id, ents[d].id, k.as_str())?;
    }
    w.flush()?;
    Ok(())
}
