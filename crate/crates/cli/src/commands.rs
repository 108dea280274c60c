use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::Serialize;

use depnet::community::{
    compare_partitions, declared_partition, detect_communities_with, modularity,
    recommend_refactorings, LouvainOptions, Partition,
};
use depnet::degree::{
    bootstrap_pvalue_with, degree_histogram, fit_power_law, select_xmin_with, XminOptions,
};
use depnet::ingest::{load_graph, IngestReport};
use depnet::metrics::{compute_node_metrics, BetweennessMode};
use depnet::mining::{
    association_rules, extract_transactions, frequent_itemsets, suggest_premises,
};
use depnet::null_models::{erdos_renyi, power_law_sample, preferential_attachment};
use depnet::report::{self, corpus_stats};
use depnet::snapshot::{load_snapshot, write_snapshot};
use depnet::{DependencyGraph, EdgeKind, EntityKind, Transaction};

use crate::args::*;
use crate::output::{emit, write_file, RunMeta};
use crate::{CliError, Sink};

type Result<T> = std::result::Result<T, CliError>;

fn io_err(e: io::Error) -> CliError {
    CliError::invalid("io", e)
}

pub fn dispatch(
    command: Command,
    meta: &RunMeta,
    stdout: &mut Sink,
    stderr: &mut Sink,
) -> Result<()> {
    match command {
        Command::Ingest(a) => ingest(a, meta, stdout),
        Command::Stats(a) => stats(a, meta, stdout),
        Command::Degree(a) => degree(a, meta, stdout),
        Command::Fit(a) => fit(a, meta, stdout),
        Command::Generate(g) => generate(g, meta, stdout),
        Command::Metrics(a) => metrics(a, meta, stdout),
        Command::Communities(a) => communities(a, meta, stdout, stderr),
        Command::Recommend(a) => recommend(a, meta, stdout),
        Command::Mine(a) => mine(a, meta, stdout, stderr),
        Command::Suggest(a) => suggest(a, meta, stdout),
    }
}

fn open_graph(
    snapshot: Option<&Path>,
    nodes: Option<&Path>,
    edges: Option<&Path>,
    lenient: bool,
) -> Result<DependencyGraph> {
    match (snapshot, nodes, edges) {
        (Some(path), _, _) => load_snapshot(path)
            .map_err(|e| CliError::invalid("snapshot", format!("{}: {e}", path.display()))),
        (None, Some(n), Some(e)) => load_graph(n, e, lenient)
            .map(|(g, _)| g)
            .map_err(|e| CliError::invalid("ingest", e)),
        _ => Err(CliError::Usage(
            "either --snapshot or both --nodes and --edges are required".into(),
        )),
    }
}

fn load(g: &GraphArgs) -> Result<DependencyGraph> {
    open_graph(
        g.snapshot.as_deref(),
        g.nodes.as_deref(),
        g.edges.as_deref(),
        g.lenient,
    )
}

fn json_line<T: Serialize + ?Sized>(w: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    w.write_all(b"\n")
}

fn ingest(a: IngestArgs, meta: &RunMeta, stdout: &mut Sink) -> Result<()> {
    let (graph, report) =
        load_graph(&a.nodes, &a.edges, a.lenient).map_err(|e| CliError::invalid("ingest", e))?;
    write_file(&a.snapshot, meta, |w| {
        write_snapshot(&graph, w).map_err(|e| io::Error::other(e.to_string()))
    })
    .map_err(io_err)?;
    emit_ingest_report(
        &report,
        a.output.format,
        a.output.out.as_deref(),
        meta,
        stdout,
    )
}

fn emit_ingest_report(
    r: &IngestReport,
    format: Format,
    out: Option<&Path>,
    meta: &RunMeta,
    stdout: &mut Sink,
) -> Result<()> {
    emit(out, stdout, meta, |w| match format {
        Format::Json => json_line(w, r),
        Format::Csv => {
            writeln!(w, "nodes,edges,skipped_rows,dropped_edges,cleared_parents")?;
            writeln!(
                w,
                "{},{},{},{},{}",
                r.nodes, r.edges, r.skipped_rows, r.dropped_edges, r.cleared_parents
            )
        }
    })
    .map_err(io_err)
}

fn stats(a: StatsArgs, meta: &RunMeta, stdout: &mut Sink) -> Result<()> {
    let graph = load(&a.graph)?;
    let s = corpus_stats(&graph, a.sources.as_deref()).map_err(|e| CliError::invalid("io", e))?;
    emit(a.output.out.as_deref(), stdout, meta, |w| {
        match a.output.format {
            Format::Json => json_line(w, &s),
            Format::Csv => {
                writeln!(w, "metric,value")?;
                writeln!(w, "nodes,{}", s.node_count)?;
                writeln!(w, "edges,{}", s.edge_count)?;
                writeln!(w, "entries,{}", s.entries)?;
                writeln!(w, "lemmas,{}", s.lemmas)?;
                if let Some(loc) = s.loc {
                    writeln!(w, "loc,{loc}")?;
                }
                for (kind, count) in &s.nodes_by_kind {
                    writeln!(w, "kind:{kind},{count}")?;
                }
                Ok(())
            }
        }
    })
    .map_err(io_err)
}

fn kinds_filter(kinds: &[EntityKind]) -> Option<&[EntityKind]> {
    (!kinds.is_empty()).then_some(kinds)
}

#[derive(Serialize)]
struct DegreeRow {
    deg: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pr: Option<f64>,
}

fn degree(a: DegreeArgs, meta: &RunMeta, stdout: &mut Sink) -> Result<()> {
    let graph = load(&a.graph)?;
    let dist = degree_histogram(&graph, a.direction.into(), kinds_filter(&a.kinds));
    emit(a.output.out.as_deref(), stdout, meta, |w| {
        match a.output.format {
            Format::Csv => report::emit_degree_csv(&dist, a.normalized, w).map(drop),
            Format::Json => {
                let rows: Vec<DegreeRow> = if a.normalized {
                    dist.pmf()
                        .into_iter()
                        .map(|(deg, p)| DegreeRow {
                            deg,
                            count: None,
                            pr: Some(p),
                        })
                        .collect()
                } else {
                    dist.histogram
                        .iter()
                        .map(|(&deg, &c)| DegreeRow {
                            deg,
                            count: Some(c),
                            pr: None,
                        })
                        .collect()
                };
                json_line(w, &rows)
            }
        }
    })
    .map_err(io_err)
}

/// Reads one non-negative integer per line; a leading `value` header is allowed.
pub fn read_samples(path: &Path) -> Result<Vec<u64>> {
    let f = File::open(path)
        .map_err(|e| CliError::invalid("io", format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(io_err)?;
        let t = line.trim();
        if t.is_empty() || (i == 0 && t == "value") {
            continue;
        }
        let v = t.parse::<u64>().map_err(|_| {
            CliError::invalid(
                "samples",
                format!(
                    "{}:{}: not a non-negative integer: `{t}`",
                    path.display(),
                    i + 1
                ),
            )
        })?;
        out.push(v);
    }
    Ok(out)
}

fn fit(a: FitArgs, meta: &RunMeta, stdout: &mut Sink) -> Result<()> {
    let samples = match &a.samples {
        Some(path) => read_samples(path)?,
        None => {
            let graph = open_graph(
                a.snapshot.as_deref(),
                a.nodes.as_deref(),
                a.edges.as_deref(),
                a.lenient,
            )?;
            degree_histogram(&graph, a.direction.into(), kinds_filter(&a.kinds)).samples()
        }
    };
    let fit_err = |e| CliError::invalid("fit", e);
    let opts = XminOptions {
        min_tail: a.min_tail,
    };
    let mut fit = match a.xmin {
        Some(x) => fit_power_law(&samples, x).map_err(fit_err)?,
        None => select_xmin_with(&samples, &opts).map_err(fit_err)?,
    };
    if let Some(n_boot) = a.bootstrap {
        fit.p_value =
            Some(bootstrap_pvalue_with(&samples, &fit, n_boot, a.seed, &opts).map_err(fit_err)?);
    }
    emit(a.output.out.as_deref(), stdout, meta, |w| {
        match a.output.format {
            Format::Json => json_line(w, &fit),
            Format::Csv => {
                writeln!(
                    w,
                    "gamma,xmin,ks_distance,n_tail,log_likelihood,p_value,at_bracket_edge"
                )?;
                let p = fit.p_value.map(|p| p.to_string()).unwrap_or_default();
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    fit.gamma,
                    fit.xmin,
                    fit.ks_distance,
                    fit.n_tail,
                    fit.log_likelihood,
                    p,
                    fit.at_bracket_edge
                )
            }
        }
    })
    .map_err(io_err)
}

fn write_graph(graph: &DependencyGraph, dest: &GraphOut, meta: &RunMeta) -> Result<()> {
    let conv = |e: depnet::report::ReportError| io::Error::other(e.to_string());
    if let Some(path) = &dest.snapshot {
        write_file(path, meta, |w| {
            write_snapshot(graph, w).map_err(|e| io::Error::other(e.to_string()))
        })
        .map_err(io_err)?;
    }
    if let Some(dir) = &dest.out_dir {
        fs::create_dir_all(dir).map_err(io_err)?;
        write_file(&dir.join("nodes.tsv"), meta, |w| {
            report::write_nodes_tsv(graph, w).map_err(conv)
        })
        .map_err(io_err)?;
        write_file(&dir.join("edges.tsv"), meta, |w| {
            report::write_edges_tsv(graph, w).map_err(conv)
        })
        .map_err(io_err)?;
    }
    Ok(())
}

fn generate(g: GenerateCommand, meta: &RunMeta, stdout: &mut Sink) -> Result<()> {
    let gen_err = |e| CliError::invalid("generate", e);
    let (graph, dest) = match g {
        GenerateCommand::Er(a) => (erdos_renyi(a.n, a.p, a.seed).map_err(gen_err)?, a.dest),
        GenerateCommand::Pa(a) => (
            preferential_attachment(a.n, a.m, a.seed).map_err(gen_err)?,
            a.dest,
        ),
        GenerateCommand::Plsample(a) => {
            let samples = power_law_sample(a.gamma, a.xmin, a.n, a.seed).map_err(gen_err)?;
            return emit(a.output.out.as_deref(), stdout, meta, |w| {
                match a.output.format {
                    Format::Json => json_line(w, &samples),
                    Format::Csv => {
                        writeln!(w, "value")?;
                        for s in &samples {
                            writeln!(w, "{s}")?;
                        }
                        Ok(())
                    }
                }
            })
            .map_err(io_err);
        }
    };
    write_graph(&graph, &dest, meta)?;
    let summary = IngestReport {
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        ..Default::default()
    };
    emit_ingest_report(&summary, dest.format, None, meta, stdout)
}

fn parse_betweenness(s: &str, seed: u64) -> Result<BetweennessMode> {
    if s == "exact" {
        return Ok(BetweennessMode::Exact);
    }
    s.strip_prefix("sampled:")
        .and_then(|k| k.parse::<usize>().ok())
        .filter(|&k| k > 0)
        .map(|k| BetweennessMode::Sampled { k, seed })
        .ok_or_else(|| {
            CliError::Usage(format!(
                "--betweenness expects `exact` or `sampled:K` with K > 0, got `{s}`"
            ))
        })
}

fn metrics(a: MetricsArgs, meta: &RunMeta, stdout: &mut Sink) -> Result<()> {
    let mode = parse_betweenness(&a.betweenness, a.seed)?;
    let graph = load(&a.graph)?;
    let rows = compute_node_metrics(&graph, mode).map_err(|e| CliError::invalid("metrics", e))?;
    emit(a.output.out.as_deref(), stdout, meta, |w| {
        match a.output.format {
            Format::Json => json_line(w, &rows),
            Format::Csv => report::write_metrics_csv(&rows, w),
        }
    })
    .map_err(io_err)
}

/// The graph a community level works on and the declared grouping of its nodes.
fn level_view(graph: &DependencyGraph, level: Level) -> Result<(DependencyGraph, Partition)> {
    let kinds: &[EntityKind] = match level {
        Level::Session => &[EntityKind::Theory],
        Level::Theory => &[
            EntityKind::Fact,
            EntityKind::Constant,
            EntityKind::TypeCon,
            EntityKind::Other,
        ],
    };
    let sub = graph
        .induced_subgraph(kinds, &EdgeKind::ALL)
        .map_err(|e| CliError::invalid("graph", e))?;
    let declared = declared_partition(graph, &sub);
    Ok((sub, declared))
}

struct Detected {
    sub: DependencyGraph,
    declared: Partition,
    predicted: Partition,
    modularity: f64,
    declared_modularity: f64,
    ari: f64,
}

fn detect(graph: &DependencyGraph, level: Level, seed: u64, restarts: usize) -> Result<Detected> {
    let comm_err = |e| CliError::invalid("community", e);
    let (sub, declared) = level_view(graph, level)?;
    let ug = sub.undirected_projection();
    let opts = LouvainOptions {
        restarts,
        ..Default::default()
    };
    let predicted = detect_communities_with(&ug, seed, opts).map_err(comm_err)?;
    Ok(Detected {
        modularity: modularity(&ug, &predicted).map_err(comm_err)?,
        declared_modularity: modularity(&ug, &declared).map_err(comm_err)?,
        ari: compare_partitions(&declared, &predicted).map_err(comm_err)?,
        sub,
        declared,
        predicted,
    })
}

#[derive(Serialize)]
struct CommunityRow<'a> {
    id: &'a str,
    community: usize,
    declared: String,
}

#[derive(Serialize)]
struct CommunitySummary<'a> {
    nodes: usize,
    communities: usize,
    declared_groups: usize,
    modularity: f64,
    declared_modularity: f64,
    adjusted_rand_index: f64,
    assignment: Vec<CommunityRow<'a>>,
}

fn communities(
    a: CommunityArgs,
    meta: &RunMeta,
    stdout: &mut Sink,
    stderr: &mut Sink,
) -> Result<()> {
    let graph = load(&a.graph)?;
    let d = detect(&graph, a.level, a.seed, a.restarts)?;
    let rows: Vec<CommunityRow> = d
        .sub
        .entities()
        .iter()
        .enumerate()
        .map(|(i, e)| CommunityRow {
            id: &e.id,
            community: d.predicted.community_of(i),
            declared: d.declared.name(d.declared.community_of(i)),
        })
        .collect();
    let summary = CommunitySummary {
        nodes: d.sub.node_count(),
        communities: d.predicted.community_count(),
        declared_groups: d.declared.community_count(),
        modularity: d.modularity,
        declared_modularity: d.declared_modularity,
        adjusted_rand_index: d.ari,
        assignment: rows,
    };
    let _ = writeln!(
        stderr,
        "{} nodes, {} communities, modularity {} (declared {}), ARI {}",
        summary.nodes,
        summary.communities,
        summary.modularity,
        summary.declared_modularity,
        summary.adjusted_rand_index
    );
    emit(a.output.out.as_deref(), stdout, meta, |w| {
        match a.output.format {
            Format::Json => json_line(w, &summary),
            Format::Csv => {
                writeln!(w, "id,community,declared")?;
                for r in &summary.assignment {
                    writeln!(
                        w,
                        "{},{},{}",
                        report::csv_field(r.id),
                        r.community,
                        report::csv_field(&r.declared)
                    )?;
                }
                Ok(())
            }
        }
    })
    .map_err(io_err)
}

fn recommend(a: RecommendArgs, meta: &RunMeta, stdout: &mut Sink) -> Result<()> {
    let graph = load(&a.graph)?;
    let d = detect(&graph, a.level, a.seed, a.restarts)?;
    let recs = recommend_refactorings(&d.sub, &d.declared, &d.predicted, a.min_confidence)
        .map_err(|e| CliError::invalid("community", e))?;
    emit(a.output.out.as_deref(), stdout, meta, |w| {
        match a.output.format {
            Format::Json => json_line(w, &recs),
            Format::Csv => report::write_recommendations_csv(&recs, w),
        }
    })
    .map_err(io_err)
}

/// Absolute count when `value >= 1`, otherwise a fraction of `n` rounded up.
pub fn absolute_support(value: f64, n: usize) -> Result<usize> {
    let bad = || {
        CliError::invalid(
            "mining",
            format!("--min-support must be a fraction in (0, 1) or a whole count, got {value}"),
        )
    };
    if !(value > 0.0) || !value.is_finite() {
        return Err(bad());
    }
    if value < 1.0 {
        Ok(((value * n as f64).ceil() as usize).max(1))
    } else if value.fract() == 0.0 {
        Ok(value as usize)
    } else {
        Err(bad())
    }
}

fn mined(graph: &DependencyGraph, m: &MiningArgs) -> Result<(Vec<Transaction>, usize)> {
    let ex = extract_transactions(graph, &m.item_kinds);
    let support = absolute_support(m.min_support, ex.transactions.len())?;
    Ok((ex.transactions, support))
}

fn mine(a: MineArgs, meta: &RunMeta, stdout: &mut Sink, stderr: &mut Sink) -> Result<()> {
    let mine_err = |e| CliError::invalid("mining", e);
    let graph = load(&a.graph)?;
    let (txs, support) = mined(&graph, &a.mining)?;
    let sets = frequent_itemsets(&txs, support).map_err(mine_err)?;
    let _ = writeln!(
        stderr,
        "{} transactions, min support {support}, {} frequent itemsets",
        txs.len(),
        sets.len()
    );
    if let Some(path) = &a.itemsets {
        write_file(path, meta, |w| match a.output.format {
            Format::Json => json_line(w, &sets),
            Format::Csv => report::write_itemsets_csv(&sets, w),
        })
        .map_err(io_err)?;
    }
    let out = a.output.out.as_deref();
    match a.min_confidence {
        None => emit(out, stdout, meta, |w| match a.output.format {
            Format::Json => json_line(w, &sets),
            Format::Csv => report::write_itemsets_csv(&sets, w),
        }),
        Some(c) => {
            let rules = association_rules(&sets, &txs, c).map_err(mine_err)?;
            emit(out, stdout, meta, |w| match a.output.format {
                Format::Json => json_line(w, &rules),
                Format::Csv => report::write_rules_csv(&rules, w),
            })
        }
    }
    .map_err(io_err)
}

fn suggest(a: SuggestArgs, meta: &RunMeta, stdout: &mut Sink) -> Result<()> {
    let mine_err = |e| CliError::invalid("mining", e);
    if a.k == 0 {
        return Err(CliError::Usage("-k must be at least 1".into()));
    }
    let graph = load(&a.graph)?;
    let (txs, support) = mined(&graph, &a.mining)?;
    let sets = frequent_itemsets(&txs, support).map_err(mine_err)?;
    let rules = association_rules(&sets, &txs, a.min_confidence).map_err(mine_err)?;
    let partial: BTreeSet<String> = a.items.iter().map(|s| s.trim().to_owned()).collect();
    let ranked = suggest_premises(&rules, &partial, a.k);
    emit(a.output.out.as_deref(), stdout, meta, |w| {
        match a.output.format {
            Format::Json => json_line(w, &ranked),
            Format::Csv => {
                writeln!(w, "item,confidence,support")?;
                for s in &ranked {
                    writeln!(
                        w,
                        "{},{},{}",
                        report::csv_field(&s.item),
                        s.confidence,
                        s.support
                    )?;
                }
                Ok(())
            }
        }
    })
    .map_err(io_err)
}
