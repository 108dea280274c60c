//! Per-node network metrics.
//!
//! Local structure (ego network, clustering) and betweenness are computed on
//! the undirected projection; centrality follows the dependency direction.

use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{DependencyGraph, Direction, UndirectedGraph};

pub const DEFAULT_DAMPING: f64 = 0.85;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 10_000;
/// Sources per work unit in Brandes; partial sums are merged in unit order.
const SOURCE_CHUNK: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("unknown node index {0}")]
    UnknownNode(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetweennessMode {
    Exact,
    /// Brandes from `k` distinct random sources, rescaled by `n / k`.
    Sampled {
        k: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeMetrics {
    pub node: String,
    pub in_degree: usize,
    pub out_degree: usize,
    pub ego_nodes: usize,
    pub ego_edges: usize,
    pub clustering: f64,
    pub betweenness: f64,
    pub centrality: f64,
}

/// Number of edges among the neighbors of `v`.
fn neighbor_links(g: &UndirectedGraph, v: usize, mark: &mut [bool]) -> usize {
    let nbrs = g.neighbors(v);
    for &u in nbrs {
        mark[u as usize] = true;
    }
    let mut links = 0;
    for &u in nbrs {
        links += g
            .neighbors(u as usize)
            .iter()
            .filter(|&&w| w > u && mark[w as usize])
            .count();
    }
    for &u in nbrs {
        mark[u as usize] = false;
    }
    links
}

fn clustering_from(k: usize, links: usize) -> f64 {
    if k < 2 {
        0.0
    } else {
        links as f64 / (k * (k - 1) / 2) as f64
    }
}

/// Fraction of neighbor pairs of `node` that are adjacent; 0 below two neighbors.
pub fn local_clustering(g: &UndirectedGraph, node: usize) -> Result<f64, MetricsError> {
    if node >= g.node_count() {
        return Err(MetricsError::UnknownNode(node));
    }
    let mut mark = vec![false; g.node_count()];
    let links = neighbor_links(g, node, &mut mark);
    Ok(clustering_from(g.degree(node), links))
}

/// Unnormalized shortest-path betweenness with unit edge lengths. Each
/// unordered pair of endpoints contributes once; endpoints themselves get nothing.
pub fn betweenness(g: &UndirectedGraph, mode: BetweennessMode) -> Result<Vec<f64>, MetricsError> {
    let n = g.node_count();
    let (sources, scale): (Vec<usize>, f64) = match mode {
        BetweennessMode::Exact => ((0..n).collect(), 1.0),
        BetweennessMode::Sampled { k, seed } => {
            if k < 1 {
                return Err(MetricsError::InvalidParameter(
                    "sampled betweenness needs k >= 1".into(),
                ));
            }
            let k = k.min(n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = rand::seq::index::sample(&mut rng, n, k).into_vec();
            picked.sort_unstable();
            let scale = if k == n { 1.0 } else { n as f64 / k as f64 };
            (picked, scale)
        }
    };

    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut state = BrandesState::new(n);
            for &s in chunk {
                state.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();

    let mut total = vec![0.0; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    // Every unordered pair was counted from both of its endpoints.
    for t in total.iter_mut() {
        *t = *t * scale / 2.0;
    }
    Ok(total)
}

struct BrandesState {
    dist: Vec<i64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    preds: Vec<Vec<u32>>,
    stack: Vec<usize>,
    queue: VecDeque<usize>,
}

impl BrandesState {
    fn new(n: usize) -> Self {
        BrandesState {
            dist: vec![-1; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            preds: vec![Vec::new(); n],
            stack: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    fn accumulate(&mut self, g: &UndirectedGraph, s: usize, acc: &mut [f64]) {
        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.stack.push(v);
            for &w in g.neighbors(v) {
                let w = w as usize;
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v as u32);
                }
            }
        }
        while let Some(w) = self.stack.pop() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in &self.preds[w] {
                self.delta[v as usize] += self.sigma[v as usize] * coeff;
            }
            if w != s {
                acc[w] += self.delta[w];
            }
            // reset for the next source
            self.dist[w] = -1;
            self.sigma[w] = 0.0;
            self.delta[w] = 0.0;
            self.preds[w].clear();
        }
    }
}

/// Damped random-walk centrality along dependency edges: a node scores high
/// when many high-scoring nodes depend on it. Mass of nodes without
/// dependencies is spread uniformly. Scores sum to one.
pub fn centrality(
    graph: &DependencyGraph,
    damping: f64,
    tolerance: f64,
) -> Result<Vec<f64>, MetricsError> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(MetricsError::InvalidParameter(format!(
            "damping must lie in (0, 1), got {damping}"
        )));
    }
    if !(tolerance > 0.0) {
        return Err(MetricsError::InvalidParameter(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let n = graph.node_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let nf = n as f64;
    let out_degree: Vec<f64> = (0..n)
        .map(|v| graph.degree_at(v, Direction::Out) as f64)
        .collect();
    let mut score = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    for _ in 0..MAX_ITERATIONS {
        let dangling: f64 = (0..n)
            .filter(|&v| out_degree[v] == 0.0)
            .map(|v| score[v])
            .sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        for (v, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = graph
                .in_edges(v)
                .map(|(u, _)| score[u] / out_degree[u])
                .sum();
            *slot = base + damping * inflow;
        }
        let change: f64 = score.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut score, &mut next);
        if change < tolerance {
            break;
        }
    }
    let total: f64 = score.iter().sum();
    for s in score.iter_mut() {
        *s /= total;
    }
    Ok(score)
}

/// All metrics for every node, in graph order.
pub fn compute_node_metrics(
    graph: &DependencyGraph,
    mode: BetweennessMode,
) -> Result<Vec<NodeMetrics>, MetricsError> {
    let ugraph = graph.undirected_projection();
    let between = betweenness(&ugraph, mode)?;
    let central = centrality(graph, DEFAULT_DAMPING, DEFAULT_TOLERANCE)?;
    let mut mark = vec![false; graph.node_count()];
    Ok((0..graph.node_count())
        .map(|v| {
            let k = ugraph.degree(v);
            let links = neighbor_links(&ugraph, v, &mut mark);
            NodeMetrics {
                node: graph.entity(v).id.clone(),
                in_degree: graph.degree_at(v, Direction::In),
                out_degree: graph.degree_at(v, Direction::Out),
                ego_nodes: k + 1,
                ego_edges: k + links,
                clustering: clustering_from(k, links),
                betweenness: between[v],
                centrality: central[v],
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{DepEdge, EdgeKind, Entity, EntityKind, GraphBuilder};

    fn digraph(n: usize, edges: &[(usize, usize)]) -> DependencyGraph {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.add_entity(Entity::new(format!("v{i}"), EntityKind::Fact, "x"))
                .unwrap();
        }
        for &(s, d) in edges {
            b.add_edge(DepEdge::new(
                format!("v{s}"),
                format!("v{d}"),
                EdgeKind::Uses,
            ))
            .unwrap();
        }
        b.seal().unwrap()
    }

    #[test]
    fn clustering_examples() {
        let tri = UndirectedGraph::from_unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(local_clustering(&tri, 0).unwrap(), 1.0);
        let path = UndirectedGraph::from_unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(local_clustering(&path, 1).unwrap(), 0.0);
        assert_eq!(local_clustering(&path, 0).unwrap(), 0.0);
        assert_eq!(
            local_clustering(&path, 3).unwrap_err(),
            MetricsError::UnknownNode(3)
        );
    }

    #[test]
    fn betweenness_examples() {
        let path = UndirectedGraph::from_unweighted(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            betweenness(&path, BetweennessMode::Exact).unwrap(),
            vec![0.0, 1.0, 0.0]
        );
        let star = UndirectedGraph::from_unweighted(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(betweenness(&star, BetweennessMode::Exact).unwrap()[0], 3.0);
        assert!(matches!(
            betweenness(&star, BetweennessMode::Sampled { k: 0, seed: 1 }),
            Err(MetricsError::InvalidParameter(_))
        ));
    }

    #[test]
    fn centrality_examples() {
        let cycle = digraph(2, &[(0, 1), (1, 0)]);
        let c = centrality(&cycle, 0.85, 1e-12).unwrap();
        assert!((c[0] - 0.5).abs() < 1e-12 && (c[1] - 0.5).abs() < 1e-12);

        let empty = digraph(4, &[]);
        for s in centrality(&empty, 0.85, 1e-12).unwrap() {
            assert!((s - 0.25).abs() < 1e-15);
        }

        assert!(centrality(&empty, 1.0, 1e-9).is_err());
        assert!(centrality(&empty, 0.5, 0.0).is_err());
    }

    #[test]
    fn single_node_and_triangle_records() {
        let one = digraph(1, &[]);
        let m = compute_node_metrics(&one, BetweennessMode::Exact).unwrap();
        assert_eq!(
            (
                m[0].in_degree,
                m[0].out_degree,
                m[0].ego_nodes,
                m[0].ego_edges
            ),
            (0, 0, 1, 0)
        );
        assert_eq!(
            (m[0].clustering, m[0].betweenness, m[0].centrality),
            (0.0, 0.0, 1.0)
        );

        let tri = digraph(3, &[(0, 1), (1, 2), (2, 0)]);
        for r in compute_node_metrics(&tri, BetweennessMode::Exact).unwrap() {
            assert_eq!(r.clustering, 1.0);
            assert_eq!(r.betweenness, 0.0);
            assert!((r.centrality - 1.0 / 3.0).abs() < 1e-12);
            assert_eq!((r.ego_nodes, r.ego_edges), (3, 3));
        }
    }
}
