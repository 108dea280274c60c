//! Modularity communities and their comparison with declared structure.
//!
//! [`detect_communities`] is a deterministic Louvain variant: nodes are
//! visited in index order, each moves to the neighboring community with the
//! largest modularity gain (smallest community id on ties), and communities
//! are then collapsed into super-nodes. A level ends once a sweep gains less
//! than `1e-6` in total or after 32 sweeps, and no move counts unless it
//! gains at least `1e-9`.
//! A plain single pass can stall in a poor optimum (an 8-node path ends up
//! as two halves), so the index-order pass is followed by a few passes in
//! seeded shuffled orders and the partition with the highest modularity is
//! kept. The first pass wins ties. Single-node moves on the original graph,
//! which may also split a node off into a new community, then alternate with
//! further passes over the resulting communities while modularity improves.
//! Finally a few seeded perturbation rounds reassign random nodes and
//! re-optimize, keeping only strict improvements.

use std::collections::HashMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{DependencyGraph, UndirectedGraph};

/// Smallest modularity improvement that still counts as progress.
pub const MIN_GAIN: f64 = 1e-9;

/// A sweep over all nodes gaining less than this in total ends the level.
pub const MIN_PASS_GAIN: f64 = 1e-6;

/// Sweeps per level at most. Index-order sweeps on large sparse graphs can
/// drift for hundreds of sweeps at small gains; later levels and the
/// refinement rounds pick up what is left.
pub const MAX_SWEEPS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CommunityError {
    #[error("graph has no edge weight")]
    EmptyGraph,
    #[error("partition covers {got} nodes, graph has {expected}")]
    IncompletePartition { expected: usize, got: usize },
    #[error("partitions cover different node sets ({0} vs {1} nodes)")]
    NodeSetMismatch(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Assignment of nodes (by index) to dense community ids `0..count`.
///
/// Ids are numbered by first appearance in node order, so two partitions
/// that group nodes identically compare equal regardless of input labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    assignment: Vec<usize>,
    count: usize,
    names: Option<Vec<String>>,
}

impl Partition {
    pub fn from_assignment(labels: impl IntoIterator<Item = usize>) -> Self {
        let mut remap: HashMap<usize, usize> = HashMap::new();
        let assignment: Vec<usize> = labels
            .into_iter()
            .map(|l| {
                let next = remap.len();
                *remap.entry(l).or_insert(next)
            })
            .collect();
        Partition {
            count: remap.len(),
            assignment,
            names: None,
        }
    }

    /// Partition by group name; each community keeps its name.
    pub fn from_groups<S: AsRef<str>>(groups: impl IntoIterator<Item = S>) -> Self {
        let mut remap: HashMap<String, usize> = HashMap::new();
        let mut names = Vec::new();
        let assignment = groups
            .into_iter()
            .map(|g| {
                let g = g.as_ref();
                if let Some(&c) = remap.get(g) {
                    return c;
                }
                let c = names.len();
                remap.insert(g.to_owned(), c);
                names.push(g.to_owned());
                c
            })
            .collect();
        Partition {
            count: names.len(),
            assignment,
            names: Some(names),
        }
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_assignment(0..n)
    }

    pub fn all_in_one(n: usize) -> Self {
        Self::from_assignment(std::iter::repeat_n(0, n))
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn community_count(&self) -> usize {
        self.count
    }

    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Name of community `c`: the group name for named partitions, the id otherwise.
    pub fn name(&self, c: usize) -> String {
        match &self.names {
            Some(names) => names[c].clone(),
            None => c.to_string(),
        }
    }
}

/// Declared grouping of the nodes of `nodes` by their parent in `source`
/// (a theory's session, a fact's theory). Parentless nodes form their own group.
pub fn declared_partition(source: &DependencyGraph, nodes: &DependencyGraph) -> Partition {
    Partition::from_groups(nodes.entities().iter().map(|e| {
        source
            .index_of(&e.id)
            .and_then(|ix| source.parent_index(ix))
            .map(|p| source.entity(p).id.clone())
            .unwrap_or_else(|| e.id.clone())
    }))
}

/// Newman modularity of a weighted partition:
/// `Q = Σ_c [ w_c / W − (d_c / 2W)² ]` where `w_c` is the weight inside
/// community `c` and `d_c` the total weighted degree of its members.
pub fn modularity(g: &UndirectedGraph, partition: &Partition) -> Result<f64, CommunityError> {
    if partition.len() != g.node_count() {
        return Err(CommunityError::IncompletePartition {
            expected: g.node_count(),
            got: partition.len(),
        });
    }
    let w = g.total_weight();
    if !(w > 0.0) {
        return Err(CommunityError::EmptyGraph);
    }
    let mut inside = vec![0.0; partition.community_count()];
    let mut degree = vec![0.0; partition.community_count()];
    for (u, v, wt) in g.edges() {
        let cu = partition.community_of(u);
        degree[cu] += wt;
        degree[partition.community_of(v)] += wt;
        if cu == partition.community_of(v) {
            inside[cu] += wt;
        }
    }
    Ok(inside
        .iter()
        .zip(&degree)
        .map(|(&i, &d)| i / w - (d / (2.0 * w)).powi(2))
        .sum())
}

/// Shuffled restarts run by [`detect_communities`].
pub const DEFAULT_RESTARTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LouvainOptions {
    /// Visit nodes in a seeded random order in the first pass too.
    pub shuffle: bool,
    /// Extra passes in shuffled order. Stream `i + 1` of the seed drives restart `i`.
    pub restarts: usize,
}

impl Default for LouvainOptions {
    fn default() -> Self {
        LouvainOptions {
            shuffle: false,
            restarts: DEFAULT_RESTARTS,
        }
    }
}

pub fn detect_communities(g: &UndirectedGraph, seed: u64) -> Result<Partition, CommunityError> {
    detect_communities_with(g, seed, LouvainOptions::default())
}

pub fn detect_communities_with(
    g: &UndirectedGraph,
    seed: u64,
    opts: LouvainOptions,
) -> Result<Partition, CommunityError> {
    if !(g.total_weight() > 0.0) {
        return Err(CommunityError::EmptyGraph);
    }
    let mut best = louvain_pass(g, opts.shuffle.then(|| stream(seed, 0)));
    let mut best_q = modularity(g, &best)?;
    for i in 0..opts.restarts {
        let candidate = louvain_pass(g, Some(stream(seed, i as u64 + 1)));
        let q = modularity(g, &candidate)?;
        if q > best_q + MIN_GAIN {
            best = candidate;
            best_q = q;
        }
    }
    best = polish(g, best, &mut best_q)?;
    // perturbation rounds: reassign a few nodes to a neighbor's community
    // and re-optimize, keeping the result only if modularity improves
    let n = g.node_count();
    for round in 0..opts.restarts {
        let mut rng = stream(seed, (opts.restarts + round) as u64 + 1);
        let mut labels = best.assignment().to_vec();
        for _ in 0..(n / 10).max(2) {
            let v = rng.random_range(0..n);
            let nbrs: Vec<usize> = g.weighted_neighbors(v).map(|e| e.0).collect();
            if let Some(&u) = nbrs.choose(&mut rng) {
                labels[v] = labels[u];
            }
        }
        let mut q = modularity(g, &Partition::from_assignment(labels.clone()))?;
        let candidate = polish(g, Partition::from_assignment(labels), &mut q)?;
        if q > best_q + MIN_GAIN {
            best = candidate;
            best_q = q;
        }
    }
    Ok(best)
}

/// Alternates node refinement with passes over the refined communities
/// while modularity improves. `q` is the modularity of `p` on entry and of
/// the result on return.
fn polish(g: &UndirectedGraph, mut p: Partition, q: &mut f64) -> Result<Partition, CommunityError> {
    loop {
        let next = louvain_pass_from(g, &refine(g, &p), None);
        let next_q = modularity(g, &next)?;
        if next_q > *q + MIN_PASS_GAIN {
            p = next;
            *q = next_q;
        } else {
            return Ok(p);
        }
    }
}

/// Single-node moves on the original graph starting from `p`. Unlike the
/// Louvain passes a node may also leave for a fresh community of its own.
fn refine(g: &UndirectedGraph, p: &Partition) -> Partition {
    let level = Level::from_graph(g);
    let n = level.len();
    let mut comm = p.assignment().to_vec();
    let mut tot = vec![0.0; n];
    let mut size = vec![0usize; n];
    for v in 0..n {
        tot[comm[v]] += level.degree[v];
        size[comm[v]] += 1;
    }
    let w = level.two_w / 2.0;
    let mut free: Vec<usize> = (0..n).filter(|&c| size[c] == 0).collect();
    let mut link = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    for _ in 0..MAX_SWEEPS {
        let mut moved = false;
        let mut pass_gain = 0.0;
        for i in 0..n {
            let ci = comm[i];
            let ki = level.degree[i];
            for &(j, wt) in &level.adj[i] {
                let c = comm[j];
                if link[c] == 0.0 {
                    touched.push(c);
                }
                link[c] += wt;
            }
            tot[ci] -= ki;
            size[ci] -= 1;
            let gain = |c: usize| link[c] - tot[c] * ki / level.two_w;
            let stay = gain(ci);
            let mut best = ci;
            let mut best_gain = stay;
            for &c in &touched {
                if c == ci {
                    continue;
                }
                let g = gain(c);
                let better = if best == ci {
                    g > stay + MIN_GAIN * w
                } else {
                    g > best_gain || (g == best_gain && c < best)
                };
                if better {
                    best = c;
                    best_gain = g;
                }
            }
            if size[ci] > 0 && 0.0 > best_gain + MIN_GAIN * w {
                // ids may have been reused since they were freed
                while let Some(c) = free.pop() {
                    if size[c] == 0 {
                        best = c;
                        break;
                    }
                }
            }
            if best != ci {
                moved = true;
                pass_gain += (best_gain - stay) / w;
            }
            if size[ci] == 0 && best != ci {
                free.push(ci);
            }
            tot[best] += ki;
            size[best] += 1;
            comm[i] = best;
            for &c in &touched {
                link[c] = 0.0;
            }
            touched.clear();
        }
        if !moved || pass_gain < MIN_PASS_GAIN {
            break;
        }
    }
    Partition::from_assignment(comm)
}

fn stream(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

fn louvain_pass(g: &UndirectedGraph, rng: Option<ChaCha8Rng>) -> Partition {
    louvain_pass_from(g, &Partition::singletons(g.node_count()), rng)
}

fn louvain_pass_from(
    g: &UndirectedGraph,
    start: &Partition,
    mut rng: Option<ChaCha8Rng>,
) -> Partition {
    let (mut level, dense) = Level::from_graph(g).aggregate(start.assignment());
    // membership[v] = super-node currently containing original node v
    let mut membership: Vec<usize> = start.assignment().iter().map(|&c| dense[c]).collect();
    loop {
        let mut order: Vec<usize> = (0..level.len()).collect();
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        let Some(assignment) = level.local_moves(&order) else {
            break;
        };
        let (next, dense) = level.aggregate(&assignment);
        for m in membership.iter_mut() {
            *m = dense[assignment[*m]];
        }
        level = next;
    }
    Partition::from_assignment(membership)
}

/// Weighted graph with self-loops, the working state of one Louvain level.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    self_loop: Vec<f64>,
    degree: Vec<f64>,
    two_w: f64,
}

impl Level {
    fn from_graph(g: &UndirectedGraph) -> Self {
        let n = g.node_count();
        let adj: Vec<Vec<(usize, f64)>> =
            (0..n).map(|v| g.weighted_neighbors(v).collect()).collect();
        let degree = adj.iter().map(|a| a.iter().map(|e| e.1).sum()).collect();
        Level {
            adj,
            self_loop: vec![0.0; n],
            degree,
            two_w: 2.0 * g.total_weight(),
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Greedy moves until a full pass changes nothing. Returns the community
    /// of each node, or `None` when no node moved at all.
    fn local_moves(&self, order: &[usize]) -> Option<Vec<usize>> {
        let n = self.len();
        let w = self.two_w / 2.0;
        let mut comm: Vec<usize> = (0..n).collect();
        let mut tot: Vec<f64> = self.degree.clone();
        let mut link = vec![0.0; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut moved_any = false;
        for _ in 0..MAX_SWEEPS {
            let mut moved = false;
            let mut pass_gain = 0.0;
            for &i in order {
                let ci = comm[i];
                let ki = self.degree[i];
                for &(j, wt) in &self.adj[i] {
                    let c = comm[j];
                    if link[c] == 0.0 {
                        touched.push(c);
                    }
                    link[c] += wt;
                }
                tot[ci] -= ki;
                let gain = |c: usize, link: &[f64]| link[c] - tot[c] * ki / self.two_w;
                let stay = gain(ci, &link);
                let mut best = ci;
                let mut best_gain = f64::NEG_INFINITY;
                for &c in &touched {
                    if c == ci {
                        continue;
                    }
                    let g = gain(c, &link);
                    if g > best_gain || (g == best_gain && c < best) {
                        best = c;
                        best_gain = g;
                    }
                }
                let target = if best != ci && (best_gain - stay) / w >= MIN_GAIN {
                    moved = true;
                    pass_gain += (best_gain - stay) / w;
                    best
                } else {
                    ci
                };
                tot[target] += ki;
                comm[i] = target;
                for &c in &touched {
                    link[c] = 0.0;
                }
                touched.clear();
            }
            moved_any |= moved;
            if !moved || pass_gain < MIN_PASS_GAIN {
                break;
            }
        }
        moved_any.then_some(comm)
    }

    /// Collapses communities into nodes. Also returns the dense renumbering
    /// of community ids used for the new nodes.
    fn aggregate(&self, comm: &[usize]) -> (Level, Vec<usize>) {
        let mut dense = vec![usize::MAX; self.len()];
        let mut count = 0;
        for &c in comm {
            if dense[c] == usize::MAX {
                dense[c] = count;
                count += 1;
            }
        }
        let mut self_loop = vec![0.0; count];
        let mut degree = vec![0.0; count];
        let mut maps: Vec<HashMap<usize, f64>> = vec![HashMap::new(); count];
        for v in 0..self.len() {
            let cv = dense[comm[v]];
            self_loop[cv] += self.self_loop[v];
            degree[cv] += self.degree[v];
            for &(u, wt) in &self.adj[v] {
                let cu = dense[comm[u]];
                if cu == cv {
                    // each internal edge is seen from both ends
                    self_loop[cv] += wt / 2.0;
                } else {
                    *maps[cv].entry(cu).or_insert(0.0) += wt;
                }
            }
        }
        let adj = maps
            .into_iter()
            .map(|m| {
                let mut row: Vec<(usize, f64)> = m.into_iter().collect();
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect();
        (
            Level {
                adj,
                self_loop,
                degree,
                two_w: self.two_w,
            },
            dense,
        )
    }
}

/// Adjusted Rand Index between two partitions of the same nodes.
pub fn compare_partitions(a: &Partition, b: &Partition) -> Result<f64, CommunityError> {
    if a.len() != b.len() {
        return Err(CommunityError::NodeSetMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if n < 2 {
        return Ok(1.0);
    }
    let pairs = |x: u64| (x * x.saturating_sub(1) / 2) as f64;
    let mut table: HashMap<(usize, usize), u64> = HashMap::new();
    let mut rows = vec![0u64; a.community_count()];
    let mut cols = vec![0u64; b.community_count()];
    for v in 0..n {
        let (ca, cb) = (a.community_of(v), b.community_of(v));
        *table.entry((ca, cb)).or_insert(0) += 1;
        rows[ca] += 1;
        cols[cb] += 1;
    }
    let index: f64 = table.values().map(|&c| pairs(c)).sum();
    let sum_a: f64 = rows.iter().map(|&c| pairs(c)).sum();
    let sum_b: f64 = cols.iter().map(|&c| pairs(c)).sum();
    let expected = sum_a * sum_b / pairs(n as u64);
    let max = 0.5 * (sum_a + sum_b);
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefactoringRecommendation {
    pub entity: String,
    pub declared_group: String,
    pub suggested_group: String,
    /// Share of the entity's community that belongs to `suggested_group`.
    pub confidence: f64,
}

/// Maps every predicted community to the declared group holding most of its
/// members and suggests moving each member that sits in a different group.
/// Majority ties go to the lexically smallest group name.
pub fn recommend_refactorings(
    graph: &DependencyGraph,
    declared: &Partition,
    predicted: &Partition,
    min_confidence: f64,
) -> Result<Vec<RefactoringRecommendation>, CommunityError> {
    if declared.len() != graph.node_count() {
        return Err(CommunityError::NodeSetMismatch(
            graph.node_count(),
            declared.len(),
        ));
    }
    if predicted.len() != graph.node_count() {
        return Err(CommunityError::NodeSetMismatch(
            graph.node_count(),
            predicted.len(),
        ));
    }
    if !(min_confidence > 0.0 && min_confidence <= 1.0) {
        return Err(CommunityError::InvalidParameter(format!(
            "min_confidence must lie in (0, 1], got {min_confidence}"
        )));
    }

    let mut counts: Vec<HashMap<usize, usize>> = vec![HashMap::new(); predicted.community_count()];
    let mut sizes = vec![0usize; predicted.community_count()];
    for v in 0..graph.node_count() {
        let c = predicted.community_of(v);
        *counts[c].entry(declared.community_of(v)).or_insert(0) += 1;
        sizes[c] += 1;
    }
    let majority: Vec<(usize, f64)> = counts
        .iter()
        .zip(&sizes)
        .map(|(groups, &size)| {
            let (&group, &count) = groups
                .iter()
                .max_by(|x, y| {
                    x.1.cmp(y.1)
                        .then_with(|| declared.name(*y.0).cmp(&declared.name(*x.0)))
                })
                .expect("communities are non-empty");
            (group, count as f64 / size as f64)
        })
        .collect();

    let mut out: Vec<RefactoringRecommendation> = (0..graph.node_count())
        .filter_map(|v| {
            let (group, confidence) = majority[predicted.community_of(v)];
            let own = declared.community_of(v);
            (own != group && confidence >= min_confidence).then(|| RefactoringRecommendation {
                entity: graph.entity(v).id.clone(),
                declared_group: declared.name(own),
                suggested_group: declared.name(group),
                confidence,
            })
        })
        .collect();
    out.sort_by(|a, b| {
        b.confidence
            .total_cmp(&a.confidence)
            .then_with(|| a.entity.cmp(&b.entity))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{DepEdge, EdgeKind, Entity, EntityKind, GraphBuilder};

    fn two_triangles(bridge: bool) -> UndirectedGraph {
        let mut e = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        if bridge {
            e.push((2, 3));
        }
        UndirectedGraph::from_unweighted(6, &e).unwrap()
    }

    #[test]
    fn modularity_examples() {
        let g = two_triangles(false);
        assert_eq!(modularity(&g, &Partition::all_in_one(6)).unwrap(), 0.0);
        let by_component = Partition::from_assignment([0, 0, 0, 1, 1, 1]);
        assert!((modularity(&g, &by_component).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(
            modularity(&g, &Partition::all_in_one(5)).unwrap_err(),
            CommunityError::IncompletePartition {
                expected: 6,
                got: 5
            }
        );
        let empty = UndirectedGraph::from_unweighted(3, &[]).unwrap();
        assert_eq!(
            modularity(&empty, &Partition::all_in_one(3)).unwrap_err(),
            CommunityError::EmptyGraph
        );
    }

    #[test]
    fn louvain_examples() {
        let p = detect_communities(&two_triangles(true), 0).unwrap();
        assert_eq!(p, Partition::from_assignment([0, 0, 0, 1, 1, 1]));

        let mut k5 = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                k5.push((u, v));
            }
        }
        let g = UndirectedGraph::from_unweighted(5, &k5).unwrap();
        assert_eq!(detect_communities(&g, 0).unwrap().community_count(), 1);

        let p = detect_communities(&two_triangles(false), 0).unwrap();
        for (u, v, _) in two_triangles(false).edges() {
            assert_eq!(p.community_of(u), p.community_of(v));
        }
        assert_ne!(p.community_of(0), p.community_of(3));
    }

    #[test]
    fn ari_examples() {
        let a = Partition::from_assignment([0, 0, 1, 1]);
        assert_eq!(compare_partitions(&a, &a).unwrap(), 1.0);
        let relabelled = Partition::from_assignment([7, 7, 3, 3]);
        assert_eq!(compare_partitions(&a, &relabelled).unwrap(), 1.0);
        assert_eq!(
            compare_partitions(&Partition::singletons(4), &Partition::all_in_one(4)).unwrap(),
            0.0
        );
        // contingency all ones: index 0, row/col pair sums 2, expected 2/3, max 2
        let b = Partition::from_assignment([0, 1, 0, 1]);
        assert!((compare_partitions(&a, &b).unwrap() + 0.5).abs() < 1e-15);
        assert_eq!(
            compare_partitions(&a, &Partition::singletons(3)).unwrap_err(),
            CommunityError::NodeSetMismatch(4, 3)
        );
    }

    fn session_fixture() -> DependencyGraph {
        let mut b = GraphBuilder::new();
        for id in ["a", "b", "c", "d"] {
            b.add_entity(Entity::new(id, EntityKind::Theory, id))
                .unwrap();
        }
        for (s, d) in [
            ("a", "b"),
            ("b", "c"),
            ("a", "c"),
            ("d", "a"),
            ("d", "b"),
            ("d", "c"),
        ] {
            b.add_edge(DepEdge::new(s, d, EdgeKind::Imports)).unwrap();
        }
        b.seal().unwrap()
    }

    #[test]
    fn recommendations() {
        let g = session_fixture();
        let declared = Partition::from_groups(["S1", "S1", "S1", "S2"]);
        let predicted = detect_communities(&g.undirected_projection(), 0).unwrap();
        assert_eq!(predicted.community_count(), 1);

        let recs = recommend_refactorings(&g, &declared, &predicted, 0.5).unwrap();
        assert_eq!(
            recs,
            vec![RefactoringRecommendation {
                entity: "d".into(),
                declared_group: "S2".into(),
                suggested_group: "S1".into(),
                confidence: 0.75,
            }]
        );
        assert!(recommend_refactorings(&g, &declared, &predicted, 1.0)
            .unwrap()
            .is_empty());
        assert!(recommend_refactorings(&g, &declared, &declared, 0.1)
            .unwrap()
            .is_empty());
        assert!(recommend_refactorings(&g, &declared, &predicted, 0.0).is_err());
    }

    #[test]
    fn declared_partition_uses_parents_of_source() {
        let mut b = GraphBuilder::new();
        b.add_entity(Entity::new("S", EntityKind::Session, "S"))
            .unwrap();
        b.add_entity(Entity::new("T1", EntityKind::Theory, "T1").with_parent("S"))
            .unwrap();
        b.add_entity(Entity::new("T2", EntityKind::Theory, "T2"))
            .unwrap();
        let g = b.seal().unwrap();
        let theories = g
            .induced_subgraph(&[EntityKind::Theory], &EdgeKind::ALL)
            .unwrap();
        let p = declared_partition(&g, &theories);
        assert_eq!(p.name(p.community_of(0)), "S");
        assert_eq!(p.name(p.community_of(1)), "T2");
    }
}
