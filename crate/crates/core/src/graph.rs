//! Typed directed dependency graph.
//!
//! Edges point from the depender to the dependee: a lemma has an edge to every
//! fact it uses, a theory has an edge to every theory it imports. Under this
//! convention the in-degree of a node is the number of entities that use it.
//!
//! Graphs are assembled with [`GraphBuilder`] and frozen with
//! [`GraphBuilder::seal`]. A sealed [`DependencyGraph`] stores its nodes sorted
//! by id and its edges in compressed adjacency arrays for both directions, so
//! two builders fed the same entities and edges in any order seal to equal
//! graphs.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("entity `{0}` already registered with different content")]
    DuplicateId(String),
    #[error("self-dependency on `{0}`")]
    SelfLoop(String),
    #[error("edges reference unknown entities: {}", .0.join(", "))]
    UnknownEndpoint(Vec<String>),
    #[error("entities have unknown parents: {}", .0.join(", "))]
    DanglingParent(Vec<String>),
    #[error("entities have a parent that is not of a coarser kind: {}", .0.join(", "))]
    ParentKind(Vec<String>),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("empty kind selection")]
    EmptySelection,
    #[error("undirected edge ({0}, {1}) is invalid: {2}")]
    InvalidEdge(usize, usize, &'static str),
}

/// Kind of a node in the dependency network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntityKind {
    Session,
    Theory,
    Fact,
    Constant,
    TypeCon,
    Other,
}

impl EntityKind {
    pub const ALL: [EntityKind; 6] = [
        EntityKind::Session,
        EntityKind::Theory,
        EntityKind::Fact,
        EntityKind::Constant,
        EntityKind::TypeCon,
        EntityKind::Other,
    ];

    /// Name used in the TSV and JSON-lines formats.
    pub fn as_str(self) -> &'static str {
        match self {
            EntityKind::Session => "session",
            EntityKind::Theory => "theory",
            EntityKind::Fact => "fact",
            EntityKind::Constant => "constant",
            EntityKind::TypeCon => "type",
            EntityKind::Other => "other",
        }
    }

    // Sessions contain theories, theories contain everything else.
    fn level(self) -> u8 {
        match self {
            EntityKind::Session => 0,
            EntityKind::Theory => 1,
            _ => 2,
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EntityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "session" => EntityKind::Session,
            "theory" => EntityKind::Theory,
            "fact" => EntityKind::Fact,
            "constant" => EntityKind::Constant,
            "type" => EntityKind::TypeCon,
            "other" => EntityKind::Other,
            _ => return Err(s.to_owned()),
        })
    }
}

/// Kind of a dependency relationship.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    Imports,
    Uses,
    Defines,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 3] = [EdgeKind::Imports, EdgeKind::Uses, EdgeKind::Defines];

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Imports => "imports",
            EdgeKind::Uses => "uses",
            EdgeKind::Defines => "defines",
        }
    }

    pub(crate) fn from_u8(v: u8) -> Option<Self> {
        Self::ALL.get(v as usize).copied()
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EdgeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "imports" => EdgeKind::Imports,
            "uses" => EdgeKind::Uses,
            "defines" => EdgeKind::Defines,
            _ => return Err(s.to_owned()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Entity {
    pub id: String,
    pub kind: EntityKind,
    pub name: String,
    /// A fact's theory or a theory's session.
    pub parent: Option<String>,
}

impl Entity {
    pub fn new(id: impl Into<String>, kind: EntityKind, name: impl Into<String>) -> Self {
        Entity {
            id: id.into(),
            kind,
            name: name.into(),
            parent: None,
        }
    }

    pub fn with_parent(mut self, parent: impl Into<String>) -> Self {
        self.parent = Some(parent.into());
        self
    }
}

/// A dependency of `src` on `dst`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DepEdge {
    pub src: String,
    pub dst: String,
    pub kind: EdgeKind,
}

impl DepEdge {
    pub fn new(src: impl Into<String>, dst: impl Into<String>, kind: EdgeKind) -> Self {
        DepEdge {
            src: src.into(),
            dst: dst.into(),
            kind,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct EntityRecord {
    kind: EntityKind,
    name: String,
    parent: Option<u32>,
}

/// How [`GraphBuilder::seal_with`] treats references to unknown entities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SealMode {
    /// Unknown endpoints and parents are errors.
    #[default]
    Strict,
    /// Edges with unknown endpoints are dropped and unknown parents cleared.
    Lenient,
}

/// Counts of what a lenient seal discarded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SealWarnings {
    pub dropped_edges: usize,
    pub cleared_parents: usize,
}

/// Single-writer accumulator for a [`DependencyGraph`].
///
/// Ids are interned on first sight, whether they come from an entity or from
/// an edge endpoint, so edges may be added before their endpoints.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    ids: HashMap<String, u32>,
    names: Vec<String>,
    records: Vec<Option<EntityRecord>>,
    edges: Vec<(u32, u32, EdgeKind)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(nodes: usize, edges: usize) -> Self {
        GraphBuilder {
            ids: HashMap::with_capacity(nodes),
            names: Vec::with_capacity(nodes),
            records: Vec::with_capacity(nodes),
            edges: Vec::with_capacity(edges),
        }
    }

    fn intern(&mut self, id: &str) -> u32 {
        if let Some(&ix) = self.ids.get(id) {
            return ix;
        }
        let ix = self.names.len() as u32;
        self.ids.insert(id.to_owned(), ix);
        self.names.push(id.to_owned());
        self.records.push(None);
        ix
    }

    /// Registers an entity. Re-adding an identical entity is a no-op.
    pub fn add_entity(&mut self, entity: Entity) -> Result<&mut Self, GraphError> {
        let ix = self.intern(&entity.id);
        let parent = entity.parent.as_deref().map(|p| self.intern(p));
        let record = EntityRecord {
            kind: entity.kind,
            name: entity.name,
            parent,
        };
        match &self.records[ix as usize] {
            Some(existing) if *existing != record => Err(GraphError::DuplicateId(entity.id)),
            Some(_) => Ok(self),
            None => {
                self.records[ix as usize] = Some(record);
                Ok(self)
            }
        }
    }

    /// Records a dependency. Duplicate `(src, dst, kind)` triples collapse at seal time.
    pub fn add_edge(&mut self, edge: DepEdge) -> Result<&mut Self, GraphError> {
        if edge.src == edge.dst {
            return Err(GraphError::SelfLoop(edge.src));
        }
        let src = self.intern(&edge.src);
        let dst = self.intern(&edge.dst);
        self.edges.push((src, dst, edge.kind));
        Ok(self)
    }

    /// Edge between two ids given by insertion order of interning. Used by
    /// the generators, which register nodes `0..n` up front.
    pub(crate) fn push_indexed_edge(&mut self, src: u32, dst: u32, kind: EdgeKind) {
        debug_assert!(src != dst);
        self.edges.push((src, dst, kind));
    }

    pub fn node_count(&self) -> usize {
        self.records.iter().filter(|r| r.is_some()).count()
    }

    pub fn seal(self) -> Result<DependencyGraph, GraphError> {
        self.seal_with(SealMode::Strict).map(|(g, _)| g)
    }

    pub fn seal_with(
        mut self,
        mode: SealMode,
    ) -> Result<(DependencyGraph, SealWarnings), GraphError> {
        let mut warnings = SealWarnings::default();
        let known = |records: &[Option<EntityRecord>], ix: u32| records[ix as usize].is_some();

        let mut unknown: Vec<String> = Vec::new();
        for &(s, d, _) in &self.edges {
            for ix in [s, d] {
                if !known(&self.records, ix) {
                    unknown.push(self.names[ix as usize].clone());
                }
            }
        }
        if !unknown.is_empty() {
            match mode {
                SealMode::Strict => {
                    unknown.sort();
                    unknown.dedup();
                    return Err(GraphError::UnknownEndpoint(unknown));
                }
                SealMode::Lenient => {
                    let records = &self.records;
                    let before = self.edges.len();
                    self.edges
                        .retain(|&(s, d, _)| known(records, s) && known(records, d));
                    warnings.dropped_edges = before - self.edges.len();
                }
            }
        }

        let mut dangling = Vec::new();
        let mut wrong_kind = Vec::new();
        for ix in 0..self.records.len() {
            let Some(rec) = &self.records[ix] else {
                continue;
            };
            let Some(p) = rec.parent else { continue };
            match &self.records[p as usize] {
                None => dangling.push(ix),
                Some(parent) if parent.kind.level() >= rec.kind.level() => wrong_kind.push(ix),
                Some(_) => {}
            }
        }
        if !dangling.is_empty() {
            match mode {
                SealMode::Strict => {
                    let mut ids: Vec<String> =
                        dangling.iter().map(|&ix| self.names[ix].clone()).collect();
                    ids.sort();
                    return Err(GraphError::DanglingParent(ids));
                }
                SealMode::Lenient => {
                    for &ix in &dangling {
                        if let Some(rec) = self.records[ix].as_mut() {
                            rec.parent = None;
                        }
                    }
                    warnings.cleared_parents = dangling.len();
                }
            }
        }
        if !wrong_kind.is_empty() {
            let mut ids: Vec<String> = wrong_kind
                .iter()
                .map(|&ix| self.names[ix].clone())
                .collect();
            ids.sort();
            return Err(GraphError::ParentKind(ids));
        }

        // Canonical node order: sorted by id.
        let mut order: Vec<u32> = (0..self.records.len() as u32)
            .filter(|&ix| self.records[ix as usize].is_some())
            .collect();
        order.sort_unstable_by(|&a, &b| self.names[a as usize].cmp(&self.names[b as usize]));
        let mut position = vec![u32::MAX; self.records.len()];
        for (pos, &ix) in order.iter().enumerate() {
            position[ix as usize] = pos as u32;
        }

        let mut entities = Vec::with_capacity(order.len());
        let mut parents = Vec::with_capacity(order.len());
        let mut names = std::mem::take(&mut self.names);
        for &ix in &order {
            let rec = self.records[ix as usize].take().expect("filtered above");
            let parent = rec.parent.map(|p| position[p as usize]);
            parents.push(parent);
            entities.push(Entity {
                id: std::mem::take(&mut names[ix as usize]),
                kind: rec.kind,
                name: rec.name,
                parent: None,
            });
        }
        for (pos, parent) in parents.iter().enumerate() {
            if let Some(p) = parent {
                entities[pos].parent = Some(entities[*p as usize].id.clone());
            }
        }

        let mut edges = std::mem::take(&mut self.edges);
        for e in edges.iter_mut() {
            e.0 = position[e.0 as usize];
            e.1 = position[e.1 as usize];
        }
        Ok((
            DependencyGraph::from_sorted_parts(entities, parents, edges),
            warnings,
        ))
    }
}

/// Immutable typed digraph with adjacency in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    entities: Vec<Entity>,
    parents: Vec<Option<u32>>,
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    out_kinds: Vec<EdgeKind>,
    in_offsets: Vec<usize>,
    in_sources: Vec<u32>,
    in_kinds: Vec<EdgeKind>,
    kind_counts: [usize; 6],
    edge_kind_counts: [usize; 3],
}

impl Default for DependencyGraph {
    fn default() -> Self {
        Self::from_sorted_parts(Vec::new(), Vec::new(), Vec::new())
    }
}

impl DependencyGraph {
    /// `entities` must be sorted by id and `edges` must use positions into it.
    pub(crate) fn from_sorted_parts(
        entities: Vec<Entity>,
        parents: Vec<Option<u32>>,
        mut edges: Vec<(u32, u32, EdgeKind)>,
    ) -> Self {
        let n = entities.len();
        edges.sort_unstable();
        edges.dedup();

        let mut kind_counts = [0usize; 6];
        for e in &entities {
            kind_counts[e.kind.index()] += 1;
        }
        let mut edge_kind_counts = [0usize; 3];

        let mut out_offsets = vec![0usize; n + 1];
        let mut in_offsets = vec![0usize; n + 1];
        for &(s, d, k) in &edges {
            out_offsets[s as usize + 1] += 1;
            in_offsets[d as usize + 1] += 1;
            edge_kind_counts[k as usize] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
            in_offsets[i + 1] += in_offsets[i];
        }
        let out_targets: Vec<u32> = edges.iter().map(|e| e.1).collect();
        let out_kinds: Vec<EdgeKind> = edges.iter().map(|e| e.2).collect();

        // Sources arrive in ascending order, so each in-list stays sorted.
        let m = edges.len();
        let mut in_sources = vec![0u32; m];
        let mut in_kinds = vec![EdgeKind::Uses; m];
        let mut cursor = in_offsets.clone();
        for &(s, d, k) in &edges {
            let slot = &mut cursor[d as usize];
            in_sources[*slot] = s;
            in_kinds[*slot] = k;
            *slot += 1;
        }

        DependencyGraph {
            entities,
            parents,
            out_offsets,
            out_targets,
            out_kinds,
            in_offsets,
            in_sources,
            in_kinds,
            kind_counts,
            edge_kind_counts,
        }
    }

    pub fn node_count(&self) -> usize {
        self.entities.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    /// Entities in canonical (id-sorted) order; positions are node indices.
    pub fn entities(&self) -> &[Entity] {
        &self.entities
    }

    pub fn entity(&self, ix: usize) -> &Entity {
        &self.entities[ix]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.entities
            .binary_search_by(|e| e.id.as_str().cmp(id))
            .ok()
    }

    pub fn parent_index(&self, ix: usize) -> Option<usize> {
        self.parents[ix].map(|p| p as usize)
    }

    pub fn kind_count(&self, kind: EntityKind) -> usize {
        self.kind_counts[kind.index()]
    }

    pub fn edge_kind_count(&self, kind: EdgeKind) -> usize {
        self.edge_kind_counts[kind as usize]
    }

    pub fn degree(&self, id: &str, direction: Direction) -> Result<usize, GraphError> {
        let ix = self
            .index_of(id)
            .ok_or_else(|| GraphError::UnknownNode(id.to_owned()))?;
        Ok(self.degree_at(ix, direction))
    }

    pub fn degree_at(&self, ix: usize, direction: Direction) -> usize {
        match direction {
            Direction::Out => self.out_offsets[ix + 1] - self.out_offsets[ix],
            Direction::In => self.in_offsets[ix + 1] - self.in_offsets[ix],
        }
    }

    /// Dependees of `ix` with the kind of each edge. Targets are ascending.
    pub fn out_edges(&self, ix: usize) -> impl Iterator<Item = (usize, EdgeKind)> + '_ {
        let r = self.out_offsets[ix]..self.out_offsets[ix + 1];
        self.out_targets[r.clone()]
            .iter()
            .zip(&self.out_kinds[r])
            .map(|(&t, &k)| (t as usize, k))
    }

    /// Dependers of `ix` with the kind of each edge. Sources are ascending.
    pub fn in_edges(&self, ix: usize) -> impl Iterator<Item = (usize, EdgeKind)> + '_ {
        let r = self.in_offsets[ix]..self.in_offsets[ix + 1];
        self.in_sources[r.clone()]
            .iter()
            .zip(&self.in_kinds[r])
            .map(|(&s, &k)| (s as usize, k))
    }

    /// All edges as `(src, dst, kind)` index triples in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeKind)> + '_ {
        (0..self.node_count()).flat_map(move |s| self.out_edges(s).map(move |(d, k)| (s, d, k)))
    }

    /// All edges with string endpoints.
    pub fn dep_edges(&self) -> impl Iterator<Item = DepEdge> + '_ {
        self.edges().map(|(s, d, k)| {
            DepEdge::new(self.entities[s].id.clone(), self.entities[d].id.clone(), k)
        })
    }

    /// Subgraph on the nodes of the selected kinds and the edges of the
    /// selected kinds between them. Parents that do not survive are cleared.
    pub fn induced_subgraph(
        &self,
        node_kinds: &[EntityKind],
        edge_kinds: &[EdgeKind],
    ) -> Result<DependencyGraph, GraphError> {
        if node_kinds.is_empty() || edge_kinds.is_empty() {
            return Err(GraphError::EmptySelection);
        }
        let keep_node = |k: EntityKind| node_kinds.contains(&k);
        let mut position = vec![u32::MAX; self.node_count()];
        let mut entities = Vec::new();
        for (ix, e) in self.entities.iter().enumerate() {
            if keep_node(e.kind) {
                position[ix] = entities.len() as u32;
                entities.push(e.clone());
            }
        }
        let mut parents = Vec::with_capacity(entities.len());
        for (ix, &pos) in position.iter().enumerate() {
            if pos == u32::MAX {
                continue;
            }
            let parent = self.parents[ix]
                .map(|p| position[p as usize])
                .filter(|&p| p != u32::MAX);
            if parent.is_none() {
                entities[pos as usize].parent = None;
            }
            parents.push(parent);
        }
        let edges = self
            .edges()
            .filter(|&(s, d, k)| {
                edge_kinds.contains(&k) && position[s] != u32::MAX && position[d] != u32::MAX
            })
            .map(|(s, d, k)| (position[s], position[d], k))
            .collect();
        Ok(DependencyGraph::from_sorted_parts(entities, parents, edges))
    }

    /// Collapses edge direction and kind; each unordered pair's weight is the
    /// number of directed edges between its endpoints.
    pub fn undirected_projection(&self) -> UndirectedGraph {
        let labels = self.entities.iter().map(|e| e.id.clone()).collect();
        let pairs = self.edges().map(|(s, d, _)| (s, d, 1.0));
        UndirectedGraph::from_edges(labels, pairs)
            .expect("sealed graphs have no self-loops and valid endpoints")
    }
}

/// Weighted undirected simple graph in compressed adjacency form.
#[derive(Debug, Clone, PartialEq)]
pub struct UndirectedGraph {
    labels: Vec<String>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    weights: Vec<f64>,
    total_weight: f64,
}

impl UndirectedGraph {
    /// Builds from `(u, v, weight)` triples; parallel edges are merged by
    /// summing weights.
    pub fn from_edges(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut pairs: Vec<(u32, u32, f64)> = Vec::new();
        for (u, v, w) in edges {
            if u == v {
                return Err(GraphError::InvalidEdge(u, v, "self-loop"));
            }
            if u >= n || v >= n {
                return Err(GraphError::InvalidEdge(u, v, "endpoint out of range"));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(GraphError::InvalidEdge(u, v, "weight must be positive"));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            pairs.push((a as u32, b as u32, w));
        }
        pairs.sort_unstable_by_key(|x| (x.0, x.1));
        let mut merged: Vec<(u32, u32, f64)> = Vec::with_capacity(pairs.len());
        for (a, b, w) in pairs {
            match merged.last_mut() {
                Some(last) if last.0 == a && last.1 == b => last.2 += w,
                _ => merged.push((a, b, w)),
            }
        }

        let mut offsets = vec![0usize; n + 1];
        for &(a, b, _) in &merged {
            offsets[a as usize + 1] += 1;
            offsets[b as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut neighbors = vec![0u32; offsets[n]];
        let mut weights = vec![0.0; offsets[n]];
        let mut cursor = offsets.clone();
        let mut total_weight = 0.0;
        // Iterating in (a, b) order keeps every adjacency list sorted.
        for &(a, b, w) in &merged {
            let slot = &mut cursor[a as usize];
            neighbors[*slot] = b;
            weights[*slot] = w;
            *slot += 1;
            total_weight += w;
        }
        for &(a, b, w) in &merged {
            let slot = &mut cursor[b as usize];
            neighbors[*slot] = a;
            weights[*slot] = w;
            *slot += 1;
        }
        for v in 0..n {
            let r = offsets[v]..offsets[v + 1];
            let mut adj: Vec<(u32, f64)> = neighbors[r.clone()]
                .iter()
                .copied()
                .zip(weights[r.clone()].iter().copied())
                .collect();
            adj.sort_unstable_by_key(|&(u, _)| u);
            for (slot, (u, w)) in r.zip(adj) {
                neighbors[slot] = u;
                weights[slot] = w;
            }
        }

        Ok(UndirectedGraph {
            labels,
            offsets,
            neighbors,
            weights,
            total_weight,
        })
    }

    /// Unweighted graph on nodes labelled `0..n`.
    pub fn from_unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_edges(labels, edges.iter().map(|&(u, v)| (u, v, 1.0)))
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Sum of edge weights, each undirected edge counted once.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn weighted_neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.offsets[v]..self.offsets[v + 1];
        self.neighbors[r.clone()]
            .iter()
            .zip(&self.weights[r])
            .map(|(&u, &w)| (u as usize, w))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn weighted_degree(&self, v: usize) -> f64 {
        self.weights[self.offsets[v]..self.offsets[v + 1]]
            .iter()
            .sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Undirected edges `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.weighted_neighbors(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, w)| (u, v, w))
        })
    }
}
