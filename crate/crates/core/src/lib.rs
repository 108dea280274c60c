//! Typed dependency networks for formal-proof corpora and software systems.
//!
//! The crate models a corpus as a [`DependencyGraph`] whose edges point from
//! an entity to the entities it depends on, and provides the analyses run over
//! such graphs: degree distributions with power-law fitting ([`degree`]),
//! random baselines ([`null_models`]), per-node metrics ([`metrics`]),
//! modularity communities and refactoring hints ([`community`]) and frequent
//! premise patterns ([`mining`]). [`ingest`] reads corpus exports, [`report`]
//! writes tables and [`snapshot`] caches sealed graphs in binary form.

pub mod community;
pub mod degree;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod mining;
pub mod null_models;
pub mod report;
pub mod snapshot;
pub mod zeta;

pub use community::{Partition, RefactoringRecommendation};
pub use degree::{DegreeDistribution, PowerLawFit};
pub use graph::{
    DepEdge, DependencyGraph, Direction, EdgeKind, Entity, EntityKind, GraphBuilder, GraphError,
    SealMode, SealWarnings, UndirectedGraph,
};
pub use ingest::{IngestError, IngestReport};
pub use metrics::{BetweennessMode, NodeMetrics};
pub use mining::{AssociationRule, FrequentItemset, Transaction};
pub use report::StatsReport;
