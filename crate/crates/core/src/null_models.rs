//! Seeded random baselines: Erdős–Rényi digraphs, preferential attachment
//! growth and discrete power-law samples.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)` (the
//! `rand_chacha` ChaCha stream cipher with 8 rounds), so outputs are
//! reproducible bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DependencyGraph, EdgeKind, Entity, EntityKind, GraphBuilder};
use crate::zeta::hurwitz_zeta;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidParameter(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Model {
    ErdosRenyi { n: usize, p: f64 },
    PreferentialAttachment { n: usize, m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub model: Model,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<DependencyGraph, GenError> {
        match self.model {
            Model::ErdosRenyi { n, p } => erdos_renyi(n, p, self.seed),
            Model::PreferentialAttachment { n, m } => preferential_attachment(n, m, self.seed),
        }
    }
}

/// Ids `n0`, `n1`, … zero-padded so that lexical order equals numeric order.
pub fn node_id(i: usize, n: usize) -> String {
    let width = n.saturating_sub(1).to_string().len();
    format!("n{i:0width$}")
}

fn builder_with_nodes(n: usize, edges: usize) -> GraphBuilder {
    let mut b = GraphBuilder::with_capacity(n, edges);
    for i in 0..n {
        let id = node_id(i, n);
        b.add_entity(Entity::new(id.clone(), EntityKind::Other, id))
            .expect("fresh ids are unique");
    }
    b
}

/// Directed G(n, p): each ordered pair `(u, v)`, `u != v`, is an edge
/// independently with probability `p`.
///
/// Pairs are enumerated in row-major order over the `n(n-1)` off-diagonal
/// slots and the gaps between successive edges are drawn from the geometric
/// distribution, so the cost is proportional to the number of edges.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<DependencyGraph, GenError> {
    if n < 1 {
        return Err(invalid("n must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("p must lie in [0, 1], got {p}")));
    }
    let slots = (n as u64) * (n as u64 - 1);
    let expected = (slots as f64 * p) as usize;
    let mut b = builder_with_nodes(n, expected + expected / 16 + 16);
    let row = n as u64 - 1;
    let mut push = |k: u64| {
        let u = k / row;
        let mut v = k % row;
        if v >= u {
            v += 1;
        }
        b.push_indexed_edge(u as u32, v as u32, EdgeKind::Uses);
    };

    if p >= 1.0 {
        (0..slots).for_each(&mut push);
    } else if p > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let log_q = (-p).ln_1p();
        let mut k: u64 = 0;
        loop {
            // 1 - u lies in (0, 1], keeping the logarithm finite
            let u: f64 = rng.random();
            let skip = ((1.0 - u).ln() / log_q).floor();
            if skip >= (slots - k) as f64 {
                break;
            }
            k += skip as u64;
            push(k);
            k += 1;
            if k >= slots {
                break;
            }
        }
    }
    Ok(b.seal().expect("generated graphs are valid"))
}

/// Growth model with in-degree preferential attachment.
///
/// Starts from `m + 1` nodes joined in a directed cycle. Every further node
/// adds `m` edges to distinct existing nodes, each picked with probability
/// proportional to `in_degree + m`. For nodes that arrived by growth this
/// equals their total degree, which gives the classic tail exponent 3.
pub fn preferential_attachment(n: usize, m: usize, seed: u64) -> Result<DependencyGraph, GenError> {
    grow(n, m, m, seed)
}

/// Preferential attachment with weights `in_degree + attractiveness`.
pub(crate) fn grow(
    n: usize,
    m: usize,
    attractiveness: usize,
    seed: u64,
) -> Result<DependencyGraph, GenError> {
    if m < 1 || m >= n {
        return Err(invalid(format!("need 1 <= m < n, got m = {m}, n = {n}")));
    }
    let seeds = m + 1;
    let mut b = builder_with_nodes(n, seeds + m * (n - seeds));
    // Node v appears `attractiveness` times plus once per in-edge.
    let mut urn: Vec<u32> = Vec::with_capacity(2 * m * n);
    for v in 0..seeds {
        b.push_indexed_edge(v as u32, ((v + 1) % seeds) as u32, EdgeKind::Uses);
    }
    for v in 0..seeds as u32 {
        urn.extend(std::iter::repeat(v).take(attractiveness + 1));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets: Vec<u32> = Vec::with_capacity(m);
    for v in seeds..n {
        targets.clear();
        while targets.len() < m {
            let t = urn[rng.random_range(0..urn.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            b.push_indexed_edge(v as u32, t, EdgeKind::Uses);
        }
        urn.extend_from_slice(&targets);
        urn.extend(std::iter::repeat(v as u32).take(attractiveness));
    }
    Ok(b.seal().expect("generated graphs are valid"))
}

/// Largest table of explicit CDF values kept by [`DiscretePowerLaw`].
const MAX_TABLE: usize = 1 << 14;
/// Probability mass allowed beyond the explicit table.
const TABLE_TAIL_MASS: f64 = 1e-9;
/// Largest value the tail search will return.
const MAX_VALUE: u64 = 1 << 62;

/// Inverse-transform sampler for `P(X = x) = x^{-γ} / ζ(γ, xmin)`, `x >= xmin`.
///
/// The CDF is tabulated until the remaining mass drops below `1e-9` or the
/// table reaches 2^14 entries. Draws that land beyond the table are inverted
/// by searching the exact survival function `ζ(γ, x) / ζ(γ, xmin)`.
#[derive(Debug, Clone)]
pub struct DiscretePowerLaw {
    gamma: f64,
    xmin: u64,
    norm: f64,
    cdf: Vec<f64>,
}

impl DiscretePowerLaw {
    pub fn new(gamma: f64, xmin: u64) -> Result<Self, GenError> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(invalid(format!("gamma must exceed 1, got {gamma}")));
        }
        if xmin < 1 {
            return Err(invalid("xmin must be at least 1"));
        }
        let norm = hurwitz_zeta(gamma, xmin as f64);
        let mut cdf = Vec::new();
        let mut acc = 0.0;
        let mut x = xmin;
        loop {
            acc += (x as f64).powf(-gamma) / norm;
            cdf.push(acc);
            if cdf.len() >= MAX_TABLE {
                break;
            }
            // Check the exact remaining mass only occasionally; it costs a zeta call.
            if cdf.len() % 1024 == 0 || 1.0 - acc < 10.0 * TABLE_TAIL_MASS {
                let remaining = hurwitz_zeta(gamma, (x + 1) as f64) / norm;
                if remaining <= TABLE_TAIL_MASS {
                    break;
                }
            }
            x += 1;
        }
        Ok(DiscretePowerLaw {
            gamma,
            xmin,
            norm,
            cdf,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn xmin(&self) -> u64 {
        self.xmin
    }

    /// `P(X >= x)`.
    fn survival(&self, x: u64) -> f64 {
        hurwitz_zeta(self.gamma, x as f64) / self.norm
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u: f64 = rng.random();
        let last = *self.cdf.last().expect("table is never empty");
        if u < last {
            return self.xmin + self.cdf.partition_point(|&c| c <= u) as u64;
        }
        // Smallest x past the table with P(X > x) < 1 - u.
        let target = 1.0 - u;
        let mut lo = self.xmin + self.cdf.len() as u64;
        if self.survival(lo + 1) < target {
            return lo;
        }
        let mut hi = lo.saturating_mul(2);
        while hi < MAX_VALUE && self.survival(hi + 1) >= target {
            lo = hi;
            hi = hi.saturating_mul(2);
        }
        let mut hi = hi.min(MAX_VALUE);
        // invariant: survival(lo + 1) >= target, answer in (lo, hi]
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.survival(mid + 1) < target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

/// `n` i.i.d. draws from the discrete power law with exponent `gamma`
/// supported on `x >= xmin`.
pub fn power_law_sample(gamma: f64, xmin: u64, n: usize, seed: u64) -> Result<Vec<u64>, GenError> {
    if n < 1 {
        return Err(invalid("n must be at least 1"));
    }
    let dist = DiscretePowerLaw::new(gamma, xmin)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| dist.sample(&mut rng)).collect())
}
