//! Degree distributions and discrete power-law fitting.
//!
//! The fitting pipeline follows the usual maximum-likelihood recipe for
//! heavy-tailed count data:
//!
//! 1. [`fit_power_law`] maximizes the discrete power-law log-likelihood for a
//!    fixed lower cutoff `xmin`;
//! 2. [`select_xmin`] repeats the fit for every plausible cutoff and keeps the
//!    one whose Kolmogorov–Smirnov distance to the data is smallest;
//! 3. [`bootstrap_pvalue`] measures how often data drawn from the fitted model
//!    fits worse than the observed data.
//!
//! [`loglog_slope`] is the plain least-squares line through the log-log
//! histogram, kept for comparison with visual "straight line" arguments.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{DependencyGraph, Direction, EntityKind};
use crate::null_models::DiscretePowerLaw;
use crate::zeta::hurwitz_zeta;

/// Search bracket for the exponent.
pub const GAMMA_MIN: f64 = 1.01;
pub const GAMMA_MAX: f64 = 6.0;
/// Golden-section stopping width.
pub const GAMMA_TOLERANCE: f64 = 1e-4;
/// Default minimum number of tail samples for a candidate `xmin`.
pub const DEFAULT_MIN_TAIL: usize = 50;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("distribution is empty")]
    EmptyDistribution,
    #[error("no samples at or above xmin = {0}")]
    EmptyTail(u64),
    #[error("fewer than two distinct values at or above xmin = {0}")]
    DegenerateTail(u64),
    #[error("need at least two points for a log-log fit, got {0}")]
    InsufficientPoints(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeDistribution {
    pub direction: Direction,
    /// degree → number of nodes with that degree; absent degrees have no key.
    pub histogram: BTreeMap<u64, u64>,
    pub n: u64,
}

impl DegreeDistribution {
    pub fn from_samples(direction: Direction, samples: impl IntoIterator<Item = u64>) -> Self {
        let mut histogram = BTreeMap::new();
        let mut n = 0;
        for s in samples {
            *histogram.entry(s).or_insert(0) += 1;
            n += 1;
        }
        DegreeDistribution {
            direction,
            histogram,
            n,
        }
    }

    /// Fraction of samples `>= d` for every present degree `d`, ascending.
    pub fn ccdf(&self) -> Result<Vec<(u64, f64)>, FitError> {
        if self.n == 0 {
            return Err(FitError::EmptyDistribution);
        }
        let n = self.n as f64;
        let mut remaining = self.n;
        let mut out = Vec::with_capacity(self.histogram.len());
        for (&d, &c) in &self.histogram {
            out.push((d, remaining as f64 / n));
            remaining -= c;
        }
        Ok(out)
    }

    /// Empirical probability mass per present degree.
    pub fn pmf(&self) -> Vec<(u64, f64)> {
        let n = self.n as f64;
        self.histogram
            .iter()
            .map(|(&d, &c)| (d, c as f64 / n))
            .collect()
    }

    /// Expands the histogram back into one sample per node, ascending.
    pub fn samples(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n as usize);
        for (&d, &c) in &self.histogram {
            out.extend(std::iter::repeat_n(d, c as usize));
        }
        out
    }
}

/// Histogram of degrees over the nodes whose kind passes `node_kinds`.
/// Degrees are always taken in the full graph.
pub fn degree_histogram(
    graph: &DependencyGraph,
    direction: Direction,
    node_kinds: Option<&[EntityKind]>,
) -> DegreeDistribution {
    let selected = (0..graph.node_count())
        .filter(|&ix| node_kinds.is_none_or(|ks| ks.contains(&graph.entity(ix).kind)));
    DegreeDistribution::from_samples(
        direction,
        selected.map(|ix| graph.degree_at(ix, direction) as u64),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub xmin: u64,
    pub ks_distance: f64,
    pub n_tail: usize,
    pub log_likelihood: f64,
    pub p_value: Option<f64>,
    /// The maximizer sits at an end of the search bracket.
    pub at_bracket_edge: bool,
}

/// Samples sorted ascending with suffix sums of their logarithms.
struct SortedSamples {
    values: Vec<u64>,
    suffix_log: Vec<f64>,
}

impl SortedSamples {
    fn new(samples: &[u64]) -> Self {
        let mut values = samples.to_vec();
        values.sort_unstable();
        let mut suffix_log = vec![0.0; values.len() + 1];
        for i in (0..values.len()).rev() {
            let v = values[i];
            suffix_log[i] = suffix_log[i + 1] + if v > 0 { (v as f64).ln() } else { 0.0 };
        }
        SortedSamples { values, suffix_log }
    }

    fn tail_start(&self, xmin: u64) -> usize {
        self.values.partition_point(|&v| v < xmin)
    }

    fn fit_at(&self, xmin: u64) -> Result<PowerLawFit, FitError> {
        let start = self.tail_start(xmin);
        let tail = &self.values[start..];
        if tail.is_empty() {
            return Err(FitError::EmptyTail(xmin));
        }
        if tail[0] == tail[tail.len() - 1] {
            return Err(FitError::DegenerateTail(xmin));
        }
        let n_tail = tail.len() as f64;
        let sum_log = self.suffix_log[start];
        let q = xmin as f64;
        let log_likelihood = |gamma: f64| -n_tail * hurwitz_zeta(gamma, q).ln() - gamma * sum_log;

        let gamma = golden_section_max(log_likelihood, GAMMA_MIN, GAMMA_MAX, GAMMA_TOLERANCE);
        let at_bracket_edge = gamma - GAMMA_MIN < 10.0 * GAMMA_TOLERANCE
            || GAMMA_MAX - gamma < 10.0 * GAMMA_TOLERANCE;

        Ok(PowerLawFit {
            gamma,
            xmin,
            ks_distance: ks_distance(tail, gamma, xmin),
            n_tail: tail.len(),
            log_likelihood: log_likelihood(gamma),
            p_value: None,
            at_bracket_edge,
        })
    }
}

/// Maximizes a unimodal function on `[lo, hi]` until the bracket is narrower than `tol`.
fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Largest gap between the empirical and model CDFs over the observed tail
/// values. `tail` must be sorted and entirely `>= xmin`.
fn ks_distance(tail: &[u64], gamma: f64, xmin: u64) -> f64 {
    let n = tail.len() as f64;
    let norm = hurwitz_zeta(gamma, xmin as f64);
    let mut worst: f64 = 0.0;
    let mut i = 0;
    while i < tail.len() {
        let v = tail[i];
        let mut j = i;
        while j < tail.len() && tail[j] == v {
            j += 1;
        }
        let empirical = j as f64 / n;
        let model = 1.0 - hurwitz_zeta(gamma, v as f64 + 1.0) / norm;
        worst = worst.max((empirical - model).abs());
        i = j;
    }
    worst
}

/// Discrete power-law MLE for the samples `>= xmin`. Smaller samples
/// (including zeros) are ignored.
pub fn fit_power_law(samples: &[u64], xmin: u64) -> Result<PowerLawFit, FitError> {
    if xmin < 1 {
        return Err(FitError::InvalidParameter("xmin must be at least 1".into()));
    }
    SortedSamples::new(samples).fit_at(xmin)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XminOptions {
    /// Candidates must leave at least this many samples in the tail. The
    /// smallest positive sample value is always a candidate.
    pub min_tail: usize,
}

impl Default for XminOptions {
    fn default() -> Self {
        XminOptions {
            min_tail: DEFAULT_MIN_TAIL,
        }
    }
}

/// Fits every candidate cutoff and returns the fit with the smallest KS
/// distance; ties go to the smaller cutoff.
pub fn select_xmin(samples: &[u64]) -> Result<PowerLawFit, FitError> {
    select_xmin_with(samples, &XminOptions::default())
}

pub fn select_xmin_with(samples: &[u64], opts: &XminOptions) -> Result<PowerLawFit, FitError> {
    let sorted = SortedSamples::new(samples);
    let candidates = xmin_candidates(&sorted.values, opts.min_tail);
    let Some(&smallest) = candidates.first() else {
        return Err(FitError::DegenerateTail(1));
    };
    let fits: Vec<PowerLawFit> = candidates
        .par_iter()
        .filter_map(|&x| sorted.fit_at(x).ok())
        .collect();
    let mut best: Option<PowerLawFit> = None;
    for fit in fits {
        if best
            .as_ref()
            .is_none_or(|b| fit.ks_distance < b.ks_distance)
        {
            best = Some(fit);
        }
    }
    best.ok_or(FitError::DegenerateTail(smallest))
}

/// Distinct positive values that leave at least `min_tail` samples at or
/// above them, always including the smallest positive value.
fn xmin_candidates(sorted: &[u64], min_tail: usize) -> Vec<u64> {
    let start = sorted.partition_point(|&v| v == 0);
    let mut out = Vec::new();
    let mut i = start;
    while i < sorted.len() {
        let v = sorted[i];
        if i == start || sorted.len() - i >= min_tail {
            out.push(v);
        } else {
            break;
        }
        while i < sorted.len() && sorted[i] == v {
            i += 1;
        }
    }
    out
}

/// Semi-parametric bootstrap goodness-of-fit.
///
/// Each replicate keeps the sample size; every draw comes from the fitted
/// model with probability `n_tail / n` and otherwise from the observed values
/// below `xmin`. Replicates are refit with [`select_xmin_with`] and the result
/// is the fraction whose KS distance is at least the observed one.
///
/// Replicate `i` uses the ChaCha8 stream `i` of `seed`, so the result does not
/// depend on scheduling.
pub fn bootstrap_pvalue(
    samples: &[u64],
    fit: &PowerLawFit,
    n_boot: usize,
    seed: u64,
) -> Result<f64, FitError> {
    bootstrap_pvalue_with(samples, fit, n_boot, seed, &XminOptions::default())
}

pub fn bootstrap_pvalue_with(
    samples: &[u64],
    fit: &PowerLawFit,
    n_boot: usize,
    seed: u64,
    opts: &XminOptions,
) -> Result<f64, FitError> {
    if n_boot < 1 {
        return Err(FitError::InvalidParameter(
            "n_boot must be at least 1".into(),
        ));
    }
    if samples.is_empty() {
        return Err(FitError::EmptyDistribution);
    }
    if !(fit.gamma > 1.0) || fit.xmin < 1 {
        return Err(FitError::InvalidParameter(
            "fit has gamma <= 1 or xmin < 1".into(),
        ));
    }
    let head: Vec<u64> = samples.iter().copied().filter(|&v| v < fit.xmin).collect();
    let n_tail = samples.len() - head.len();
    if n_tail == 0 {
        return Err(FitError::EmptyTail(fit.xmin));
    }
    let tail_fraction = n_tail as f64 / samples.len() as f64;
    let model = DiscretePowerLaw::new(fit.gamma, fit.xmin)
        .map_err(|e| FitError::InvalidParameter(e.to_string()))?;

    let exceed: Vec<bool> = (0..n_boot)
        .into_par_iter()
        .map(|replicate| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(replicate as u64);
            let synthetic: Vec<u64> = (0..samples.len())
                .map(|_| {
                    if head.is_empty() || rng.random::<f64>() < tail_fraction {
                        model.sample(&mut rng)
                    } else {
                        head[rng.random_range(0..head.len())]
                    }
                })
                .collect();
            select_xmin_with(&synthetic, opts).map(|f| f.ks_distance >= fit.ks_distance)
        })
        .collect::<Result<_, _>>()?;
    Ok(exceed.iter().filter(|&&e| e).count() as f64 / n_boot as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least-squares line through `(ln d, ln count)` for degrees `>= min_degree`.
/// Degree zero never qualifies.
pub fn loglog_slope(dist: &DegreeDistribution, min_degree: u64) -> Result<LogLogFit, FitError> {
    let points: Vec<(f64, f64)> = dist
        .histogram
        .range(min_degree.max(1)..)
        .filter(|(_, &c)| c >= 1)
        .map(|(&d, &c)| ((d as f64).ln(), (c as f64).ln()))
        .collect();
    if points.len() < 2 {
        return Err(FitError::InsufficientPoints(points.len()));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(LogLogFit {
        slope,
        intercept,
        r_squared,
    })
}
