//! Brute-force reference implementations used as test oracles. They share no
//! code with the library and favour obviousness over speed.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use depnet::{DepEdge, DependencyGraph, EdgeKind, Entity, EntityKind, GraphBuilder};

// ---------------------------------------------------------------- power laws

pub const ORACLE_TERMS: usize = 10_000;

/// Hurwitz zeta by 10^4 direct terms plus the integral of the remainder
/// with a half-term endpoint correction.
pub fn zeta_direct(s: f64, q: f64) -> f64 {
    let mut sum = 0.0;
    for k in 0..ORACLE_TERMS {
        sum += (q + k as f64).powf(-s);
    }
    let x = q + ORACLE_TERMS as f64;
    sum + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s)
}

pub fn tail(samples: &[u64], xmin: u64) -> Vec<u64> {
    let mut t: Vec<u64> = samples.iter().copied().filter(|&x| x >= xmin).collect();
    t.sort_unstable();
    t
}

pub fn log_likelihood(tail: &[u64], xmin: u64, gamma: f64) -> f64 {
    let log_sum: f64 = tail.iter().map(|&x| (x as f64).ln()).sum();
    -(tail.len() as f64) * zeta_direct(gamma, xmin as f64).ln() - gamma * log_sum
}

/// Maximizer of the discrete likelihood over γ ∈ {1.01, 1.02, …, 6.00}.
pub fn grid_fit(samples: &[u64], xmin: u64) -> f64 {
    let t = tail(samples, xmin);
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 101..=600 {
        let g = i as f64 / 100.0;
        let ll = log_likelihood(&t, xmin, g);
        if ll > best.0 {
            best = (ll, g);
        }
    }
    best.1
}

/// max over observed tail values v of |F_emp(v) − F_model(v)|, model CDF by
/// direct summation of the normalized pmf.
pub fn ks_oracle(samples: &[u64], xmin: u64, gamma: f64) -> f64 {
    let t = tail(samples, xmin);
    let n = t.len() as f64;
    let z = zeta_direct(gamma, xmin as f64);
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for &x in &t {
        *counts.entry(x).or_default() += 1;
    }
    let (mut seen, mut model, mut next) = (0usize, 0.0f64, xmin);
    let mut worst = 0.0f64;
    for (&v, &c) in &counts {
        while next <= v {
            model += (next as f64).powf(-gamma) / z;
            next += 1;
        }
        seen += c;
        worst = worst.max((seen as f64 / n - model).abs());
    }
    worst
}

/// OLS slope, intercept and r² of (ln x, ln y).
pub fn ols_loglog(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx, sxy * sxy / (sxx * syy))
}

/// Cutoff chosen by fitting at every candidate and comparing oracle KS
/// distances; the smallest positive value is always a candidate.
pub fn xmin_oracle(samples: &[u64], min_tail: usize) -> u64 {
    let mut values: Vec<u64> = samples.iter().copied().filter(|&x| x > 0).collect();
    values.sort_unstable();
    values.dedup();
    let mut best: Option<(f64, u64)> = None;
    for (i, &x) in values.iter().enumerate() {
        let n_tail = samples.iter().filter(|&&s| s >= x).count();
        if i > 0 && n_tail < min_tail {
            continue;
        }
        let Ok(fit) = depnet::degree::fit_power_law(samples, x) else {
            continue;
        };
        let ks = ks_oracle(samples, x, fit.gamma);
        if best.is_none_or(|(b, _)| ks < b - 1e-12) {
            best = Some((ks, x));
        }
    }
    best.unwrap().1
}

/// `n` samples: 30% uniform on {1..4}, 70% discrete power law (2.5, xmin 5).
pub fn noisy_mixture(n: usize, seed: u64) -> Vec<u64> {
    use rand::{Rng, SeedableRng};
    let tail_n = n * 7 / 10;
    let mut out = depnet::null_models::power_law_sample(2.5, 5, tail_n, seed).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    out.extend((tail_n..n).map(|_| rng.random_range(1..=4u64)));
    out
}

// ---------------------------------------------------------------- graphs

pub fn digraph(n: usize, edges: &[(usize, usize)]) -> DependencyGraph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_entity(Entity::new(
            format!("v{i}"),
            EntityKind::Fact,
            format!("v{i}"),
        ))
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

/// Symmetric 0/1 adjacency matrix.
pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        if u != v {
            a[u][v] = true;
            a[v][u] = true;
        }
    }
    a
}

pub fn clustering_oracle(a: &[Vec<bool>], v: usize) -> f64 {
    let nb: Vec<usize> = (0..a.len()).filter(|&u| a[v][u]).collect();
    let k = nb.len();
    if k < 2 {
        return 0.0;
    }
    let mut closed = 0;
    for i in 0..k {
        for j in i + 1..k {
            if a[nb[i]][nb[j]] {
                closed += 1;
            }
        }
    }
    closed as f64 / (k * (k - 1) / 2) as f64
}

fn bfs(a: &[Vec<bool>], s: usize) -> Vec<Option<usize>> {
    let mut d = vec![None; a.len()];
    d[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for w in 0..a.len() {
            if a[u][w] && d[w].is_none() {
                d[w] = Some(d[u].unwrap() + 1);
                q.push_back(w);
            }
        }
    }
    d
}

/// Lists every shortest s–t path explicitly and credits interior nodes with
/// the fraction of paths through them, once per unordered pair.
pub fn betweenness_oracle(a: &[Vec<bool>]) -> Vec<f64> {
    let n = a.len();
    let mut bc = vec![0.0; n];
    for s in 0..n {
        let ds = bfs(a, s);
        for t in s + 1..n {
            let Some(target) = ds[t] else { continue };
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![vec![s]];
            while let Some(p) = stack.pop() {
                let last = *p.last().unwrap();
                if last == t {
                    paths.push(p);
                    continue;
                }
                if p.len() - 1 >= target {
                    continue;
                }
                for w in 0..n {
                    if a[last][w] && ds[w] == Some(p.len()) {
                        let mut q = p.clone();
                        q.push(w);
                        stack.push(q);
                    }
                }
            }
            let total = paths.len() as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    bc[v] += 1.0 / total;
                }
            }
        }
    }
    bc
}

/// Solves the damped-walk fixed point (I − dMᵀ − dangling) x = (1−d)/n by
/// Gaussian elimination.
pub fn centrality_oracle(n: usize, edges: &[(usize, usize)], damping: f64) -> Vec<f64> {
    let mut uniq: BTreeSet<(usize, usize)> = BTreeSet::new();
    uniq.extend(edges.iter().copied());
    let mut out = vec![0usize; n];
    for &(s, _) in &uniq {
        out[s] += 1;
    }
    let nf = n as f64;
    let mut m = vec![vec![0.0; n + 1]; n];
    for v in 0..n {
        m[v][v] += 1.0;
        m[v][n] = (1.0 - damping) / nf;
        for u in 0..n {
            if out[u] == 0 {
                m[v][u] -= damping / nf;
            }
        }
    }
    for &(s, d) in &uniq {
        m[d][s] -= damping / out[s] as f64;
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..=n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    (0..n).map(|v| m[v][n] / m[v][v]).collect()
}

/// Modularity straight from the definition over all node pairs.
pub fn modularity_oracle(w: &[Vec<f64>], labels: &[usize]) -> f64 {
    let n = w.len();
    let k: Vec<f64> = w.iter().map(|r| r.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += w[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Every set partition of `n` nodes as a restricted growth string.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for c in 0..=next {
            cur.push(c);
            grow(cur, n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::with_capacity(n), n, &mut out);
    out
}

pub fn best_modularity(w: &[Vec<f64>]) -> f64 {
    all_partitions(w.len())
        .iter()
        .map(|p| modularity_oracle(w, p))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Adjusted Rand index from the pair-counting contingency table.
pub fn ari_oracle(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    let (mut both, mut in_a, mut in_b) = (0.0, 0.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let sa = a[i] == a[j];
            let sb = b[i] == b[j];
            if sa && sb {
                both += 1.0;
            }
            if sa {
                in_a += 1.0;
            }
            if sb {
                in_b += 1.0;
            }
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    let expected = in_a * in_b / pairs;
    let max = (in_a + in_b) / 2.0;
    if max == expected {
        return 1.0;
    }
    (both - expected) / (max - expected)
}

// ---------------------------------------------------------------- mining

/// All itemsets with support ≥ `min_support` by subset enumeration over the
/// distinct items, sorted by size then items.
pub fn itemsets_oracle(db: &[BTreeSet<String>], min_support: usize) -> Vec<(Vec<String>, usize)> {
    let items: Vec<String> = db
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(items.len() <= 16, "oracle is exponential");
    let mut out = Vec::new();
    for mask in 1u32..(1 << items.len()) {
        let set: Vec<String> = (0..items.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| items[i].clone())
            .collect();
        let support = db
            .iter()
            .filter(|t| set.iter().all(|i| t.contains(i)))
            .count();
        if support >= min_support {
            out.push((set, support));
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// (antecedent, consequent, support, confidence) for every split of every
/// frequent itemset, as an unordered set.
pub fn rules_oracle(
    db: &[BTreeSet<String>],
    min_support: usize,
    min_confidence: f64,
) -> BTreeSet<(Vec<String>, Vec<String>, usize, u64)> {
    let supp = |s: &[String]| {
        db.iter()
            .filter(|t| s.iter().all(|i| t.contains(i)))
            .count()
    };
    let mut out = BTreeSet::new();
    for (set, support) in itemsets_oracle(db, min_support) {
        let k = set.len();
        if k < 2 {
            continue;
        }
        for mask in 1u32..(1 << k) - 1 {
            let ante: Vec<String> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| set[i].clone())
                .collect();
            let cons: Vec<String> = (0..k)
                .filter(|i| mask & (1 << i) == 0)
                .map(|i| set[i].clone())
                .collect();
            let conf = support as f64 / supp(&ante) as f64;
            if conf >= min_confidence {
                out.insert((ante, cons, support, conf.to_bits()));
            }
        }
    }
    out
}

// ---------------------------------------------------------------- fixtures

/// Named undirected graphs on at most 8 nodes: classic shapes plus seeded
/// random graphs with at least one edge.
pub fn community_fixtures() -> Vec<(String, usize, Vec<(usize, usize)>)> {
    use rand::{Rng, SeedableRng};
    let mut out: Vec<(String, usize, Vec<(usize, usize)>)> = vec![
        (
            "two triangles".into(),
            6,
            vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
        ),
        (
            "joined triangles".into(),
            6,
            vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        ),
        (
            "barbell".into(),
            8,
            vec![
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (4, 5),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 7),
                (6, 7),
                (3, 4),
            ],
        ),
        (
            "k5".into(),
            5,
            (0..5)
                .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
                .collect(),
        ),
        ("path8".into(), 8, (0..7).map(|i| (i, i + 1)).collect()),
        (
            "cycle8".into(),
            8,
            (0..8).map(|i| (i, (i + 1) % 8)).collect(),
        ),
        ("star7".into(), 8, (1..8).map(|i| (0, i)).collect()),
        (
            "two paths".into(),
            7,
            vec![(0, 1), (1, 2), (3, 4), (4, 5), (5, 6)],
        ),
    ];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    while out.len() < 108 {
        let n = rng.random_range(3..=8);
        let p = [0.25, 0.4, 0.6][rng.random_range(0..3)];
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|_| rng.random_bool(p))
            .collect();
        if !edges.is_empty() {
            out.push((format!("random #{}", out.len()), n, edges));
        }
    }
    out
}

pub fn weight_matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<f64>> {
    let mut w = vec![vec![0.0; n]; n];
    for &(a, b) in edges {
        w[a][b] += 1.0;
        w[b][a] += 1.0;
    }
    w
}

/// Seeded transaction DB: up to 12 distinct items, up to 64 transactions,
/// each item present with a per-DB density.
pub fn random_db(seed: u64) -> Vec<BTreeSet<String>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let items = rng.random_range(1..=12);
    let rows = rng.random_range(1..=64);
    let density = rng.random_range(0.1..0.7);
    (0..rows)
        .map(|_| {
            (0..items)
                .filter(|_| rng.random_bool(density))
                .map(|i| format!("i{i:02}"))
                .collect()
        })
        .collect()
}
