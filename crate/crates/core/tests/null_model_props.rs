mod common;

use common::zeta_direct;
use depnet::degree::{degree_histogram, select_xmin};
use depnet::null_models::{
    erdos_renyi, node_id, power_law_sample, preferential_attachment, GenSpec, Model,
};
use depnet::Direction;
use proptest::prelude::*;

fn ln_binomial_pmf(n: u64, k: u64, p: f64) -> f64 {
    let ln_fact = |x: u64| (1..=x).map(|i| (i as f64).ln()).sum::<f64>();
    ln_fact(n) - ln_fact(k) - ln_fact(n - k) + k as f64 * p.ln() + (n - k) as f64 * (1.0 - p).ln()
}

/// Upper 1% point of chi-square by the Wilson–Hilferty approximation.
fn chi2_critical_01(df: f64) -> f64 {
    let z = 2.326_347_874_040_841;
    let h = 2.0 / (9.0 * df);
    df * (1.0 - h + z * h.sqrt()).powi(3)
}

#[test]
fn er_in_degrees_follow_the_binomial() {
    for (n, p, seed) in [
        (2_000usize, 0.005, 1u64),
        (1_000, 0.01, 2),
        (3_000, 0.002, 3),
    ] {
        let g = erdos_renyi(n, p, seed).unwrap();
        let hist = degree_histogram(&g, Direction::In, None);
        let trials = (n - 1) as u64;
        let expected: Vec<f64> = (0..=trials)
            .map(|k| n as f64 * ln_binomial_pmf(trials, k, p).exp())
            .collect();
        // Pool degrees into bins holding an expected count of at least 5.
        let mut bins: Vec<(f64, f64)> = Vec::new();
        let mut cur = (0.0, 0.0);
        for k in 0..=trials {
            cur.0 += expected[k as usize];
            cur.1 += *hist.histogram.get(&k).unwrap_or(&0) as f64;
            if cur.0 >= 5.0 {
                bins.push(cur);
                cur = (0.0, 0.0);
            }
        }
        let last = bins.last_mut().unwrap();
        last.0 += cur.0;
        last.1 += cur.1;
        let stat: f64 = bins.iter().map(|(e, o)| (o - e).powi(2) / e).sum();
        let df = (bins.len() - 1) as f64;
        assert!(stat < chi2_critical_01(df), "n={n}: chi2 {stat} df {df}");
    }
}

#[test]
fn er_extremes_and_expected_count() {
    assert_eq!(erdos_renyi(50, 0.0, 1).unwrap().edge_count(), 0);
    assert_eq!(erdos_renyi(4, 1.0, 1).unwrap().edge_count(), 12);
    let g = erdos_renyi(10_000, 1e-3, 7).unwrap();
    let mean: f64 = 10_000.0 * 9_999.0 * 1e-3;
    let sd = (mean * (1.0 - 1e-3)).sqrt();
    assert!((g.edge_count() as f64 - mean).abs() <= 3.0 * sd);
}

proptest! {
    #[test]
    fn pa_edge_count_and_out_degrees(m in 1usize..6, extra in 1usize..150, seed in any::<u64>()) {
        let n = m + extra;
        let g = preferential_attachment(n, m, seed).unwrap();
        prop_assert_eq!(g.edge_count(), (m + 1) + m * (n - m - 1));
        for i in m + 1..n {
            prop_assert_eq!(g.degree(&node_id(i, n), Direction::Out).unwrap(), m);
        }
    }

    #[test]
    fn generators_are_deterministic(n in 2usize..300, seed in any::<u64>()) {
        let er = GenSpec { model: Model::ErdosRenyi { n, p: 0.05 }, seed };
        prop_assert_eq!(er.generate().unwrap(), er.generate().unwrap());
        let m = 1 + n % 3;
        prop_assume!(m < n);
        let pa = GenSpec { model: Model::PreferentialAttachment { n, m }, seed };
        prop_assert_eq!(pa.generate().unwrap(), pa.generate().unwrap());
        prop_assert_eq!(
            power_law_sample(2.3, 2, n, seed).unwrap(),
            power_law_sample(2.3, 2, n, seed).unwrap()
        );
    }

    #[test]
    fn samples_respect_support(gamma in 1.05f64..5.0, xmin in 1u64..50, seed in any::<u64>()) {
        let s = power_law_sample(gamma, xmin, 500, seed).unwrap();
        prop_assert!(s.iter().all(|&x| x >= xmin));
    }
}

#[test]
fn invalid_parameters() {
    assert!(erdos_renyi(0, 0.5, 1).is_err());
    assert!(erdos_renyi(5, 1.5, 1).is_err());
    assert!(preferential_attachment(3, 3, 1).is_err());
    assert!(preferential_attachment(3, 0, 1).is_err());
    assert!(power_law_sample(1.0, 1, 5, 1).is_err());
    assert!(power_law_sample(2.0, 0, 5, 1).is_err());
}

#[test]
fn sample_mean_matches_zeta_ratio() {
    let s = power_law_sample(3.0, 1, 100_000, 3).unwrap();
    let mean = s.iter().sum::<u64>() as f64 / s.len() as f64;
    let analytic = zeta_direct(2.0, 1.0) / zeta_direct(3.0, 1.0);
    assert!((analytic - 1.368_432_777_620_205_9).abs() < 1e-6);
    assert!((mean - analytic).abs() <= 0.02, "mean {mean}");
}

#[test]
fn pa_is_scale_free_and_er_is_not() {
    let pa = preferential_attachment(100_000, 3, 11).unwrap();
    let pa_fit = select_xmin(&degree_histogram(&pa, Direction::In, None).samples()).unwrap();
    assert!(
        (2.5..=3.5).contains(&pa_fit.gamma),
        "gamma {}",
        pa_fit.gamma
    );
    assert!(pa_fit.ks_distance < 0.05);

    let n = 100_000usize;
    let p = pa.edge_count() as f64 / (n as f64 * (n - 1) as f64);
    let er = erdos_renyi(n, p, 5).unwrap();
    let er_fit = select_xmin(&degree_histogram(&er, Direction::In, None).samples()).unwrap();
    assert!(er_fit.ks_distance > pa_fit.ks_distance);
}
