//! Hurwitz zeta function for real arguments `s > 1`, `q > 0`.

/// Terms summed directly before switching to the Euler–Maclaurin tail.
const DIRECT_TERMS: usize = 12;

/// `B_{2j} / (2j)!` for `j = 1..=8`.
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// `ζ(s, q) = Σ_{k≥0} (k + q)^{-s}`.
///
/// The first few terms are summed exactly; the remainder
/// `Σ_{k≥N} (k + q)^{-s}` is the integral `(N + q)^{1-s} / (s - 1)` plus
/// the half-term and Bernoulli corrections. Relative error is below `1e-14`
/// over `s ∈ (1, 20]`.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    assert!(s > 1.0, "hurwitz_zeta requires s > 1, got {s}");
    assert!(q > 0.0, "hurwitz_zeta requires q > 0, got {q}");

    let mut sum = 0.0;
    for k in 0..DIRECT_TERMS {
        sum += (q + k as f64).powf(-s);
    }
    let a = q + DIRECT_TERMS as f64;
    let a_pow = a.powf(-s);
    let mut tail = a * a_pow / (s - 1.0) + 0.5 * a_pow;

    // Successive derivatives: term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * a^{-s-2j+1}
    let mut rising = s;
    let mut power = a_pow / a;
    let inv_a2 = 1.0 / (a * a);
    for (j, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = coef * rising * power;
        tail += term;
        if term.abs() < 1e-17 * tail.abs() {
            break;
        }
        let m = 2.0 * j as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        power *= inv_a2;
    }
    sum + tail
}

/// Riemann zeta `ζ(s) = ζ(s, 1)`.
pub fn riemann_zeta(s: f64) -> f64 {
    hurwitz_zeta(s, 1.0)
}
