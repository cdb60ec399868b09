#![allow(dead_code, clippy::excessive_precision)]

/// Values computed once with 40-digit arithmetic and frozen here.
pub mod frozen {
    /// (δ, θ, K)
    pub const K: [(f64, f64, f64); 3] = [
        (0.1, 0.4, 10.422285447269722786),
        (-0.5, 0.8, 5.8113610415525748596),
        (0.3, 0.6, 8.5201520740955863646),
    ];
    /// (δ, θ, L)
    pub const L: [(f64, f64, f64); 3] = [
        (0.5, 0.3, -4.1763259605677981321),
        (2.0, 0.7, -7.3260073260073251374),
        (5.0, 0.5, -8.1269841269841269841),
    ];
    /// (c, θ, root of cK = 1)
    pub const DELTA0_K: [(f64, f64, f64); 3] = [
        (0.05, 0.5, 0.38486769718395912016),
        (0.02, 0.3, 0.23047178874603800704),
        (0.1, 0.7, 0.46618743199048213828),
    ];
    /// (c, θ, root of cL + δ = 0)
    pub const DELTA0_L: [(f64, f64, f64); 3] = [
        (1.0, 0.5, 12.8138855349415131),
        (0.05, 0.5, 0.11513230281604087984),
        (0.1, 0.3, 0.4041424313280908943),
    ];
    /// Down drift, γ = 0.5, positive law θ = 0.7, c = 0.2, g(y) = y^0.2: (x, Dg).
    pub const DRIFT_DOWN_RECURRENT: [(f64, f64); 2] =
        [(100.0, -0.026637534738556943832), (1e4, -0.010093653465376530675)];
    /// Down drift, γ = 0.5, positive law θ = 0.3, c = 0.075, g(y) = max(y, 1)^−0.2.
    pub const DRIFT_DOWN_TRANSIENT: [(f64, f64); 2] =
        [(100.0, -0.0049695189674856361933), (1e4, -0.00094117439763567238149)];
    /// Up drift, γ = 0.5, negative law θ = 0.3, c = 0.1, g(y) = y^0.5.
    pub const DRIFT_UP_OPPOSING: [(f64, f64); 2] =
        [(100.0, -0.59024428783802628117), (1e4, -2.1425242131553763117)];
    /// Oscillating positive law θ = 0.6, c = 0.15, amplitude 0.4: (δ, a, b, E(α^δ 1{a ≤ α < b})).
    pub const TRUNCATED_OSCILLATING: [(f64, f64, Option<f64>, f64); 3] = [
        (0.3, 0.5, Some(50.0), 0.7386590145977607564),
        (0.5, 2.0, Some(1e4), 0.87117248465206295363),
        (0.2, 0.0, None, 1.0149594320486815462),
    ];
}

/// `E(α^δ 1{a ≤ α < b})` for the positive law with uniform body on `[0, 1)`
/// and density `c y^{−1−θ}` beyond 1, by direct antiderivatives.
pub fn truncated_pareto(theta: f64, c: f64, delta: f64, a: f64, b: Option<f64>) -> f64 {
    let body = 1.0 - c / theta;
    let mut total = 0.0;
    if a < 1.0 {
        let hi = b.map_or(1.0, |b| b.min(1.0));
        total += body * (hi.powf(delta + 1.0) - a.powf(delta + 1.0)) / (delta + 1.0);
    }
    let lo = a.max(1.0);
    let e = delta - theta;
    match b {
        Some(b) if b <= lo => {}
        Some(b) => total += c * (b.powf(e) - lo.powf(e)) / e,
        None => total += -c * lo.powf(e) / e,
    }
    total
}

/// Number of sign changes of `f` on `n` evenly spaced points of `[lo, hi]`.
pub fn sign_changes(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> usize {
    let vals: Vec<f64> = (0..n)
        .map(|i| f(lo + (hi - lo) * i as f64 / (n - 1) as f64))
        .filter(|v| *v != 0.0)
        .collect();
    vals.windows(2).filter(|w| w[0].signum() != w[1].signum()).count()
}

/// Inverse-CDF draws from `P(X > t) = t^{−index}`, `t ≥ 1`.
pub fn pareto_samples(index: f64, n: usize, seed: u64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            (1.0 - u).powf(-1.0 / index)
        })
        .collect()
}
