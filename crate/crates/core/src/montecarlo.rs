//! Passage-time campaigns and the statistics that compare them with theory.
//!
//! Trajectory `i` of a campaign always uses stream `(master_seed, i)`, and
//! results are collected by index, so summaries are bit-identical at any
//! thread count or sharding.

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{passage_time, ModelSpec, Passage, PassageResult};
use crate::dist::InnovationLaw;
use crate::error::{Error, Result};
use crate::rng::TrajectorySeed;

pub const DEFAULT_MOMENT_ORDERS: [f64; 4] = [0.25, 0.5, 1.0, 2.0];
pub const QUANTILE_LEVELS: [f64; 7] = [0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999];
pub const MIN_TAIL_SAMPLES: usize = 1000;

/// Runs `n` passages in parallel; element `i` uses trajectory index `i`.
pub fn run_passages<L: InnovationLaw<f64> + ?Sized>(
    model: &ModelSpec<f64>,
    law: &L,
    x0: f64,
    n: usize,
    horizon: u64,
    master_seed: u64,
) -> Result<Vec<PassageResult<f64>>> {
    run_passage_range(model, law, x0, 0..n as u64, horizon, master_seed)
}

/// Passages for an explicit index range, for sharding one campaign across processes.
pub fn run_passage_range<L: InnovationLaw<f64> + ?Sized>(
    model: &ModelSpec<f64>,
    law: &L,
    x0: f64,
    indices: std::ops::Range<u64>,
    horizon: u64,
    master_seed: u64,
) -> Result<Vec<PassageResult<f64>>> {
    indices
        .into_par_iter()
        .map(|i| passage_time(model, law, x0, horizon, TrajectorySeed::new(master_seed, i)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub q: f64,
    /// Mean of `τ^q` over uncensored trajectories.
    pub estimate: f64,
    /// 95% normal half-width; meaningless when the moment is infinite.
    pub half_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantile {
    pub level: f64,
    /// `None` when the quantile falls among censored trajectories.
    pub value: Option<u64>,
}

/// Survival-regression estimate of the index `ρ` in `P(τ > n) ≈ C n^{−ρ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailIndex {
    pub index: f64,
    pub stderr: f64,
    pub window: (u64, u64),
    pub points: usize,
    /// Indices fitted on the lower and upper halves of the window.
    pub lower_half_index: f64,
    pub upper_half_index: f64,
    /// The half-window indices agree to within 0.25 (or 25% of the index).
    pub power_law_consistent: bool,
    /// Hill estimate on the top 1% when none of them is censored.
    pub hill: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSummary {
    pub n_trajectories: usize,
    pub n_censored: usize,
    pub horizon: u64,
    pub censored_fraction: f64,
    /// Fraction of trajectories that hit within the horizon.
    pub return_prob_lower: f64,
    pub tau_quantiles: Vec<Quantile>,
    pub empirical_moments: Vec<MomentEstimate>,
    pub tail_index: Option<TailIndex>,
    /// Estimates are sample statistics, not exact values.
    pub statistical: bool,
}

pub fn summarize(results: &[PassageResult<f64>], horizon: u64, moment_orders: &[f64]) -> McSummary {
    let taus: Vec<Passage> = results.iter().map(|r| r.tau).collect();
    let n = taus.len();
    let hits: Vec<f64> = taus.iter().filter_map(|t| t.hit()).map(|t| t as f64).collect();
    let n_censored = n - hits.len();

    let mut sorted: Vec<u64> = taus.iter().map(|t| t.hit().unwrap_or(u64::MAX)).collect();
    sorted.sort_unstable();
    let tau_quantiles = QUANTILE_LEVELS
        .iter()
        .map(|&level| Quantile {
            level,
            value: rank_quantile(&sorted, level).filter(|&v| v != u64::MAX),
        })
        .collect();

    let empirical_moments = moment_orders
        .iter()
        .map(|&q| {
            let m = hits.len() as f64;
            let (mut s, mut s2) = (0.0, 0.0);
            for &t in &hits {
                let v = t.powf(q);
                s += v;
                s2 += v * v;
            }
            let mean = s / m;
            let var = if hits.len() > 1 { (s2 - m * mean * mean).max(0.0) / (m - 1.0) } else { 0.0 };
            MomentEstimate {
                q,
                estimate: mean,
                half_width: 1.96 * (var / m).sqrt(),
            }
        })
        .collect();

    McSummary {
        n_trajectories: n,
        n_censored,
        horizon,
        censored_fraction: if n > 0 { n_censored as f64 / n as f64 } else { 0.0 },
        return_prob_lower: if n > 0 { hits.len() as f64 / n as f64 } else { 0.0 },
        tau_quantiles,
        empirical_moments,
        tail_index: estimate_tail_index(&taus, horizon).ok(),
        statistical: true,
    }
}

pub fn run_campaign<L: InnovationLaw<f64> + ?Sized>(
    model: &ModelSpec<f64>,
    law: &L,
    x0: f64,
    n: usize,
    horizon: u64,
    master_seed: u64,
) -> Result<McSummary> {
    if n == 0 {
        return Err(Error::Domain("a campaign needs at least one trajectory".into()));
    }
    let results = run_passages(model, law, x0, n, horizon, master_seed)?;
    Ok(summarize(&results, horizon, &DEFAULT_MOMENT_ORDERS))
}

/// Nearest-rank quantile of sorted data.
fn rank_quantile<T: Copy>(sorted: &[T], level: f64) -> Option<T> {
    if sorted.is_empty() {
        return None;
    }
    let k = ((level * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    Some(sorted[k - 1])
}

struct Fit {
    slope: f64,
    stderr: f64,
}

fn least_squares(xs: &[f64], ys: &[f64]) -> Option<Fit> {
    let m = xs.len();
    if m < 3 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / m as f64;
    let my = ys.iter().sum::<f64>() / m as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum();
    Some(Fit {
        slope,
        stderr: (sse / (m as f64 - 2.0) / sxx).sqrt(),
    })
}

/// Fits `ln P̂(τ > n)` against `ln n` on about 40 log-spaced points in
/// `[median, min(q_0.999, horizon/10)]`. Censored samples count as
/// exceeding every `n` below the horizon.
pub fn estimate_tail_index(taus: &[Passage], horizon: u64) -> Result<TailIndex> {
    let mut sorted: Vec<u64> = taus.iter().map(|t| t.hit().unwrap_or(u64::MAX)).collect();
    let uncensored = sorted.iter().filter(|&&t| t != u64::MAX).count();
    if uncensored < MIN_TAIL_SAMPLES {
        return Err(Error::Estimation(format!(
            "{uncensored} uncensored samples; need at least {MIN_TAIL_SAMPLES}"
        )));
    }
    sorted.sort_unstable();
    let total = sorted.len() as f64;
    let lo = rank_quantile(&sorted, 0.5).unwrap().max(1);
    let hi = rank_quantile(&sorted, 0.999).unwrap().min(horizon / 10);
    if !(hi > lo) {
        return Err(Error::Estimation(format!("fit window [{lo}, {hi}] is empty")));
    }

    let survival = |n: u64| {
        let above = sorted.len() - sorted.partition_point(|&t| t <= n);
        above as f64 / total
    };
    let (llo, lhi) = ((lo as f64).ln(), (hi as f64).ln());
    let mut ns: Vec<u64> = (0..40)
        .map(|i| (llo + (lhi - llo) * i as f64 / 39.0).exp().round() as u64)
        .collect();
    ns.dedup();
    let (xs, ys): (Vec<f64>, Vec<f64>) = ns
        .iter()
        .map(|&n| (n, survival(n)))
        .filter(|&(_, s)| s > 0.0)
        .map(|(n, s)| ((n as f64).ln(), s.ln()))
        .unzip();
    let fit = least_squares(&xs, &ys)
        .ok_or_else(|| Error::Estimation("survival curve is flat or too short in the fit window".into()))?;

    let half = xs.len() / 2;
    let lower = least_squares(&xs[..=half], &ys[..=half]).map_or(f64::NAN, |f| -f.slope);
    let upper = least_squares(&xs[half..], &ys[half..]).map_or(f64::NAN, |f| -f.slope);
    let index = -fit.slope;
    let power_law_consistent = (lower - upper).abs() <= 0.25f64.max(0.25 * index.abs());

    let k = sorted.len() / 100;
    let hill = (k >= 10 && sorted[sorted.len() - 1] != u64::MAX).then(|| {
        let top = &sorted[sorted.len() - k..];
        let base = (sorted[sorted.len() - k - 1] as f64).ln();
        let mean_excess = top.iter().map(|&t| (t as f64).ln() - base).sum::<f64>() / k as f64;
        1.0 / mean_excess
    });

    Ok(TailIndex {
        index,
        stderr: fit.stderr,
        window: (lo, hi),
        points: xs.len(),
        lower_half_index: lower,
        upper_half_index: upper,
        power_law_consistent,
        hill: hill.filter(|h| h.is_finite()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MomentVerdict {
    Convergent,
    Divergent,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentStability {
    pub verdict: MomentVerdict,
    /// Typical growth of the sample `q`-th moment per doubling of the sample size.
    pub growth_per_doubling: f64,
    /// Largest single term's share of the full-sample sum.
    pub top_share: f64,
    /// Moments over the nested prefixes n/4, n/2, n of the shuffled sample.
    pub prefix_moments: [f64; 3],
}

const STABILITY_SHUFFLE_SEED: u64 = 0x5eed_0f7a_11ce;
const MIN_BLOCK: usize = 16;

/// Classifies whether the `q`-th moment of the sampled law looks finite.
///
/// A single sample's running mean is dominated by its largest terms when the
/// moment is infinite, so its growth over nested prefixes is erratic. The
/// verdict instead tracks the median block mean over disjoint blocks of
/// sizes n/4, n/8, …, n/1024 (at least 16 per block) of one deterministic
/// shuffle; its log-log slope gives the typical growth per doubling.
/// CONVERGENT below 10% growth, DIVERGENT above 50%.
pub fn moment_stability_diagnostic(samples: &[f64], q: f64) -> MomentStability {
    let mut y: Vec<f64> = samples.iter().map(|&t| t.powf(q)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(STABILITY_SHUFFLE_SEED);
    y.shuffle(&mut rng);
    let n = y.len();

    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    let prefix_moments = if n >= 4 {
        [mean(&y[..n / 4]), mean(&y[..n / 2]), mean(&y)]
    } else {
        [f64::NAN; 3]
    };
    let sum: f64 = y.iter().sum();
    let top_share = if sum > 0.0 {
        y.iter().copied().fold(0.0, f64::max) / sum
    } else {
        0.0
    };

    let mut xs = Vec::new();
    let mut ls = Vec::new();
    for k in 2..=10u32 {
        let blocks = 1usize << k;
        let size = n / blocks;
        if size < MIN_BLOCK {
            break;
        }
        let mut means: Vec<f64> = y[..size * blocks].chunks_exact(size).map(mean).collect();
        means.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let med = 0.5 * (means[blocks / 2 - 1] + means[blocks / 2]);
        xs.push((size as f64).ln());
        ls.push(med.ln());
    }
    let all_equal = y.windows(2).all(|w| w[0] == w[1]);
    let growth = if all_equal && n > 0 {
        1.0
    } else if ls.iter().all(|l| l.is_finite()) {
        least_squares(&xs, &ls).map_or(f64::NAN, |f| 2f64.powf(f.slope))
    } else {
        f64::NAN
    };
    let verdict = if (growth - 1.0).abs() < 0.1 {
        MomentVerdict::Convergent
    } else if growth > 1.5 {
        MomentVerdict::Divergent
    } else {
        MomentVerdict::Inconclusive
    };
    MomentStability {
        verdict,
        growth_per_doubling: growth,
        top_share,
        prefix_moments,
    }
}

/// `hit(h) ≈ p∞ − β h^{−κ}` fitted to the hit-fraction curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaturationFit {
    pub p_infinity: f64,
    pub beta: f64,
    pub kappa: f64,
    pub rms_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransienceReport {
    pub horizons: Vec<u64>,
    /// Fraction hit by each horizon, on one nested set of trajectories.
    pub hit_fractions: Vec<f64>,
    pub extrapolated: Option<SaturationFit>,
    pub n_trajectories: usize,
    pub statistical: bool,
}

/// Fits the saturation curve by a κ grid search with linear least squares in `(p∞, β)`.
pub fn fit_saturation(horizons: &[u64], fractions: &[f64]) -> Option<SaturationFit> {
    if horizons.len() < 3 || horizons.len() != fractions.len() {
        return None;
    }
    let mut best: Option<SaturationFit> = None;
    for i in 0..=400 {
        let kappa = 10f64.powf(-3.0 + 3.5 * i as f64 / 400.0);
        let xs: Vec<f64> = horizons.iter().map(|&h| (h as f64).powf(-kappa)).collect();
        let m = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / m;
        let my = fractions.iter().sum::<f64>() / m;
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        if !(sxx > 0.0) {
            continue;
        }
        let sxy: f64 = xs.iter().zip(fractions).map(|(x, y)| (x - mx) * (y - my)).sum();
        let slope = sxy / sxx;
        let p_inf = my - slope * mx;
        let rss: f64 = xs
            .iter()
            .zip(fractions)
            .map(|(x, y)| (y - p_inf - slope * x).powi(2))
            .sum();
        let fit = SaturationFit {
            p_infinity: p_inf,
            beta: -slope,
            kappa,
            rms_residual: (rss / m).sqrt(),
        };
        if best.is_none_or(|b| fit.rms_residual < b.rms_residual) {
            best = Some(fit);
        }
    }
    best
}

pub fn transience_probe<L: InnovationLaw<f64> + ?Sized>(
    model: &ModelSpec<f64>,
    law: &L,
    x0: f64,
    horizons: &[u64],
    n: usize,
    master_seed: u64,
) -> Result<TransienceReport> {
    if horizons.is_empty() || horizons.windows(2).any(|w| w[1] <= w[0]) || horizons[0] == 0 {
        return Err(Error::Domain("horizons must be positive and strictly increasing".into()));
    }
    if n == 0 {
        return Ok(TransienceReport {
            horizons: horizons.to_vec(),
            hit_fractions: Vec::new(),
            extrapolated: None,
            n_trajectories: 0,
            statistical: true,
        });
    }
    let max_h = *horizons.last().unwrap();
    let results = run_passages(model, law, x0, n, max_h, master_seed)?;
    let mut hits: Vec<u64> = results.iter().filter_map(|r| r.tau.hit()).collect();
    hits.sort_unstable();
    let hit_fractions: Vec<f64> = horizons
        .iter()
        .map(|&h| hits.partition_point(|&t| t <= h) as f64 / n as f64)
        .collect();
    Ok(TransienceReport {
        horizons: horizons.to_vec(),
        extrapolated: fit_saturation(horizons, &hit_fractions),
        hit_fractions,
        n_trajectories: n,
        statistical: true,
    })
}
