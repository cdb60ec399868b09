//! Acceptance criteria 1–10. Each test prints one PASS/FAIL line.

mod common;

use std::time::Instant;

use heavytail::chain::{deterministic_hitting_time, ModelSpec, SkeletonVariant};
use heavytail::classify::{classify, proof_recipe, Regime};
use heavytail::dist::{truncated_expectation, InnovationSpec, Part};
use heavytail::drift::{check_condition, default_grid, drift_asymptotic, drift_quadrature, partition_decomposition, LyapunovSpec};
use heavytail::montecarlo::{estimate_tail_index, moment_stability_diagnostic, run_passages, transience_probe, MomentVerdict};
use heavytail::specialfn::{delta0_k, delta0_l, k_const, k_criticality_margin, k_integral, l_const, l_integral, pi_csc_pi};
use heavytail::{Error, Passage};
use rand::{Rng, SeedableRng};

const SEED: u64 = 20_240_917;

fn report(n: u32, name: &str, ok: bool, detail: String, start: Instant) {
    println!(
        "criterion {n:>2} {}: {name} ({detail}; {:.1} s)",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_01_special_function_identities() {
    let t0 = Instant::now();
    let mut worst_k = 0.0f64;
    for d in [-0.5f64, -0.1, 0.1, 0.3] {
        for th in [0.4f64, 0.6, 0.8] {
            if d >= th {
                continue;
            }
            let k = k_const(d, th).unwrap();
            worst_k = worst_k.max((k_integral(d, th).unwrap() / d - k).abs() / k.abs());
        }
    }
    let mut worst_l = 0.0f64;
    for d in [0.1f64, 0.5, 1.0, 2.0, 5.0] {
        for th in [0.3f64, 0.5, 0.7] {
            let l = l_const(d, th).unwrap();
            worst_l = worst_l.max((l_integral(d, th).unwrap() - l - 1.0 / th).abs() / l.abs().max(1.0));
        }
    }
    let k0 = (k_const(0.0f64, 0.5).unwrap() - 2.0 * std::f64::consts::PI).abs();
    let l0 = (l_const(0.0f64, 0.5).unwrap() + 2.0).abs();
    let secs = t0.elapsed().as_secs_f64();
    let ok = worst_k <= 1e-6 && worst_l <= 1e-6 && k0 <= 1e-10 && l0 <= 1e-10 && secs < 5.0;
    report(1, "K and L integrals match closed forms", ok,
        format!("K rel {worst_k:.1e}, L rel {worst_l:.1e}, K(0,.5) err {k0:.1e}, L(0,.5) err {l0:.1e}"), t0);
}

#[test]
fn criterion_02_critical_roots() {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    let mut scans_ok = true;
    let mut k_cases = 0;
    for c in [0.02f64, 0.05, 0.1] {
        for th in [0.3f64, 0.5, 0.7] {
            if c * pi_csc_pi(th) < th {
                k_cases += 1;
                assert!(k_criticality_margin(c, th) < 0.0);
                let r = delta0_k(c, th).unwrap();
                worst = worst.max(r.residual.abs());
                // Log-spaced in the gap θ − δ, where K blows up.
                let f = |s: f64| c * k_const(th - th * 10f64.powf(-12.0 * s), th).unwrap() - 1.0;
                scans_ok &= common::sign_changes(f, 0.0, 1.0, 1000) == 1;
            }
            let r = delta0_l(c, th).unwrap();
            worst = worst.max(r.residual.abs());
            let f = |d: f64| c * l_const(d, th).unwrap() + d;
            scans_ok &= common::sign_changes(f, 0.0, (4.0 * r.delta0).max(1.0), 1000) == 1;
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    let ok = worst <= 1e-9 && scans_ok && k_cases > 0 && secs < 5.0;
    report(2, "critical roots are unique with small residuals", ok,
        format!("max residual {worst:.1e}, {k_cases} K cases + 9 L cases, single sign change {scans_ok}"), t0);
}

#[test]
fn criterion_03_deterministic_hitting() {
    let t0 = Instant::now();
    let mut ratios = Vec::new();
    let mut ok = true;
    for g in [0.3, 0.5, 0.7] {
        let p = deterministic_hitting_time(g, 1e6, 1.0, SkeletonVariant::Plain).unwrap();
        let rp = p.exact_steps as f64 / p.asymptotic;
        let s = deterministic_hitting_time(g, 1e6, 2.0, SkeletonVariant::Shifted).unwrap();
        let rs = s.exact_steps as f64 / s.asymptotic;
        ok &= (0.98..=1.02).contains(&rp) && (0.95..=1.05).contains(&rs);
        ratios.push(format!("γ={g}: {rp:.4}/{rs:.4}"));
    }
    ok &= t0.elapsed().as_secs_f64() < 10.0;
    report(3, "skeleton hitting times follow x0^(1-γ)/(1-γ)", ok, ratios.join(", "), t0);
}

struct Certificate {
    holds: bool,
    worst_partition: f64,
    max_dg: f64,
}

fn certify(model: ModelSpec<f64>, law: InnovationSpec<f64>, expect: Regime, delta: f64) -> Certificate {
    let verdict = classify(&model, &law).unwrap();
    assert_eq!(verdict.regime, expect);
    let recipe = proof_recipe(&model, &law, &verdict).unwrap();
    assert!((recipe.lyapunov.delta - delta).abs() < 1e-12, "recipe δ = {}", recipe.lyapunov.delta);
    let grid = default_grid();
    let rep = check_condition(&model, &law, &recipe.lyapunov, recipe.condition, &grid).unwrap();
    let mut worst_partition = 0.0f64;
    for (&x, &dg) in grid.iter().zip(&rep.dg_values) {
        let parts = partition_decomposition(&model, &law, &recipe.lyapunov, x, 0.5).unwrap();
        let sum: f64 = parts.iter().map(|p| p.value).sum();
        worst_partition = worst_partition.max((sum - dg).abs() / dg.abs());
    }
    Certificate {
        holds: rep.holds,
        worst_partition,
        max_dg: rep.dg_values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

#[test]
fn criterion_04_drift_sign_certificates() {
    let t0 = Instant::now();
    let down = ModelSpec::down(0.5, 2.0).unwrap();
    let up = ModelSpec::up(0.5, 0.0).unwrap();
    let i = certify(down, InnovationSpec::positive(0.7, 0.2).unwrap(), Regime::Recurrent, 0.35);
    let ii = certify(down, InnovationSpec::positive(0.3, 0.075).unwrap(), Regime::Transient, -0.2);
    let iii = certify(up, InnovationSpec::negative(0.3, 0.1).unwrap(), Regime::Recurrent, 0.5);

    // The recurrent certificate at the stated δ = 0.2 as well.
    let g = LyapunovSpec::new(0.2).unwrap();
    let at_02 = check_condition(&down, &InnovationSpec::positive(0.7, 0.2).unwrap(), &g,
        heavytail::drift::Condition::Recurrence, &default_grid()).unwrap();

    let strict = |c: &Certificate| c.holds && c.max_dg < 0.0;
    let partition = i.worst_partition.max(ii.worst_partition).max(iii.worst_partition);
    let ok = strict(&i) && at_02.holds && at_02.dg_values.iter().all(|&d| d < 0.0)
        && ii.holds && strict(&iii) && partition <= 1e-10 && t0.elapsed().as_secs_f64() < 60.0;
    report(4, "drift certificates hold on [1e2, 1e6]", ok, format!(
        "max Dg {:.2e} / {:.2e} / {:.2e}, partition rel {partition:.1e}",
        i.max_dg, ii.max_dg, iii.max_dg), t0);
}

#[test]
fn criterion_05_quadrature_vs_asymptotic() {
    let t0 = Instant::now();
    let m = ModelSpec::down(0.5, 2.0).unwrap();
    let law = InnovationSpec::positive(0.7, 0.2).unwrap();
    let g = LyapunovSpec::new(0.2).unwrap();
    let q = drift_quadrature(&m, &law, &g, 1.0, 1e6).unwrap().value;
    let a = drift_asymptotic(&m, &law, 0.2, 1e6).unwrap().value;
    let ratio = q / a;
    report(5, "drift quadrature agrees with the leading-order formula", (0.8..=1.2).contains(&ratio),
        format!("ratio {ratio:.5} at x = 1e6"), t0);
}

fn taus(results: &[heavytail::PassageResult<f64>]) -> Vec<Passage> {
    results.iter().map(|r| r.tau).collect()
}

fn hit_times(results: &[heavytail::PassageResult<f64>]) -> Vec<f64> {
    results.iter().filter_map(|r| r.tau.hit()).map(|t| t as f64).collect()
}

#[test]
fn criterion_06_recurrent_campaign() {
    let t0 = Instant::now();
    let m = ModelSpec::down(0.5, 2.0).unwrap();
    let law = InnovationSpec::positive(0.7, 0.2).unwrap();
    // The first 10⁴ trajectories are the N = 10⁴ campaign of the same seed.
    let res = run_passages(&m, &law, 100.0, 100_000, 1_000_000, SEED).unwrap();
    let all_hit = res[..10_000].iter().all(|r| !r.tau.is_censored());
    let tail = estimate_tail_index(&taus(&res), 1_000_000).unwrap();
    let t = hit_times(&res);
    let low = moment_stability_diagnostic(&t, 0.7);
    let high = moment_stability_diagnostic(&t, 2.8);
    let ok = all_hit && (tail.index - 1.4).abs() <= 0.15
        && low.verdict == MomentVerdict::Convergent && high.verdict == MomentVerdict::Divergent;
    report(6, "recurrent campaign: all hit, tail index near 1.4", ok, format!(
        "all hit {all_hit}, index {:.3} ± {:.3}, q=0.7 {:?} ({:.3}), q=2.8 {:?} ({:.3})",
        tail.index, tail.stderr, low.verdict, low.growth_per_doubling, high.verdict, high.growth_per_doubling), t0);
}

fn increments_shrink(f: &[f64]) -> bool {
    let inc: Vec<f64> = f.windows(2).map(|w| w[1] - w[0]).collect();
    inc.windows(2).all(|w| w[1] <= 0.5 * w[0])
}

#[test]
fn criterion_07_transient_campaign() {
    let t0 = Instant::now();
    let m = ModelSpec::down(0.5, 2.0).unwrap();
    let law = InnovationSpec::positive(0.3, 0.1).unwrap();
    let hs = [100, 1_000, 10_000, 100_000, 1_000_000];
    let r = transience_probe(&m, &law, 100.0, &hs, 10_000, SEED).unwrap();
    let f = &r.hit_fractions;
    let ok = f[4] < 0.95 && increments_shrink(f);
    report(7, "transient campaign: hit fraction saturates below 0.95", ok, format!(
        "fractions {f:?}, extrapolated {:?}", r.extrapolated.map(|e| e.p_infinity)), t0);
}

#[test]
fn criterion_08_up_drift_campaigns() {
    let t0 = Instant::now();
    let up = ModelSpec::up(0.5, 0.0).unwrap();
    let res = run_passages(&up, &InnovationSpec::negative(0.3, 0.1).unwrap(), 100.0, 10_000, 1_000_000, SEED).unwrap();
    let all_hit = res.iter().all(|r| !r.tau.is_censored());
    let d = moment_stability_diagnostic(&hit_times(&res), 4.0);

    let hs = [100, 1_000, 10_000, 100_000];
    let light = InnovationSpec::negative(0.7, 0.2).unwrap();
    let r = transience_probe(&up, &light, 100.0, &hs, 10_000, SEED).unwrap();
    let f = &r.hit_fractions;
    let saturates = f[3] < 0.99 && increments_shrink(f);
    let ok = all_hit && d.verdict == MomentVerdict::Convergent && saturates;
    report(8, "up drift: absorbed with all moments, or escapes", ok, format!(
        "θ=0.3 all hit {all_hit}, q=4 {:?} ({:.3}); θ=0.7 fractions {f:?}",
        d.verdict, d.growth_per_doubling), t0);
}

#[test]
fn criterion_09_critical_campaign() {
    let t0 = Instant::now();
    let m = ModelSpec::down(0.5, 2.0).unwrap();
    let law = InnovationSpec::positive(0.5, 0.05).unwrap();
    let c = classify(&m, &law).unwrap();
    let d0 = delta0_k(0.05, 0.5).unwrap().delta0;
    let regime_ok = c.regime == Regime::RecurrentCritical && c.delta0 == Some(d0);
    let res = run_passages(&m, &law, 100.0, 100_000, 1_000_000, SEED).unwrap();
    let tail = estimate_tail_index(&taus(&res), 1_000_000).unwrap();
    let target = d0 / 0.5;
    let ok = regime_ok && (tail.index - target).abs() <= 0.25;
    report(9, "critical campaign: tail index near δ₀/(1-γ)", ok, format!(
        "regime {}, target {target:.4}, index {:.3} ± {:.3}, window {:?}",
        c.regime, tail.index, tail.stderr, tail.window), t0);
}

#[test]
fn criterion_10_truncated_moment_identity() {
    let t0 = Instant::now();
    let (theta, c) = (0.6, 0.2);
    let law = InnovationSpec::positive(theta, c).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for i in 0..20 {
        let delta = rng.random_range(0.02..theta);
        let a = rng.random_range(0.0..5.0);
        let b = if i % 4 == 3 { None } else { Some(a + rng.random_range(0.0..1e3)) };
        let got = truncated_expectation(&law, Part::Positive, delta, a, b).unwrap();
        let want = common::truncated_pareto(theta, c, delta, a, b);
        worst = worst.max((got - want).abs() / want.abs().max(1e-300));
    }
    let mut divergence_exact = true;
    for d in [0.1, 0.3, 0.59, 0.599_999, 0.6, 0.600_001, 0.8, 1.5] {
        let r = truncated_expectation(&law, Part::Positive, d, 1.0, None);
        divergence_exact &= matches!(r, Err(Error::Divergent(_))) == (d >= theta);
    }
    report(10, "truncated moments match direct integration", worst <= 1e-8 && divergence_exact,
        format!("max rel err {worst:.1e}, divergence iff δ ≥ θ: {divergence_exact}"), t0);
}
