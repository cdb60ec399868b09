mod common;

use common::frozen;
use heavytail::chain::ModelSpec;
use heavytail::dist::{truncated_expectation, InnovationSpec, Part, Support, TailProfile};
use heavytail::drift::{drift_quadrature, LyapunovSpec};
use heavytail::specialfn::{delta0_k, delta0_l, k_const, k_integral, l_const, l_integral};
use heavytail::Error;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn closed_form_constants() {
    for (d, t, k) in frozen::K {
        assert!(rel(k_const(d, t).unwrap(), k) < 1e-12, "K({d}, {t})");
        assert!(rel(k_integral(d, t).unwrap() / d, k) < 1e-8, "K integral ({d}, {t})");
    }
    for (d, t, l) in frozen::L {
        assert!(rel(l_const(d, t).unwrap(), l) < 1e-12, "L({d}, {t})");
        assert!(rel(l_integral(d, t).unwrap() - 1.0 / t, l) < 1e-8, "L integral ({d}, {t})");
    }
}

#[test]
fn critical_roots() {
    for (c, t, d0) in frozen::DELTA0_K {
        let r = delta0_k(c, t).unwrap();
        assert!((r.delta0 - d0).abs() < 1e-10, "δ₀_K({c}, {t}) = {}", r.delta0);
        assert!(r.bracket.0 <= d0 && d0 <= r.bracket.1 + 1e-12);
    }
    for (c, t, d0) in frozen::DELTA0_L {
        let r = delta0_l(c, t).unwrap();
        assert!(rel(r.delta0, d0) < 1e-10, "δ₀_L({c}, {t}) = {}", r.delta0);
    }
}

#[test]
fn symmetric_roots_at_half() {
    // At θ = 1/2 the two equations share c, and the roots sum to 1/2.
    let k: f64 = delta0_k(0.05, 0.5).unwrap().delta0;
    let l = delta0_l(0.05, 0.5).unwrap().delta0;
    assert!((k + l - 0.5).abs() < 1e-10);
}

#[test]
fn drift_matches_direct_integration() {
    let down = ModelSpec::down(0.5, 1.0).unwrap();
    let up = ModelSpec::up(0.5, 0.0).unwrap();
    let cases = [
        (down, InnovationSpec::positive(0.7, 0.2).unwrap(), 0.2, frozen::DRIFT_DOWN_RECURRENT),
        (down, InnovationSpec::positive(0.3, 0.075).unwrap(), -0.2, frozen::DRIFT_DOWN_TRANSIENT),
        (up, InnovationSpec::negative(0.3, 0.1).unwrap(), 0.5, frozen::DRIFT_UP_OPPOSING),
    ];
    for (model, law, delta, expect) in cases {
        let g = LyapunovSpec::new(delta).unwrap();
        for (x, dg) in expect {
            let d = drift_quadrature(&model, &law, &g, 1.0, x).unwrap();
            assert!(rel(d.value, dg) < 1e-7, "δ = {delta}, x = {x}: {} vs {dg}", d.value);
        }
    }
}

#[test]
fn truncated_moments_of_pareto_law() {
    let law = InnovationSpec::positive(0.6, 0.2).unwrap();
    for (d, a, b) in [(0.3, 0.0, Some(0.5)), (0.3, 0.2, Some(40.0)), (0.55, 3.0, None), (1.5, 0.0, Some(1e3))] {
        let got = truncated_expectation(&law, Part::Positive, d, a, b).unwrap();
        let want = common::truncated_pareto(0.6, 0.2, d, a, b);
        assert!(rel(got, want) < 1e-9, "({d}, {a}, {b:?}): {got} vs {want}");
    }
    assert!(matches!(
        truncated_expectation(&law, Part::Positive, 0.6, 1.0, None),
        Err(Error::Divergent(_))
    ));
    assert_eq!(truncated_expectation(&law, Part::Negative, 0.3, 0.0, Some(9.0)).unwrap(), 0.0);
}

#[test]
fn truncated_moments_of_oscillating_law() {
    let law = InnovationSpec::builder(Support::PositiveOnly)
        .right_tail(0.6, 0.15)
        .profile(TailProfile::Oscillating { amplitude: 0.4 })
        .build()
        .unwrap();
    for (d, a, b, want) in frozen::TRUNCATED_OSCILLATING {
        let got = truncated_expectation(&law, Part::Positive, d, a, b).unwrap();
        assert!(rel(got, want) < 1e-8, "({d}, {a}, {b:?}): {got} vs {want}");
    }
}

#[test]
fn negative_part_mirrors_positive() {
    let pos = InnovationSpec::positive(0.45, 0.1).unwrap();
    let neg = InnovationSpec::negative(0.45, 0.1).unwrap();
    for (a, b) in [(0.0, Some(2.0)), (0.5, None)] {
        let p = truncated_expectation(&pos, Part::Positive, 0.3, a, b).unwrap();
        let n = truncated_expectation(&neg, Part::Negative, 0.3, a, b).unwrap();
        assert!(rel(n, p) < 1e-12);
    }
}

#[test]
fn single_precision_constants() {
    let k = k_const(0.3f32, 0.6f32).unwrap();
    assert!((k as f64 - frozen::K[2].2).abs() / frozen::K[2].2 < 1e-5);
    let r = delta0_k(0.05f32, 0.5f32).unwrap();
    assert!((r.delta0 as f64 - frozen::DELTA0_K[0].2).abs() < 1e-4);
}

#[test]
fn skeleton_ratio_approaches_one_monotonically() {
    use heavytail::chain::{deterministic_hitting_time, SkeletonVariant};
    for g in [0.3, 0.5, 0.7] {
        let gaps: Vec<f64> = [1e3, 1e4, 1e5, 1e6]
            .iter()
            .map(|&x0| {
                let h = deterministic_hitting_time(g, x0, 1.0, SkeletonVariant::Plain).unwrap();
                (1.0 - h.exact_steps as f64 / h.asymptotic).abs()
            })
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "γ = {g}: {gaps:?}");
    }
}
