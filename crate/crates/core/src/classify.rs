//! Regime and moment-threshold decision table.
//!
//! Which rule applies depends on the drift direction, which sides carry
//! heavy tails, and how `θ` compares with `1 − γ`. Inputs outside the
//! covered configurations return `Undecided`, never an error.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::chain::{Drift, ModelSpec};
use crate::dist::{InnovationSpec, Side, Support, TailProfile};
use crate::drift::{Condition, LyapunovSpec};
use crate::error::Result;
use crate::specialfn::{critical_boundary_band, delta0_k, delta0_l, k_const, k_criticality_margin};

/// `|θ − (1 − γ)|` at or below this counts as the critical line.
pub const CRITICAL_LINE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    Recurrent,
    RecurrentCritical,
    Transient,
    Undecided,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Recurrent => "RECURRENT",
            Regime::RecurrentCritical => "RECURRENT_CRITICAL",
            Regime::Transient => "TRANSIENT",
            Regime::Undecided => "UNDECIDED",
        })
    }
}

/// Order `q*` separating finite from infinite passage-time moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentThreshold {
    Value(f64),
    /// Every moment is finite.
    All,
    NoneKnown,
}

impl MomentThreshold {
    pub fn value(&self) -> Option<f64> {
        match *self {
            MomentThreshold::Value(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for MomentThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentThreshold::Value(q) => write!(f, "{q}"),
            MomentThreshold::All => f.write_str("ALL"),
            MomentThreshold::NoneKnown => f.write_str("NONE_KNOWN"),
        }
    }
}

impl Serialize for MomentThreshold {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            MomentThreshold::Value(q) => s.serialize_f64(q),
            MomentThreshold::All => s.serialize_str("ALL"),
            MomentThreshold::NoneKnown => s.serialize_str("NONE_KNOWN"),
        }
    }
}

/// The rule of the decision table that produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    /// Down-drift, positive tail heavier than the drift: `θ > 1 − γ`.
    DownOneSidedRecurrent,
    /// Down-drift, positive tail lighter than the drift: `θ < 1 − γ`.
    DownOneSidedTransient,
    /// `θ = 1 − γ` and `c π csc(πθ) < θ`.
    DownCriticalRecurrent,
    /// `θ = 1 − γ` and `c π csc(πθ) > θ`.
    DownCriticalTransient,
    /// `θ = 1 − γ` and `c π csc(πθ) = θ`.
    DownCriticalBoundary,
    /// `θ = 1 − γ` with a non-converging tail constant.
    DownCriticalOscillating,
    UpOpposingRecurrent,
    UpOpposingCritical,
    UpOpposingTransient,
    UpCriticalOscillating,
    /// Two-sided, right tail bound `θ_r > 1 − γ`.
    DownTwoSidedRecurrent,
    /// Two-sided, `θ_r < 1 − γ` and the left tail lighter.
    DownTwoSidedTransient,
    DownTwoSidedUndecided,
    /// Two-sided, left tail bound `θ_l > 1 − γ`.
    UpTwoSidedTransient,
    /// Two-sided, `θ_l < 1 − γ` and the right tail lighter.
    UpTwoSidedRecurrent,
    UpTwoSidedUndecided,
    /// Heavy tail only in the drift direction.
    Uncovered,
}

impl Clause {
    pub fn code(&self) -> &'static str {
        match self {
            Clause::DownOneSidedRecurrent => "down.one-sided.recurrent",
            Clause::DownOneSidedTransient => "down.one-sided.transient",
            Clause::DownCriticalRecurrent => "down.one-sided.critical.recurrent",
            Clause::DownCriticalTransient => "down.one-sided.critical.transient",
            Clause::DownCriticalBoundary => "down.one-sided.critical.boundary",
            Clause::DownCriticalOscillating => "down.one-sided.critical.oscillating",
            Clause::UpOpposingRecurrent => "up.opposing.recurrent",
            Clause::UpOpposingCritical => "up.opposing.critical",
            Clause::UpOpposingTransient => "up.opposing.transient",
            Clause::UpCriticalOscillating => "up.opposing.critical.oscillating",
            Clause::DownTwoSidedRecurrent => "down.two-sided.recurrent",
            Clause::DownTwoSidedTransient => "down.two-sided.transient",
            Clause::DownTwoSidedUndecided => "down.two-sided.undecided",
            Clause::UpTwoSidedTransient => "up.two-sided.transient",
            Clause::UpTwoSidedRecurrent => "up.two-sided.recurrent",
            Clause::UpTwoSidedUndecided => "up.two-sided.undecided",
            Clause::Uncovered => "uncovered",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Classification {
    pub regime: Regime,
    pub q_star: MomentThreshold,
    pub delta0: Option<f64>,
    #[serde(skip)]
    pub delta0_residual: Option<f64>,
    pub clause: Clause,
    /// Moments are known finite below `q*` and infinite above it.
    pub sharp: bool,
    /// Whether `E τ^{q*}` itself is settled.
    pub boundary_moment_known: bool,
}

impl Classification {
    fn new(regime: Regime, q_star: MomentThreshold, clause: Clause) -> Self {
        Self {
            regime,
            q_star,
            delta0: None,
            delta0_residual: None,
            clause,
            sharp: false,
            boundary_moment_known: false,
        }
    }

    fn transient(clause: Clause) -> Self {
        Self::new(Regime::Transient, MomentThreshold::NoneKnown, clause)
    }

    fn undecided(clause: Clause) -> Self {
        Self::new(Regime::Undecided, MomentThreshold::NoneKnown, clause)
    }

    fn sharp(mut self, boundary_known: bool) -> Self {
        self.sharp = true;
        self.boundary_moment_known = boundary_known;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Line {
    Below,
    On,
    Above,
}

fn against_line(theta: f64, gamma: f64) -> Line {
    let d = theta - (1.0 - gamma);
    if d.abs() <= CRITICAL_LINE_TOL {
        Line::On
    } else if d > 0.0 {
        Line::Above
    } else {
        Line::Below
    }
}

pub fn classify(model: &ModelSpec<f64>, spec: &InnovationSpec<f64>) -> Result<Classification> {
    model.validate()?;
    let gamma = model.gamma;
    let oscillating = matches!(spec.profile(), TailProfile::Oscillating { amplitude } if amplitude > 0.0);
    let theta_r = spec.right().map(|t| t.theta);
    let theta_l = spec.left().map(|t| t.theta);

    Ok(match (model.drift, spec.support()) {
        (Drift::Down, Support::PositiveOnly) => {
            let t = spec.right().expect("positive law has a right tail");
            match against_line(t.theta, gamma) {
                Line::Above => Classification::new(
                    Regime::Recurrent,
                    MomentThreshold::Value(t.theta / (1.0 - gamma)),
                    Clause::DownOneSidedRecurrent,
                )
                .sharp(true),
                Line::Below => Classification::transient(Clause::DownOneSidedTransient),
                Line::On if oscillating => Classification::undecided(Clause::DownCriticalOscillating),
                Line::On => {
                    let margin = k_criticality_margin(t.c, t.theta);
                    if margin.abs() <= critical_boundary_band::<f64>() {
                        Classification::undecided(Clause::DownCriticalBoundary)
                    } else if margin > 0.0 {
                        Classification::transient(Clause::DownCriticalTransient)
                    } else {
                        let root = delta0_k(t.c, t.theta)?;
                        let mut c = Classification::new(
                            Regime::RecurrentCritical,
                            MomentThreshold::Value(root.delta0 / (1.0 - gamma)),
                            Clause::DownCriticalRecurrent,
                        )
                        .sharp(false);
                        c.delta0 = Some(root.delta0);
                        c.delta0_residual = Some(root.residual);
                        c
                    }
                }
            }
        }
        (Drift::Up, Support::NegativeOnly) => {
            let t = spec.left().expect("negative law has a left tail");
            match against_line(t.theta, gamma) {
                Line::Below => Classification::new(
                    Regime::Recurrent,
                    MomentThreshold::All,
                    Clause::UpOpposingRecurrent,
                )
                .sharp(true),
                Line::Above => Classification::transient(Clause::UpOpposingTransient),
                Line::On if oscillating => Classification::undecided(Clause::UpCriticalOscillating),
                Line::On => {
                    let root = delta0_l(t.c, t.theta)?;
                    let mut c = Classification::new(
                        Regime::RecurrentCritical,
                        MomentThreshold::Value(root.delta0 / t.theta),
                        Clause::UpOpposingCritical,
                    )
                    .sharp(false);
                    c.delta0 = Some(root.delta0);
                    c.delta0_residual = Some(root.residual);
                    c
                }
            }
        }
        (Drift::Down, Support::TwoSided) => {
            let (tr, tl) = (theta_r.unwrap(), theta_l.unwrap());
            match against_line(tr, gamma) {
                Line::Above => Classification::new(
                    Regime::Recurrent,
                    MomentThreshold::Value(tr / (1.0 - gamma)),
                    Clause::DownTwoSidedRecurrent,
                ),
                Line::Below if tl > tr => Classification::transient(Clause::DownTwoSidedTransient),
                _ => Classification::undecided(Clause::DownTwoSidedUndecided),
            }
        }
        (Drift::Up, Support::TwoSided) => {
            let (tr, tl) = (theta_r.unwrap(), theta_l.unwrap());
            match against_line(tl, gamma) {
                Line::Above => Classification::transient(Clause::UpTwoSidedTransient),
                Line::Below if tr > tl => Classification::new(
                    Regime::Recurrent,
                    MomentThreshold::Value(1.0),
                    Clause::UpTwoSidedRecurrent,
                ),
                _ => Classification::undecided(Clause::UpTwoSidedUndecided),
            }
        }
        (Drift::Down, Support::NegativeOnly) | (Drift::Up, Support::PositiveOnly) => {
            Classification::undecided(Clause::Uncovered)
        }
    })
}

/// Test function and drift inequality that certify a verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProofRecipe {
    pub lyapunov: LyapunovSpec<f64>,
    pub condition: Condition<f64>,
}

/// Largest `δ ∈ {−0.1, −0.05, …}` with `c K(δ, θ) > 1`, for the transient critical case.
fn supercritical_delta(c: f64, theta: f64) -> Option<f64> {
    let mut d = -0.1;
    for _ in 0..40 {
        if c * k_const(d, theta).ok()? > 1.0 {
            return Some(d);
        }
        d *= 0.5;
    }
    None
}

/// The power `δ` used to certify a verdict with the drift checker, or
/// `None` for undecided verdicts.
pub fn proof_recipe(
    model: &ModelSpec<f64>,
    spec: &InnovationSpec<f64>,
    verdict: &Classification,
) -> Option<ProofRecipe> {
    let gamma = model.gamma;
    let tr = spec.right().map(|t| t.theta);
    let tl = spec.left().map(|t| t.theta);
    let delta = match verdict.clause {
        Clause::DownOneSidedRecurrent | Clause::DownTwoSidedRecurrent => tr? / 2.0,
        Clause::DownCriticalRecurrent | Clause::UpOpposingCritical => verdict.delta0? / 2.0,
        Clause::DownOneSidedTransient => -(0.2f64).min((1.0 - tr?) / 2.0),
        Clause::DownCriticalTransient => supercritical_delta(spec.tail(Side::Right)?.c, tr?)?,
        Clause::DownTwoSidedTransient => (tr? - tl?) / 2.0,
        Clause::UpOpposingRecurrent => 0.5,
        Clause::UpTwoSidedRecurrent => tr? / 2.0,
        Clause::UpOpposingTransient | Clause::UpTwoSidedTransient => (1.0 - gamma - tl?) / 2.0,
        _ => return None,
    };
    let condition = match verdict.regime {
        Regime::Recurrent | Regime::RecurrentCritical => Condition::Recurrence,
        Regime::Transient => Condition::Transience,
        Regime::Undecided => return None,
    };
    Some(ProofRecipe {
        lyapunov: LyapunovSpec::new(delta).ok()?,
        condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn down() -> ModelSpec<f64> {
        ModelSpec::down(0.5, 2.0).unwrap()
    }

    #[test]
    fn heavy_positive_tail_is_recurrent() {
        let c = classify(&down(), &InnovationSpec::positive(0.7, 0.175).unwrap()).unwrap();
        assert_eq!(c.regime, Regime::Recurrent);
        assert!((c.q_star.value().unwrap() - 1.4).abs() < 1e-12);
        assert!(c.sharp && c.boundary_moment_known);
    }

    #[test]
    fn light_positive_tail_is_transient() {
        let c = classify(&down(), &InnovationSpec::positive(0.3, 0.075).unwrap()).unwrap();
        assert_eq!(c.regime, Regime::Transient);
        assert_eq!(c.q_star, MomentThreshold::NoneKnown);
    }

    #[test]
    fn critical_small_constant() {
        let c = classify(&down(), &InnovationSpec::positive(0.5, 0.05).unwrap()).unwrap();
        assert_eq!(c.regime, Regime::RecurrentCritical);
        let d0 = c.delta0.unwrap();
        assert!((c.q_star.value().unwrap() - d0 / 0.5).abs() < 1e-15);
        assert!(!c.boundary_moment_known);
        assert!(c.delta0_residual.unwrap().abs() <= 1e-9);
    }

    #[test]
    fn critical_large_constant_is_transient() {
        // c π > 0.5 at θ = 1/2.
        let c = classify(&down(), &InnovationSpec::positive(0.5, 0.2).unwrap()).unwrap();
        assert_eq!(c.clause, Clause::DownCriticalTransient);
    }

    #[test]
    fn oscillating_critical_is_undecided() {
        let s = InnovationSpec::builder(Support::PositiveOnly)
            .right_tail(0.5, 0.05)
            .profile(TailProfile::Oscillating { amplitude: 0.3 })
            .build()
            .unwrap();
        assert_eq!(classify(&down(), &s).unwrap().regime, Regime::Undecided);
    }

    #[test]
    fn up_drift_opposing_tail() {
        let up = ModelSpec::up(0.5, 0.0).unwrap();
        let c = classify(&up, &InnovationSpec::negative(0.3, 0.075).unwrap()).unwrap();
        assert_eq!(c.regime, Regime::Recurrent);
        assert_eq!(c.q_star, MomentThreshold::All);
        let c = classify(&up, &InnovationSpec::negative(0.5, 0.1).unwrap()).unwrap();
        assert_eq!(c.regime, Regime::RecurrentCritical);
        assert!((c.q_star.value().unwrap() - c.delta0.unwrap() / 0.5).abs() < 1e-15);
        let c = classify(&up, &InnovationSpec::negative(0.7, 0.175).unwrap()).unwrap();
        assert_eq!(c.regime, Regime::Transient);
    }

    #[test]
    fn uncovered_configurations() {
        let up = ModelSpec::up(0.5, 0.0).unwrap();
        let c = classify(&up, &InnovationSpec::positive(0.3, 0.075).unwrap()).unwrap();
        assert_eq!(c.clause, Clause::Uncovered);
        assert_eq!(c.regime, Regime::Undecided);
    }

    #[test]
    fn two_sided_rules() {
        let s = InnovationSpec::two_sided(0.7, 0.1, 0.4, 0.05).unwrap();
        let c = classify(&down(), &s).unwrap();
        assert_eq!(c.regime, Regime::Recurrent);
        assert!(!c.sharp);
        let s = InnovationSpec::two_sided(0.3, 0.05, 0.6, 0.1).unwrap();
        assert_eq!(classify(&down(), &s).unwrap().regime, Regime::Transient);
        let s = InnovationSpec::two_sided(0.3, 0.05, 0.2, 0.04).unwrap();
        assert_eq!(classify(&down(), &s).unwrap().regime, Regime::Undecided);

        let up = ModelSpec::up(0.5, 2.0).unwrap();
        let s = InnovationSpec::two_sided(0.6, 0.1, 0.3, 0.05).unwrap();
        let c = classify(&up, &s).unwrap();
        assert_eq!(c.regime, Regime::Recurrent);
        assert_eq!(c.q_star, MomentThreshold::Value(1.0));
        let s = InnovationSpec::two_sided(0.3, 0.05, 0.7, 0.1).unwrap();
        assert_eq!(classify(&up, &s).unwrap().regime, Regime::Transient);
    }

    #[test]
    fn json_shape() {
        let c = classify(&down(), &InnovationSpec::positive(0.7, 0.175).unwrap()).unwrap();
        let v = serde_json::to_value(c).unwrap();
        assert_eq!(v["regime"], "RECURRENT");
        assert_eq!(v["clause"], "down.one-sided.recurrent");
        assert!(v["delta0"].is_null());
        assert_eq!(v.as_object().unwrap().len(), 6);
    }
}
