//! One-step drift `Dg(x) = E g(ζ₁)^p − g(x)^p` of power test functions.
//!
//! The expectation is taken over the innovation law piece by piece. On each
//! piece the α-line splits at `α* = −s` (or `1 − s` for the clipped function),
//! `s = x ± x^γ`: below `α*` the next state lands where `g` is constant, so
//! that part is a closed-form mass times a constant. Above `α*` the integrand
//! `G(s + α) − G(x)` is evaluated as `G(x)·expm1(e·ln1p((s − x + α)/x))`,
//! which keeps full relative precision even when `Dg` is many orders smaller
//! than `g`. Tails are integrated in `t = ln y` up to `max(x, y_lo)` and with a
//! compactifying power substitution beyond, so no truncation is needed.

use crate::chain::{Drift, ModelSpec};
use crate::dist::{InnovationLaw, InnovationSpec, LawPiece, PowerTail, Side, TailProfile};
use crate::error::{Error, Result};
use crate::quad::{integrate_breakpoints, integrate_power_tail, QuadEstimate, QuadTolerance};
use crate::real::Real;
use crate::specialfn::{k_const, l_const};

/// `g(x) = x^δ`, or `max(x, 1)^δ` when clipped (δ < 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovSpec<T> {
    pub delta: T,
    pub clipped: bool,
}

impl<T: Real> LyapunovSpec<T> {
    /// Clipping is switched on exactly when `delta < 0`.
    pub fn new(delta: T) -> Result<Self> {
        let s = Self {
            delta,
            clipped: delta < T::zero(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta != T::zero() && self.delta.is_finite()) {
            return Err(Error::domain("delta must be finite and nonzero"));
        }
        if self.delta < T::zero() && !self.clipped {
            return Err(Error::domain("negative delta requires the clipped test function"));
        }
        Ok(())
    }

    fn is_clipped(&self) -> bool {
        self.clipped && self.delta < T::zero()
    }

    pub fn eval(&self, x: T) -> T {
        self.eval_pow(x, T::one())
    }

    /// `g(x)^p`
    pub fn eval_pow(&self, x: T, p: T) -> T {
        if self.is_clipped() && x < T::one() {
            T::one()
        } else if x <= T::zero() {
            T::zero()
        } else {
            x.powf(self.delta * p)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftValue<T> {
    pub value: T,
    pub abs_error: T,
}

impl<T: Real> DriftValue<T> {
    fn from_estimate(q: QuadEstimate<T>) -> Self {
        Self {
            value: q.value,
            abs_error: q.abs_error,
        }
    }
}

/// `G(s + α) − G(x)` with the constant region folded into one value.
struct Increment<T> {
    x: T,
    shift: T,
    e: T,
    gx: T,
    x_in_power: bool,
    alpha_star: T,
    below: T,
}

impl<T: Real> Increment<T> {
    fn new(model: &ModelSpec<T>, lyap: &LyapunovSpec<T>, p: T, x: T) -> Self {
        let xg = model.drift_power(x);
        let shift = match model.drift {
            Drift::Down => -xg,
            Drift::Up => xg,
        };
        let s = x + shift;
        let clipped = lyap.is_clipped();
        let floor = if clipped { T::one() } else { T::zero() };
        let gx = lyap.eval_pow(x, p);
        let g0 = if clipped { T::one() } else { T::zero() };
        Self {
            x,
            shift,
            e: lyap.delta * p,
            gx,
            x_in_power: !clipped || x >= T::one(),
            alpha_star: floor - s,
            below: g0 - gx,
        }
    }

    #[inline]
    fn at(&self, alpha: T) -> T {
        if alpha <= self.alpha_star {
            return self.below;
        }
        let d = self.shift + alpha;
        if self.x_in_power {
            self.gx * (self.e * (d / self.x).ln_1p()).exp_m1()
        } else {
            (self.e * (self.x + d).ln()).exp_m1()
        }
    }
}

fn tail_cumulative<T: Real>(tail: PowerTail<T>, profile: TailProfile<T>, y: T) -> T {
    if y.is_infinite() {
        T::zero()
    } else {
        tail.c * profile.tail_integral(y, tail.theta)
    }
}

/// Probability the piece puts on `α ∈ [u, v)`.
fn piece_mass<T: Real>(piece: &LawPiece<T>, u: T, v: T) -> T {
    if !(v > u) {
        return T::zero();
    }
    match *piece {
        LawPiece::Atom { at, mass } => {
            if at >= u && at < v {
                mass
            } else {
                T::zero()
            }
        }
        LawPiece::Uniform { lo, hi, mass } => {
            let w = (v.min(hi) - u.max(lo)).max(T::zero());
            mass * w / (hi - lo)
        }
        LawPiece::Tail {
            side,
            onset,
            tail,
            profile,
        } => {
            let (ya, yb) = match side {
                Side::Right => (u.max(onset), v),
                Side::Left => ((-v).max(onset), -u),
            };
            if yb > ya {
                tail_cumulative(tail, profile, ya) - tail_cumulative(tail, profile, yb)
            } else {
                T::zero()
            }
        }
    }
}

/// `∫_{ya}^{yb} φ(y) c_y y^{−1−θ} dy` with `yb` possibly infinite.
#[allow(clippy::too_many_arguments)]
fn tail_integral<T: Real, F: Fn(T) -> T>(
    phi: F,
    tail: PowerTail<T>,
    profile: TailProfile<T>,
    ya: T,
    yb: T,
    splits: &[T],
    growth: T,
    tol: &QuadTolerance<T>,
) -> Result<QuadEstimate<T>> {
    let density = |y: T| tail.c * profile.factor(y) * y.powf(-T::one() - tail.theta);
    let near_end = if yb.is_infinite() {
        splits.iter().copied().fold(ya, T::max)
    } else {
        yb
    };
    let mut total = QuadEstimate::zero();
    if near_end > ya {
        let mut pts = vec![ya.ln()];
        let mut inner: Vec<T> = splits
            .iter()
            .copied()
            .filter(|&y| y > ya && y < near_end)
            .map(|y| y.ln())
            .collect();
        inner.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.extend(inner);
        pts.push(near_end.ln());
        let q = integrate_breakpoints(
            |t: T| {
                let y = t.exp();
                phi(y) * density(y) * y
            },
            &pts,
            tol,
        )?;
        total = total.combine(q);
    }
    if yb.is_infinite() {
        let decay = T::one() + tail.theta - growth.max(T::zero());
        let q = integrate_power_tail(|y: T| phi(y) * density(y), near_end, decay, tol)?;
        total = total.combine(q);
    }
    Ok(total)
}

fn window_drift<T: Real>(
    inc: &Increment<T>,
    pieces: &[LawPiece<T>],
    lo: T,
    hi: T,
    tol: &QuadTolerance<T>,
) -> Result<QuadEstimate<T>> {
    let mut total = QuadEstimate::zero();
    let a_star = inc.alpha_star;
    for piece in pieces {
        if let LawPiece::Atom { at, mass } = *piece {
            if at >= lo && at < hi {
                total.value = total.value + inc.at(at) * mass;
            }
            continue;
        }
        // Constant region α ≤ α*.
        let below_mass = piece_mass(piece, lo, hi.min(a_star));
        let mut part = QuadEstimate {
            value: below_mass * inc.below,
            abs_error: T::zero(),
            panels: 0,
        };
        let a = lo.max(a_star);
        if hi > a {
            let q = match *piece {
                LawPiece::Atom { .. } => unreachable!(),
                LawPiece::Uniform { lo: ul, hi: uh, mass } => {
                    let (u, v) = (a.max(ul), hi.min(uh));
                    if v > u {
                        let dens = mass / (uh - ul);
                        integrate_breakpoints(|al: T| inc.at(al) * dens, &[u, v], tol)?
                    } else {
                        QuadEstimate::zero()
                    }
                }
                LawPiece::Tail {
                    side,
                    onset,
                    tail,
                    profile,
                } => {
                    let x = inc.x;
                    let xg = inc.shift.abs();
                    match side {
                        Side::Right => {
                            let ya = a.max(onset);
                            if hi > ya {
                                tail_integral(
                                    |y| inc.at(y),
                                    tail,
                                    profile,
                                    ya,
                                    hi,
                                    &[xg, x],
                                    inc.e,
                                    tol,
                                )?
                            } else {
                                QuadEstimate::zero()
                            }
                        }
                        Side::Left => {
                            let ya = (-hi).max(onset);
                            let yb = -a;
                            if yb > ya {
                                let s = x + inc.shift;
                                tail_integral(
                                    |y| inc.at(-y),
                                    tail,
                                    profile,
                                    ya,
                                    yb,
                                    &[xg, T::lit(0.5) * s],
                                    T::zero(),
                                    tol,
                                )?
                            } else {
                                QuadEstimate::zero()
                            }
                        }
                    }
                }
            };
            part = part.combine(q);
        }
        total = total.combine(part);
    }
    Ok(total)
}

fn prepare<T: Real, L: InnovationLaw<T> + ?Sized>(
    model: &ModelSpec<T>,
    law: &L,
    lyap: &LyapunovSpec<T>,
    p: T,
    x: T,
) -> Result<(Increment<T>, Vec<LawPiece<T>>)> {
    model.validate()?;
    lyap.validate()?;
    if !(p > T::zero() && p.is_finite()) {
        return Err(Error::domain("power p must be positive"));
    }
    if !(x > T::zero() && x.is_finite()) {
        return Err(Error::domain("drift is evaluated at x > 0"));
    }
    let pieces = law.pieces();
    let e = lyap.delta * p;
    if e > T::zero() {
        for piece in &pieces {
            if let LawPiece::Tail {
                side: Side::Right,
                tail,
                ..
            } = piece
            {
                if e >= tail.theta {
                    return Err(Error::Divergent(format!(
                        "g^p grows like x^{} but the right tail only has moments below {}",
                        e.as_f64(),
                        tail.theta.as_f64()
                    )));
                }
            }
        }
    }
    let inc = Increment::new(model, lyap, p, x);
    if !model.reflect {
        let s = model.skeleton(x);
        let neg: T = pieces
            .iter()
            .map(|pc| piece_mass(pc, T::neg_infinity(), -s))
            .sum();
        if neg > T::zero() {
            return Err(Error::domain(
                "reflection disabled but the next state can be negative",
            ));
        }
    }
    Ok((inc, pieces))
}

/// `E g(ζ₁)^p − g(x)^p` given `ζ₀ = x`.
pub fn drift_quadrature<T: Real, L: InnovationLaw<T> + ?Sized>(
    model: &ModelSpec<T>,
    law: &L,
    lyap: &LyapunovSpec<T>,
    p: T,
    x: T,
) -> Result<DriftValue<T>> {
    drift_quadrature_with(model, law, lyap, p, x, &QuadTolerance::default())
}

pub fn drift_quadrature_with<T: Real, L: InnovationLaw<T> + ?Sized>(
    model: &ModelSpec<T>,
    law: &L,
    lyap: &LyapunovSpec<T>,
    p: T,
    x: T,
    tol: &QuadTolerance<T>,
) -> Result<DriftValue<T>> {
    let (inc, pieces) = prepare(model, law, lyap, p, x)?;
    let q = window_drift(&inc, &pieces, T::neg_infinity(), T::infinity(), tol)?;
    Ok(DriftValue::from_estimate(q))
}

/// Contributions `E[(g(ζ₁) − g(x)) 1{α ∈ A_i}]` of the cells
/// `A₁ = (−∞, −x^β)`, `A₂ = [−x^β, 0)`, `A₃ = [0, x^β)`, `A₄ = [x^β, ∞)`.
pub fn partition_decomposition<T: Real, L: InnovationLaw<T> + ?Sized>(
    model: &ModelSpec<T>,
    law: &L,
    lyap: &LyapunovSpec<T>,
    x: T,
    beta: T,
) -> Result<[DriftValue<T>; 4]> {
    if !(x > T::one()) {
        return Err(Error::domain("partition needs x > 1"));
    }
    if !(beta > T::zero() && beta < T::one()) {
        return Err(Error::domain("beta must lie in (0, 1)"));
    }
    let (inc, pieces) = prepare(model, law, lyap, T::one(), x)?;
    let xb = x.powf(beta);
    let cuts = [T::neg_infinity(), -xb, T::zero(), xb, T::infinity()];
    let tol = QuadTolerance::default();
    let mut out = [DriftValue {
        value: T::zero(),
        abs_error: T::zero(),
    }; 4];
    for i in 0..4 {
        out[i] = DriftValue::from_estimate(window_drift(&inc, &pieces, cuts[i], cuts[i + 1], &tol)?);
    }
    Ok(out)
}

/// Feasibility windows for the partition exponent used in the proofs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaRecipe {
    /// Up-drift, two-sided: `β ∈ ((1−γ)/θ_left, 1)`.
    UpTwoSided,
    /// Down-drift, two-sided: `β ∈ (0, γ)`.
    DownTwoSided,
}

/// Open window and its midpoint, or `None` when the window is empty.
pub fn beta_window<T: Real>(recipe: BetaRecipe, gamma: T, theta: T) -> Option<(T, T, T)> {
    let (lo, hi) = match recipe {
        BetaRecipe::UpTwoSided => ((T::one() - gamma) / theta, T::one()),
        BetaRecipe::DownTwoSided => (T::zero(), gamma),
    };
    (hi > lo).then(|| (lo, hi, T::lit(0.5) * (lo + hi)))
}

/// Leading-order prediction and its bracket over `c_y ∈ [b₁, b₂]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticDrift<T> {
    pub value: T,
    pub lower: T,
    pub upper: T,
}

/// Smallest `x / y0` at which the asymptotic formula is evaluated.
pub const ASYMPTOTIC_FLOOR: f64 = 10.0;

/// Leading terms of `Dg(x)` for `g = x^δ` (p = 1):
///
/// ```text
/// ±δ x^{δ+γ−1} + δ c_r K(δ,θ_r) x^{δ−θ_r} + c_l L(δ,θ_l) x^{δ−θ_l}
/// ```
///
/// with the left-tail term replaced by `(c_l/θ_l) x^{−θ_l}` when `δ < 0`.
pub fn drift_asymptotic<T: Real>(
    model: &ModelSpec<T>,
    spec: &InnovationSpec<T>,
    delta: T,
    x: T,
) -> Result<AsymptoticDrift<T>> {
    model.validate()?;
    if !(x >= T::lit(ASYMPTOTIC_FLOOR) * spec.y0()) {
        return Err(Error::domain(format!(
            "asymptotic drift needs x >= {} y0",
            ASYMPTOTIC_FLOOR
        )));
    }
    let base = delta * x.powf(delta + model.gamma - T::one());
    let lead = match model.drift {
        Drift::Down => -base,
        Drift::Up => base,
    };
    let mut value = lead;
    let mut lower = lead;
    let mut upper = lead;
    let mut add = |coef: T, b: (T, T), c: T| {
        let (t1, t2) = (coef * b.0, coef * b.1);
        value = value + coef * c;
        lower = lower + t1.min(t2);
        upper = upper + t1.max(t2);
    };
    if let Some(t) = spec.right() {
        let coef = delta * k_const(delta, t.theta)? * x.powf(delta - t.theta);
        add(coef, spec.c_bounds(Side::Right).unwrap(), t.c);
    }
    if let Some(t) = spec.left() {
        let coef = if delta > T::zero() {
            l_const(delta, t.theta)? * x.powf(delta - t.theta)
        } else {
            x.powf(-t.theta) / t.theta
        };
        add(coef, spec.c_bounds(Side::Left).unwrap(), t.c);
    }
    Ok(AsymptoticDrift {
        value,
        lower,
        upper,
    })
}

/// Inequality checked pointwise on a grid outside the target set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Condition<T> {
    /// `Dg ≤ 0` with `g → ∞`.
    Recurrence,
    /// `Dg ≤ 0` plus a point `y` with `g(y) < inf_A g`.
    Transience,
    /// `Dg^p ≤ −c g^{p−2}`.
    MomentUpper { p: T, c: T },
    /// `Dg ≥ −c₁`, `Dg^r ≤ c₂ g^{r−1}` and `Dg^p ≥ 0`.
    MomentLower { p: T, r: T, c1: T, c2: T },
}

/// Best constants found on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Witness<T> {
    /// Largest `c` with `Dg^p ≤ −c g^{p−2}` at every grid point.
    pub c: Option<T>,
    /// Smallest `c₁` with `Dg ≥ −c₁`.
    pub c1: Option<T>,
    /// Smallest `c₂` with `Dg^r ≤ c₂ g^{r−1}`.
    pub c2: Option<T>,
    /// A point outside the target with `g(y) < inf_A g`.
    pub transience_point: Option<T>,
    pub target_infimum: Option<T>,
}

/// Pointwise evidence on a finite grid; not a proof for points off the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftReport<T> {
    pub condition: Condition<T>,
    pub x_grid: Vec<T>,
    /// `Dg^p` for the moment conditions, `Dg` otherwise.
    pub dg_values: Vec<T>,
    pub dg_errors: Vec<T>,
    /// Leading-order prediction where it applies (p = 1 and x ≥ 10 y0).
    pub asymptotic_values: Vec<Option<T>>,
    pub verdicts: Vec<bool>,
    pub holds: bool,
    pub witness: Witness<T>,
}

/// `per_decade` log-spaced points per decade on `[lo, hi]`, endpoints included.
pub fn geometric_grid<T: Real>(lo: T, hi: T, per_decade: usize) -> Vec<T> {
    let decades = (hi / lo).log10();
    let n = (decades * T::lit(per_decade as f64)).round().to_usize().unwrap_or(0).max(1);
    let (l0, l1) = (lo.log10(), hi.log10());
    (0..=n)
        .map(|i| {
            let t = T::lit(i as f64) / T::lit(n as f64);
            T::lit(10.0).powf(l0 + (l1 - l0) * t)
        })
        .collect()
}

/// The standard certificate grid: 64 points per decade over `[10², 10⁶]`.
pub fn default_grid<T: Real>() -> Vec<T> {
    geometric_grid(T::lit(1e2), T::lit(1e6), 64)
}

pub fn check_condition<T: Real>(
    model: &ModelSpec<T>,
    spec: &InnovationSpec<T>,
    lyap: &LyapunovSpec<T>,
    condition: Condition<T>,
    x_grid: &[T],
) -> Result<DriftReport<T>> {
    if x_grid.is_empty() {
        return Err(Error::domain("empty grid"));
    }
    if x_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("grid must be strictly increasing"));
    }
    if x_grid.iter().any(|&x| model.in_target(x)) {
        return Err(Error::domain("grid points must lie outside the target set"));
    }
    let p = match condition {
        Condition::MomentUpper { p, .. } | Condition::MomentLower { p, .. } => p,
        _ => T::one(),
    };
    if matches!(condition, Condition::Recurrence | Condition::MomentUpper { .. } | Condition::MomentLower { .. })
        && !(lyap.delta > T::zero())
    {
        return Err(Error::domain("this condition needs g → ∞, i.e. delta > 0"));
    }

    let n = x_grid.len();
    let mut dg_values = Vec::with_capacity(n);
    let mut dg_errors = Vec::with_capacity(n);
    let mut asymptotic_values = Vec::with_capacity(n);
    let mut verdicts = Vec::with_capacity(n);
    let mut witness = Witness::default();
    let fold_max = |acc: Option<T>, v: T| Some(acc.map_or(v, |a: T| a.max(v)));
    let fold_min = |acc: Option<T>, v: T| Some(acc.map_or(v, |a: T| a.min(v)));

    for &x in x_grid {
        let d = drift_quadrature(model, spec, lyap, p, x)?;
        let g = lyap.eval(x);
        let ok = match condition {
            Condition::Recurrence | Condition::Transience => d.value <= T::zero(),
            Condition::MomentUpper { p, c } => {
                let scale = g.powf(p - T::lit(2.0));
                witness.c = fold_min(witness.c, -d.value / scale);
                d.value <= -c * scale
            }
            Condition::MomentLower { r, c1, c2, .. } => {
                let d1 = drift_quadrature(model, spec, lyap, T::one(), x)?.value;
                let dr = drift_quadrature(model, spec, lyap, r, x)?.value;
                let ratio = dr / g.powf(r - T::one());
                witness.c1 = fold_max(witness.c1, -d1);
                witness.c2 = fold_max(witness.c2, ratio);
                d1 >= -c1 && ratio <= c2 && d.value >= T::zero()
            }
        };
        let asym = if p == T::one() {
            drift_asymptotic(model, spec, lyap.delta, x).ok().map(|a| a.value)
        } else {
            None
        };
        dg_values.push(d.value);
        dg_errors.push(d.abs_error);
        asymptotic_values.push(asym);
        verdicts.push(ok);
    }

    let mut holds = verdicts.iter().all(|&v| v);
    if let Condition::Transience = condition {
        // g is monotone, so its infimum over [0, a] sits at an endpoint.
        let inf_a = lyap.eval(model.target_a).min(lyap.eval(T::zero()));
        witness.target_infimum = Some(inf_a);
        witness.transience_point = x_grid.iter().copied().find(|&y| lyap.eval(y) < inf_a);
        holds &= witness.transience_point.is_some();
    }
    if let Condition::MomentUpper { .. } = condition {
        witness.c = witness.c.filter(|&c| c > T::zero());
    }
    Ok(DriftReport {
        condition,
        x_grid: x_grid.to_vec(),
        dg_values,
        dg_errors,
        asymptotic_values,
        verdicts,
        holds,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::PointMass;

    #[test]
    fn point_mass_is_exact() {
        let m = ModelSpec::down(0.5, 1.0).unwrap();
        let g = LyapunovSpec::new(0.3).unwrap();
        let d = drift_quadrature(&m, &PointMass(2.5), &g, 1.0, 16.0).unwrap();
        let expect: f64 = (16.0f64 - 4.0 + 2.5).powf(0.3) - 16f64.powf(0.3);
        assert!((d.value - expect).abs() < 1e-14);
    }

    #[test]
    fn clipped_constant_region_has_zero_drift() {
        // Every next state stays below 1, where the clipped g is identically 1.
        let m = ModelSpec::down(0.5, 0.0).unwrap();
        let g = LyapunovSpec::new(-0.4).unwrap();
        let d = drift_quadrature(&m, &PointMass(0.1), &g, 1.0, 0.5).unwrap();
        assert_eq!(d.value, 0.0);
    }

    #[test]
    fn integrability_enforced() {
        let m = ModelSpec::down(0.5, 1.0).unwrap();
        let s = InnovationSpec::positive(0.5, 0.1).unwrap();
        let g = LyapunovSpec::new(0.25).unwrap();
        assert!(drift_quadrature(&m, &s, &g, 1.0, 10.0).is_ok());
        assert!(matches!(drift_quadrature(&m, &s, &g, 2.0, 10.0), Err(Error::Divergent(_))));
    }

    #[test]
    fn negative_delta_needs_clipping() {
        let g = LyapunovSpec {
            delta: -0.2,
            clipped: false,
        };
        assert!(g.validate().is_err());
        assert_eq!(LyapunovSpec::new(-0.2).unwrap().eval(0.3), 1.0);
    }

    #[test]
    fn grid_shape() {
        let g: Vec<f64> = default_grid();
        assert_eq!(g.len(), 257);
        assert!((g[0] - 1e2).abs() < 1e-9 && (g[256] - 1e6).abs() < 1e-6);
    }

    #[test]
    fn beta_windows() {
        let (lo, hi, mid) = beta_window(BetaRecipe::UpTwoSided, 0.5, 0.7).unwrap();
        assert!(lo < mid && mid < hi);
        assert!(beta_window(BetaRecipe::UpTwoSided, 0.5, 0.3).is_none());
    }

    #[test]
    fn asymptotic_vanishes_with_delta() {
        let m = ModelSpec::down(0.5, 1.0).unwrap();
        let s = InnovationSpec::positive(0.7, 0.1).unwrap();
        let a = drift_asymptotic(&m, &s, 1e-9f64, 1e4).unwrap();
        assert!(a.value.abs() < 1e-8f64);
        assert!(drift_asymptotic(&m, &s, 0.3, 5.0).is_err());
    }
}
