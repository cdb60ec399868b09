//! Gamma function and the critical constants `K(δ, θ)` and `L(δ, θ)`.
//!
//! ```text
//! K(δ, θ) = Γ(1−θ) Γ(θ−δ) / (θ Γ(1−δ))        δ < θ
//! L(δ, θ) = Γ(1+δ) Γ(−θ) / Γ(1−θ+δ)           δ ≥ 0
//! ```
//!
//! Both have integral representations, which [`k_integral`] and
//! [`l_integral`] evaluate by quadrature as an independent check:
//!
//! ```text
//! ∫₀^∞ ((1+u)^δ − 1) u^{−1−θ} du = δ K(δ, θ)
//! ∫₀¹  ((1−u)^δ − 1) u^{−1−θ} du = L(δ, θ) + 1/θ
//! ```
//!
//! The denominator of `L` is `Γ(1−θ+δ)`: it is the one forced by the Beta
//! integral `∫₀¹ (1−u)^δ u^{−1−θ} du`, and the identity tests pin it.

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_breakpoints, integrate_power_tail, QuadEstimate, QuadTolerance};
use crate::real::Real;
use crate::roots::{bisect, BisectOptions};

// Lanczos approximation, g = 607/128, 15 terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_091_82,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

/// Natural log of Γ(z) for z > 0.
pub fn log_gamma<T: Real>(z: T) -> Result<T> {
    if !(z > T::zero()) || !z.is_finite() {
        return Err(Error::domain(format!("log_gamma needs z > 0, got {}", z.as_f64())));
    }
    if z < T::lit(0.5) {
        // Γ(z) = Γ(z+1) / z keeps the series argument in [1, 1.5).
        return Ok(lanczos_ln(z + T::one()) - z.ln());
    }
    Ok(lanczos_ln(z))
}

fn lanczos_ln<T: Real>(z: T) -> T {
    let x = z - T::one();
    let mut sum = T::lit(LANCZOS_COEF[0]);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum = sum + T::lit(c) / (x + T::lit(k as f64));
    }
    let half = T::lit(0.5);
    let t = x + T::lit(LANCZOS_G) + half;
    let ln_sqrt_2pi = T::lit(0.918_938_533_204_672_741_780_329_736_406);
    ln_sqrt_2pi + (x + half) * t.ln() - t + sum.ln()
}

/// Γ(z) for z > 0.
pub fn gamma<T: Real>(z: T) -> Result<T> {
    log_gamma(z).map(T::exp)
}

/// `π csc(πθ)`, equal to `Γ(θ) Γ(1−θ)`.
pub fn pi_csc_pi<T: Real>(theta: T) -> T {
    T::PI() / (T::PI() * theta).sin()
}

fn check_theta<T: Real>(theta: T) -> Result<()> {
    if theta > T::zero() && theta < T::one() {
        Ok(())
    } else {
        Err(Error::domain(format!("theta must lie in (0, 1), got {}", theta.as_f64())))
    }
}

/// `K(δ, θ) = Γ(1−θ) Γ(θ−δ) / (θ Γ(1−δ))`, defined for θ ∈ (0,1) and δ < θ.
///
/// Every Gamma argument is positive on that domain, so `K > 0` and the log
/// form needs no sign bookkeeping.
pub fn k_const<T: Real>(delta: T, theta: T) -> Result<T> {
    check_theta(theta)?;
    if !(delta < theta) {
        return Err(Error::domain(format!(
            "K needs delta < theta, got delta = {}, theta = {}",
            delta.as_f64(),
            theta.as_f64()
        )));
    }
    let one = T::one();
    let ln = log_gamma(one - theta)? + log_gamma(theta - delta)? - log_gamma(one - delta)?;
    Ok(ln.exp() / theta)
}

/// `L(δ, θ) = Γ(1+δ) Γ(−θ) / Γ(1−θ+δ)` for θ ∈ (0,1), δ ≥ 0.
///
/// Γ(−θ) is taken one recurrence step down, `Γ(1−θ) / (−θ)`, so `L < 0`.
pub fn l_const<T: Real>(delta: T, theta: T) -> Result<T> {
    check_theta(theta)?;
    if !(delta >= T::zero()) {
        return Err(Error::domain(format!("L needs delta >= 0, got {}", delta.as_f64())));
    }
    let one = T::one();
    let ln = log_gamma(one + delta)? + log_gamma(one - theta)? - log_gamma(one - theta + delta)?;
    Ok(-ln.exp() / theta)
}

/// `((1+u)^δ − 1) / u`, accurate for small u.
fn rel_power_increment<T: Real>(u: T, delta: T) -> T {
    if u == T::zero() {
        return delta;
    }
    (delta * u.ln_1p()).exp_m1() / u
}

/// Integral of `u^{-1-θ} · ((1+σu)^δ − 1)` over `[0, 1]` for σ = ±1,
/// after `u = v^{1/(1−θ)}` removes the `u^{-θ}` singularity at 0.
fn regularized_unit_integral<T: Real>(
    delta: T,
    theta: T,
    sign: T,
    upper: T,
    tol: &QuadTolerance<T>,
) -> Result<QuadEstimate<T>> {
    let p = T::one() / (T::one() - theta);
    let v_max = upper.powf(T::one() / p);
    integrate(
        |v: T| {
            let u = v.powf(p);
            p * sign * rel_power_increment(sign * u, delta)
        },
        T::zero(),
        v_max,
        tol,
    )
}

/// `∫₀^∞ ((1+u)^δ − 1) u^{−1−θ} du`, which equals `δ K(δ, θ)`.
pub fn k_integral<T: Real>(delta: T, theta: T) -> Result<T> {
    k_integral_with(delta, theta, &QuadTolerance::default()).map(|e| e.value)
}

pub fn k_integral_with<T: Real>(delta: T, theta: T, tol: &QuadTolerance<T>) -> Result<QuadEstimate<T>> {
    check_theta(theta)?;
    if !(delta < theta) {
        return Err(Error::domain("k_integral needs delta < theta"));
    }
    if delta == T::zero() {
        return Ok(QuadEstimate::zero());
    }
    let near = regularized_unit_integral(delta, theta, T::one(), T::one(), tol)?;
    // Tail decays like u^{δ−1−θ} (δ > 0) or u^{−1−θ} (δ < 0).
    let decay = T::one() + theta - delta.max(T::zero());
    let far = integrate_power_tail(
        |u: T| {
            let ln_u = u.ln();
            // (1+u)^δ computed through logs so huge u cannot overflow.
            let lead = (delta * (ln_u + u.recip().ln_1p()) - (T::one() + theta) * ln_u).exp();
            lead - (-(T::one() + theta) * ln_u).exp()
        },
        T::one(),
        decay,
        tol,
    )?;
    Ok(near.combine(far))
}

/// `∫₀¹ ((1−u)^δ − 1) u^{−1−θ} du`, which equals `L(δ, θ) + 1/θ`.
pub fn l_integral<T: Real>(delta: T, theta: T) -> Result<T> {
    l_integral_with(delta, theta, &QuadTolerance::default()).map(|e| e.value)
}

pub fn l_integral_with<T: Real>(delta: T, theta: T, tol: &QuadTolerance<T>) -> Result<QuadEstimate<T>> {
    check_theta(theta)?;
    if !(delta >= T::zero()) {
        return Err(Error::domain("l_integral needs delta >= 0"));
    }
    if delta == T::zero() {
        return Ok(QuadEstimate::zero());
    }
    let half = T::lit(0.5);
    let near = regularized_unit_integral(delta, theta, -T::one(), half, tol)?;
    let far = integrate_breakpoints(
        |u: T| (delta * (-u).ln_1p()).exp_m1() * u.powf(-T::one() - theta),
        &[half, T::one()],
        tol,
    )?;
    Ok(near.combine(far))
}

/// Root of a critical equation together with its certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalRoot<T> {
    pub delta0: T,
    /// Value of the defining function at `delta0`.
    pub residual: T,
    /// Final bracket; the defining function changes sign across it.
    pub bracket: (T, T),
}

/// How far `c π csc(πθ)` sits from `θ`, relative to θ; negative means the
/// down-drift critical equation has a root.
pub fn k_criticality_margin<T: Real>(c: T, theta: T) -> T {
    (c * pi_csc_pi(theta) - theta) / theta
}

/// Relative band around `c π csc(πθ) = θ` treated as the boundary itself.
pub fn critical_boundary_band<T: Real>() -> T {
    T::lit(16.0) * T::epsilon()
}

/// Unique δ₀ ∈ (0, θ) with `c K(δ₀, θ) = 1`.
///
/// Requires `c π csc(πθ) < θ` strictly; otherwise the chain sits in the
/// supercritical (transient) regime and no root exists.
pub fn delta0_k<T: Real>(c: T, theta: T) -> Result<CriticalRoot<T>> {
    delta0_k_with(c, theta, &BisectOptions::default())
}

pub fn delta0_k_with<T: Real>(c: T, theta: T, opts: &BisectOptions<T>) -> Result<CriticalRoot<T>> {
    check_theta(theta)?;
    if !(c > T::zero()) {
        return Err(Error::domain("c must be positive"));
    }
    let margin = k_criticality_margin(c, theta);
    if margin >= -critical_boundary_band::<T>() {
        return Err(Error::Supercritical(format!(
            "c·π·csc(πθ) = {} is not below θ = {}; the down-drift critical case is transient",
            (c * pi_csc_pi(theta)).as_f64(),
            theta.as_f64()
        )));
    }
    let f = |d: T| c * k_const(d, theta).unwrap_or(T::infinity()) - T::one();

    // K blows up as δ ↑ θ; shrink the gap until the sign flips.
    let mut gap = theta * T::lit(0.5);
    let mut tries = 0;
    while f(theta - gap) <= T::zero() {
        gap = gap * T::lit(0.5);
        tries += 1;
        if tries > 200 || !(theta - gap < theta) {
            return Err(Error::Numerical {
                what: "critical root of cK = 1 not bracketed".into(),
                achieved: f(theta - gap).as_f64(),
                requested: opts.residual_tol.as_f64(),
            });
        }
    }
    // Bisect on t = ln(θ − δ): near θ the slope of K in δ grows like
    // (θ − δ)^{-2}, and a plain δ bracket runs out of width before the
    // residual settles.
    let at = |t: T| theta - t.exp();
    let mut log_opts = *opts;
    log_opts.width_tol = opts.width_tol.min(T::epsilon() * T::lit(4.0));
    let b = bisect(|t: T| f(at(t)), gap.ln(), theta.ln(), &log_opts)?;
    let (t_lo, t_hi) = b.bracket;
    Ok(CriticalRoot {
        delta0: at(b.root),
        residual: b.residual,
        bracket: (at(t_hi), at(t_lo)),
    })
}

/// Unique δ₀ > 0 with `c L(δ₀, θ) + δ₀ = 0`.
///
/// The function starts at `−c/θ` and grows like `δ − c|Γ(−θ)|δ^θ`, so the
/// initial upper bracket comes from the sublinear asymptote and is doubled
/// until the sign flips (capped at δ = 1e6).
pub fn delta0_l<T: Real>(c: T, theta: T) -> Result<CriticalRoot<T>> {
    delta0_l_with(c, theta, &BisectOptions::default())
}

pub fn delta0_l_with<T: Real>(c: T, theta: T, opts: &BisectOptions<T>) -> Result<CriticalRoot<T>> {
    check_theta(theta)?;
    if !(c > T::zero()) {
        return Err(Error::domain("c must be positive"));
    }
    let f = |d: T| c * l_const(d, theta).unwrap_or(T::nan()) + d;
    let gamma_neg_theta = gamma(T::one() - theta)? / theta;
    let mut hi = (T::lit(2.0) * c * gamma_neg_theta)
        .powf(T::one() / (T::one() - theta))
        .max(T::one());
    let mut lo = T::zero();
    let cap = T::lit(1e6);
    while f(hi) <= T::zero() {
        lo = hi;
        hi = hi * T::lit(2.0);
        if hi > cap {
            return Err(Error::Numerical {
                what: "critical root of cL + δ = 0 beyond δ = 1e6".into(),
                achieved: f(lo).abs().as_f64(),
                requested: opts.residual_tol.as_f64(),
            });
        }
    }
    let b = bisect(f, lo, hi, opts)?;
    Ok(CriticalRoot {
        delta0: b.root,
        residual: b.residual,
        bracket: b.bracket,
    })
}
