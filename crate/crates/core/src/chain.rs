//! The recursion `ζ_{n+1} = (ζ_n ± ζ_n^γ + α_{n+1})⁺`, trajectories and passage times.

use crate::dist::InnovationLaw;
use crate::error::{Error, Result};
use crate::real::Real;
use crate::rng::{TrajectorySeed, UniformStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Drift {
    /// `x − x^γ`
    Down,
    /// `x + x^γ`
    Up,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec<T> {
    pub drift: Drift,
    pub gamma: T,
    /// Apply `(·)⁺` after each step.
    pub reflect: bool,
    /// Target set `[0, a]`; `a = 0` is the single state 0.
    pub target_a: T,
}

impl<T: Real> ModelSpec<T> {
    pub fn new(drift: Drift, gamma: T, target_a: T) -> Result<Self> {
        let m = Self {
            drift,
            gamma,
            reflect: true,
            target_a,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn down(gamma: T, target_a: T) -> Result<Self> {
        Self::new(Drift::Down, gamma, target_a)
    }

    pub fn up(gamma: T, target_a: T) -> Result<Self> {
        Self::new(Drift::Up, gamma, target_a)
    }

    pub fn with_reflect(mut self, reflect: bool) -> Self {
        self.reflect = reflect;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > T::zero() && self.gamma < T::one()) {
            return Err(Error::domain(format!(
                "gamma must lie in (0, 1), got {}",
                self.gamma.as_f64()
            )));
        }
        if !(self.target_a >= T::zero() && self.target_a.is_finite()) {
            return Err(Error::domain("target_a must be a finite nonnegative number"));
        }
        Ok(())
    }

    #[inline]
    pub fn drift_power(&self, x: T) -> T {
        if self.gamma == T::lit(0.5) {
            x.sqrt()
        } else {
            x.powf(self.gamma)
        }
    }

    /// The deterministic part `x ± x^γ`.
    #[inline]
    pub fn skeleton(&self, x: T) -> T {
        match self.drift {
            Drift::Down => x - self.drift_power(x),
            Drift::Up => x + self.drift_power(x),
        }
    }

    /// One step from `x ≥ 0` with innovation `alpha`.
    #[inline]
    pub fn step(&self, x: T, alpha: T) -> T {
        let next = self.skeleton(x) + alpha;
        if self.reflect {
            next.max(T::zero())
        } else {
            next
        }
    }

    #[inline]
    pub fn in_target(&self, x: T) -> bool {
        x <= self.target_a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Passage {
    Hit(u64),
    /// No hit within the horizon.
    Censored(u64),
}

impl Passage {
    pub fn hit(&self) -> Option<u64> {
        match *self {
            Passage::Hit(n) => Some(n),
            Passage::Censored(_) => None,
        }
    }

    pub fn is_censored(&self) -> bool {
        matches!(self, Passage::Censored(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassageResult<T> {
    pub tau: Passage,
    pub hit_value: Option<T>,
    /// Largest state visited, including the start.
    pub max_excursion: T,
}

fn check_start<T: Real>(x0: T, horizon: u64) -> Result<()> {
    if !(x0 >= T::zero() && x0.is_finite()) {
        return Err(Error::domain("start state must be finite and nonnegative"));
    }
    if horizon == 0 {
        return Err(Error::domain("horizon must be at least 1"));
    }
    Ok(())
}

fn unreflected_negative(n: u64) -> Error {
    Error::domain(format!(
        "state went negative at step {n} with reflection disabled"
    ))
}

/// Materializes `horizon + 1` states starting from `x0`.
pub fn simulate<T: Real, L: InnovationLaw<T> + ?Sized>(
    model: &ModelSpec<T>,
    law: &L,
    x0: T,
    horizon: u64,
    seed: TrajectorySeed,
) -> Result<Vec<T>> {
    model.validate()?;
    check_start(x0, horizon)?;
    let mut stream = UniformStream::new(seed);
    let mut out = Vec::with_capacity(horizon as usize + 1);
    let mut x = x0;
    out.push(x);
    for n in 1..=horizon {
        x = model.step(x, law.draw(stream.next_uniform()));
        if x < T::zero() {
            return Err(unreflected_negative(n));
        }
        out.push(x);
    }
    Ok(out)
}

/// First `n ≥ 1` with `ζ_n ≤ a`, streaming without storing the path.
pub fn passage_time<T: Real, L: InnovationLaw<T> + ?Sized>(
    model: &ModelSpec<T>,
    law: &L,
    x0: T,
    horizon: u64,
    seed: TrajectorySeed,
) -> Result<PassageResult<T>> {
    model.validate()?;
    check_start(x0, horizon)?;
    if model.in_target(x0) {
        return Err(Error::domain(format!(
            "start {} lies inside the target [0, {}]",
            x0.as_f64(),
            model.target_a.as_f64()
        )));
    }
    let mut stream = UniformStream::new(seed);
    let mut x = x0;
    let mut max = x0;
    for n in 1..=horizon {
        x = model.step(x, law.draw(stream.next_uniform()));
        if model.in_target(x) {
            if x < T::zero() {
                return Err(unreflected_negative(n));
            }
            return Ok(PassageResult {
                tau: Passage::Hit(n),
                hit_value: Some(x),
                max_excursion: max,
            });
        }
        if x > max {
            max = x;
        }
    }
    Ok(PassageResult {
        tau: Passage::Censored(horizon),
        hit_value: None,
        max_excursion: max,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SkeletonVariant {
    /// `f(x) = x − x^γ`
    Plain,
    /// `f(x) = x − x^γ + 1`, fixed point at 1.
    Shifted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterministicHitting<T> {
    pub exact_steps: u64,
    /// `x0^{1−γ} / (1−γ)`
    pub asymptotic: T,
}

/// Smallest target accepted for the plain skeleton; below it the iterates crawl near 0.
pub const PLAIN_TARGET_FLOOR: f64 = 0.1;

const SKELETON_STEP_CAP: f64 = 1e9;

/// Steps for the noiseless iteration `x ↦ f(x)` to enter `[0, a]`.
pub fn deterministic_hitting_time<T: Real>(
    gamma: T,
    x0: T,
    a: T,
    variant: SkeletonVariant,
) -> Result<DeterministicHitting<T>> {
    if !(gamma > T::zero() && gamma < T::one()) {
        return Err(Error::domain("gamma must lie in (0, 1)"));
    }
    match variant {
        SkeletonVariant::Plain if !(a >= T::lit(PLAIN_TARGET_FLOOR)) => {
            return Err(Error::domain(format!(
                "plain skeleton needs a >= {PLAIN_TARGET_FLOOR}"
            )))
        }
        SkeletonVariant::Shifted if !(a > T::one()) => {
            return Err(Error::domain(
                "shifted skeleton has a fixed point at 1 and needs a > 1",
            ))
        }
        _ => {}
    }
    if !(x0 > a && x0.is_finite()) {
        return Err(Error::domain("start must exceed the target level"));
    }
    let one_minus = T::one() - gamma;
    let asymptotic = x0.powf(one_minus) / one_minus;
    if asymptotic > T::lit(SKELETON_STEP_CAP) {
        return Err(Error::domain(format!(
            "about {:e} iterations needed; start too large",
            asymptotic.as_f64()
        )));
    }
    let model = ModelSpec {
        drift: Drift::Down,
        gamma,
        reflect: false,
        target_a: a,
    };
    let shift = match variant {
        SkeletonVariant::Plain => T::zero(),
        SkeletonVariant::Shifted => T::one(),
    };
    let mut x = x0;
    let mut n = 0u64;
    while x > a {
        x = model.skeleton(x) + shift;
        n += 1;
    }
    Ok(DeterministicHitting {
        exact_steps: n,
        asymptotic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::PointMass;

    #[test]
    fn step_arithmetic() {
        let down = ModelSpec::down(0.5, 1.0).unwrap();
        assert_eq!(down.step(4.0, 1.0), 3.0);
        assert_eq!(ModelSpec::down(0.37, 1.0).unwrap().step(1.0, 0.0), 0.0);
        let up = ModelSpec::up(0.5, 0.0).unwrap();
        assert_eq!(up.step(4.0, -7.0), 0.0);
        assert_eq!(up.with_reflect(false).step(4.0, -7.0), -1.0);
    }

    #[test]
    fn invalid_models() {
        assert!(ModelSpec::down(1.0, 1.0).is_err());
        assert!(ModelSpec::down(0.5, -1.0).is_err());
    }

    #[test]
    fn zero_stub_passage() {
        let m = ModelSpec::down(0.5, 1.0).unwrap();
        let r = passage_time(&m, &PointMass(0.0), 4.0, 100, TrajectorySeed::new(0, 0)).unwrap();
        assert_eq!(r.tau, Passage::Hit(2));
        assert!((r.hit_value.unwrap() - (2.0 - 2f64.sqrt())).abs() < 1e-15);
        assert_eq!(r.max_excursion, 4.0);
        let c = passage_time(&m, &PointMass(0.0), 4.0, 1, TrajectorySeed::new(0, 0)).unwrap();
        assert_eq!(c.tau, Passage::Censored(1));
    }

    #[test]
    fn one_step_kill() {
        let m = ModelSpec::up(0.5, 0.0).unwrap();
        let r = passage_time(&m, &PointMass(-1e3), 100.0, 10, TrajectorySeed::new(3, 1)).unwrap();
        assert_eq!(r.tau, Passage::Hit(1));
        assert_eq!(r.hit_value, Some(0.0));
    }

    #[test]
    fn start_inside_target_rejected() {
        let m = ModelSpec::down(0.5, 2.0).unwrap();
        assert!(passage_time(&m, &PointMass(0.0), 1.5, 10, TrajectorySeed::new(0, 0)).is_err());
    }

    #[test]
    fn simulate_shape() {
        let m = ModelSpec::down(0.5, 1.0).unwrap();
        let t = simulate(&m, &PointMass(0.0), 9.0, 1, TrajectorySeed::new(0, 0)).unwrap();
        assert_eq!(t, vec![9.0, 6.0]);
    }

    #[test]
    fn skeleton_counts() {
        let h = deterministic_hitting_time(0.5, 4.0, 1.0, SkeletonVariant::Plain).unwrap();
        assert_eq!(h.exact_steps, 2);
        assert_eq!(h.asymptotic, 4.0);
        let one = deterministic_hitting_time(0.5, 1.5, 1.0, SkeletonVariant::Plain).unwrap();
        assert_eq!(one.exact_steps, 1);
        assert!(deterministic_hitting_time(0.5, 10.0, 1.0, SkeletonVariant::Shifted).is_err());
        assert!(deterministic_hitting_time(0.5, 10.0, 0.01, SkeletonVariant::Plain).is_err());
    }
}
