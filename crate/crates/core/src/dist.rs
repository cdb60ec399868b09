//! Heavy-tailed innovation laws.
//!
//! A law is a uniform body on `[0, y0)` and/or `[-y0, 0)` glued to power
//! tails `m(y) = c_y |y|^{-1-θ}` beyond `y0`. The tail constant profile is
//! either flat (`c_y = c`) or log-periodic (`c_y = c (1 + A sin ln y)`), which
//! stays within `[c(1−A), c(1+A)]` without converging. Every CDF is closed
//! form, so sampling is exact inverse-CDF except for the log-periodic tail,
//! which is drawn by rejection against the flat envelope `c (1 + A)`
//! (acceptance rate at least `(1−A)/(1+A)`).

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quad::{integrate_breakpoints, integrate_power_tail, QuadTolerance};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Support {
    PositiveOnly,
    NegativeOnly,
    TwoSided,
}

impl Support {
    pub fn has_right(self) -> bool {
        matches!(self, Support::PositiveOnly | Support::TwoSided)
    }

    pub fn has_left(self) -> bool {
        matches!(self, Support::NegativeOnly | Support::TwoSided)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailProfile<T> {
    Constant,
    Oscillating { amplitude: T },
}

impl<T: Real> TailProfile<T> {
    pub fn amplitude(&self) -> T {
        match *self {
            TailProfile::Constant => T::zero(),
            TailProfile::Oscillating { amplitude } => amplitude,
        }
    }

    /// Multiplier `c_y / c` at `y`.
    #[inline]
    pub fn factor(&self, y: T) -> T {
        match *self {
            TailProfile::Constant => T::one(),
            TailProfile::Oscillating { amplitude } => T::one() + amplitude * y.ln().sin(),
        }
    }

    /// `∫_y^∞ (c_s/c) s^{-1-θ} ds` for `y > 0`.
    pub fn tail_integral(&self, y: T, theta: T) -> T {
        let base = y.powf(-theta);
        match *self {
            TailProfile::Constant => base / theta,
            TailProfile::Oscillating { amplitude } => {
                let l = y.ln();
                base * (theta.recip()
                    + amplitude * (theta * l.sin() + l.cos()) / (T::one() + theta * theta))
            }
        }
    }
}

/// Tail exponent and constant of one side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTail<T> {
    pub theta: T,
    pub c: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Side::Right => T::one(),
            Side::Left => -T::one(),
        }
    }
}

/// One component of a law, in the form the drift integrator consumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LawPiece<T> {
    Atom {
        at: T,
        mass: T,
    },
    /// Uniform mass on `[lo, hi)`.
    Uniform {
        lo: T,
        hi: T,
        mass: T,
    },
    /// Density `c_y y^{-1-θ}` for `y = |α| ≥ onset` on the given side.
    Tail {
        side: Side,
        onset: T,
        tail: PowerTail<T>,
        profile: TailProfile<T>,
    },
}

impl<T: Real> LawPiece<T> {
    pub fn mass(&self) -> T {
        match *self {
            LawPiece::Atom { mass, .. } | LawPiece::Uniform { mass, .. } => mass,
            LawPiece::Tail {
                onset,
                tail,
                profile,
                ..
            } => tail.c * profile.tail_integral(onset, tail.theta),
        }
    }
}

/// Anything the chain can be driven by.
pub trait InnovationLaw<T: Real>: Send + Sync {
    /// Maps a uniform `u ∈ (0, 1)` to an innovation. Callers guarantee the range.
    fn draw(&self, u: T) -> T;

    /// Decomposition into atoms, uniform bodies and power tails.
    fn pieces(&self) -> Vec<LawPiece<T>>;
}

/// Degenerate law with all mass at one point; used for deterministic skeletons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMass<T>(pub T);

impl<T: Real> InnovationLaw<T> for PointMass<T> {
    #[inline]
    fn draw(&self, _u: T) -> T {
        self.0
    }

    fn pieces(&self) -> Vec<LawPiece<T>> {
        vec![LawPiece::Atom {
            at: self.0,
            mass: T::one(),
        }]
    }
}

/// A fully specified, normalized heavy-tailed innovation law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnovationSpec<T> {
    support: Support,
    right: Option<PowerTail<T>>,
    left: Option<PowerTail<T>>,
    y0: T,
    profile: TailProfile<T>,
    lattice: bool,
    body_right: T,
    body_left: T,
    tail_mass_right: T,
    tail_mass_left: T,
}

#[derive(Debug, Clone, Copy)]
pub struct InnovationBuilder<T> {
    support: Support,
    right: Option<PowerTail<T>>,
    left: Option<PowerTail<T>>,
    y0: T,
    profile: TailProfile<T>,
    lattice: bool,
    right_body_share: T,
}

impl<T: Real> InnovationBuilder<T> {
    pub fn right_tail(mut self, theta: T, c: T) -> Self {
        self.right = Some(PowerTail { theta, c });
        self
    }

    pub fn left_tail(mut self, theta: T, c: T) -> Self {
        self.left = Some(PowerTail { theta, c });
        self
    }

    /// Tail onset; the body is uniform on `[0, y0)` per side.
    pub fn y0(mut self, y0: T) -> Self {
        self.y0 = y0;
        self
    }

    pub fn profile(mut self, profile: TailProfile<T>) -> Self {
        self.profile = profile;
        self
    }

    pub fn lattice(mut self, lattice: bool) -> Self {
        self.lattice = lattice;
        self
    }

    /// Fraction of the body mass placed on the positive side (two-sided laws).
    pub fn right_body_share(mut self, share: T) -> Self {
        self.right_body_share = share;
        self
    }

    pub fn build(self) -> Result<InnovationSpec<T>> {
        let zero = T::zero();
        let one = T::one();
        if !(self.y0 > zero && self.y0.is_finite()) {
            return Err(Error::domain("tail onset y0 must be positive"));
        }
        let amp = self.profile.amplitude();
        if !(amp >= zero && amp < one) {
            return Err(Error::domain("oscillation amplitude must lie in [0, 1)"));
        }
        let check = |t: Option<PowerTail<T>>, name: &str| -> Result<Option<PowerTail<T>>> {
            match t {
                None => Err(Error::domain(format!("{name} tail parameters are required"))),
                Some(p) if !(p.theta > zero && p.theta < one) => Err(Error::domain(format!(
                    "{name} tail exponent must lie in (0, 1), got {}",
                    p.theta.as_f64()
                ))),
                Some(p) if !(p.c > zero && p.c.is_finite()) => {
                    Err(Error::domain(format!("{name} tail constant must be positive")))
                }
                Some(p) => Ok(Some(p)),
            }
        };
        let right = if self.support.has_right() { check(self.right, "right")? } else { None };
        let left = if self.support.has_left() { check(self.left, "left")? } else { None };

        let mass = |t: Option<PowerTail<T>>| {
            t.map_or(zero, |p| p.c * self.profile.tail_integral(self.y0, p.theta))
        };
        let tail_mass_right = mass(right);
        let tail_mass_left = mass(left);
        let body = one - tail_mass_right - tail_mass_left;
        if !(body > zero) {
            return Err(Error::domain(format!(
                "tail masses {} + {} leave no room for a body; lower c or raise y0",
                tail_mass_right.as_f64(),
                tail_mass_left.as_f64()
            )));
        }
        let share = match self.support {
            Support::PositiveOnly => one,
            Support::NegativeOnly => zero,
            Support::TwoSided => {
                if !(self.right_body_share > zero && self.right_body_share < one) {
                    return Err(Error::domain("right body share must lie in (0, 1)"));
                }
                self.right_body_share
            }
        };
        Ok(InnovationSpec {
            support: self.support,
            right,
            left,
            y0: self.y0,
            profile: self.profile,
            lattice: self.lattice,
            body_right: body * share,
            body_left: body * (one - share),
            tail_mass_right,
            tail_mass_left,
        })
    }
}

impl<T: Real> InnovationSpec<T> {
    pub fn builder(support: Support) -> InnovationBuilder<T> {
        InnovationBuilder {
            support,
            right: None,
            left: None,
            y0: T::one(),
            profile: TailProfile::Constant,
            lattice: false,
            right_body_share: T::lit(0.5),
        }
    }

    /// Nonnegative innovations with a flat right tail, `y0 = 1`.
    pub fn positive(theta: T, c: T) -> Result<Self> {
        Self::builder(Support::PositiveOnly).right_tail(theta, c).build()
    }

    /// Nonpositive innovations with a flat left tail, `y0 = 1`.
    pub fn negative(theta: T, c: T) -> Result<Self> {
        Self::builder(Support::NegativeOnly).left_tail(theta, c).build()
    }

    pub fn two_sided(theta_right: T, c_right: T, theta_left: T, c_left: T) -> Result<Self> {
        Self::builder(Support::TwoSided)
            .right_tail(theta_right, c_right)
            .left_tail(theta_left, c_left)
            .build()
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn right(&self) -> Option<PowerTail<T>> {
        self.right
    }

    pub fn left(&self) -> Option<PowerTail<T>> {
        self.left
    }

    pub fn tail(&self, side: Side) -> Option<PowerTail<T>> {
        match side {
            Side::Right => self.right,
            Side::Left => self.left,
        }
    }

    pub fn y0(&self) -> T {
        self.y0
    }

    pub fn profile(&self) -> TailProfile<T> {
        self.profile
    }

    pub fn lattice(&self) -> bool {
        self.lattice
    }

    /// Body probability on `[0, y0)` and `[-y0, 0)`.
    pub fn body_mass(&self) -> (T, T) {
        (self.body_right, self.body_left)
    }

    /// Total probability beyond `y0` on each side.
    pub fn tail_mass(&self) -> (T, T) {
        (self.tail_mass_right, self.tail_mass_left)
    }

    /// Bounds `(b₁, b₂)` of `c_y` on the given side.
    pub fn c_bounds(&self, side: Side) -> Option<(T, T)> {
        let a = self.profile.amplitude();
        self.tail(side)
            .map(|p| (p.c * (T::one() - a), p.c * (T::one() + a)))
    }

    /// Density of the continuous law (lattice laws report their continuous parent).
    pub fn density(&self, y: T) -> T {
        let zero = T::zero();
        let side_density = |t: Option<PowerTail<T>>, body: T, mag: T| -> T {
            match t {
                None => zero,
                Some(p) if mag >= self.y0 => p.c * self.profile.factor(mag) * mag.powf(-T::one() - p.theta),
                Some(_) => body / self.y0,
            }
        };
        if y >= zero {
            side_density(self.right, self.body_right, y)
        } else {
            side_density(self.left, self.body_left, -y)
        }
    }

    fn continuous_tail(&self, side: Side, y: T) -> T {
        let (tail, body, tail_mass) = match side {
            Side::Right => (self.right, self.body_right, self.tail_mass_right),
            Side::Left => (self.left, self.body_left, self.tail_mass_left),
        };
        let Some(p) = tail else {
            return T::zero();
        };
        if y >= self.y0 {
            p.c * self.profile.tail_integral(y, p.theta)
        } else {
            tail_mass + body * (self.y0 - y.max(T::zero())) / self.y0
        }
    }

    fn side_tail(&self, side: Side, y: T) -> T {
        if self.lattice {
            // Rounded tail draws exceed y exactly when the continuous draw
            // reaches floor(y) + 1/2.
            let mid = y.floor() + T::lit(0.5);
            if mid >= self.y0 && y >= self.y0 {
                return self.continuous_tail(side, mid);
            }
        }
        self.continuous_tail(side, y)
    }

    /// `P(α > y)` for `y ≥ 0`.
    pub fn tail_right(&self, y: T) -> T {
        self.side_tail(Side::Right, y)
    }

    /// `P(α < −y)` for `y ≥ 0`.
    pub fn tail_left(&self, y: T) -> T {
        self.side_tail(Side::Left, y)
    }

    /// `P(α ≤ y)`.
    pub fn cdf(&self, y: T) -> T {
        if y >= T::zero() {
            T::one() - self.tail_right(y)
        } else {
            self.tail_left(-y)
        }
    }

    /// Inverse-CDF draw for `u ∈ (0, 1)`.
    pub fn sample(&self, u: T) -> Result<T> {
        if !(u > T::zero() && u < T::one()) {
            return Err(Error::domain(format!("sample needs u in (0, 1), got {}", u.as_f64())));
        }
        Ok(self.draw(u))
    }

    fn tail_draw(&self, p: PowerTail<T>, mass: T, residual: T, u: T) -> T {
        let y = match self.profile {
            TailProfile::Constant => self.y0 * (mass / residual).powf(p.theta.recip()),
            TailProfile::Oscillating { amplitude } => {
                // Auxiliary uniforms are keyed on u so the draw stays a pure function of it.
                let mut rng = ChaCha8Rng::seed_from_u64(u.as_f64().to_bits());
                let envelope = T::one() + amplitude;
                loop {
                    let v = open_unit::<T>(rng.next_u64());
                    let y = self.y0 * v.powf(-p.theta.recip());
                    let w = open_unit::<T>(rng.next_u64());
                    if w * envelope <= self.profile.factor(y) {
                        break y;
                    }
                }
            }
        };
        if self.lattice {
            y.round().max(T::one())
        } else {
            y
        }
    }
}

/// Maps 64 random bits to a uniform in the open interval (0, 1).
#[inline]
pub fn open_unit<T: Real>(bits: u64) -> T {
    let u = ((bits >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64);
    let t = T::lit(u);
    if t >= T::one() {
        T::one() - T::epsilon() * T::lit(0.5)
    } else {
        t
    }
}

impl<T: Real> InnovationLaw<T> for InnovationSpec<T> {
    fn draw(&self, u: T) -> T {
        let tl = self.tail_mass_left;
        if u < tl {
            let p = self.left.expect("left tail mass implies left tail");
            return -self.tail_draw(p, tl, u, u);
        }
        let u1 = u - tl;
        if u1 < self.body_left {
            return -self.y0 + self.y0 * u1 / self.body_left;
        }
        let u2 = u1 - self.body_left;
        if u2 < self.body_right {
            return self.y0 * u2 / self.body_right;
        }
        match self.right {
            Some(p) => {
                let residual = (T::one() - u).min(self.tail_mass_right);
                self.tail_draw(p, self.tail_mass_right, residual, u)
            }
            // Rounding pushed u past the last segment of a left-only law.
            None => T::zero(),
        }
    }

    fn pieces(&self) -> Vec<LawPiece<T>> {
        let mut out = Vec::with_capacity(4);
        if let Some(tail) = self.left {
            out.push(LawPiece::Tail {
                side: Side::Left,
                onset: self.y0,
                tail,
                profile: self.profile,
            });
        }
        if self.body_left > T::zero() {
            out.push(LawPiece::Uniform {
                lo: -self.y0,
                hi: T::zero(),
                mass: self.body_left,
            });
        }
        if self.body_right > T::zero() {
            out.push(LawPiece::Uniform {
                lo: T::zero(),
                hi: self.y0,
                mass: self.body_right,
            });
        }
        if let Some(tail) = self.right {
            out.push(LawPiece::Tail {
                side: Side::Right,
                onset: self.y0,
                tail,
                profile: self.profile,
            });
        }
        out
    }
}

/// Which part of the innovation a truncated moment refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// `α⁺ = max(α, 0)`
    Positive,
    /// `α⁻ = max(−α, 0)`
    Negative,
}

/// `E(Z^δ 1{a ≤ Z < b})` for `Z = α⁺` or `α⁻`, computed from the tail function:
///
/// ```text
/// ∫_{a^δ}^{b^δ} P(Z > t^{1/δ}) dt − b^δ P(Z ≥ b) + a^δ P(Z ≥ a)
/// ```
///
/// `b = None` means `b = ∞`; the boundary term then vanishes and the moment
/// is finite only when `δ` is below the tail exponent of that side.
pub fn truncated_expectation<T: Real>(
    spec: &InnovationSpec<T>,
    part: Part,
    delta: T,
    a: T,
    b: Option<T>,
) -> Result<T> {
    if !(delta > T::zero()) {
        return Err(Error::domain("truncated_expectation needs delta > 0"));
    }
    if !(a >= T::zero()) {
        return Err(Error::domain("lower limit must be nonnegative"));
    }
    if let Some(b) = b {
        if b < a {
            return Err(Error::domain("upper limit below lower limit"));
        }
        if b == a {
            return Ok(T::zero());
        }
    }
    let side = match part {
        Part::Positive => Side::Right,
        Part::Negative => Side::Left,
    };
    let survival = |y: T| spec.side_tail(side, y);
    let inv = delta.recip();
    let tol = QuadTolerance::default();
    let ta = a.powf(delta);
    let boundary_a = ta * survival(a);

    let y0 = spec.y0();
    let finite_integral = |hi: T| -> Result<T> {
        let th = hi.powf(delta);
        let mut pts = vec![ta];
        let t0 = y0.powf(delta);
        if t0 > ta && t0 < th {
            pts.push(t0);
        }
        pts.push(th);
        Ok(integrate_breakpoints(|t: T| survival(t.powf(inv)), &pts, &tol)?.value)
    };

    match b {
        Some(b) => Ok(finite_integral(b)? - b.powf(delta) * survival(b) + boundary_a),
        None => {
            let Some(p) = spec.tail(side) else {
                // No mass on that side beyond the body: cut at y0.
                return Ok(finite_integral(y0.max(a))? - y0.max(a).powf(delta) * survival(y0.max(a)) + boundary_a);
            };
            if !(delta < p.theta) {
                return Err(Error::Divergent(format!(
                    "E(Z^{}) is infinite for a tail of exponent {}",
                    delta.as_f64(),
                    p.theta.as_f64()
                )));
            }
            let start = y0.max(a);
            let near = if start > a { finite_integral(start)? } else { T::zero() };
            let far = integrate_power_tail(
                |t: T| survival(t.powf(inv)),
                start.powf(delta),
                p.theta / delta,
                &tol,
            )?;
            Ok(near + far.value + boundary_a)
        }
    }
}
