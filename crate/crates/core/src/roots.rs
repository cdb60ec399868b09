//! Bracketing bisection for monotone scalar equations.

use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectOptions<T> {
    pub residual_tol: T,
    pub width_tol: T,
    pub max_iter: usize,
}

impl<T: Real> Default for BisectOptions<T> {
    fn default() -> Self {
        Self {
            residual_tol: T::lit(T::ROOT_RESIDUAL_TOL),
            width_tol: T::lit(T::ROOT_WIDTH_TOL),
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection<T> {
    pub root: T,
    pub residual: T,
    /// Final bracket; `f` changes sign across it.
    pub bracket: (T, T),
    pub iterations: usize,
}

/// Bisects `f` on `[lo, hi]`, which must straddle a sign change.
///
/// Runs until the bracket is narrower than `width_tol` (or `f` hits zero
/// exactly), then requires `|f| <= residual_tol` at the best point seen.
pub fn bisect<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, opts: &BisectOptions<T>) -> Result<Bisection<T>> {
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if !(f_lo.is_finite() && f_hi.is_finite()) {
        return Err(Error::Numerical {
            what: "non-finite value at bracket endpoint".into(),
            achieved: f64::NAN,
            requested: opts.residual_tol.as_f64(),
        });
    }
    if f_lo.signum() == f_hi.signum() && f_lo != T::zero() && f_hi != T::zero() {
        return Err(Error::Numerical {
            what: format!("no sign change on [{}, {}]", lo.as_f64(), hi.as_f64()),
            achieved: f_lo.abs().min(f_hi.abs()).as_f64(),
            requested: opts.residual_tol.as_f64(),
        });
    }
    let half = T::lit(0.5);
    let mut best = if f_lo.abs() <= f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };

    let mut iterations = 0;
    for it in 1..=opts.max_iter {
        iterations = it;
        let mid = lo + half * (hi - lo);
        let f_mid = f(mid);
        if f_mid.abs() < best.1.abs() {
            best = (mid, f_mid);
        }
        if f_mid == T::zero() {
            return Ok(Bisection {
                root: mid,
                residual: f_mid,
                bracket: (mid, mid),
                iterations: it,
            });
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= opts.width_tol {
            break;
        }
    }
    if best.1.abs() <= opts.residual_tol {
        return Ok(Bisection {
            root: best.0,
            residual: best.1,
            bracket: (lo, hi),
            iterations,
        });
    }
    Err(Error::Numerical {
        what: format!("bisection stalled near {:e}", best.0.as_f64()),
        achieved: best.1.abs().as_f64(),
        requested: opts.residual_tol.as_f64(),
    })
}
