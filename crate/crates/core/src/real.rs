//! Scalar abstraction shared by the numerical layers.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar the numerical layers are generic over (`f32`, `f64`).
///
/// Carries the default tolerances for the type, since the f64 targets
/// (1e-10 quadrature, 1e-9 root residuals) are meaningless in single precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative tolerance for adaptive quadrature.
    const QUAD_REL_TOL: f64;
    /// Absolute tolerance for adaptive quadrature.
    const QUAD_ABS_TOL: f64;
    /// Largest accepted |residual| for the critical-root solvers.
    const ROOT_RESIDUAL_TOL: f64;
    /// Bracket width at which bisection stops.
    const ROOT_WIDTH_TOL: f64;

    /// Lossless for f64, rounding for f32.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const QUAD_REL_TOL: f64 = 1e-10;
    const QUAD_ABS_TOL: f64 = 1e-14;
    const ROOT_RESIDUAL_TOL: f64 = 1e-9;
    const ROOT_WIDTH_TOL: f64 = 1e-13;
}

impl Real for f32 {
    const QUAD_REL_TOL: f64 = 2e-5;
    const QUAD_ABS_TOL: f64 = 1e-7;
    const ROOT_RESIDUAL_TOL: f64 = 2e-5;
    const ROOT_WIDTH_TOL: f64 = 1e-6;
}
