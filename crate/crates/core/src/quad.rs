//! Globally adaptive 21-point Gauss–Kronrod quadrature.
//!
//! Panels from every initial subinterval live in one pool; the panel with the
//! largest error estimate is bisected until the summed error meets
//! `max(abs, rel * |I|)`. Kronrod nodes never touch the panel endpoints, so
//! integrable endpoint singularities are handled by repeated bisection, and the
//! substitutions in [`integrate_power_tail`] turn algebraically decaying tails
//! into bounded integrands on `(0, 1]`.

use crate::error::{Error, Result};
use crate::real::Real;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_478_366,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// 10-point Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadTolerance<T> {
    pub rel: T,
    pub abs: T,
    pub max_panels: usize,
}

impl<T: Real> Default for QuadTolerance<T> {
    fn default() -> Self {
        Self {
            rel: T::lit(T::QUAD_REL_TOL),
            abs: T::lit(T::QUAD_ABS_TOL),
            max_panels: 10_000,
        }
    }
}

impl<T: Real> QuadTolerance<T> {
    pub fn with_rel(mut self, rel: T) -> Self {
        self.rel = rel;
        self
    }

    pub fn with_abs(mut self, abs: T) -> Self {
        self.abs = abs;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate<T> {
    pub value: T,
    pub abs_error: T,
    pub panels: usize,
}

impl<T: Real> QuadEstimate<T> {
    pub fn zero() -> Self {
        Self {
            value: T::zero(),
            abs_error: T::zero(),
            panels: 0,
        }
    }

    /// Sum of two independent estimates; errors add.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            abs_error: self.abs_error + other.abs_error,
            panels: self.panels + other.panels,
        }
    }

    pub fn scale(self, k: T) -> Self {
        Self {
            value: self.value * k,
            abs_error: self.abs_error * k.abs(),
            panels: self.panels,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn gauss_kronrod<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Result<Panel<T>> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let abs_half = half_len.abs();

    let fc = f(center);
    let mut res_k = fc * T::lit(WGK[10]);
    let mut res_g = T::zero();
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    if !res_k.is_finite() || !fc.is_finite() {
        return Err(Error::Numerical {
            what: format!(
                "non-finite integrand on [{:e}, {:e}]",
                a.as_f64(),
                b.as_f64()
            ),
            achieved: f64::INFINITY,
            requested: 0.0,
        });
    }

    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half_len;
    res_abs = res_abs * abs_half;
    res_asc = res_asc * abs_half;
    let mut err = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && err != T::zero() {
        let scale = (T::lit(200.0) * err / res_asc).powf(T::lit(1.5));
        err = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let round_off = T::lit(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) && round_off > err {
        err = round_off;
    }
    Ok(Panel {
        a,
        b,
        value,
        error: err,
    })
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    tol: &QuadTolerance<T>,
) -> Result<QuadEstimate<T>> {
    integrate_breakpoints(f, &[a, b], tol)
}

/// Integrates over `[points[0], points[last]]`, with the interior points as
/// initial panel boundaries. Points must be nondecreasing; empty panels are skipped.
pub fn integrate_breakpoints<T: Real, F: Fn(T) -> T>(
    f: F,
    points: &[T],
    tol: &QuadTolerance<T>,
) -> Result<QuadEstimate<T>> {
    if points.len() < 2 {
        return Ok(QuadEstimate::zero());
    }
    let mut panels = Vec::with_capacity(64);
    for w in points.windows(2) {
        if w[1] < w[0] {
            return Err(Error::domain("quadrature breakpoints must be nondecreasing"));
        }
        if w[1] > w[0] {
            panels.push(gauss_kronrod(&f, w[0], w[1])?);
        }
    }
    if panels.is_empty() {
        return Ok(QuadEstimate::zero());
    }

    loop {
        let total: T = panels.iter().map(|p| p.value).sum();
        let err: T = panels.iter().map(|p| p.error).sum();
        let target = tol.abs.max(tol.rel * total.abs());
        if err <= target {
            return Ok(QuadEstimate {
                value: total,
                abs_error: err,
                panels: panels.len(),
            });
        }
        if panels.len() >= tol.max_panels {
            return Err(Error::Numerical {
                what: format!("quadrature panel cap {} reached", tol.max_panels),
                achieved: err.as_f64(),
                requested: target.as_f64(),
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |acc, (i, p)| {
                if p.error > acc.1 {
                    (i, p.error)
                } else {
                    acc
                }
            });
        let p = panels.swap_remove(worst);
        let mid = T::lit(0.5) * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // Panel cannot be split further in this precision.
            return Err(Error::Numerical {
                what: format!("quadrature panel at {:e} underflowed", p.a.as_f64()),
                achieved: err.as_f64(),
                requested: target.as_f64(),
            });
        }
        panels.push(gauss_kronrod(&f, p.a, mid)?);
        panels.push(gauss_kronrod(&f, mid, p.b)?);
    }
}

/// Integrates `f` over `[start, ∞)` for integrands decaying like `t^{-decay}`
/// with `decay > 1`.
///
/// Substitutes `t = start * s^{-1/(decay-1)}`, which makes the transformed
/// integrand tend to a constant as `s → 0`. `start` must be positive.
pub fn integrate_power_tail<T: Real, F: Fn(T) -> T>(
    f: F,
    start: T,
    decay: T,
    tol: &QuadTolerance<T>,
) -> Result<QuadEstimate<T>> {
    if !(start > T::zero()) {
        return Err(Error::domain("power-tail quadrature needs a positive start"));
    }
    let kappa = decay - T::one();
    if !(kappa > T::zero()) {
        return Err(Error::Divergent(format!(
            "tail decay exponent {} does not exceed 1",
            decay.as_f64()
        )));
    }
    let g = move |s: T| {
        let t = start * (-s.ln() / kappa).exp();
        if !t.is_finite() {
            return T::zero();
        }
        // dt = (t / (kappa s)) ds
        f(t) * t / (kappa * s)
    };
    integrate(g, T::zero(), T::one(), tol)
}
