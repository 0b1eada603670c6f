//! Adaptive Gauss-Kronrod quadrature on finite and semi-infinite intervals,
//! plus Richardson-extrapolated numerical differentiation.
//!
//! Everything runs through one globally adaptive bisection of 21-point Kronrod
//! panels. Breakpoints split the domain into segments, each integrated in its
//! own coordinate: linear, logarithmic for segments spanning many decades, and
//! `x = x_last + s (u / (1 - u))^p` for the unbounded tail. The exponent `p` is
//! picked from the expected power-law decay so that the mapped integrand stays
//! bounded at `u = 1`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("integrand is not finite at x = {abscissa} (value {value})")]
    NonFinite { abscissa: f64, value: f64 },
    #[error("invalid quadrature settings: {0}")]
    InvalidSpec(&'static str),
}

/// Tolerances and limits for an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of panels kept by the adaptive scheme.
    pub max_subdivisions: usize,
    /// Expected decay exponent `p` of `f(x) ~ x^-p` at infinity. Exponential
    /// decay is covered by any value >= 2.
    pub tail_exponent_hint: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 4000,
            tail_exponent_hint: 2.0,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.rel_tol > 0.0) {
            return Err(QuadratureError::InvalidSpec("rel_tol must be positive"));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(QuadratureError::InvalidSpec("abs_tol must be non-negative"));
        }
        if self.max_subdivisions < 1 {
            return Err(QuadratureError::InvalidSpec("max_subdivisions must be >= 1"));
        }
        if !self.tail_exponent_hint.is_finite() {
            return Err(QuadratureError::InvalidSpec("tail_exponent_hint must be finite"));
        }
        Ok(())
    }

    fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    /// Multiplies value and error estimate by a constant factor.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }

    /// Combines two independent estimates as `self + other`.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }
}

// Kronrod abscissae and weights for the 21-point rule, with the weights of the
// embedded 10-point Gauss rule (QUADPACK qk21).
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
    0.123_491_976_262_065_851_077_208_292_238_500,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

// Panels narrower than this (relative to their position) are not split again.
const MIN_PANEL_WIDTH: f64 = 1e-13;

#[derive(Debug, Clone, Copy)]
struct Panel {
    segment: usize,
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // insertion order, keeps heap pops deterministic on ties
    id: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.id.cmp(&self.id))
    }
}

/// Applies the 21-point Kronrod rule to `g` on `[a, b]`.
///
/// `g` returns `Err` with the offending value when a sample is not finite.
fn kronrod21<G>(g: G, a: f64, b: f64) -> Result<(f64, f64), QuadratureError>
where
    G: Fn(f64) -> Result<f64, QuadratureError>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = g(center)?;
    let mut res_k = f_center * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut samples = [(0.0, 0.0); 10];
    for (j, sample) in samples.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let f1 = g(center - dx)?;
        let f2 = g(center + dx)?;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
        *sample = (f1, f2);
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for (j, (f1, f2)) in samples.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((value, error))
}

/// Globally adaptive integration of `g(segment, u)` over the initial panels
/// `(segment, a, b)`.
fn adaptive<G>(g: G, initial: &[(usize, f64, f64)], spec: &QuadratureSpec) -> Result<QuadratureResult, QuadratureError>
where
    G: Fn(usize, f64) -> Result<f64, QuadratureError>,
{
    spec.validate()?;
    let mut heap = BinaryHeap::new();
    let mut next_id = 0;
    let mut evaluations = 0;
    for &(segment, a, b) in initial {
        if b <= a {
            continue;
        }
        let (value, error) = kronrod21(|u| g(segment, u), a, b)?;
        evaluations += 21;
        heap.push(Panel { segment, a, b, value, error, id: next_id });
        next_id += 1;
    }

    let mut finished = Vec::new();
    let mut converged = true;
    let (mut value, mut error) = totals(heap.iter());
    loop {
        if error <= spec.tolerance_for(value) {
            break;
        }
        if heap.len() + finished.len() >= spec.max_subdivisions {
            converged = false;
            break;
        }
        let Some(worst) = heap.pop() else {
            converged = false;
            break;
        };
        value -= worst.value;
        error -= worst.error;
        let mid = 0.5 * (worst.a + worst.b);
        let scale = worst.a.abs().max(worst.b.abs()).max(1.0);
        if worst.b - worst.a < MIN_PANEL_WIDTH * scale {
            // cannot refine further; keep its contribution but stop touching it
            value += worst.value;
            error += worst.error;
            finished.push(worst);
            continue;
        }
        let segment = worst.segment;
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (panel_value, panel_error) = kronrod21(|u| g(segment, u), a, b)?;
            evaluations += 21;
            value += panel_value;
            error += panel_error;
            heap.push(Panel { segment, a, b, value: panel_value, error: panel_error, id: next_id });
            next_id += 1;
        }
        // guard against drift in the running sums
        if next_id % 256 == 0 {
            (value, error) = totals(heap.iter().chain(finished.iter()));
        }
    }

    // Sum in position order so that the result does not depend on heap layout.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(finished);
    panels.sort_by(|p, q| p.segment.cmp(&q.segment).then(p.a.total_cmp(&q.a)));
    let (value, error_estimate) = totals(panels.iter());
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations,
        converged: converged && error_estimate <= spec.tolerance_for(value),
    })
}

fn totals<'a>(panels: impl Iterator<Item = &'a Panel>) -> (f64, f64) {
    panels.fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}

fn checked<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64, QuadratureError> {
    let value = f(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(QuadratureError::NonFinite { abscissa: x, value })
    }
}

/// Integrates `f` over `(0, inf)`.
pub fn integrate_semi_infinite<F>(f: F, spec: &QuadratureSpec) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    integrate_semi_infinite_with_breakpoints(f, spec, &[])
}

/// Integrates `f` over `(0, inf)`, forcing panel boundaries at `breakpoints`.
///
/// Breakpoints outside `(0, inf)` are ignored.
pub fn integrate_semi_infinite_with_breakpoints<F>(
    f: F,
    spec: &QuadratureSpec,
    breakpoints: &[f64],
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    let mut edges = vec![0.0];
    edges.extend(breakpoints.iter().copied().filter(|x| x.is_finite() && *x > 0.0));
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    let last = edges[edges.len() - 1];
    let mut maps: Vec<Coordinate> = edges
        .windows(2)
        .map(|w| {
            if w[0] > 0.0 && w[1] > 4.0 * w[0] {
                Coordinate::Log
            } else {
                Coordinate::Linear
            }
        })
        .collect();
    maps.push(Coordinate::Tail {
        origin: last,
        scale: if last > 0.0 { last } else { 1.0 },
        power: map_power(spec.tail_exponent_hint),
    });
    let mut initial: Vec<(usize, f64, f64)> = edges
        .windows(2)
        .zip(&maps)
        .enumerate()
        .map(|(i, (w, map))| match map {
            Coordinate::Log => (i, w[0].ln(), w[1].ln()),
            _ => (i, w[0], w[1]),
        })
        .collect();
    initial.push((maps.len() - 1, 0.0, 1.0));
    let g = |segment: usize, u: f64| {
        let (x, jacobian) = maps[segment].point(u);
        if x.is_infinite() {
            // a node rounded onto the endpoint at infinity
            return Ok(0.0);
        }
        let fx = checked(&f, x)?;
        if fx == 0.0 {
            return Ok(0.0);
        }
        let value = fx * jacobian;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(QuadratureError::NonFinite { abscissa: x, value })
        }
    };
    adaptive(g, &initial, spec)
}

#[derive(Debug, Clone, Copy)]
enum Coordinate {
    Linear,
    Log,
    Tail { origin: f64, scale: f64, power: f64 },
}

impl Coordinate {
    /// `(x, dx/du)` at local coordinate `u`.
    fn point(&self, u: f64) -> (f64, f64) {
        match *self {
            Coordinate::Linear => (u, 1.0),
            Coordinate::Log => {
                let x = u.exp();
                (x, x)
            }
            Coordinate::Tail { origin, scale, power } => {
                let ratio = u / (1.0 - u);
                let x = origin + scale * ratio.powf(power);
                (x, scale * power * ratio.powf(power - 1.0) / ((1.0 - u) * (1.0 - u)))
            }
        }
    }
}

fn map_power(tail_exponent_hint: f64) -> f64 {
    if tail_exponent_hint > 1.0 {
        (1.0 / (tail_exponent_hint - 1.0)).max(1.0)
    } else {
        1.0
    }
}

/// Integrates `f` over the finite interval `[a, b]`, forcing panel boundaries at
/// interior `breakpoints`.
pub fn integrate_finite<F>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    breakpoints: &[f64],
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(QuadratureError::InvalidSpec("finite interval required"));
    }
    let (lo, hi, sign) = if a <= b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut edges = vec![lo, hi];
    edges.extend(breakpoints.iter().copied().filter(|x| *x > lo && *x < hi));
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    let initial: Vec<(usize, f64, f64)> = edges.windows(2).map(|w| (0, w[0], w[1])).collect();
    let result = adaptive(|_, x| checked(&f, x), &initial, spec)?;
    Ok(result.scaled(sign))
}

/// A derivative estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub error_estimate: f64,
    /// Set when forward and backward differences disagree at every step size,
    /// which happens at kinks and jumps.
    pub non_smooth: bool,
}

/// Central-difference derivative of `f` at `t0` with Richardson extrapolation
/// over successively halved steps starting at `h0` (Ridders' scheme).
pub fn derivative_scalar<F>(f: F, t0: f64, h0: f64) -> Result<Derivative, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    const TABLE: usize = 10;
    const SHRINK: f64 = 2.0;
    const SAFE: f64 = 2.0;
    if !(h0 > 0.0) || !t0.is_finite() {
        return Err(QuadratureError::InvalidSpec("derivative step must be positive"));
    }
    let eval = |x: f64| checked(&f, x);
    let f0 = eval(t0)?;
    let central = |h: f64| -> Result<(f64, f64), QuadratureError> {
        let up = eval(t0 + h)?;
        let down = eval(t0 - h)?;
        // second return value is (forward - backward) difference
        Ok(((up - down) / (2.0 * h), (up - 2.0 * f0 + down) / h))
    };

    let mut table = [[0.0; TABLE]; TABLE];
    let mut h = h0;
    let (first, first_gap) = central(h)?;
    // For smooth f the one-sided gap shrinks like h; at a kink it does not.
    let (_, fine_gap) = central(h / 8.0)?;
    table[0][0] = first;
    let mut best = first;
    let mut error = f64::INFINITY;
    for i in 1..TABLE {
        h /= SHRINK;
        let (d, _) = central(h)?;
        table[0][i] = d;
        let mut factor = SHRINK * SHRINK;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * factor - table[j - 1][i - 1]) / (factor - 1.0);
            factor *= SHRINK * SHRINK;
            let spread = (table[j][i] - table[j - 1][i]).abs().max((table[j][i] - table[j - 1][i - 1]).abs());
            if spread <= error {
                error = spread;
                best = table[j][i];
            }
        }
        if (table[i][i] - table[i - 1][i - 1]).abs() >= SAFE * error {
            break;
        }
    }

    let non_smooth = fine_gap.abs() > 0.5 * first_gap.abs() && fine_gap.abs() > 1e3 * f64::EPSILON * (1.0 + best.abs());
    if non_smooth {
        error = error.max(0.5 * fine_gap.abs());
    }
    Ok(Derivative {
        value: best,
        error_estimate: error,
        non_smooth,
    })
}
