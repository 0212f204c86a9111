//! Globally adaptive Gauss–Kronrod quadrature over panelized intervals.
//!
//! Every panel is integrated with the 15-point Kronrod extension of the
//! 7-point Gauss–Legendre rule; |K₁₅ − G₇| (floored by a round-off term) is
//! the panel error estimate. The panel with the largest estimate is bisected
//! until the summed estimate meets the tolerance. Callers declare breakpoints
//! at polynomial roots and logarithmic singularities so that those points are
//! only ever panel endpoints.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

// Kronrod abscissae on [0, 1]; odd indices are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Default absolute tolerance.
pub const DEFAULT_ABS_TOL: f64 = 1e-10;
/// Relative floor: below this, further bisection only chases round-off.
pub const DEFAULT_REL_TOL: f64 = 1e-13;
/// Maximum number of panels before giving up with a warning.
pub const MAX_PANELS: usize = 40_000;

/// Requested accuracy: stop once abs_err ≤ max(abs, rel·|value|).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Self { abs, rel: DEFAULT_REL_TOL }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }

    /// Same tolerance scaled by `factor` (used to split a budget).
    pub fn scaled(&self, factor: f64) -> Self {
        Self { abs: self.abs * factor, rel: self.rel }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::absolute(DEFAULT_ABS_TOL)
    }
}

impl From<f64> for Tolerance {
    fn from(abs: f64) -> Self {
        Self::absolute(abs)
    }
}

/// A numerically integrated value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub evaluations: usize,
    /// Set when the tolerance could not be met.
    pub warning: Option<String>,
}

impl QuadResult {
    pub fn exact(value: f64) -> Self {
        Self { value, abs_err: 0.0, evaluations: 0, warning: None }
    }

    /// Linear combination a·self + b·other with errors added in magnitude.
    pub fn combine(&self, a: f64, other: &QuadResult, b: f64) -> QuadResult {
        QuadResult {
            value: a * self.value + b * other.value,
            abs_err: a.abs() * self.abs_err + b.abs() * other.abs_err,
            evaluations: self.evaluations + other.evaluations,
            warning: self.warning.clone().or_else(|| other.warning.clone()),
        }
    }

    /// Scale value and error by a constant.
    pub fn scale(mut self, c: f64) -> QuadResult {
        self.value *= c;
        self.abs_err *= c.abs();
        self
    }

    /// Product of two independent results, first-order error propagation.
    pub fn product(&self, other: &QuadResult) -> QuadResult {
        QuadResult {
            value: self.value * other.value,
            abs_err: self.abs_err * other.value.abs() + other.abs_err * self.value.abs(),
            evaluations: self.evaluations + other.evaluations,
            warning: self.warning.clone().or_else(|| other.warning.clone()),
        }
    }

    /// Add a constant with no error.
    pub fn shift(mut self, c: f64) -> QuadResult {
        self.value += c;
        self
    }
}

/// Panel breakpoints: strictly increasing reals.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Panelization {
    breakpoints: Vec<f64>,
}

impl Panelization {
    /// Sorts the points and drops duplicates and non-finite entries.
    pub fn new(points: impl IntoIterator<Item = f64>) -> Self {
        let mut pts: Vec<f64> = points.into_iter().filter(|p| p.is_finite()).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        Self { breakpoints: pts }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Add points accumulating geometrically at both ends of [a, b].
    pub fn with_end_grading(mut self, a: f64, b: f64, levels: u32) -> Self {
        let w = b - a;
        for k in 1..=levels {
            let h = w * 0.5f64.powi(k as i32 + 1);
            self.breakpoints.push(a + h);
            self.breakpoints.push(b - h);
        }
        Self::new(self.breakpoints)
    }

    /// Points strictly inside (a, b), with a and b attached at the ends.
    fn span(&self, a: f64, b: f64) -> Vec<f64> {
        let mut v = vec![a];
        v.extend(self.breakpoints.iter().copied().filter(|&p| p > a && p < b));
        v.push(b);
        v
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    frozen: bool,
}

struct Keyed(f64, usize);

impl PartialEq for Keyed {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Keyed {}
impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> Ordering {
        // ties broken by index so the refinement order is deterministic
        self.0.total_cmp(&other.0).then_with(|| other.1.cmp(&self.1))
    }
}

fn sample(f: &impl Fn(f64) -> f64, x: f64, map: &impl Fn(f64) -> (f64, f64)) -> Result<f64> {
    let (xx, jac) = map(x);
    if jac == 0.0 {
        return Ok(0.0);
    }
    let v = f(xx);
    if !v.is_finite() {
        return Err(Error::NonFiniteSample { x: xx, value: v });
    }
    Ok(v * jac)
}

/// One Gauss–Kronrod panel in the (possibly mapped) variable.
fn kronrod(
    f: &impl Fn(f64) -> f64,
    map: &impl Fn(f64) -> (f64, f64),
    a: f64,
    b: f64,
) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = sample(f, c, map)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    let mut kabs = WGK[7] * fc.abs();
    for i in 0..7 {
        let dx = h * XGK[i];
        let f1 = sample(f, c - dx, map)?;
        let f2 = sample(f, c + dx, map)?;
        k += WGK[i] * (f1 + f2);
        kabs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            g += WG[i / 2] * (f1 + f2);
        }
    }
    let value = k * h;
    let err = ((k - g) * h).abs().max(50.0 * f64::EPSILON * kabs * h.abs());
    Ok((value, err))
}

fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn adapt(
    f: &impl Fn(f64) -> f64,
    map: &impl Fn(f64) -> (f64, f64),
    edges: &[f64],
    tol: Tolerance,
) -> Result<QuadResult> {
    let mut panels: Vec<Panel> = Vec::with_capacity(edges.len() * 4);
    let mut heap = BinaryHeap::new();
    for w in edges.windows(2) {
        let (v, e) = kronrod(f, map, w[0], w[1])?;
        heap.push(Keyed(e, panels.len()));
        panels.push(Panel { a: w[0], b: w[1], value: v, err: e, frozen: false });
    }
    let mut evaluations = panels.len() * 15;
    let total = |p: &[Panel]| -> (f64, f64) {
        let v = neumaier(p.iter().map(|q| q.value));
        let e: f64 = p.iter().map(|q| q.err).sum();
        (v, e)
    };
    let (mut value, mut err) = total(&panels);
    let mut warning = None;
    let mut since_resum = 0usize;
    while err > tol.target(value) {
        if panels.len() >= MAX_PANELS {
            warning = Some(format!(
                "panel budget of {MAX_PANELS} exhausted with error estimate {err:.3e}"
            ));
            break;
        }
        let Some(Keyed(_, idx)) = heap.pop() else {
            break;
        };
        let p = panels[idx];
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b || (p.b - p.a) <= 8.0 * f64::EPSILON * p.a.abs().max(p.b.abs()) {
            // cannot be split further in floating point
            panels[idx].frozen = true;
            if heap.is_empty() || panels.iter().all(|q| q.frozen || q.err == 0.0) {
                warning = Some(format!("panels reached floating-point resolution with error {err:.3e}"));
                break;
            }
            continue;
        }
        let (v1, e1) = kronrod(f, map, p.a, mid)?;
        let (v2, e2) = kronrod(f, map, mid, p.b)?;
        evaluations += 30;
        panels[idx] = Panel { a: p.a, b: mid, value: v1, err: e1, frozen: false };
        heap.push(Keyed(e1, idx));
        heap.push(Keyed(e2, panels.len()));
        panels.push(Panel { a: mid, b: p.b, value: v2, err: e2, frozen: false });
        // running update, with a periodic exact resum against drift
        value += v1 + v2 - p.value;
        err += e1 + e2 - p.err;
        since_resum += 1;
        if since_resum >= 64 || err <= tol.target(value) {
            let (v, e) = total(&panels);
            value = v;
            err = e;
            since_resum = 0;
        }
    }
    // deterministic final reduction in panel order
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let (value, err) = total(&panels);
    if warning.is_none() && err > tol.target(value) {
        warning = Some(format!("error estimate {err:.3e} exceeds the requested tolerance"));
    }
    Ok(QuadResult { value, abs_err: err, evaluations, warning })
}

/// ∫_a^b f(x) dx over the panels defined by `panels` restricted to (a, b).
pub fn integrate_finite(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    panels: &Panelization,
    tol: impl Into<Tolerance>,
) -> Result<QuadResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return domain(format!("integrate_finite requires finite a < b, got [{a}, {b}]"));
    }
    let edges = panels.span(a, b);
    adapt(&f, &|x| (x, 1.0), &edges, tol.into())
}

/// ∫_0^∞ f(x) dx: finite panels up to the last breakpoint, then the tail
/// mapped by x = c + s·t/(1 − t) on t ∈ [0, 1).
pub fn integrate_semiinf(
    f: impl Fn(f64) -> f64,
    panels: &Panelization,
    tail_scale: f64,
    tol: impl Into<Tolerance>,
) -> Result<QuadResult> {
    integrate_from(f, 0.0, panels, tail_scale, tol)
}

/// ∫_a^∞ f(x) dx, as [`integrate_semiinf`] with a general lower limit.
pub fn integrate_from(
    f: impl Fn(f64) -> f64,
    a: f64,
    panels: &Panelization,
    tail_scale: f64,
    tol: impl Into<Tolerance>,
) -> Result<QuadResult> {
    if !(tail_scale > 0.0) || !tail_scale.is_finite() {
        return domain(format!("tail_scale must be positive, got {tail_scale}"));
    }
    let tol = tol.into();
    let last = panels.breakpoints().iter().copied().filter(|&p| p > a).fold(a, f64::max);
    let head = if last > a {
        Some(adapt(&f, &|x| (x, 1.0), &panels.span(a, last), tol.scaled(0.5))?)
    } else {
        None
    };
    let map = |t: f64| {
        let u = 1.0 - t;
        if u <= 0.0 {
            return (f64::INFINITY, 0.0);
        }
        (last + tail_scale * t / u, tail_scale / (u * u))
    };
    // a few fixed splits in t so the decaying tail is resolved early
    let tail = adapt(&f, &map, &[0.0, 0.25, 0.5, 0.75, 0.9, 1.0], tol.scaled(0.5))?;
    Ok(match head {
        Some(h) => h.combine(1.0, &tail, 1.0),
        None => tail,
    })
}
