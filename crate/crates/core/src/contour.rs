//! Quadrature engines for the contours used throughout the crate: an
//! infinite vertical line, a rectangular Hankel contour around the positive
//! real axis, circles, and rectangle boundaries for winding numbers.
//!
//! Every engine returns `(1/2πi) ∮ f(z) dz` (the `dz` Jacobian folded in) as
//! an [`EvalResult`]. Summation order is fixed, so results are bit-for-bit
//! reproducible for a given descriptor.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gauss::GaussLegendre;

/// Which route produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Integral,
    Series,
    Mellin,
    Explicit,
    ResidueOracle,
    Asymptotic,
    Hankel,
    Product,
    VerticalLine,
    Circle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Integral => "integral",
            Method::Series => "series",
            Method::Mellin => "mellin",
            Method::Explicit => "explicit",
            Method::ResidueOracle => "residue_oracle",
            Method::Asymptotic => "asymptotic",
            Method::Hankel => "hankel",
            Method::Product => "product",
            Method::VerticalLine => "vertical_line",
            Method::Circle => "circle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A numeric value with its error estimate and bookkeeping.
#[derive(Clone, Copy, Debug)]
pub struct EvalResult {
    pub value: Complex64,
    /// Difference between the last two refinement levels, floored at the
    /// rounding error of the final sum.
    pub err_estimate: f64,
    pub method: Method,
    /// Number of integrand (or term) evaluations.
    pub evaluations: usize,
    /// Set when the largest integrand sample exceeds the result by more
    /// than [`CONDITIONING_LIMIT`].
    pub ill_conditioned: bool,
}

impl EvalResult {
    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }
}

/// Ratio `max |integrand| / |result|` beyond which a line integral is
/// flagged as ill-conditioned.
pub const CONDITIONING_LIMIT: f64 = 1e12;

/// Highest Gauss–Legendre order reached by doubling before giving up.
pub const MAX_PANEL_ORDER: usize = 384;

const EPS: f64 = f64::EPSILON;

/// Line `Re z = c`, truncated to `|Im z| ≤ Y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerticalLineSpec {
    pub abscissa: f64,
    pub truncation: f64,
    pub panel_order: usize,
    pub panel_width: f64,
}

impl Default for VerticalLineSpec {
    fn default() -> Self {
        Self {
            abscissa: 0.0,
            truncation: 40.0,
            panel_order: 24,
            panel_width: 1.0,
        }
    }
}

impl VerticalLineSpec {
    pub fn with_truncation(truncation: f64) -> Self {
        Self {
            truncation,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abscissa.abs() < PI / 3.0) {
            return Err(Error::Spec(format!(
                "abscissa {} outside (-π/3, π/3)",
                self.abscissa
            )));
        }
        if !(self.truncation > 0.0 && self.truncation.is_finite()) {
            return Err(Error::Spec("truncation must be positive".into()));
        }
        if !(self.panel_width > 0.0) || self.panel_order == 0 {
            return Err(Error::Spec("panels need positive width and order".into()));
        }
        Ok(())
    }
}

/// Counter-clockwise rectangle `[cap, X] × [-δ, δ]` around the positive
/// real axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HankelRectSpec {
    pub half_height: f64,
    pub cap_abscissa: f64,
    pub truncation: f64,
    pub panel_order: usize,
}

impl Default for HankelRectSpec {
    fn default() -> Self {
        Self {
            half_height: PI / 12.0,
            cap_abscissa: 0.0,
            truncation: 4.0 * PI,
            panel_order: 24,
        }
    }
}

impl HankelRectSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.half_height > 1e-6 && self.half_height.is_finite()) {
            return Err(Error::Spec("half-height must exceed 1e-6".into()));
        }
        if !(self.cap_abscissa < PI / 6.0) {
            return Err(Error::Spec("cap abscissa must be below π/6".into()));
        }
        if !(self.truncation > self.cap_abscissa && self.truncation.is_finite()) {
            return Err(Error::Spec("truncation must lie right of the cap".into()));
        }
        if self.panel_order == 0 {
            return Err(Error::Spec("panel order must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleSpec {
    pub center: Complex64,
    pub radius: f64,
    /// Initial node count, a power of two.
    pub nodes: usize,
}

impl CircleSpec {
    pub fn new(center: Complex64, radius: f64) -> Self {
        Self {
            center,
            radius,
            nodes: 64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::Spec("circle radius must be positive".into()));
        }
        if !self.nodes.is_power_of_two() || self.nodes < 4 {
            return Err(Error::Spec("circle node count must be a power of two >= 4".into()));
        }
        Ok(())
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Default, Clone, Copy)]
struct Accumulator {
    sum: Complex64,
    comp: Complex64,
    abs: f64,
    max: f64,
}

impl Accumulator {
    fn add_part(sum: &mut f64, comp: &mut f64, x: f64) {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *comp += (*sum - t) + x;
        } else {
            *comp += (x - t) + *sum;
        }
        *sum = t;
    }

    fn push(&mut self, weighted: Complex64, raw_norm: f64) {
        Self::add_part(&mut self.sum.re, &mut self.comp.re, weighted.re);
        Self::add_part(&mut self.sum.im, &mut self.comp.im, weighted.im);
        self.abs += weighted.norm();
        self.max = self.max.max(raw_norm);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn eval_checked<F>(f: &F, z: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    match f(z) {
        Ok(v) if v.re.is_finite() && v.im.is_finite() => Ok(v),
        Ok(_) | Err(Error::Pole { .. }) => Err(Error::Spec(format!("integrand singular on the contour at {z}"))),
        Err(e) => Err(e),
    }
}

struct Level {
    value: Complex64,
    abs: f64,
    max: f64,
    evaluations: usize,
}

/// Runs `level` at doubling orders until two successive values agree.
fn refine<L>(start_order: usize, tol: f64, method: Method, context: &str, mut level: L) -> Result<EvalResult>
where
    L: FnMut(usize) -> Result<Level>,
{
    let mut order = start_order.max(1);
    let mut prev = level(order)?;
    let mut evaluations = prev.evaluations;
    loop {
        order *= 2;
        let cur = level(order)?;
        evaluations += cur.evaluations;
        let diff = (cur.value - prev.value).norm();
        let floor = 8.0 * EPS * cur.abs;
        let err = diff.max(floor);
        let scale = cur.value.norm().max(1.0);
        let ill = cur.max > CONDITIONING_LIMIT * cur.value.norm();
        if diff <= tol * scale || diff <= floor {
            return Ok(EvalResult {
                value: cur.value,
                err_estimate: err,
                method,
                evaluations,
                ill_conditioned: ill,
            });
        }
        if order * 2 > MAX_PANEL_ORDER {
            return Err(Error::Convergence {
                context: context.to_string(),
                best: cur.value,
                err_estimate: err,
            });
        }
        prev = cur;
    }
}

/// `(1/2πi) ∫_{c-iY}^{c+iY} f(z) dz` by composite Gauss–Legendre panels,
/// doubling the panel order until two levels agree to `tol` (relative to
/// `max(1, |value|)`).
///
/// The samples at `c ± iY` must already be below `tol/10` relative to the
/// largest sample, otherwise the truncation is rejected.
pub fn integrate_vertical<F>(f: F, spec: &VerticalLineSpec, tol: f64) -> Result<EvalResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    spec.validate()?;
    let c = spec.abscissa;
    let half_panels = (spec.truncation / spec.panel_width).ceil().max(1.0) as i64;
    let w = spec.panel_width;
    let y_max = half_panels as f64 * w;
    let mut tail_checked = false;
    refine(spec.panel_order, tol, Method::VerticalLine, "vertical line", |order| {
        let rule = GaussLegendre::of_order(order);
        let mut acc = Accumulator::default();
        let mut n = 0usize;
        for j in -half_panels..half_panels {
            let a = j as f64 * w;
            for (y, wt) in rule.mapped(a, a + w) {
                let v = eval_checked(&f, Complex64::new(c, y))?;
                acc.push(v * (wt / (2.0 * PI)), v.norm() / (2.0 * PI));
                n += 1;
            }
        }
        if !tail_checked {
            let top = eval_checked(&f, Complex64::new(c, y_max))?.norm() / (2.0 * PI);
            let bottom = eval_checked(&f, Complex64::new(c, -y_max))?.norm() / (2.0 * PI);
            let edge = top.max(bottom);
            if edge > tol / 10.0 * acc.max.max(1.0) {
                return Err(Error::Spec(format!(
                    "truncation Y = {y_max} too short: |f| = {edge:e} at the ends"
                )));
            }
            tail_checked = true;
            n += 2;
        }
        Ok(Level {
            value: acc.total(),
            abs: acc.abs,
            max: acc.max,
            evaluations: n,
        })
    })
}

/// `(1/2πi) ∮ f(z) dz` over the counter-clockwise rectangle with corners
/// `cap ± iδ`, `X ± iδ`. Horizontal edges use panels of width `π/3`
/// starting at the cap.
pub fn integrate_hankel<F>(f: F, spec: &HankelRectSpec, tol: f64) -> Result<EvalResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    spec.validate()?;
    let a = spec.cap_abscissa;
    let x_max = spec.truncation;
    let d = spec.half_height;
    let width = PI / 3.0;
    let mut breaks = vec![a];
    while *breaks.last().expect("non-empty") + width < x_max - 1e-12 {
        let next = breaks.last().expect("non-empty") + width;
        breaks.push(next);
    }
    breaks.push(x_max);
    let mut edge_checked = false;
    let i = Complex64::i();
    let norm = 1.0 / (2.0 * PI);
    refine(spec.panel_order, tol, Method::Hankel, "hankel contour", |order| {
        let rule = GaussLegendre::of_order(order);
        let mut acc = Accumulator::default();
        let mut n = 0usize;
        // horizontal edges: ∫_a^X [f(x - iδ) - f(x + iδ)] dx
        for win in breaks.windows(2) {
            for (x, wt) in rule.mapped(win[0], win[1]) {
                let lo = eval_checked(&f, Complex64::new(x, -d))?;
                let hi = eval_checked(&f, Complex64::new(x, d))?;
                // (1/2πi)(lo - hi) dx
                acc.push((lo - hi) * (-i * wt * norm), lo.norm().max(hi.norm()) * norm);
                n += 2;
            }
        }
        // vertical edges: right edge upward, cap downward; dz = i dy
        let mut right_max = 0.0f64;
        for (y, wt) in rule.mapped(-d, d) {
            let r = eval_checked(&f, Complex64::new(x_max, y))?;
            let l = eval_checked(&f, Complex64::new(a, y))?;
            right_max = right_max.max(r.norm());
            acc.push((r - l) * (wt * norm), r.norm().max(l.norm()) * norm);
            n += 2;
        }
        if !edge_checked {
            let bound = right_max * 2.0 * d * norm;
            if bound > tol / 10.0 * acc.total().norm().max(1.0) {
                return Err(Error::Spec(format!(
                    "truncation X = {x_max} too short: right edge contributes up to {bound:e}"
                )));
            }
            edge_checked = true;
        }
        Ok(Level {
            value: acc.total(),
            abs: acc.abs,
            max: acc.max,
            evaluations: n,
        })
    })
}

/// Largest node count the circle engine doubles to.
pub const MAX_CIRCLE_NODES: usize = 1 << 16;

/// `(1/2πi) ∮ f(z) dz` around a circle by the trapezoid rule, doubling the
/// node count (reusing earlier nodes) until the value is stable at rounding
/// level.
pub fn integrate_circle<F>(f: F, spec: &CircleSpec) -> Result<EvalResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    spec.validate()?;
    let r = spec.radius;
    let sample = |theta: f64| -> Result<(Complex64, f64)> {
        let e = Complex64::from_polar(1.0, theta);
        let v = eval_checked(&f, spec.center + r * e)?;
        // (1/2πi) f(z) i r e^{iθ} dθ
        Ok((v * r * e, v.norm() * r))
    };
    let mut n = spec.nodes;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    for k in 0..n {
        let (v, a) = sample(2.0 * PI * k as f64 / n as f64)?;
        sum += v;
        abs += a;
    }
    let mut evaluations = n;
    let mut value = sum / n as f64;
    loop {
        // add the midpoints
        for k in 0..n {
            let (v, a) = sample(2.0 * PI * (k as f64 + 0.5) / n as f64)?;
            sum += v;
            abs += a;
        }
        evaluations += n;
        n *= 2;
        let next = sum / n as f64;
        let diff = (next - value).norm();
        let scale = abs / n as f64;
        let floor = 4.0 * EPS * scale.max(next.norm());
        value = next;
        if diff <= 1e3 * EPS * scale.max(next.norm()) {
            return Ok(EvalResult {
                value,
                err_estimate: diff.max(floor),
                method: Method::Circle,
                evaluations,
                ill_conditioned: scale > CONDITIONING_LIMIT * value.norm(),
            });
        }
        if n >= MAX_CIRCLE_NODES {
            return Err(Error::Convergence {
                context: "circle trapezoid".into(),
                best: value,
                err_estimate: diff,
            });
        }
    }
}

/// Minimum `|g|` accepted on a winding contour.
pub const BOUNDARY_FLOOR: f64 = 1e-9;

/// Winding number of `g` around the boundary of the rectangle with opposite
/// corners `lo` and `hi` (counter-clockwise).
///
/// Each edge is sampled at spacing `max_step`; any step whose phase change
/// reaches `π/2` is bisected until it does not.
pub fn winding_number<G>(mut g: G, lo: Complex64, hi: Complex64, max_step: f64) -> Result<i64>
where
    G: FnMut(Complex64) -> Result<Complex64>,
{
    if !(hi.re > lo.re && hi.im > lo.im) {
        return Err(Error::Spec("rectangle corners must be ordered".into()));
    }
    if !(max_step > 0.0) {
        return Err(Error::Spec("max_step must be positive".into()));
    }
    let corners = [
        lo,
        Complex64::new(hi.re, lo.im),
        hi,
        Complex64::new(lo.re, hi.im),
        lo,
    ];
    let mut eval = |z: Complex64| -> Result<Complex64> {
        let v = g(z)?;
        if !(v.norm() >= BOUNDARY_FLOOR) {
            return Err(Error::Boundary { at: z });
        }
        Ok(v)
    };
    let mut total = 0.0;
    let start = eval(lo)?;
    let mut prev_val = start;
    for edge in corners.windows(2) {
        let (a, b) = (edge[0], edge[1]);
        let steps = ((b - a).norm() / max_step).ceil().max(1.0) as usize;
        let mut za = a;
        for k in 1..=steps {
            let zb = a + (b - a) * (k as f64 / steps as f64);
            let vb = eval(zb)?;
            total += phase_change(&mut eval, za, prev_val, zb, vb, 0)?;
            za = zb;
            prev_val = vb;
        }
    }
    let turns = total / (2.0 * PI);
    let rounded = turns.round();
    if (turns - rounded).abs() > 1e-6 {
        return Err(Error::Consistency(format!("non-integer winding {turns}")));
    }
    Ok(rounded as i64)
}

fn phase_change<E>(eval: &mut E, za: Complex64, va: Complex64, zb: Complex64, vb: Complex64, depth: u32) -> Result<f64>
where
    E: FnMut(Complex64) -> Result<Complex64>,
{
    let step = (vb / va).arg();
    if step.abs() < PI / 2.0 {
        return Ok(step);
    }
    if depth > 40 {
        return Err(Error::Boundary { at: (za + zb) / 2.0 });
    }
    let zm = (za + zb) / 2.0;
    let vm = eval(zm)?;
    Ok(phase_change(eval, za, va, zm, vm, depth + 1)? + phase_change(eval, zm, vm, zb, vb, depth + 1)?)
}
