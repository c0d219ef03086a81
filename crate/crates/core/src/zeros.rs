//! Zeros of `D*(s)` in the strip `0 < Re s < 1` by the argument principle
//! and Newton refinement.

use std::thread;

use num_complex::Complex64;

use crate::contour::{winding_number, Method};
use crate::dgf::{derivative, dstar_integral, evaluate, MethodChoice};
use crate::error::{Error, Result};

/// Largest `Im s` for which the scan is validated in double precision.
pub const MAX_IMAG: f64 = 22.0;
/// Left and right margin widths scanned next to the strip.
pub const MARGIN: f64 = 0.2;
/// Residual bound a converged zero must meet.
pub const RESIDUAL_LIMIT: f64 = 1e-7;

const EVAL_TOL: f64 = 1e-13;
const WINDING_STEP: f64 = 0.05;
const MAX_NEWTON: usize = 50;
const MAX_DEPTH: u32 = 10;
const DEDUP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroRecord {
    pub location: Complex64,
    /// `|D*(location)|`
    pub residual: f64,
    /// An enclosing rectangle with winding number exactly 1 contains the
    /// refined location.
    pub winding_verified: bool,
    pub method: Method,
    /// Newton met the step tolerance within its iteration budget.
    pub converged: bool,
}

/// Result of a full scan: zeros inside the strip and any found in the
/// margins `-0.2 < Re s ≤ 0` and `1 ≤ Re s < 1.2`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZeroScan {
    pub zeros: Vec<ZeroRecord>,
    pub margin: Vec<ZeroRecord>,
}

/// Evaluator used on winding contours: the Mellin route, except within
/// `|s| < 1/2` where it is singular at `s = 0` and the line integral is
/// well conditioned.
pub fn scan_value(s: Complex64) -> Result<Complex64> {
    if s.norm() < 0.5 {
        Ok(dstar_integral(s, EVAL_TOL)?.value)
    } else {
        Ok(evaluate(s, MethodChoice::Fixed(Method::Mellin), EVAL_TOL)?.value)
    }
}

fn evaluator(method: Method) -> impl Fn(Complex64) -> Result<Complex64> {
    move |s| {
        if method == Method::Mellin {
            scan_value(s)
        } else {
            Ok(evaluate(s, MethodChoice::Fixed(method), EVAL_TOL)?.value)
        }
    }
}

/// Number of zeros of `D*` in `[re.0, re.1] × [im.0, im.1]`.
///
/// A zero too close to the boundary triggers up to three retries with the
/// rectangle widened by `10⁻³`, `2·10⁻³`, `3·10⁻³`.
pub fn count_zeros(re: (f64, f64), im: (f64, f64), method: Method) -> Result<i64> {
    count_with(evaluator(method), re, im)
}

fn count_with<G>(g: G, re: (f64, f64), im: (f64, f64)) -> Result<i64>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let mut last = None;
    for attempt in 0..4 {
        let d = 1e-3 * attempt as f64;
        let lo = Complex64::new(re.0 - d, im.0 - d);
        let hi = Complex64::new(re.1 + d, im.1 + d);
        match winding_number(&g, lo, hi, WINDING_STEP) {
            Err(Error::Boundary { at }) => last = Some(at),
            other => return other,
        }
    }
    let at = last.unwrap_or_default();
    Err(Error::Domain(format!(
        "D* vanishes near the rectangle boundary at {at} after 3 perturbations; choose the rectangle manually"
    )))
}

#[derive(Clone, Copy, Debug)]
struct Rect {
    lo: Complex64,
    hi: Complex64,
}

impl Rect {
    fn center(&self) -> Complex64 {
        (self.lo + self.hi) / 2.0
    }

    fn contains(&self, z: Complex64) -> bool {
        (self.lo.re..=self.hi.re).contains(&z.re) && (self.lo.im..=self.hi.im).contains(&z.im)
    }

    fn quadrants(&self) -> [Rect; 4] {
        let m = self.center();
        let c = Complex64::new;
        [
            Rect { lo: self.lo, hi: m },
            Rect { lo: c(m.re, self.lo.im), hi: c(self.hi.re, m.im) },
            Rect { lo: c(self.lo.re, m.im), hi: c(m.re, self.hi.im) },
            Rect { lo: m, hi: self.hi },
        ]
    }
}

/// Rectangles holding exactly one zero, found by recursive quartering.
fn isolate(rect: Rect, depth: u32, out: &mut Vec<(Rect, bool)>) -> Result<()> {
    let n = count_with(scan_value, (rect.lo.re, rect.hi.re), (rect.lo.im, rect.hi.im))?;
    match n {
        0 => Ok(()),
        1 => {
            out.push((rect, true));
            Ok(())
        }
        n if n < 0 => Err(Error::Consistency(format!("negative winding {n} for an entire function"))),
        _ if depth >= MAX_DEPTH => {
            out.push((rect, false));
            Ok(())
        }
        _ => {
            for q in rect.quadrants() {
                isolate(q, depth + 1, out)?;
            }
            Ok(())
        }
    }
}

/// Newton iteration with a Cauchy-circle derivative of the Mellin route.
fn newton(seed: Complex64, tol: f64) -> Result<(Complex64, bool)> {
    let mut s = seed;
    for _ in 0..MAX_NEWTON {
        let f = scan_value(s)?;
        let df = derivative(s, MethodChoice::Fixed(Method::Mellin), EVAL_TOL)?.value;
        if df.norm() == 0.0 {
            return Ok((s, false));
        }
        let step = f / df;
        s -= step;
        if !(s.re.is_finite() && s.im.is_finite()) || (s - seed).norm() > 2.0 {
            return Ok((seed, false));
        }
        if step.norm() < tol {
            return Ok((s, true));
        }
    }
    Ok((s, false))
}

/// Shrinking 3×3 grid search for the minimum of `|D*|`; every probe stays
/// inside `rect`.
fn grid_minimum(rect: Rect) -> Result<Complex64> {
    let mut center = rect.center();
    let mut half = (rect.hi - rect.lo) / 4.0;
    for _ in 0..24 {
        let mut best = (f64::INFINITY, center);
        for i in -1..=1 {
            for j in -1..=1 {
                let z = center + Complex64::new(half.re * i as f64, half.im * j as f64);
                let v = scan_value(z)?.norm();
                if v < best.0 {
                    best = (v, z);
                }
            }
        }
        center = best.1;
        half /= 2.0;
    }
    Ok(center)
}

fn grown(rect: Rect) -> Rect {
    let pad = (rect.hi - rect.lo) * 1e-3;
    Rect {
        lo: rect.lo - pad,
        hi: rect.hi + pad,
    }
}

/// Newton from the centre of `rect`; when it fails or escapes, the quadrant
/// that still winds once around a zero becomes the new box. A 3×3 grid
/// search seeds a last Newton run if narrowing stalls.
fn refine(rect: Rect, single: bool, tol: f64) -> Result<ZeroRecord> {
    let mut bx = rect;
    let mut found = None;
    for _ in 0..12 {
        let (z, ok) = newton(bx.center(), tol)?;
        if ok && grown(bx).contains(z) {
            found = Some(z);
            break;
        }
        if !single {
            break;
        }
        let next = bx.quadrants().into_iter().find(|q| {
            matches!(count_with(scan_value, (q.lo.re, q.hi.re), (q.lo.im, q.hi.im)), Ok(1))
        });
        match next {
            Some(q) => bx = q,
            None => break,
        }
    }
    let (location, converged) = match found {
        Some(z) => (z, true),
        None => {
            let seed = grid_minimum(bx)?;
            match newton(seed, tol)? {
                (z, true) if grown(rect).contains(z) => (z, true),
                _ => (seed, false),
            }
        }
    };
    let residual = scan_value(location)?.norm();
    Ok(ZeroRecord {
        location,
        residual,
        winding_verified: single && grown(rect).contains(location),
        method: Method::Mellin,
        converged: converged && residual <= RESIDUAL_LIMIT,
    })
}

fn scan_band(re: (f64, f64), im: (f64, f64), tol: f64) -> Result<Vec<ZeroRecord>> {
    let rect = Rect {
        lo: Complex64::new(re.0, im.0),
        hi: Complex64::new(re.1, im.1),
    };
    let mut leaves = Vec::new();
    isolate(rect, 0, &mut leaves)?;
    leaves
        .into_iter()
        .map(|(rect, single)| refine(rect, single, tol))
        .collect()
}

fn canonicalize(mut v: Vec<ZeroRecord>) -> Vec<ZeroRecord> {
    v.sort_by(|a, b| {
        a.location
            .im
            .total_cmp(&b.location.im)
            .then(a.location.re.total_cmp(&b.location.re))
    });
    let mut out: Vec<ZeroRecord> = Vec::with_capacity(v.len());
    for r in v {
        match out.iter_mut().find(|p| (p.location - r.location).norm() < DEDUP) {
            Some(p) => {
                p.winding_verified |= r.winding_verified;
                if r.residual < p.residual {
                    p.location = r.location;
                    p.residual = r.residual;
                    p.converged |= r.converged;
                }
            }
            None => out.push(r),
        }
    }
    out
}

/// Scans `[-0.2, 1.2] × [0, im_max]` in bands of height 1 and refines every
/// isolated zero to a Newton step below `tol`.
///
/// Bands are processed on worker threads; the output is sorted by
/// imaginary part and deduplicated, so it does not depend on scheduling.
pub fn scan_zeros(im_max: f64, tol: f64) -> Result<ZeroScan> {
    if !(im_max > 0.0 && im_max <= MAX_IMAG) {
        return Err(Error::domain("im_max must lie in (0, 22]"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let bands = im_max.ceil() as usize;
    let mut jobs = Vec::new();
    for b in 0..bands {
        let im = (b as f64, (b as f64 + 1.0).min(im_max));
        if im.1 <= im.0 {
            continue;
        }
        jobs.push(((0.0, 1.0), im, false));
        jobs.push(((-MARGIN, 0.0), im, true));
        jobs.push(((1.0, 1.0 + MARGIN), im, true));
    }
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len());
    let results: Vec<Result<(bool, Vec<ZeroRecord>)>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let jobs = &jobs;
                scope.spawn(move || {
                    jobs.iter()
                        .skip(w)
                        .step_by(workers)
                        .map(|&(re, im, margin)| scan_band(re, im, tol).map(|z| (margin, z)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("zero scan worker panicked"))
            .collect()
    });
    let mut inner = Vec::new();
    let mut margin = Vec::new();
    for r in results {
        let (_, zs) = r?;
        for z in zs {
            let in_strip = z.location.re > 0.0 && z.location.re < 1.0;
            if in_strip && z.location.im > 0.0 && z.location.im <= im_max {
                inner.push(z);
            } else {
                margin.push(z);
            }
        }
    }
    Ok(ZeroScan {
        zeros: canonicalize(inner),
        margin: canonicalize(margin),
    })
}

/// Zeros of `D*` with `0 < Re s < 1`, `0 < Im s ≤ im_max`, sorted by
/// imaginary part. Records whose Newton iteration failed are kept with
/// `converged = false`.
pub fn find_zeros(im_max: f64, tol: f64) -> Result<Vec<ZeroRecord>> {
    Ok(scan_zeros(im_max, tol)?.zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_near_first_zero() {
        assert_eq!(count_zeros((0.0, 1.0), (3.4, 4.4), Method::Mellin).unwrap(), 1);
        assert_eq!(count_zeros((0.0, 1.0), (0.5, 3.0), Method::Mellin).unwrap(), 0);
    }

    #[test]
    fn first_zero() {
        let z = find_zeros(5.0, 1e-12).unwrap();
        assert_eq!(z.len(), 1);
        let r = z[0];
        assert!((r.location - Complex64::new(0.88271, 3.91652)).norm() < 2e-4);
        assert!(r.residual <= RESIDUAL_LIMIT);
        assert!(r.winding_verified && r.converged);
    }

    #[test]
    fn domain_guards() {
        assert!(find_zeros(23.0, 1e-10).is_err());
        assert!(find_zeros(0.0, 1e-10).is_err());
        assert!(find_zeros(5.0, 0.0).is_err());
    }

    #[test]
    fn canonical_order_and_dedup() {
        let rec = |re: f64, im: f64| ZeroRecord {
            location: Complex64::new(re, im),
            residual: 1e-9,
            winding_verified: false,
            method: Method::Mellin,
            converged: true,
        };
        let v = canonicalize(vec![rec(0.5, 9.0), rec(0.2, 4.0), rec(0.5, 9.0 + 1e-8)]);
        assert_eq!(v.len(), 2);
        assert!(v[0].location.im < v[1].location.im);
    }
}
