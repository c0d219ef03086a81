//! The Euler function `φ(q) = Π (1 - q^n)` and the Dedekind eta function
//! `η(τ) = q^{1/24} φ(q)`, `q = e^{2πiτ}`, by three routes: the sparse
//! pentagonal series, the shifted Hankel-contour integrals
//!
//! ```text
//! φ(q) = (1/2πi) ∮ F'(z) q^{u'(z)} dz,     η(τ) = (1/2πi) ∮ F'(z) exp(3iz²τ/π) dz,
//! ```
//!
//! and a truncated product.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::contour::{integrate_hankel, EvalResult, HankelRectSpec, Method};
use crate::error::{Error, Result};
use crate::kernel::{index_map_shifted, residue_kernel_shifted};

/// Largest `|q|` accepted by the public φ routines.
pub const MAX_Q_MODULUS: f64 = 0.95;
/// Smallest `Im τ` accepted by the public η routines.
pub const MIN_TAU_IMAG: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QPoint(Complex64);

impl QPoint {
    pub fn new(q: Complex64) -> Result<Self> {
        if !(q.norm() <= MAX_Q_MODULUS) {
            return Err(Error::domain(format!("|q| = {} exceeds {MAX_Q_MODULUS}", q.norm())));
        }
        Ok(Self(q))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TauPoint(Complex64);

impl TauPoint {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.im >= MIN_TAU_IMAG) || !tau.re.is_finite() {
            return Err(Error::domain(format!("Im τ = {} below {MIN_TAU_IMAG}", tau.im)));
        }
        Ok(Self(tau))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    /// `q = e^{2πiτ}`.
    pub fn nome(self) -> Complex64 {
        (2.0 * PI * Complex64::i() * self.0).exp()
    }
}

/// Pentagonal exponents `(3m² - m)/2` and `(3m² + m)/2`.
fn pentagonal_pair(m: u64) -> (f64, f64) {
    let m = m as f64;
    ((3.0 * m * m - m) / 2.0, (3.0 * m * m + m) / 2.0)
}

/// `Σ_{m≥1} (-1)^m (e^{-t p₁(m)} + e^{-t p₂(m)}) = φ(e^{-t}) - 1` for
/// `Re t > 0`, truncated once `e^{-Re(t) p₁(m)} < tol/10`.
///
/// Returns the sum, the absolute sum of the terms and the number of terms.
pub(crate) fn phi_minus_one(t: Complex64, tol: f64) -> (Complex64, f64, usize) {
    debug_assert!(t.re > 0.0);
    let cutoff = (10.0 / tol.max(1e-300)).ln();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    let mut count = 0;
    for m in 1u64.. {
        let (p1, p2) = pentagonal_pair(m);
        if t.re * p1 > cutoff {
            break;
        }
        let a = (-t * p1).exp();
        let b = (-t * p2).exp();
        let pair = a + b;
        abs += a.norm() + b.norm();
        count += 2;
        if m % 2 == 1 {
            sum -= pair;
        } else {
            sum += pair;
        }
    }
    (sum, abs, count)
}

/// `φ(q)` from the bilateral series `Σ (-1)^n q^{(3n² - n)/2}`.
pub fn phi_series(q: Complex64, tol: f64) -> Result<EvalResult> {
    let q = QPoint::new(q)?.value();
    if q == Complex64::new(0.0, 0.0) {
        return Ok(EvalResult {
            value: Complex64::new(1.0, 0.0),
            err_estimate: 0.0,
            method: Method::Series,
            evaluations: 1,
            ill_conditioned: false,
        });
    }
    let t = -q.ln();
    let (s, abs, n) = phi_minus_one(t, tol);
    let value = s + 1.0;
    Ok(EvalResult {
        value,
        err_estimate: tol / 10.0 + 4.0 * f64::EPSILON * (abs + 1.0),
        method: Method::Series,
        evaluations: n + 1,
        ill_conditioned: false,
    })
}

/// `Π_{n=1}^{N} (1 - q^n)`.
pub fn phi_product_oracle(q: Complex64, terms: usize) -> Result<Complex64> {
    let q = QPoint::new(q)?.value();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    for _ in 0..terms {
        pow *= q;
        prod *= 1.0 - pow;
    }
    Ok(prod)
}

/// Product length so that `|q|^N < 1e-17`.
pub fn product_terms_for(q: Complex64) -> usize {
    let r = q.norm();
    if r == 0.0 {
        return 1;
    }
    ((-17.0 * 10f64.ln()) / r.ln()).ceil().max(1.0) as usize
}

/// Hankel descriptor for an integrand `F'(z) e^{w(z)}`, where the caller
/// bounds `Re w` on the horizontal edges through `exponent_re(x)`.
fn hankel_spec<E>(delta: f64, tol: f64, exponent_re: E) -> Result<HankelRectSpec>
where
    E: Fn(f64) -> f64,
{
    let step = PI / 3.0;
    let target = (10.0 / tol).ln() + 4.0;
    let mut x = 2.0 * step;
    // F' is bounded by ~10 on the edges; e^{Re w} must fall below tol/10.
    while x < 400.0 {
        if exponent_re(x) < -target && exponent_re(x + step) < -target {
            return Ok(HankelRectSpec {
                half_height: delta,
                cap_abscissa: 0.0,
                truncation: x,
                panel_order: 24,
            });
        }
        x += step;
    }
    Err(Error::domain("integrand does not decay along the Hankel contour"))
}

/// `φ(q)` as `(1/2πi) ∮ F'(z) q^{u'(z)} dz` around the positive real axis.
pub fn phi_hankel(q: Complex64, tol: f64) -> Result<EvalResult> {
    phi_hankel_with_height(q, PI / 12.0, tol)
}

/// [`phi_hankel`] with an explicit rectangle half-height `δ`.
pub fn phi_hankel_with_height(q: Complex64, delta: f64, tol: f64) -> Result<EvalResult> {
    let q = QPoint::new(q)?.value();
    if q == Complex64::new(0.0, 0.0) {
        return Err(Error::domain("phi_hankel needs q != 0"));
    }
    let log_q = q.ln();
    // Re(u'(x ± iδ) Log q) ≤ Re(u') ln|q| + |Im u'| |arg q|
    let spec = hankel_spec(delta, tol, |x| {
        let re_u = 3.0 * (x * x - delta * delta) / (2.0 * PI * PI) - 1.0 / 24.0;
        let im_u = 3.0 * x * delta / (PI * PI);
        re_u * log_q.re + im_u * log_q.im.abs()
    })?;
    let f = move |z: Complex64| Ok(residue_kernel_shifted(z)? * (index_map_shifted(z) * log_q).exp());
    integrate_hankel(f, &spec, tol)
}

/// Hankel integrand for `φ(q)`, exposed for residue reconstruction.
pub fn phi_hankel_integrand(q: Complex64) -> impl Fn(Complex64) -> Result<Complex64> {
    let log_q = q.ln();
    move |z| Ok(residue_kernel_shifted(z)? * (index_map_shifted(z) * log_q).exp())
}

/// `η(τ) = Σ_n (-1)^n exp(3πi (n + 1/6)² τ)`.
pub fn eta_series(tau: Complex64, tol: f64) -> Result<EvalResult> {
    let tau = TauPoint::new(tau)?.value();
    let rate = 3.0 * PI * tau.im;
    let cutoff = (10.0 / tol).ln();
    let i3pi = Complex64::new(0.0, 3.0 * PI);
    let term = |n: f64| (i3pi * (n + 1.0 / 6.0).powi(2) * tau).exp();
    let mut sum = term(0.0);
    let mut abs = sum.norm();
    let mut count = 1;
    for n in 1i64.. {
        let nf = n as f64;
        let lo = (nf - 1.0 / 6.0).powi(2);
        if rate * lo > cutoff {
            break;
        }
        let pair = term(nf) + term(-nf);
        abs += pair.norm();
        count += 2;
        if n % 2 == 1 {
            sum -= pair;
        } else {
            sum += pair;
        }
    }
    Ok(EvalResult {
        value: sum,
        err_estimate: tol / 10.0 + 4.0 * f64::EPSILON * abs,
        method: Method::Series,
        evaluations: count,
        ill_conditioned: false,
    })
}

/// `η(τ)` as `(1/2πi) ∮ F'(z) exp(3iz²τ/π) dz`.
pub fn eta_hankel(tau: Complex64, tol: f64) -> Result<EvalResult> {
    eta_hankel_with_height(tau, PI / 12.0, tol)
}

pub fn eta_hankel_with_height(tau: Complex64, delta: f64, tol: f64) -> Result<EvalResult> {
    let tau = TauPoint::new(tau)?.value();
    // Re(3i(x ± iδ)²τ/π) = (3/π)(-(x² - δ²) Im τ ∓ 2xδ Re τ)
    let spec = hankel_spec(delta, tol, |x| {
        3.0 / PI * (-(x * x - delta * delta) * tau.im + 2.0 * x * delta * tau.re.abs())
    })?;
    let k = Complex64::new(0.0, 3.0 / PI) * tau;
    let f = move |z: Complex64| Ok(residue_kernel_shifted(z)? * (k * z * z).exp());
    integrate_hankel(f, &spec, tol)
}
