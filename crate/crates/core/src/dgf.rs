//! Evaluation routes for `D(s) = Σ a_n n^{-s}` and its entire continuation
//! `D*(s)`.
//!
//! | route | domain | notes |
//! |-------|--------|-------|
//! | [`dstar_integral`] | all `s` | line integral of `F(z) u(z)^{-s}` on `Re z = c`; loses `π|Im s|/ln 10` digits |
//! | [`d_series`] | `Re s > 0` | pentagonal blocks, accelerated |
//! | [`d_mellin`] | `Re s > -1`, `s ≠ 0` | Mellin transform of `φ(e^{-t}) - 1` on a rotated ray |
//! | [`d_explicit`] | positive integers | exact, in `ℚ(√3)[π]` |
//! | [`d_residue_oracle`] | positive integers | circle integrals around `π/3`, `2π/3` |

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::accel::{alternating_sum, MAX_TERMS};
use crate::contour::{
    integrate_circle, integrate_vertical, CircleSpec, EvalResult, Method, VerticalLineSpec,
    CONDITIONING_LIMIT,
};
use crate::error::{Error, Result};
use crate::gauss::GaussLegendre;
use crate::kernel::{gamma, index_map, ln_gamma, principal_pow, residue_kernel, sin_pi, zeta_real};
use crate::qfunc::phi_minus_one;
use crate::specialnum::{binomial, g_coeff_table, pi_rational, AlgebraicValue, Rational};

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `D*(s)` by the Bromwich-type integral `(1/2πi) ∫ F(z) u(z)^{-s} dz` over
/// a vertical line `Re z = c`, `-π/3 < c ≤ 0` (see [`line_spec`]).
///
/// For `|Im s|` beyond about 8 the integrand carries an `e^{π|Im s|}`
/// imbalance between the two half-lines and the result is flagged
/// ill-conditioned; [`d_mellin`] is the better route there.
pub fn dstar_integral(s: Complex64, tol: f64) -> Result<EvalResult> {
    let spec = line_spec(s, tol, false);
    let f = move |z: Complex64| Ok(residue_kernel(z)? * principal_pow(index_map(z), -s)?);
    integrate_vertical(f, &spec, tol).map(|r| r.with_method(Method::Integral))
}

/// `D*'(s)` by differentiating under the integral:
/// `d/ds u^{-s} = -Log(u) u^{-s}`.
pub fn dstar_derivative(s: Complex64, tol: f64) -> Result<EvalResult> {
    let spec = line_spec(s, tol, true);
    let f = move |z: Complex64| {
        let u = index_map(z);
        Ok(-residue_kernel(z)? * u.ln() * principal_pow(u, -s)?)
    };
    integrate_vertical(f, &spec, tol).map(|r| r.with_method(Method::Integral))
}

/// Line `Re z = c` for the integral. For `Re s > 0` the peak `|u(c)|^{-Re s}`
/// shrinks as `c` moves toward the pole at `-π/3` (where `u = 1`); `c` is
/// chosen on a grid to minimise the peak times the pole proximity, and the
/// panels are narrowed to the distance from the pole.
fn line_spec(s: Complex64, tol: f64, with_log: bool) -> VerticalLineSpec {
    let mut c = 0.0;
    if s.re > 0.0 {
        let cost = |c: f64| -s.re * index_map(Complex64::new(c, 0.0)).re.ln() - (c + PI / 3.0).ln();
        for j in 1..=19 {
            let t = -0.05 * j as f64;
            if cost(t) < cost(c) {
                c = t;
            }
        }
    }
    VerticalLineSpec {
        abscissa: c,
        truncation: vertical_truncation(s, c, tol, with_log),
        panel_width: (2.0 * (c + PI / 3.0)).min(1.0),
        ..VerticalLineSpec::default()
    }
}

/// Truncation `Y` with the integrand envelope past `±Y` below `tol/20` of
/// its peak. The envelope `2√3 e^{-|y|} |u(c+iy)^{-s}|` is exact up to the
/// `1 + O(e^{-2|y|})` factor of `F`.
fn vertical_truncation(s: Complex64, c: f64, tol: f64, with_log: bool) -> f64 {
    let envelope = |y: f64| {
        let u = index_map(Complex64::new(c, y));
        let log_u = u.ln();
        let mut e = 2.0 * SQRT3 * (-y.abs() + (-s * log_u).re).exp();
        if with_log {
            e *= 1.0 + log_u.norm();
        }
        e
    };
    let min_y = 2.0 * s.re.abs() + 8.0;
    let mut peak = 0.0f64;
    let mut y = 1.0;
    loop {
        let e = envelope(y).max(envelope(-y));
        peak = peak.max(e);
        if y >= min_y && e < tol / 20.0 * peak.max(1.0) {
            return y;
        }
        if y > 2000.0 {
            return y;
        }
        y += 1.0;
    }
}

/// Pentagonal block `p₁(m)^{-s} + p₂(m)^{-s}`, `m ≥ 1`.
fn block(m: usize, s: Complex64) -> Complex64 {
    let m = m as f64;
    let p1 = (3.0 * m * m - m) / 2.0;
    let p2 = (3.0 * m * m + m) / 2.0;
    (-s * p1.ln()).exp() + (-s * p2.ln()).exp()
}

/// `D(s) = Σ_{m≥1} (-1)^m (p₁(m)^{-s} + p₂(m)^{-s})` for `Re s > 0`.
///
/// The blocks share a sign, so the block sequence alternates and is summed
/// with the Cohen–Rodriguez Villegas–Zagier accelerator. The term count
/// starts from the a-priori rate `(3 + √8)^{-n} e^{π|Im s|}` and grows until
/// two counts agree.
pub fn d_series(s: Complex64, tol: f64) -> Result<EvalResult> {
    if !(s.re > 0.0) {
        return Err(Error::domain("the Dirichlet series needs Re(s) > 0"));
    }
    let rate = (3.0 + 8f64.sqrt()).ln();
    let mut n = (((PI * s.im.abs() + (1.0 / tol).ln() + 8.0) / rate).ceil() as usize).clamp(16, MAX_TERMS - 16);
    let mut evaluations = 0;
    let terms_upto = |n: usize| -> Vec<Complex64> { (1..=n).map(|m| block(m, s)).collect() };
    loop {
        let long = terms_upto(n + 12);
        evaluations += long.len();
        let a = alternating_sum(&long[..n]);
        let b = alternating_sum(&long);
        let diff = (b.value - a.value).norm();
        let floor = 8.0 * f64::EPSILON * b.abs_sum.max(1.0);
        if diff <= tol * b.value.norm().max(1.0) || diff <= floor {
            return Ok(EvalResult {
                value: -b.value,
                err_estimate: diff.max(floor),
                method: Method::Series,
                evaluations,
                ill_conditioned: false,
            });
        }
        if n + 28 > MAX_TERMS {
            return Err(Error::Convergence {
                context: "accelerated pentagonal series".into(),
                best: -b.value,
                err_estimate: diff,
            });
        }
        n += 16;
    }
}

/// Ray angle for the Mellin integral: rotating `t ↦ t e^{iθ}` trades the
/// `e^{-π|Im s|/2}` cancellation of `∫ t^{s-1} …` for `e^{-(π/2-θ)|Im s|}`.
fn mellin_angle(s: Complex64) -> f64 {
    s.im.signum() * (0.35 * s.im.abs()).min(1.3)
}

/// `D(s) = (1/Γ(s)) ∫_0^∞ (φ(e^{-t}) - 1) t^{s-1} dt`.
///
/// The integral runs along the ray `arg t = θ` and is split at `|t| = 1`:
///
/// ```text
/// Γ(s) D(s) = e^{iθs} [ ∫_0^1 φ(e^{-re^{iθ}}) r^{s-1} dr - 1/s + ∫_1^∞ (φ(e^{-re^{iθ}}) - 1) r^{s-1} dr ]
/// ```
///
/// which converges for every `s ≠ 0` because `φ(e^{-t})` vanishes faster
/// than any power as `t → 0` inside `|arg t| < π/2`. The lower piece uses
/// `r = e^v`.
pub fn d_mellin(s: Complex64, tol: f64) -> Result<EvalResult> {
    d_mellin_on_ray(s, mellin_angle(s), tol)
}

/// [`d_mellin`] on a caller-chosen ray `arg t = theta`, `|theta| < π/2`.
pub fn d_mellin_on_ray(s: Complex64, theta: f64, tol: f64) -> Result<EvalResult> {
    if !(s.re > -1.0) {
        return Err(Error::domain("the Mellin route needs Re(s) > -1"));
    }
    if s.norm() < 1e-12 {
        return Err(Error::domain("the Mellin route excludes s = 0"));
    }
    if !(theta.abs() < PI / 2.0 - 0.05) {
        return Err(Error::domain("ray angle must stay inside (-π/2, π/2)"));
    }
    let dir = Complex64::from_polar(1.0, theta);
    let cos_t = theta.cos();
    let target = (100.0 / tol).ln();

    // φ(e^{-r e^{iθ}}) is at most about sqrt(2π/r) exp(-π² cosθ / (6r)).
    let mut r0 = 1.0f64;
    loop {
        let log_bound = 0.5 * (2.0 * PI / r0).ln() - PI * PI * cos_t / (6.0 * r0) + s.re * r0.ln();
        if log_bound < -target || r0 < 1e-6 {
            break;
        }
        r0 *= 0.9;
    }
    // |φ - 1| ≲ 2 e^{-r cosθ} for r ≥ 1
    let mut r1 = 2.0f64;
    while -r1 * cos_t + (s.re - 1.0) * r1.ln() + 2f64.ln() > -target {
        r1 += 1.0;
    }

    let v_lo = r0.ln();
    let v_panels = ((-v_lo) / 0.25).ceil().max(1.0) as usize;
    let r_panels = (r1 - 1.0).ceil() as usize;
    let prefactor = (Complex64::i() * theta * s - ln_gamma(s)?).exp();

    let level = |order: usize| -> (Complex64, f64, usize) {
        let rule = GaussLegendre::of_order(order);
        let mut sum = c(0.0, 0.0);
        let mut abs = 0.0;
        let mut count = 0;
        let vw = -v_lo / v_panels as f64;
        for p in 0..v_panels {
            let a = v_lo + p as f64 * vw;
            for (v, w) in rule.mapped(a, a + vw) {
                let r = v.exp();
                let (pm1, pabs, n) = phi_minus_one(dir * r, tol * 1e-3);
                let term = (pm1 + 1.0) * (s * v).exp() * w;
                sum += term;
                abs += term.norm() + (pabs + 1.0) * (s.re * v).exp() * w;
                count += n;
            }
        }
        for p in 0..r_panels {
            let a = 1.0 + p as f64;
            for (r, w) in rule.mapped(a, a + 1.0) {
                let (pm1, pabs, n) = phi_minus_one(dir * r, tol * 1e-3);
                let term = pm1 * ((s - 1.0) * r.ln()).exp() * w;
                sum += term;
                abs += pabs * r.powf(s.re - 1.0) * w;
                count += n;
            }
        }
        (sum - s.inv(), abs + s.inv().norm(), count)
    };

    let mut order = 24;
    let (mut prev, _, mut evaluations) = level(order);
    loop {
        order *= 2;
        let (cur, abs, n) = level(order);
        evaluations += n;
        let value = prefactor * cur;
        let diff = prefactor.norm() * (cur - prev).norm();
        let floor = 16.0 * f64::EPSILON * abs * prefactor.norm();
        if diff <= tol * value.norm().max(1.0) || diff <= floor {
            return Ok(EvalResult {
                value,
                err_estimate: diff.max(floor),
                method: Method::Mellin,
                evaluations,
                ill_conditioned: abs * prefactor.norm() > CONDITIONING_LIMIT * value.norm(),
            });
        }
        if order >= 192 {
            return Err(Error::Convergence {
                context: "Mellin integral".into(),
                best: value,
                err_estimate: diff.max(floor),
            });
        }
        prev = cur;
    }
}

/// `D(k) = Σ_j pi_coeffs[j] π^j`, exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactDk {
    pub k: u32,
    pub pi_coeffs: Vec<AlgebraicValue>,
    /// Correctly rounded value of the exact expression.
    pub decimal: f64,
}

impl ExactDk {
    /// Float evaluation coefficient by coefficient; loses digits to
    /// cancellation as `k` grows.
    pub fn componentwise_decimal(&self) -> f64 {
        self.pi_coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a.to_f64_componentwise() * PI.powi(j as i32))
            .sum()
    }

    pub fn to_eval_result(&self) -> EvalResult {
        EvalResult {
            value: c(self.decimal, 0.0),
            err_estimate: self.decimal.abs() * f64::EPSILON,
            method: Method::Explicit,
            evaluations: self.pi_coeffs.len(),
            ill_conditioned: false,
        }
    }
}

/// `D(k) = Σ_{j=0}^{k} 6^{k-j} C(-k, k-j) (2π)^j / j! · g(j)` in exact
/// arithmetic, grouped by powers of π.
///
/// # Panics
/// Panics if `k == 0`.
pub fn d_explicit(k: u32) -> ExactDk {
    assert!(k >= 1, "d_explicit needs k >= 1");
    let g = g_coeff_table(k as usize);
    let mut coeffs = Vec::with_capacity(k as usize + 1);
    let mut j_fact = BigInt::from(1u32);
    for j in 0..=k {
        if j > 0 {
            j_fact *= j;
        }
        // C(-k, k-j) = (-1)^{k-j} C(2k-j-1, k-j)
        let mut binom = binomial(u64::from(2 * k - j - 1), u64::from(k - j));
        if (k - j) % 2 == 1 {
            binom = -binom;
        }
        let num = BigInt::from(6u32).pow(k - j) * binom * BigInt::from(2u32).pow(j);
        let factor = Rational::new(num, j_fact.clone());
        coeffs.push(g[j as usize].scale(&factor));
    }
    let pi = pi_rational();
    let mut pi_pow = Rational::from_integer(BigInt::from(1u32));
    let mut total = AlgebraicValue::default();
    for a in &coeffs {
        total = total + a.scale(&pi_pow);
        pi_pow *= &pi;
    }
    ExactDk {
        k,
        pi_coeffs: coeffs,
        decimal: total.to_f64(),
    }
}

/// Residue oracle for `D(k)`: `-Res(F u^{-k}, π/3) = -Res(F u^{-k}, 2π/3)`.
///
/// Any contour isolating one of the two points must cross `(π/3, 2π/3)`
/// where `|u| ≤ 1/24`, so the small circles lose about `k log₁₀ 24` digits.
/// The returned value comes from the circle `|z - π/2| = π/2`, which
/// encloses both points (and no other singularity) and sees `|u| ≥ 1/3`;
/// the two small circles are cross-checked against it within their own
/// rounding error.
pub fn d_residue_oracle(k: u32) -> Result<EvalResult> {
    let residue = residue_circles(k)?;
    let tol = |e: f64| 1e-9f64.max(10.0 * e);
    for (name, small) in [("π/3", &residue.at_pi_3), ("2π/3", &residue.at_2pi_3)] {
        let gap = (small.value - residue.combined.value).norm();
        if gap > tol(small.err_estimate + residue.combined.err_estimate) {
            return Err(Error::Consistency(format!(
                "residue at {name} ({}) disagrees with the enclosing circle ({})",
                small.value, residue.combined.value
            )));
        }
    }
    Ok(residue.combined)
}

/// The three circle evaluations behind [`d_residue_oracle`], each already
/// negated (and halved for the enclosing circle) so that it estimates `D(k)`.
#[derive(Clone, Copy, Debug)]
pub struct ResidueCircles {
    pub at_pi_3: EvalResult,
    pub at_2pi_3: EvalResult,
    pub combined: EvalResult,
}

pub fn residue_circles(k: u32) -> Result<ResidueCircles> {
    if k == 0 {
        return Err(Error::domain("residue oracle needs k >= 1"));
    }
    let e = c(-(k as f64), 0.0);
    let f = move |z: Complex64| Ok(residue_kernel(z)? * principal_pow(index_map(z), e)?);
    let scaled = |r: EvalResult, factor: f64| EvalResult {
        value: r.value * factor,
        err_estimate: r.err_estimate * factor.abs(),
        method: Method::ResidueOracle,
        ..r
    };
    let at_pi_3 = integrate_circle(f, &CircleSpec::new(c(PI / 3.0, 0.0), PI / 6.0))?;
    let at_2pi_3 = integrate_circle(f, &CircleSpec::new(c(2.0 * PI / 3.0, 0.0), PI / 6.0))?;
    let combined = integrate_circle(f, &CircleSpec::new(c(PI / 2.0, 0.0), PI / 2.0))?;
    Ok(ResidueCircles {
        at_pi_3: scaled(at_pi_3, -1.0),
        at_2pi_3: scaled(at_2pi_3, -1.0),
        combined: scaled(combined, -0.5),
    })
}

/// The two leading-order forms of `D*(s)` as `s → -∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticForms {
    /// `2√3 · 6^{-s} ζ(2s)`
    pub zeta_form: f64,
    /// `2^{s+1} 3^{1/2-s} π^{2s-1} sin(πs) Γ(1-2s)`; equals
    /// `zeta_form / ζ(1-2s)`.
    pub gamma_form: f64,
}

/// Leading behaviour of `D*(s)` for real `s < 0`, with the phase of the
/// approximating integral fixed so its zeros fall on the negative integers.
pub fn asymptotic_approx(s: f64) -> Result<AsymptoticForms> {
    if !(s < 0.0) || !s.is_finite() {
        return Err(Error::domain("asymptotic forms need real s < 0"));
    }
    let zeta_form = 2.0 * SQRT3 * 6f64.powf(-s) * zeta_real(2.0 * s)?;
    let gamma_form = 2f64.powf(s + 1.0)
        * 3f64.powf(0.5 - s)
        * PI.powf(2.0 * s - 1.0)
        * sin_pi(s)
        * gamma(c(1.0 - 2.0 * s, 0.0))?.re;
    Ok(AsymptoticForms {
        zeta_form,
        gamma_form,
    })
}

/// Method selection for [`evaluate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Fixed(Method),
}

/// Returns `k` when `s` is a positive integer that fits `u32`.
pub fn positive_integer(s: Complex64) -> Option<u32> {
    (s.im == 0.0 && s.re >= 1.0 && s.re == s.re.round() && s.re <= f64::from(u32::MAX))
        .then_some(s.re as u32)
}

/// Method picked by [`MethodChoice::Auto`]: explicit at positive integers,
/// Mellin for `Re s > 0` with `|Im s| > 8`, the line integral otherwise.
pub fn auto_method(s: Complex64) -> Method {
    if positive_integer(s).is_some() {
        Method::Explicit
    } else if s.re > 0.0 && s.im.abs() > 8.0 {
        Method::Mellin
    } else {
        Method::Integral
    }
}

/// Evaluates `D*(s)` by the chosen route; the result carries the route used.
pub fn evaluate(s: Complex64, choice: MethodChoice, tol: f64) -> Result<EvalResult> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("s must be finite"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let method = match choice {
        MethodChoice::Auto => auto_method(s),
        MethodChoice::Fixed(m) => m,
    };
    let integer_k = || positive_integer(s).ok_or_else(|| Error::domain("route needs a positive integer s"));
    match method {
        Method::Integral => dstar_integral(s, tol),
        Method::Series => d_series(s, tol),
        Method::Mellin => d_mellin(s, tol),
        Method::Explicit => {
            let k = integer_k()?;
            if k > 400 {
                return Err(Error::domain("explicit route supports k <= 400"));
            }
            Ok(d_explicit(k).to_eval_result())
        }
        Method::ResidueOracle => d_residue_oracle(integer_k()?),
        other => Err(Error::domain(format!("{other} is not an evaluation route for D*(s)"))),
    }
}

/// `D*'(s)`: analytic differentiation for the line integral, otherwise an
/// 8-point Cauchy difference on a circle of radius `10⁻³` around `s`.
pub fn derivative(s: Complex64, choice: MethodChoice, tol: f64) -> Result<EvalResult> {
    let method = match choice {
        MethodChoice::Auto => auto_method(s),
        MethodChoice::Fixed(m) => m,
    };
    if method == Method::Integral {
        return dstar_derivative(s, tol);
    }
    let method = if method == Method::Explicit || method == Method::ResidueOracle {
        Method::Mellin
    } else {
        method
    };
    let h = 1e-3;
    let nodes = 8;
    let mut sum = c(0.0, 0.0);
    let mut err = 0.0;
    let mut evaluations = 0;
    for j in 0..nodes {
        let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / nodes as f64);
        let r = evaluate(s + h * w, MethodChoice::Fixed(method), tol)?;
        sum += r.value / w;
        err += r.err_estimate;
        evaluations += r.evaluations;
    }
    Ok(EvalResult {
        value: sum / (nodes as f64 * h),
        err_estimate: err / (nodes as f64 * h),
        method,
        evaluations,
        ill_conditioned: false,
    })
}

/// Float value of an exact `D(k)` coefficient list, for reporting.
pub fn coefficient_f64(a: &AlgebraicValue) -> (f64, f64) {
    (
        a.rat.to_f64().unwrap_or(f64::NAN),
        a.root3.to_f64().unwrap_or(f64::NAN),
    )
}

/// True when `a` has no √3 part (even powers) or no rational part (odd).
pub fn coefficient_parity_ok(j: usize, a: &AlgebraicValue) -> bool {
    if j.is_multiple_of(2) {
        a.root3.is_zero()
    } else {
        a.rat.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D1: f64 = -1.255_197_456_936_871_4;
    const D2: f64 = -1.198_421_714_578_825_9;
    const D3: f64 = -1.114_838_310_102_694_5;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn explicit_closed_forms() {
        let d1 = d_explicit(1);
        assert_eq!(d1.pi_coeffs[0], AlgebraicValue::from_int(6));
        // -4/√3 = -(4/3)√3
        assert_eq!(d1.pi_coeffs[1], AlgebraicValue::new(q(0, 1), q(-4, 3)));
        let d2 = d_explicit(2);
        assert_eq!(
            d2.pi_coeffs,
            vec![
                AlgebraicValue::from_int(-108),
                AlgebraicValue::new(q(0, 1), q(16, 1)),
                AlgebraicValue::from_int(2)
            ]
        );
        let d3 = d_explicit(3);
        // 40/(3√3) = (40/9)√3
        assert_eq!(
            d3.pi_coeffs,
            vec![
                AlgebraicValue::from_int(2160),
                AlgebraicValue::new(q(0, 1), q(-288, 1)),
                AlgebraicValue::from_int(-36),
                AlgebraicValue::new(q(0, 1), q(-40, 9)),
            ]
        );
        for (d, e) in [(d1, D1), (d2, D2), (d3, D3)] {
            assert!((d.decimal - e).abs() < 1e-15, "{} vs {e}", d.decimal);
            assert!(((d.componentwise_decimal() - d.decimal) / d.decimal).abs() < 1e-11);
        }
    }

    #[test]
    fn explicit_parity_structure() {
        for k in 1..=12 {
            let d = d_explicit(k);
            assert_eq!(d.pi_coeffs.len(), k as usize + 1);
            for (j, a) in d.pi_coeffs.iter().enumerate() {
                assert!(coefficient_parity_ok(j, a), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn explicit_approaches_minus_one() {
        let d = d_explicit(60);
        assert!((d.decimal + 1.0).abs() < 1e-15);
    }

    #[test]
    fn integral_anchors() {
        let r = dstar_integral(c(1.0, 0.0), 1e-13).unwrap();
        assert!((r.value.re - D1).abs() < 1e-12);
        assert!(r.value.im.abs() < 1e-12);
        assert_eq!(r.method, Method::Integral);
        let r = dstar_integral(c(3.0, 0.0), 1e-13).unwrap();
        assert!((r.value.re - D3).abs() < 1e-12);
        let zero = dstar_integral(c(-1.0, 0.0), 1e-13).unwrap();
        let half = dstar_integral(c(-1.5, 0.0), 1e-13).unwrap();
        assert!(zero.value.norm() <= 1e-6 * half.value.norm());
        assert!(zero.ill_conditioned);
    }

    #[test]
    fn series_anchors_and_domain() {
        let r = d_series(c(3.0, 0.0), 1e-14).unwrap();
        assert!((r.value.re - D3).abs() < 1e-13);
        let r = d_series(c(1.0, 0.0), 1e-14).unwrap();
        assert!((r.value.re - D1).abs() < 1e-13);
        let z2 = d_series(c(0.56199, 6.01547), 1e-13).unwrap();
        assert!(z2.value.norm() < 5e-5);
        assert!(matches!(d_series(c(0.0, 1.0), 1e-12), Err(Error::Domain(_))));
    }

    #[test]
    fn mellin_anchors_and_domain() {
        let r = d_mellin(c(2.0, 0.0), 1e-13).unwrap();
        assert!((r.value.re - D2).abs() < 1e-12, "{}", r.value);
        let r = d_mellin(c(1.0, 0.0), 1e-13).unwrap();
        assert!((r.value.re - D1).abs() < 1e-12);
        let z1 = d_mellin(c(0.88271, 3.91652), 1e-13).unwrap();
        assert!(z1.value.norm() < 5e-5);
        assert!(matches!(d_mellin(c(-1.5, 0.0), 1e-12), Err(Error::Domain(_))));
        assert!(matches!(d_mellin(c(0.0, 0.0), 1e-12), Err(Error::Domain(_))));
    }

    #[test]
    fn mellin_ray_independence() {
        let s = c(0.4, 6.0);
        let a = d_mellin_on_ray(s, 0.0, 1e-13).unwrap().value;
        let b = d_mellin_on_ray(s, 0.8, 1e-13).unwrap().value;
        let d = d_mellin_on_ray(s, 1.3, 1e-13).unwrap().value;
        assert!((a - b).norm() < 1e-9, "{a} vs {b}");
        assert!((b - d).norm() < 1e-11, "{b} vs {d}");
    }

    #[test]
    fn residue_oracle_matches_explicit() {
        for k in [1, 2, 5] {
            let r = d_residue_oracle(k).unwrap();
            assert!((r.value.re - d_explicit(k).decimal).abs() < 1e-9, "k={k}");
            assert_eq!(r.method, Method::ResidueOracle);
        }
        let small = residue_circles(2).unwrap();
        assert!((small.at_pi_3.value.re - D2).abs() < 1e-9);
        assert!((small.at_2pi_3.value.re - D2).abs() < 1e-9);
    }

    #[test]
    fn asymptotic_examples() {
        let a = asymptotic_approx(-2.0).unwrap();
        assert_eq!(a.zeta_form, 0.0);
        let a = asymptotic_approx(-0.5).unwrap();
        assert!((a.zeta_form + 2f64.sqrt() / 2.0).abs() < 1e-14);
        let a = asymptotic_approx(-9.5).unwrap();
        let ratio = a.gamma_form / a.zeta_form;
        assert!((ratio - 1.0 / zeta_real(20.0).unwrap()).abs() < 1e-12);
        assert!(asymptotic_approx(0.5).is_err());
    }

    #[test]
    fn derivative_checks() {
        let h = 1e-4;
        let d = dstar_derivative(c(2.0, 0.0), 1e-13).unwrap().value;
        let fd = (dstar_integral(c(2.0 + h, 0.0), 1e-14).unwrap().value
            - dstar_integral(c(2.0 - h, 0.0), 1e-14).unwrap().value)
            / (2.0 * h);
        assert!((d - fd).norm() <= 1e-6);
        let s = c(0.5, 5.0);
        let a = dstar_derivative(s, 1e-13).unwrap().value;
        let b = dstar_derivative(s.conj(), 1e-13).unwrap().value;
        assert!((a.conj() - b).norm() < 1e-9);
        let z1 = c(0.882_716_385, 3.916_525_759);
        assert!(dstar_derivative(z1, 1e-12).unwrap().value.norm() > 1e-3);
        let m = derivative(z1, MethodChoice::Fixed(Method::Mellin), 1e-13).unwrap().value;
        let i = derivative(z1, MethodChoice::Fixed(Method::Integral), 1e-13).unwrap().value;
        assert!((m - i).norm() < 1e-7, "{m} vs {i}");
    }

    #[test]
    fn auto_dispatch() {
        let r = evaluate(c(4.0, 0.0), MethodChoice::Auto, 1e-12).unwrap();
        assert_eq!(r.method, Method::Explicit);
        assert_eq!(r.value.re, d_explicit(4).decimal);
        assert_eq!(auto_method(c(0.5, 15.0)), Method::Mellin);
        assert_eq!(auto_method(c(-3.7, 0.0)), Method::Integral);
        let r = evaluate(c(-3.7, 0.0), MethodChoice::Auto, 1e-12).unwrap();
        assert_eq!(r.method, Method::Integral);
        assert!(evaluate(c(2.5, 0.0), MethodChoice::Fixed(Method::Explicit), 1e-12).is_err());
        assert!(evaluate(c(2.0, 0.0), MethodChoice::Fixed(Method::Hankel), 1e-12).is_err());
    }

    #[test]
    fn large_s_limit() {
        let r = dstar_integral(c(50.0, 0.0), 1e-13).unwrap();
        assert!((r.value.re + 1.0).abs() < 1e-10);
    }
}
