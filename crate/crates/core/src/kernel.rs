//! Closed-form scalar maps: the residue kernel
//! `F(z) = -4√3 cos z / (1 + 2 cos 2z)`, the index map
//! `u(z) = (π - 3z)(2π - 3z) / (6π²)`, their `π/2`-shifted forms, the
//! generating function of the explicit-formula coefficients, and the
//! Γ / ζ utilities needed by the asymptotics.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Denominators smaller than this are treated as poles.
pub const POLE_THRESHOLD: f64 = 1e-13;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `F(z) = -4√3 cos z / (1 + 2 cos 2z)`.
///
/// Evaluated through `v = e^{±iz}` (sign chosen so `|v| ≤ 1`):
/// `F = -2√3 (v³ + v) / (v⁴ + v² + 1)`, which stays finite far from the
/// real axis where `cos z` itself would overflow.
pub fn residue_kernel(z: Complex64) -> Result<Complex64> {
    // F is even, so fold into the upper half plane.
    let zz = if z.im < 0.0 { -z } else { z };
    let v = (Complex64::i() * zz).exp();
    let v2 = v * v;
    let den = v2 * v2 + v2 + 1.0;
    // |1 + 2 cos 2z| = |den| / |v|²
    if den.norm() < POLE_THRESHOLD * v2.norm() {
        return Err(Error::Pole {
            function: "F",
            at: z,
        });
    }
    Ok(-2.0 * SQRT3 * (v2 * v + v) / den)
}

/// `u(z) = (π - 3z)(2π - 3z) / (6π²)`; takes the generalized pentagonal
/// values at `z = -kπ/3`.
pub fn index_map(z: Complex64) -> Complex64 {
    (PI - 3.0 * z) * (2.0 * PI - 3.0 * z) / (6.0 * PI * PI)
}

/// `F'(z) = F(z + π/2) = 4√3 sin z / (1 - 2 cos 2z)`, poles at `±π/6 + kπ`.
pub fn residue_kernel_shifted(z: Complex64) -> Result<Complex64> {
    // odd in z
    let (zz, sign) = if z.im < 0.0 { (-z, -1.0) } else { (z, 1.0) };
    let v = (Complex64::i() * zz).exp();
    let v2 = v * v;
    let den = v2 * v2 - v2 + 1.0;
    if den.norm() < POLE_THRESHOLD * v2.norm() {
        return Err(Error::Pole {
            function: "F'",
            at: z,
        });
    }
    // 4√3 (v - 1/v)/(2i) / (1 - v² - v⁻²) = 2√3 i (v³ - v) / (v⁴ - v² + 1)
    Ok(sign * 2.0 * SQRT3 * Complex64::i() * (v2 * v - v) / den)
}

/// `u'(z) = u(z + π/2) = 3z² / (2π²) - 1/24`.
pub fn index_map_shifted(z: Complex64) -> Complex64 {
    3.0 * z * z / (2.0 * PI * PI) - 1.0 / 24.0
}

/// `E(t) = -(3t cos 2t + √3 t sin 2t) / sin 3t`, the exponential generating
/// function of `g(j)`, with the removable value `E(0) = -1`.
pub fn explicit_egf(t: Complex64) -> Result<Complex64> {
    if t.norm() < 1e-6 {
        // -1 + g(1) t + g(2) t²/2 with g(1) = -2/√3, g(2) = 1
        return Ok(-1.0 - 2.0 / SQRT3 * t + 0.5 * t * t);
    }
    let s3 = (3.0 * t).sin();
    if s3.norm() < POLE_THRESHOLD {
        return Err(Error::Pole {
            function: "E",
            at: t,
        });
    }
    let num = 3.0 * t * (2.0 * t).cos() + SQRT3 * t * (2.0 * t).sin();
    Ok(-num / s3)
}

/// Closed-form functions by tag, for callers that pick one at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelFn {
    F,
    U,
    FPrime,
    UPrime,
    E,
}

impl KernelFn {
    pub fn eval(self, z: Complex64) -> Result<Complex64> {
        match self {
            KernelFn::F => residue_kernel(z),
            KernelFn::U => Ok(index_map(z)),
            KernelFn::FPrime => residue_kernel_shifted(z),
            KernelFn::UPrime => Ok(index_map_shifted(z)),
            KernelFn::E => explicit_egf(z),
        }
    }
}

/// `w^e = exp(e · Log w)` with the principal logarithm, `arg ∈ (-π, π]`.
pub fn principal_pow(w: Complex64, e: Complex64) -> Result<Complex64> {
    if w == c(0.0, 0.0) {
        if e.re < 0.0 {
            return Err(Error::Pole {
                function: "principal_pow",
                at: w,
            });
        }
        return Ok(if e == c(0.0, 0.0) { c(1.0, 0.0) } else { c(0.0, 0.0) });
    }
    Ok((e * w.ln()).exp())
}

/// `sin(πx)`, exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}

/// `cos(πx)`, exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn sin_pi_complex(z: Complex64) -> Complex64 {
    let (y, x) = (PI * z.im, z.re);
    c(sin_pi(x) * y.cosh(), cos_pi(x) * y.sinh())
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

// Stirling coefficients B_{2k} / (2k(2k-1)), k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// A logarithm of `Γ(z)` (branch unspecified; `exp` of it is `Γ(z)`).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            function: "gamma",
            at: z,
        });
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1 - z) = π / sin(πz)
        let s = sin_pi_complex(z);
        return Ok(c(PI.ln(), 0.0) - s.ln() - ln_gamma(1.0 - z)?);
    }
    let mut z = z;
    let mut shift = c(0.0, 0.0);
    if z.norm() < 18.0 {
        let n = (18.0 - z.re).ceil().max(0.0) as usize;
        let mut prod = c(1.0, 0.0);
        for k in 0..n {
            prod *= z + k as f64;
            // keep the product in range; fold into the log periodically
            if prod.norm() > 1e150 {
                shift += prod.ln();
                prod = c(1.0, 0.0);
            }
        }
        shift += prod.ln();
        z += n as f64;
    }
    let zinv = z.inv();
    let zinv2 = zinv * zinv;
    let mut series = c(0.0, 0.0);
    let mut pow = zinv;
    for coeff in STIRLING {
        series += coeff * pow;
        pow *= zinv2;
    }
    Ok((z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift)
}

/// `Γ(z)`; relative error around `1e-14` for `|z| ≤ 50`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re > 0.0 && z.re <= 20.0 && z.re == z.re.round() {
        let mut f = 1.0;
        for k in 2..(z.re as u32) {
            f *= k as f64;
        }
        return Ok(c(f, 0.0));
    }
    let v = ln_gamma(z)?.exp();
    Ok(if z.im == 0.0 { c(v.re, 0.0) } else { v })
}

/// Riemann ζ on the real line.
///
/// For `x > 0` through the alternating eta series, accelerated; for `x < 0`
/// through `ζ(x) = 2^x π^{x-1} sin(πx/2) Γ(1-x) ζ(1-x)`.
pub fn zeta_real(x: f64) -> Result<f64> {
    if x == 1.0 {
        return Err(Error::Pole {
            function: "zeta",
            at: c(x, 0.0),
        });
    }
    if !x.is_finite() {
        return Err(Error::domain("zeta_real needs a finite argument"));
    }
    if x == 0.0 {
        return Ok(-0.5);
    }
    if x > 0.0 {
        if x >= 60.0 {
            return Ok(1.0 + 2f64.powf(-x) + 3f64.powf(-x));
        }
        let terms: Vec<f64> = (0..64).map(|k| (k as f64 + 1.0).powf(-x)).collect();
        let eta = crate::accel::alternating_sum_real(&terms);
        return Ok(eta / (1.0 - 2f64.powf(1.0 - x)));
    }
    let s = sin_pi(x / 2.0);
    if s == 0.0 {
        return Ok(0.0);
    }
    let g = gamma(c(1.0 - x, 0.0))?.re;
    Ok(2f64.powf(x) * PI.powf(x - 1.0) * s * g * zeta_real(1.0 - x)?)
}
