//! Partial sums `S(x) = Σ_{1 ≤ n < x} a_n` from the residues of
//! `F(z) u(z)^{-s}` enclosed by the level curve `|u(z)| = x`.
//!
//! Shifting the Perron contour to the left picks up the poles `kπ/3`,
//! `k < 0`, that lie to the right of `z₋(x)`, the negative root of
//! `u(z) = x`. Each contributes `r(k)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specialnum::{coeff_a, residue_r};

/// Largest `x` accepted by [`partial_sum_oracle`].
pub const ORACLE_LIMIT: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartialSumResult {
    pub x: f64,
    pub value: i64,
    /// Most negative `k` whose pole `kπ/3` is enclosed (0 when none is).
    pub k_min: i64,
    pub z_minus: f64,
}

/// Negative solution of `u(z) = x`: `π/2 - (π/6)√(1 + 24x)`.
pub fn z_minus(x: f64) -> Result<f64> {
    if !(x >= -1.0 / 24.0) || !x.is_finite() {
        return Err(Error::domain("z_minus needs x >= -1/24"));
    }
    Ok(PI / 2.0 - PI / 6.0 * (1.0 + 24.0 * x).sqrt())
}

/// `S(x)` for non-integer `x > 1` as a residue count.
///
/// The pole `kπ/3`, `k < 0`, lies strictly right of `z₋(x)` exactly when
/// `u(kπ/3) = (1 - k)(2 - k)/6 < x`. Poles with nonzero residue have
/// integer `u`, so for non-integer `x` the comparison is never borderline.
pub fn partial_sum(x: f64) -> Result<PartialSumResult> {
    if !x.is_finite() || !(x > 1.0) {
        return Err(Error::domain("partial_sum needs finite x > 1"));
    }
    if x == x.floor() {
        return Err(Error::domain("partial_sum is undefined at integer x (jump points)"));
    }
    if x > 1e15 {
        return Err(Error::domain("partial_sum supports x <= 1e15"));
    }
    let zm = z_minus(x)?;
    let enclosed = |k: i64| -> bool {
        let m = (1 - k) as f64 * (2 - k) as f64;
        m < 6.0 * x
    };
    let mut value = 0i64;
    let mut k = -1i64;
    while enclosed(k) {
        value += i64::from(residue_r(k));
        k -= 1;
    }
    Ok(PartialSumResult {
        x,
        value,
        k_min: if k == -1 { 0 } else { k + 1 },
        z_minus: zm,
    })
}

/// `Σ_{1 ≤ n < x} a_n` by direct summation.
pub fn partial_sum_oracle(x: f64) -> Result<i64> {
    if !(x > 1.0) || !(x <= ORACLE_LIMIT) {
        return Err(Error::domain("partial_sum_oracle needs 1 < x <= 1e6"));
    }
    let upper = x.ceil() as u64;
    Ok((1..upper).map(|n| i64::from(coeff_a(n))).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_minus_examples() {
        assert!((z_minus(1.0).unwrap() + PI / 3.0).abs() < 1e-15);
        assert!((z_minus(0.0).unwrap() - PI / 3.0).abs() < 1e-15);
        assert!((z_minus(2.5).unwrap() + 2.518_640_840_626_838).abs() < 1e-14);
        assert!(z_minus(-0.05).is_err());
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sum(1.5).unwrap().value, -1);
        assert_eq!(partial_sum(2.5).unwrap().value, -2);
        assert_eq!(partial_sum(6.5).unwrap().value, -1);
        assert!(matches!(partial_sum(2.0), Err(Error::Domain(_))));
        assert!(partial_sum(0.5).is_err());
        let r = partial_sum(2.5).unwrap();
        assert_eq!(r.k_min, -2);
        assert!(r.z_minus < -2.0 * PI / 3.0);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(partial_sum_oracle(1.5).unwrap(), -1);
        assert_eq!(partial_sum_oracle(100.5).unwrap(), 0);
        assert_eq!(partial_sum_oracle(93.0).unwrap(), -1);
        assert!(partial_sum_oracle(2e6).is_err());
    }

    #[test]
    fn matches_oracle_between_all_integers() {
        for n in 1..3000u32 {
            for frac in [0.001, 0.5, 0.999] {
                let x = f64::from(n) + frac;
                assert_eq!(partial_sum(x).unwrap().value, partial_sum_oracle(x).unwrap(), "x={x}");
            }
        }
    }
}
