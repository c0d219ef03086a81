//! Exact integer and rational sequences: Bernoulli numbers, the rescaled
//! Glaisher numbers `G*`, the coefficients `g(j)` of the explicit formula,
//! the pentagonal coefficients `a_n` and the residue pattern `r(k)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational with arbitrary-precision numerator and denominator, always
/// in lowest terms with a positive denominator.
pub type Rational = BigRational;

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `B_0 ..= B_n` with `B_1 = +1/2`, the convention of `x / (1 - e^{-x})`.
pub fn bernoulli_table(n: usize) -> Vec<Rational> {
    // Σ_{k=0}^{m} C(m+1, k) B⁻_k = 0 for m ≥ 1, then flip the sign of B_1.
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        if m >= 3 && m % 2 == 1 {
            b.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += bk * Rational::from_integer(binomial(m as u64 + 1, k as u64));
            }
        }
        b.push(-acc / rat(m as i64 + 1));
    }
    if n >= 1 {
        b[1] = Rational::new(BigInt::one(), BigInt::from(2));
    }
    b
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_table(n).pop().expect("table is non-empty")
}

/// `G*(0) ..= G*(n)`, the Taylor coefficients (times `n!`) of
/// `3x / (2 + 4 cos x)`.
///
/// Multiplying through by `2 + 4 cos x = 6 + 4 Σ_{m≥1} (-1)^m x^{2m}/(2m)!`
/// and matching coefficients of `x^n/n!` gives
/// `6 G*(n) = 3[n = 1] - 4 Σ_{m≥1} (-1)^m C(n, 2m) G*(n - 2m)`.
pub fn glaisher_gstar_table(n: usize) -> Vec<Rational> {
    let mut g: Vec<Rational> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = if i == 1 { rat(3) } else { Rational::zero() };
        for m in 1..=i / 2 {
            let prev = &g[i - 2 * m];
            if prev.is_zero() {
                continue;
            }
            let term = prev * Rational::from_integer(binomial(i as u64, 2 * m as u64) * 4);
            if m % 2 == 0 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        g.push(acc / rat(6));
    }
    g
}

pub fn glaisher_gstar(n: usize) -> Rational {
    glaisher_gstar_table(n).pop().expect("table is non-empty")
}

/// Glaisher's original indexing, `G(n) = G*(2n + 1)`.
///
/// # Panics
/// Panics if `n == 0`.
pub fn glaisher_g(n: usize) -> Rational {
    assert!(n >= 1, "glaisher_g is defined for n >= 1");
    glaisher_gstar(2 * n + 1)
}

/// Decimal digits carried by the rational approximations of π and √3 used
/// when collapsing exact values to `f64`.
const HP_DIGITS: u32 = 240;

const PI_DIGITS: &str = "3\
    14159265358979323846264338327950288419716939937510\
    58209749445923078164062862089986280348253421170679\
    82148086513282306647093844609550582231725359408128\
    48111745028410270193852110555964462294895493038196\
    44288109756659334461284756482337867831652712019091\
    45648566923460348610454326648213393607260249141273";

/// π as a rational accurate to about 300 decimal digits.
pub fn pi_rational() -> Rational {
    let digits: String = PI_DIGITS.chars().filter(|c| c.is_ascii_digit()).collect();
    let scale = digits.len() as u32 - 1;
    Rational::new(
        digits.parse::<BigInt>().expect("static digits"),
        BigInt::from(10u32).pow(scale),
    )
}

/// √3 as a rational accurate to `HP_DIGITS` decimal digits.
pub fn sqrt3_rational() -> Rational {
    let scale = BigUint::from(10u32).pow(HP_DIGITS);
    let root = (BigUint::from(3u32) * &scale * &scale).sqrt();
    Rational::new(BigInt::from(root), BigInt::from(scale))
}

/// An element `rat + root3 · √3` of `ℚ(√3)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraicValue {
    pub rat: Rational,
    pub root3: Rational,
}

impl AlgebraicValue {
    pub fn new(rat: Rational, root3: Rational) -> Self {
        Self { rat, root3 }
    }

    pub fn rational(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(rat(n))
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.root3.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.rat * k, &self.root3 * k)
    }

    /// Componentwise float evaluation, `rat as f64 + root3 as f64 · √3`.
    pub fn to_f64_componentwise(&self) -> f64 {
        self.rat.to_f64().unwrap_or(f64::NAN) + self.root3.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }

    /// Correctly rounded value up to the precision of the internal √3
    /// approximation; immune to cancellation between the two parts.
    pub fn to_f64(&self) -> f64 {
        let exact = &self.rat + &self.root3 * sqrt3_rational();
        exact.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for AlgebraicValue {
    type Output = AlgebraicValue;
    fn add(self, rhs: Self) -> Self {
        AlgebraicValue::new(self.rat + rhs.rat, self.root3 + rhs.root3)
    }
}

impl Sub for AlgebraicValue {
    type Output = AlgebraicValue;
    fn sub(self, rhs: Self) -> Self {
        AlgebraicValue::new(self.rat - rhs.rat, self.root3 - rhs.root3)
    }
}

impl Neg for AlgebraicValue {
    type Output = AlgebraicValue;
    fn neg(self) -> Self {
        AlgebraicValue::new(-self.rat, -self.root3)
    }
}

impl Mul for AlgebraicValue {
    type Output = AlgebraicValue;
    fn mul(self, rhs: Self) -> Self {
        // (a + b√3)(c + d√3) = (ac + 3bd) + (ad + bc)√3
        let three = rat(3);
        AlgebraicValue::new(
            &self.rat * &rhs.rat + &self.root3 * &rhs.root3 * three,
            &self.rat * &rhs.root3 + &self.root3 * &rhs.rat,
        )
    }
}

impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.root3.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}*sqrt3", self.root3),
            (false, false) => {
                let sign = if self.root3.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}*sqrt3", self.rat, sign, self.root3.abs())
            }
        }
    }
}

/// Coefficient `g(j)` of the explicit formula for `D(k)`:
/// `-(1/2)(-1)^{j/2}(2^j - 2)(3^j - 3) B_j` for even `j`, and
/// `-(2^j + 2) G*(j) / √3` for odd `j`.
pub fn g_coeff(j: usize) -> AlgebraicValue {
    let b = bernoulli_table(j);
    let g = glaisher_gstar_table(j);
    g_coeff_from(j, &b, &g)
}

/// `g(0) ..= g(n)` sharing one Bernoulli and one Glaisher table.
pub fn g_coeff_table(n: usize) -> Vec<AlgebraicValue> {
    let b = bernoulli_table(n);
    let g = glaisher_gstar_table(n);
    (0..=n).map(|j| g_coeff_from(j, &b, &g)).collect()
}

fn g_coeff_from(j: usize, b: &[Rational], gstar: &[Rational]) -> AlgebraicValue {
    let two_j = BigInt::from(2u32).pow(j as u32);
    if j.is_multiple_of(2) {
        let three_j = BigInt::from(3u32).pow(j as u32);
        let factor = (two_j - 2) * (three_j - 3);
        let mut v = Rational::from_integer(factor) * &b[j] / rat(2);
        if (j / 2).is_multiple_of(2) {
            v = -v;
        }
        AlgebraicValue::rational(v)
    } else {
        // 1/√3 = √3/3
        let v = -Rational::from_integer(two_j + 2) * &gstar[j] / rat(3);
        AlgebraicValue::new(Rational::zero(), v)
    }
}

/// `a_0 ..= a_N` of `Π (1 - q^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub values: Vec<i8>,
}

impl CoeffTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<i8> {
        self.values.get(n).copied()
    }
}

/// If `n` is a generalized pentagonal number `(3m² ± m)/2`, returns `m ≥ 0`.
pub fn pentagonal_index(n: u64) -> Option<u64> {
    // n = (3m² ± m)/2  ⇔  24n + 1 = (6m ± 1)²
    let d = 24 * n as u128 + 1;
    let r = d.sqrt();
    if r * r != d {
        return None;
    }
    match r % 6 {
        1 => Some(((r - 1) / 6) as u64),
        5 => Some(((r + 1) / 6) as u64),
        _ => None,
    }
}

/// `a_n`: `(-1)^m` at `n = (3m² ± m)/2`, `1` at `n = 0`, zero elsewhere.
pub fn coeff_a(n: u64) -> i8 {
    match pentagonal_index(n) {
        Some(m) if m.is_odd() => -1,
        Some(_) => 1,
        None => 0,
    }
}

/// # Panics
/// Panics if `n == 0`.
pub fn coeff_table(n: usize) -> CoeffTable {
    assert!(n >= 1, "coeff_table needs N >= 1");
    CoeffTable {
        values: (0..=n as u64).map(coeff_a).collect(),
    }
}

/// Expands `Π_{n=1}^{N} (1 - q^n)` modulo `q^{N+1}` by integer convolution.
///
/// # Panics
/// Panics if `n` is zero or exceeds 10⁴.
pub fn product_oracle_coeffs(n: usize) -> CoeffTable {
    assert!((1..=10_000).contains(&n), "product oracle supports 1 <= N <= 10^4");
    let mut poly = vec![0i128; n + 1];
    poly[0] = 1;
    for factor in 1..=n {
        for i in (factor..=n).rev() {
            poly[i] = poly[i]
                .checked_sub(poly[i - factor])
                .expect("partial product coefficient overflow");
        }
    }
    CoeffTable {
        values: poly
            .into_iter()
            .map(|c| i8::try_from(c).expect("pentagonal coefficients lie in {-1, 0, 1}"))
            .collect(),
    }
}

/// Residue of `F` at `kπ/3`: `1` for `k ≡ 1, 2`, `-1` for `k ≡ 4, 5`, else 0 (mod 6).
pub fn residue_r(k: i64) -> i8 {
    match k.rem_euclid(6) {
        1 | 2 => 1,
        4 | 5 => -1,
        _ => 0,
    }
}
