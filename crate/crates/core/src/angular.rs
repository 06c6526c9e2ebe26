//! Exact Wigner 3j and 6j symbols and Clebsch–Gordan coefficients.
//!
//! Quantum numbers are carried as doubled integers, so half-integer values
//! never touch floating point. Symbols are evaluated with the Racah
//! single-sum formulas in big-integer arithmetic: the result is an exact
//! [`SignedSqrt`] (a sign times the square root of a rational), and the only
//! floating-point operation is the final correctly-rounded conversion and
//! square root.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;
use std::sync::{PoisonError, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-negative angular momentum quantum number `j`, stored as `2j`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AngularMomentum(u32);

impl AngularMomentum {
    pub const ZERO: Self = Self(0);
    pub const HALF: Self = Self(1);
    pub const ONE: Self = Self(2);
    pub const THREE_HALVES: Self = Self(3);

    pub const fn from_twice(twice_j: u32) -> Self {
        Self(twice_j)
    }

    pub const fn integer(j: u32) -> Self {
        Self(2 * j)
    }

    pub const fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_half_integer(self) -> bool {
        self.0 % 2 == 1
    }

    /// `2j + 1`
    pub const fn multiplicity(self) -> u32 {
        self.0 + 1
    }

    /// `j(j + 1)`
    pub fn casimir(self) -> f64 {
        let j = self.value();
        j * (j + 1.0)
    }

    /// Adds `twice_delta / 2`, returning `None` if the result would be negative.
    pub fn offset(self, twice_delta: i32) -> Option<Self> {
        let t = i64::from(self.0) + i64::from(twice_delta);
        u32::try_from(t).ok().map(Self)
    }

    /// All projections `m = -j, -j+1, …, j`.
    pub fn projections(self) -> impl DoubleEndedIterator<Item = Projection> {
        let tj = self.0 as i32;
        (0..=tj).map(move |k| Projection(2 * k - tj))
    }

    pub fn admits(self, m: Projection) -> bool {
        is_valid_projection(self, m)
    }
}

impl fmt::Display for AngularMomentum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for AngularMomentum {
    type Err = Error;

    /// Accepts `"5/2"`, `"2.5"` or `"3"`.
    fn from_str(s: &str) -> Result<Self> {
        match parse_twice(s) {
            Some(t) if t >= 0 => Ok(Self(t as u32)),
            _ => Err(Error::QuantumNumber(s.to_string())),
        }
    }
}

/// A magnetic projection `m`, stored as `2m`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Projection(i32);

impl Projection {
    pub const fn from_twice(twice_m: i32) -> Self {
        Self(twice_m)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

impl Neg for Projection {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_twice(s)
            .and_then(|t| i32::try_from(t).ok())
            .map(Self)
            .ok_or_else(|| Error::QuantumNumber(s.to_string()))
    }
}

fn parse_twice(s: &str) -> Option<i64> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        match d {
            1 => Some(2 * n),
            2 => Some(n),
            _ => None,
        }
    } else if let Ok(n) = s.parse::<i64>() {
        Some(2 * n)
    } else {
        let x: f64 = s.parse().ok()?;
        let t = (2.0 * x).round();
        ((2.0 * x - t).abs() < 1e-9 && t.abs() < 1e9).then_some(t as i64)
    }
}

/// `|2m| ≤ 2j` and `2m ≡ 2j (mod 2)`.
pub fn is_valid_projection(j: AngularMomentum, m: Projection) -> bool {
    m.0.unsigned_abs() <= j.0 && (i64::from(j.0) - i64::from(m.0)) % 2 == 0
}

/// `(-1)^(x)` for `x = twice_exponent / 2`, which must be an integer.
pub(crate) fn phase(twice_exponent: i64) -> i32 {
    debug_assert!(twice_exponent % 2 == 0, "phase exponent is not an integer");
    if (twice_exponent / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// True iff `|a − b| ≤ c ≤ a + b` and `a + b + c` is an integer.
pub fn is_triangle(a: AngularMomentum, b: AngularMomentum, c: AngularMomentum) -> bool {
    let (a, b, c) = (a.0, b.0, c.0);
    a.abs_diff(b) <= c && c <= a + b && (a + b + c) % 2 == 0
}

/// A real number `s·√r` with `s ∈ {−1, 0, +1}` and `r ≥ 0` rational, stored
/// exactly as the signed square `s·r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSqrt(BigRational);

impl SignedSqrt {
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// The value whose signed square is `q`.
    pub fn from_signed_square(q: BigRational) -> Self {
        Self(q)
    }

    /// `+√q` for `q ≥ 0`.
    pub fn sqrt_of(q: BigRational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        Self(q)
    }

    pub fn sqrt_of_int(n: i64) -> Self {
        Self::sqrt_of(BigRational::from_integer(n.into()))
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn rational(q: BigRational) -> Self {
        let sq = &q * &q;
        if q.is_negative() {
            Self(-sq)
        } else {
            Self(sq)
        }
    }

    pub fn signed_square(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn to_f64(&self) -> f64 {
        let magnitude = self.0.abs().to_f64().unwrap_or(f64::INFINITY).sqrt();
        f64::from(self.signum()) * magnitude
    }

    /// The exact rational value, if `|r|` is the square of a rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        let r = self.0.abs();
        let (n, d) = (r.numer(), r.denom());
        let (sn, sd) = (n.sqrt(), d.sqrt());
        if &(&sn * &sn) != n || &(&sd * &sd) != d {
            return None;
        }
        let root = BigRational::new(sn, sd);
        Some(if self.0.is_negative() { -root } else { root })
    }
}

impl Mul for SignedSqrt {
    type Output = SignedSqrt;
    fn mul(self, rhs: SignedSqrt) -> SignedSqrt {
        SignedSqrt(self.0 * rhs.0)
    }
}

impl Mul<&SignedSqrt> for &SignedSqrt {
    type Output = SignedSqrt;
    fn mul(self, rhs: &SignedSqrt) -> SignedSqrt {
        SignedSqrt(&self.0 * &rhs.0)
    }
}

impl Mul<i64> for SignedSqrt {
    type Output = SignedSqrt;
    fn mul(self, rhs: i64) -> SignedSqrt {
        self * SignedSqrt::integer(rhs)
    }
}

impl Neg for SignedSqrt {
    type Output = SignedSqrt;
    fn neg(self) -> SignedSqrt {
        SignedSqrt(-self.0)
    }
}

impl From<&SignedSqrt> for f64 {
    fn from(s: &SignedSqrt) -> f64 {
        s.to_f64()
    }
}

static FACTORIALS: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());

/// `n!`, memoized in a process-wide table that grows on demand.
fn factorial(n: usize) -> BigInt {
    {
        let table = FACTORIALS.read().unwrap_or_else(PoisonError::into_inner);
        if let Some(f) = table.get(n) {
            return f.clone();
        }
    }
    let mut table = FACTORIALS.write().unwrap_or_else(PoisonError::into_inner);
    if table.is_empty() {
        table.push(BigInt::one());
    }
    while table.len() <= n {
        let k = table.len();
        let next = &table[k - 1] * BigInt::from(k);
        table.push(next);
    }
    table[n].clone()
}

fn fact(n: i64) -> BigInt {
    factorial(usize::try_from(n).expect("factorial of a negative number"))
}

/// `hi! / lo!` for `lo ≤ hi`.
fn falling(lo: i64, hi: i64) -> BigInt {
    ((lo + 1)..=hi).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Evaluates
///
/// ```text
///   Σ_k (−1)^k · w(k) / [ Π_i (k − α_i)! · Π_j (β_j − k)! ]
/// ```
///
/// over all `k` for which every factorial argument is non-negative, with
/// `w(k) = (k + 1)!` when `with_rising` is set and `1` otherwise. Terms are
/// put over the common denominator `Π_i (k_max − α_i)! · Π_j (β_j − k_min)!`
/// so the sum is a single big-integer ratio.
fn racah_sum(alphas: &[i64], betas: &[i64], with_rising: bool) -> (BigInt, BigInt) {
    let k_min = alphas.iter().copied().max().unwrap_or(0);
    let k_max = betas.iter().copied().min().unwrap_or(0);
    if k_min > k_max {
        return (BigInt::zero(), BigInt::one());
    }

    let denom = alphas
        .iter()
        .map(|&a| fact(k_max - a))
        .chain(betas.iter().map(|&b| fact(b - k_min)))
        .fold(BigInt::one(), |acc, f| acc * f);

    let mut numer = BigInt::zero();
    for k in k_min..=k_max {
        let mut term = if with_rising { fact(k + 1) } else { BigInt::one() };
        for &a in alphas {
            term *= falling(k - a, k_max - a);
        }
        for &b in betas {
            term *= falling(b - k, b - k_min);
        }
        if k % 2 == 0 {
            numer += term;
        } else {
            numer -= term;
        }
    }
    (numer, denom)
}

/// Triangle coefficient `(a+b−c)!(a−b+c)!(−a+b+c)! / (a+b+c+1)!` from doubled arguments.
fn triangle_coefficient(ta: u32, tb: u32, tc: u32) -> BigRational {
    let (a, b, c) = (i64::from(ta), i64::from(tb), i64::from(tc));
    let n = fact((a + b - c) / 2) * fact((a - b + c) / 2) * fact((-a + b + c) / 2);
    BigRational::new(n, fact((a + b + c) / 2 + 1))
}

/// Arguments of a 6j symbol `{j1 j2 j3; j4 j5 j6}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SixJArguments {
    pub top: [AngularMomentum; 3],
    pub bottom: [AngularMomentum; 3],
}

impl SixJArguments {
    pub fn new(
        j1: AngularMomentum,
        j2: AngularMomentum,
        j3: AngularMomentum,
        j4: AngularMomentum,
        j5: AngularMomentum,
        j6: AngularMomentum,
    ) -> Self {
        Self {
            top: [j1, j2, j3],
            bottom: [j4, j5, j6],
        }
    }

    pub fn from_twice(t: [u32; 6]) -> Self {
        let j = t.map(AngularMomentum::from_twice);
        Self::new(j[0], j[1], j[2], j[3], j[4], j[5])
    }

    /// The four triads `(j1 j2 j3)`, `(j1 j5 j6)`, `(j4 j2 j6)`, `(j4 j5 j3)`.
    pub fn triads(&self) -> [[AngularMomentum; 3]; 4] {
        let [j1, j2, j3] = self.top;
        let [j4, j5, j6] = self.bottom;
        [[j1, j2, j3], [j1, j5, j6], [j4, j2, j6], [j4, j5, j3]]
    }

    pub fn is_admissible(&self) -> bool {
        self.triads().iter().all(|&[a, b, c]| is_triangle(a, b, c))
    }
}

/// The 6j symbol as an exact signed square root.
pub fn wigner_6j_exact(args: &SixJArguments) -> SignedSqrt {
    if !args.is_admissible() {
        return SignedSqrt::zero();
    }
    let [j1, j2, j3] = args.top.map(|j| i64::from(j.0));
    let [j4, j5, j6] = args.bottom.map(|j| i64::from(j.0));

    let mut alphas = [
        (j1 + j2 + j3) / 2,
        (j1 + j5 + j6) / 2,
        (j4 + j2 + j6) / 2,
        (j4 + j5 + j3) / 2,
    ];
    let mut betas = [
        (j1 + j2 + j4 + j5) / 2,
        (j2 + j3 + j5 + j6) / 2,
        (j3 + j1 + j6 + j4) / 2,
    ];
    // Canonical order: the 24 classical symmetries permute these lists.
    alphas.sort_unstable();
    betas.sort_unstable();

    let (numer, denom) = racah_sum(&alphas, &betas, true);
    if numer.is_zero() {
        return SignedSqrt::zero();
    }

    let delta = args
        .triads()
        .iter()
        .map(|&[a, b, c]| triangle_coefficient(a.0, b.0, c.0))
        .fold(BigRational::one(), |acc, d| acc * d);
    let sum = BigRational::new(numer, denom);
    SignedSqrt::rational(sum) * SignedSqrt::sqrt_of(delta)
}

/// The 6j symbol `{j1 j2 j3; j4 j5 j6}`; exact zero for inadmissible triads.
pub fn wigner_6j(args: &SixJArguments) -> f64 {
    wigner_6j_exact(args).to_f64()
}

/// Convenience form of [`wigner_6j`] taking doubled arguments.
pub fn wigner_6j_twice(t: [u32; 6]) -> f64 {
    wigner_6j(&SixJArguments::from_twice(t))
}

/// The 3j symbol `(j1 j2 j3; m1 m2 m3)` as an exact signed square root.
pub fn wigner_3j_exact(
    j1: AngularMomentum,
    j2: AngularMomentum,
    j3: AngularMomentum,
    m1: Projection,
    m2: Projection,
    m3: Projection,
) -> SignedSqrt {
    let valid = is_valid_projection(j1, m1)
        && is_valid_projection(j2, m2)
        && is_valid_projection(j3, m3)
        && m1.0 + m2.0 + m3.0 == 0
        && is_triangle(j1, j2, j3);
    if !valid {
        return SignedSqrt::zero();
    }
    let (tj1, tj2, tj3) = (i64::from(j1.0), i64::from(j2.0), i64::from(j3.0));
    let (tm1, tm2, tm3) = (i64::from(m1.0), i64::from(m2.0), i64::from(m3.0));

    let alphas = [0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2];
    let betas = [(tj1 + tj2 - tj3) / 2, (tj1 - tm1) / 2, (tj2 + tm2) / 2];
    let (numer, denom) = racah_sum(&alphas, &betas, false);
    if numer.is_zero() {
        return SignedSqrt::zero();
    }

    let projections = [(tj1, tm1), (tj2, tm2), (tj3, tm3)]
        .iter()
        .map(|&(j, m)| fact((j + m) / 2) * fact((j - m) / 2))
        .fold(BigInt::one(), |acc, f| acc * f);
    let radicand = triangle_coefficient(j1.0, j2.0, j3.0) * BigRational::from_integer(projections);

    let value = SignedSqrt::rational(BigRational::new(numer, denom)) * SignedSqrt::sqrt_of(radicand);
    if phase(tj1 - tj2 - tm3) < 0 {
        -value
    } else {
        value
    }
}

/// The 3j symbol; zero when `m1 + m2 + m3 ≠ 0` or the triad fails.
pub fn wigner_3j(
    j1: AngularMomentum,
    j2: AngularMomentum,
    j3: AngularMomentum,
    m1: Projection,
    m2: Projection,
    m3: Projection,
) -> f64 {
    wigner_3j_exact(j1, j2, j3, m1, m2, m3).to_f64()
}

/// `⟨j1 m1 j2 m2 | J M⟩` as an exact signed square root.
pub fn clebsch_gordan_exact(
    j1: AngularMomentum,
    m1: Projection,
    j2: AngularMomentum,
    m2: Projection,
    j: AngularMomentum,
    m: Projection,
) -> SignedSqrt {
    let three_j = wigner_3j_exact(j1, j2, j, m1, m2, -m);
    if three_j.is_zero() {
        return three_j;
    }
    let value = three_j * SignedSqrt::sqrt_of_int(i64::from(j.multiplicity()));
    if phase(i64::from(j1.0) - i64::from(j2.0) + i64::from(m.0)) < 0 {
        -value
    } else {
        value
    }
}

/// Clebsch–Gordan coefficient `⟨j1 m1 j2 m2 | J M⟩` (Condon–Shortley phase).
pub fn clebsch_gordan(
    j1: AngularMomentum,
    m1: Projection,
    j2: AngularMomentum,
    m2: Projection,
    j: AngularMomentum,
    m: Projection,
) -> f64 {
    clebsch_gordan_exact(j1, m1, j2, m2, j, m).to_f64()
}

/// `⟨S‖S‖S⟩ = √(S(S+1)(2S+1))`, exact.
pub fn spin_reduced_element_exact(s: AngularMomentum) -> SignedSqrt {
    let t = i64::from(s.0);
    SignedSqrt::sqrt_of(BigRational::new((t * (t + 2) * (t + 1)).into(), 4.into()))
}

/// `⟨S‖S‖S⟩ = √(S(S+1)(2S+1))`.
pub fn spin_reduced_element(s: AngularMomentum) -> f64 {
    spin_reduced_element_exact(s).to_f64()
}
