//! Bound-state g-factors of H₂⁺ hyperfine levels.
//!
//! The total g-factor splits into electron-spin (`g1`), nuclear-spin (`g2`)
//! and orbital (`g3`) parts. `g1` and `g2` depend only on angular momentum
//! algebra and are exact rationals in units of `g_e` and `g_p·m_e/m_p`; `g3`
//! is a geometric factor times the ro-vibrational matrix element
//! `⟨vL‖L_tot‖vL⟩ = ⟨L_e⟩ − 2(m_e/m_p)⟨L_1⟩` read from [`OrbitalData`].
//!
//! Every closed form has a second derivation through Wigner 6j recoupling
//! (`*_via_wigner`); the two agree exactly.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};

use crate::angular::{phase, spin_reduced_element_exact, wigner_6j_exact, AngularMomentum, SignedSqrt, SixJArguments};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::hfs::{HyperfineLevel, MixingCoefficients, MixingTable, RovibLevel, SpinCoupling};

const BUNDLED_ORBITAL: &str = include_str!("../data/orbital.csv");

/// Largest `v` and `L` accepted without `allow_extended`.
pub const TABULATED_MAX: u32 = 4;

/// Spin operator whose matrix element is requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinOperator {
    /// Electron spin `S_e`.
    Electron,
    /// Total nuclear spin `I`.
    Nuclear,
}

/// `2J − 2L` for a level of the uncoupled-`F` basis, after checking that
/// `(L, F, J)` exists.
fn basis_offset(l: u32, f: AngularMomentum, j: AngularMomentum) -> Result<i64> {
    let d = i64::from(j.twice()) - 2 * i64::from(l);
    let ok = match (l % 2, f.twice()) {
        (_, 1) => d.abs() == 1,
        (1, 3) => d.abs() == 1 || d.abs() == 3,
        _ => false,
    };
    if ok {
        Ok(d)
    } else {
        Err(Error::domain(format!("no basis state with L={l}, F={f}, J={j}")))
    }
}

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// `g1/g_e` for a basis state (`F` pure), as an exact rational.
pub fn g1_over_ge_exact(l: u32, f: AngularMomentum, j: AngularMomentum) -> Result<Rational64> {
    let d = basis_offset(l, f, j)?;
    let l = i64::from(l);
    Ok(match (l % 2, f.twice(), d) {
        (0, _, 1) => q(1, 2 * l + 1),
        (0, _, _) => q(-1, 2 * l + 1),
        (_, 1, 1) => q(-1, 3 * (2 * l + 1)),
        (_, 1, _) => q(1, 3 * (2 * l + 1)),
        (_, _, 3) => q(1, 2 * l + 3),
        (_, _, 1) => q(2 * l + 9, 3 * (2 * l + 1) * (2 * l + 3)),
        (_, _, -1) => q(-(2 * l - 7), 3 * (2 * l - 1) * (2 * l + 1)),
        _ => q(-1, 2 * l - 1),
    })
}

/// `(m_p/m_e)·g2/g_p` for a basis state, as an exact rational.
pub fn g2_scaled_exact(l: u32, f: AngularMomentum, j: AngularMomentum) -> Result<Rational64> {
    let d = basis_offset(l, f, j)?;
    if l.is_multiple_of(2) {
        return Ok(q(0, 1));
    }
    let l = i64::from(l);
    Ok(match (f.twice(), d) {
        (1, 1) => q(-4, 3 * (2 * l + 1)),
        (1, _) => q(4, 3 * (2 * l + 1)),
        (_, 3) => q(-2, 2 * l + 3),
        (_, 1) => q(-2 * (2 * l + 9), 3 * (2 * l + 1) * (2 * l + 3)),
        (_, -1) => q(2 * (2 * l - 7), 3 * (2 * l - 1) * (2 * l + 1)),
        _ => q(2, 2 * l - 1),
    })
}

fn to_f64(r: &Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn g1_pure(l: u32, f: AngularMomentum, j: AngularMomentum, c: &PhysicalConstants) -> Result<f64> {
    Ok(c.g_e * to_f64(&g1_over_ge_exact(l, f, j)?))
}

/// Nuclear-spin g-factor of a basis state; zero for even `L`.
pub fn g2_pure(l: u32, f: AngularMomentum, j: AngularMomentum, c: &PhysicalConstants) -> Result<f64> {
    Ok(c.g_p * c.mass_ratio * to_f64(&g2_scaled_exact(l, f, j)?))
}

fn big_q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Geometric factor multiplying `⟨vL‖L_tot‖vL⟩` in `g3`, exact.
pub fn g3_geometric_exact(l: u32, f: AngularMomentum, j: AngularMomentum) -> Result<SignedSqrt> {
    let d = basis_offset(l, f, j)?;
    let l = i64::from(l);
    let inv_sqrt_ll1 = || SignedSqrt::sqrt_of(big_q(1, l * (l + 1)));
    Ok(match (f.twice(), d) {
        (1, 1) => SignedSqrt::sqrt_of(big_q(4 * l, (l + 1) * (2 * l + 1) * (2 * l + 1))),
        (1, _) => SignedSqrt::sqrt_of(big_q(4 * (l + 1), l * (2 * l + 1) * (2 * l + 1))),
        (_, 3) => SignedSqrt::sqrt_of(big_q(4 * l, (l + 1) * (2 * l + 3) * (2 * l + 3))),
        (_, 1) => SignedSqrt::rational(big_q(2 * (2 * l * l + 3 * l - 3), (2 * l + 1) * (2 * l + 3))) * inv_sqrt_ll1(),
        (_, -1) => SignedSqrt::rational(big_q(2 * (2 * l * l + l - 4), (2 * l - 1) * (2 * l + 1))) * inv_sqrt_ll1(),
        _ => SignedSqrt::sqrt_of(big_q(4 * (l + 1), l * (2 * l - 1) * (2 * l - 1))),
    })
}

pub fn g3_geometric(l: u32, f: AngularMomentum, j: AngularMomentum) -> Result<f64> {
    Ok(g3_geometric_exact(l, f, j)?.to_f64())
}

/// Closed form of the `F = 1/2 ↔ F = 3/2` reduced element of a spin
/// operator in the coupled basis `|L, (S_e I)F, J⟩`; the same for both
/// `J = L ± 1/2`.
pub fn crossed_reduced_exact(l: u32, op: SpinOperator) -> Result<SignedSqrt> {
    if l.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "F = 1/2 and F = 3/2 coexist only for odd L (got L={l})"
        )));
    }
    let l = i64::from(l);
    // (√8/3)·√(L(L+1)/(2L+1))
    let value = SignedSqrt::sqrt_of(big_q(8 * l * (l + 1), 9 * (2 * l + 1)));
    Ok(match op {
        SpinOperator::Electron => value,
        SpinOperator::Nuclear => -value,
    })
}

pub fn crossed_reduced(l: u32, op: SpinOperator) -> Result<f64> {
    Ok(crossed_reduced_exact(l, op)?.to_f64())
}

// ---- recoupling path ----------------------------------------------------

fn six_j(a: [AngularMomentum; 6]) -> SignedSqrt {
    wigner_6j_exact(&SixJArguments::new(a[0], a[1], a[2], a[3], a[4], a[5]))
}

fn signed(value: SignedSqrt, twice_exponent: i64) -> SignedSqrt {
    if phase(twice_exponent) < 0 {
        -value
    } else {
        value
    }
}

fn twice(j: AngularMomentum) -> i64 {
    i64::from(j.twice())
}

/// `⟨j1 j2 J‖T(1)‖j1' j2 J'⟩` for a rank-1 operator acting on the first
/// subsystem of the coupling.
fn reduced_first(
    j1: AngularMomentum,
    j1p: AngularMomentum,
    j2: AngularMomentum,
    jj: AngularMomentum,
    jjp: AngularMomentum,
    reduced: SignedSqrt,
) -> SignedSqrt {
    let dims = SignedSqrt::sqrt_of_int(i64::from(jj.multiplicity() * jjp.multiplicity()));
    let w = six_j([j1, jj, j2, jjp, j1p, AngularMomentum::ONE]);
    signed(dims * w * reduced, twice(j1) + twice(j2) + twice(jjp) + 2)
}

/// `⟨j1 j2 J‖U(2)‖j1 j2' J'⟩` for a rank-1 operator acting on the second
/// subsystem of the coupling.
fn reduced_second(
    j1: AngularMomentum,
    j2: AngularMomentum,
    j2p: AngularMomentum,
    jj: AngularMomentum,
    jjp: AngularMomentum,
    reduced: SignedSqrt,
) -> SignedSqrt {
    let dims = SignedSqrt::sqrt_of_int(i64::from(jj.multiplicity() * jjp.multiplicity()));
    let w = six_j([j2, jj, j1, jjp, j2p, AngularMomentum::ONE]);
    signed(dims * w * reduced, twice(j1) + twice(j2p) + twice(jj) + 2)
}

fn nuclear_spin_of(l: u32) -> AngularMomentum {
    RovibLevel::new(0, l).nuclear_spin()
}

/// `⟨L,(S_e I)F,J‖op‖L,(S_e I)F',J⟩` by recoupling; `I = 0` for even `L`.
pub fn spin_element_via_wigner_exact(
    l: u32,
    f: AngularMomentum,
    fp: AngularMomentum,
    j: AngularMomentum,
    op: SpinOperator,
) -> SignedSqrt {
    let s = AngularMomentum::HALF;
    let i = nuclear_spin_of(l);
    let la = AngularMomentum::integer(l);
    let inner = match op {
        SpinOperator::Electron => reduced_first(s, s, i, f, fp, spin_reduced_element_exact(s)),
        SpinOperator::Nuclear => reduced_second(s, i, i, f, fp, spin_reduced_element_exact(i)),
    };
    reduced_second(la, f, fp, j, j, inner)
}

/// `1/√(J(J+1)(2J+1))`, turning a diagonal reduced element into a g-factor.
fn projection_norm(j: AngularMomentum) -> SignedSqrt {
    let t = twice(j);
    SignedSqrt::sqrt_of(big_q(4, t * (t + 2) * (t + 1)))
}

/// `g1/g_e` through 6j recoupling, exact.
pub fn g1_over_ge_via_wigner_exact(l: u32, f: AngularMomentum, j: AngularMomentum) -> Result<SignedSqrt> {
    basis_offset(l, f, j)?;
    Ok(spin_element_via_wigner_exact(l, f, f, j, SpinOperator::Electron) * projection_norm(j))
}

/// `(m_p/m_e)·g2/g_p` through 6j recoupling, exact.
pub fn g2_scaled_via_wigner_exact(l: u32, f: AngularMomentum, j: AngularMomentum) -> Result<SignedSqrt> {
    basis_offset(l, f, j)?;
    Ok(-(spin_element_via_wigner_exact(l, f, f, j, SpinOperator::Nuclear) * projection_norm(j)))
}

/// Geometric factor of `g3` through 6j recoupling, exact.
pub fn g3_geometric_via_wigner_exact(l: u32, f: AngularMomentum, j: AngularMomentum) -> Result<SignedSqrt> {
    basis_offset(l, f, j)?;
    let la = AngularMomentum::integer(l);
    // tabulated elements carry the Wigner–Eckart factor 1/√(2L+1)
    let scale = SignedSqrt::sqrt_of_int(i64::from(la.multiplicity()));
    Ok(reduced_first(la, la, f, j, j, scale) * projection_norm(j))
}

/// Crossed `F = 1/2 ↔ 3/2` element through 6j recoupling.
pub fn crossed_reduced_via_wigner_exact(l: u32, j: AngularMomentum, op: SpinOperator) -> Result<SignedSqrt> {
    crossed_reduced_exact(l, op)?;
    basis_offset(l, AngularMomentum::HALF, j)?;
    Ok(spin_element_via_wigner_exact(
        l,
        AngularMomentum::HALF,
        AngularMomentum::THREE_HALVES,
        j,
        op,
    ))
}

pub fn g1_via_wigner(l: u32, f: AngularMomentum, j: AngularMomentum, c: &PhysicalConstants) -> Result<f64> {
    Ok(c.g_e * g1_over_ge_via_wigner_exact(l, f, j)?.to_f64())
}

pub fn g2_via_wigner(l: u32, f: AngularMomentum, j: AngularMomentum, c: &PhysicalConstants) -> Result<f64> {
    Ok(c.g_p * c.mass_ratio * g2_scaled_via_wigner_exact(l, f, j)?.to_f64())
}

pub fn g3_geometric_via_wigner(l: u32, f: AngularMomentum, j: AngularMomentum) -> Result<f64> {
    Ok(g3_geometric_via_wigner_exact(l, f, j)?.to_f64())
}

// ---- mixed states -------------------------------------------------------

fn check_mixed_block(l: u32, j: AngularMomentum) -> Result<()> {
    if l % 2 == 1 && (twice(j) - 2 * i64::from(l)).abs() == 1 {
        Ok(())
    } else {
        Err(Error::domain(format!("L={l}, J={j} is not a mixed block")))
    }
}

/// Crossed electron-spin element divided by `√(J(J+1)(2J+1))`.
pub fn mixed_cross_factor(l: u32, j: AngularMomentum) -> Result<f64> {
    check_mixed_block(l, j)?;
    Ok((crossed_reduced_exact(l, SpinOperator::Electron)? * projection_norm(j)).to_f64())
}

/// `g̃1/g_e = C1²·g1(1/2) + C3²·g1(3/2) + 2·C1·C3·x` for a mixed level.
pub fn mixed_g1_over_ge(l: u32, j: AngularMomentum, c: MixingCoefficients) -> Result<f64> {
    check_mixed_block(l, j)?;
    let a = to_f64(&g1_over_ge_exact(l, AngularMomentum::HALF, j)?);
    let b = to_f64(&g1_over_ge_exact(l, AngularMomentum::THREE_HALVES, j)?);
    let x = mixed_cross_factor(l, j)?;
    Ok(c.c1 * c.c1 * a + c.c3 * c.c3 * b + 2.0 * c.c1 * c.c3 * x)
}

/// `(m_p/m_e)·g̃2/g_p` for a mixed level.
pub fn mixed_g2_scaled(l: u32, j: AngularMomentum, c: MixingCoefficients) -> Result<f64> {
    check_mixed_block(l, j)?;
    let a = to_f64(&g2_scaled_exact(l, AngularMomentum::HALF, j)?);
    let b = to_f64(&g2_scaled_exact(l, AngularMomentum::THREE_HALVES, j)?);
    let x = (crossed_reduced_exact(l, SpinOperator::Nuclear)? * projection_norm(j)).to_f64();
    Ok(c.c1 * c.c1 * a + c.c3 * c.c3 * b - 2.0 * c.c1 * c.c3 * x)
}

/// `g̃3`: `L_tot` does not couple different `F`, so there is no cross term.
pub fn mixed_g3(l: u32, j: AngularMomentum, c: MixingCoefficients, l_tot: f64) -> Result<f64> {
    check_mixed_block(l, j)?;
    let a = g3_geometric(l, AngularMomentum::HALF, j)?;
    let b = g3_geometric(l, AngularMomentum::THREE_HALVES, j)?;
    Ok((c.c1 * c.c1 * a + c.c3 * c.c3 * b) * l_tot)
}

// ---- orbital data -------------------------------------------------------

/// Reduced ro-vibrational elements `⟨vL‖L_e‖vL⟩` and `⟨vL‖L_1‖vL⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitalElements {
    pub le_red: f64,
    pub l1_red: f64,
}

impl OrbitalElements {
    pub const ZERO: Self = Self {
        le_red: 0.0,
        l1_red: 0.0,
    };

    /// `⟨L_tot⟩ = ⟨L_e⟩ − 2(m_e/m_p)⟨L_1⟩`.
    pub fn l_tot(&self, c: &PhysicalConstants) -> f64 {
        self.le_red - 2.0 * c.mass_ratio * self.l1_red
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct OrbitalRow {
    #[serde(rename = "L")]
    l: u32,
    v: u32,
    le_red: f64,
    l1_red: f64,
}

/// Bounds on `⟨L_1⟩`, which stays close to `√(L(L+1))/2`.
fn l1_bounds(l: u32) -> (f64, f64) {
    match l {
        1 => (0.70, 0.71),
        2 => (1.22, 1.23),
        3 => (1.73, 1.74),
        4 => (2.23, 2.24),
        _ => {
            let centre = (f64::from(l) * f64::from(l + 1)).sqrt() / 2.0;
            (centre - 0.01, centre + 0.01)
        }
    }
}

/// Orbital matrix elements keyed by `(v, L)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitalData {
    elements: BTreeMap<RovibLevel, OrbitalElements>,
}

impl OrbitalData {
    /// The published elements for `v, L = 0..4`.
    pub fn bundled() -> Self {
        Self::from_csv_str(BUNDLED_ORBITAL, false).expect("bundled orbital data is valid")
    }

    /// Parses a table with header `L,v,le_red,l1_red`.
    pub fn from_csv_str(text: &str, allow_extended: bool) -> Result<Self> {
        Self::from_reader(text.as_bytes(), "orbital data", allow_extended)
    }

    pub fn from_path(path: impl AsRef<Path>, allow_extended: bool) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)?;
        Self::from_reader(file, &path.display().to_string(), allow_extended)
    }

    fn from_reader(reader: impl std::io::Read, origin: &str, allow_extended: bool) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let expected = ["L", "v", "le_red", "l1_red"];
        let headers = rdr.headers().map_err(|e| Error::parse(origin, e))?;
        if headers.iter().ne(expected.iter().copied()) {
            return Err(Error::parse(
                origin,
                format!("expected header `{}`", expected.join(",")),
            ));
        }
        let mut elements = BTreeMap::new();
        for row in rdr.deserialize::<OrbitalRow>() {
            let r = row.map_err(|e| Error::parse(origin, e))?;
            let key = RovibLevel::new(r.v, r.l);
            let e = OrbitalElements {
                le_red: r.le_red,
                l1_red: r.l1_red,
            };
            validate_elements(key, e, allow_extended)?;
            if elements.insert(key, e).is_some() {
                return Err(Error::validation("orbital data", format!("duplicate row for {key}")));
            }
        }
        Ok(Self { elements })
    }

    pub fn to_csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for (k, e) in &self.elements {
            w.serialize(OrbitalRow {
                l: k.l,
                v: k.v,
                le_red: e.le_red,
                l1_red: e.l1_red,
            })
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    /// Elements of `(v, L)`; `L = 0` elements vanish whether listed or not.
    pub fn get(&self, rovib: RovibLevel) -> Result<OrbitalElements> {
        match self.elements.get(&rovib) {
            Some(e) => Ok(*e),
            None if rovib.l == 0 => Ok(OrbitalElements::ZERO),
            None => Err(Error::DataMissing { v: rovib.v, l: rovib.l }),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RovibLevel, &OrbitalElements)> {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn validate_elements(key: RovibLevel, e: OrbitalElements, allow_extended: bool) -> Result<()> {
    if !allow_extended && (key.v > TABULATED_MAX || key.l > TABULATED_MAX) {
        return Err(Error::validation(
            "orbital data",
            format!("{key} is outside the tabulated range v, L ≤ {TABULATED_MAX} (enable extended data to allow it)"),
        ));
    }
    if !e.le_red.is_finite() || !e.l1_red.is_finite() {
        return Err(Error::validation(
            "orbital data",
            format!("non-finite element for {key}"),
        ));
    }
    if key.l == 0 {
        if e.le_red != 0.0 || e.l1_red != 0.0 {
            return Err(Error::validation(
                "orbital data",
                format!("elements for {key} must vanish"),
            ));
        }
        return Ok(());
    }
    let (lo, hi) = l1_bounds(key.l);
    if e.l1_red < lo || e.l1_red > hi {
        return Err(Error::validation(
            "l1_red",
            format!("{} for {key} is outside [{lo}, {hi}]", e.l1_red),
        ));
    }
    if e.le_red.abs() > 1e-2 {
        return Err(Error::validation(
            "le_red",
            format!("{} for {key} is implausibly large", e.le_red),
        ));
    }
    Ok(())
}

/// `⟨vL‖L_tot‖vL⟩`.
pub fn l_tot(rovib: RovibLevel, orbital: &OrbitalData, c: &PhysicalConstants) -> Result<f64> {
    Ok(orbital.get(rovib)?.l_tot(c))
}

/// `g3` of a basis state.
pub fn g3_pure(
    rovib: RovibLevel,
    f: AngularMomentum,
    j: AngularMomentum,
    orbital: &OrbitalData,
    c: &PhysicalConstants,
) -> Result<f64> {
    let geometric = g3_geometric(rovib.l, f, j)?;
    Ok(geometric * l_tot(rovib, orbital, c)?)
}

/// Rotational g-factor `g_rot = −(m_p/m_e)·⟨L_tot⟩/√(L(L+1))`.
pub fn g_rot(rovib: RovibLevel, orbital: &OrbitalData, c: &PhysicalConstants) -> Result<f64> {
    check_rotating(rovib)?;
    let norm = (f64::from(rovib.l) * f64::from(rovib.l + 1)).sqrt();
    Ok(-l_tot(rovib, orbital, c)? / (c.mass_ratio * norm))
}

/// `g_rot` from the elements directly: `(2⟨L_1⟩ − (m_p/m_e)⟨L_e⟩)/√(L(L+1))`.
pub fn g_rot_from_elements(rovib: RovibLevel, orbital: &OrbitalData, c: &PhysicalConstants) -> Result<f64> {
    check_rotating(rovib)?;
    let e = orbital.get(rovib)?;
    let norm = (f64::from(rovib.l) * f64::from(rovib.l + 1)).sqrt();
    Ok((2.0 * e.l1_red - e.le_red * c.inverse_mass_ratio()) / norm)
}

fn check_rotating(rovib: RovibLevel) -> Result<()> {
    if rovib.l == 0 {
        Err(Error::domain("g_rot is undefined for L = 0"))
    } else {
        Ok(())
    }
}

// ---- totals -------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GFactorBreakdown {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub total: f64,
    pub mixed: bool,
}

impl GFactorBreakdown {
    pub fn new(g1: f64, g2: f64, g3: f64, mixed: bool) -> Self {
        Self {
            g1,
            g2,
            g3,
            total: g1 + g2 + g3,
            mixed,
        }
    }

    pub fn g1_over_ge(&self, c: &PhysicalConstants) -> f64 {
        self.g1 / c.g_e
    }

    pub fn g2_scaled(&self, c: &PhysicalConstants) -> f64 {
        self.g2 / (c.g_p * c.mass_ratio)
    }
}

/// Breakdown of a level treated as a pure `F` state, ignoring any mixing.
pub fn g_pure_basis(level: &HyperfineLevel, orbital: &OrbitalData, c: &PhysicalConstants) -> Result<GFactorBreakdown> {
    let (l, f, j) = (level.l(), level.f(), level.j());
    Ok(GFactorBreakdown::new(
        g1_pure(l, f, j, c)?,
        g2_pure(l, f, j, c)?,
        g3_pure(level.rovib(), f, j, orbital, c)?,
        false,
    ))
}

/// Full g-factor of a level, using the mixing table for mixed levels.
pub fn g_total(
    level: &HyperfineLevel,
    c: &PhysicalConstants,
    orbital: &OrbitalData,
    mixing: &MixingTable,
) -> Result<GFactorBreakdown> {
    match level.coupling() {
        SpinCoupling::EvenL | SpinCoupling::OddPure => g_pure_basis(level, orbital, c),
        SpinCoupling::OddMixed { .. } => {
            let coeffs = mixing.coefficients(level)?;
            g_mixed(level, coeffs, orbital, c)
        }
    }
}

/// Breakdown of a mixed level with explicit coefficients.
pub fn g_mixed(
    level: &HyperfineLevel,
    coeffs: MixingCoefficients,
    orbital: &OrbitalData,
    c: &PhysicalConstants,
) -> Result<GFactorBreakdown> {
    let (l, j) = (level.l(), level.j());
    let lt = l_tot(level.rovib(), orbital, c)?;
    Ok(GFactorBreakdown::new(
        c.g_e * mixed_g1_over_ge(l, j, coeffs)?,
        c.g_p * c.mass_ratio * mixed_g2_scaled(l, j, coeffs)?,
        mixed_g3(l, j, coeffs, lt)?,
        true,
    ))
}

/// Constants plus the two data tables needed to evaluate any level.
#[derive(Clone, Debug, PartialEq)]
pub struct GFactorModel {
    pub constants: PhysicalConstants,
    pub orbital: OrbitalData,
    pub mixing: MixingTable,
}

impl Default for GFactorModel {
    fn default() -> Self {
        Self::bundled()
    }
}

impl GFactorModel {
    pub fn bundled() -> Self {
        Self {
            constants: PhysicalConstants::default(),
            orbital: OrbitalData::bundled(),
            mixing: MixingTable::bundled(),
        }
    }

    pub fn g_total(&self, level: &HyperfineLevel) -> Result<GFactorBreakdown> {
        g_total(level, &self.constants, &self.orbital, &self.mixing)
    }

    pub fn g_rot(&self, rovib: RovibLevel) -> Result<f64> {
        g_rot(rovib, &self.orbital, &self.constants)
    }

    pub fn l_tot(&self, rovib: RovibLevel) -> Result<f64> {
        l_tot(rovib, &self.orbital, &self.constants)
    }

    /// `g(a)/g(b)`.
    pub fn g_ratio(&self, a: &HyperfineLevel, b: &HyperfineLevel) -> Result<f64> {
        let ga = self.g_total(a)?.total;
        let gb = self.g_total(b)?.total;
        if gb == 0.0 {
            return Err(Error::domain(format!("g-factor of {b} vanishes")));
        }
        Ok(ga / gb)
    }
}

/// Weighted mean over vibrational levels.
pub fn v_average(values: &[f64], weights: &[f64]) -> Result<f64> {
    if values.is_empty() || values.len() != weights.len() {
        return Err(Error::domain(format!(
            "need equally many values and weights (got {} and {})",
            values.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::validation("weights", "weights must be finite and non-negative"));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::validation("weights", "weights sum to zero"));
    }
    Ok(values.iter().zip(weights).map(|(v, w)| v * w).sum::<f64>() / total)
}
