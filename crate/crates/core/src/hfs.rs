//! Hyperfine structure of H₂⁺ ro-vibrational levels.
//!
//! For even `L` the nuclear spin is `I = 0` and `J = L ± 1/2`. For odd `L`,
//! `I = 1`, the total spin `F = S_e + I` takes the values 1/2 and 3/2, and
//! `J = L + F`. The `J = L ± 3/2` levels are pure `F = 3/2` states; the
//! `J = L ± 1/2` levels are mixtures `C1·|F=1/2⟩ + C3·|F=3/2⟩` labelled by
//! their dominant component `F̃`.
//!
//! Mixing coefficients are data: [`MixingTable`] loads and validates them,
//! and [`recover_mixing`] reconstructs them from a tabulated mixed-state
//! electron-spin g-factor.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::angular::AngularMomentum;
use crate::error::{Error, Result};
use crate::gfactor::{g1_over_ge_exact, mixed_cross_factor};

/// Normalization / orthogonality tolerance applied when loading a table.
pub const MIXING_LOAD_TOLERANCE: f64 = 1e-8;
/// Slack allowed when inverting a g-factor quoted to seven digits.
pub const INVERSION_TOLERANCE: f64 = 1e-6;

const BUNDLED_MIXING: &str = include_str!("../data/mixing.csv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RovibLevel {
    pub v: u32,
    pub l: u32,
}

impl RovibLevel {
    pub const fn new(v: u32, l: u32) -> Self {
        Self { v, l }
    }

    pub const fn is_odd(self) -> bool {
        self.l % 2 == 1
    }

    /// Total nuclear spin: 0 for even `L`, 1 for odd `L`.
    pub const fn nuclear_spin(self) -> AngularMomentum {
        if self.is_odd() {
            AngularMomentum::ONE
        } else {
            AngularMomentum::ZERO
        }
    }
}

impl fmt::Display for RovibLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(v={}, L={})", self.v, self.l)
    }
}

/// How the electron and nuclear spins enter a hyperfine level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpinCoupling {
    /// `I = 0`, `J = L ± 1/2`.
    EvenL,
    /// Odd `L`, pure `F = 3/2` state with `J = L ± 3/2`.
    OddPure,
    /// Odd `L`, `J = L ± 1/2`, dominated by the `F̃` component.
    OddMixed { f_tilde: AngularMomentum },
}

/// Sign selecting `J = L + 1/2` or `J = L − 1/2` for a mixed level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HyperfineLevel {
    rovib: RovibLevel,
    coupling: SpinCoupling,
    j: AngularMomentum,
}

impl HyperfineLevel {
    /// Classifies `(v, L, F, J)`. For even `L` the spin label must be `F = 1/2`
    /// (the electron spin alone); for mixed levels `F` is the dominant `F̃`.
    pub fn new(rovib: RovibLevel, f: AngularMomentum, j: AngularMomentum) -> Result<Self> {
        let bad = || {
            Error::domain(format!(
                "no hyperfine level with F={f}, J={j} in {rovib}; valid levels: {}",
                enumerate_levels(rovib)
                    .iter()
                    .map(|h| format!("(F={}, J={})", h.f(), h.j()))
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        };
        let offset = i64::from(j.twice()) - 2 * i64::from(rovib.l);
        let coupling = if !rovib.is_odd() {
            if f != AngularMomentum::HALF || offset.abs() != 1 {
                return Err(bad());
            }
            SpinCoupling::EvenL
        } else {
            match (f.twice(), offset.abs()) {
                (1 | 3, 1) => SpinCoupling::OddMixed { f_tilde: f },
                (3, 3) => SpinCoupling::OddPure,
                _ => return Err(bad()),
            }
        };
        Ok(Self { rovib, coupling, j })
    }

    pub fn from_twice(v: u32, l: u32, twice_f: u32, twice_j: u32) -> Result<Self> {
        Self::new(
            RovibLevel::new(v, l),
            AngularMomentum::from_twice(twice_f),
            AngularMomentum::from_twice(twice_j),
        )
    }

    pub fn rovib(&self) -> RovibLevel {
        self.rovib
    }

    pub fn v(&self) -> u32 {
        self.rovib.v
    }

    pub fn l(&self) -> u32 {
        self.rovib.l
    }

    pub fn j(&self) -> AngularMomentum {
        self.j
    }

    pub fn coupling(&self) -> SpinCoupling {
        self.coupling
    }

    pub fn nuclear_spin(&self) -> AngularMomentum {
        self.rovib.nuclear_spin()
    }

    /// `F` for pure levels, `F̃` for mixed ones, `S_e = 1/2` for even `L`.
    pub fn f(&self) -> AngularMomentum {
        match self.coupling {
            SpinCoupling::EvenL => AngularMomentum::HALF,
            SpinCoupling::OddPure => AngularMomentum::THREE_HALVES,
            SpinCoupling::OddMixed { f_tilde } => f_tilde,
        }
    }

    pub fn is_pure(&self) -> bool {
        !self.is_mixed()
    }

    pub fn is_mixed(&self) -> bool {
        matches!(self.coupling, SpinCoupling::OddMixed { .. })
    }

    pub fn branch(&self) -> Branch {
        if self.j.twice() > 2 * self.rovib.l {
            Branch::Plus
        } else {
            Branch::Minus
        }
    }

    /// Same spin state in another vibrational level.
    pub fn with_v(self, v: u32) -> Self {
        Self {
            rovib: RovibLevel::new(v, self.rovib.l),
            ..self
        }
    }
}

impl fmt::Display for HyperfineLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coupling {
            SpinCoupling::EvenL => write!(f, "(v={}, L={}, J={})", self.v(), self.l(), self.j),
            SpinCoupling::OddPure => {
                write!(f, "(v={}, L={}, F=3/2, J={})", self.v(), self.l(), self.j)
            }
            SpinCoupling::OddMixed { f_tilde } => {
                write!(f, "(v={}, L={}, F~={}, J={})", self.v(), self.l(), f_tilde, self.j)
            }
        }
    }
}

/// All hyperfine levels of `(v, L)`, ordered by increasing `F` then `J`.
pub fn enumerate_levels(rovib: RovibLevel) -> Vec<HyperfineLevel> {
    let tl = 2 * i64::from(rovib.l);
    let candidates: &[(u32, &[i64])] = if rovib.is_odd() {
        &[(1, &[-1, 1]), (3, &[-3, -1, 1, 3])]
    } else {
        &[(1, &[-1, 1])]
    };
    let mut out = Vec::new();
    for &(tf, offsets) in candidates {
        for &d in offsets {
            let tj = tl + d;
            if tj < 1 {
                continue;
            }
            let level =
                HyperfineLevel::from_twice(rovib.v, rovib.l, tf, tj as u32).expect("enumerated combination is valid");
            out.push(level);
        }
    }
    out
}

/// True for even-`L` levels and odd-`L` levels with `J = L ± 3/2`.
pub fn is_pure(level: &HyperfineLevel) -> bool {
    level.is_pure()
}

/// `(C1, C3)`: amplitudes on the `F = 1/2` and `F = 3/2` basis states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingCoefficients {
    pub c1: f64,
    pub c3: f64,
}

impl MixingCoefficients {
    pub const UNMIXED_HALF: Self = Self { c1: 1.0, c3: 0.0 };
    pub const UNMIXED_THREE_HALVES: Self = Self { c1: 0.0, c3: 1.0 };

    pub fn norm_squared(&self) -> f64 {
        self.c1 * self.c1 + self.c3 * self.c3
    }

    /// The orthogonal state, with the global phase fixed by `C1 ≥ 0`.
    pub fn complement(&self) -> Self {
        let (c1, c3) = (-self.c3, self.c1);
        if c1 < 0.0 {
            Self { c1: -c1, c3: -c3 }
        } else {
            Self { c1, c3 }
        }
    }
}

/// Both eigenstates of one `(L, J = L ± 1/2)` block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixedPair {
    /// The `F̃ = 1/2` state (`|C1| ≥ |C3|`).
    pub f_half: MixingCoefficients,
    /// The `F̃ = 3/2` state.
    pub f_three_halves: MixingCoefficients,
}

impl MixedPair {
    pub fn entries(&self, v: u32, l: u32, j: AngularMomentum) -> [MixingEntry; 2] {
        let entry = |f_tilde, c: MixingCoefficients| MixingEntry {
            v,
            l,
            j,
            f_tilde,
            c1: c.c1,
            c3: c.c3,
        };
        [
            entry(AngularMomentum::HALF, self.f_half),
            entry(AngularMomentum::THREE_HALVES, self.f_three_halves),
        ]
    }
}

/// Reconstructs the mixing of an odd-`L`, `J = L ± 1/2` block from the
/// electron-spin g-factor ratio `g̃₁/g_e` of its `F̃ = 1/2` state.
///
/// With `C1 = cos θ`, `C3 = sin θ` the forward relation
/// `g̃₁/g_e = C1²·a + C3²·b + 2·C1·C3·x` becomes
/// `(a+b)/2 + R·cos(2θ − φ)`, which has two roots in θ modulo π. The one
/// with `|C1| ≥ |C3|` is the `F̃ = 1/2` state (the more weakly mixed one if
/// both qualify); the `F̃ = 3/2` state is its orthogonal complement.
pub fn recover_mixing(g1_tilde_over_ge: f64, l: u32, j: AngularMomentum) -> Result<MixedPair> {
    recover_mixing_for(g1_tilde_over_ge, l, j, AngularMomentum::HALF)
}

/// Like [`recover_mixing`], with the input taken from the `F̃` state given.
pub fn recover_mixing_for(
    g1_tilde_over_ge: f64,
    l: u32,
    j: AngularMomentum,
    f_tilde: AngularMomentum,
) -> Result<MixedPair> {
    if l.is_multiple_of(2) || (i64::from(j.twice()) - 2 * i64::from(l)).abs() != 1 {
        return Err(Error::domain(format!(
            "mixing exists only for odd L and J = L ± 1/2 (got L={l}, J={j})"
        )));
    }
    let a = rational_to_f64(&g1_over_ge_exact(l, AngularMomentum::HALF, j)?);
    let b = rational_to_f64(&g1_over_ge_exact(l, AngularMomentum::THREE_HALVES, j)?);
    let x = mixed_cross_factor(l, j)?;

    // the trace a + b is shared by the two eigenstates
    let target = match f_tilde.twice() {
        1 => g1_tilde_over_ge,
        3 => a + b - g1_tilde_over_ge,
        _ => return Err(Error::domain(format!("F~ must be 1/2 or 3/2, got {f_tilde}"))),
    };

    let mid = 0.5 * (a + b);
    let half_diff = 0.5 * (a - b);
    let radius = half_diff.hypot(x);
    let phi = x.atan2(half_diff);
    let offset = target - mid;
    if offset.abs() > radius + INVERSION_TOLERANCE {
        return Err(Error::Inversion(format!(
            "g1~/g_e = {g1_tilde_over_ge} lies outside [{}, {}] for L={l}, J={j}",
            mid - radius,
            mid + radius
        )));
    }
    let beta = (offset / radius).clamp(-1.0, 1.0).acos();

    let best = [phi + beta, phi - beta]
        .into_iter()
        .map(|two_theta| {
            let theta = 0.5 * two_theta;
            let (c1, c3) = (theta.cos(), theta.sin());
            if c1 < 0.0 {
                MixingCoefficients { c1: -c1, c3: -c3 }
            } else {
                MixingCoefficients { c1, c3 }
            }
        })
        .filter(|c| c.c1.abs() >= c.c3.abs())
        .max_by(|p, q| p.c1.abs().total_cmp(&q.c1.abs()))
        .ok_or_else(|| {
            Error::Inversion(format!(
                "no F=1/2-dominated solution for g1~/g_e = {g1_tilde_over_ge}, L={l}, J={j}"
            ))
        })?;

    Ok(MixedPair {
        f_half: best,
        f_three_halves: best.complement(),
    })
}

fn rational_to_f64(r: &num_rational::Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// One row of a mixing table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingEntry {
    pub v: u32,
    pub l: u32,
    pub j: AngularMomentum,
    pub f_tilde: AngularMomentum,
    pub c1: f64,
    pub c3: f64,
}

impl MixingEntry {
    pub fn branch(&self) -> Branch {
        if self.j.twice() > 2 * self.l {
            Branch::Plus
        } else {
            Branch::Minus
        }
    }

    pub fn coefficients(&self) -> MixingCoefficients {
        MixingCoefficients {
            c1: self.c1,
            c3: self.c3,
        }
    }

    fn key(&self) -> MixingKey {
        (self.v, self.l, self.j.twice(), self.f_tilde.twice())
    }
}

type MixingKey = (u32, u32, u32, u32);

#[derive(Debug, Serialize, Deserialize)]
struct MixingRow {
    v: u32,
    #[serde(rename = "L")]
    l: u32,
    #[serde(rename = "twice_J")]
    twice_j: u32,
    #[serde(rename = "twice_Ftilde")]
    twice_f_tilde: u32,
    #[serde(rename = "C1")]
    c1: f64,
    #[serde(rename = "C3")]
    c3: f64,
}

/// Validated mixing coefficients keyed by `(v, L, J, F̃)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MixingTable {
    entries: BTreeMap<MixingKey, MixingEntry>,
}

impl MixingTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The table recovered from the published mixed-state g-factors.
    pub fn bundled() -> Self {
        Self::from_csv_str(BUNDLED_MIXING).expect("bundled mixing table is valid")
    }

    pub fn from_entries(entries: impl IntoIterator<Item = MixingEntry>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for e in entries {
            validate_entry(&e)?;
            if map.insert(e.key(), e).is_some() {
                return Err(Error::validation(
                    "mixing table",
                    format!("duplicate row for v={}, L={}, J={}, F~={}", e.v, e.l, e.j, e.f_tilde),
                ));
            }
        }
        for (&(v, l, tj, tf), e) in &map {
            if tf != 1 {
                continue;
            }
            if let Some(partner) = map.get(&(v, l, tj, 3)) {
                let dot = e.c1 * partner.c1 + e.c3 * partner.c3;
                if dot.abs() > MIXING_LOAD_TOLERANCE {
                    return Err(Error::validation(
                        "mixing table",
                        format!("F~=1/2 and F~=3/2 rows for v={v}, L={l}, J={} overlap by {dot:e}", e.j),
                    ));
                }
            }
        }
        Ok(Self { entries: map })
    }

    /// Parses a delimited table with header `v,L,twice_J,twice_Ftilde,C1,C3`.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        Self::from_reader(text.as_bytes(), "mixing table")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)?;
        Self::from_reader(file, &path.display().to_string())
    }

    fn from_reader(reader: impl std::io::Read, origin: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let expected = ["v", "L", "twice_J", "twice_Ftilde", "C1", "C3"];
        let headers = rdr.headers().map_err(|e| Error::parse(origin, e))?;
        if headers.iter().ne(expected.iter().copied()) {
            return Err(Error::parse(
                origin,
                format!("expected header `{}`", expected.join(",")),
            ));
        }
        let mut entries = Vec::new();
        for row in rdr.deserialize::<MixingRow>() {
            let r = row.map_err(|e| Error::parse(origin, e))?;
            entries.push(MixingEntry {
                v: r.v,
                l: r.l,
                j: AngularMomentum::from_twice(r.twice_j),
                f_tilde: AngularMomentum::from_twice(r.twice_f_tilde),
                c1: r.c1,
                c3: r.c3,
            });
        }
        Self::from_entries(entries)
    }

    pub fn to_csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for e in self.entries.values() {
            w.serialize(MixingRow {
                v: e.v,
                l: e.l,
                twice_j: e.j.twice(),
                twice_f_tilde: e.f_tilde.twice(),
                c1: e.c1,
                c3: e.c3,
            })
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &MixingEntry> {
        self.entries.values()
    }

    pub fn get(&self, level: &HyperfineLevel) -> Option<&MixingEntry> {
        match level.coupling() {
            SpinCoupling::OddMixed { f_tilde } => {
                self.entries
                    .get(&(level.v(), level.l(), level.j().twice(), f_tilde.twice()))
            }
            _ => None,
        }
    }

    /// Coefficients of a mixed level; an error if the table lacks the row.
    pub fn coefficients(&self, level: &HyperfineLevel) -> Result<MixingCoefficients> {
        self.get(level)
            .map(MixingEntry::coefficients)
            .ok_or_else(|| Error::MissingMixing(level.to_string()))
    }
}

fn validate_entry(e: &MixingEntry) -> Result<()> {
    let offset = i64::from(e.j.twice()) - 2 * i64::from(e.l);
    if e.l.is_multiple_of(2) || offset.abs() != 1 {
        return Err(Error::validation(
            "mixing table",
            format!(
                "row v={}, L={}, J={} is not a mixed block (need odd L, J = L ± 1/2)",
                e.v, e.l, e.j
            ),
        ));
    }
    if !matches!(e.f_tilde.twice(), 1 | 3) {
        return Err(Error::validation(
            "twice_Ftilde",
            format!("F~ = {} is not 1/2 or 3/2", e.f_tilde),
        ));
    }
    let n = e.c1 * e.c1 + e.c3 * e.c3;
    if !n.is_finite() || (n - 1.0).abs() > MIXING_LOAD_TOLERANCE {
        return Err(Error::validation(
            "C1,C3",
            format!("C1² + C3² = {n} for v={}, L={}, J={}, F~={}", e.v, e.l, e.j, e.f_tilde),
        ));
    }
    Ok(())
}
