//! Weak-field Zeeman structure of two-photon ro-vibrational lines.
//!
//! A sublevel `M` of a level with g-factor `g` moves by `g·M·μ_B·B/h`. In a
//! two-photon transition `(v, M) → (v', M')` the laser frequency moves by
//! half the transition shift, `Δν = (M'g' − Mg)·μ_B·B/(2h)`. Two σ⁺ photons
//! give `M' = M + 2`, two σ⁻ photons `M' = M − 2`, and π light `M' = M`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::angular::{AngularMomentum, Projection};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::gfactor::GFactorModel;
use crate::hfs::HyperfineLevel;

/// Above this field the linear Zeeman regime is no longer guaranteed.
pub const WEAK_FIELD_LIMIT_TESLA: f64 = 1e-2;

/// Field used for the published line shifts (0.5 G).
pub const REFERENCE_FIELD_TESLA: f64 = 5e-5;

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct MagneticField(f64);

impl MagneticField {
    pub fn tesla(b: f64) -> Result<Self> {
        if !b.is_finite() || b < 0.0 {
            return Err(Error::validation(
                "field",
                format!("{b} T is not a finite non-negative field"),
            ));
        }
        Ok(Self(b))
    }

    pub fn gauss(b: f64) -> Result<Self> {
        Self::tesla(b * 1e-4)
    }

    pub fn reference() -> Self {
        Self(REFERENCE_FIELD_TESLA)
    }

    pub fn as_tesla(self) -> f64 {
        self.0
    }

    /// Whether the linear (weak-field) treatment applies.
    pub fn is_weak(self) -> bool {
        self.0 <= WEAK_FIELD_LIMIT_TESLA
    }

    /// Warning text for fields past the weak-field limit.
    pub fn weak_field_warning(self) -> Option<String> {
        (!self.is_weak()).then(|| {
            format!(
                "B = {} T exceeds {WEAK_FIELD_LIMIT_TESLA} T; hyperfine decoupling makes linear Zeeman shifts unreliable",
                self.0
            )
        })
    }

    /// `μ_B·B/h` in Hz.
    pub fn larmor_hz(self, c: &PhysicalConstants) -> f64 {
        c.bohr_magneton_hz_per_tesla * self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Polarization {
    SigmaPlus,
    SigmaMinus,
    Pi,
}

impl Polarization {
    /// `2(M' − M)` for a two-photon absorption.
    fn twice_delta_m(self) -> i32 {
        match self {
            Polarization::SigmaPlus => 4,
            Polarization::SigmaMinus => -4,
            Polarization::Pi => 0,
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::SigmaPlus => "sigma+",
            Polarization::SigmaMinus => "sigma-",
            Polarization::Pi => "pi",
        })
    }
}

impl FromStr for Polarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sigma+" | "s+" | "sigma_plus" | "sigmaplus" => Ok(Polarization::SigmaPlus),
            "sigma-" | "s-" | "sigma_minus" | "sigmaminus" => Ok(Polarization::SigmaMinus),
            "pi" => Ok(Polarization::Pi),
            _ => Err(Error::validation(
                "polarization",
                format!("`{s}` is not sigma+, sigma- or pi"),
            )),
        }
    }
}

/// A two-photon line between two hyperfine levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoPhotonTransition {
    pub lower: HyperfineLevel,
    pub upper: HyperfineLevel,
}

impl TwoPhotonTransition {
    /// A homologous line: same `L`, spin label and `J`, different `v`.
    pub fn new(lower: HyperfineLevel, upper: HyperfineLevel) -> Result<Self> {
        let same_spin = lower.l() == upper.l() && lower.f() == upper.f() && lower.j() == upper.j();
        if !same_spin {
            return Err(Error::domain(format!(
                "{lower} -> {upper} is not homologous (the strong lines keep L, F and J)"
            )));
        }
        if lower.v() == upper.v() {
            return Err(Error::domain(format!("{lower} -> {upper} does not change v")));
        }
        Ok(Self { lower, upper })
    }

    /// Any pair of levels; only angular-momentum selection is enforced
    /// when components are listed.
    pub fn new_permissive(lower: HyperfineLevel, upper: HyperfineLevel) -> Self {
        Self { lower, upper }
    }

    /// The homologous line `level → level` with `v` replaced by `v_upper`.
    pub fn homologous(level: HyperfineLevel, v_upper: u32) -> Result<Self> {
        Self::new(level, level.with_v(v_upper))
    }
}

impl fmt::Display for TwoPhotonTransition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lower, self.upper)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeemanComponent {
    pub m_lower: Projection,
    pub m_upper: Projection,
    /// Laser-frequency shift in Hz.
    pub shift_hz: f64,
}

/// Energy shift `g·M·μ_B·B/h` of one sublevel, in Hz.
pub fn state_shift(g: f64, m: Projection, field: MagneticField, c: &PhysicalConstants) -> f64 {
    g * m.value() * field.larmor_hz(c)
}

fn components_with(
    transition: &TwoPhotonTransition,
    polarization: Polarization,
    g_lower: f64,
    g_upper: f64,
    field: MagneticField,
    c: &PhysicalConstants,
) -> Vec<ZeemanComponent> {
    let (j, jp) = (transition.lower.j(), transition.upper.j());
    let dm = polarization.twice_delta_m();
    j.projections()
        .filter_map(|m| {
            let mp = Projection::from_twice(m.twice() + dm);
            jp.admits(mp).then(|| ZeemanComponent {
                m_lower: m,
                m_upper: mp,
                shift_hz: 0.5 * (state_shift(g_upper, mp, field, c) - state_shift(g_lower, m, field, c)),
            })
        })
        .collect()
}

fn g_pair(transition: &TwoPhotonTransition, model: &GFactorModel) -> Result<(f64, f64)> {
    Ok((
        model.g_total(&transition.lower)?.total,
        model.g_total(&transition.upper)?.total,
    ))
}

/// All Zeeman components of a line for one polarization, ordered by `M`.
pub fn components(
    transition: &TwoPhotonTransition,
    polarization: Polarization,
    field: MagneticField,
    model: &GFactorModel,
) -> Result<Vec<ZeemanComponent>> {
    let (g, gp) = g_pair(transition, model)?;
    Ok(components_with(
        transition,
        polarization,
        g,
        gp,
        field,
        &model.constants,
    ))
}

/// Mean shift of the σ components; for a homologous line this is the
/// `M = −1` component (σ⁺), `(g + g')·μ_B·B/(2h)`.
pub fn sigma_line_center_shift(
    transition: &TwoPhotonTransition,
    polarization: Polarization,
    field: MagneticField,
    model: &GFactorModel,
) -> Result<f64> {
    if polarization == Polarization::Pi {
        return Err(Error::domain("the line-center shift is defined for sigma polarization"));
    }
    let comps = components(transition, polarization, field, model)?;
    if comps.is_empty() {
        return Err(Error::Forbidden(transition.to_string()));
    }
    Ok(comps.iter().map(|c| c.shift_hz).sum::<f64>() / comps.len() as f64)
}

/// Distance between the outermost π components, `(g' − g)·J·μ_B·B/h`.
/// Signed: negative when the upper level has the smaller g-factor.
pub fn pi_splitting(transition: &TwoPhotonTransition, field: MagneticField, model: &GFactorModel) -> Result<f64> {
    let comps = components(transition, Polarization::Pi, field, model)?;
    match (comps.first(), comps.last()) {
        (Some(lo), Some(hi)) => Ok(hi.shift_hz - lo.shift_hz),
        _ => Err(Error::domain(format!("{transition} has no pi components"))),
    }
}

/// The closed forms, for cross-checking the component sums.
pub fn sigma_shift_closed_form(g_lower: f64, g_upper: f64, field: MagneticField, c: &PhysicalConstants) -> f64 {
    0.5 * (g_lower + g_upper) * field.larmor_hz(c)
}

pub fn pi_splitting_closed_form(
    g_lower: f64,
    g_upper: f64,
    j: AngularMomentum,
    field: MagneticField,
    c: &PhysicalConstants,
) -> f64 {
    (g_upper - g_lower) * j.value() * field.larmor_hz(c)
}

/// Relative size of the neglected `O(α²)` corrections.
pub const RELATIVE_THEORY_ACCURACY: f64 = 5e-5;
/// `α²`, used for the shift uncertainty column.
pub const ALPHA_SQUARED: f64 = 1.0 / (137.035_999_084 * 137.035_999_084);
/// Fraction of the `O(α²)` correction assumed to survive in a π splitting.
pub const SPLITTING_CANCELLATION: f64 = 0.01;

/// One line of the Zeeman summary for a homologous transition.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LineSummary {
    pub transition: TwoPhotonTransition,
    pub g_lower: f64,
    pub g_upper: f64,
    /// σ⁺ line-center shift, `None` when circular polarization is forbidden.
    pub sigma_shift_hz: Option<f64>,
    pub sigma_shift_unc_hz: Option<f64>,
    pub pi_splitting_hz: f64,
    pub pi_splitting_unc_hz: f64,
    /// `|g' − g|/|g' + g|`: how strongly the π splitting cancels.
    pub cancellation_ratio: f64,
}

pub fn line_summary(
    transition: &TwoPhotonTransition,
    field: MagneticField,
    model: &GFactorModel,
) -> Result<LineSummary> {
    let c = &model.constants;
    let (g, gp) = g_pair(transition, model)?;
    let sigma = components_with(transition, Polarization::SigmaPlus, g, gp, field, c);
    let sigma_shift_hz =
        (!sigma.is_empty()).then(|| sigma.iter().map(|x| x.shift_hz).sum::<f64>() / sigma.len() as f64);
    let pi = components_with(transition, Polarization::Pi, g, gp, field, c);
    let pi_splitting_hz = match (pi.first(), pi.last()) {
        (Some(lo), Some(hi)) => hi.shift_hz - lo.shift_hz,
        _ => 0.0,
    };
    // a single sublevel's correction is ~α²·g·J·μ_B·B; π lines keep ~1% of it
    let j = transition.lower.j().value();
    let pi_splitting_unc_hz = SPLITTING_CANCELLATION * RELATIVE_THEORY_ACCURACY * g.abs() * j * field.larmor_hz(c);
    Ok(LineSummary {
        transition: *transition,
        g_lower: g,
        g_upper: gp,
        sigma_shift_hz,
        sigma_shift_unc_hz: sigma_shift_hz.map(|s| ALPHA_SQUARED * s.abs()),
        pi_splitting_hz,
        pi_splitting_unc_hz,
        cancellation_ratio: if g + gp == 0.0 {
            f64::INFINITY
        } else {
            ((gp - g) / (gp + g)).abs()
        },
    })
}
