//! Physical constants entering the Zeeman Hamiltonian.
//!
//! The defaults are CODATA-era values that reproduce the published H₂⁺
//! g-factor tables to the last printed digit: `g_e` is pinned by the `L = 0`
//! row (`g_J = g_e`), `g_p` and `m_e/m_p` by the nuclear-spin columns, and
//! `μ_B/h` by the two-photon line shifts. The electron g-factor is stored
//! with a positive sign; formulas carry their signs explicitly.
//!
//! A constants file is a flat TOML document with any subset of the keys
//! `g_e`, `g_p`, `mass_ratio_me_mp` and `bohr_magneton_hz_per_tesla`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Electron g-factor, positive convention (≈ 2.002).
    pub g_e: f64,
    /// Proton g-factor (≈ 5.586).
    pub g_p: f64,
    /// Electron-to-proton mass ratio `m_e/m_p`.
    #[serde(rename = "mass_ratio_me_mp")]
    pub mass_ratio: f64,
    /// Bohr magneton over Planck's constant, in Hz/T.
    pub bohr_magneton_hz_per_tesla: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        default_constants()
    }
}

pub fn default_constants() -> PhysicalConstants {
    PhysicalConstants {
        g_e: 2.002_319_304_36,
        g_p: 5.585_694_689_3,
        mass_ratio: 5.446_170_218e-4,
        bohr_magneton_hz_per_tesla: 1.399_624_5e10,
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Overrides {
    g_e: Option<f64>,
    g_p: Option<f64>,
    mass_ratio_me_mp: Option<f64>,
    bohr_magneton_hz_per_tesla: Option<f64>,
}

/// Parses a constants document; keys present override the defaults.
pub fn load_constants(document: &str) -> Result<PhysicalConstants> {
    load_constants_named(document, "constants document")
}

fn load_constants_named(document: &str, origin: &str) -> Result<PhysicalConstants> {
    let o: Overrides = toml::from_str(document).map_err(|e| Error::parse(origin, e.message()))?;
    let d = default_constants();
    let c = PhysicalConstants {
        g_e: o.g_e.unwrap_or(d.g_e),
        g_p: o.g_p.unwrap_or(d.g_p),
        mass_ratio: o.mass_ratio_me_mp.unwrap_or(d.mass_ratio),
        bohr_magneton_hz_per_tesla: o.bohr_magneton_hz_per_tesla.unwrap_or(d.bohr_magneton_hz_per_tesla),
    };
    c.validate()?;
    Ok(c)
}

impl PhysicalConstants {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        load_constants_named(&text, &path.display().to_string())
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("constants always serialize")
    }

    pub fn validate(&self) -> Result<()> {
        fn check(field: &str, value: f64, lo: f64, hi: f64) -> Result<()> {
            if value.is_finite() && value > lo && value < hi {
                Ok(())
            } else {
                Err(Error::validation(field, format!("{value} is outside ({lo}, {hi})")))
            }
        }
        check("g_e", self.g_e, 1.9, 2.1)?;
        check("g_p", self.g_p, 5.0, 6.0)?;
        check("mass_ratio_me_mp", self.mass_ratio, 5e-4, 6e-4)?;
        check(
            "bohr_magneton_hz_per_tesla",
            self.bohr_magneton_hz_per_tesla,
            0.0,
            f64::INFINITY,
        )
    }

    /// `m_p/m_e`
    pub fn inverse_mass_ratio(&self) -> f64 {
        1.0 / self.mass_ratio
    }
}
