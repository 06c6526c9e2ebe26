//! Landé g-factors of H₂⁺ hyperfine levels and the Zeeman structure of its
//! two-photon ro-vibrational lines.
//!
//! ```
//! use h2zeeman::{GFactorModel, HyperfineLevel};
//!
//! let model = GFactorModel::bundled();
//! let level = HyperfineLevel::from_twice(0, 2, 1, 5).unwrap();
//! let g = model.g_total(&level).unwrap();
//! assert!((g.total - 0.4000631).abs() < 1e-6);
//! ```

pub mod angular;
pub mod cli;
pub mod constants;
pub mod error;
pub mod gfactor;
pub mod hfs;
pub mod report;
pub mod tables;
pub mod zeeman;

pub use constants::{default_constants, load_constants, PhysicalConstants};
pub use error::{Error, Result};
pub use gfactor::{GFactorBreakdown, GFactorModel, OrbitalData};
pub use hfs::{HyperfineLevel, MixingTable, RovibLevel};
pub use tables::Target;
pub use zeeman::{MagneticField, Polarization, TwoPhotonTransition};
