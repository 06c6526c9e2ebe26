//! Command-line front end; the `h2zeeman` binary is a thin wrapper over [`run`].
//!
//! Exit status: 0 on success, 1 for usage or data errors, 2 when a
//! `reproduce --diff` comparison finds cells outside tolerance.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::angular::AngularMomentum;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::gfactor::{GFactorModel, OrbitalData};
use crate::hfs::{enumerate_levels, HyperfineLevel, MixingTable, RovibLevel};
use crate::report::{Column, ColumnKind, DiffReport, Format, Precision, Table, Value};
use crate::tables::{self, Target};
use crate::zeeman::{components, line_summary, MagneticField, Polarization, TwoPhotonTransition};

pub const DATA_DIR_ENV: &str = "H2ZEEMAN_DATA_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DIFF: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "h2zeeman",
    version,
    about = "g-factors and Zeeman shifts of H2+ hyperfine levels"
)]
struct Cli {
    #[command(flatten)]
    data: DataArgs,

    /// Output format: text, csv or json.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DataArgs {
    /// TOML file overriding physical constants.
    #[arg(long, global = true, value_name = "PATH")]
    constants: Option<PathBuf>,

    /// Orbital matrix elements (CSV: L,v,le_red,l1_red).
    #[arg(long, global = true, value_name = "PATH")]
    orbital: Option<PathBuf>,

    /// Mixing coefficients (CSV: v,L,twice_J,twice_Ftilde,C1,C3).
    #[arg(long, global = true, value_name = "PATH")]
    mixing: Option<PathBuf>,

    /// Accept orbital data beyond v, L = 0..4.
    #[arg(long, global = true)]
    allow_extended: bool,

    /// Directory searched for constants.toml, orbital.csv and mixing.csv.
    #[arg(long, global = true, env = DATA_DIR_ENV, value_name = "DIR")]
    data_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LevelArgs {
    /// Vibrational quantum number.
    #[arg(short = 'v', long = "v")]
    v: u32,
    /// Rotational quantum number.
    #[arg(short = 'L', long = "L")]
    l: u32,
    /// F (pure levels) or dominant F~ (mixed levels); 1/2 for even L.
    #[arg(short = 'F', long = "F", value_parser = parse_am)]
    f: Option<AngularMomentum>,
    /// Total angular momentum J.
    #[arg(short = 'J', long = "J", value_parser = parse_am)]
    j: Option<AngularMomentum>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the physical constants in use.
    Constants,
    /// g-factor breakdown of one level, or of every level of (v, L).
    Gfactor(LevelArgs),
    /// Rotational g-factor of (v, L).
    Grot {
        /// Vibrational quantum number
        #[arg(short = 'v', long = "v")]
        v: u32,
        /// Rotational quantum number (L >= 1)
        #[arg(short = 'L', long = "L")]
        l: u32,
    },
    /// Ratio g(a)/g(b) of two levels given as v,L,F,J (e.g. 4,1,1/2,3/2).
    Ratio {
        /// Numerator level, v,L,F,J
        #[arg(long, value_parser = parse_level_arg)]
        a: LevelArg,
        /// Denominator level, v,L,F,J
        #[arg(long, value_parser = parse_level_arg)]
        b: LevelArg,
    },
    /// Zeeman shifts of the homologous two-photon line v -> v'.
    Zeeman {
        #[command(flatten)]
        level: LevelArgs,
        /// Upper vibrational level.
        #[arg(long, default_value_t = 1)]
        v_upper: u32,
        /// Magnetic field in tesla.
        #[arg(long, default_value_t = crate::zeeman::REFERENCE_FIELD_TESLA)]
        field: f64,
        /// List individual components for this polarization.
        #[arg(long, value_parser = parse_polarization)]
        polarization: Option<Polarization>,
    },
    /// Recompute a published table (1-5); with --diff, compare with the printed values.
    Reproduce {
        /// 1 orbital elements, 2 even L, 3 odd L, 4 ratios, 5 Zeeman shifts
        #[arg(value_parser = parse_target)]
        target: Target,
        /// Compare with the printed values; exits with status 2 on any deviation
        #[arg(long)]
        diff: bool,
    },
    /// Recover mixing coefficients from the printed mixed-state g-factors.
    RecoverMixing,
}

#[derive(Clone, Copy, Debug)]
struct LevelArg(HyperfineLevel);

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_am(s: &str) -> std::result::Result<AngularMomentum, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_polarization(s: &str) -> std::result::Result<Polarization, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_target(s: &str) -> std::result::Result<Target, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_level_arg(s: &str) -> std::result::Result<LevelArg, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [v, l, f, j] = parts[..] else {
        return Err(format!("`{s}` is not of the form v,L,F,J"));
    };
    let v: u32 = v.parse().map_err(|_| format!("bad v in `{s}`"))?;
    let l: u32 = l.parse().map_err(|_| format!("bad L in `{s}`"))?;
    let f = parse_am(f)?;
    let j = parse_am(j)?;
    HyperfineLevel::new(RovibLevel::new(v, l), f, j)
        .map(LevelArg)
        .map_err(|e| e.to_string())
}

impl DataArgs {
    fn in_data_dir(&self, explicit: &Option<PathBuf>, name: &str) -> Option<PathBuf> {
        explicit.clone().or_else(|| {
            let p = self.data_dir.as_deref()?.join(name);
            p.exists().then_some(p)
        })
    }

    fn model(&self) -> Result<GFactorModel> {
        let constants = match self.in_data_dir(&self.constants, "constants.toml") {
            Some(p) => PhysicalConstants::from_path(&p).map_err(|e| with_path(e, &p))?,
            None => PhysicalConstants::default(),
        };
        let orbital = match self.in_data_dir(&self.orbital, "orbital.csv") {
            Some(p) => OrbitalData::from_path(&p, self.allow_extended).map_err(|e| with_path(e, &p))?,
            None => OrbitalData::bundled(),
        };
        let mixing = match self.in_data_dir(&self.mixing, "mixing.csv") {
            Some(p) => MixingTable::from_path(&p).map_err(|e| with_path(e, &p))?,
            None => MixingTable::bundled(),
        };
        Ok(GFactorModel {
            constants,
            orbital,
            mixing,
        })
    }
}

fn with_path(e: Error, p: &Path) -> Error {
    match e {
        Error::Io(io) => Error::parse(p.display().to_string(), io),
        v @ Error::Validation { .. } => Error::parse(p.display().to_string(), v),
        other => other,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let model = cli.data.model()?;
    let format = cli.format;
    match &cli.command {
        Command::Constants => {
            let c = &model.constants;
            let text = match format {
                Format::Text => c.to_toml_string(),
                Format::Json => serde_json::to_string_pretty(c).expect("constants serialize") + "\n",
                Format::Csv => {
                    let mut t = Table::new(
                        "constants",
                        vec![
                            Column::key("name", ColumnKind::Text),
                            Column::value("value", ColumnKind::Real, Precision::Plain),
                        ],
                    );
                    for (k, v) in [
                        ("g_e", c.g_e),
                        ("g_p", c.g_p),
                        ("mass_ratio_me_mp", c.mass_ratio),
                        ("bohr_magneton_hz_per_tesla", c.bohr_magneton_hz_per_tesla),
                    ] {
                        t.push(vec![Value::Text(k.to_owned()), Value::Real(v)]);
                    }
                    t.to_csv()
                }
            };
            write!(out, "{text}")?;
        }
        Command::Gfactor(args) => {
            let levels = select_levels(args)?;
            write!(out, "{}", gfactor_table(&model, &levels)?.render(format))?;
        }
        Command::Grot { v, l } => {
            let r = RovibLevel::new(*v, *l);
            let mut t = Table::new(
                "rotational g-factor",
                vec![
                    Column::key("v", ColumnKind::Integer),
                    Column::key("L", ColumnKind::Integer),
                    Column::value("l_tot", ColumnKind::Real, Precision::Scientific(6)),
                    Column::value("g_rot", ColumnKind::Real, Precision::Fixed(6)),
                ],
            );
            t.push(vec![
                Value::Integer(i64::from(*v)),
                Value::Integer(i64::from(*l)),
                Value::Real(model.l_tot(r)?),
                Value::Real(model.g_rot(r)?),
            ]);
            write!(out, "{}", t.render(format))?;
        }
        Command::Ratio { a, b } => {
            let (a, b) = (a.0, b.0);
            let mut t = Table::new(
                "g-factor ratio",
                vec![
                    Column::key("a", ColumnKind::Text),
                    Column::key("b", ColumnKind::Text),
                    Column::value("g_a", ColumnKind::Real, Precision::Fixed(8)),
                    Column::value("g_b", ColumnKind::Real, Precision::Fixed(8)),
                    Column::value("ratio", ColumnKind::Real, Precision::Fixed(6)),
                ],
            );
            t.push(vec![
                Value::Text(a.to_string()),
                Value::Text(b.to_string()),
                Value::Real(model.g_total(&a)?.total),
                Value::Real(model.g_total(&b)?.total),
                Value::Real(model.g_ratio(&a, &b)?),
            ]);
            write!(out, "{}", t.render(format))?;
        }
        Command::Zeeman {
            level,
            v_upper,
            field,
            polarization,
        } => {
            let field = MagneticField::tesla(*field)?;
            if let Some(w) = field.weak_field_warning() {
                writeln!(err, "warning: {w}")?;
            }
            let levels = select_levels(level)?;
            let table = match polarization {
                Some(p) => {
                    let [lv] = levels[..] else {
                        return Err(Error::domain("--polarization needs a single level (give --F and --J)"));
                    };
                    component_table(&model, TwoPhotonTransition::homologous(lv, *v_upper)?, *p, field)?
                }
                None => zeeman_summary_table(&model, &levels, *v_upper, field)?,
            };
            write!(out, "{}", table.render(format))?;
        }
        Command::Reproduce { target, diff } => {
            if !diff {
                write!(out, "{}", target.compute(&model)?.render(format))?;
                return Ok(EXIT_OK);
            }
            let report = target.diff(&model)?;
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&diff_json(&report)).expect("json")
                )?,
                _ => write!(out, "{}", report.to_text())?,
            }
            return Ok(if report.passed() { EXIT_OK } else { EXIT_DIFF });
        }
        Command::RecoverMixing => {
            let table = tables::recover_published_mixing()?;
            write!(out, "{}", table.to_csv_string())?;
        }
    }
    Ok(EXIT_OK)
}

fn select_levels(args: &LevelArgs) -> Result<Vec<HyperfineLevel>> {
    let rovib = RovibLevel::new(args.v, args.l);
    let all = enumerate_levels(rovib);
    Ok(match (args.f, args.j) {
        (Some(f), Some(j)) => vec![HyperfineLevel::new(rovib, f, j)?],
        (f, j) => {
            let picked: Vec<_> = all
                .into_iter()
                .filter(|h| f.is_none_or(|f| h.f() == f) && j.is_none_or(|j| h.j() == j))
                .collect();
            if picked.is_empty() {
                return Err(Error::domain(format!(
                    "no hyperfine level of {rovib} matches the given F/J"
                )));
            }
            picked
        }
    })
}

fn gfactor_table(model: &GFactorModel, levels: &[HyperfineLevel]) -> Result<Table> {
    use ColumnKind::{Integer, Real, Text};
    let g = Precision::Fixed(9);
    let mut t = Table::new(
        "g-factors",
        vec![
            Column::key("v", Integer),
            Column::key("L", Integer),
            Column::key("F", Text),
            Column::key("J", Text),
            Column::value("state", Text, Precision::Plain),
            Column::value("C1", Real, Precision::Fixed(8)),
            Column::value("C3", Real, Precision::Fixed(8)),
            Column::value("g1_over_ge", Real, g),
            Column::value("g2_scaled", Real, g),
            Column::value("g1", Real, g),
            Column::value("g2", Real, Precision::Scientific(6)),
            Column::value("g3", Real, Precision::Scientific(6)),
            Column::value("g_total", Real, g),
        ],
    );
    let c = &model.constants;
    for level in levels {
        let b = model.g_total(level)?;
        let coeffs = model.mixing.get(level).map(|e| e.coefficients());
        t.push(vec![
            Value::Integer(i64::from(level.v())),
            Value::Integer(i64::from(level.l())),
            Value::Text(level.f().to_string()),
            Value::Text(level.j().to_string()),
            Value::Text(if level.is_mixed() { "mixed" } else { "pure" }.to_owned()),
            Value::optional(coeffs.map(|c| c.c1)),
            Value::optional(coeffs.map(|c| c.c3)),
            Value::Real(b.g1_over_ge(c)),
            Value::Real(b.g2_scaled(c)),
            Value::Real(b.g1),
            Value::Real(b.g2),
            Value::Real(b.g3),
            Value::Real(b.total),
        ]);
    }
    Ok(t)
}

fn zeeman_summary_table(
    model: &GFactorModel,
    levels: &[HyperfineLevel],
    v_upper: u32,
    field: MagneticField,
) -> Result<Table> {
    use ColumnKind::{Real, Text};
    let mut t = Table::new(
        format!("Zeeman shifts at B = {} T", field.as_tesla()),
        vec![
            Column::key("line", Text),
            Column::value("g_lower", Real, Precision::Fixed(8)),
            Column::value("g_upper", Real, Precision::Fixed(8)),
            Column::value("shift_hz", Real, Precision::Fixed(2)),
            Column::value("shift_unc_hz", Real, Precision::Fixed(2)),
            Column::value("splitting_hz", Real, Precision::Fixed(3)),
            Column::value("splitting_unc_hz", Real, Precision::Fixed(3)),
            Column::value("cancellation", Real, Precision::Scientific(3)),
        ],
    );
    for &level in levels {
        let line = TwoPhotonTransition::homologous(level, v_upper)?;
        let s = line_summary(&line, field, model)?;
        t.push(vec![
            Value::Text(line.to_string()),
            Value::Real(s.g_lower),
            Value::Real(s.g_upper),
            s.sigma_shift_hz.map_or(Value::Forbidden, Value::Real),
            Value::optional(s.sigma_shift_unc_hz),
            Value::Real(s.pi_splitting_hz),
            Value::Real(s.pi_splitting_unc_hz),
            Value::Real(s.cancellation_ratio),
        ]);
    }
    t.notes.push(
        "shift: sigma+ line center (sigma- is its negative); * marks J = 1/2 lines with no sigma components".into(),
    );
    Ok(t)
}

fn component_table(
    model: &GFactorModel,
    line: TwoPhotonTransition,
    polarization: Polarization,
    field: MagneticField,
) -> Result<Table> {
    use ColumnKind::{Real, Text};
    let mut t = Table::new(
        format!("{polarization} components of {line}"),
        vec![
            Column::key("M", Text),
            Column::key("M_upper", Text),
            Column::value("shift_hz", Real, Precision::Fixed(3)),
        ],
    );
    for c in components(&line, polarization, field, model)? {
        t.push(vec![
            Value::Text(c.m_lower.to_string()),
            Value::Text(c.m_upper.to_string()),
            Value::Real(c.shift_hz),
        ]);
    }
    if t.rows.is_empty() {
        t.notes
            .push(format!("no {polarization} components: the line is forbidden"));
    }
    Ok(t)
}

fn diff_json(report: &DiffReport) -> serde_json::Value {
    json!({
        "title": report.title,
        "passed": report.passed(),
        "cells": report.cells.iter().map(|c| json!({
            "row": c.row,
            "column": c.column,
            "computed": c.computed.to_plain(),
            "reference": c.reference.to_plain(),
            "deviation": c.deviation,
            "tolerance": c.check.tolerance.to_string(),
            "passed": c.passed,
        })).collect::<Vec<_>>(),
        "unmatched": report.unmatched,
    })
}
