//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report reads top to bottom.
//! The process exits nonzero when any criterion fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use h2zeeman::angular::{is_triangle, wigner_6j_twice, AngularMomentum};
use h2zeeman::gfactor::{g1_over_ge_exact, g1_over_ge_via_wigner_exact, g2_scaled_exact, g2_scaled_via_wigner_exact};
use h2zeeman::hfs::enumerate_levels;
use h2zeeman::report::{DiffReport, Value};
use h2zeeman::tables::zeeman_levels;
use h2zeeman::zeeman::{components, line_summary, MagneticField, Polarization, TwoPhotonTransition};
use h2zeeman::{GFactorModel, RovibLevel, Target};

struct Outcome {
    passed: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            passed: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: impl Into<String>) {
        let line = line.into();
        self.details.push(if ok {
            format!("ok    {line}")
        } else {
            format!("FAIL  {line}")
        });
        self.passed &= ok;
    }

    fn note(&mut self, line: impl Into<String>) {
        self.details.push(format!("      {}", line.into()));
    }
}

/// Folds the cells of `report` that belong to `columns` into `out`.
fn absorb(out: &mut Outcome, report: &DiffReport, columns: &[&str]) {
    let mut compared = 0;
    for c in report.cells.iter().filter(|c| columns.contains(&c.column)) {
        compared += 1;
        if !c.passed {
            out.check(
                false,
                format!(
                    "{} {}: computed {} printed {} ({})",
                    c.row,
                    c.column,
                    c.computed.to_plain(),
                    c.reference.to_plain(),
                    c.check.tolerance
                ),
            );
        }
    }
    for r in &report.unmatched {
        out.check(false, format!("printed row {r} has no computed counterpart"));
    }
    for col in columns {
        if let Some(d) = report.max_deviation(col) {
            out.note(format!("{col}: max deviation {d:.3e}"));
        }
    }
    out.note(format!("{compared} cells compared"));
}

fn even_table(model: &GFactorModel) -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let report = Target::EvenL.diff(model).expect("even-L table");
    let elapsed = start.elapsed();
    let rows = Target::EvenL.printed().rows.len();
    out.check(rows == 21, format!("{rows} printed rows"));
    absorb(&mut out, &report, &["g_total"]);
    out.check(
        elapsed < Duration::from_secs(1),
        format!("computed and compared in {elapsed:.2?}"),
    );
    out
}

fn orbital_table(model: &GFactorModel) -> Outcome {
    let mut out = Outcome::new();
    let report = Target::Orbital.diff(model).expect("orbital table");
    absorb(&mut out, &report, &["l_tot", "g_rot"]);
    let g = model.g_rot(RovibLevel::new(0, 1)).expect("g_rot");
    out.check((g - 0.9201).abs() <= 2e-4, format!("g_rot(v=0, L=1) = {g:.5}"));
    out
}

fn odd_pure(model: &GFactorModel) -> Outcome {
    let mut out = Outcome::new();
    let report = Target::OddL.diff(model).expect("odd-L table");
    absorb(&mut out, &report, &["g1_over_ge", "g2_scaled", "g3", "g_pure"]);
    let exact = report
        .cells
        .iter()
        .filter(|c| matches!(c.column, "g1_over_ge" | "g2_scaled"))
        .all(|c| matches!((&c.computed, &c.reference), (Value::Rational(a), Value::Rational(b)) if a == b));
    out.check(exact, "rational columns equal as rationals");
    out
}

fn odd_mixed(model: &GFactorModel) -> Outcome {
    let mut out = Outcome::new();
    let report = Target::OddL.diff(model).expect("odd-L table");
    absorb(&mut out, &report, &["g1t_over_ge", "g2t_scaled", "g3t", "g_final"]);
    let level = h2zeeman::HyperfineLevel::from_twice(0, 1, 1, 1).unwrap();
    let g = model.g_total(&level).unwrap().total;
    out.check((g - 0.126_538_1).abs() <= 2e-6, format!("g(0,1,1/2,1/2) = {g:+.7}"));
    out
}

fn zeeman_table(model: &GFactorModel) -> Outcome {
    let mut out = Outcome::new();
    let report = Target::Zeeman.diff(model).expect("Zeeman table");
    absorb(&mut out, &report, &["shift_hz", "splitting_hz"]);
    let printed = Target::Zeeman.printed();
    let computed = Target::Zeeman.compute(model).expect("Zeeman table");
    let forbidden = |t: &h2zeeman::report::Table| {
        let i = t.column_index("shift_hz").unwrap();
        t.rows.iter().filter(|r| r[i] == Value::Forbidden).count()
    };
    // 14 lines in all, of which the starred three carry no sigma shift
    let allowed = computed.rows.len() - forbidden(&computed);
    out.check(
        computed.rows.len() == 14 && allowed == 11,
        format!("{} lines, {allowed} with an allowed sigma shift", computed.rows.len()),
    );
    out.check(
        forbidden(&computed) == 3 && forbidden(&printed) == 3,
        format!("{} lines flagged forbidden", forbidden(&computed)),
    );
    out
}

fn ratios(model: &GFactorModel) -> Outcome {
    let mut out = Outcome::new();
    let report = Target::Ratios.diff(model).expect("ratio table");
    absorb(&mut out, &report, &["calculated"]);
    out
}

fn properties(model: &GFactorModel) -> Outcome {
    let mut out = Outcome::new();
    let j = AngularMomentum::from_twice;

    // 6j orthogonality in the last argument, all twice-j up to 8
    let mut cache: HashMap<[u32; 6], f64> = HashMap::new();
    let mut sixj = |t: [u32; 6]| *cache.entry(t).or_insert_with(|| wigner_6j_twice(t));
    let mut worst: f64 = 0.0;
    for j1 in 0..=8u32 {
        for j2 in 0..=8 {
            for j4 in 0..=8 {
                for j5 in 0..=8 {
                    let j6s: Vec<u32> = (0..=8)
                        .filter(|&x| is_triangle(j(j1), j(j5), j(x)) && is_triangle(j(j4), j(j2), j(x)))
                        .collect();
                    let j3s: Vec<u32> = (0..=16)
                        .filter(|&x| is_triangle(j(j1), j(j2), j(x)) && is_triangle(j(j4), j(j5), j(x)))
                        .collect();
                    for &a in &j6s {
                        for &b in &j6s {
                            let s: f64 = j3s
                                .iter()
                                .map(|&j3| {
                                    f64::from((j3 + 1) * (a + 1))
                                        * sixj([j1, j2, j3, j4, j5, a])
                                        * sixj([j1, j2, j3, j4, j5, b])
                                })
                                .sum();
                            worst = worst.max((s - f64::from(u8::from(a == b))).abs());
                        }
                    }
                }
            }
        }
    }
    out.check(worst <= 1e-12, format!("6j orthogonality, worst residual {worst:.1e}"));

    // the 24 classical symmetries hold bit for bit
    let mut broken = 0;
    let mut images = 0;
    for t in (0..6u32.pow(6)).map(|n| std::array::from_fn::<u32, 6, _>(|k| n / 6u32.pow(k as u32) % 6)) {
        let v = wigner_6j_twice(t);
        if v == 0.0 {
            continue;
        }
        let cols = [(t[0], t[3]), (t[1], t[4]), (t[2], t[5])];
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            for flip in [
                [false; 3],
                [true, true, false],
                [true, false, true],
                [false, true, true],
            ] {
                let c: Vec<(u32, u32)> = (0..3)
                    .map(|k| {
                        if flip[k] {
                            (cols[p[k]].1, cols[p[k]].0)
                        } else {
                            cols[p[k]]
                        }
                    })
                    .collect();
                let img = [c[0].0, c[1].0, c[2].0, c[0].1, c[1].1, c[2].1];
                images += 1;
                broken += usize::from(wigner_6j_twice(img).to_bits() != v.to_bits());
            }
        }
    }
    out.check(
        broken == 0,
        format!("6j symmetry group, {images} images, {broken} mismatches"),
    );

    // closed forms against the recoupling path
    let mut states = 0;
    let mut mismatched = Vec::new();
    for l in 0..=10 {
        for level in enumerate_levels(RovibLevel::new(0, l)) {
            let (f, jj) = (level.f(), level.j());
            let pairs = [
                (g1_over_ge_exact(l, f, jj), g1_over_ge_via_wigner_exact(l, f, jj)),
                (g2_scaled_exact(l, f, jj), g2_scaled_via_wigner_exact(l, f, jj)),
            ];
            for (closed, wigner) in pairs {
                let (closed, wigner) = (closed.unwrap(), wigner.unwrap());
                let as_f64 = *closed.numer() as f64 / *closed.denom() as f64;
                let exact = wigner.to_rational().is_some_and(|w| {
                    w == num_rational::BigRational::new((*closed.numer()).into(), (*closed.denom()).into())
                });
                if !exact || (as_f64 - wigner.to_f64()).abs() > 1e-12 {
                    mismatched.push(level.to_string());
                }
            }
            states += 1;
        }
    }
    out.check(
        mismatched.is_empty(),
        format!("closed-form g1, g2 equal the recoupling path on {states} states with L <= 10 {mismatched:?}"),
    );

    // every shift scales linearly with the field
    let (b1, b3) = (MagneticField::reference(), MagneticField::tesla(3.0 * 5e-5).unwrap());
    // homologous components are differences of nearly equal sublevel shifts,
    // so rounding is judged against the Larmor frequency itself
    let scale = b3.larmor_hz(&model.constants);
    let mut nonlinear = 0;
    let mut comps = 0;
    for level in zeeman_levels() {
        let line = TwoPhotonTransition::homologous(level, 1).unwrap();
        for pol in [Polarization::SigmaPlus, Polarization::SigmaMinus, Polarization::Pi] {
            let a = components(&line, pol, b1, model).unwrap();
            let b = components(&line, pol, b3, model).unwrap();
            for (x, y) in a.iter().zip(&b) {
                comps += 1;
                if (y.shift_hz - 3.0 * x.shift_hz).abs() > 1e-12 * scale {
                    nonlinear += 1;
                }
            }
        }
    }
    out.check(
        nonlinear == 0,
        format!("linearity in B over {comps} components, to 1e-12 of the Larmor frequency"),
    );

    // homologous lines nearly cancel
    for level in zeeman_levels() {
        let line = TwoPhotonTransition::homologous(level, 1).unwrap();
        let s = line_summary(&line, b1, model).unwrap();
        out.check(
            s.cancellation_ratio < 0.01,
            format!("|g'-g|/|g'+g| = {:.4} for {level}", s.cancellation_ratio),
        );
    }
    out
}

fn main() -> ExitCode {
    let model = GFactorModel::bundled();
    type Criterion = (&'static str, fn(&GFactorModel) -> Outcome);
    let criteria: [Criterion; 7] = [
        ("even-L g-factors, 21 values within 1e-7, under 1 s", even_table),
        (
            "orbital table derived columns (l_tot within 1e-7, g_rot within 2e-4 relative)",
            orbital_table,
        ),
        (
            "odd-L pure columns (exact rationals, g3 and totals within 1e-7)",
            odd_pure,
        ),
        ("odd-L mixed columns within 2e-6 after recovering the mixing", odd_mixed),
        (
            "Zeeman table (shifts within 2 Hz, splittings within 0.3 Hz, 3 forbidden)",
            zeeman_table,
        ),
        ("g-factor ratios at v = 4 within 1%", ratios),
        ("property suite", properties),
    ];
    let mut failed = 0;
    for (n, (title, run)) in criteria.iter().enumerate() {
        let outcome = run(&model);
        println!(
            "criterion {}: {} ... {}",
            n + 1,
            title,
            if outcome.passed { "PASS" } else { "FAIL" }
        );
        for d in &outcome.details {
            println!("    {d}");
        }
        failed += usize::from(!outcome.passed);
    }
    println!(
        "criterion 8: vibrationally averaged g_rot, averaged ratios beyond v = 4, O(alpha^3) corrections \
         ... NOT TESTED (needs matrix elements and populations that are not available)"
    );
    println!(
        "\nacceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
