use std::fs;

use assert_cmd::Command;
use h2zeeman::Target;

fn cmd() -> Command {
    let mut c = Command::cargo_bin("h2zeeman").unwrap();
    c.env_remove("H2ZEEMAN_DATA_DIR");
    c
}

fn stdout(c: &mut Command) -> String {
    let out = c.output().unwrap();
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    cmd().arg("--help").assert().success();
    cmd().arg("--version").assert().success();
    cmd().args(["reproduce", "--help"]).assert().success();
}

#[test]
fn argument_errors_exit_one() {
    cmd().assert().code(1);
    cmd().arg("frobnicate").assert().code(1);
    cmd().args(["gfactor", "-v", "0"]).assert().code(1);
    cmd()
        .args(["gfactor", "-v", "0", "-L", "1", "-F", "1/2", "-J", "5/2"])
        .assert()
        .code(1);
    cmd().args(["reproduce", "6"]).assert().code(1);
    cmd()
        .args(["--format", "yaml", "grot", "-v", "0", "-L", "1"])
        .assert()
        .code(1);
    cmd().args(["grot", "-v", "0", "-L", "0"]).assert().code(1);
    cmd()
        .args(["ratio", "--a", "4,1,1/2", "--b", "4,1,3/2,5/2"])
        .assert()
        .code(1);
}

#[test]
fn invalid_level_lists_the_valid_ones() {
    let out = cmd()
        .args(["gfactor", "-v", "0", "-L", "1", "-F", "1/2", "-J", "5/2"])
        .output()
        .unwrap();
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("valid levels"), "{err}");
    assert!(err.contains("(F=3/2, J=5/2)"), "{err}");
}

#[test]
fn gfactor_json_matches_published_mixed_value() {
    let text = stdout(cmd().args([
        "--format", "json", "gfactor", "-v", "0", "-L", "1", "-F", "1/2", "-J", "1/2",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let row = &doc["rows"][0];
    assert_eq!(row["state"], "mixed");
    assert!((row["g_total"].as_f64().unwrap() - 0.126_538_1).abs() < 2e-6);
    assert!((row["g1_over_ge"].as_f64().unwrap() - 0.062_931_3).abs() < 1e-9);
}

#[test]
fn gfactor_without_f_and_j_lists_every_level() {
    let text = stdout(cmd().args(["--format", "csv", "gfactor", "-v", "2", "-L", "3"]));
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| &r[0] == "2" && &r[1] == "3"));
}

#[test]
fn grot_and_ratio() {
    let text = stdout(cmd().args(["--format", "json", "grot", "-v", "0", "-L", "1"]));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!((doc["rows"][0]["g_rot"].as_f64().unwrap() - 0.9201).abs() < 2e-4);

    let text = stdout(cmd().args(["--format", "json", "ratio", "--a", "4,1,3/2,3/2", "--b", "4,1,3/2,5/2"]));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let r = doc["rows"][0]["ratio"].as_f64().unwrap();
    assert!((r.abs() - 1.2463).abs() / 1.2463 < 0.01, "{r}");
}

#[test]
fn zeeman_line_and_components() {
    let text = stdout(cmd().args([
        "--format", "json", "zeeman", "-v", "0", "-L", "1", "-F", "3/2", "-J", "5/2",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let shift = doc["rows"][0]["shift_hz"].as_f64().unwrap();
    assert!((shift - 279_258.0).abs() < 2.0, "{shift}");

    let text = stdout(cmd().args([
        "--format",
        "csv",
        "zeeman",
        "-v",
        "0",
        "-L",
        "1",
        "-F",
        "3/2",
        "-J",
        "5/2",
        "--polarization",
        "sigma+",
    ]));
    // M = -5/2 .. 1/2 can each go up by two units
    assert_eq!(text.lines().count(), 1 + 4);
}

#[test]
fn strong_field_warns_but_succeeds() {
    let out = cmd()
        .args([
            "zeeman", "-v", "0", "-L", "2", "-F", "1/2", "-J", "5/2", "--field", "0.5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn reproduce_diff_exit_codes() {
    for n in ["2", "3", "4"] {
        cmd().args(["reproduce", n, "--diff"]).assert().code(0);
    }
    let one = stdout(cmd().args(["reproduce", "1", "--diff"]));
    let failing: Vec<&str> = one.lines().filter(|l| l.contains("FAIL L=")).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].contains("L=3 v=3 l_tot"));
    cmd().args(["reproduce", "1", "--diff"]).assert().code(2);

    let five = stdout(cmd().args(["reproduce", "5", "--diff"]));
    let failing: Vec<&str> = five.lines().filter(|l| l.contains("FAIL L=")).collect();
    assert_eq!(failing.len(), 4, "{five}");
    assert!(failing.iter().all(|l| l.contains("splitting_hz")));
    cmd().args(["reproduce", "5", "--diff"]).assert().code(2);
}

#[test]
fn reproduced_csv_parses_back_and_rediffs() {
    for target in Target::ALL {
        let text = stdout(cmd().args(["--format", "csv", "reproduce", &target.to_string()]));
        let table = target.parse(&text, "cli output").unwrap();
        let direct = target.compute(&h2zeeman::GFactorModel::bundled()).unwrap();
        assert_eq!(table.rows, direct.rows, "target {target}");
    }
}

#[test]
fn json_diff_report() {
    let text = stdout(cmd().args(["--format", "json", "reproduce", "4", "--diff"]));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let cells = doc["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 3);
    assert!(cells.iter().all(|c| c["passed"] == true));
}

#[test]
fn data_dir_overrides_are_picked_up() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("constants.toml"), "g_e = 2.0\n").unwrap();
    let text = stdout(cmd().env("H2ZEEMAN_DATA_DIR", dir.path()).args([
        "--format", "json", "gfactor", "-v", "0", "-L", "0", "-F", "1/2", "-J", "1/2",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["rows"][0]["g_total"].as_f64().unwrap(), 2.0);

    let text = stdout(cmd().arg("--data-dir").arg(dir.path()).arg("constants"));
    assert!(text.contains("g_e = 2.0"), "{text}");
}

#[test]
fn bad_data_files_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let orbital = dir.path().join("orbital.csv");
    fs::write(&orbital, "L,v,le_red,l1_red\n1,0,0,5.0\n").unwrap();
    let out = cmd()
        .arg("--orbital")
        .arg(&orbital)
        .args(["grot", "-v", "0", "-L", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("orbital.csv"));

    let mixing = dir.path().join("mixing.csv");
    fs::write(&mixing, "v,L,twice_J,twice_Ftilde,C1,C3\n0,1,1,1,0.5,0.5\n").unwrap();
    cmd()
        .arg("--mixing")
        .arg(&mixing)
        .args(["grot", "-v", "0", "-L", "1"])
        .assert()
        .code(1);

    let constants = dir.path().join("constants.toml");
    fs::write(&constants, "g_e = -1.0\n").unwrap();
    cmd()
        .arg("--constants")
        .arg(&constants)
        .arg("constants")
        .assert()
        .code(1);

    cmd()
        .arg("--constants")
        .arg(dir.path().join("absent.toml"))
        .arg("constants")
        .assert()
        .code(1);
}

#[test]
fn recover_mixing_matches_bundled_table() {
    let text = stdout(cmd().args(["recover-mixing"]));
    let recovered = h2zeeman::MixingTable::from_csv_str(&text).unwrap();
    let bundled = h2zeeman::MixingTable::bundled();
    assert_eq!(recovered.len(), bundled.len());
    for (a, b) in recovered.entries().zip(bundled.entries()) {
        assert!((a.c1 - b.c1).abs() < 1e-12 && (a.c3 - b.c3).abs() < 1e-12);
    }
}
