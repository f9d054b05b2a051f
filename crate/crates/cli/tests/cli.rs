use std::path::Path;
use std::process::{Command, Output};

fn kfamily(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kfamily"))
        .args(args)
        .env_remove("KFAMILY_RESOLUTION")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["spectrum", "--alpha", "2", "--beta", "1", "--n", "6"][..],
        &["wkb-table", "--alpha", "2", "--beta", "2", "--n", "5"],
        &["spectrum", "--alpha", "2", "--beta", "2", "--n", "4", "--backend", "pseudospectral", "--resolution", "256", "--format", "json"],
    ] {
        let a = kfamily(args);
        let b = kfamily(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn zero_time_returns_the_input_profile() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("profile.csv");
    let output = dir.path().join("evolved.csv");
    let p = input.to_str().unwrap();
    let o = output.to_str().unwrap();
    stdout(&kfamily(&["evolve", "--profile", "sine", "--nodes", "64", "--tau", "0", "-o", p]));
    for backend in ["matrix", "spectral"] {
        stdout(&kfamily(&["evolve", "--input", p, "--tau", "0", "--backend", backend, "-o", o]));
        let a = std::fs::read_to_string(&input).unwrap();
        let b = std::fs::read_to_string(&output).unwrap();
        assert_eq!(data_rows(&a), data_rows(&b), "{backend}");
    }
}

#[test]
fn evolution_output_reads_back() {
    let text = stdout(&kfamily(&["evolve", "--profile", "parabola", "--nodes", "48", "--tau", "0.5"]));
    assert!(text.starts_with("# {\"tau\":0.5"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 49);
    assert_eq!(num(&rows[0][1]), 0.0);
    assert!(rows[1..].iter().all(|r| num(&r[1]) > 0.0));
}

#[test]
fn table_columns() {
    let out = Command::new(env!("CARGO_BIN_EXE_kfamily"))
        .args(["table1"])
        .env("KFAMILY_RESOLUTION", "1024")
        .output()
        .unwrap();
    let text = stdout(&out);
    assert!(text.contains("# resolution: 1024"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 10);
    assert!((num(&rows[0][1]) - 0.2332).abs() < 2e-3);
    assert!((num(&rows[7][2]) - 3.0437).abs() < 1e-4);
    assert_eq!(num(&rows[2][3]), 1.5);
    assert_eq!(rows[0][3], "0.000000000e0");
    assert!((num(&rows[0][4]) + 0.116).abs() < 1e-3);
}

#[test]
fn harmonic_spectrum_from_galerkin() {
    let rows = data_rows(&stdout(&kfamily(&["spectrum", "--alpha", "1", "--beta", "1", "--n", "5"])));
    let h = [0.0, 1.0, 1.5, 11.0 / 6.0, 25.0 / 12.0];
    for (row, h) in rows.iter().zip(h) {
        // ten significant digits in the output
        assert!((num(&row[1]) - 2.0 * h).abs() < 1e-9);
    }
}

#[test]
fn json_spectrum() {
    let text = stdout(&kfamily(&["spectrum", "--alpha", "0", "--beta", "1", "--n", "3", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["backend"], "galerkin");
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 3);
}

#[test]
fn mehler_fock_coefficients() {
    let text = stdout(&kfamily(&[
        "mehler-fock", "--profile", "parabola", "--nodes", "48", "--k-max", "2", "--dk", "0.5",
    ]));
    assert!(text.contains("# profile: parabola"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 5);
    assert_eq!(num(&rows[4][0]), 2.0);
}

#[test]
fn eigenfunction_matches_semiclassical_shape() {
    let text = stdout(&kfamily(&[
        "eigenfunction", "--alpha", "2", "--beta", "2", "--n", "3", "--resolution", "1024",
    ]));
    let overlap = text
        .lines()
        .find_map(|l| l.strip_prefix("# overlap: "))
        .map(num)
        .unwrap();
    assert!(overlap > 0.99, "{overlap}");
    let rows = data_rows(&text);
    assert!(rows.iter().all(|r| num(&r[0]).abs() <= 8.0));
    let gap = rows.iter().map(|r| (num(&r[2]) - num(&r[3])).abs()).fold(0.0, f64::max);
    assert!(gap < 0.1, "{gap}");
}

#[test]
fn boundary_fit_json() {
    let text = stdout(&kfamily(&[
        "boundary-fit", "--alpha", "2", "--beta", "2", "--resolution", "1024", "--format", "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let d = v["d_fitted"].as_f64().unwrap();
    assert!((d + 0.5).abs() < 0.02, "{d}");
    assert_eq!(v["d_exact"].as_f64().unwrap(), -0.5);
}

#[test]
fn writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wkb.csv");
    let out = kfamily(&["wkb-table", "--alpha", "1", "--beta", "1", "--n", "2", "-o", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("wkb_closed_form"));
}

#[test]
fn schema_lists_every_command() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&kfamily(&["--schema"]))).unwrap();
    for c in ["spectrum", "wkb-table", "eigenfunction", "mehler-fock", "evolve", "table1", "boundary-fit"] {
        assert!(v["commands"][c]["json"].is_object(), "{c}");
    }
}

fn error_report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn invalid_input_exits_with_2() {
    for args in [
        &["spectrum", "--alpha", "-1", "--beta", "1"][..],
        &["spectrum", "--alpha", "nan", "--beta", "1"],
        &["spectrum", "--alpha", "one", "--beta", "1"],
        &["wkb-table", "--alpha", "0", "--beta", "1"],
        &["evolve", "--profile", "linear", "--tau", "-1"],
        &["evolve", "--tau", "1"],
        &["boundary-fit", "--alpha", "2", "--beta", "2", "--window-lo", "30", "--window-hi", "20"],
        &["spectrum", "--alpha", "1", "--beta", "1", "--backend", "pseudospectral", "--resolution", "1000"],
        &["mehler-fock", "--profile", "linear", "--k-max", "1", "--dk", "0.3"],
        &[],
    ] {
        let out = kfamily(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let e = error_report(&out);
        assert_eq!(e["kind"], "validation");
        assert_eq!(e["exit_code"], 2);
    }
}

#[test]
fn resolution_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_kfamily"))
        .args(["spectrum", "--alpha", "1", "--beta", "1", "--n", "2"])
        .env("KFAMILY_RESOLUTION", "3")
        .output()
        .unwrap();
    assert!(stdout(&out).contains("# resolution: 3"));
    let out = Command::new(env!("CARGO_BIN_EXE_kfamily"))
        .args(["spectrum", "--alpha", "1", "--beta", "1", "--n", "2"])
        .env("KFAMILY_RESOLUTION", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_with_3() {
    // a linear profile decays too slowly at t -> infinity for a short t-range
    let out = kfamily(&["mehler-fock", "--profile", "linear", "--nodes", "32", "--t-max", "100", "--k-max", "1", "--dk", "0.5"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(error_report(&out)["kind"], "numerical");
}

#[test]
fn malformed_input_file_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "xi,u\n0,0\n0.5,abc\n").unwrap();
    let out = kfamily(&["evolve", "--input", path.to_str().unwrap(), "--tau", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let missing = Path::new("/nonexistent/profile.csv");
    let out = kfamily(&["evolve", "--input", missing.to_str().unwrap(), "--tau", "1"]);
    assert_eq!(out.status.code(), Some(1));
}
