use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_schur-torus"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn scatter_commands() {
    let o = run(&["scatter", "phi", "1", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("z*zb"));
    let o = run(&["scatter", "verify", "--pmax", "4", "--qmax", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("PASS").count(), 25);
}

#[test]
fn schur_commands() {
    let model = fixture("model_d2.json");
    let o = run(&["schur", "quads", model.to_str().unwrap(), "--level", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["level"], 2);

    let o = run(&[
        "schur",
        "taylor",
        model.to_str().unwrap(),
        "--degree",
        "4",
        "--method",
        "both",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let diff: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# max difference "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(diff <= 1e-10);
}

#[test]
fn torus_gram_and_line_csv() {
    let dir = tempfile::tempdir().unwrap();
    let model = fixture("model_d2.json");
    let gram = dir.path().join("gram.csv");
    let o = run(&[
        "torus",
        "gram",
        model.to_str().unwrap(),
        "--jmax",
        "4",
        "--grid",
        "64",
        "--out",
        gram.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&gram);
    assert_eq!(header, ["j", "k", "re", "im", "reference"]);
    assert_eq!(rows.len(), 25);
    for r in &rows {
        assert!((r[2] - r[4]).abs() < 1e-8 && r[3].abs() < 1e-8);
    }

    let trace = dir.path().join("trace.csv");
    let o = run(&[
        "torus",
        "line",
        model.to_str().unwrap(),
        "--eta",
        "1,1.41421356",
        "--L",
        "4000",
        "--out",
        trace.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&trace);
    assert_eq!(header, ["L", "average", "reference", "abs_error"]);
    assert_eq!(
        rows.iter().map(|r| r[0]).collect::<Vec<_>>(),
        [250.0, 500.0, 1000.0, 2000.0, 4000.0]
    );
    assert!(rows[4][3] <= 5e-3);

    let o = run(&["torus", "szego", model.to_str().unwrap(), "--grid", "64"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("reference"));
}

#[test]
fn lattice_decompose() {
    let o = run(&[
        "lattice",
        "decompose",
        "--B",
        fixture("lattice_sqrt2.json").to_str().unwrap(),
        "--field",
        "Q(sqrt2)",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("verified true"));
    assert!(text.contains("certificate"));

    let o = run(&[
        "lattice",
        "decompose",
        "--B",
        fixture("lattice_sqrt2.json").to_str().unwrap(),
        "--field",
        "Q(x)",
    ]);
    assert!(!o.status.success());
}

#[test]
fn layered_sweep_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let medium = fixture("medium_single.json");
    let spectrum = dir.path().join("spectrum.csv");
    let o = run(&[
        "layered",
        "sweep",
        medium.to_str().unwrap(),
        "--omega-max",
        "100",
        "--n",
        "256",
        "--out",
        spectrum.to_str().unwrap(),
        "--source",
        "schur",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&spectrum);
    assert_eq!(header, ["omega", "re_R", "im_R", "abs_R_sq"]);
    assert_eq!(rows.len(), 256);
    assert!(rows.iter().all(|r| (r[3] - 0.25).abs() < 1e-12));

    let trace = dir.path().join("trace.csv");
    let o = run(&[
        "layered",
        "trace",
        fixture("medium_three.json").to_str().unwrap(),
        "--L",
        "250,500,1000,2000,4000",
        "--out",
        trace.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let (header, rows) = csv_rows(&trace);
    assert_eq!(header, ["L", "average", "reference", "abs_error"]);
    assert!(rows[4][3] <= 1e-2);
}

#[test]
fn verify_all_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = run(&["verify", "all", "--out", report.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert!(stdout(&o).contains(" 0 failed"));

    let config = dir.path().join("coarse.json");
    fs::write(&config, r#"{"grid": 4, "media": []}"#).unwrap();
    let o = run(&["verify", "all", "--config", config.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn bad_input_is_an_error() {
    let o = run(&["schur", "quads", "/nonexistent.json"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent.json"));
}
