use std::fs;
use std::io::BufReader;
use std::process::{Command, Output};

use qev::cli::{cli_main, EXIT_CONFIG, EXIT_IO, EXIT_OK};
use qev::wigner::WignerGrid;
use tempfile::TempDir;

fn qev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qev")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    cli_main(std::iter::once("qev").chain(args.iter().copied()))
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn usage_exit_codes() {
    assert_eq!(code(&["--help"]), EXIT_OK);
    assert_eq!(code(&["--version"]), EXIT_OK);
    assert_eq!(code(&["frobnicate"]), EXIT_CONFIG);
    assert_eq!(code(&["negativity", "--params", "p.json", "--bogus"]), EXIT_CONFIG);
    assert_eq!(code(&["wigner", "--params", "p.json"]), EXIT_CONFIG);
    assert_eq!(code(&["validate", "--tolerance=0"]), EXIT_CONFIG);
}

#[test]
fn file_errors() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("absent.json");
    assert_eq!(code(&["negativity", "--params", missing.to_str().unwrap()]), EXIT_IO);

    let bad = write(&dir, "bad.json", "{\"m\": 1, \"zeta_x\": ");
    assert_eq!(code(&["negativity", "--params", &bad]), EXIT_CONFIG);

    let bad_spec = write(&dir, "spec.json", r#"{"m_values": [1], "colour": "red"}"#);
    let csv = dir.path().join("o.csv");
    assert_eq!(code(&["sweep", "--spec", &bad_spec, "--out-csv", csv.to_str().unwrap()]), EXIT_CONFIG);

    let spec = write(&dir, "ok.json", r#"{"m_values": [0], "sigma_x_range": {"min": 0.5, "max": 1.0, "count": 2}}"#);
    let unwritable = dir.path().join("no_such_dir").join("o.csv");
    assert_eq!(code(&["sweep", "--spec", &spec, "--out-csv", unwritable.to_str().unwrap()]), EXIT_IO);
}

#[test]
fn negativity_of_vacuum() {
    let dir = TempDir::new().unwrap();
    let params = write(&dir, "vac.json", r#"{"m": 0, "zeta_x": 0.0, "zeta_y": 0.0}"#);
    for backend in ["wavefunction", "wigner"] {
        let out = qev(&["negativity", "--params", &params, "--backend", backend]);
        assert_eq!(out.status.code(), Some(EXIT_OK));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["log_negativity"].as_f64(), Some(0.0));
        assert_eq!(v["separable"].as_bool(), Some(true));
        assert!((v["nu_min"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    }
}

#[test]
fn wigner_file_round_trip() {
    let dir = TempDir::new().unwrap();
    let params = write(&dir, "m1.json", r#"{"m": 1, "zeta_x": 0.1, "zeta_y": -0.2}"#);
    for source in ["oracle", "closed"] {
        let out = dir.path().join(format!("{source}.txt"));
        let status = code(&["wigner", "--params", &params, "--axes", "9:6", "--source", source, "--out", out.to_str().unwrap()]);
        assert_eq!(status, EXIT_OK);
        let text = fs::read_to_string(&out).unwrap();
        assert!(text.starts_with("# wigner_grid source="));
        let grid = WignerGrid::read_text(BufReader::new(fs::File::open(&out).unwrap())).unwrap();
        assert_eq!(grid.shape(), [9; 4]);
        assert_eq!(grid.values().len(), 9usize.pow(4));
        let mut again = Vec::new();
        grid.write_text(&mut again).unwrap();
        assert_eq!(String::from_utf8(again).unwrap(), text);
    }
    let out = dir.path().join("x.txt");
    assert_eq!(code(&["wigner", "--params", &params, "--axes", "1", "--source", "oracle", "--out", out.to_str().unwrap()]), EXIT_CONFIG);
}

#[test]
fn sweep_outputs() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", "{}");
    let csv = dir.path().join("sweep.csv");
    let svg = dir.path().join("sweep.svg");
    let out = qev(&[
        "sweep",
        "--spec",
        &spec,
        "--out-csv",
        csv.to_str().unwrap(),
        "--out-svg",
        svg.to_str().unwrap(),
        "--axis",
        "zeta-x",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 301);
    assert_eq!(text.lines().next(), Some(qev::sweep::CSV_HEADER));
    let svg = fs::read_to_string(&svg).unwrap();
    assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn validate_single_order() {
    let out = qev(&["validate", "--m", "0"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("validation passed"));
}
