use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: [&str; 7] = [
    "covariance_backends",
    "invariance_checks",
    "laguerre_paths",
    "squeezing_sweep",
    "tmss_reference",
    "vortex_wavefunction",
    "wigner_validation",
];

// cargo test builds examples next to the deps directory holding this binary
fn example_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|deps| deps.parent()).unwrap().join("examples")
}

#[test]
fn every_example_is_listed() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut found: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok()?.path().file_stem()?.to_str().map(str::to_owned))
        .collect();
    found.sort();
    assert_eq!(found, EXAMPLES);
}

#[test]
fn examples_run() {
    for name in EXAMPLES {
        let path = example_dir().join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
        assert!(path.exists(), "{} not built", path.display());
        let out = Command::new(&path).output().unwrap();
        assert!(out.status.success(), "{name} failed:\n{}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}
