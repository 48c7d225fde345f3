use std::process::{Command, Output};

fn beauville(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beauville"))
        .args(args)
        .env_remove("BEAUVILLE_MAX_COSETS")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = beauville(&["verify", "--p", "3", "--k", "1", "--out", path.to_str().unwrap()]);
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["group_order"], 243);
    assert_eq!(cert["i"], 3);
    assert!(stdout(&out).is_empty());
    let failed: Vec<&str> = cert["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(code(&out), if failed.is_empty() { 0 } else { 1 }, "{failed:?}");
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn verify_to_stdout() {
    let out = beauville(&["verify", "--p", "3", "--k", "1"]);
    let cert: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["p"], 3);
}

#[test]
fn usage_errors() {
    for args in [
        &["verify", "--p", "4", "--k", "1"][..],
        &["verify", "--p", "2", "--k", "1"],
        &["verify", "--p", "3", "--k", "0"],
        &["verify", "--p", "3"],
        &["frobnicate"],
        &["fairbairn", "--which", "3"],
        &["abelian", "--n", "1"],
        &["nottingham", "--p", "3", "--check", "bogus"],
    ] {
        assert_eq!(code(&beauville(args)), 64, "{args:?}");
    }
    assert_eq!(code(&beauville(&["--help"])), 0);
    assert_eq!(code(&beauville(&["--version"])), 0);
}

#[test]
fn resource_limits() {
    let out = beauville(&["verify", "--p", "3", "--k", "1", "--max-cosets", "100"]);
    assert_eq!(code(&out), 2);
    let out = beauville(&["verify", "--p", "3", "--k", "9"]);
    assert_eq!(code(&out), 2);

    let out = Command::new(env!("CARGO_BIN_EXE_beauville"))
        .args(["fairbairn", "--which", "1"])
        .env("BEAUVILLE_MAX_COSETS", "1000")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_beauville"))
        .args(["fairbairn", "--which", "1", "--max-cosets", "100000"])
        .env("BEAUVILLE_MAX_COSETS", "1000")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let out = Command::new(env!("CARGO_BIN_EXE_beauville"))
        .args(["fairbairn", "--which", "1"])
        .env("BEAUVILLE_MAX_COSETS", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&out), 64);
}

#[test]
fn enumerate_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("s3.txt");
    std::fs::write(&good, "< x, y | x^2, y^3, (x y)^2 >\n").unwrap();
    let out = beauville(&["enumerate", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "6");

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "< x | x^2, q >\n").unwrap();
    assert_eq!(code(&beauville(&["enumerate", bad.to_str().unwrap()])), 64);
    let missing = dir.path().join("missing.txt");
    assert_eq!(code(&beauville(&["enumerate", missing.to_str().unwrap()])), 64);

    let free = dir.path().join("free.txt");
    std::fs::write(&free, "< x | >\n").unwrap();
    assert_eq!(code(&beauville(&["enumerate", free.to_str().unwrap(), "--max-cosets", "500"])), 2);
}

#[test]
fn nottingham_suites() {
    for check in ["order", "lcs", "comms"] {
        let out = beauville(&["nottingham", "--p", "3", "--precision", "9", "--check", check, "--samples", "50"]);
        assert_eq!(code(&out), 0, "{check}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!stdout(&out).contains("FAIL"));
    }
    let out = beauville(&["nottingham", "--p", "3", "--k", "1", "--check", "noncover"]);
    assert_eq!(code(&out), 0);
    let out = beauville(&["nottingham", "--p", "3", "--k", "1", "--precision", "5", "--check", "noncover"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn abelian_search() {
    let out = beauville(&["abelian", "--n", "5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("strongly real: yes"));
    let out = beauville(&["abelian", "--n", "6"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("NONE"));
}
