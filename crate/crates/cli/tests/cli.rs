use std::process::{Command, Output};

use serde_json::Value;

fn modsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modsym"))
        .args(args)
        .output()
        .expect("run modsym")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn verify_writes_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = modsym(&[
            "verify",
            "relations",
            "--n",
            "2",
            "--q",
            "3",
            "--trials",
            "20",
            "--seed",
            "7",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["failures"], 0);
    assert_eq!(v["reports"][0]["seed"], 7);
    assert_eq!(v["reports"][0]["instance"]["q"], 3);
}

#[test]
fn solomon_tits_report() {
    let out = modsym(&["verify", "solomon-tits", "--n", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let h = &v["reports"][0]["details"]["homology"];
    assert_eq!(h[1]["betti"], 8);
    assert_eq!(h[1]["torsion"], serde_json::json!([]));
}

#[test]
fn budget_exit_code() {
    let out = modsym(&["verify", "solomon-tits", "--n", "4", "--q", "2", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("315"));
}

#[test]
fn usage_errors() {
    assert_eq!(modsym(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        modsym(&["symbol", "--n", "2", "--q", "4", "--vectors", "1,0;0,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        modsym(&["symbol", "--n", "2", "--q", "3", "--vectors", "1,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(modsym(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn exported_complex_has_same_homology() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.json");
    let out = modsym(&["build", "tits", "--n", "3", "--q", "2", "--out", file.to_str().unwrap()]);
    assert!(out.status.success());
    let from_file = modsym(&["homology", "--input", file.to_str().unwrap()]);
    let direct = modsym(&["homology", "--n", "3", "--q", "2"]);
    assert!(from_file.status.success() && direct.status.success());
    assert_eq!(stdout_json(&from_file), stdout_json(&direct));
    let sd = modsym(&["build", "sd", "--input", file.to_str().unwrap()]);
    let v = stdout_json(&sd);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 14 + 21);
}

#[test]
fn malformed_input_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, r#"{"vertices": [0, 1], "facets": [[0, 7]]}"#).unwrap();
    let out = modsym(&["homology", "--input", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("facets[0][1]"));
}

#[test]
fn symbol_query() {
    let out = modsym(&["symbol", "--n", "2", "--q", "2", "--vectors", "1,0;1,1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let coords: Vec<i64> = v["coordinates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(coords.iter().sum::<i64>(), 0);
    assert_eq!(coords.iter().filter(|c| **c != 0).count(), 2);
}

#[test]
fn skeleton_build() {
    let out = modsym(&["build", "skeleton", "--n", "3", "--q", "2", "--dim", "0"]);
    let v = stdout_json(&out);
    assert_eq!(v["facets"].as_array().unwrap().len(), 14);
}
