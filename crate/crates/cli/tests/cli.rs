use std::path::PathBuf;
use std::process::{Command, Output};

fn ccma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccma")).args(args).env_remove("CCMA_GUARD_LIMIT").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn certificate(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("certificates").join(name)
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn rank_of(json: &str) -> u64 {
    serde_json::from_str::<serde_json::Value>(json).unwrap()["rank"].as_u64().unwrap()
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(code(&ccma(&["--help"])), 0);
    assert_eq!(code(&ccma(&["synth", "--help"])), 0);
    assert_eq!(code(&ccma(&["frobnicate"])), 1);
    assert_eq!(code(&ccma(&["synth", "--q", "2"])), 1);
    assert_eq!(code(&ccma(&["synth", "--q", "6", "--n", "2"])), 1);
    assert_eq!(code(&ccma(&["synth", "--q", "2", "--n", "3", "--strategies", "magic"])), 1);
    assert_eq!(code(&ccma(&["bounds", "--table", "table9"])), 1);
}

#[test]
fn shipped_certificates_verify() {
    for (name, line) in [
        ("mu2_4.json", "VERIFIED rank 9, symmetric, lower bound 7"),
        ("mu2_6.json", "VERIFIED rank 15, symmetric, lower bound 11"),
        ("mu4_4.json", "VERIFIED rank 8, symmetric, lower bound 7"),
        ("truncated_1_2.json", "VERIFIED rank 3, symmetric"),
    ] {
        let o = ccma(&["verify", certificate(name).to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{name}");
        assert_eq!(stdout(&o).trim(), line);
    }
}

#[test]
fn corrupted_certificate_exits_two() {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(certificate("mu2_4.json")).unwrap()).unwrap();
    let entry = &mut v["algorithm"]["W"][0][0][0];
    *entry = serde_json::json!(1 - entry.as_u64().unwrap());
    let path = scratch("corrupted.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = ccma(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).starts_with("FAILED rank 9: basis pair"));
}

#[test]
fn synth_round_trips_through_verify() {
    let path = scratch("synth_3_4.json");
    let o = ccma(&["synth", "--q", "3", "--n", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(rank_of(&written), 9);
    let v = ccma(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).starts_with("VERIFIED rank 9"));
}

#[test]
fn more_strategies_never_worsen_rank() {
    let rank = |s: &str| rank_of(&stdout(&ccma(&["synth", "--q", "2", "--n", "4", "--strategies", s])));
    let all = rank("g0,tower,curve");
    assert_eq!(all, 9);
    for s in ["g0", "tower", "curve", "g0,tower", "g0,curve"] {
        assert!(rank(s) >= all, "{s}");
    }
}

#[test]
fn truncated_target() {
    let o = ccma(&["synth", "--q", "2", "--n", "1", "--l", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(rank_of(&stdout(&o)), 5);
}

#[test]
fn guard_exits_three() {
    assert_eq!(code(&ccma(&["synth", "--q", "4194304", "--n", "2"])), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_ccma"))
        .args(["search", "--q", "2", "--n", "3", "--max-rank", "6"])
        .env("CCMA_GUARD_LIMIT", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn search_reports_minimum() {
    let o = ccma(&["search", "--q", "2", "--n", "2", "--max-rank", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "no decomposition of rank <= 2");
    let o = ccma(&["search", "--q", "2", "--n", "2", "--max-rank", "3"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["N"], 3);
}

#[test]
fn bounds_tables_match() {
    let o = ccma(&["bounds", "--table", "msym"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("anchor,q,params,value,rounded,printed,applicable,matches_reference\n"));
    assert!(out.contains(",16/3,5.333,5.33,true,true\n"));
    let o = ccma(&["bounds", "--table", "m", "--json"]);
    assert_eq!(code(&o), 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rows.as_array().unwrap().iter().any(|r| r["value"] == "87/19"));
}

#[test]
fn altered_constants_are_a_mismatch() {
    let reference = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/asymptotic_params.json");
    let mut v: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(reference).unwrap()).unwrap();
    let entry = v.iter_mut().find(|e| e["q"] == 2 && e["r"] == 2).unwrap();
    entry["value"] = serde_json::json!("1/4");
    let path = scratch("params.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let o = ccma(&["bounds", "--table", "msym", "--params", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("mismatches: (q=2"));
}

#[test]
fn achieved_exact_values() {
    let o = ccma(&["bounds", "--table", "table1", "--achieved"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches(",achieved,").count(), 2);
}

#[test]
fn codes_from_certificate() {
    let cert = certificate("mu2_4.json");
    let o = ccma(&["codes", "--from", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("[9, 4, 4] code"));
    let o = ccma(&["codes", "--from", cert.to_str().unwrap(), "--supercode"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["n"].as_u64(), v["N"].as_u64(), v["exact"].as_bool()), (Some(4), Some(9), Some(true)));
}
