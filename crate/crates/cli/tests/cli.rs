use std::process::{Command, Output};

fn verlinde(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verlinde"))
        .args(args)
        .env_remove("VERLINDE_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = verlinde(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    verlinde(args).status.code().unwrap()
}

#[test]
fn single_values() {
    assert_eq!(stdout(&["verlinde", "2", "6", "2"]), "84\n");
    assert_eq!(stdout(&["verlinde", "6", "6", "1"]), "462\n");
    assert_eq!(stdout(&["verlinde", "4", "2", "1", "--pu"]), "5\n");
    assert_eq!(stdout(&["verlinde", "2", "4", "3", "--oracle"]), stdout(&["verlinde", "2", "4", "3"]));
    assert_eq!(stdout(&["spin", "4", "4", "--sigma", "2,2"]), "2\n");
    assert_eq!(stdout(&["spin", "6", "6", "--sigma", "1,0;0,0"]), "23678\n");
    assert_eq!(stdout(&["spin", "6", "6", "--sigma", "[[1,0],[0,0]]"]), "23678\n");
    assert_eq!(stdout(&["coho", "2", "4", "--sigma", "0,0"]), "2\n");
}

#[test]
fn splitting_table() {
    assert_eq!(
        stdout(&["spin", "2", "2", "--all", "--split"]),
        "[[0,0]]\t1\n[[0,1]]\t1\n[[1,0]]\t1\n[[1,1]]\t0\nsum\t3\n"
    );
    let out = stdout(&["pu-spin", "2", "6", "--split", "--genus", "2", "--json"]);
    let rec: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rec["values"].as_array().unwrap().len(), 16);
    assert_eq!(rec["value"], "84");
}

#[test]
fn duality_and_surgery() {
    assert_eq!(stdout(&["duality", "2", "6", "--gmax", "2"]), "0\t1\t1\n1\t7\t7\n2\t84\t84\n");
    assert_eq!(
        stdout(&["surgery", "--matrix", "[[1]]", "--d", "4"]),
        "count 1\nparticular [2]\nkernel_basis []\n"
    );
    let rec: serde_json::Value =
        serde_json::from_str(&stdout(&["surgery", "--matrix", "[[0,0],[0,0]]", "--d", "2", "--json"])).unwrap();
    assert_eq!(rec["value"], "4");
    assert_eq!(rec["values"]["count"], 4);
}

#[test]
fn tables() {
    let csv = stdout(&["table", "--N", "2..4", "--K", "2..4", "--g", "1..2", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 19);
    assert_eq!(lines[0], "N,K,g,value,pu_value,precision_used");
    assert_eq!(lines[1], "2,2,1,3,3,");
    let jsonl = stdout(&["table", "--N", "2", "--K", "6", "--g", "2", "--format", "jsonl"]);
    let row: serde_json::Value = serde_json::from_str(jsonl.trim()).unwrap();
    assert_eq!((row["value"].as_str(), row["pu_value"].as_str()), (Some("84"), Some("84")));
}

#[test]
fn json_records_are_stable() {
    let args = ["verlinde", "4", "4", "2", "--json"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    assert!(!a.contains("elapsed"));
    let rec: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(rec["value"], "4680");
    assert!(rec["precision_used"].is_u64());
    assert!(stdout(&["verlinde", "4", "4", "2", "--json", "--timing"]).contains("elapsed_us"));
}

#[test]
fn job_count_does_not_change_output() {
    let base = ["table", "--N", "2..5", "--K", "2..4", "--g", "0..3"];
    let one = stdout(&[&base[..], &["--jobs", "1"]].concat());
    let four = stdout(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one, four);
    let split = ["spin", "4", "4", "--split", "--genus", "2"];
    assert_eq!(stdout(&[&split[..], &["--jobs", "1"]].concat()), stdout(&[&split[..], &["--jobs", "3"]].concat()));
}

#[test]
fn cache_hits_match_cold_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let path = path.to_str().unwrap();
    for args in [
        vec!["spin", "4", "4", "--all", "--genus", "2", "--json"],
        vec!["table", "--N", "2..3", "--K", "2..3", "--g", "1..3"],
        vec!["verlinde", "6", "6", "2"],
    ] {
        let cold = stdout(&args);
        let first = stdout(&[&args[..], &["--cache", path]].concat());
        let second = stdout(&[&args[..], &["--cache", path]].concat());
        assert_eq!(cold, first);
        assert_eq!(first, second);
    }
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.contains("\"version\""));
    // a stale version is discarded
    std::fs::write(path, text.replace(env!("CARGO_PKG_VERSION"), "0.0.0-old")).unwrap();
    assert_eq!(stdout(&["verlinde", "6", "6", "2", "--cache", path]), "30660988\n");
    let env_run = Command::new(env!("CARGO_BIN_EXE_verlinde"))
        .args(["verlinde", "2", "2", "2"])
        .env("VERLINDE_CACHE", path)
        .output()
        .unwrap();
    assert_eq!(env_run.stdout, b"10\n");
    assert!(std::fs::read_to_string(path).unwrap().contains("\"pu\":false"));
}

#[test]
fn exit_codes() {
    // inadmissible refinements
    assert_eq!(exit_code(&["spin", "2", "8", "--sigma", "1,1"]), 2);
    assert_eq!(exit_code(&["coho", "2", "3", "--sigma", "0,0"]), 2);
    assert_eq!(exit_code(&["pu-spin", "3", "3", "--sigma", "0,0"]), 2);
    // malformed input
    assert_eq!(exit_code(&["spin", "2", "2", "--sigma", "1;2"]), 2);
    assert_eq!(exit_code(&["spin", "2", "2"]), 2);
    assert_eq!(exit_code(&["surgery", "--matrix", "[[1,2],[3,4]]", "--d", "2"]), 2);
    assert_eq!(exit_code(&["surgery", "--matrix", "[[1]]", "--d", "3"]), 2);
    assert_eq!(exit_code(&["verlinde", "1", "2", "2"]), 2);
    assert_eq!(exit_code(&["table", "--N", "4..2", "--K", "2", "--g", "1"]), 2);
    assert_eq!(exit_code(&["verlinde", "2", "2", "2", "--prec", "64", "--max-prec", "32"]), 2);
    // precision
    assert_eq!(exit_code(&["verlinde", "6", "6", "4", "--prec", "8", "--max-prec", "16"]), 3);
    assert_eq!(exit_code(&["verlinde", "6", "6", "4", "--prec", "8"]), 0);
}
