use std::path::Path;
use std::process::{Command, Output};

fn descent(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(args)
        .env("DESCENT_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn multiply_anchor_product() {
    let cache = tempfile::tempdir().unwrap();
    let z = descent(&["multiply", "--n", "4", "--q", "2,2", "--r", "2,1,1", "--ring", "Z"], cache.path());
    assert!(z.status.success());
    assert_eq!(stdout(&z), "B[1,1,2] + B[2,1,1] + 2B[1,1,1,1]\n");
    let f2 = descent(&["multiply", "--n", "4", "--q", "2,2", "--r", "2,1,1", "--ring", "F2"], cache.path());
    assert_eq!(stdout(&f2), "B[1,1,2] + B[2,1,1]\n");
    let fp = descent(&["multiply", "--n", "4", "--q", "2,2", "--r", "2,1,1", "--ring", "Fp", "--p", "2"], cache.path());
    assert_eq!(stdout(&fp), stdout(&f2));
    let unit = descent(&["multiply", "--n", "4", "--q", "4", "--r", "2,1,1"], cache.path());
    assert_eq!(stdout(&unit), "B[2,1,1]\n");
}

#[test]
fn multiply_json_round_trips() {
    let cache = tempfile::tempdir().unwrap();
    let o = descent(&["multiply", "--n", "4", "--q", "2,2", "--r", "2,1,1", "--format", "json"], cache.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["ring"], "Z");
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    let back: descent::Element = serde_json::from_value(v).unwrap();
    assert_eq!(serde_json::to_string_pretty(&back).unwrap() + "\n", stdout(&o));
}

#[test]
fn bad_input_exits_2() {
    let cache = tempfile::tempdir().unwrap();
    for args in [
        &["multiply", "--n", "4", "--q", "2,x", "--r", "4"][..],
        &["multiply", "--n", "4", "--q", "2,1", "--r", "4"],
        &["radical", "--n", "4", "--p", "4"],
        &["radical", "--n", "9", "--p", "2"],
        &["table", "--n-max", "11", "--p", "2"],
        &["verify", "--n-max", "9", "--p", "2"],
    ] {
        let o = descent(args, cache.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn radical_certificates() {
    let cache = tempfile::tempdir().unwrap();
    let o = descent(&["radical", "--n", "4", "--p", "2", "--format", "json"], cache.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dimension"], 6);
    assert_eq!(v["nilpotency_index"], 3);
    assert!(cache.path().join("table-n4-F2.jsonl").exists());
    // second run reads the cache and prints the same bytes
    let again = descent(&["radical", "--n", "4", "--p", "2", "--format", "json"], cache.path());
    assert_eq!(o.stdout, again.stdout);

    let one = descent(&["radical", "--n", "1", "--p", "3", "--format", "json"], cache.path());
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["dimension"], 0);
    let five = descent(&["radical", "--n", "4", "--p", "5", "--format", "json"], cache.path());
    let v: serde_json::Value = serde_json::from_slice(&five.stdout).unwrap();
    assert_eq!(v["dimension"], 3);
}

#[test]
fn table_rows() {
    let cache = tempfile::tempdir().unwrap();
    let o = descent(&["table", "--n-min", "3", "--n-max", "5", "--p", "2,7", "--format", "csv"], cache.path());
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    for r in rows {
        let n: usize = r[0].parse().unwrap();
        let p: usize = r[1].parse().unwrap();
        let dim: usize = r[2].parse().unwrap();
        let parts: usize = r[3].parse().unwrap();
        let g: usize = r[4].parse().unwrap();
        let rad: usize = r[5].parse().unwrap();
        assert_eq!(rad, dim - g);
        if p > n {
            assert_eq!(rad, dim - parts);
        }
        assert_eq!(r[6], (n - 1).to_string());
    }
}

#[test]
fn verify_suites() {
    let cache = tempfile::tempdir().unwrap();
    let o = descent(&["verify", "--n-max", "5", "--p", "2,3"], cache.path());
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with(" 0 failed\n"));

    let o = descent(&["verify", "--n-max", "6", "--p", "2", "--with-oracle", "--format", "json"], cache.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.contains("n=6: group oracle")));

    let o = descent(&["verify", "--n-max", "2", "--p", "3"], cache.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("NOTE  R(2,3) = 0"));
}

#[test]
fn characters_output() {
    let cache = tempfile::tempdir().unwrap();
    let o = descent(&["characters", "--n", "2", "--format", "json"], cache.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["matrix"], serde_json::json!([[1, 1], [0, 2]]));

    let o = descent(&["characters", "--n", "4", "--p", "2", "--format", "json"], cache.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rank_mod_p"], 2);
    assert_eq!(v["irreducible_representations"].as_array().unwrap().len(), 2);
    assert!(v["matrix"][0].as_array().unwrap().iter().all(|x| x == 1));

    let o = descent(&["characters", "--n", "2", "--format", "csv"], cache.path());
    assert_eq!(stdout(&o), "composition,\"[2]\",\"[1,1]\"\n\"[2]\",1,1\n\"[1,1]\",0,2\n");
}

#[test]
fn out_flag_writes_file() {
    let cache = tempfile::tempdir().unwrap();
    let path = cache.path().join("out.txt");
    let o = descent(&["multiply", "--n", "3", "--q", "1,2", "--r", "2,1", "--out", path.to_str().unwrap()], cache.path());
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "B[1,2] + B[1,1,1]\n");
}
