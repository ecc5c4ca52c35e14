use std::process::Command;

use serde_json::Value;

use charcol::chain::Chain;
use charcol::verify::ingest::ChainData;
use charcol::verify::mn::mn_character;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["charcol"];
    argv.extend_from_slice(args);
    let code = charcol::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    serde_json::from_str(&out).unwrap()
}

fn column_values(doc: &Value) -> Vec<i64> {
    doc["column"].as_array().unwrap().iter().map(|e| e["value"].as_i64().unwrap()).collect()
}

#[test]
fn column_of_three_cycle_at_six() {
    let doc = json(&["column", "--chain", "sym", "--class", "[3,1,1,1]", "--n", "6"]);
    assert_eq!(column_values(&doc), [1, 2, 0, 1, -1, -2, 1, -1, 0, 2, 1]);
    let doc = json(&["column", "--class", "[3]", "--n", "6", "--paper-order"]);
    assert_eq!(column_values(&doc), [1, 2, 0, 1, -1, -2, -1, 1, 0, 2, 1]);
}

#[test]
fn identity_column_is_dimensions() {
    let doc = json(&["column", "--chain", "sym", "--class", "[1]", "--n", "5"]);
    assert_eq!(column_values(&doc), [1, 4, 5, 6, 5, 4, 1]);
    let doc = json(&["column", "--chain", "z2wreath", "--class", "e", "--n", "2"]);
    let labels: Vec<&str> = doc["column"].as_array().unwrap().iter().map(|e| e["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["1:[2]", "1:[1,1]", "1:[1];-1:[1]", "-1:[2]", "-1:[1,1]"]);
    assert_eq!(column_values(&doc), [1, 1, 2, 1, 1]);
}

#[test]
fn csv_and_oracle() {
    let (code, out, _) = run(&["column", "--class", "[2,2]", "--n", "4", "--format", "csv", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(out, "label,value,oracle\n[4],1,1\n\"[3,1]\",-1,-1\n\"[2,2]\",2,2\n\"[2,1,1]\",-1,-1\n\"[1,1,1,1]\",1,1\n");
    let doc = json(&["column", "--class", "[2]", "--n", "6", "--odd", "--oracle"]);
    assert_eq!(doc["agrees"], Value::Bool(true));
    let proj: Vec<i64> = doc["projection"].as_array().unwrap().iter().map(|e| e["value"].as_i64().unwrap()).collect();
    assert_eq!(proj, [1, 3, 3, 2, 1]);
}

#[test]
fn lift_of_three_two() {
    let doc = json(&["lift", "--chain", "sym", "--k", "5", "--label", "[3,2]", "--n", "9"]);
    let obj = doc.as_object().unwrap();
    assert_eq!(obj.len(), 3);
    assert_eq!(obj["[7,2]"], 1);
    assert_eq!(obj["[8,1]"], -4);
    assert_eq!(obj["[9]"], 10);
    let doc = json(&["lift", "--chain", "z2wreath", "--k", "2", "--label", "1:[1];-1:[1]", "--n", "3"]);
    assert_eq!(doc, serde_json::json!({"1:[3]": -1, "1:[2];-1:[1]": 1}));
}

#[test]
fn indres_dump_is_sorted() {
    let doc = json(&["indres", "--chain", "sym", "--n", "6", "--dump"]);
    assert_eq!(doc["n"], 6);
    assert_eq!(doc["basis"].as_array().unwrap().len(), 11);
    let entries: Vec<(u64, u64, i64)> = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap(), e[2].as_i64().unwrap()))
        .collect();
    assert!(entries.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
    assert!(entries.contains(&(5, 5, 3)));
}

#[test]
fn table_matches_murnaghan_nakayama() {
    let doc = json(&["table", "--chain", "sym", "--k", "5"]);
    let classes = doc["classes"].as_array().unwrap();
    let irreps = doc["irreps"].as_array().unwrap();
    assert_eq!((classes.len(), irreps.len()), (7, 7));
    for irrep in irreps {
        let lambda = irrep["label"].as_str().unwrap().parse().unwrap();
        for (c, v) in classes.iter().zip(irrep["values"].as_array().unwrap()) {
            let mu = c["label"].as_str().unwrap().parse().unwrap();
            assert_eq!(mn_character(&lambda, &mu).unwrap(), v.as_i64().unwrap().into());
        }
    }
    let brute = json(&["table", "--chain", "sym", "--k", "4", "--brute"]);
    assert_eq!(brute, json(&["table", "--chain", "sym", "--k", "4"]));
}

#[test]
fn z2_table_has_five_rows() {
    let doc = json(&["table", "--chain", "z2wreath", "--k", "2"]);
    assert_eq!(doc["order"], 8);
    let rows: Vec<&str> = doc["irreps"].as_array().unwrap().iter().map(|i| i["label"].as_str().unwrap()).collect();
    assert_eq!(rows, ["1:[2]", "1:[1,1]", "1:[1];-1:[1]", "-1:[2]", "-1:[1,1]"]);
}

#[test]
fn mckay_dot_for_six() {
    let (code, dot, _) = run(&["mckay", "--chain", "sym", "--n", "6", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("graph mckay_6 {\n"));
    assert_eq!(dot.matches(" -- ").count(), 28);
    assert_eq!(dot.matches("[weight=").count(), 28);
    let (_, again, _) = run(&["mckay", "--n", "6"]);
    assert_eq!(dot, again);
    let doc = json(&["mckay", "--n", "6", "--reduced", "--format", "json"]);
    assert_eq!(doc["basis"].as_array().unwrap().len(), 5);
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    let (code, out, _) = run(&["indres", "--n", "3", "--dump", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["basis"], serde_json::json!(["[3]", "[2,1]", "[1,1,1]"]));
}

#[test]
fn verify_suites_pass() {
    let doc = json(&["verify", "--suite", "all", "--chain", "sym", "--maxN", "7"]);
    assert_eq!(doc["pass"], true);
    assert!(doc["checks"].as_array().unwrap().len() > 100);
    let doc = json(&["verify", "--suite", "heisenberg", "--chain", "z2wreath", "--maxN", "4"]);
    assert_eq!(doc["pass"], true);
    for check in doc["checks"].as_array().unwrap() {
        assert_eq!(check["lhs"], check["rhs"]);
    }
}

#[test]
fn exported_chain_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sym.json");
    let (code, _, err) = run(&["indres", "--n", "5", "--export-chain", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let (code, out, err) = run(&["verify", "--chain", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("\"pass\": true"));
}

#[test]
fn rank_deficient_chain_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let data = ChainData::from_chain(&Chain::symmetric(), 4).unwrap();
    let mut v: Value = serde_json::from_str(&data.to_json().unwrap()).unwrap();
    // nothing at level 3 restricts onto [1,1]
    v["levels"][3]["res"].as_array_mut().unwrap().retain(|e| e[0] != 1);
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, _, err) = run(&["verify", "--chain", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("not a surjective chain"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["column", "--class", "[3,x]", "--n", "5"][..],
        &["column", "--class", "[3,3]", "--n", "5"],
        &["lift", "--k", "4", "--label", "[3,2]", "--n", "6"],
        &["column", "--chain", "nope", "--class", "[2]", "--n", "3"],
        &["verify", "--suite", "everything"],
        &["mckay", "--n", "3", "--format", "svg"],
        &["frobnicate"],
        &["column", "--n", "3"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for cmd in ["column", "lift", "indres", "mckay", "table", "verify"] {
        assert!(out.contains(cmd), "help lacks {cmd}");
    }
}

#[test]
fn size_bound_exits_three() {
    let (code, _, err) = run(&["table", "--chain", "z2wreath", "--k", "3", "--max-order", "40"]);
    assert_eq!(code, 3);
    assert!(err.contains("size bound"), "{err}");
    let (code, _, _) = run(&["table", "--chain", "z2wreath", "--k", "3", "--max-order", "48"]);
    assert_eq!(code, 0);
}

#[test]
fn binary_reads_bound_from_environment() {
    let bin = env!("CARGO_BIN_EXE_charcol");
    let out = Command::new(bin)
        .args(["column", "--chain", "z2wreath", "--class", "1:[2]", "--n", "3"])
        .env("CHARCOL_MAX_ORDER", "7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(bin)
        .args(["column", "--chain", "z2wreath", "--class", "1:[2]", "--n", "3"])
        .env_remove("CHARCOL_MAX_ORDER")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["column"].as_array().unwrap().len(), 10);
}

#[test]
fn user_table_drives_a_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.json");
    let (code, _, _) = run(&["table", "--k", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let with_table = json(&["column", "--class", "[3]", "--n", "6", "--table", path.to_str().unwrap()]);
    let builtin = json(&["column", "--class", "[3]", "--n", "6"]);
    assert_eq!(column_values(&with_table), column_values(&builtin));
}
