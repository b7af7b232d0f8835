//! End-to-end runs of the `dpinv` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn dpinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = dpinv(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn dims_n2_totals() {
    for (p, s, total) in [("2", "1", 5), ("2", "2", 22), ("3", "1", 12)] {
        let doc = json(&["dims", "--p", p, "--s", s, "--n", "2"]);
        let rows = doc["rows"].as_array().unwrap();
        let sum: u64 = rows.iter().map(|r| r["dim_G"].as_u64().unwrap()).sum();
        assert_eq!(sum, total);
        assert_eq!(doc["series"]["closed_form_total"], total);
        let closed: Vec<u64> = doc["series"]["closed_form"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect();
        let dims: Vec<u64> = rows.iter().map(|r| r["dim_G"].as_u64().unwrap()).collect();
        assert_eq!(closed, dims);
    }
}

#[test]
fn dims_zero_degree_row_is_one() {
    for module in ["as", "ds", "tensor", "veccovec"] {
        let doc = json(&["dims", "--p", "3", "--n", "2", "--r", "0", "--module", module]);
        let row = &doc["rows"][0];
        assert_eq!(row["r"], 0);
        assert_eq!(row["dim_G"], 1, "{module}");
        assert_eq!(row["dim_g"], 1, "{module}");
    }
}

#[test]
fn dims_json_schema() {
    let doc = json(&["dims", "--p", "2", "--n", "2", "--module", "tensor", "--degree-max", "3"]);
    assert_eq!(doc["params"]["p"], 2);
    assert_eq!(doc["params"]["module"], "tensor");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3]["dim_G"], 5);
    assert_eq!(rows[3]["dim_g"], 8);
    assert!(doc.get("series").is_none());
}

#[test]
fn dims_csv_matches_json() {
    let args = ["dims", "--p", "2", "--s", "1", "--n", "3", "--module", "ds", "--degree-max", "3"];
    let doc = json(&args);
    let mut full = vec!["--format", "csv"];
    full.extend_from_slice(&args);
    let text = stdout(&dpinv(&full));
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "p,s,n,r,dim_G,dim_g,dim_classical");
    for (line, row) in lines.zip(doc["rows"].as_array().unwrap()) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[3], row["r"].to_string());
        assert_eq!(f[4], row["dim_G"].to_string());
        assert_eq!(f[5], row["dim_g"].to_string());
        assert_eq!(f[6], row["dim_classical"].to_string());
    }
}

#[test]
fn dims_cap_truncates() {
    let o = dpinv(&["--cap-basis", "50", "--format", "json", "dims", "--p", "2", "--n", "2", "--module", "tensor", "--degree-max", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
    assert_eq!(doc["truncated"]["r"], 3);
}

#[test]
fn verify_named_claims() {
    let o = dpinv(&["verify", "inf-gap-p2-n2-r3", "trivial-constants", "restriction-As-s2-p2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("PASS inf-gap-p2-n2-r3: dim_G = 5, dim_g = 8"));
    assert!(text.contains("PASS trivial-constants"));
    assert!(text.contains("PASS restriction-As-s2-p2"));
}

#[test]
fn verify_default_suite_is_deterministic() {
    let a = dpinv(&["--format", "json", "verify"]);
    let b = dpinv(&["--format", "json", "verify"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["failed"], 0);
    let ids: Vec<&str> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert!(!ids.contains(&"inf-gap-p2-n3-r4"));
}

#[test]
fn verify_unknown_claim_fails() {
    let o = dpinv(&["verify", "no-such-claim"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no-such-claim"));
}

#[test]
fn verify_failing_manifest_exits_nonzero() {
    let path = std::env::temp_dir().join(format!("dpinv-manifest-{}.toml", std::process::id()));
    std::fs::write(
        &path,
        "[[claim]]\nid = \"wrong\"\nsuite = \"default\"\nkind = \"dims\"\np = 2\nmodule = { type = \"tensor\", n = 2, r = 3 }\ngroup = 6\n",
    )
    .unwrap();
    let o = dpinv(&["verify", "--manifest", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL wrong: dim_G = 5"));
}

#[test]
fn verify_list() {
    let o = dpinv(&["verify", "--list", "--suite", "extended"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("inf-gap-p2-n3-r4")));
    assert!(text.lines().count() >= 20);
}

#[test]
fn basis_examples() {
    let doc = json(&["basis", "--family", "e", "--p", "2", "--s", "1", "--n", "3", "--r", "3"]);
    let labels: Vec<&str> = doc["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["div e[3]", "div e[2,1]"]);

    let doc = json(&["basis", "--family", "class", "--p", "2", "--s", "1", "--n", "2", "--r", "2"]);
    let els = doc["elements"].as_array().unwrap();
    assert_eq!(els.len(), 1);
    assert_eq!(els[0]["group_invariant"], true);

    for family in ["e", "h", "p", "class", "bracket"] {
        let doc = json(&["basis", "--family", family, "--p", "3", "--n", "2", "--r", "0"]);
        let els = doc["elements"].as_array().unwrap();
        assert_eq!(els.len(), 1, "{family}");
        assert_eq!(els[0]["element"], "1", "{family}");
    }
}

#[test]
fn basis_flags_outside_ds() {
    // divided p_2 at p = 2 has x[i,i]^(2) terms
    let doc = json(&["basis", "--family", "p", "--p", "2", "--s", "1", "--n", "2", "--r", "2"]);
    let e = &doc["elements"][0];
    assert_eq!(e["label"], "div p[2]");
    assert_eq!(e["in_ds"], false);
    assert_eq!(e["group_invariant"], true);
    let doc = json(&["basis", "--family", "h", "--p", "2", "--s", "1", "--n", "2", "--r", "2"]);
    assert_eq!(doc["elements"][0]["in_ds"], true);
}

#[test]
fn element_queries() {
    let doc = json(&["element", "div e[2,2]", "--p", "2", "--n", "2", "--s", "1"]);
    assert_eq!(doc["divided"], true);
    assert_eq!(doc["in_ds"], true);
    assert_eq!(doc["degree"], 4);
    let doc = json(&["element", "bracket[1,2]", "--p", "3", "--n", "3", "--s", "1"]);
    assert_eq!(doc["divided"], false);
    assert!(doc.get("in_ds").is_none());
    let o = dpinv(&["element", "q[1]", "--p", "3", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}
