use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plovlab"))
        .args(args)
        .env("PLOVLAB_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (code, v)
}

fn plov_values(report: &Value) -> Vec<u64> {
    report["results"]["summary"]["plov_values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect()
}

#[test]
fn reproduce_targets_pass() {
    for target in ["matrix-examples", "table1", "fullrank", "kernel"] {
        let (code, v) = json(&["reproduce", target, "--deterministic"]);
        assert_eq!(code, 0, "{target}");
        assert_eq!(v["pass"], true);
        assert!(v.get("duration_ms").is_none());
    }
}

#[test]
fn table2_up_to_seven() {
    let (code, v) = json(&["reproduce", "table2", "--dmax", "7"]);
    assert_eq!(code, 0);
    let cells = v["results"].as_array().unwrap();
    assert_eq!(cells.len(), 24);
    let cell = cells.iter().find(|c| c["d"] == 7 && c["e"] == 1).unwrap();
    assert_eq!(cell["nullity"], 4);
    assert!(v["duration_ms"].is_u64());
}

#[test]
fn kernel_for_d2() {
    let (code, v) = json(&["reproduce", "kernel", "--d", "2"]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(r["nullity"], 1);
    assert_eq!(r["kernel"], serde_json::json!(["1", "-1"]));
}

#[test]
fn corollary_values() {
    for (blocks, k, plov) in [
        ("4", 6, 16),
        ("2,1,1", 2, 6),
        ("1,1,1,1", 0, 4),
        ("3,1", 4, 10),
    ] {
        let (code, v) = json(&["plov", "--abelian-blocks", blocks]);
        assert_eq!(code, 0, "{blocks}");
        let r = &v["results"]["report"];
        assert_eq!(
            (r["k"].as_u64(), r["plov"].as_u64()),
            (Some(k), Some(plov)),
            "{blocks}"
        );
    }
}

#[test]
fn model_json_input() {
    let (code, v) = json(&[
        "plov",
        "--model",
        r#"{"type":"abelian","g":2,"A":[[1,1],[0,1]]}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["report"]["plov"], 4);
    assert_eq!(v["results"]["report"]["checks"]["hilbert"], true);
}

#[test]
fn scans() {
    let (code, v) = json(&["scan", "--d", "4", "--count", "50", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["summary"]["passed"], 50);
    assert!(plov_values(&v)
        .iter()
        .all(|p| [4, 6, 8, 10, 16].contains(p)));

    let (code, v) = json(&["scan", "--d", "2", "--count", "20", "--seed", "1"]);
    assert_eq!(code, 0);
    assert!(plov_values(&v).iter().all(|p| [2, 4].contains(p)));

    let (code, v) = json(&["scan", "--d", "3", "--count", "20", "--seed", "1"]);
    assert_eq!(code, 0);
    assert!(plov_values(&v).iter().all(|&p| !(5 < p && p < 9)));
}

#[test]
fn deterministic_output_is_byte_identical() {
    let args = [
        "scan",
        "--d",
        "3",
        "--count",
        "10",
        "--seed",
        "42",
        "--deterministic",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["reproduce", "table2", "--dmax", "8"][..],
        &["reproduce", "table2", "--d", "3"],
        &["reproduce", "fullrank", "--k", "2", "--d", "2", "--n", "9"],
        &["reproduce", "kernel", "--format", "csv"],
        &["scan", "--d", "7"],
        &["scan", "--d", "3", "--count", "0"],
        &["plov"],
        &["plov", "--abelian-blocks", "2,x"],
        &[
            "plov",
            "--model",
            r#"{"type":"abelian","g":2,"A":[[2,0],[0,1]]}"#,
        ],
        &[
            "matrix",
            "--k",
            "3",
            "--d",
            "2",
            "--n",
            "2",
            "--truncate",
            "1,2",
        ],
        &["no-such-command"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn non_quasi_unipotent_exits_1() {
    let out = run(&[
        "plov",
        "--model",
        r#"{"type":"abelian","g":2,"A":[[2,1],[1,1]]}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn matrix_csv_and_out_file() {
    let out = run(&[
        "matrix", "--k", "2", "--d", "2", "--n", "2", "--format", "csv",
    ]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "k,d,n,rows,cols\n2,2,2,1,2\n1,1\n"
    );

    let path = std::env::temp_dir().join(format!("plovlab-cli-{}.csv", std::process::id()));
    let out = run(&[
        "matrix",
        "--k",
        "2",
        "--d",
        "3",
        "--n",
        "3",
        "--truncate",
        "2,1",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    // Only 1,1,1 lies below κ(2,1) = 2,0,0.
    assert_eq!(text, "k,d,n,rows,cols\n2,3,3,2,1\n0\n1\n");
}
