use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use prsreduct_core::{
    is_consistent_set, DatasetConfig, DecisionTable, Fraction, Target, Thresholds,
};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name)
}

fn prsreduct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prsreduct"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = prsreduct(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Parses CSV output into header-keyed rows.
fn rows(csv_text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = r.headers().unwrap().clone();
    r.records()
        .map(|rec| {
            headers
                .iter()
                .map(String::from)
                .zip(rec.unwrap().iter().map(String::from))
                .collect()
        })
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn reduce_table1_lower() {
    let t1 = data("table1.csv");
    let out = rows(&stdout_of(&[
        "reduce",
        "--data",
        s(&t1),
        "--alpha",
        "0.6",
        "--beta",
        "0.4",
    ]));
    assert_eq!(out.len(), 1);
    assert_eq!(out[0]["schema"], "1");
    assert_eq!(out[0]["reduct"], "a1;a3;a5;a6");
    assert_eq!(out[0]["length"], "4");
    assert_eq!(out[0]["core"], "a1;a3");
    assert_eq!(out[0]["delta_full"], "7/22");
    assert_eq!(out[0]["verified"], "true");
    assert!(!out[0].contains_key("wall_ms"));
}

const CONSISTENT: &str = "\
a,b,c,d
0,0,1,x
0,1,1,y
1,0,0,y
1,1,0,x
0,0,1,x
2,1,0,z
2,0,1,z
1,1,1,x
";

#[test]
fn alpha_grid_on_consistent_table_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "consistent.csv", CONSISTENT);
    let out = rows(&stdout_of(&[
        "reduce",
        "--data",
        s(&path),
        "--alpha",
        "0.1:1.0:0.1",
    ]));
    assert_eq!(out.len(), 10);
    assert!(out
        .iter()
        .all(|r| r["reduct"] == out[0]["reduct"] && r["verified"] == "true"));
    assert_eq!(out[0]["beta"], "0/1");
    assert_eq!(out[9]["alpha"], "1/1");
    assert_eq!(out[9]["beta"], "4/5");
}

#[test]
fn invalid_grid_is_rejected_before_any_work() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("never.csv");
    let out = prsreduct(&[
        "reduce",
        "--data",
        "/does/not/exist.csv",
        "--alpha",
        "0.6,0.3",
        "--beta",
        "0.4",
        "--out",
        s(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("beta"));
    assert!(!out_path.exists());
}

#[test]
fn exit_codes() {
    let missing = prsreduct(&["reduce", "--data", "/does/not/exist.csv"]);
    assert_eq!(missing.status.code(), Some(1));
    let bad_bins = prsreduct(&["reduce", "--data", s(&data("iris.csv")), "--bins", "1"]);
    assert_eq!(bad_bins.status.code(), Some(2));
    let bad_flag = prsreduct(&[
        "reduce",
        "--data",
        s(&data("iris.csv")),
        "--target",
        "middle",
    ]);
    assert_eq!(bad_flag.status.code(), Some(2));
    let bad_decision = prsreduct(&[
        "core",
        "--data",
        s(&data("table1.csv")),
        "--decision",
        "nope",
    ]);
    assert_eq!(bad_decision.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        for path in [&a, &b] {
            stdout_of(&[
                "reduce",
                "--data",
                s(&data("wine.csv")),
                "--alpha",
                "0.5:1:0.1",
                "--target",
                "upper",
                "--format",
                format,
                "--out",
                s(path),
            ]);
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
}

#[test]
fn json_layout() {
    let text = stdout_of(&[
        "oracle",
        "--data",
        s(&data("table1.csv")),
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["spec"]["command"], "oracle");
    assert_eq!(doc["spec"]["thresholds"][0][0], "3/5");
    let reducts: Vec<String> = doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r["reduct"]
                .as_array()
                .unwrap()
                .iter()
                .map(|a| a.as_str().unwrap())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    assert!(reducts.contains(&"a1,a3,a5,a6".to_string()));
    assert!(reducts.contains(&"a1,a3,a4,a6".to_string()));
}

#[test]
fn verified_records_recheck_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let iris = data("iris.csv");
    for target in ["lower", "upper"] {
        stdout_of(&[
            "reduce",
            "--data",
            s(&iris),
            "--alpha",
            "0.5:1:0.25",
            "--target",
            target,
            "--algo",
            "del",
            "--out",
            s(&out),
        ]);
        let table = DecisionTable::load(&iris, &DatasetConfig::default()).unwrap();
        for row in rows(&fs::read_to_string(&out).unwrap()) {
            assert_eq!(row["verified"], "true");
            let th = Thresholds::new(
                row["alpha"].parse::<Fraction>().unwrap(),
                row["beta"].parse().unwrap(),
            )
            .unwrap();
            let names: Vec<&str> = row["reduct"].split(';').filter(|n| !n.is_empty()).collect();
            let attrs = table.attr_set(&names).unwrap();
            assert!(is_consistent_set(
                &table,
                &attrs,
                &th,
                row["target"].parse::<Target>().unwrap()
            ));
        }
    }
}

#[test]
fn monotonicity_curves() {
    let out = rows(&stdout_of(&[
        "monotonicity",
        "--data",
        s(&data("wine.csv")),
    ]));
    assert_eq!(out.len(), 13);
    let frac =
        |r: &std::collections::HashMap<String, String>, k: &str| r[k].parse::<Fraction>().unwrap();
    for w in out.windows(2) {
        assert!(frac(&w[1], "eta_exact") >= frac(&w[0], "eta_exact"));
        assert!(frac(&w[1], "mu_exact") <= frac(&w[0], "mu_exact"));
    }
    let table = DecisionTable::load(data("wine.csv"), &DatasetConfig::default()).unwrap();
    let th = Thresholds::new("0.6".parse().unwrap(), "0.4".parse().unwrap()).unwrap();
    let ev = prsreduct_core::Evaluator::new(&table, th);
    let last = out.last().unwrap();
    assert_eq!(frac(last, "eta_exact"), ev.eta(&table.all_conditions()));
    assert_eq!(frac(last, "mu_exact"), ev.mu(&table.all_conditions()));
    for col in ["geta_ce", "gmu_kg", "gmu_cg"] {
        let values: Vec<f64> = out.iter().map(|r| r[col].parse().unwrap()).collect();
        assert!(values.iter().all(|v| (0.0..=1.0).contains(v)));
    }

    let dir = tempfile::tempdir().unwrap();
    let one = write(dir.path(), "one.csv", "a,d\n0,0\n1,1\n1,0\n");
    assert_eq!(
        rows(&stdout_of(&["monotonicity", "--data", s(&one)])).len(),
        1
    );

    let greedy = rows(&stdout_of(&[
        "monotonicity",
        "--data",
        s(&data("table1.csv")),
        "--chain",
        "greedy",
    ]));
    let mut added: Vec<&str> = greedy.iter().map(|r| r["added"].as_str()).collect();
    added.sort();
    assert_eq!(added, vec!["a1", "a2", "a3", "a4", "a5", "a6"]);
}

#[test]
fn significance_table() {
    // table1.csv: no single attribute has a pure block, so eta is zero throughout
    let out = rows(&stdout_of(&[
        "significance",
        "--data",
        s(&data("table1.csv")),
    ]));
    assert_eq!(out.len(), 6);
    assert!(out.iter().all(|r| r["eta"].parse::<f64>().unwrap() == 0.0));
    let geta: Vec<f64> = out.iter().map(|r| r["geta_ce"].parse().unwrap()).collect();
    assert!(geta.iter().any(|&g| g != geta[0]));

    // b duplicates a, c is constant
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "syn.csv",
        "a,b,c,e,d\n0,0,5,0,0\n0,0,5,1,0\n1,1,5,0,1\n1,1,5,1,1\n2,2,5,0,1\n2,2,5,2,0\n",
    );
    let out = rows(&stdout_of(&["significance", "--data", s(&path)]));
    let values = |r: &std::collections::HashMap<String, String>| -> Vec<String> {
        [
            "eta", "mu", "geta_ce", "geta_kg", "geta_cg", "gmu_ce", "gmu_kg", "gmu_cg",
        ]
        .iter()
        .map(|k| r[*k].clone())
        .collect()
    };
    assert_eq!(values(&out[0]), values(&out[1]));
    // brute force: Gη-CE of each attribute, from block sizes
    let n = 6.0f64;
    let ce = |sizes: &[f64]| sizes.iter().map(|s| s / n * s.log2()).sum::<f64>();
    let expected_constant = n.log2() - ce(&[6.0]); // η of a constant attribute is 0
    let constant: f64 = out[2]["geta_ce"].parse().unwrap();
    assert!((constant - expected_constant).abs() < 1e-12);
    for (i, r) in out.iter().enumerate() {
        let g: f64 = r["geta_ce"].parse().unwrap();
        assert!(i == 2 || g > constant, "{r:?}");
    }
}

/// `d = a1 xor a2`; `a3` is finer than either and partly informative.
const XOR: &str = "\
a1,a2,a3,d
0,0,0,0
0,0,0,0
0,1,1,1
0,1,2,1
1,0,3,1
1,0,1,1
1,1,2,0
1,1,3,0
";

#[test]
fn rbar_comparison() {
    let t1 = rows(&stdout_of(&["rbar", "--data", s(&data("table1.csv"))]));
    assert_eq!(t1[0]["k"], "4");
    assert_eq!(t1[0]["rbar"].split(';').count(), 4);
    assert_eq!(t1[0]["reduct_consistent"], "true");

    let full = rows(&stdout_of(&[
        "rbar",
        "--data",
        s(&data("table1.csv")),
        "--k",
        "6",
    ]));
    assert_eq!(full[0]["rbar"], "a1;a2;a3;a4;a5;a6");
    assert_eq!(full[0]["rbar_consistent"], "true");

    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "xor.csv", XOR);
    let out = rows(&stdout_of(&["rbar", "--data", s(&path)]));
    assert_eq!(out[0]["reduct"], "a1;a2");
    assert_eq!(out[0]["rbar"], "a1;a3");
    assert_eq!(out[0]["rbar_consistent"], "false");
    // no reduct from the oracle fits inside the ranked pair
    let oracle = rows(&stdout_of(&["oracle", "--data", s(&path)]));
    assert!(!oracle.is_empty());
    for r in &oracle {
        assert!(r["reduct"].split(';').any(|a| a != "a1" && a != "a3"));
    }

    let bad = prsreduct(&["rbar", "--data", s(&path), "--k", "9"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn dataset_options() {
    let dir = tempfile::tempdir().unwrap();
    // decision first, semicolon separated, with a missing cell
    let path = write(
        dir.path(),
        "semi.csv",
        "cls;a;b\nx;1;0\ny;2;?\nx;1;1\ny;2;1\n",
    );
    let config = write(
        dir.path(),
        "cfg.txt",
        "# test\ndelimiter = ;\ndecision_column = cls\nbins = 3\n",
    );
    let out = rows(&stdout_of(&[
        "core",
        "--data",
        s(&path),
        "--config",
        s(&config),
    ]));
    assert_eq!(out[0]["core"], "a");
    let by_index = rows(&stdout_of(&[
        "core",
        "--data",
        s(&path),
        "--config",
        s(&config),
        "--decision",
        "0",
    ]));
    assert_eq!(by_index, out);
    let reduce = rows(&stdout_of(&[
        "reduce",
        "--data",
        s(&path),
        "--config",
        s(&config),
    ]));
    assert_eq!(reduce[0]["length"], "1");
    assert_eq!(reduce[0]["verified"], "true");
}

#[test]
fn timing_column_is_opt_in() {
    let out = rows(&stdout_of(&[
        "reduce",
        "--data",
        s(&data("table1.csv")),
        "--timing",
    ]));
    assert!(out[0]["wall_ms"].parse::<f64>().unwrap() >= 0.0);
}
