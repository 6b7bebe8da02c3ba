use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cyclebook"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_schema(name: &str, v: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    let schema = read_json(&path);
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name}: {msgs:?}\n{v:#}");
}

fn construct(dir: &Path, t: i64, k: i64, n: i64, m: i64) -> (Value, PathBuf) {
    let out = run(&[
        "construct", "--t", &t.to_string(), "--k", &k.to_string(), "--n", &n.to_string(), "--m", &m.to_string(),
        "--out", dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let summary = stdout_json(&out);
    let g6 = PathBuf::from(summary["graph"].as_str().unwrap());
    (summary, g6)
}

#[test]
fn predict_headline_value() {
    let out = run(&["predict", "--t", "2", "--k", "3", "--n", "150", "--m", "100"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["g"], 397);
    assert_eq!(v["case"], "CASE_I");
    assert_schema("prediction.schema.json", &v);
}

#[test]
fn predict_case_three_matches_schema() {
    let out = run(&["predict", "--t", "2", "--k", "4", "--n", "21", "--m", "12"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["g"], 63);
    assert_eq!(v["trace"].as_array().unwrap().len(), 2);
    assert_schema("prediction.schema.json", &v);
}

#[test]
fn predict_odd_cycle_is_domain_error() {
    let out = run(&["predict", "--t", "2", "--k", "3", "--n", "150", "--m", "99"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
}

#[test]
fn strict_changes_only_the_exit_code() {
    let args = ["--t", "2", "--k", "3", "--n", "18", "--m", "12"];
    let lax = run(&[&["predict"], &args[..]].concat());
    let strict = run(&[&["predict", "--strict"], &args[..]].concat());
    assert_eq!(code(&lax), 0);
    assert_eq!(code(&strict), 3);
    assert_eq!(lax.stdout, strict.stdout);
}

#[test]
fn construct_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (summary, g6) = construct(dir.path(), 2, 3, 21, 12);
    assert_eq!(summary["family"], "GAMMA3_PRIME");
    assert_eq!(summary["order"], 51);

    let spec_path = PathBuf::from(summary["spec"].as_str().unwrap());
    assert_schema("witness_spec.schema.json", &read_json(&spec_path));
    let manifest = read_json(Path::new(summary["manifest"].as_str().unwrap()));
    assert_schema("run_manifest.schema.json", &manifest);
    for p in manifest["outputs"].as_array().unwrap() {
        assert!(Path::new(p.as_str().unwrap()).exists());
    }

    let out = run(&[
        "verify", g6.to_str().unwrap(), "--m", "12", "--n", "21", "--k", "3", "--t", "2", "--spec",
        spec_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["expected_order"], 51);
    assert_schema("witness_report.schema.json", &report);
}

#[test]
fn verify_with_smaller_n_finds_a_book() {
    let dir = tempfile::tempdir().unwrap();
    let (_, g6) = construct(dir.path(), 2, 3, 21, 12);
    let out = run(&["verify", g6.to_str().unwrap(), "--m", "12", "--n", "20", "--k", "3"]);
    assert_eq!(code(&out), 2);
    let report = stdout_json(&out);
    assert_eq!(report["book"]["kind"], "BOOK_FOUND");
    assert_eq!(report["book"]["spine"].as_array().unwrap().len(), 3);
    assert_eq!(report["book"]["pages"].as_array().unwrap().len(), 20);
    assert_schema("witness_report.schema.json", &report);
}

#[test]
fn large_m_k1_witness() {
    let dir = tempfile::tempdir().unwrap();
    let (summary, _) = construct(dir.path(), 2, 1, 150, 100);
    assert_eq!(summary["order"], 224);
}

#[test]
fn truncated_graph6_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let (_, g6) = construct(dir.path(), 2, 3, 21, 12);
    let text = std::fs::read_to_string(&g6).unwrap();
    let cut = dir.path().join("cut.g6");
    std::fs::write(&cut, &text[..20]).unwrap();
    let out = run(&["verify", cut.to_str().unwrap(), "--m", "12", "--n", "21", "--k", "3"]);
    assert_eq!(code(&out), 5);
}

#[test]
fn missing_graph_file_is_io_error() {
    let out = run(&["verify", "/nonexistent/graph.g6", "--m", "12", "--n", "21", "--k", "3"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn unwritable_output_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let out = run(&[
        "construct", "--t", "2", "--k", "3", "--n", "21", "--m", "12", "--out", blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn json_graph_bundle_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "construct", "--t", "3", "--k", "2", "--n", "30", "--m", "14", "--format", "json", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let path = PathBuf::from(stdout_json(&out)["graph"].as_str().unwrap().to_string());
    assert!(path.to_str().unwrap().ends_with(".graph.json"));
    assert_schema("graph.schema.json", &read_json(&path));
    let out = run(&["verify", path.to_str().unwrap(), "--m", "14", "--n", "30", "--k", "2", "--t", "3"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn exhaustive_mode_over_budget() {
    let dir = tempfile::tempdir().unwrap();
    let (_, g6) = construct(dir.path(), 2, 4, 150, 100);
    let out = run(&["verify", g6.to_str().unwrap(), "--m", "100", "--n", "150", "--k", "4", "--mode", "exhaustive"]);
    assert_eq!(code(&out), 6);
    let out = run(&["verify", g6.to_str().unwrap(), "--m", "100", "--n", "150", "--k", "4", "--mode", "structural"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn structural_mode_rejects_non_block_clique() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.json");
    std::fs::write(&path, r#"{"order":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}"#).unwrap();
    let out = run(&["verify", path.to_str().unwrap(), "--m", "4", "--n", "1", "--k", "1", "--mode", "structural"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn table_csv_and_markdown_agree() {
    let csv = run(&["table", "--k", "3", "--m", "100", "--t", "2..3", "--format", "csv"]);
    assert_eq!(code(&csv), 0);
    let csv = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,n,p,q,case,sigma,ell,r_k,r,branch,g");
    assert_eq!(lines.len(), 1 + 2 * 99);

    let md = run(&["table", "--k", "3", "--m", "100", "--t", "2..3"]);
    assert_eq!(code(&md), 0);
    let md = String::from_utf8(md.stdout).unwrap();
    let md_rows: Vec<Vec<String>> = md
        .lines()
        .skip(2)
        .map(|l| l.trim_matches('|').split('|').map(|c| c.trim().to_string()).collect())
        .collect();
    let csv_rows: Vec<Vec<String>> = lines[1..].iter().map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(md_rows, csv_rows);

    // every row agrees with predict
    let row: Vec<&str> = lines[150].split(',').collect();
    let pred = run(&["predict", "--t", row[0], "--k", "3", "--n", row[1], "--m", "100"]);
    assert_eq!(stdout_json(&pred)["g"].to_string(), row[10]);
}

#[test]
fn table_rejects_bad_ranges() {
    for t in ["1..1", "3..2", "x..4"] {
        let out = run(&["table", "--k", "3", "--m", "100", "--t", t]);
        assert_eq!(code(&out), 2, "t = {t}");
    }
}

#[test]
fn oracle_small_value_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["oracle", "--m", "4", "--n", "1", "--k", "1", "--max", "6", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let last: Value = serde_json::from_str(stdout.lines().last().unwrap()).unwrap();
    assert_eq!(last["result"]["kind"], "value");
    assert_eq!(last["result"]["value"], 4);

    let scan = read_json(&dir.path().join("oracle_m4_n1_k1_max6.json"));
    assert_schema("oracle_scan.schema.json", &scan);
    let manifest = read_json(&dir.path().join("oracle_m4_n1_k1_max6.manifest.json"));
    assert_schema("run_manifest.schema.json", &manifest);
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 1);
}

#[test]
fn oracle_refuses_large_orders() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["oracle", "--m", "4", "--n", "1", "--k", "1", "--max", "12", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 6);
}

#[test]
fn oracle_output_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let go = |threads: &str| {
        bin()
            .env("CYCLEBOOK_THREADS", threads)
            .args(["oracle", "--m", "6", "--n", "2", "--k", "2", "--max", "7", "--out", dir.path().to_str().unwrap()])
            .output()
            .unwrap()
    };
    let (a, b) = (go("1"), go("3"));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn round_trip_sample_of_the_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let mut tuples = 0;
    for t in 2..=4i64 {
        for k in 1..=6i64 {
            let m = 12 + 2 * ((t + k) % 7);
            for n in [(t - 1) * (m - 1) + 1, (t - 1) * (m - 1) + (m - 1) / 2, t * (m - 1)] {
                let out = run(&[
                    "construct", "--t", &t.to_string(), "--k", &k.to_string(), "--n", &n.to_string(), "--m",
                    &m.to_string(), "--out", dir.path().to_str().unwrap(),
                ]);
                if code(&out) == 4 {
                    continue;
                }
                assert_eq!(code(&out), 0, "({t},{k},{n},{m})");
                let s = stdout_json(&out);
                let out = run(&[
                    "verify", s["graph"].as_str().unwrap(), "--m", &m.to_string(), "--n", &n.to_string(), "--k",
                    &k.to_string(), "--t", &t.to_string(), "--spec", s["spec"].as_str().unwrap(),
                ]);
                assert_eq!(code(&out), 0, "({t},{k},{n},{m}): {}", String::from_utf8_lossy(&out.stdout));
                tuples += 1;
            }
        }
    }
    assert!(tuples >= 40, "{tuples}");
}
