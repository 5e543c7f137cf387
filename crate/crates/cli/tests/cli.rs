use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_autoreal"));
    c.env_remove("AUTOREAL_MAX_DEPTH");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    let v =
        serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON from {args:?}: {e}"));
    (o.status.code().unwrap(), v)
}

fn fixture_path(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn bound_prints_twenty() {
    let o = run(&["bound", "--d", "2", "--k", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "20");
    // derived from the Thue-Morse automaton
    let o = run(&["bound", "--input", &fixture_path("thue_morse.json")]);
    assert_eq!(stdout(&o).trim(), "20");
}

#[test]
fn tmm_report() {
    let (code, v) = json(&["tmm", "--base", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["j"], 21);
    assert_eq!(v["lower_ok"], true);
    assert_eq!(v["upper_ok"], true);
    assert_eq!(v["agreement"], 20);
    // the upper bound fails outside base 2: a failed certification
    let (code, v) = json(&["tmm", "--base", "3", "--n", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["upper_ok"], false);
}

#[test]
fn malformed_input_exits_two() {
    let dir = std::env::temp_dir().join(format!("autoreal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"k": 2, "states": ["q0"], "delta": {"q0": ["q0"]}, "q0": "q0", "output": {"q0": "1"}, "convention": "LSB_FIRST"}"#).unwrap();
    let o = run(&["kernel", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("transitions"));

    std::fs::write(&bad, r#"{"hello": 1}"#).unwrap();
    let o = run(&["kernel", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown schema"));

    let o = run(&[
        "kernel",
        "--input",
        dir.join("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn schema_is_detected() {
    let dfao = fixture_path("thue_morse.json");
    let morphic = fixture_path("thue_morse_morphic.json");
    for path in [&dfao, &morphic] {
        let o = run(&["prefix", "--input", path, "--len", "8"]);
        assert_eq!(stdout(&o).trim(), "01101001");
    }
    let (_, v) = json(&["cobham", "--input", &dfao]);
    assert!(v.get("sigma").is_some());
    let (_, v) = json(&["cobham", "--input", &morphic]);
    assert!(v.get("delta").is_some());
}

#[test]
fn ladder_rows_and_determinism() {
    let args = [
        "--format",
        "json",
        "ladder",
        "--fixture",
        "baum-sweet",
        "--base",
        "2",
        "--n-max",
        "4",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    for r in rows {
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            ["holds", "index", "inequality", "margin_den", "margin_num"]
        );
    }
    assert_eq!(v["holds"], true);
}

#[test]
fn epsilon_is_validated() {
    let o = run(&[
        "ladder",
        "--fixture",
        "baum-sweet",
        "-b",
        "2",
        "--epsilon",
        "-1/4",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["ladder", "--fixture", "baum-sweet", "-b", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn overlap_hypothesis_missing() {
    let o = run(&["overlap-ladder", "--fixture", "thue-morse", "-b", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "overlap-ladder",
        "--fixture",
        "k3-overlap",
        "-b",
        "3",
        "--n-max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn depth_cap_from_environment() {
    let o = bin()
        .env("AUTOREAL_MAX_DEPTH", "100")
        .args([
            "exponent",
            "--fixture",
            "thue-morse",
            "-b",
            "2",
            "--depth",
            "512",
        ])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("AUTOREAL_MAX_DEPTH"));
}

#[test]
fn lemma_dist_examples() {
    let (code, v) = json(&[
        "lemma-dist",
        "-b",
        "10",
        "--u",
        "1",
        "--v",
        "23",
        "--stream",
        "12323944",
        "--j",
        "6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["bound"], "1/100000000");
    // digits already differ before j
    let o = run(&[
        "lemma-dist",
        "-b",
        "10",
        "--u",
        "1",
        "--v",
        "23",
        "--stream",
        "1999",
        "--j",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn continued_fractions() {
    let (code, v) = json(&["cf", "--quotients", "[0, 1, 2, 3]"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["convergents"][3],
        serde_json::json!({"num": "7", "den": "10"})
    );
    let (_, v) = json(&["cf-quadratic", "--period", "[1]", "--terms", "6"]);
    assert_eq!(v["quadratic"]["poly"], serde_json::json!(["-1", "1", "1"]));
    let (code, v) = json(&[
        "lemma-dist2",
        "--alpha",
        "[0,1,1,1,1]",
        "--xi",
        "[0,1,1,2,1]",
        "--bound",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["bound"], "1/256");
    let (code, _) = json(&["cf-ladder", "--fixture", "cf-ab", "--n-max", "3"]);
    assert_eq!(code, 0);
}

#[test]
fn beta_commands() {
    let (code, v) = json(&["beta-classify", "--poly", "[1, -1, -1, -1, 1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["classification"], "SALEM");
    let (_, v) = json(&["beta-classify", "--poly", "[-1, -1, 1]"]);
    assert_eq!(v["classification"], "PISOT");
    let o = run(&["beta-classify", "--poly", "[2, 0, 1]"]);
    assert_eq!(o.status.code(), Some(2));

    let (code, v) = json(&[
        "beta-expand",
        "--poly",
        "[-1,-1,1]",
        "--x",
        "1/2",
        "--n",
        "6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["digits"], serde_json::json!([0, 1, 0, 0, 1, 0]));

    let (code, v) = json(&[
        "beta-ladder",
        "--fixture",
        "thue-morse-morphic",
        "--poly",
        "[-1,-1,1]",
        "--n-max",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["threshold"], 1);

    let (code, v) = json(&[
        "lemma-dist-prime",
        "--poly",
        "[-1,-1,1]",
        "--u",
        "1",
        "--v",
        "00",
        "--xi",
        "1000100000000000",
        "--j",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
}

#[test]
fn automaton_commands() {
    assert_eq!(
        stdout(&run(&["eval", "--fixture", "thue-morse", "--n", "7"])).trim(),
        "1"
    );
    assert_eq!(
        stdout(&run(&["prefix", "--fixture", "baum-sweet", "--len", "21"])).trim(),
        "110110010100100110010"
    );
    let (_, v) = json(&["kernel", "--fixture", "thue-morse"]);
    assert_eq!(v["size"], 2);
    let (_, v) = json(&["reverse", "--fixture", "thue-morse"]);
    assert_eq!(v["convention"], "MSB_FIRST");
    let (_, v) = json(&["minimize", "--fixture", "baum-sweet"]);
    assert!(v["states"].as_array().unwrap().len() <= 4);
}
