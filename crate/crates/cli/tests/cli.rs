use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["scoreplay"];
    argv.extend_from_slice(args);
    let status = scoreplay_cli::run(argv, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn eval_example_game() {
    let (status, out, err) = run(&["eval", "--game", "{4|3|2}"]);
    assert_eq!(status, 0, "{err}");
    assert_eq!(out, "sl=4 sr=2 outcome=L impartial=true\n");
    assert!(err.is_empty());
}

#[test]
fn eval_structured() {
    let (_, out, _) = run(&["eval", "--game", "{1|0|-2}", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["impartial"], false);
    assert_eq!(v["outcome"], "N");
    assert_eq!(v["sr"], "-2");
}

#[test]
fn table_matches_golden_file() {
    let (status, out, _) = run(&["table", "--rules", &data("sub45.toml"), "--max-n", "15"]);
    assert_eq!(status, 0);
    assert_eq!(out, std::fs::read_to_string(data("sub45_table.csv")).unwrap());
    let (_, builtin, _) = run(&["table", "--rules", "sub45", "--max-n", "15"]);
    assert_eq!(builtin, out);
}

#[test]
fn table_with_fixed_heap_and_second_ruleset() {
    let (status, out, err) =
        run(&["table", "--rules", &data("two_rulesets.toml"), "--fixed", "2@B", "--max-n", "4", "--format", "plain"]);
    assert_eq!(status, 0, "{err}");
    assert_eq!(out.lines().count(), 5);
    assert!(out.starts_with("gs(0) = 1/2\n"));
}

#[test]
fn table_structured_has_provenance() {
    let (_, out, _) = run(&["table", "--rules", &data("o3333p2.toml"), "--max-n", "10", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rules"][0]["name"], "o3333p2");
    assert_eq!(v["rules"][0]["digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["values"][5]["value"], "0");
    assert!(v["sequence_digest"].is_string());
}

#[test]
fn period_of_3333() {
    let (status, out, _) = run(&["period", "--rules", &data("o3333p2.toml"), "--max-n", "60"]);
    assert_eq!(status, 0);
    assert!(out.starts_with("preperiod=0 period=5 checked_up_to=60 certified=true certified_from=5 "), "{out}");
}

#[test]
fn period_with_fixed_heap_is_empirical() {
    let (status, out, err) = run(&["period", "--rules", "sub45", "--fixed", "3@sub45", "--max-n", "120"]);
    assert_eq!(status, 0);
    assert!(out.contains("certified=false"));
    assert!(err.contains("empirical"));
}

#[test]
fn gs_reports_best_move() {
    let (status, out, _) = run(&["gs", "--rules", "sub45", "--position", "13@sub45"]);
    assert_eq!(status, 0);
    assert_eq!(out, "value=3\nbest: take 4 from 13@sub45 leaving 9 (points 4, value 3)\n");
    let (_, out, _) = run(&["gs", "--rules", "sub45", "--position", ""]);
    assert_eq!(out, "value=0\n");
}

#[test]
fn lemma_passes_and_fails_cleanly() {
    let (status, out, _) = run(&["lemma", "--set", "4,5", "--imax", "15"]);
    assert_eq!(status, 0);
    assert_eq!(out, "set=4,5 k=5 imax=15 failures=0 bound_failures=0 result=pass\n");
    let (status, _, err) = run(&["lemma", "--set", "4,x", "--imax", "3"]);
    assert_ne!(status, 0);
    assert!(err.contains("--set `4,x`"));
}

#[test]
fn sum_round_trips() {
    let (status, out, _) =
        run(&["sum", "--game", "{2,{1|2|3}|0|-2,{-3|-2|-1}}", "--game", "{2,{1|2|3}|0|-2,{-3|-2|-1}}", "--eval"]);
    assert_eq!(status, 0);
    let mut lines = out.lines();
    let notation = lines.next().unwrap();
    assert_eq!(lines.next().unwrap(), "sl=-1 sr=1 outcome=P");
    let (_, again, _) = run(&["eval", "--game", notation]);
    assert!(again.starts_with("sl=-1 sr=1 outcome=P"));
}

#[test]
fn tree_of_nested_game() {
    let (_, out, _) = run(&["tree", "--game", "{2,{11|4|-3}|3|4,{9|2|-5}}"]);
    assert_eq!(out.lines().count(), 9);
    assert_eq!(out.lines().next(), Some("3"));
}

#[test]
fn oracle_small() {
    let (status, out, _) =
        run(&["oracle", "--rules", &data("sub45.toml"), &data("o26.toml"), "--max-total", "8", "--impartial"]);
    assert_eq!(status, 0);
    assert!(out.ends_with("failures=0 result=pass\n"), "{out}");
}

#[test]
fn scan_writes_matching_files() {
    let dir = std::env::temp_dir().join(format!("scoreplay-scan-{}", std::process::id()));
    let dir_s = dir.to_string_lossy().into_owned();
    let (status, out, err) = run(&["scan", "--spec", &data("scan_mixed.toml"), "--out-dir", &dir_s]);
    assert_eq!(status, 0, "{err}");
    assert_eq!(std::fs::read_to_string(dir.join("scan.csv")).unwrap(), out);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("scan.json")).unwrap()).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), out.lines().count() - 1);
    assert!(out.contains(",o3333p2,3333,2 2 2 2,,60,periodic,0,5,true,5,out,,not_applicable,,"));
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn diagnostics_name_the_input() {
    let cases: &[(&[&str], &str)] = &[
        (&["eval", "--game", "{4|3"], "--game `{4|3`"),
        (&["table", "--rules", "nosuch", "--max-n", "3"], "--rules `nosuch`"),
        (&["gs", "--rules", "sub45", "--position", "4@zz"], "--position `4@zz`"),
        (&["scan", "--spec", "/nonexistent/spec.toml"], "--spec `/nonexistent/spec.toml`"),
        (&["table", "--rules", "o26", "--max-n", "60", "--budget", "100"], "budget"),
    ];
    for (args, needle) in cases {
        let (status, out, err) = run(args);
        assert_ne!(status, 0, "{args:?}");
        assert!(out.is_empty(), "{args:?} wrote data: {out}");
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn bad_rules_file() {
    let path = std::env::temp_dir().join(format!("scoreplay-bad-{}.toml", std::process::id()));
    std::fs::write(&path, "name = \"x\"\ndigits = [9]\npoints = [1]\n").unwrap();
    let p = path.to_string_lossy().into_owned();
    let (status, _, err) = run(&["table", "--rules", &p, "--max-n", "3"]);
    assert_ne!(status, 0);
    assert!(err.contains("outside 0..7"), "{err}");
    let _ = std::fs::remove_file(path);
}

#[test]
fn usage_errors_go_to_stderr() {
    let (status, out, err) = run(&["frobnicate"]);
    assert_eq!(status, 2);
    assert!(out.is_empty());
    assert!(!err.is_empty());
}

#[test]
fn binary_is_deterministic() {
    let exe = env!("CARGO_BIN_EXE_scoreplay");
    let args = ["scan", "--spec", &data("scan_mixed.toml")];
    let a = Command::new(exe).args(args).output().unwrap();
    let b = Command::new(exe).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stderr.is_empty());
}
