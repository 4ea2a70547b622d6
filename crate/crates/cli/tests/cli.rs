use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyquartic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(o: &Output) -> Vec<Value> {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

const RECORD_KEYS: [&str; 18] = [
    "a",
    "b",
    "g",
    "m",
    "x",
    "y",
    "z",
    "t",
    "chi",
    "poly",
    "irreducible",
    "is_c4",
    "conductor",
    "disc_poly",
    "disc_field",
    "index_square",
    "monogenic",
    "reasons",
];

#[test]
fn certify_z_five() {
    let o = run(&["certify", "--z", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &stdout_lines(&o)[0];
    assert_eq!(v["conductor"], "12259");
    assert_eq!(v["disc_field"], "80100882173");
    assert_eq!(v["monogenic"], true);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = RECORD_KEYS.to_vec();
    expected.sort_unstable();
    let mut keys_sorted = keys.clone();
    keys_sorted.sort_unstable();
    assert_eq!(keys_sorted, expected);
}

#[test]
fn certify_non_monogenic_member() {
    let o = run(&["certify", "--z", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &stdout_lines(&o)[0];
    assert_eq!(v["monogenic"], false);
    assert!(v["reasons"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r.as_str().unwrap().starts_with("index-divisible-by")));
}

#[test]
fn certify_params_and_poly() {
    let o = run(&["certify", "--params", "1,2,4,1,1,2,2,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &stdout_lines(&o)[0];
    assert_eq!(v["poly"], "-19,32,-11,-2,1");
    assert_eq!(v["conductor"], "20");

    let o = run(&["certify", "--poly", "-1069,-747,-149,-3,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_lines(&o)[0]["conductor"], "371");
}

#[test]
fn family_fz_small() {
    let o = run(&[
        "family", "--family", "fz", "--z", "0", "--z", "1", "--z", "-1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let polys: Vec<Value> = stdout_lines(&o)
        .into_iter()
        .map(|v| v["poly"].clone())
        .collect();
    assert_eq!(polys, ["2,0,4,0,1", "1,-1,1,-1,1", "1,1,1,1,1"]);
}

#[test]
fn family_range() {
    let o = run(&["family", "--family", "b", "--from", "0", "--to", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = stdout_lines(&o);
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["poly"], "-19,32,-11,-2,1");
}

#[test]
fn search_is_identical_across_shards() {
    let args = [
        "search", "--a-max", "30", "--b-max", "10", "--x-max", "3", "--g-max", "600",
    ];
    let one = run(&[&args[..], &["--jobs", "1"]].concat());
    let three = run(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
    assert!(String::from_utf8_lossy(&one.stderr).contains("hits"));
    let lines = stdout_lines(&one);
    assert!(lines
        .iter()
        .any(|v| v["a"] == "7" && v["g"] == "7" && v["z"] == "3"));
}

#[test]
fn search_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hits.jsonl");
    let o = run(&[
        "search",
        "--a-max",
        "7",
        "--b-max",
        "2",
        "--x-max",
        "1",
        "--g-max",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.lines().count() >= 1);
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v.as_object().unwrap().len(), RECORD_KEYS.len());
    }
}

#[test]
fn xy_search_and_x_check() {
    let o = run(&["xy-search", "--c", "2", "--g-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout_lines(&o)
        .iter()
        .any(|v| v["g"] == "4" && v["m"] == "5" && v["sign"] == "+"));

    let o = run(&["x-check", "--x", "11", "--x", "13"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Vec<Value> = stdout_lines(&o)
        .into_iter()
        .map(|v| v["result"].clone())
        .collect();
    assert_eq!(r, [true, false]);

    let o = run(&["x-check", "--from", "9", "--to", "16"]);
    let xs: Vec<Value> = stdout_lines(&o)
        .into_iter()
        .map(|v| v["x"].clone())
        .collect();
    assert_eq!(xs, ["9", "11", "13", "15"]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["certify"],
        &["certify", "--z", "1", "--poly", "1,1,1,1,1"],
        &["certify", "--params", "1,2,3"],
        &["x-check", "--x", "6"],
        &["xy-search", "--c", "1", "--g-max", "5"],
        &["search", "--jobs", "0"],
        &["family", "--family", "fz"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn corpus_shipped_passes() {
    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus.json");
    let o = run(&["corpus", "--file", file]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = &stdout_lines(&o)[0];
    assert_eq!(v["failed"], 0);
    assert_eq!(v["passed"], 6);
}

#[test]
fn corpus_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.json");
    fs::write(
        &path,
        r#"[{"label":"wrong","conductor":"12258","field_disc":"80100882173","source":"t","family_z":"5"}]"#,
    )
    .unwrap();
    let o = run(&["corpus", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("wrong"));
    assert_eq!(stdout_lines(&o)[0]["failed"], 1);
}

#[test]
fn malformed_corpus_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.json");
    fs::write(&path, "{not json").unwrap();
    let o = run(&["corpus", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
