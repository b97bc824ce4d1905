use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use heckeposet::io::{from_json, read_expansion_tsv};
use heckeposet::tableaux::poset_dual_immaculate;
use heckeposet::{Basis, LabeledPoset, QsymElement};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckeposet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write_poset(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

fn edges(dot: &str) -> BTreeSet<(usize, usize, u32)> {
    dot.lines()
        .filter(|l| l.contains("->"))
        .map(|l| {
            let (lhs, attrs) = l.split_once('[').unwrap();
            let (u, v) = lhs.split_once("->").unwrap();
            let w = attrs.trim_start_matches("penwidth=").trim_end_matches("];");
            (u.trim().parse().unwrap(), v.trim().parse().unwrap(), w.parse().unwrap())
        })
        .collect()
}

#[test]
fn expand_final_example_rows() {
    let dimm = stdout(&["expand", "--family", "dimm", "--alpha", "2,1,2"]);
    assert!(dimm.lines().any(|l| l == "(4,1) 2"), "{dimm}");
    let ext = stdout(&["expand", "--family", "ext", "--alpha", "2,1,2"]);
    assert!(ext.lines().any(|l| l == "(4,1) 1"), "{ext}");
}

#[test]
fn expand_routes_agree() {
    for family in ["dimm", "ext"] {
        let linear = stdout(&["expand", "--family", family, "--alpha", "2,1,2"]);
        for route in ["starred", "strips"] {
            assert_eq!(
                stdout(&["expand", "--family", family, "--alpha", "2,1,2", "--route", route]),
                linear
            );
        }
    }
    let qs = stdout(&["expand", "--family", "qs", "--alpha", "1,2,1"]);
    assert_eq!(
        stdout(&["expand", "--family", "qs", "--alpha", "1,2,1", "--route", "starred"]),
        qs
    );
}

#[test]
fn expand_poset_file_in_f_basis() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write_poset(dir.path(), "chain3.json", r#"{"n": 3, "covers": [[1, 2], [2, 3]]}"#);
    assert_eq!(
        stdout(&["expand", "--family", "poset", "--covers-file", &chain, "--basis", "F"]),
        "F_(3) 1\n"
    );
}

#[test]
fn expansions_round_trip_through_readers() {
    for family in ["dimm", "rext", "yqs"] {
        let args = ["expand", "--family", family, "--alpha", "3,1,2"];
        let json = stdout(&[&args[..], &["--format", "json"]].concat());
        let x: QsymElement = from_json(&json).unwrap();
        assert_eq!(x.basis(), Basis::Psi);
        let tsv = read_expansion_tsv(&stdout(&[&args[..], &["--format", "tsv"]].concat())).unwrap();
        assert_eq!(heckeposet::io::expansion_to_qsym(&tsv), x);
        let f: QsymElement = from_json(&stdout(&[&args[..], &["--format", "json", "--basis", "F"]].concat())).unwrap();
        assert_eq!(x.to_fundamental(), f);
    }
}

#[test]
fn hasse_running_example_and_chain() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_poset(dir.path(), "p.json", r#"{"n": 5, "covers": [[5,1],[1,3],[1,4],[2,4]]}"#);
    let dot = stdout(&["hasse", "--covers-file", &p]);
    assert!(dot.starts_with("digraph"));
    let e = edges(&dot);
    assert_eq!(e.len(), 4);
    assert_eq!(e.iter().filter(|x| x.2 == 2).count(), 1);
    let chain = write_poset(dir.path(), "c.json", r#"{"n": 3, "covers": [[1,2],[2,3]]}"#);
    let e = edges(&stdout(&["hasse", "--covers-file", &chain]));
    assert_eq!(e, BTreeSet::from([(1, 2, 1), (2, 3, 1)]));
}

#[test]
fn hasse_dual_immaculate_matches_covers() {
    let dot = stdout(&["hasse", "--family", "dimm", "--alpha", "3,2,4"]);
    let p = poset_dual_immaculate(&"3,2,4".parse().unwrap());
    let expected: BTreeSet<_> = p
        .covers()
        .into_iter()
        .map(|(u, v)| (u, v, if u > v { 2 } else { 1 }))
        .collect();
    assert_eq!(edges(&dot), expected);
}

#[test]
fn poset_and_interval_commands() {
    let json = stdout(&["interval", "--side", "right", "--sigma", "123", "--rho", "321"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
    let p: LabeledPoset = serde_json::from_value(v["poset"].clone()).unwrap();
    assert_eq!(p, LabeledPoset::antichain(3));
    let dir = tempfile::tempdir().unwrap();
    let file = write_poset(dir.path(), "p.json", r#"{"n": 5, "covers": [[5,1],[1,3],[1,4],[2,4]]}"#);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["poset", "--covers-file", &file])).unwrap();
    assert_eq!(v["sigma_r"].as_array().unwrap().len(), 7);
    assert_eq!(v["regular"], false);
    assert!(!run(&["interval", "--side", "right", "--sigma", "321", "--rho", "123"])
        .status
        .success());
}

#[test]
fn sink_tableau_and_build_d() {
    let text = stdout(&[
        "sink-tableau",
        "--tableau",
        "2 1/6 5 4/7 3/11 10 9 8",
        "--format",
        "text",
    ]);
    assert!(
        text.contains("4 1/8 6 2/9 5/11 10 7 3\t4,1,5,8,6,2,9,11,10,7,3"),
        "{text}"
    );
    let all: serde_json::Value = serde_json::from_str(&stdout(&["sink-tableau", "--alpha", "2,3,2,4"])).unwrap();
    assert_eq!(all.as_array().unwrap().len(), 3);
    let d = stdout(&[
        "build-d",
        "--alpha",
        "1,1,2,2,1,1,1",
        "--rho",
        "841539762",
        "--format",
        "text",
    ]);
    assert!(d.contains("R\t{1,4,8} {3,5} {2,6,7,9}"), "{d}");
}

#[test]
fn verify_suites_pass_and_are_deterministic() {
    for suite in ["interval", "liu-weselcouch", "relations"] {
        let a = stdout(&["verify", "--suite", suite, "--n", "4"]);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["passed"], true, "{suite}");
        assert_eq!(stdout(&["verify", "--suite", suite, "--n", "4"]), a);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.tsv");
    let printed = stdout(&["expand", "--family", "dimm", "--alpha", "2,1,2", "--format", "tsv"]);
    stdout(&[
        "expand",
        "--family",
        "dimm",
        "--alpha",
        "2,1,2",
        "--format",
        "tsv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(fs::read_to_string(path).unwrap(), printed);
}

#[test]
fn bad_inputs_fail_with_message() {
    for args in [
        &["expand", "--family", "foo", "--alpha", "1"][..],
        &["expand", "--family", "dimm", "--alpha", "2,0"],
        &["expand", "--family", "qs", "--alpha", "2,1", "--route", "strips"],
        &[
            "expand", "--family", "dimm", "--alpha", "2,1", "--route", "starred", "--max-n", "12",
        ],
        &["expand", "--family", "dimm", "--alpha", "5,5", "--route", "starred"],
        &["expand", "--family", "dimm", "--alpha", "7,7"],
        &["verify", "--suite", "nope"],
        &["hasse", "--covers-file", "/nonexistent.json"],
    ] {
        let out = run(args);
        assert!(!out.status.success(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{args:?}");
    }
}
