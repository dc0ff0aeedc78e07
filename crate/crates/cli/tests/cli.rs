use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kset_core::graph::{from_graph6, Graph};
use serde_json::Value;

fn kset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kset")).args(args).output().expect("run kset")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(p).unwrap()
}

fn write_graph(dir: &Path, name: &str, family: &[&str]) -> PathBuf {
    let p = dir.join(name);
    let mut args = vec!["construct"];
    args.extend_from_slice(family);
    args.extend_from_slice(&["--graph-out", p.to_str().unwrap()]);
    assert_eq!(code(&kset(&args)), 0);
    p
}

/// (v, k, lambda, mu) by counting common neighbours directly.
fn srg_by_counting(g: &Graph) -> Option<(usize, usize, usize, usize)> {
    let n = g.order();
    let k = g.degree(0);
    let (mut lambda, mut mu) = (None, None);
    for x in 0..n {
        if g.degree(x) != k {
            return None;
        }
        for y in x + 1..n {
            let c = (0..n).filter(|&z| g.has_edge(x, z) && g.has_edge(y, z)).count();
            let slot = if g.has_edge(x, y) { &mut lambda } else { &mut mu };
            if slot.is_some_and(|s| s != c) {
                return None;
            }
            *slot = Some(c);
        }
    }
    Some((n, k, lambda?, mu?))
}

#[test]
fn construct_matches_golden_files() {
    for (args, file) in [
        (&["construct", "paley", "13"][..], "paley_13.g6"),
        (&["construct", "vo", "3", "2", "-"][..], "vo_3_2_minus.g6"),
        (&["construct", "schlafli"][..], "schlafli.g6"),
    ] {
        let mut a = args.to_vec();
        a.extend_from_slice(&["--format", "text"]);
        let out = kset(&a);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out), golden(file), "{file}");
    }
    assert_eq!(stdout(&kset(&["construct", "paley", "13"])), golden("paley_13.json"));
}

#[test]
fn golden_graphs_are_what_they_claim() {
    let p13 = from_graph6(&golden("paley_13.g6")).unwrap();
    let squares: Vec<usize> = (1..13).map(|x| x * x % 13).collect();
    for x in 0..13 {
        for y in 0..13 {
            assert_eq!(p13.has_edge(x, y), x != y && squares.contains(&((x + 13 - y) % 13)));
        }
    }
    let vo = from_graph6(&golden("vo_3_2_minus.g6")).unwrap();
    assert_eq!(srg_by_counting(&vo), Some((64, 27, 10, 12)));
    let s = from_graph6(&golden("schlafli.g6")).unwrap();
    assert_eq!(srg_by_counting(&s), Some((27, 16, 10, 8)));
}

#[test]
fn repeated_runs_are_identical() {
    for args in [&["construct", "unitary", "14"][..], &["verify", "appendix1"], &["replay"]] {
        let a = kset(args);
        let b = kset(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&kset(&["construct", "paley", "7"])), 2);
    assert_eq!(code(&kset(&["construct", "nosuchfamily"])), 2);
    assert_eq!(code(&kset(&["screen", "--params", "1,2,3", "--order", "6"])), 2);
    assert_eq!(code(&kset(&["screen", "--params", "10,3,1,1", "--order", "6"])), 2);
    assert_eq!(code(&kset(&["verify", "thm9"])), 2);
    assert_eq!(code(&kset(&["--budget-ir-nodes", "0", "verify", "appendix1"])), 2);
    assert_eq!(code(&kset(&["analyze", "/nonexistent/graph.g6"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.g6");
    fs::write(&bad, "not a graph6 string\n").unwrap();
    assert_eq!(code(&kset(&["analyze", bad.to_str().unwrap()])), 2);
}

#[test]
fn analyze_reports() {
    let dir = tempfile::tempdir().unwrap();
    let u21 = write_graph(dir.path(), "u21.g6", &["unitary", "21"]);
    let r = json(&kset(&["analyze", u21.to_str().unwrap()]));
    assert_eq!(r["automorphism_group"]["order"], "12096");
    assert_eq!(r["automorphism_group"]["orbitals"]["rank"], 3);
    assert_eq!(r["automorphism_group"]["orbitals"]["subdegrees"], serde_json::json!([1, 14, 21]));
    assert_eq!(r["srg"]["k"], 21);

    let hs = write_graph(dir.path(), "hs.g6", &["hs"]);
    let r = json(&kset(&["analyze", hs.to_str().unwrap()]));
    assert_eq!(r["automorphism_group"]["order"], "88704000");
    assert_eq!(r["srg"], serde_json::json!({"v": 100, "k": 22, "lambda": 0, "mu": 6}));

    // edge-list input, a single vertex
    let k1 = dir.path().join("k1.txt");
    fs::write(&k1, "1 0\n").unwrap();
    let out = kset(&["analyze", k1.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["srg"], Value::Null);
    assert_eq!(r["automorphism_group"]["orbitals"]["rank"], 1);
}

#[test]
fn analyze_with_supplied_group() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "p13.g6", &["paley", "13"]);
    let gens = dir.path().join("aut.json");
    let out = kset(&["analyze", g.to_str().unwrap(), "--save-group", gens.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = json(&kset(&["analyze", g.to_str().unwrap(), "--group", gens.to_str().unwrap()]));
    assert_eq!(r["group"]["order"], "78");
    assert_eq!(r["group"]["orbitals"]["subdegrees"], serde_json::json!([1, 6, 6]));
    // a group that is not an automorphism group
    fs::write(&gens, r#"{"degree": 13, "generators": [[1,0,2,3,4,5,6,7,8,9,10,11,12]]}"#).unwrap();
    assert_eq!(code(&kset(&["analyze", g.to_str().unwrap(), "--group", gens.to_str().unwrap()])), 2);
}

#[test]
fn uncertified_search_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "u21.g6", &["unitary", "21"]);
    let out = kset(&["--budget-ir-nodes", "1", "analyze", g.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["automorphism_group"]["certified"], false);
    let out = kset(&["--budget-orbit-nodes", "10", "homtest", g.to_str().unwrap(), "--k", "3"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn homtest_verdicts_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "schlafli.g6", &["schlafli"]);
    let g = g.to_str().unwrap();
    assert_eq!(code(&kset(&["homtest", g, "--k", "4", "--mode", "full"])), 0);
    let out = kset(&["homtest", g, "--k", "5", "--mode", "set"]);
    assert_eq!(code(&out), 1);
    let r = json(&out);
    assert_eq!(r["verdict"], false);
    assert_eq!(r["witness"]["order"], 5);
    assert_eq!(r["witness_checked"], true);
    assert_eq!(code(&kset(&["homtest", g, "--k", "2", "--mode", "partial"])), 2);
}

#[test]
fn census_agrees_with_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "petersen.g6", &["petersen"]);
    let r = json(&kset(&["census", g.to_str().unwrap(), "--m", "3"]));
    assert_eq!(r["exhaustive_counts_agree"], true);
    assert_eq!(r["srg_formula_agrees"], true);
    let total: u64 = r["classes"].as_array().unwrap().iter().map(|e| e["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 120);
}

#[test]
fn screen_verdicts() {
    let out = kset(&["screen", "--params", "36,14,4,6", "--order", "2^6*3^3*7"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["first_failing"], 2);
    let out = kset(&["screen", "--params", "27,10,1,5", "--order", "51840"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["verdict"], "passes");
}

#[test]
fn replay_ledgers() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = dir.path().join("ledger.json");
    fs::write(
        &ledger,
        r#"[{"label": "u33", "params": [36, 14, 4, 6], "order_factored": "2^6*3^3*7",
             "expression": "omega2", "expected_verdict": "eliminated", "tag": "t"}]"#,
    )
    .unwrap();
    let out = kset(&["replay", "--ledger", ledger.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["records"][0]["value"], "2^2*3^4*7");

    fs::write(&ledger, r#"[{"label": "x", "params": [36, 14, 4, 6]}]"#).unwrap();
    assert_eq!(code(&kset(&["replay", "--ledger", ledger.to_str().unwrap()])), 2);

    // the shipped ledger: every record except the Gewirtz one reproduces
    let out = kset(&["replay"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["mismatches"], serde_json::json!(["Gewirtz graph"]));
}

#[test]
fn verify_suites() {
    for suite in ["appendix1", "thm1.4-psu33", "thm1.2"] {
        let out = kset(&["verify", suite, "--format", "text"]);
        assert_eq!(code(&out), 0, "{}", stdout(&out));
        let text = stdout(&out);
        assert!(text.lines().count() >= 2);
        assert!(text.lines().all(|l| l.starts_with("PASS [")), "{text}");
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("report.json");
    let direct = kset(&["verify", "appendix1"]);
    let out = kset(&["verify", "appendix1", "--output", p.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read(&p).unwrap(), direct.stdout);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}
