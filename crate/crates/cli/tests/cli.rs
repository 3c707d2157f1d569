use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const K4: &str = r#"{"type":"graphic","edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#;
const U24: &str = r#"{"type":"uniform","r":2,"n":4}"#;
const TWO_SUM: &str = r#"{"type":"two_sum","left":{"type":"uniform","r":2,"n":4},"pl":0,"right":{"type":"uniform","r":2,"n":4},"pr":0}"#;

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Scratch {
        let dir = std::env::temp_dir().join(format!("mxt-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.join(name);
        fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn mxt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mxt")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn sets(v: &Value) -> Vec<Vec<u64>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).collect())
        .collect()
}

#[test]
fn locked_on_k4_lists_the_four_triangles() {
    let s = Scratch::new("locked");
    let k4 = s.file("k4.json", K4);
    let out = mxt(&["locked", "--input", &k4]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["count"], 4);
    let found: Vec<Vec<u64>> = r["result"]["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            assert_eq!(c["rank"], 2);
            assert_eq!(c["corank_complement"], 2);
            assert_eq!(c["closed"], true);
            assert_eq!(c["coclosed"], true);
            c["set"].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).collect()
        })
        .collect();
    assert_eq!(found, vec![vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5], vec![3, 4, 5]]);
}

#[test]
fn facets_on_u24() {
    let s = Scratch::new("facets");
    let u = s.file("u24.json", U24);
    let r = json(&mxt(&["facets", "--input", &u]));
    assert_eq!(r["result"]["equality_count"], 1);
    assert_eq!(r["result"]["inequality_count"], 8);
    assert_eq!(r["result"]["kinds"]["upper"], 4);
    assert_eq!(r["result"]["kinds"]["nonneg"], 4);
    let eq = &r["result"]["system"]["equalities"][0];
    assert_eq!(eq["kind"], "cardinality");
    assert_eq!(eq["text"], "x{0,1,2,3} = 2");
}

#[test]
fn verify_facets_text_line() {
    let s = Scratch::new("verify");
    let k4 = s.file("k4.json", K4);
    let out = mxt(&["verify-facets", "--input", &k4, "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out).contains("theorem2_system == hull_facets: true"), "{}", text(&out));

    // A theta graph: a parallel pair on each side of a triangle. One of the
    // parallel-class inequalities is implied by the others.
    let theta = s.file("theta.json", r#"{"type":"graphic","edges":[[1,2],[1,3],[1,3],[2,3],[2,3]]}"#);
    let out = mxt(&["verify-facets", "--input", &theta]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["system_irredundant"], false);
    assert_eq!(r["result"]["nontrivial_facets_locked"], true);
}

#[test]
fn rank_dual_connectivity() {
    let s = Scratch::new("rank");
    let k4 = s.file("k4.json", K4);
    let r = json(&mxt(&["rank", "--input", &k4, "--subset", "0,1,3"]));
    assert_eq!(r["result"]["rank"], 2);
    assert_eq!(r["result"]["corank"], 3);
    assert_eq!(r["result"]["independent"], false);

    let r = json(&mxt(&["dual", "--input", &k4]));
    assert_eq!(r["result"]["rank"], 3);
    assert_eq!(sets(&r["result"]["bases"]).len(), 16);

    let split = s.file("split.json", r#"{"type":"direct_sum","parts":[{"type":"uniform","r":1,"n":2},{"type":"uniform","r":1,"n":2}]}"#);
    let r = json(&mxt(&["connectivity", "--input", &split]));
    assert_eq!(r["result"]["two_connected"], false);
    assert_eq!(sets(&r["result"]["components"]), vec![vec![0, 1], vec![2, 3]]);
    let r = json(&mxt(&["is-uniform", "--input", &split]));
    assert_eq!(r["result"]["uniform"], false);
    assert_eq!(r["result"]["route"], "definition");
}

#[test]
fn k_locked_separate_and_mwbp() {
    let s = Scratch::new("oracles");
    let k4 = s.file("k4.json", K4);
    let r = json(&mxt(&["k-locked", "--input", &k4, "--k", "0"]));
    assert_eq!(r["result"]["threshold"], 6);
    assert_eq!(r["result"]["k_locked"], true);

    let u = s.file("u24.json", U24);
    let p = s.file("p.json", r#"["3/2","1/2","0","0"]"#);
    let r = json(&mxt(&["separate", "--input", &u, "--point", &p]));
    assert_eq!(r["result"]["verdict"], "violated");
    assert_eq!(r["result"]["violated"]["text"], "x0 <= 1");
    let p = s.file("q.json", r#"["1/2","1/2","1/2","1/2"]"#);
    let r = json(&mxt(&["separate", "--input", &u, "--point", &p]));
    assert_eq!(r["result"]["verdict"], "member");
    assert_eq!(r["result"]["evaluations"], 9);

    let w = s.file("w.json", r#"["1","5/2","2","-2","0","3"]"#);
    let r = json(&mxt(&["mwbp", "--input", &k4, "--weights", &w]));
    assert_eq!(r["result"]["agree"], true);
    assert_eq!(r["result"]["certified"], true);
    assert_eq!(r["result"]["greedy"]["value"], "13/2");
    assert_eq!(r["result"]["brute"]["value"], "13/2");
    assert_eq!(r["result"]["lp_vertex"]["value"], "13/2");
}

#[test]
fn has_minor_controls() {
    let s = Scratch::new("minor");
    let k4 = s.file("k4.json", K4);
    let w3 = s.file("w3.json", r#"{"type":"catalog","name":"W3"}"#);
    let u = s.file("u24.json", U24);
    let r = json(&mxt(&["has-minor", "--input", &k4, "--target", &u]));
    assert_eq!(r["result"]["has_minor"], false);
    assert!(r["result"]["witness"].is_null());
    let r = json(&mxt(&["has-minor", "--input", &w3, "--target", &u]));
    assert_eq!(r["result"]["has_minor"], true);
    assert_eq!(r["result"]["witness"]["mapping"].as_array().unwrap().len(), 4);
}

#[test]
fn catalog_emit_round_trips() {
    let s = Scratch::new("catalog");
    for name in ["MK4", "W3", "Q6", "P6", "U(3,6)", "U24+2U24", "wheel(4)"] {
        let out = mxt(&["catalog", "--name", name, "--emit"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let doc = s.file("doc.json", &text(&out));
        let original = s.file("orig.json", &format!(r#"{{"type":"catalog","name":"{name}"}}"#));
        let a = json(&mxt(&["dual", "--input", &doc]));
        let b = json(&mxt(&["dual", "--input", &original]));
        assert_eq!(a["result"]["bases"], b["result"]["bases"], "{name}");
        let r = json(&mxt(&["has-minor", "--input", &doc, "--target", &original]));
        assert_eq!(r["result"]["has_minor"], true, "{name}");
    }
    let r = json(&mxt(&["catalog"]));
    assert!(r["result"]["names"].as_array().unwrap().contains(&Value::from("MK4")));
}

#[test]
fn reports_are_byte_stable() {
    let s = Scratch::new("stable");
    let doc = s.file("ts.json", TWO_SUM);
    for cmd in ["locked", "facets", "verify-facets", "connectivity"] {
        for format in ["json", "text"] {
            let a = mxt(&[cmd, "--input", &doc, "--format", format]);
            let b = mxt(&[cmd, "--input", &doc, "--format", format]);
            assert_eq!(a.status.code(), Some(0));
            assert_eq!(a.stdout, b.stdout, "{cmd} {format}");
        }
    }
    let r = json(&mxt(&["locked", "--input", &doc]));
    assert_eq!(r["command"], "locked");
    assert_eq!(r["inputs"]["input"]["sha256"].as_str().unwrap().len(), 64);
    assert!(r.get("timing_ms").is_none());
    let r = json(&mxt(&["locked", "--input", &doc, "--timing"]));
    assert!(r["timing_ms"].is_u64());
}

#[test]
fn exit_codes() {
    let s = Scratch::new("exit");
    let k4 = s.file("k4.json", K4);
    let bad = s.file("bad.json", r#"{"type":"two_sum","left":{"type":"uniform","r":2,"n":4},"pl":0,"right":{"type":"uniform","r":"2","n":4},"pr":0}"#);
    let out = mxt(&["locked", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["message"].as_str().unwrap().split(':').next(), Some("$.right.r"));

    assert_eq!(mxt(&["locked", "--input", "/nonexistent/m.json"]).status.code(), Some(2));
    assert_eq!(mxt(&["locked"]).status.code(), Some(2));
    assert_eq!(mxt(&["rank", "--input", &k4, "--subset", "0,9"]).status.code(), Some(2));
    assert_eq!(mxt(&["bogus"]).status.code(), Some(2));

    let split = s.file("split.json", r#"{"type":"direct_sum","parts":[{"type":"uniform","r":1,"n":2},{"type":"uniform","r":1,"n":2}]}"#);
    assert_eq!(mxt(&["facets", "--input", &split]).status.code(), Some(2));

    let out = mxt(&["locked", "--input", &k4, "--cap", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["kind"], "cap-exceeded");
    let big = s.file("big.json", r#"{"type":"uniform","r":3,"n":13}"#);
    assert_eq!(mxt(&["facets", "--input", &big]).status.code(), Some(0));
    assert_eq!(mxt(&["verify-facets", "--input", &big]).status.code(), Some(3));
    // Boolean answers live in the payload.
    let u = s.file("u24.json", U24);
    assert_eq!(mxt(&["has-minor", "--input", &k4, "--target", &u]).status.code(), Some(0));
}

#[test]
fn selftest_exit_status_follows_the_criteria() {
    let out = mxt(&["selftest", "--seed", "0"]);
    let r = json(&out);
    assert_eq!(r["seed"], 0);
    let criteria = r["result"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 10);
    let all = criteria.iter().all(|c| c["passed"] == true);
    assert_eq!(r["result"]["passed"], all);
    assert_eq!(out.status.code(), Some(if all { 0 } else { 4 }));
}
