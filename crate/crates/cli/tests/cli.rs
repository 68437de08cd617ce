use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Sandbox(TempDir);

impl Sandbox {
    fn new() -> Self {
        Sandbox(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn run(args: &[&str], inputs: &[&PathBuf]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_shiftdim"));
    cmd.args(args);
    for p in inputs {
        cmd.arg("-i").arg(p);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const WITNESS: &str = r#"{"A": [[2]], "B": [[1,1],[1,1]], "R": [[1,1]], "S": [[1],[1]], "m": 1}"#;

#[test]
fn obstruct_on_splice() {
    let sb = Sandbox::new();
    let a = sb.file("a.txt", "# one vertex, two loops\nvertices 1\nedge 0 0\nedge 0 0\n");
    let b = sb.file("b.txt", "matrix 3\n2 1 0\n1 1 1\n0 1 1\n");
    let out = run(&["obstruct"], &[&a, &b]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], "NoUnitalHom");

    let ones = sb.file("ones.json", "[[1,1],[1,1]]");
    let out = run(&["obstruct"], &[&a, &ones]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["candidate"], serde_json::json!([[1, 1]]));
}

#[test]
fn se_verify_and_residuals() {
    let sb = Sandbox::new();
    let out = run(&["se", "verify"], &[&sb.file("w.json", WITNESS)]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert_eq!(j["verdict"], "Verified");
    assert_eq!(j["unital"], true);

    let bad = sb.file("bad.json", r#"{"A": [[2]], "B": [[1,1],[1,1]], "R": [[1,0]], "S": [[1],[1]], "m": 1}"#);
    let out = run(&["se", "verify"], &[&bad]);
    assert_eq!(code(&out), 1);
    let j = json(&out);
    assert_eq!(j["verdict"], "Refuted");
    assert!(j["residuals"].as_object().is_some_and(|r| !r.is_empty()));
}

#[test]
fn se_relaxed_and_sse() {
    let sb = Sandbox::new();
    let relaxed = sb.file(
        "r.json",
        r#"{"A": [[2]], "B": [[1,1],[1,1]], "R": [[1,1]], "S": [[1],[1]], "T": [[1],[1]], "m": 1, "k": 1}"#,
    );
    assert_eq!(code(&run(&["se", "relaxed"], &[&relaxed])), 0);

    let chain = sb.file(
        "c.json",
        r#"{"A": [[2]], "B": [[1,1],[1,1]], "steps": [{"A": [[2]], "B": [[1,1],[1,1]], "R": [[1,1]], "S": [[1],[1]]}]}"#,
    );
    assert_eq!(code(&run(&["sse", "verify"], &[&chain])), 0);
    let broken = sb.file(
        "b.json",
        r#"{"A": [[2]], "B": [[1,1],[1,1]], "steps": [{"A": [[3]], "B": [[1,1],[1,1]], "R": [[1,1]], "S": [[1],[1]]}]}"#,
    );
    let out = run(&["sse", "verify"], &[&broken]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["broken_link"], Value::Null);
    let misshapen = sb.file(
        "s.json",
        r#"{"A": [[2]], "B": [[1,1],[1,1]], "steps": [{"A": [[2]], "B": [[1,1],[1,1]], "R": [[1],[1]], "S": [[1],[1]]}]}"#,
    );
    let out = run(&["sse", "verify"], &[&misshapen]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["broken_link"], 0);
}

#[test]
fn se_search_is_deterministic_across_jobs() {
    let sb = Sandbox::new();
    let a = sb.file("a.json", "[[1,1],[1,0]]");
    let seq = run(&["se", "search", "--jobs", "1"], &[&a, &a]);
    let par = run(&["se", "search", "--jobs", "4"], &[&a, &a]);
    assert_eq!(code(&seq), 0);
    assert_eq!(seq.stdout, par.stdout);

    let (one, two) = (sb.file("one.json", "[[1]]"), sb.file("two.json", "[[2]]"));
    let out = run(&["se", "search", "--m-max", "2", "--coeff-bound", "2"], &[&one, &two]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["verdict"], "NotFoundWithinBounds");
}

#[test]
fn output_is_byte_identical() {
    let sb = Sandbox::new();
    let w = sb.file("w.json", WITNESS);
    for args in [&["aligned", "verify"][..], &["bridge", "--shift", "-1"], &["unital"]] {
        let (x, y) = (run(args, &[&w]), run(args, &[&w]));
        assert_eq!(x.stdout, y.stdout, "{args:?}");
        assert!(!x.stdout.is_empty());
    }
}

#[test]
fn cone_and_equality() {
    let sb = Sandbox::new();
    let two = sb.file("two.txt", "matrix 1\n2\n");
    let out = run(&["cone", "--v=-1", "--bound", "4"], &[&two]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["verdict"], "Unknown");
    assert_eq!(code(&run(&["cone", "--v", "3"], &[&two])), 0);

    assert_eq!(code(&run(&["eq", "--v", "1", "--w", "2", "--l", "1"], &[&two])), 0);
    assert_eq!(code(&run(&["eq", "--v", "1", "--w", "3"], &[&two])), 1);
}

#[test]
fn dimgroup_reports() {
    let sb = Sandbox::new();
    let ones = sb.file("ones.json", "[[1,1],[1,1]]");
    let j = json(&run(&["dimgroup"], &[&ones]));
    assert_eq!(j["eventual_image"]["dimension"], 1);
    assert_eq!(j["order_unit"], serde_json::json!({"v": [1, 1], "k": 0}));

    let out = run(&["dimgroup", "--vector", "1,0"], &[&ones]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], "NotInEventualImage");
    let out = run(&["dimgroup", "--vector", "1/2,1/2"], &[&ones]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["membership"]["certificate"], 1);
}

#[test]
fn lift_and_bridge() {
    let sb = Sandbox::new();
    let spec = sb.file("h.json", r#"{"A": [[2]], "B": [[2]], "images": [{"v": [1], "l": 1}]}"#);
    let j = json(&run(&["lift"], &[&spec]));
    assert_eq!((j["R"].clone(), j["shift"].clone()), (serde_json::json!([[1]]), serde_json::json!(1)));

    let not_hom = sb.file("n.json", r#"{"A": [[1]], "B": [[2]], "images": [{"v": [1], "l": 0}]}"#);
    let out = run(&["lift"], &[&not_hom]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], "NotAHomomorphism");

    let j = json(&run(&["bridge"], &[&sb.file("w.json", WITNESS)]));
    let terms = &j["images"][0]["terms"];
    assert_eq!(terms.as_array().unwrap().len(), 2);
    assert_eq!(j["images"][0]["class"], serde_json::json!({"v": [1, 1], "k": 0}));
}

#[test]
fn module_and_aligned() {
    let sb = Sandbox::new();
    let w = sb.file("w.json", WITNESS);
    assert_eq!(code(&run(&["module-se", "verify"], &[&w])), 0);
    let out = run(&["aligned", "verify", "--unital"], &[&w]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["r_unital"], true);

    let miscount = sb.file("m.json", r#"{"A": [[2]], "B": [[1,1],[1,1]], "R": [[1,0]], "S": [[1],[1]], "m": 1}"#);
    let out = run(&["module-se", "verify"], &[&miscount]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["failing_relation"], "GH = A^m");

    let swapped = sb.file(
        "s.json",
        r#"{"A": [[2]], "B": [[2]], "R": [[1]], "S": [[2]], "m": 1,
            "overrides": {"sigma_G": [{"block": [0, 0], "perm": [1, 0]}]}}"#,
    );
    let out = run(&["aligned", "verify"], &[&swapped]);
    assert_eq!(code(&out), 1);
    let j = json(&out);
    let failing: Vec<&Value> = j["diagrams"].as_array().unwrap().iter().filter(|d| d["holds"] == false).collect();
    assert_eq!(failing[0]["failing_block"], serde_json::json!([0, 0]));
}

#[test]
fn splice_and_zmod() {
    let sb = Sandbox::new();
    let two = sb.file("two.txt", "matrix 1\n2\n");
    let j = json(&run(&["splice"], &[&two]));
    assert_eq!(j["B"], serde_json::json!([[2, 1, 0], [1, 1, 1], [0, 1, 1]]));

    let out = run(&["zmod", "eq", "--modulus", "2", "--v", "1", "--w", "2", "--l", "1"], &[&two]);
    assert_eq!(code(&out), 0);
    assert_eq!((json(&out)["p"].clone(), json(&out)["q"].clone()), (serde_json::json!(1), serde_json::json!(0)));
    let out = run(&["zmod", "eq", "--modulus", "2", "--v", "1", "--w", "3"], &[&two]);
    assert_eq!(code(&out), 2);

    let f = sb.file("f.json", r#"{"A": [[1,1],[1,0]], "B": [[1,1],[1,0]], "R": [[1,0],[0,1]]}"#);
    assert_eq!(code(&run(&["zmod", "check", "--modulus", "3", "--k", "0"], &[&f])), 0);
}

#[test]
fn text_format() {
    let sb = Sandbox::new();
    let out = run(&["--format", "text", "unital"], &[&sb.file("w.json", WITNESS)]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "verdict: Unital"), "{text}");
}

#[test]
fn big_integers_survive() {
    let sb = Sandbox::new();
    let big = "1".repeat(40);
    let a = sb.file("a.json", &format!("[[{big}]]"));
    let j = json(&run(&["dimgroup"], &[&a]));
    assert_eq!(j["A"][0][0].to_string(), big);
}

#[test]
fn error_exit_codes() {
    let sb = Sandbox::new();
    let out = run(&["no-such-command"], &[]);
    assert_eq!(code(&out), 64);
    assert!(!out.stderr.is_empty());
    assert_eq!(code(&run(&["obstruct"], &[&sb.file("a.json", "[[1]]")])), 64);
    assert_eq!(code(&run(&["splice"], &[&sb.0.path().join("missing.txt")])), 66);
    assert_eq!(code(&run(&["se", "verify"], &[&sb.file("broken.json", "{\"A\": [[2]")])), 65);
    let sink = run(&["dimgroup"], &[&sb.file("sink.txt", "vertices 2\nedge 0 1\n")]);
    assert_eq!(code(&sink), 65);
    let bad_line = run(&["dimgroup"], &[&sb.file("bad.txt", "matrix 2\n1 1\n1 x\n")]);
    assert_eq!(code(&bad_line), 65);
    assert!(String::from_utf8_lossy(&bad_line.stderr).contains("line 3"));
}
