use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_elevenfloer"))
}

fn diagrams(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../diagrams").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn compute_unknot() {
    let p = diagrams("unknot.json");
    let (code, out, _) = run(&["compute", p.to_str().unwrap(), "--out", "text", "--tau"]);
    assert_eq!(code, 0);
    assert!(out.contains("i=0: Z_(0)\n"));
    assert!(out.contains("tau = 0"));
}

#[test]
fn compute_pretzel_tau() {
    let p = diagrams("pretzel-7-5.json");
    let (code, out, _) = run(&["compute", p.to_str().unwrap(), "--tau", "--out", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("tau = -6"), "{out}");
    let (_, json, _) = run(&["compute", p.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["tau"], -6);
    assert_eq!(v["genus"], 6);
    assert_eq!(v["bounds"]["determined"], 6);
    for k in ["knot", "hfk", "checks"] {
        assert!(v.get(k).is_some());
    }
    assert!(v["hfk"][0].get("A").is_some() && v["hfk"][0].get("M").is_some());
}

#[test]
fn compute_bad_diagram() {
    let p = diagrams("bad.json");
    let (code, _, err) = run(&["compute", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("ResidueCoverage"));
}

#[test]
fn compute_missing_file_is_io() {
    let (code, _, _) = run(&["compute", "/nonexistent/diagram.json"]);
    assert_eq!(code, 3);
}

#[test]
fn compute_malformed_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.json");
    std::fs::write(&p, "{ nope").unwrap();
    let (code, _, _) = run(&["compute", p.to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn output_is_deterministic_across_jobs() {
    let a = diagrams("pretzel-5-5.json");
    let b = diagrams("unknot-finger.json");
    let args = [a.to_str().unwrap(), b.to_str().unwrap()];
    let (_, one, _) = run(&["compute", args[0], args[1]]);
    let (_, two, _) = run(&["compute", args[0], args[1], "--jobs", "2"]);
    let (_, again, _) = run(&["compute", args[0], args[1], "--jobs", "2"]);
    assert_eq!(one, two);
    assert_eq!(two, again);
    let v: serde_json::Value = serde_json::from_str(&one).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn svg_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("finger.svg");
    let p = diagrams("unknot-finger.json");
    let (code, _, _) = run(&["compute", p.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert_eq!(code, 0);
    let s = std::fs::read_to_string(svg).unwrap();
    assert!(s.starts_with("<svg"));
    assert_eq!(s.matches("class=\"bigon\"").count(), 2);
}

#[test]
fn pretzel_modes() {
    let (code, out, _) = run(&["pretzel", "--m", "5", "--n", "3", "--closed-form"]);
    assert_eq!(code, 0);
    assert!(out.contains("i=4: Z_(8)"));
    let (code, out, _) = run(&["pretzel", "--m", "7", "--n", "5", "--compare"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("oracle = closed-form = engine\n"));
    assert!(out.contains("tau = -6"));
    let (code, _, err) = run(&["pretzel", "--m", "4", "--n", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("BadParams"));
    let (code, _, _) = run(&["pretzel", "--m", "5", "--n", "3", "--oracle"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["pretzel", "--m", "5", "--n", "5", "--oracle", "--diagram"]);
    assert_eq!(code, 1);
    let (a, _, _) = run(&["pretzel", "--m", "9", "--n", "5", "--diagram", "--out", "json"]);
    assert_eq!(a, 0);
}

#[test]
fn catalog_commands() {
    let (code, out, _) = run(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert!(out.contains("10_161\ttable-row"));
    assert!(out.contains("pretzel-5-5\tdiagram"));
    let (_, out, _) = run(&["catalog", "show", "10_162"]);
    assert!(out.starts_with("10_162 is an alias of 10_161\n"));
    assert!(out.contains("i=3: Z_(6)\ni=2: Z_(4) + Z_(5)"), "{out}");
    let (_, out, _) = run(&["catalog", "export", "unknot"]);
    assert!(out.contains("\"n\": 1"));
    let (code, _, _) = run(&["catalog", "show", "no-such-knot"]);
    assert_eq!(code, 1);
}

#[test]
fn verify_table_passes() {
    let (code, out, _) = run(&["verify-table"]);
    assert_eq!(code, 0);
    assert!(out.contains("18/18 rows pass symmetry and P(1)=+-1"));
}

#[test]
fn window_limit_env_is_honoured() {
    let p = diagrams("pretzel-5-5.json");
    let out = bin().args(["compute", p.to_str().unwrap()]).env("ELEVENFLOER_WINDOW_LIMIT", "0").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("WindowUnstable"));
}
