use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic-lines"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn fermat_over_f9() {
    let out = run(&["census", "--field", "F", "3", "2", "-e", "x1^4 + x2^4 + x3^4 + x4^4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["count"], 112);
    assert_eq!(v["lines"].as_array().unwrap().len(), 112);
}

#[test]
fn schur_census_from_file() {
    let out = run(&["census", &data("schur.quartic")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["count"], 64);
    assert_eq!(v["stabilized"], true);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&run(&["census", "--field", "G", "-e", "x1^4"])), 1);
    assert_eq!(code(&run(&["census", "-e", "x1^3 + x2^4"])), 1);
    assert_eq!(code(&run(&["census"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["census", "/no/such/file.quartic"])), 1);
    assert_eq!(code(&run(&["verify", "--only", "criterion-99"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn line_not_on_surface_is_usage_error() {
    let out = run(&["fibration", &data("schur.quartic"), "--line", "x1 = x2 = 0"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn too_many_lines_is_a_finding() {
    // a cone over a plane quartic: a line through the vertex for each point of the base curve
    let out = run(&["census", "--field", "F", "101", "-e", "x1^4 + x2^4 + x3^4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn z_member_fibration() {
    let out = run(&["fibration", &data("z_member.quartic"), "--line", "x3 = x4 = 0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["kind"]["kind"], "second");
    assert_eq!(v["R"], "2^2");
    assert_eq!(v["N"], 18);
    assert_eq!(v["euler"], 24);
    let i3 = v["fibers"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|f| f["type"] == "I3")
        .count();
    assert_eq!(i3, 6);
}

#[test]
fn z_member_normal_form() {
    let out = run(&["classify-line", &data("z_member.quartic"), "--line", "x3 = x4 = 0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["R"], "2^2");
    assert!(v["z_normal_form"]["Ok"]["q"].is_string());
}

#[test]
fn schur_graph_degrees() {
    let out = run(&["graph", &data("schur.quartic"), "--no-fibrations"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let degrees = v["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 64);
    assert!(degrees.iter().all(|d| d == 18));
}

#[test]
fn flecnodal_samples_on_a_line() {
    let out = run(&["flecnodal", &data("schur.quartic"), "--line", "x1 = x3 = 0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let samples = v["samples"].as_array().unwrap();
    assert!(!samples.is_empty());
}

#[test]
fn same_seed_same_bytes() {
    let args = ["census", "--seed", "7", "--threads", "3", &data("example60.quartic")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let one = run(&["census", "--seed", "7", "--threads", "1", &data("example60.quartic")]);
    assert_eq!(a.stdout, one.stdout);
}

#[test]
fn text_format() {
    let out = run(&["census", "--format", "text", &data("fermat.quartic")]);
    assert_eq!(code(&out), 0);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("112"));
}

#[test]
fn stdin_source() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_quartic-lines"))
        .args(["census", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let text = std::fs::read_to_string(data("schur.quartic")).unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["count"], 64);
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_ledger_passes_on_bundled_data() {
    let out = run(&["verify", "--only", "3,z-member,json-roundtrip", "--format", "text"]);
    let s = String::from_utf8_lossy(&out.stdout);
    assert_eq!(code(&out), 0, "{s}");
    assert_eq!(s.lines().filter(|l| l.starts_with("PASS")).count(), 3, "{s}");
}

#[test]
fn verify_detects_corrupted_schur() {
    let dir = scratch("corrupt-schur");
    let text = std::fs::read_to_string(data("schur.quartic")).unwrap();
    let bad = text.replace("x3*x4^3", "2*x3*x4^3");
    assert_ne!(bad, text);
    std::fs::write(dir.join("schur.quartic"), bad).unwrap();
    let out = run(&["verify", "--data", dir.to_str().unwrap(), "--only", "2", "--format", "text"]);
    let s = String::from_utf8_lossy(&out.stdout);
    assert_eq!(code(&out), 2, "{s}");
    assert!(s.lines().any(|l| l.starts_with("FAIL criterion-2")), "{s}");
}

#[test]
fn verify_json_ledger() {
    let out = run(&["verify", "--only", "json-roundtrip"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["passed"], 1);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["claims"][0]["id"], "json-roundtrip");
}
