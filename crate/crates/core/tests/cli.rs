use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use conchrom::certificate::Certificate;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conchrom"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = run(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_writes_dimacs() {
    let dir = TempDir::new().unwrap();
    let k8 = fs::read_to_string(gen(&dir, "k8.col", &["complete", "8"])).unwrap();
    assert!(k8.lines().any(|l| l == "p edge 8 28"));

    let glued = fs::read_to_string(gen(&dir, "g.col", &["glued", "15", "15", "--shared", "1"])).unwrap();
    assert!(glued.lines().any(|l| l.starts_with("p edge 29 ")));

    let a = fs::read(gen(&dir, "r1.col", &["random", "20", "0.5", "--seed", "7"])).unwrap();
    let b = fs::read(gen(&dir, "r2.col", &["random", "20", "0.5", "--seed", "7"])).unwrap();
    assert_eq!(a, b);
    let c = fs::read(gen(&dir, "r3.col", &["random", "20", "0.5", "--seed", "8"])).unwrap();
    assert_ne!(a, c);

    let join = fs::read_to_string(gen(&dir, "j.col", &["join(cycle(5),complete(5))"])).unwrap();
    assert!(join.lines().any(|l| l == "p edge 10 40"));

    assert_eq!(code(&run(&["gen", "hypercube", "3"])), 2);
    assert_eq!(code(&run(&["gen", "cycle", "2"])), 2);
}

#[test]
fn extract_exit_codes() {
    let dir = TempDir::new().unwrap();
    let k8 = gen(&dir, "k8.col", &["complete", "8"]);
    let cert = dir.path().join("k8.json");
    let out = run(&["extract", s(&k8), "--k", "1", "--out", s(&cert)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let parsed = Certificate::from_json(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(parsed.vertices.len(), 8);
    assert!(String::from_utf8_lossy(&out.stdout).contains("H: 8 vertices"));

    let c5 = gen(&dir, "c5.col", &["cycle", "5"]);
    assert_eq!(code(&run(&["extract", s(&c5), "--k", "1"])), 3);

    let glued = gen(&dir, "g.col", &["glued", "15", "15", "--shared", "1"]);
    let out = run(&["extract", s(&glued), "--k", "2", "--recheck-invariant"]);
    assert_eq!(code(&out), 0);
    let parsed = Certificate::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(parsed.vertices.len(), 15);
    assert_eq!(parsed.trace.len(), 1);

    // Grötzsch graph, 3 colours: refuting needs more than two decisions
    let grotzsch = gen(&dir, "m.col", &["mycielski", "2", "complete(2)"]);
    let out = run(&["extract", s(&grotzsch), "--k", "1", "--palette-size", "3", "--budget-decisions", "2"]);
    assert_eq!(code(&out), 4);
    let out = run(&["extract", s(&grotzsch), "--k", "1", "--palette-size", "3"]);
    assert_eq!(code(&out), 0);

    assert_eq!(code(&run(&["extract", s(&dir.path().join("missing.col")), "--k", "1"])), 7);
    assert_eq!(code(&run(&["extract", s(&k8), "--k", "0"])), 2);
    assert_eq!(code(&run(&["extract", s(&k8), "--k", "1", "--mode", "list"])), 2);
}

#[test]
fn list_mode_extraction() {
    let dir = TempDir::new().unwrap();
    let glued = gen(&dir, "g.col", &["glued", "9", "9", "--shared", "1"]);
    let out = run(&["extract", s(&glued), "--k", "2", "--mode", "list", "--full-lists", "8"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let cert = Certificate::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(cert.vertices.len(), 9);

    // lists shorter than 4k are refused
    assert_eq!(code(&run(&["extract", s(&glued), "--k", "2", "--mode", "list", "--full-lists", "7"])), 2);
    // nine colours everywhere colour K_9
    assert_eq!(code(&run(&["extract", s(&glued), "--k", "2", "--mode", "list", "--full-lists", "9"])), 3);

    let k5 = gen(&dir, "k5.col", &["complete", "5"]);
    let lists = dir.path().join("lists.txt");
    let text: String = (0..5).map(|v| format!("list {v} 0 1 2 3\n")).collect();
    fs::write(&lists, text).unwrap();
    let out = run(&["extract", s(&k5), "--k", "1", "--mode", "list", "--lists", s(&lists)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_accepts_own_output_and_rejects_tampering() {
    let dir = TempDir::new().unwrap();
    let glued = gen(&dir, "g.col", &["glued", "15", "15", "--shared", "1"]);
    let cert_path = dir.path().join("c.json");
    assert_eq!(code(&run(&["extract", s(&glued), "--k", "2", "--out", s(&cert_path)])), 0);
    assert_eq!(code(&run(&["verify", s(&glued), s(&cert_path)])), 0);

    let text = fs::read_to_string(&cert_path).unwrap();
    let mut cert = Certificate::from_json(&text).unwrap();
    cert.vertices.retain(|&v| v != 20);
    let tampered = dir.path().join("t.json");
    fs::write(&tampered, cert.to_json()).unwrap();
    let out = run(&["verify", s(&glued), s(&tampered)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("rejected"));

    let k15 = gen(&dir, "k15.col", &["complete", "15"]);
    let out = run(&["verify", s(&k15), s(&cert_path)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("hash"));

    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(code(&run(&["verify", s(&glued), s(&junk)])), 7);
}

#[test]
fn witness_command_reads_templates() {
    let dir = TempDir::new().unwrap();
    let k15 = gen(&dir, "k15.col", &["complete", "15"]);
    let good = dir.path().join("good.txt");
    fs::write(&good, "k 2\npalette plain 14\nprecolour 0 3\nforbid 1 5\n").unwrap();
    assert_eq!(code(&run(&["witness", s(&k15), s(&good)])), 0);

    let k14 = gen(&dir, "k14.col", &["complete", "14"]);
    assert_eq!(code(&run(&["witness", s(&k14), s(&good)])), 1);

    let template_out = dir.path().join("final.txt");
    let out = run(&["extract", s(&k15), "--k", "2", "--template-out", s(&template_out)]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&run(&["witness", s(&k15), s(&template_out)])), 0);
}

#[test]
fn reproduce_rejects_unknown_suites() {
    let out = run(&["reproduce", "theorem3"]);
    assert_eq!(code(&out), 2);
    let out = run(&["reproduce", "theorem2"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["failed"], 0);
}
