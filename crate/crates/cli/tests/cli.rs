//! End-to-end runs of the compiled binary: golden outputs, exit codes, and
//! byte-stability across repeated invocations.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const K5: &str = "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const TRIPLE: &str = "2 3\n0 1\n0 1\n0 1\n";
const C4: &str = "4 4\n0 1\n1 2\n2 3\n3 0\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fourecc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn fourecc");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn components4_golden() {
    assert_eq!(
        stdout(&["components4"], K5),
        "{\"components\":[[0,1,2,3,4]]}\n"
    );
    assert_eq!(
        stdout(&["components4"], K4),
        "{\"components\":[[0],[1],[2],[3]]}\n"
    );
    assert_eq!(stdout(&["components4"], "1 0\n"), "{\"components\":[[0]]}\n");
    assert_eq!(stdout(&["components4", "--format", "text"], K4), "0\n1\n2\n3\n");
}

#[test]
fn cuts3_golden_and_modes_agree() {
    assert_eq!(stdout(&["cuts3"], TRIPLE), "[[0,1,2]]\n");
    let det = stdout(&["cuts3"], K4);
    assert_eq!(det, "[[0,1,2],[0,3,4],[1,3,5],[2,4,5]]\n");
    let rnd = stdout(&["cuts3", "--mode", "randomized", "--seed", "7"], K4);
    assert_eq!(det, rnd);
}

#[test]
fn byte_identical_across_runs() {
    let a = stdout(&["cuts3", "--mode", "randomized"], K4);
    let b = stdout(&["cuts3", "--mode", "randomized"], K4);
    assert_eq!(a, b);
    let a = stdout(&["gen", "three_cycles", "--n", "10", "--seed", "3"], "");
    let b = stdout(&["gen", "three_cycles", "--n", "10", "--seed", "3"], "");
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    // parse error -> 2
    let out = run(&["components4"], "garbage\n");
    assert_eq!(out.status.code(), Some(2));
    // non-3ecc input -> 3, naming a violating cut
    let out = run(&["cuts3"], C4);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cut"));
    // unknown family -> 2
    let out = run(&["gen", "nope", "--n", "4"], "");
    assert_eq!(out.status.code(), Some(2));
    // clean verify -> 0
    let out = run(&["verify"], K4);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn paranoid_catches_what_cheap_checks_may_miss() {
    let out = run(&["cuts3", "--paranoid"], C4);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gen_families() {
    let g = stdout(&["gen", "three_cycles", "--n", "4", "--seed", "1"], "");
    assert!(g.starts_with("4 12\n"));
    let g = stdout(&["gen", "k4_chain", "--n", "8"], "");
    assert!(g.starts_with("8 15\n"));
    let g = stdout(&["gen", "random_multi", "--n", "10", "--d", "4"], "");
    assert!(g.starts_with("10 20\n"));
}

#[test]
fn cut_tree_emission() {
    let json = stdout(&["cut-tree"], TRIPLE);
    assert_eq!(
        json,
        "{\"edges\":[{\"child\":1,\"cut\":[0,1,2],\"parent\":0,\"side_size\":1}],\"nodes\":[[0],[1]],\"root\":0}\n"
    );
    let dot = stdout(&["cut-tree", "--format", "dot"], TRIPLE);
    assert!(dot.starts_with("graph cut_tree {"));
    assert!(dot.contains("n0 -- n1"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("fourecc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k4.json");
    let out = run(
        &["components4", "--out", path.to_str().unwrap()],
        K4,
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "{\"components\":[[0],[1],[2],[3]]}\n"
    );
}

#[test]
fn bench_prints_a_row_per_size() {
    let out = stdout(&["bench", "--sizes", "64,128", "--family", "k4_chain"], "");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "n m seconds cuts");
}
