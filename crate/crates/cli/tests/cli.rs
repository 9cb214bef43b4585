use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_burnoff"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn graph_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn analyze_k2_csv() {
    let out = run(&["analyze", "--family", "complete", "2", "--format", "csv"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "length,count,total,probability\n0,2,6,0.333333\n1,2,6,0.333333\n2,2,6,0.333333\n"
    );
}

#[test]
fn analyze_reports_tree_count_and_fractions() {
    let out = run(&["analyze", "--family", "k3_pendant"], None);
    let text = stdout(&out);
    assert!(text.contains("|R|: 40"));
    assert!(text.contains("spanning trees of the cone: 40"));
    assert!(text.contains("41/80"));
    let svg = run(&["analyze", "--family", "k3_pendant", "--format", "svg"], None);
    assert!(stdout(&svg).starts_with("<svg"));
}

#[test]
fn analyze_from_file_matches_family() {
    let f = graph_file("# triangle with a pendant\n4 4\n0 1\n0 2\n1 2\n0 3\n");
    let from_file = run(
        &["analyze", "--file", f.path().to_str().unwrap(), "--format", "csv"],
        None,
    );
    let from_family = run(&["analyze", "--family", "k3_pendant", "--format", "csv"], None);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, from_family.stdout);
}

#[test]
fn disconnected_graph_is_an_input_error() {
    let f = graph_file("3 1\n0 1\n");
    let out = run(&["analyze", "--file", f.path().to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("disconnected"));
}

#[test]
fn parse_errors_name_the_line() {
    let f = graph_file("3 2\n0 1\n1 q\n");
    let out = run(&["verify", "--file", f.path().to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    let missing = run(&["analyze", "--file", "/nonexistent/graph.txt"], None);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["simulate", "--family", "k3_pendant", "-m", "0"],
        vec!["analyze"],
        vec!["analyze", "--family", "wheel", "5"],
        vec!["analyze", "--family", "path"],
        vec!["analyze", "--family", "k3_pendant", "--file", "x.txt"],
        vec!["simulate", "--family", "k3_pendant", "-m", "10", "--alpha", "1.5"],
        vec!["--threads", "0", "analyze", "--family", "k3_pendant"],
    ] {
        let out = run(&args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "--family", "k3_pendant"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "PASS k3_pendant: 40 configurations, 40 trees, 160 pairs\n"
    );
    let out = run(&["verify", "--family", "path", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--max-n", "4"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 4);
    assert!(stdout(&out).contains("PASS n=4: 6 graphs"));
}

#[test]
fn bijection_k2() {
    let out = run(
        &["bijection", "--family", "complete", "2", "--direction", "to-tree"],
        Some("1 1\n"),
    );
    assert_eq!(stdout(&out), "x 0\nx 1\n");
    let out = run(
        &["bijection", "--family", "complete", "2", "--direction", "to-config"],
        Some("x 0\nx 1\n"),
    );
    assert_eq!(stdout(&out), "1 1\n");
    let out = run(
        &["bijection", "--family", "complete", "2", "--direction", "to-tree"],
        Some("0 0\n"),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("not legal") && err.contains("[0, 1]"), "{err}");
}

#[test]
fn bijection_trace_is_commented() {
    let out = run(
        &[
            "bijection",
            "--family",
            "k3_pendant",
            "--direction",
            "to-tree",
            "--trace",
        ],
        Some("2 1 2 0\n"),
    );
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("# layer 1: [2]")), "{text}");
    // The traced output still parses as a tree.
    let back = run(
        &["bijection", "--family", "k3_pendant", "--direction", "to-config"],
        Some(&text),
    );
    assert_eq!(stdout(&back), "2 1 2 0\n");
}

#[test]
fn every_pendant_triangle_configuration_round_trips() {
    let listing = stdout(&run(&["enumerate", "--family", "k3_pendant"], None));
    let configs: Vec<&str> = listing.lines().collect();
    assert_eq!(configs.len(), 40);
    for config in configs {
        let tree = run(
            &["bijection", "--family", "k3_pendant", "--direction", "to-tree"],
            Some(config),
        );
        let back = run(
            &["bijection", "--family", "k3_pendant", "--direction", "to-config"],
            Some(&stdout(&tree)),
        );
        assert_eq!(stdout(&back).trim_end(), config);
    }
    let trees = stdout(&run(&["enumerate", "--family", "k3_pendant", "--what", "trees"], None));
    assert_eq!(trees.matches("# tree").count(), 40);
}

#[test]
fn simulate_csv_and_threads() {
    let out = run(
        &[
            "simulate", "--family", "cycle", "4", "-m", "500", "--seed", "9", "--format", "csv",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("length,observed,expected_probability\n"));
    let total: u64 = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 500);

    let a = run(
        &[
            "--threads",
            "1",
            "analyze",
            "--family",
            "complete",
            "5",
            "--format",
            "json",
        ],
        None,
    );
    let b = Command::new(env!("CARGO_BIN_EXE_burnoff"))
        .args(["analyze", "--family", "complete", "5", "--format", "json"])
        .env("BURNOFF_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn simulate_on_large_graph_skips_exact_comparison() {
    let out = run(&["simulate", "--family", "cycle", "13", "-m", "100"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"chi_square\": null"), "{text}");
    assert!(text.contains("12 vertices"));
}
