//! End-to-end smoke tests against the compiled binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_modgraph"))
}

fn write_c6(dir: &std::path::Path) -> String {
    let path = dir.join("c6.g");
    std::fs::write(&path, "g undirected 6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n").unwrap();
    path.display().to_string()
}

#[test]
fn solve_exit_codes_match_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write_c6(dir.path());
    // C_6 has a cycle of length 0 mod 3.
    let yes = bin()
        .args(["solve", "--graph", &c6, "--kind", "cycle", "--q", "3", "--p", "0"])
        .output()
        .unwrap();
    assert_eq!(yes.status.code(), Some(0));
    let stdout = String::from_utf8(yes.stdout).unwrap();
    assert!(stdout.contains("verdict=yes"), "{stdout}");
    assert!(stdout.contains("witness=0,1,2,3,4,5"), "{stdout}");

    let no = bin()
        .args(["solve", "--graph", &c6, "--kind", "cycle", "--q", "4", "--p", "1"])
        .output()
        .unwrap();
    assert_eq!(no.status.code(), Some(1));

    let missing = bin()
        .args(["solve", "--graph", "/no/such/file.g", "--kind", "cycle", "--q", "2", "--p", "0"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn timing_goes_to_stderr_not_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write_c6(dir.path());
    let out = bin()
        .args(["spectrum", "--graph", &c6, "--kind", "cycle", "--q", "4"])
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stdout, "spectrum cycle q=4 achieved={2}\n");
    assert!(stderr.contains("elapsed_ms"), "{stderr}");
}

#[test]
fn env_budget_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write_c6(dir.path());
    let out = bin()
        .env("MODGRAPH_BUDGET", "1")
        .args([
            "solve", "--graph", &c6, "--kind", "path", "--s", "0", "--t", "3", "--q",
            "5", "--p", "2", "--solver", "oracle",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "tiny budget must give unknown");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("budget_limit=1"), "{stdout}");
}

#[test]
fn transform_driver_over_all_edges() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write_c6(dir.path());
    let out = bin()
        .args([
            "transform", "--reduction", "cycle-to-path", "--graph", &c6, "--p", "0",
            "--q", "3", "--solve-with", "oracle",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains("reduction=cycle-to-path-driver verdict=yes"),
        "{stdout}"
    );
}

#[test]
fn hardness_gadget_round_trip_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.g");
    std::fs::write(&path, "g directed 4 2\n0 1\n2 3\n").unwrap();
    let out = bin()
        .args([
            "transform", "--reduction", "hardness-cycle", "--graph",
            path.to_str().unwrap(), "--s", "0", "--t", "1", "--s2", "2", "--t2", "3",
            "--p", "2", "--q", "3", "--out", dir.path().join("g.out").to_str().unwrap(),
            "--map", dir.path().join("g.map").to_str().unwrap(),
            "--solve-with", "oracle",
        ])
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("input-witness-1 0,1"), "{stdout}");
    assert!(stdout.contains("input-witness-2 2,3"), "{stdout}");
    let map = std::fs::read_to_string(dir.path().join("g.map")).unwrap();
    assert!(map.starts_with("m hardness-cycle\n"), "{map}");
}
