use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BRICK: &str = "dim 2\nperiod 1 2\ntile 0/1 0/1\ntile 1/2 1/1\n";
const OVERLAP: &str = "dim 2\nperiod 2 1\ntile 0/1 0/1\ntile 1/2 0/1\n";

fn cubetile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubetile"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn setup() -> (TempDir, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let brick = write(dir.path(), "brick.tile", BRICK)
        .to_string_lossy()
        .into_owned();
    let overlap = write(dir.path(), "overlap.tile", OVERLAP)
        .to_string_lossy()
        .into_owned();
    (dir, brick, overlap)
}

#[test]
fn verify_brick() {
    let (_dir, brick, _) = setup();
    let o = cubetile(&["verify", &brick]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid 2 tiles\n");
}

#[test]
fn verify_overlap_reports_pair() {
    let (_dir, _, overlap) = setup();
    let o = cubetile(&["verify", &overlap]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("OverlapPair "), "{}", stdout(&o));
}

#[test]
fn columns_of_brick() {
    let (_dir, brick, _) = setup();
    let o = cubetile(&["columns", &brick]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<_> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.starts_with("column dir=1 ")));
}

#[test]
fn columns_of_non_tiling_fail() {
    let (_dir, _, overlap) = setup();
    assert_eq!(cubetile(&["columns", &overlap]).status.code(), Some(1));
}

#[test]
fn slice_output_reparses() {
    let (dir, brick, _) = setup();
    let o = cubetile(&["slice", &brick, "--coord", "2", "--index", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let sliced = write(dir.path(), "slice.tile", &stdout(&o));
    let v = cubetile(&["verify", sliced.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v), "valid 1 tiles\n");
}

#[test]
fn permuted_brick_is_isomorphic() {
    let (dir, brick, _) = setup();
    let o = cubetile(&["permute", &brick, "--sigma", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    let swapped = write(dir.path(), "swapped.tile", &stdout(&o));
    let swapped = swapped.to_str().unwrap();
    let iso = cubetile(&["iso", &brick, swapped]);
    assert_eq!(iso.status.code(), Some(0));
    assert!(stdout(&iso).starts_with("isomorphic sigma=2,1\n"));
    assert_eq!(
        stdout(&cubetile(&["canon", &brick])),
        stdout(&cubetile(&["canon", swapped]))
    );
}

#[test]
fn non_isomorphic_exit_one() {
    let (dir, brick, _) = setup();
    let lattice = write(
        dir.path(),
        "lattice.tile",
        "dim 2\nperiod 1 2\ntile 0/1 0/1\ntile 0/1 1/1\n",
    );
    let o = cubetile(&["iso", &brick, lattice.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not isomorphic\n");
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.tile", "dim 2\nperiod 1 2\ntile 0 0/1\n");
    assert_eq!(
        cubetile(&["verify", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        cubetile(&["verify", "/nonexistent/x.tile"]).status.code(),
        Some(2)
    );
    assert_eq!(cubetile(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn budget_overrun_exits_three() {
    let o = cubetile(&["export-dimacs", "--dim", "8", "--res", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sampled_tilings_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = cubetile(&["sample", "--dim", "3", "--res", "2", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let p = write(dir.path(), "s.tile", &stdout(&o));
    let v = cubetile(&["verify", p.to_str().unwrap()]);
    assert_eq!(stdout(&v), "valid 8 tiles\n");
}

#[test]
fn dimacs_header_counts_edges() {
    let o = cubetile(&["export-dimacs", "--dim", "2", "--res", "1"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p edge 4 6"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn check_theorems_defaults_hold() {
    let o = cubetile(&["check-theorems"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("scope: period-2 discrete model only"));
}
