use std::path::Path;
use std::process::Command;

const A3_JOB: &str =
    "# 1 <- 2 <- 3\nvertices 3\narrow 2 1\narrow 3 2\nroots\n1 0 0\n0 1 0\n1 1 0\n0 0 1\n";

fn picgroup(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_picgroup"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn job(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn theorem_a_on_the_example_job() {
    let dir = tempfile::tempdir().unwrap();
    let q = job(dir.path(), "a3.job", A3_JOB);
    let (code, out, _) = picgroup(&["verify", "theorem-a", "--quiver", &q]);
    assert_eq!(code, 0, "{out}");
    assert!(
        out.contains("mgs: 7\n") && out.contains("closure: 7\n") && out.contains("verdict: pass\n")
    );
}

#[test]
fn single_root_has_one_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let q = job(dir.path(), "a3.job", A3_JOB);
    let (code, out, _) = picgroup(&["mgs", "--words-only", "--quiver", &q, "--roots", "0 1 0"]);
    assert_eq!((code, out.as_str()), (0, "(0,1,0)\n"));
}

#[test]
fn wild_quiver_without_roots_overflows() {
    let dir = tempfile::tempdir().unwrap();
    let q = job(dir.path(), "kronecker.txt", "vertices 2\narrow 2 1 2 2\n");
    let (code, _, err) = picgroup(&["roots", "--quiver", &q]);
    assert_eq!(code, 3);
    assert!(err.contains("NotFiniteType"));
    let (code, out, _) = picgroup(&["roots", "--quiver", &q, "--roots", "1 0; 0 1; 2 1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("roots: 3\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let q = job(dir.path(), "a3.job", A3_JOB);
    assert_eq!(picgroup(&["frobnicate"]).0, 1);
    assert_eq!(picgroup(&["roots"]).0, 1);
    assert_eq!(
        picgroup(&["orders", "--quiver", &q, "--roots", "1 1 0; 1 0 0"]).0,
        2
    );
    assert_eq!(picgroup(&["mgs", "--quiver", &q, "--max-paths", "3"]).0, 3);
    assert_eq!(
        picgroup(&["verify", "theorem-a", "--quiver", &q, "--max-words", "2"]).0,
        3
    );
    assert_eq!(picgroup(&["mgs", "--quiver", &q, "--max-paths", "0"]).0, 1);
    let bad = job(dir.path(), "bad.txt", "vertices 2\narrow 1 5\n");
    let (code, _, err) = picgroup(&["roots", "--quiver", &bad]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let q = job(dir.path(), "a3.job", A3_JOB);
    for args in [
        &["compartments"][..],
        &["mgs"],
        &["verify", "coxeter-path"],
        &["dump", "hom-table"],
    ] {
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--quiver", &q]);
        let a = picgroup(&full);
        assert_eq!(a.0, 0, "{args:?}: {}", a.2);
        assert_eq!(a, picgroup(&full));
    }
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let q = job(dir.path(), "a3.job", A3_JOB);
    let svg = dir.path().join("atom.svg");
    let (code, out, err) = picgroup(&[
        "render",
        "atom",
        "--quiver",
        &q,
        "--roots",
        "all",
        "--style",
        "width=400",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("verdict: pass"));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains("width=\"400.00\""));
    let (code, _, _) = picgroup(&["render", "picture", "--quiver", &q, "--style", "colour=red"]);
    assert_eq!(code, 1);
}

#[test]
fn report_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let q = job(dir.path(), "a3.job", A3_JOB);
    let report = dir.path().join("report.txt");
    let (code, out, _) = picgroup(&[
        "verify",
        "lemma-c",
        "--quiver",
        &q,
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert!(std::fs::read_to_string(&report)
        .unwrap()
        .contains("check: lemma-c"));
}
