use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use knotcount::corpus;
use knotcount::homcount::ColoringReport;
use knotcount::{KnotQuandlePresentation, SignedGaussCode};
use knotcount_cli::{
    to_json, CheckReport, InvariantTable, LinkingReport, PerturbReport, RecoverReport,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotcount")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Re-parses a JSON report and checks that it serializes back byte for byte.
fn roundtrip<T: Serialize + DeserializeOwned>(text: &str) -> T {
    let value: T = serde_json::from_str(text).unwrap();
    assert_eq!(to_json(&value), text);
    value
}

#[test]
fn check_reports_orbits() {
    let dir = tempfile::tempdir().unwrap();
    let x3 = knotcount::make_xn(3).unwrap();
    let path = write(&dir, "x3.txt", &format!("# X_3\n{x3}"));
    let o = run(&["check", "--quandle", s(&path)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "quandle: valid; orbits: {1,2,3},{4}; TOQ: yes\n");

    let o = run(&["check", "--quandle", "Rn:3", "--format", "json"]);
    let r: CheckReport = roundtrip(&stdout(&o));
    assert_eq!((r.valid, r.connected, r.toq), (true, Some(true), Some(false)));
}

#[test]
fn check_rejects_bad_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.txt", "3\n1 1 1\n2 2 1\n3 3 3\n");
    let o = run(&["check", "--quandle", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("quandle: invalid;"));
    assert!(stdout(&o).contains("axiom (ii): column 3"));

    let o = run(&["check", "--quandle", s(&bad), "--format", "json"]);
    let r: CheckReport = roundtrip(&stdout(&o));
    assert!(!r.valid);
    assert!(r.violations.iter().all(|v| v.axiom() == 2));

    let malformed = write(&dir, "m.txt", "2\n1 5\n2 2\n");
    assert_eq!(run(&["check", "--quandle", s(&malformed)]).status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["linking", "--link", "/definitely/missing"]).status.code(), Some(2));
    let bad = write(&dir, "bad.gauss", "O1+ U1-\n");
    assert_eq!(run(&["present", "--link", s(&bad)]).status.code(), Some(3));
    let syntax = write(&dir, "syntax.gauss", "O1+ Q1+\n");
    let o = run(&["present", "--link", s(&syntax)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column 5"));
    let big = write(&dir, "big.gauss", &corpus::torus_2_2m(5).to_string());
    assert_eq!(
        run(&["hom-count", "--link", s(&big), "--quandle", "Xn:9", "--method", "oracle"]).status.code(),
        Some(4)
    );
    let knot = write(&dir, "trefoil.gauss", corpus::TREFOIL);
    assert_eq!(
        run(&["invariants", "--link", s(&knot), "--method", "closed", "--n-max", "3"]).status.code(),
        Some(5)
    );
    assert_eq!(run(&["recover", "--link", s(&knot)]).status.code(), Some(5));
    let o = run(&["--quiet", "linking", "--link", s(&knot)]);
    assert_eq!(o.status.code(), Some(5));
    assert!(o.stderr.is_empty());
}

#[test]
fn present_unknot() {
    let dir = tempfile::tempdir().unwrap();
    let unknot = write(&dir, "unknot.gauss", corpus::UNKNOT);
    let o = run(&["present", "--link", s(&unknot)]);
    assert_eq!(stdout(&o), "generators: 1\n  a1 (component 1)\nrelations: 0\n");
    let o = run(&["present", "--link", s(&unknot), "--format", "json"]);
    let p: KnotQuandlePresentation = roundtrip(&stdout(&o));
    assert_eq!((p.generator_count(), p.relations.len()), (1, 0));

    let trefoil = write(&dir, "trefoil.gauss", corpus::TREFOIL);
    let text = stdout(&run(&["present", "--link", s(&trefoil)]));
    assert!(text.contains("a2 = a1 ▷ a3"), "{text}");
}

#[test]
fn linking_output() {
    let dir = tempfile::tempdir().unwrap();
    let link = write(&dir, "six.gauss", corpus::SIX_MINUS_TWO);
    let o = run(&["linking", "--link", s(&link), "--format", "json"]);
    let r: LinkingReport = roundtrip(&stdout(&o));
    assert_eq!((r.lk12, r.lk21, r.lk.to_string()), (6, -2, "2".to_string()));
    let v = write(&dir, "v.gauss", corpus::VIRTUAL_HOPF);
    let o = run(&["linking", "--link", s(&v), "--format", "csv", "--quiet"]);
    assert_eq!(stdout(&o), "1,0,1/2,nonclassical_evidence\n");
}

#[test]
fn hom_count_output() {
    let dir = tempfile::tempdir().unwrap();
    let hopf = write(&dir, "hopf.gauss", corpus::HOPF);
    for method in ["oracle", "propagate"] {
        let o = run(&["hom-count", "--link", s(&hopf), "--quandle", "Xn:2", "--method", method, "--list", "--format", "json"]);
        let r: ColoringReport = roundtrip(&stdout(&o));
        assert_eq!(r.count, 5);
        assert_eq!(r.colorings.unwrap().len(), 5);
    }
    let o = run(&["hom-count", "--link", s(&hopf), "--quandle", "Tn:3"]);
    assert_eq!(stdout(&o), "count: 9 (method propagate, 2 arcs, target order 3)\n");
}

#[test]
fn invariants_tables() {
    let dir = tempfile::tempdir().unwrap();
    let unlink = write(&dir, "unlink.gauss", corpus::UNLINK);
    let o = run(&["invariants", "--link", s(&unlink), "--n-max", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,count,class\n2,9,(n+1)^2\n3,16,(n+1)^2\n4,25,(n+1)^2\n");

    let o = run(&["invariants", "--link", s(&unlink), "--n-min", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["invariants", "--link", s(&unlink), "--n-max", "65", "--method", "closed"]);
    assert_eq!(o.status.code(), Some(1));

    for (name, code) in corpus::named() {
        if code.component_count() != 2 {
            continue;
        }
        let path = write(&dir, &format!("{name}.gauss"), &code.to_string());
        let table = |method: &str| {
            let o = run(&["invariants", "--link", s(&path), "--n-max", "4", "--method", method, "--format", "json"]);
            assert!(o.status.success(), "{name} {method}");
            let t: InvariantTable = roundtrip(&stdout(&o));
            t.rows
        };
        let closed = table("closed");
        assert_eq!(closed, table("oracle"), "{name}");
        assert_eq!(closed, table("propagate"), "{name}");
    }
}

#[test]
fn recover_torus_2_6() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "t26.gauss", &corpus::torus_2_2m(3).to_string());
    let o = run(&["recover", "--link", s(&path), "--format", "json"]);
    let r: RecoverReport = roundtrip(&stdout(&o));
    assert_eq!((r.abs_lk, r.s.clone(), r.max_n), (3, vec![3], 6));
    let text = stdout(&run(&["recover", "--link", s(&path)]));
    assert!(text.starts_with("|lk|: 3\nS: {3}\nS': {}\nN: 6\n"), "{text}");
    // below the inter-component crossing count
    assert_eq!(run(&["recover", "--link", s(&path), "--max-n", "4"]).status.code(), Some(1));
    let o = run(&["recover", "--link", s(&path), "--max-n", "9", "--method", "propagate", "--format", "json"]);
    let r: RecoverReport = roundtrip(&stdout(&o));
    assert_eq!(r.abs_lk, 3);
}

#[test]
fn perturb_output_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let hopf = write(&dir, "hopf.gauss", corpus::HOPF);
    let o = run(&["perturb", "--link", s(&hopf), "--seed", "7", "--budget", "3", "--format", "json"]);
    let r: PerturbReport = roundtrip(&stdout(&o));
    let code = SignedGaussCode::parse(&r.code).unwrap();
    assert_eq!(code.crossing_count(), 5);
    let table = stdout(&run(&["perturb", "--link", s(&hopf), "--seed", "7", "--budget", "3"]));
    assert_eq!(SignedGaussCode::parse(&table).unwrap(), code);
    let again = stdout(&run(&["perturb", "--link", s(&hopf), "--seed", "7", "--budget", "3", "--format", "json"]));
    assert_eq!(again, stdout(&o));
}

#[test]
fn reads_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_knotcount"))
        .args(["linking", "--link", "-", "--format", "csv", "--quiet"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(corpus::HOPF.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "1,1,1,none\n");
}
