use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use shellkit::format::{parse_complex, parse_meta, write_complex};
use shellkit::gadgets::turbine;
use shellkit::RelativeComplex;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shellkit")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let two = write(d.path(), "two.cx", "# two triangles on a tree\nf 1 2 3\nf 2 3 4\ng 1 2\n");
    let order = write(d.path(), "two.sh", "s 1 2 3\ns 2 3 4\n");
    assert_eq!(code(&run(&["check", s(&two), s(&order), "--relative"])), 0);
    let bow = write(d.path(), "bow.cx", "f 1 2 3\nf 3 4 5\n");
    let bow_order = write(d.path(), "bow.sh", "s 1 2 3\ns 3 4 5\n");
    let o = run(&["check", s(&bow), s(&bow_order)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("step 2"));
    let truncated = write(d.path(), "trunc.sh", "s 1 2 3\ns 2 3");
    assert_eq!(code(&run(&["check", s(&two), s(&truncated), "--relative"])), 2);
    let junk = write(d.path(), "junk.cx", "f 1 2 3\nq 2\n");
    assert_eq!(code(&run(&["check", s(&junk), s(&order)])), 2);
    assert_eq!(code(&run(&["check", "/nonexistent", s(&order)])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn solve_verdicts() {
    let d = tempfile::tempdir().unwrap();
    let t2 = turbine(2).unwrap();
    let abs = write(d.path(), "t2.cx", &write_complex(&RelativeComplex::absolute(t2.complex.clone()), &[]));
    let cert = d.path().join("t2.sh");
    let o = run(&["solve", s(&abs), "--out", s(&cert)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("# SHELLABLE\n"));
    assert_eq!(code(&run(&["check", s(&abs), s(&cert)])), 0);

    let rel = RelativeComplex::new(t2.complex.clone(), t2.marked["tree"].clone()).unwrap();
    let relp = write(d.path(), "t2rel.cx", &write_complex(&rel, &[]));
    let o = run(&["solve", s(&relp)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("UNSHELLABLE"));

    let t5 = write(d.path(), "t5.cx", &write_complex(&RelativeComplex::absolute(turbine(5).unwrap().complex), &[]));
    let big = write(
        d.path(),
        "big.cx",
        &(fs::read_to_string(&t5).unwrap() + "f 1 2 3\nf 3 4 5\n"),
    );
    let o = run(&["solve", s(&big), "--budget", "1000"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("BUDGET-EXHAUSTED"));
}

#[test]
fn gadget_files() {
    let o = run(&["gadget", "blade"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 9);
    assert!(text.contains("(1,6,14,9)"));
    assert_eq!(text, stdout(&run(&["gadget", "blade"])));
    let t3 = stdout(&run(&["gadget", "turbine:3"]));
    assert_eq!(t3.lines().filter(|l| l.starts_with("f ")).count(), 33);
    assert_eq!(parse_complex(&t3).unwrap().delta(), &turbine(3).unwrap().complex);
    assert_eq!(code(&run(&["gadget", "turbine:0"])), 2);
    assert_eq!(code(&run(&["gadget", "dodecahedron"])), 2);
    for g in ["hemisphere", "separated-hemisphere", "tricorne", "choice", "choice-separated"] {
        assert_eq!(code(&run(&["gadget", g])), 0, "{g}");
    }
}

#[test]
fn reduce_certify_check_extract() {
    let d = tempfile::tempdir().unwrap();
    let cnf = write(d.path(), "phi.cnf", "c (x or not y) and (not x or y)\np cnf 2 2\n1 -2 0\n-1 2 0\n");
    let cx = d.path().join("phi.cx");
    let meta = d.path().join("phi.json");
    assert_eq!(code(&run(&["reduce", s(&cnf), "--out", s(&cx), "--meta", s(&meta)])), 0);
    let text = fs::read_to_string(&cx).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 114);
    let m = parse_meta(&fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(&m.complex(), parse_complex(&text).unwrap().delta());
    assert_eq!(stdout(&run(&["homology", s(&cx)])).trim(), "0 0 2");

    let cert = d.path().join("phi.sh");
    assert_eq!(code(&run(&["certify", s(&cnf), "v -1 -2 0", "--out", s(&cert)])), 0);
    assert_eq!(code(&run(&["check", s(&cx), s(&cert)])), 0);
    let o = run(&["extract", s(&cnf), s(&cert)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "v -1 -2 0");

    let afile = write(d.path(), "a.txt", "v 1 -2 0\n");
    let o = run(&["certify", s(&cnf), s(&afile)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("clause 2"));
    assert_eq!(code(&run(&["certify", s(&cnf), "v 1 0"])), 2);
}

#[test]
fn reduce_strict_and_normalized() {
    let d = tempfile::tempdir().unwrap();
    let cnf = write(d.path(), "unit.cnf", "p cnf 2 3\n1 0\n1 2 0\n-1 -2 0\n");
    assert_eq!(code(&run(&["reduce", s(&cnf)])), 2);
    let o = run(&["reduce", s(&cnf), "--normalize"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), stdout(&run(&["reduce", s(&cnf), "--normalize"])));
}

#[test]
fn stats_and_relative_homology() {
    let d = tempfile::tempdir().unwrap();
    let two = write(d.path(), "two.cx", "f 1 2 3\nf 2 3 4\n");
    let o = stdout(&run(&["stats", s(&two)]));
    assert!(o.contains("f-vector (1,4,5,2)"));
    assert!(o.contains("h-vector (1,1,0,0)"));
    assert!(o.contains("free faces 6"));
    assert!(o.contains("pure true"));
    let eq = write(
        d.path(),
        "disc.cx",
        "f 1 2 3\nf 1 3 4\ng 1 2\ng 2 3\ng 3 4\ng 4 1\n",
    );
    assert_eq!(stdout(&run(&["homology", s(&eq)])).trim(), "0 0 1");
}
