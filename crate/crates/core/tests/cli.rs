//! End-to-end runs of the `isochron` binary.

use std::path::Path;
use std::process::{Command, Output};

use isochron::variety::{from_structured, generators};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isochron"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_field(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn correction_and_check_on_a_cubic_field() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_field(
        dir.path(),
        "cubic.field",
        "component 2:\np[0,1] = 1\ncomponent 3:\np[1,1] = 1*i\n",
    );
    let o = run(&["correction", "--depth", "2", &f]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Ca_2 = "), "{}", stdout(&o));

    let o = run(&["check", "--max-depth", "6", &f]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("nonisochronous at depth 2"),
        "{}",
        stdout(&o)
    );

    let o = run(&["correction", "--depth", "3", "--composition", "reverse", &f]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Ca_3 = 0"), "{}", stdout(&o));
}

#[test]
fn symbolic_correction_prints_a_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_field(
        dir.path(),
        "quad.field",
        "chart: upper\ncomponent 2 symbolic\n",
    );
    let o = run(&["correction", "--depth", "2", &f]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("Ca_2 = (2/3*i)*p[-1,2]*~p[-1,2] + (6*i)*p[1,0]*~p[1,0]"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn variety_export_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gens.json");
    let o = run(&[
        "variety",
        "--degree",
        "3",
        "--max-depth",
        "4",
        "--format",
        "structured",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let gs = from_structured(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(gs, generators(3, 4).unwrap());
}

#[test]
fn selftest_succeeds() {
    let o = run(&["selftest"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("44/44 length-4 entries"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_field(dir.path(), "bad.field", "component 2:\np[0,1] = 2x\n");
    let o = run(&["correction", "--depth", "2", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        run(&["correction", "--depth", "two", &bad]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["mould", "--word", "(1,0"]).status.code(), Some(2));
    assert_eq!(run(&["alphabet", "1"]).status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_isochron"))
        .args(["alphabet", "2"])
        .env("ISOCHRON_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
