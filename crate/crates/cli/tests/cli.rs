use std::path::PathBuf;
use std::process::{Command, Output};

use ddesolve::parser::parse_poly;
use ddesolve::QPoly;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddesolve")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn q(s: &str) -> QPoly {
    parse_poly(s.trim(), &["t", "z0"]).unwrap()
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ddesolve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const CUBIC: &str = "81*t^2*z0^3-81*t^2*z0^2+27*t^2*z0+18*t*z0^2-3*t^2-66*t*z0+47*t+z0-1";
const QUADRATIC: &str = "16*t*z0^2-8*t*z0+t-16";

#[test]
fn solve_constellations_default() {
    let c3 = data("3constellations.dde");
    let o = run(&["solve", "--input", c3.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let expected = &q(CUBIC) * &q(QUADRATIC);
    assert_eq!(q(&stdout(&o)), expected.primitive_integer());
}

#[test]
fn solve_geometry_on_z0() {
    let c3 = data("3constellations.dde");
    let o = run(&["solve", "--input", c3.to_str().unwrap(), "--algorithm", "geometry", "--variable", "z0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = q(&stdout(&o));
    assert!(r.exact_divide(&q(CUBIC)).is_ok());
}

#[test]
fn json_output_is_reproducible() {
    let c3 = data("3constellations.dde");
    let args = ["solve", "--input", c3.to_str().unwrap(), "--format", "json", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["algorithm"], "elimination");
    assert_eq!(v["bidegree"]["b_t"], 3);
    assert_eq!(v["bidegree"]["b_z0"], 5);
    assert!(v["certified_order"].as_u64().unwrap() >= 41);
    assert!(!v["points"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    let o = run(&["solve", "--input", "no/such/file.dde"]);
    assert_eq!(o.status.code(), Some(2));

    let bad = tmp("bad.dde", "k = 1\na = 1\nvars = [x, z0, t, u]\nrhs = \"1 + t*(\"\n");
    assert_eq!(run(&["solve", "--input", bad.to_str().unwrap()]).status.code(), Some(2));

    let dyck = tmp("dyck.dde", "k = 1\na = 0\nvars = [x, z0, t, u]\nrhs = \"1 + t*u*x + t*D1\"\n");
    let o = run(&["solve", "--input", dyck.to_str().unwrap(), "--algorithm", "geometry"]);
    assert_eq!(o.status.code(), Some(5));

    // without the right-hand side nothing can be guessed
    let p_only = tmp("p.dde", "k = 1\na = 0\nvars = [x, z0, t, u]\nP = \"u*(1-x) + t*u^2*x + t*(x-z0)\"\n");
    let o = run(&["solve", "--input", p_only.to_str().unwrap(), "--algorithm", "hybrid"]);
    assert_eq!(o.status.code(), Some(5));

    let o = run(&["solve", "--input", dyck.to_str().unwrap(), "--max-primes", "1"]);
    assert_eq!(o.status.code(), Some(4));

    let o = run(&["solve", "--input", dyck.to_str().unwrap(), "--algorithm", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn log_has_one_record_per_point() {
    let dyck = tmp("dyck-log.dde", "k = 1\na = 0\nvars = [x, z0, t, u]\nrhs = \"1 + t*u*x + t*D1\"\n");
    let log = std::env::temp_dir().join(format!("ddesolve-cli-{}-log.jsonl", std::process::id()));
    let o = run(&["solve", "--input", dyck.to_str().unwrap(), "--format", "json", "--log", log.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&log)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), v["points"].as_array().unwrap().len() + 1);
    assert!(lines[0]["micros"].is_u64());
    assert_eq!(lines.last().unwrap()["r"], v["r"]);
}

#[test]
fn p_only_input_solves() {
    let p_only = tmp("p2.dde", "k = 1\na = 0\nvars = [x, z0, t, u]\nP = \"u*(1-x) + t*u^2*x + t*(x-z0)\"\n");
    let o = run(&["solve", "--input", p_only.to_str().unwrap(), "--threads", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(q(&stdout(&o)), q("t^2*z0^2 - z0 + 1"));
}

#[test]
fn expand_lists_coefficients() {
    let c3 = data("3constellations.dde");
    let o = run(&["expand", "--input", c3.to_str().unwrap(), "--order", "6"]);
    assert!(o.status.success());
    let got: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(got, ["1", "1", "6", "54", "594", "7371", "99144"]);

    let o = run(&["expand", "--input", c3.to_str().unwrap(), "--order", "0"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn expand_json_feeds_guess() {
    let c3 = data("3constellations.dde");
    let o = run(&["expand", "--input", c3.to_str().unwrap(), "--order", "31", "--format", "json"]);
    assert!(o.status.success());
    let series = tmp("series.json", &stdout(&o));
    let g = run(&["guess", "--series", series.to_str().unwrap(), "--bt", "3", "--bz0", "5", "--format", "json"]);
    assert!(g.status.success(), "{}", String::from_utf8_lossy(&g.stderr));
    let v: serde_json::Value = serde_json::from_slice(&g.stdout).unwrap();
    assert_eq!(q(v["m"].as_str().unwrap()), q(CUBIC));
    assert_eq!(v["certified"], true);
    assert!(v["order"].as_u64().unwrap() >= 31);

    // plain text listing works too
    let o = run(&["expand", "--input", c3.to_str().unwrap(), "--order", "31"]);
    let series = tmp("series.txt", &stdout(&o));
    let g = run(&["guess", "--series", series.to_str().unwrap(), "--bt", "3", "--bz0", "5"]);
    assert_eq!(q(&stdout(&g)), q(CUBIC));

    let g = run(&["guess", "--series", series.to_str().unwrap(), "--bt", "1", "--bz0", "1"]);
    assert_eq!(g.status.code(), Some(3));
}

#[test]
fn check_orders() {
    let c3 = data("3constellations.dde");
    let cubic = tmp("cubic.txt", CUBIC);
    let o = run(&["check", "--input", c3.to_str().unwrap(), "--annihilator", cubic.to_str().unwrap(), "--order", "31"]);
    assert_eq!(stdout(&o).trim(), "31");

    let one = tmp("one.txt", "1");
    let o = run(&["check", "--input", c3.to_str().unwrap(), "--annihilator", one.to_str().unwrap(), "--order", "10"]);
    assert_eq!(stdout(&o).trim(), "0");

    let zero = tmp("zero.txt", "0");
    let o = run(&["check", "--input", c3.to_str().unwrap(), "--annihilator", zero.to_str().unwrap(), "--order", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_tamari_equation() {
    let tamari = data("3tamari.dde");
    let r = data("3tamari_R.txt");
    let o = run(&["check", "--input", tamari.to_str().unwrap(), "--annihilator", r.to_str().unwrap(), "--order", "60", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verified_order"], 60);
    assert_eq!(v["complete"], true);
}
