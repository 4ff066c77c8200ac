use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use omlkit::cli::run_with_cap;
use tempfile::TempDir;

const MO2: &str = "\
oml mo2
elements: 0 a a' b b' 1
bottom: 0
top: 1
leq: 0 a
leq: 0 a'
leq: 0 b
leq: 0 b'
leq: a 1
leq: a' 1
leq: b 1
leq: b' 1
perp: 0 1
perp: a a'
perp: b b'
end
";

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn omlkit(args: &[&str]) -> Run {
    omlkit_capped(args, None)
}

fn omlkit_capped(args: &[&str], cap: Option<&str>) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("omlkit").chain(args.iter().copied());
    let code = run_with_cap(argv, cap, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn gen(dir: &TempDir, args: &[&str], name: &str) -> PathBuf {
    let p = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", p.to_str().unwrap()]);
    assert_eq!(omlkit(&full).code, 0);
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_mo2_matches_golden_file() {
    let r = omlkit(&["gen", "mo", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, MO2);
}

#[test]
fn gen_edge_parameters() {
    let r = omlkit(&["gen", "boolean", "0"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("elements: 0\n"));
    let r = omlkit(&["gen", "boolean", "9"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("boolean"), "{}", r.err);
    assert_eq!(omlkit(&["gen", "mo", "0"]).code, 2);
    assert_eq!(omlkit(&["gen", "hexagon"]).code, 2);
    let r = omlkit(&["gen", "product", "mo2,chain2"]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("oml product(mo2,chain2)\n"));
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let mo2 = file(&dir, "mo2.oml", MO2);
    let r = omlkit(&["validate", s(&mo2)]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(r.out.ends_with("SUMMARY 7 0\nORTHOMODULAR PASS\n"));

    let bz = gen(&dir, &["benzene"], "bz.oml");
    let r = omlkit(&["validate", s(&bz)]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("CHECK oml/ortho PASS\n"));
    assert!(r.out.lines().any(|l| l == "ORTHOMODULAR FAIL x y"));

    let r = omlkit(&["validate", s(&dir.path().join("missing.oml"))]);
    assert_eq!(r.code, 2);
    assert!(r.out.is_empty());
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = TempDir::new().unwrap();
    let empty = file(&dir, "empty.oml", "");
    let r = omlkit(&["validate", s(&empty)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("1:1: empty input"), "{}", r.err);
    let no_perp = file(&dir, "p.oml", &MO2.replace("perp: b b'\n", ""));
    let r = omlkit(&["validate", s(&no_perp)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("missing `perp`"), "{}", r.err);
}

#[test]
fn size_cap_from_environment() {
    let dir = TempDir::new().unwrap();
    let mo2 = file(&dir, "mo2.oml", MO2);
    assert_eq!(omlkit_capped(&["validate", s(&mo2)], Some("6")).code, 0);
    let r = omlkit_capped(&["validate", s(&mo2)], Some("5"));
    assert_eq!(r.code, 2);
    assert!(r.err.contains("cap"), "{}", r.err);
    // raising above the built-in cap has no effect
    assert_eq!(omlkit_capped(&["gen", "boolean", "6"], Some("100")).code, 0);
    assert_eq!(omlkit_capped(&["gen", "boolean", "3"], Some("4")).code, 2);
    assert_eq!(omlkit_capped(&["validate", s(&mo2)], Some("lots")).code, 2);
}

#[test]
fn sasaki_table() {
    let dir = TempDir::new().unwrap();
    let mo2 = file(&dir, "mo2.oml", MO2);
    let r = omlkit(&["sasaki", s(&mo2), "-a", "a"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "PI a 0 0\nPI a a a\nPI a a' 0\nPI a b a\nPI a b' a\nPI a 1 a\n");
    assert_eq!(omlkit(&["sasaki", s(&mo2), "-a", "z"]).code, 2);
    let bz = gen(&dir, &["benzene"], "bz.oml");
    assert_eq!(omlkit(&["sasaki", s(&bz), "-a", "x"]).code, 2);
}

#[test]
fn linmaps_count_and_list() {
    let dir = TempDir::new().unwrap();
    let chain = gen(&dir, &["chain2"], "c.oml");
    assert_eq!(omlkit(&["linmaps", s(&chain), "--count"]).out, "COUNT 2\n");
    let r = omlkit(&["linmaps", s(&chain), "--list"]);
    assert_eq!(r.out, "MAP 0,0 ADJOINT 0,0\nMAP 0,1 ADJOINT 0,1\nCOUNT 2\n");

    let mo2 = file(&dir, "mo2.oml", MO2);
    assert_eq!(omlkit(&["linmaps", s(&mo2), "--count"]).out, "COUNT 234\n");
    let r = omlkit(&["linmaps", s(&mo2), "--list"]);
    // ordered by the tables of element positions in the file
    let order = ["0", "a", "a'", "b", "b'", "1"];
    let maps: Vec<Vec<usize>> = r
        .out
        .lines()
        .filter_map(|l| l.strip_prefix("MAP "))
        .map(|l| l.split(' ').next().unwrap().split(',').map(|e| order.iter().position(|o| *o == e).unwrap()).collect())
        .collect();
    assert_eq!(maps.len(), 234);
    assert!(maps.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(omlkit(&["linmaps", s(&mo2), "--count", "--list"]).code, 2);
    assert_eq!(omlkit(&["linmaps", s(&mo2)]).code, 2);
}

#[test]
fn foulis_report() {
    let dir = TempDir::new().unwrap();
    let b2 = gen(&dir, &["boolean", "2"], "b2.oml");
    let r = omlkit(&["foulis", s(&b2)]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(r.out.contains("INFO lin/carrier 16\n"));
    assert!(r.out.contains("INFO lin/projections 4\n"));
    assert!(r.out.contains("CHECK foulis/axiom4_annihilator PASS\n"));
    let mo3 = gen(&dir, &["mo", "3"], "mo3.oml");
    let r = omlkit(&["foulis", s(&mo3)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("13376"), "{}", r.err);
}

#[test]
fn verify_all_outcomes() {
    let dir = TempDir::new().unwrap();
    let mo2 = file(&dir, "mo2.oml", MO2);
    let r = omlkit(&["verify-all", s(&mo2), "--jobs", "2"]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(!r.out.contains(" FAIL"));
    let suites: Vec<&str> =
        r.out.lines().filter_map(|l| l.strip_prefix("CHECK ")).map(|l| l.split('/').next().unwrap()).fold(
            Vec::new(),
            |mut v, s| {
                if v.last() != Some(&s) {
                    v.push(s);
                }
                v
            },
        );
    assert_eq!(
        suites,
        [
            "oml",
            "sasaki",
            "downset",
            "kernel",
            "dagger",
            "proposition",
            "msemilattice",
            "foulis",
            "star",
            "structure",
            "lin_action",
            "foulis_action",
            "m_claims",
            "sasaki_action"
        ]
    );
    assert!(r.out.contains("INFO explore/b_to_pi_b ortho_isomorphism\n"));

    let bz = gen(&dir, &["benzene"], "bz.oml");
    let r = omlkit(&["verify-all", s(&bz)]);
    assert_eq!(r.code, 1);
    assert!(r.out.lines().filter(|l| l.starts_with("CHECK ")).all(|l| l.starts_with("CHECK oml/")));

    let one = gen(&dir, &["one"], "one.oml");
    let r = omlkit(&["verify-all", s(&one)]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert_eq!(omlkit(&["verify-all", s(&one), "--jobs", "0"]).code, 2);
}

#[test]
fn dot_export() {
    let dir = TempDir::new().unwrap();
    let chain = gen(&dir, &["chain2"], "c.oml");
    let r = omlkit(&["dot", s(&chain)]);
    assert_eq!(r.out.matches(" [label=").count(), 2);
    assert_eq!(r.out.matches(" -> ").count(), 1);
    let mo2 = file(&dir, "mo2.oml", MO2);
    let out = dir.path().join("mo2.dot");
    assert_eq!(omlkit(&["dot", s(&mo2), "-o", s(&out)]).code, 0);
    let dot = fs::read_to_string(&out).unwrap();
    assert_eq!(dot.matches(" [label=").count(), 6);
    assert_eq!(dot.matches(" -> ").count(), 8);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bin = env!("CARGO_BIN_EXE_omlkit");
    let mo2 = file(&dir, "mo2.oml", MO2);
    let bz = gen(&dir, &["benzene"], "bz.oml");
    let code =
        |args: &[&str]| Command::new(bin).args(args).env_remove("OMLKIT_SIZE_CAP").output().unwrap().status.code();
    assert_eq!(code(&["validate", s(&mo2)]), Some(0));
    assert_eq!(code(&["validate", s(&bz)]), Some(1));
    assert_eq!(code(&["validate", "/nonexistent/x.oml"]), Some(2));
    assert_eq!(code(&["bogus"]), Some(2));
    let capped = Command::new(bin).args(["validate", s(&mo2)]).env("OMLKIT_SIZE_CAP", "4").output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
}
