use std::path::PathBuf;
use std::process::Command;

use quadpencil::krasnov::{self, SignWord};
use quadpencil::pencilalg::{self, SignatureProfile};
use quadpencil::report::{self, PencilDocument};
use quadpencil::verdict::{RealLocusStatus, Reason, Status};
use quadpencil::Error;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn classify_fixture(name: &str) -> quadpencil::Result<quadpencil::ClassificationReport> {
    report::classify_json(&std::fs::read_to_string(fixture(name)).unwrap())
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadpencil"))
}

#[test]
fn del_pezzo_fixtures() {
    let a = classify_fixture("del_pezzo_221.json").unwrap();
    assert_eq!(a.krasnov.canonical(), &[1, 2, 2]);
    assert_eq!(a.involution.to_string(), "diag(-1,1*,1*,1*,-1)");
    assert_eq!(a.r, 5);
    assert_eq!(a.verdict.status, Status::OutOfScope);

    let b = classify_fixture("del_pezzo_5.json").unwrap();
    assert_eq!(b.krasnov.canonical(), &[5]);
    assert_eq!(b.involution.to_string(), "diag(1,-1,1*,-1,1)");
    assert!(!b.has_point);
}

#[test]
fn definite_fixture_has_empty_real_locus() {
    let rep = classify_fixture("n2_definite_7.json").unwrap();
    assert_eq!(rep.krasnov.canonical(), &[7]);
    assert_eq!(rep.real_locus, RealLocusStatus::Empty);
    assert_eq!(rep.verdict.reason, Reason::EmptyRealLocus);
}

#[test]
fn open_class_fixture() {
    let rep = classify_fixture("n3_135.json").unwrap();
    assert_eq!(rep.krasnov.canonical(), &[1, 3, 5]);
    assert_eq!(rep.involution.to_string(), "diag(-1,1,-1,1*,-1,-1,-1,1,-1)");
    assert_eq!(rep.verdict.status, Status::Open);
    assert_eq!(rep.gram.labels, vec!["h^3", "Q1", "Q2", "Q3"]);
}

#[test]
fn special_root_fixtures() {
    let inf = classify_fixture("n1_infinity.json").unwrap();
    assert_eq!(inf.points.last().unwrap().root, pencilalg::RootLocation::Infinity);
    assert_eq!(inf.points[1].root.to_string(), "u = 0");
    assert_eq!(inf.krasnov.canonical(), &[1, 1, 3]);

    let cx = classify_fixture("n1_complex_pair.json").unwrap();
    assert_eq!((cx.r, cx.complex_pairs), (3, 1));
    assert_eq!(cx.involution_class.c, 1);

    let irr = classify_fixture("n1_irrational.json").unwrap();
    assert_eq!(irr.krasnov.canonical(), &[1, 1, 3]);
    assert_eq!(irr.real_locus, RealLocusStatus::Disconnected);
}

#[test]
fn failing_fixtures() {
    assert!(matches!(classify_fixture("singular.json"), Err(Error::SingularIntersection)));
    assert!(matches!(classify_fixture("malformed.json"), Err(Error::Parse(_))));
    assert!(matches!(classify_fixture("unsupported_n.json"), Err(Error::UnsupportedDimension(0))));
}

#[test]
fn conic_sequences_from_the_walk() {
    let a = SignatureProfile::from_arcs(0, &[(0, 3), (1, 2), (2, 1)]).unwrap();
    assert_eq!(krasnov::krasnov_invariant(&a).to_string(), "(3)");
    assert_eq!(krasnov::discriminant_signs(&a).to_string(), "(-1,+1,-1)");
    let b = SignatureProfile::from_arcs(0, &[(1, 2), (2, 1), (1, 2)]).unwrap();
    assert_eq!(krasnov::krasnov_invariant(&b).to_string(), "(1,1,1)");
    assert_eq!(krasnov::discriminant_signs(&b).to_string(), "(+1,+1,+1)");
    let w = SignWord::new(vec![1, 1, 1, -1, 1, -1, -1, 1, -1]).unwrap();
    assert_eq!(krasnov::shuffle_to_invariant(&w).unwrap().to_string(), "(1,4,4)");
}

#[test]
fn text_report_is_deterministic() {
    let a = classify_fixture("n3_135.json").unwrap().to_string();
    let b = classify_fixture("n3_135.json").unwrap().to_string();
    assert_eq!(a, b);
    assert!(a.contains("krasnov invariant: (1,3,5)"));
}

#[test]
fn cli_exit_codes() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code().unwrap();
    let f = |name: &str| fixture(name).to_string_lossy().into_owned();
    assert_eq!(code(&["classify", &f("del_pezzo_5.json")]), 0);
    assert_eq!(code(&["classify", &f("malformed.json")]), 2);
    assert_eq!(code(&["classify", &f("singular.json")]), 3);
    assert_eq!(code(&["classify", &f("unsupported_n.json")]), 4);
    assert_eq!(code(&["classify", &f("does_not_exist.json")]), 2);
    assert_eq!(code(&["classify"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["atlas", "--n", "5"]), 4);
    assert_eq!(code(&["atlas", "--n", "two"]), 2);
    assert_eq!(code(&["lattice", "relation", "--n", "1", "+++", "+++++"]), 2);
}

#[test]
fn cli_classify_json_round_trips() {
    let out = bin().args(["--format", "json", "classify"]).arg(fixture("n3_135.json")).output().unwrap();
    assert!(out.status.success());
    let rep = quadpencil::ClassificationReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(rep, classify_fixture("n3_135.json").unwrap());
}

#[test]
fn cli_classifies_a_written_document() {
    let doc = PencilDocument::from_json(&std::fs::read_to_string(fixture("del_pezzo_221.json")).unwrap()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("copy.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    let out = bin().arg("classify").arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("krasnov invariant: (1,2,2)"));
}

#[test]
fn cli_fixture_dir() {
    let out = bin().args(["--format", "json", "classify", "--fixture-dir"]).arg(fixture("")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 10);
    let ok = entries.iter().filter(|e| e.get("report").is_some()).count();
    assert_eq!(ok, 7);
}

#[test]
fn cli_lattice_queries() {
    let run = |args: &[&str]| {
        let out = bin().args(args).output().unwrap();
        assert!(out.status.success(), "{args:?}");
        String::from_utf8(out.stdout).unwrap()
    };
    let counts = run(&["lattice", "counts", "--n", "2"]);
    assert!(counts.contains("disjoint from the first: 35"));
    assert!(counts.contains("meeting the first in an (n-1)-plane: 7"));
    assert!(counts.contains("reducible quadrics: 224"));
    let odd = run(&["lattice", "counts", "--n", "1", "--parity", "odd"]);
    assert!(odd.contains("disjoint from the first: 10"));
    assert!(run(&["lattice", "relation", "--n", "1", "+++++", "++--+"]).contains("disjoint"));
    let dec = run(&["lattice", "decompose", "--n", "3", "--degree", "8", "--self-intersection", "14"]);
    assert!(dec.contains("h^3 + Q1 + Q2"), "{dec}");
    assert!(dec.contains("unique up to Weyl"));
    assert_eq!(run(&["lattice", "weights", "--n", "1"]).lines().count(), 16);
    let atlas = run(&["atlas", "--n", "3"]);
    assert!(atlas.contains("(1,3,5)"));
    assert!(atlas.contains("Open(NoKnownConstruction)"));
}
