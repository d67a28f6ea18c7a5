use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use bxmod::catalogue::*;
use bxmod::cli::*;
use bxmod::finring::Mat;
use bxmod::xmod::{identity_morphism, BXModMorphism, BXModObj};

fn catalogue_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/catalogue.bxm")
}

fn shipped() -> String {
    std::fs::read_to_string(catalogue_path()).unwrap()
}

fn mor(x: &Arc<BXModObj>, y: &Arc<BXModObj>, rows: &[&[u32]]) -> BXModMorphism {
    let m = Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect(), y.dim()).unwrap();
    BXModMorphism::new(x.clone(), y.clone(), m).unwrap()
}

/// The catalogue document as built from library objects.
fn built_catalogue() -> Workspace {
    let mut ws = Workspace::new(f2());
    for (name, a) in [("n2", n2()), ("r2", r2()), ("r3c", r3c())] {
        ws.add_algebra(name, &a);
    }
    for (name, o) in catalogue_n2().into_iter().chain(catalogue_r2()) {
        ws.add_object(&name, o).unwrap();
    }
    ws.add_object("sq_r3c", sq_r3c()).unwrap();
    let o = |n: &str| ws.object(n).unwrap().clone();
    let (m1, m2, id_n2, ext_n2) = (o("m1"), o("m2"), o("id_n2"), o("ext_n2"));
    let (id_r2, ext_r2) = (o("id_r2"), o("ext_r2"));
    let morphisms = [
        ("id_m2", identity_morphism(&m2)),
        ("proj", mor(&m2, &m1, &[&[1], &[0]])),
        ("zero", mor(&m2, &m1, &[&[0], &[0]])),
        ("diag", mor(&m1, &m2, &[&[1, 1]])),
        ("swap", mor(&m2, &m2, &[&[0, 1], &[1, 0]])),
        ("shift", mor(&m2, &m2, &[&[1, 1], &[0, 1]])),
        // (u, v) spans {((0,1),(0,0))}: neither reflexive nor symmetric
        ("u_e2", mor(&m1, &m2, &[&[0, 1]])),
        ("v_zero", mor(&m1, &m2, &[&[0, 0]])),
        ("ext_n2_boundary", mor(&ext_n2, &id_n2, &[&[1, 0], &[0, 1], &[0, 0]])),
        ("ext_r2_boundary", mor(&ext_r2, &id_r2, &[&[1, 0], &[0, 1], &[0, 0]])),
    ];
    for (name, m) in morphisms {
        ws.add_morphism(name, m).unwrap();
    }
    ws
}

#[test]
fn shipped_catalogue_is_the_library_catalogue() {
    let text = serialize(&built_catalogue());
    if std::env::var_os("BXM_BLESS").is_some() {
        std::fs::write(catalogue_path(), &text).unwrap();
    }
    assert_eq!(shipped(), text, "rerun with BXM_BLESS=1 to regenerate data/catalogue.bxm");
}

#[test]
fn shipped_catalogue_validates() {
    let (ws, report) = load(&shipped()).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert_eq!(ws.objects.len(), 8);
    assert_eq!(ws, built_catalogue());
}

#[test]
fn empty_documents() {
    let ws = parse_bxm("bxm 1\nmodulus 2\n").unwrap();
    assert!(ws.algebras.is_empty() && ws.objects.is_empty());
    assert_eq!(serialize(&ws), "bxm 1\nmodulus 2\n");
    assert_eq!(serialize(&parse_bxm("# comment\n\nbxm 1\nmodulus 3 # p\n").unwrap()), "bxm 1\nmodulus 3\n");
}

fn syntax_at(text: &str) -> (usize, usize, String) {
    match parse_bxm(text) {
        Err(CliError::Syntax { line, column, message }) => (line, column, message),
        other => panic!("expected a syntax error, got {other:?}"),
    }
}

#[test]
fn syntax_errors_name_the_line() {
    let (line, _, msg) = syntax_at("bxm 1\nmodulus 2\nalgebra a dim 1\n  mult 0 0 : 1 0\n");
    assert_eq!(line, 4);
    assert!(msg.contains("coefficients"), "{msg}");
    let (line, col, _) = syntax_at("bxm 1\nmodulus 2\nalgebra a dim 1\n  mult 0 0 : 2\n");
    assert_eq!((line, col), (4, 14));
    let (line, _, _) = syntax_at("bxm 1\nmodulus 4\n");
    assert_eq!(line, 2);
    let (line, col, _) = syntax_at("bxm 1\nmodulus 2\nalgebra a dim 1\n  mult 0 0 : 1\n  frob 1\n");
    assert_eq!((line, col), (5, 3));
    let (line, _, msg) = syntax_at("bxm 1\nmodulus 2\nalgebra a dim 2\n  mult 0 0 : 1 0\n");
    assert_eq!(line, 3);
    assert!(msg.contains("missing"), "{msg}");
    let (line, _, _) = syntax_at("bxm 2\n");
    assert_eq!(line, 1);
    let (line, _, msg) = syntax_at("bxm 1\nmodulus 2\nalgebra a dim 0\nalgebra a dim 0\n");
    assert_eq!(line, 4);
    assert!(msg.contains("duplicate"), "{msg}");
}

#[test]
fn unresolved_references() {
    let doc = "bxm 1\nmodulus 2\nalgebra a dim 0\naction a b act\n";
    match parse_bxm(doc) {
        Err(e @ CliError::Reference { line: 4, column: 10, .. }) => assert_eq!(e.exit_code(), EXIT_PARSE),
        other => panic!("{other:?}"),
    }
}

#[test]
fn validation_failures_are_reported() {
    // 1·x = 1 in r2
    let doc = shipped().replace("algebra r2 dim 2\n  mult 0 0 : 1 0\n  mult 0 1 : 0 1", "algebra r2 dim 2\n  mult 0 0 : 1 0\n  mult 0 1 : 1 0");
    assert_ne!(doc, shipped());
    match load(&doc) {
        Ok((_, report)) => assert!(!report.passed()),
        Err(e) => panic!("{e}"),
    }
    assert!(matches!(parse_bxm(&doc), Err(CliError::Validation { .. })));
}

#[test]
fn round_trip_is_a_fixed_point() {
    let text = shipped();
    let ws = parse_bxm(&text).unwrap();
    let again = serialize(&ws);
    assert_eq!(again, text);
    assert_eq!(parse_bxm(&again).unwrap(), ws);
}

#[test]
fn equal_workspaces_serialize_identically() {
    let canonical = "bxm 1\nmodulus 2\n\nalgebra a dim 1\n  mult 0 0 : 0\n\nalgebra b dim 1\n  mult 0 0 : 1\n\nbraiding t base b carrier a\n  default : 1\n  pair 0 0 : 0\n";
    // sections out of order, a default that is not the most common value
    let shuffled = "bxm 1\nmodulus 2\nbraiding t base b carrier a\n  pair 1 1 : 1\n  pair 0 1 : 1\n  pair 1 0 : 1\nalgebra b dim 1\n  mult 0 0 : 1\nalgebra a dim 1\n  mult 0 0 : 0\n";
    let (x, _) = load(canonical).unwrap();
    let (y, _) = load(shuffled).unwrap();
    assert_eq!(x, y);
    assert_eq!(serialize(&x), canonical);
    assert_eq!(serialize(&y), canonical);
}

fn opts() -> Options {
    Options::default()
}

fn args(a: &[&str]) -> Vec<String> {
    a.iter().map(|s| s.to_string()).collect()
}

#[test]
fn construct_examples() {
    let text = shipped();
    let out = cmd_construct(&text, "equaliser", &args(&["id_m2", "id_m2"]), true, &opts()).unwrap();
    assert_eq!(out.exit, EXIT_PASS, "{}", out.report.render_text());
    let ws = parse_bxm(out.emitted.as_deref().unwrap()).unwrap();
    assert_eq!(ws.object("equaliser_id_m2_id_m2").unwrap().dim(), 2);

    let out = cmd_construct(&text, "kernel-pair", &args(&["proj"]), true, &opts()).unwrap();
    assert_eq!(out.exit, EXIT_PASS);
    let ws = parse_bxm(out.emitted.as_deref().unwrap()).unwrap();
    assert_eq!(ws.object("kernel_pair_proj").unwrap().dim(), 3);
    assert_eq!(ws.morphisms["kernel_pair_proj_leg0"].target, "m2");

    let out = cmd_construct(&text, "coequaliser", &args(&["proj"]), true, &opts()).unwrap();
    assert_eq!(out.exit, EXIT_PASS);
    let emitted = out.emitted.unwrap();
    let ws = parse_bxm(&emitted).unwrap();
    assert_eq!(ws.object("coequaliser_proj").unwrap().dim(), 1);
    // emitted documents are canonical
    assert_eq!(serialize(&ws), emitted);
}

#[test]
fn every_construction_emits_a_valid_document() {
    let text = shipped();
    for (kind, a) in [
        ("equaliser", vec!["id_m2", "swap"]),
        ("product", vec!["m2", "ext_n2"]),
        ("pullback", vec!["proj", "zero"]),
        ("kernel-pair", vec!["ext_r2_boundary"]),
        ("coequaliser", vec!["ext_n2_boundary"]),
    ] {
        let out = cmd_construct(&text, kind, &args(&a), true, &opts()).unwrap();
        let label = format!("{kind} {a:?}");
        assert_eq!(out.exit, EXIT_PASS, "{label}: {}", out.report.render_text());
        let (_, report) = load(out.emitted.as_deref().unwrap()).unwrap();
        assert!(report.passed(), "{label}");
    }
    // the kernel pair of proj is a reflexive relation other than the diagonal
    let kp = with_kernel_pair();
    let out = cmd_construct(&kp, "quotient", &args(&["kernel_pair_proj_leg0", "kernel_pair_proj_leg1"]), true, &opts())
        .unwrap();
    assert_eq!(out.exit, EXIT_PASS, "{}", out.report.render_text());
    let ws = parse_bxm(out.emitted.as_deref().unwrap()).unwrap();
    assert_eq!(ws.object("quotient_kernel_pair_proj_leg0_kernel_pair_proj_leg1").unwrap().dim(), 1);
}

fn with_kernel_pair() -> String {
    cmd_construct(&shipped(), "kernel-pair", &args(&["proj"]), true, &opts()).unwrap().emitted.unwrap()
}

#[test]
fn construction_errors() {
    let text = shipped();
    // quotient by a relation that is not an equivalence
    let out = cmd_construct(&text, "quotient", &args(&["u_e2", "v_zero"]), true, &opts()).unwrap();
    assert_eq!(out.exit, EXIT_FAIL);
    assert!(out.emitted.is_none());
    assert!(matches!(
        cmd_construct(&text, "kernel-pair", &args(&["nope"]), false, &opts()),
        Err(CliError::Usage(_))
    ));
    assert!(matches!(cmd_construct(&text, "colimit", &args(&[]), false, &opts()), Err(CliError::Usage(_))));
}

#[test]
fn check_examples() {
    let text = shipped();
    let run = |c: &str, a: &[&str]| cmd_check(&text, c, &args(a), &opts()).unwrap();
    assert_eq!(run("regular-epi", &["id_m2"]).exit, EXIT_PASS);
    assert_eq!(run("regular-epi", &["proj"]).exit, EXIT_PASS);
    assert_eq!(run("regular-epi", &["zero"]).exit, EXIT_FAIL);
    assert_eq!(run("factorization", &["proj"]).exit, EXIT_PASS);
    assert_eq!(run("factorization", &["zero"]).exit, EXIT_FAIL);
    assert_eq!(run("stability", &["proj", "zero"]).exit, EXIT_PASS);
    assert_eq!(run("equivalence", &["id_m2", "id_m2"]).exit, EXIT_PASS);
    let bad = run("equivalence", &["u_e2", "v_zero"]);
    assert_eq!(bad.exit, EXIT_FAIL);
    let out = run("effective", &["u_e2", "v_zero"]);
    assert_eq!(out.exit, EXIT_FAIL);
    assert!(out.report.witness.as_deref().unwrap().contains("precondition"), "{}", out.report.render_text());
    assert_eq!(run("effective", &["id_m2", "id_m2"]).exit, EXIT_PASS);
    let kp = with_kernel_pair();
    let legs = args(&["kernel_pair_proj_leg0", "kernel_pair_proj_leg1"]);
    assert_eq!(cmd_check(&kp, "effective", &legs, &opts()).unwrap().exit, EXIT_PASS);
    assert_eq!(run("bilinearity", &["id_r2"]).exit, EXIT_PASS);
}

#[test]
fn suite_passes_and_is_deterministic() {
    let text = shipped();
    let a = cmd_suite(&text, &opts()).unwrap();
    assert_eq!(a.exit, EXIT_PASS, "{}", a.report.render_text());
    let b = cmd_suite(&text, &opts()).unwrap();
    for f in [OutputFormat::Text, OutputFormat::Json] {
        assert_eq!(a.render(f), b.render(f));
    }
    let json: serde_json::Value = serde_json::from_str(&a.render(OutputFormat::Json)).unwrap();
    assert_eq!(json["check"], "suite");
    assert_eq!(json["status"], "pass");
    assert!(json["stats"].is_object());
}

#[test]
fn caps_give_exit_three_or_one_when_strict() {
    let text = shipped();
    let tiny = Options { max_enumeration: 2, ..Options::default() };
    assert_eq!(cmd_suite(&text, &tiny).unwrap().exit, EXIT_CAP);
    let strict = Options { strict: true, ..tiny };
    assert_eq!(cmd_suite(&text, &strict).unwrap().exit, EXIT_FAIL);
}

fn bxm(a: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bxm")).args(a).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn binary_exit_codes() {
    let cat = catalogue_path();
    let cat = cat.to_str().unwrap();
    assert_eq!(bxm(&["validate", cat]).0, 0);
    assert_eq!(bxm(&["check", cat, "regular-epi", "id_m2"]).0, 0);
    assert_eq!(bxm(&["check", cat, "effective", "u_e2", "v_zero"]).0, 1);
    assert_eq!(bxm(&["--max-enumeration", "2", "construct", cat, "kernel-pair", "proj"]).0, 3);
    assert_eq!(bxm(&["--strict", "--max-enumeration", "2", "construct", cat, "kernel-pair", "proj"]).0, 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.bxm");
    std::fs::write(&bad, "bxm 1\nmodulus 2\nalgebra a dim 1\n  mult 0 0 : 1 1\n").unwrap();
    let (code, _, err) = bxm(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");
    let missing = dir.path().join("missing.bxm");
    assert_eq!(bxm(&["validate", missing.to_str().unwrap()]).0, 2);

    let invalid = dir.path().join("invalid.bxm");
    std::fs::write(&invalid, "bxm 1\nmodulus 2\nalgebra a dim 2\n  mult 0 0 : 1 0\n  mult 0 1 : 1 0\n  mult 1 1 : 0 0\n").unwrap();
    let (code, out, _) = bxm(&["validate", invalid.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"), "{out}");
}

#[test]
fn binary_emit_and_fmt() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("kp.bxm");
    let cat = catalogue_path();
    let (code, out, _) =
        bxm(&["construct", cat.to_str().unwrap(), "kernel-pair", "proj", "--emit", emitted.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = bxm(&["validate", emitted.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, formatted, _) = bxm(&["fmt", emitted.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(formatted, std::fs::read_to_string(&emitted).unwrap());

    let (code, a, _) = bxm(&["--format", "json", "suite", cat.to_str().unwrap()]);
    let (_, b, _) = bxm(&["--format", "json", "suite", cat.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(a, b);
}
