use std::path::{Path, PathBuf};
use std::process::Command;

use confext::conformal::check_derivation;
use confext::hochschild::differential;
use confext::nonabelian::{check_equivalence_witness, EquivalenceWitness};
use confext::wells::{extend_derivation, induce_automorphism, AutPair, DerPair};
use confext_cli::session::MapRef;
use confext_cli::{run, Report, Session, SessionFile, Verdict};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn confext(args: &[&str]) -> (i32, String) {
    let out = run(std::iter::once("confext").chain(args.iter().copied()));
    (out.code, out.stdout + &out.stderr)
}

fn report(args: &[&str]) -> Report {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(std::iter::once("confext").chain(full));
    let rep: Report = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout));
    assert_eq!(rep.exit_code(), out.code);
    rep
}

/// The union of the given fixtures, written to a scratch file.
fn combined(name: &str, parts: &[&str], extra: SessionFile) -> String {
    let mut f = SessionFile::default();
    for p in parts {
        f.merge(SessionFile::load(Path::new(&fixture(p))).unwrap());
    }
    f.merge(extra);
    let path = scratch(name);
    std::fs::write(&path, serde_json::to_string_pretty(&f).unwrap()).unwrap();
    path.display().to_string()
}

fn map(s: &Session, name: &str) -> confext::cdmod::CdLinearMap {
    s.matrix(&MapRef::Name(name.into()), name).unwrap()
}

#[test]
fn validate_cur_file_passes() {
    let (code, out) = confext(&["validate", &fixture("cur.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("validate: pass"));
}

#[test]
fn perturbed_chi_names_coh5() {
    let rep = report(&["cocycle", "check", &fixture("bad.json")]);
    assert_eq!(rep.verdict, Verdict::Fail);
    assert!(!rep.details.is_empty());
    assert!(rep.details.iter().all(|d| d.identity == "coh5"));
    assert!(rep.details.iter().all(|d| d.difference.iter().any(|p| p != "0")));
    let (code, _) = confext(&["mc", "check", &fixture("bad.json")]);
    assert_eq!(code, 1);
}

#[test]
fn identity_pair_is_induced_by_zero_omega() {
    let ext = fixture("cubic.json");
    let pair = format!("{}#identity", fixture("pairs.json"));
    let rep = report(&["wells", "aut", "--extension", &ext, "--pair", &pair]);
    assert_eq!(rep.verdict, Verdict::Pass);
    assert_eq!(rep.witnesses.maps["omega"], vec![vec!["0".to_string(), "0".to_string()]]);
}

#[test]
fn malformed_input_reports_position() {
    let (code, out) = confext(&["validate", &fixture("malformed.json")]);
    assert_eq!(code, 2);
    assert!(out.contains("algebras.dual.products[1].value.x"), "{out}");
    assert!(out.contains("character 3"), "{out}");

    let broken = scratch("broken.json");
    std::fs::write(&broken, "{\n  \"algebras\": {\n    \"k\": { \"basis\": [\"e\"] \n  }\n").unwrap();
    let (code, out) = confext(&["validate", &broken.display().to_string()]);
    assert_eq!(code, 2);
    assert!(out.contains("line"), "{out}");

    let (code, out) = confext(&["cocycle", "check", &format!("{}#nope", fixture("bad.json"))]);
    assert_eq!(code, 2, "{out}");
    let (code, _) = confext(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn json_errors_are_machine_readable() {
    let out = run(["confext", "--json", "validate", &fixture("malformed.json")]);
    assert_eq!(out.code, 2);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["location"], "algebras.dual.products[1].value.x");
}

#[test]
fn nonextensible_derivation_pair_is_undecided_with_bound() {
    let ext = fixture("cubic.json");
    let pair = format!("{}#scale_a", fixture("pairs.json"));
    let rep = report(&["wells", "der", "--extension", &ext, "--pair", &pair]);
    assert_eq!(rep.verdict, Verdict::Undecided);
    assert!(rep.bound.is_some());
}

#[test]
fn rescaled_square_zero_pair_is_refuted() {
    let f = fixture("square_zero.json");
    let rep = report(&["wells", "aut", "--extension", &f, "--pair", &f]);
    assert_eq!(rep.verdict, Verdict::Fail);
    assert_eq!(rep.details[0].identity, "coh8");
    assert_ne!(rep.details[0].difference, vec!["0".to_string()]);
}

#[test]
fn partial_side_uses_one_map() {
    let ext = fixture("cubic.json");
    let pair = format!("{}#scaling", fixture("pairs.json"));
    assert_eq!(report(&["wells", "aut", "--extension", &ext, "--pair", &pair]).verdict, Verdict::Pass);
    let rep = report(&["wells", "aut", "--partial", "B", "--extension", &ext, "--pair", &pair]);
    assert_eq!(rep.verdict, Verdict::Fail);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_confext");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["validate", &fixture("cur.json")]), Some(0));
    assert_eq!(status(&["cocycle", "check", &fixture("bad.json")]), Some(1));
    assert_eq!(status(&["validate", &fixture("malformed.json")]), Some(2));
    let pair = format!("{}#scale_a", fixture("pairs.json"));
    assert_eq!(status(&["wells", "der", "--extension", &fixture("cubic.json"), "--pair", &pair]), Some(3));
}

#[test]
fn aut_witnesses_reload_and_verify() {
    let ext = fixture("cubic.json");
    let pair = format!("{}#scaling", fixture("pairs.json"));
    let rep = report(&["wells", "aut", "--extension", &ext, "--pair", &pair]);
    let path = combined("aut.json", &["cubic.json", "pairs.json"], rep.witnesses);
    let s = Session::load(Path::new(&path)).unwrap();
    let e = s.extension("ext").unwrap().unwrap();
    let (g, h) = s.pair("scaling", 1, 2).unwrap();
    let p = AutPair::new(&g.unwrap(), &h.unwrap(), e.a(), e.b()).unwrap();
    let f = induce_automorphism(&p, &map(&s, "omega"), &e).unwrap();
    assert_eq!(f.underlying, map(&s, "automorphism"));
}

#[test]
fn der_witnesses_reload_and_verify() {
    let ext = fixture("cubic.json");
    let rep = report(&["wells", "der", "--extension", &ext, "--pair", &format!("{}#shift", fixture("pairs.json"))]);
    assert_eq!(rep.verdict, Verdict::Pass);
    let path = combined("der.json", &["cubic.json", "pairs.json"], rep.witnesses);
    let s = Session::load(Path::new(&path)).unwrap();
    let e = s.extension("ext").unwrap().unwrap();
    let (da, db) = s.pair("shift", 1, 2).unwrap();
    let d = DerPair::new(&da.unwrap(), &db.unwrap(), e.a(), e.b()).unwrap();
    let lift = extend_derivation(&d, &map(&s, "f"), &e).unwrap();
    assert_eq!(lift.underlying, map(&s, "derivation"));
    assert!(check_derivation(&lift.underlying, e.e()).passed());
}

#[test]
fn gauge_then_equivalence_round_trip() {
    let cubic = fixture("cubic.json");
    let c = report(&["ext", "cocycle-of", &cubic]);
    let path = combined("gauge.json", &["cubic.json"], c.witnesses);
    let g = report(&["--seed", "11", "mc", "gauge", &format!("{path}#ext_cocycle")]);
    assert_eq!(g.verdict, Verdict::Pass);
    assert_eq!(g, report(&["--seed", "11", "mc", "gauge", &format!("{path}#ext_cocycle")]));

    let mut f = SessionFile::load(Path::new(&path)).unwrap();
    f.merge(g.witnesses);
    std::fs::write(&path, serde_json::to_string(&f).unwrap()).unwrap();
    let gauged = format!("{path}#ext_cocycle_gauged");
    let rep = report(&["ext", "equivalent", &gauged, "--with", &format!("{path}#ext_cocycle")]);
    assert_eq!(rep.verdict, Verdict::Pass);

    let s = Session::load(Path::new(&path)).unwrap();
    let (c1, c2) = (s.cocycle("ext_cocycle_gauged").unwrap(), s.cocycle("ext_cocycle").unwrap());
    let delta = s.matrix_of(&MapRef::Inline(rep.witnesses.maps["delta"].clone()), 1, 2, "delta").unwrap();
    assert!(check_equivalence_witness(&c1, &c2, &EquivalenceWitness { delta }).unwrap().passed());
}

#[test]
fn inequivalent_cocycles_fail() {
    // χ = 0 against the non-split cubic cocycle.
    let cubic = fixture("cubic.json");
    let mut c = report(&["ext", "cocycle-of", &cubic]).witnesses;
    let mut split = c.cocycles["ext_cocycle"].clone();
    split.chi.clear();
    c.cocycles.insert("split".into(), split);
    let path = combined("split.json", &["cubic.json"], c);
    let rep = report(&["ext", "equivalent", &format!("{path}#split"), "--with", &format!("{path}#ext_cocycle")]);
    assert_eq!(rep.verdict, Verdict::Fail);
    assert!(!rep.details.is_empty());
}

#[test]
fn build_then_validate() {
    let cubic = fixture("cubic.json");
    let c = report(&["ext", "cocycle-of", &cubic]);
    let path = combined("build.json", &["cubic.json"], c.witnesses);
    let built = report(&["ext", "build", &format!("{path}#ext_cocycle")]);
    assert_eq!(built.verdict, Verdict::Pass);
    let path = combined("built.json", &["cubic.json"], built.witnesses);
    let rep = report(&["validate", &path]);
    assert_eq!(rep.verdict, Verdict::Pass);
    assert_eq!(rep.quantities["objects"], 6);
}

const CUR_K: &str = r#"{
  "algebras": { "k": { "basis": ["e"], "products": [{ "args": ["e", "e"], "value": { "e": "1" } }] } },
  "bimodules": { "m": { "algebra": "k", "regular": true } },
  "cochains": {
    "id": { "bimodule": "m", "degree": 1, "values": [{ "args": ["e"], "value": { "e": "1" } }] },
    "shift": { "bimodule": "m", "degree": 1, "values": [{ "args": ["e"], "value": { "e": "D" } }] },
    "sq": { "bimodule": "m", "degree": 2, "values": [{ "args": ["e", "e"], "value": { "e": "L1" } }] },
    "zero3": { "bimodule": "m", "degree": 3 }
  }
}"#;

fn cur_k_session() -> String {
    let path = scratch("cur_k.json");
    std::fs::write(&path, CUR_K).unwrap();
    path.display().to_string()
}

#[test]
fn coboundary_witness_reloads() {
    let path = cur_k_session();
    let d = report(&["diff", &format!("{path}#id")]);
    let mut f = SessionFile::load(Path::new(&path)).unwrap();
    f.merge(d.witnesses);
    let path2 = scratch("cur_k_d.json");
    std::fs::write(&path2, serde_json::to_string(&f).unwrap()).unwrap();
    let path2 = path2.display().to_string();

    let rep = report(&["cocycle", "coboundary", &format!("{path2}#d_id")]);
    assert_eq!(rep.verdict, Verdict::Pass);
    f.merge(rep.witnesses);
    let s = Session::new(f, &path2);
    let (m, psi) = s.cochain("psi_d_id").unwrap();
    assert_eq!(differential(&m, &psi), s.cochain("d_id").unwrap().1);

    // ∂ is an outer derivation, so no preimage is found in any bound.
    let rep = report(&["cocycle", "coboundary", &format!("{path}#shift")]);
    assert_eq!(rep.verdict, Verdict::Undecided);
    assert!(rep.bound.is_some());
    let rep = report(&["cocycle", "coboundary", &format!("{path}#sq")]);
    assert_eq!(rep.verdict, Verdict::Fail);
    assert_eq!(rep.details[0].identity, "d");
}

#[test]
fn cochain_check_and_cohomology() {
    let path = cur_k_session();
    assert_eq!(report(&["cocycle", "check", &format!("{path}#shift")]).verdict, Verdict::Pass);
    assert_eq!(report(&["cocycle", "check", &format!("{path}#id")]).verdict, Verdict::Fail);
    let rep = report(&["cohomology", &format!("{path}#m"), "--n", "1", "--ddeg", "2"]);
    assert_eq!(rep.quantities["cocycles"], 1);
    assert_eq!(rep.quantities["quotient"], 1);
    assert_eq!(rep.bound, Some(2));
}

#[test]
fn shac_and_crossed_round_trip() {
    let path = cur_k_session();
    let d = report(&["diff", &format!("{path}#sq")]);
    let mut f = SessionFile::load(Path::new(&path)).unwrap();
    f.merge(d.witnesses);
    let p = scratch("cur_k_3.json");
    std::fs::write(&p, serde_json::to_string(&f).unwrap()).unwrap();
    let p = p.display().to_string();

    let sk = report(&["shac", "from-cocycle", &format!("{p}#d_sq")]);
    assert_eq!(sk.verdict, Verdict::Pass);
    f.merge(sk.witnesses);
    std::fs::write(&p, serde_json::to_string(&f).unwrap()).unwrap();
    assert_eq!(report(&["shac", "check", &format!("{p}#d_sq_shac")]).verdict, Verdict::Pass);
    let back = report(&["shac", "to-cocycle", &format!("{p}#d_sq_shac")]);
    assert_eq!(back.verdict, Verdict::Pass);
    assert_eq!(back.witnesses.cochains["d_sq_shac_m3"].values, f.cochains["d_sq"].values);
    // m³ ≠ 0, so there is no crossed module behind it.
    assert_eq!(report(&["crossed", "from-shac", &format!("{p}#d_sq_shac")]).verdict, Verdict::Fail);
    // A 2-cochain is the wrong shape.
    assert_eq!(confext(&["shac", "from-cocycle", &format!("{path}#sq")]).0, 2);

    let strict = report(&["shac", "from-cocycle", &format!("{path}#zero3")]);
    f.merge(strict.witnesses);
    std::fs::write(&p, serde_json::to_string(&f).unwrap()).unwrap();
    let crossed = report(&["crossed", "from-shac", &format!("{p}#zero3_shac")]);
    assert_eq!(crossed.verdict, Verdict::Pass);
    f.merge(crossed.witnesses);
    std::fs::write(&p, serde_json::to_string(&f).unwrap()).unwrap();
    let c = format!("{p}#zero3_shac_crossed");
    assert_eq!(report(&["crossed", "check", &c]).verdict, Verdict::Pass);
    let again = report(&["crossed", "to-shac", &c]);
    assert_eq!(again.witnesses.shacs["zero3_shac_crossed_shac"], f.shacs["zero3_shac"]);
}

#[test]
fn schema_sections_match_the_format() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schema/session.schema.json")).unwrap();
    let mut doc = serde_json::Map::new();
    for (k, _) in schema["properties"].as_object().unwrap() {
        doc.insert(k.clone(), serde_json::json!({}));
    }
    let f: SessionFile = serde_json::from_value(serde_json::Value::Object(doc)).unwrap();
    assert!(f.is_empty() || f.bounds.is_some());
}
