use std::path::{Path, PathBuf};
use std::process::Command;

use quiver_cli::document::{parse_morphism, parse_quiver, serialize_morphism, serialize_quiver};
use quiver_cli::{run, Output};
use quiver_core::injective::loading;
use quiver_core::projective::explosion;
use quiver_core::reflections::{build_b, build_i, build_k, colift_b, lift_i};
use quiver_core::Id;
use serde_json::Value;
use tempfile::TempDir;

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> PathBuf {
        let path = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

fn quiver(args: &[&str]) -> Output {
    run(std::iter::once("quiver").chain(args.iter().copied()))
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {out:?}"))
}

fn n(s: &str) -> Id {
    Id::name(s)
}

const PARALLEL: &str = r#"{"v":["0","1"],"e":[["e","0","1"],["f","0","1"]]}"#;
const LOOP: &str = r#"{"v":["a"],"e":[["ℓ","a","a"]]}"#;
const EXAMPLE: &str = r#"{"v":["v","w","u","x"],"e":[["e","v","v"],["f","w","x"],["g","x","w"],["h","x","w"]]}"#;

#[test]
fn envelope_of_the_loading_example() {
    let files = Files::new();
    let d = files.put("parallel.json", PARALLEL);
    let out = quiver(&["envelope", arg(&d)]);
    assert_eq!(out.code, 0, "{out:?}");
    let body = json(&out);
    let l = parse_quiver(&body["quiver"].to_string()).unwrap();
    assert_eq!(l, loading(&parse_quiver(PARALLEL).unwrap()));
    let edges: Vec<String> = l.edges().iter().map(ToString::to_string).collect();
    assert_eq!(edges, ["(0,e)", "(0,f)", "(1,0,0)", "(1,1,0)", "(1,1,1)"]);
    let j = parse_morphism(&body["map"].to_string()).unwrap();
    assert!(j.is_mono());
}

#[test]
fn full_quiver_is_loaded() {
    let files = Files::new();
    let k3 = files.put("k3.json", &serialize_quiver(&build_k([n("a"), n("b"), n("c")])));
    let out = quiver(&["is-loaded", arg(&k3)]);
    assert_eq!(out.code, 0, "{out:?}");
    assert_eq!(json(&out)["holds"], true);

    let pts = files.put("points.json", &serialize_quiver(&build_i([n("a"), n("b")])));
    let out = quiver(&["is-loaded", arg(&pts)]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)["witness"], serde_json::json!({"source": "a", "target": "a"}));
}

#[test]
fn single_loop_is_not_projective() {
    let files = Files::new();
    let lp = files.put("loop.json", LOOP);
    let out = quiver(&["is-projective", "--witness", arg(&lp)]);
    assert_eq!(out.code, 1, "{out:?}");
    let body = json(&out);
    assert_eq!(body["holds"], false);
    assert_eq!(body["reason"], "vertex a is both a source and a target");
    let epi = parse_morphism(&body["witness"]["epi"].to_string()).unwrap();
    let map = parse_morphism(&body["witness"]["map"].to_string()).unwrap();
    assert!(epi.is_epi());
    let found = quiver_core::homsearch::find_colift(&map, &epi, Default::default()).unwrap();
    assert!(found.is_none());

    let arrow = files.put("arrow.json", r#"{"v":["a","b"],"e":[["e","a","b"]]}"#);
    assert_eq!(quiver(&["is-projective", arg(&arrow)]).code, 0);
}

#[test]
fn injectivity_witnesses_do_not_extend() {
    let files = Files::new();
    for (name, text) in [("points", r#"{"v":["a","b"],"e":[["l","a","a"],["m","b","b"]]}"#), ("empty", r#"{"v":[],"e":[]}"#)] {
        let path = files.put(name, text);
        let out = quiver(&["is-injective", "--witness", arg(&path)]);
        assert_eq!(out.code, 1, "{out:?}");
        let body = json(&out);
        let phi = parse_morphism(&body["witness"]["mono"].to_string()).unwrap();
        let psi = parse_morphism(&body["witness"]["map"].to_string()).unwrap();
        assert!(phi.is_mono());
        let lift = quiver_core::homsearch::find_lift(&psi, &phi, Default::default()).unwrap();
        assert!(lift.is_none(), "{name}");
    }
    let lp = files.put("loop.json", LOOP);
    assert_eq!(quiver(&["is-injective", arg(&lp)]).code, 0);
}

#[test]
fn validate_reports_every_problem() {
    let files = Files::new();
    let bad = files.put("bad.json", r#"{"v":["a","a"],"e":[["e","a","b"]]}"#);
    let out = quiver(&["validate", arg(&bad)]);
    assert_eq!(out.code, 1, "{out:?}");
    let reasons = json(&out)["reasons"].clone();
    assert_eq!(reasons, serde_json::json!(["duplicate vertex a", "tgt(e) = b is not a vertex"]));

    let good = files.put("good.json", PARALLEL);
    assert_eq!(quiver(&["validate", arg(&good)]).code, 0);
}

#[test]
fn input_errors_exit_with_two() {
    let files = Files::new();
    let broken = files.put("broken.json", "{\n \"v\": [\n");
    let out = quiver(&["is-loaded", arg(&broken)]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line"), "{}", out.stderr);

    let dangling = files.put("dangling.json", r#"{"v":["a"],"e":[["e","a","zz"]]}"#);
    let out = quiver(&["is-loaded", arg(&dangling)]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("zz"), "{}", out.stderr);

    assert_eq!(quiver(&["is-loaded", "/nonexistent/file.json"]).code, 2);
    assert_eq!(quiver(&["no-such-command"]).code, 2);
    let ok = files.put("ok.json", LOOP);
    assert_eq!(quiver(&["is-loaded", "--format", "dot", arg(&ok)]).code, 2);
}

#[test]
fn help_exits_cleanly() {
    let out = quiver(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verify-theorems"));
}

#[test]
fn explosion_as_dot() {
    let files = Files::new();
    let g = files.put("example.json", EXAMPLE);
    let out = quiver(&["explosion", "--format", "dot", arg(&g)]);
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stdout.starts_with("digraph quiver {"));
    assert_eq!(out.stdout.matches("->").count(), 4);
    assert!(out.stdout.contains("[label=\"(0,u)\"]"));
    assert!(out.stdout.contains("[label=\"(1,(0,e))\"]"));

    let out = quiver(&["explosion", arg(&g)]);
    let x = parse_quiver(&out.stdout).unwrap();
    assert_eq!(x, explosion(&parse_quiver(EXAMPLE).unwrap()));
}

#[test]
fn cover_map_is_epic() {
    let files = Files::new();
    let g = files.put("example.json", EXAMPLE);
    let out = quiver(&["cover", arg(&g)]);
    assert_eq!(out.code, 0);
    let p = parse_morphism(&json(&out)["map"].to_string()).unwrap();
    assert!(p.is_epi() && !p.is_mono());
}

#[test]
fn essential_and_coessential_verdicts() {
    let files = Files::new();
    let inclusion = lift_i([n("a")], &build_i([n("a"), n("b")]), Id::clone).unwrap();
    let mono = files.put("mono.json", &serialize_morphism(&inclusion));
    let out = quiver(&["essential", "--witness", arg(&mono)]);
    assert_eq!(out.code, 1, "{out:?}");
    let body = json(&out);
    assert_eq!(body["reason"], "vertex b is not in the image");
    assert_eq!(body["witness"]["criterion"]["kind"], "vertex_not_in_image");
    assert_eq!(body["witness"]["witness"]["vertex_classes"], serde_json::json!([["a", "b"]]));

    // not an epi, so coessentiality is undefined
    assert_eq!(quiver(&["coessential", arg(&mono)]).code, 2);

    let s = [n("a"), n("b")];
    let bouquet = colift_b(&quiver_core::reflections::build_m(s.clone()), s, Id::clone).unwrap();
    let epi = files.put("epi.json", &serialize_morphism(&bouquet));
    let out = quiver(&["coessential", arg(&epi)]);
    assert_eq!(out.code, 0, "{out:?}");
    assert_eq!(quiver(&["essential", arg(&epi)]).code, 2);
}

#[test]
fn homs_and_limits() {
    let files = Files::new();
    let pts = files.put("pts.json", &serialize_quiver(&build_i([n("a"), n("b")])));
    let k = files.put("k.json", &serialize_quiver(&build_k([n("x"), n("y"), n("z")])));
    let out = quiver(&["homs", "--count", arg(&pts), arg(&k)]);
    assert_eq!(json(&out)["count"], 9);
    let out = quiver(&["homs", arg(&pts), arg(&k)]);
    assert_eq!(json(&out)["morphisms"].as_array().unwrap().len(), 9);

    let out = quiver(&["homs", "--budget", "1", arg(&pts), arg(&k)]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("budget"), "{}", out.stderr);

    let out = quiver(&["product", arg(&pts), arg(&k)]);
    let body = json(&out);
    assert_eq!(body["quiver"]["v"].as_array().unwrap().len(), 6);
    let out = quiver(&["coproduct", "--format", "dot", arg(&pts), arg(&k)]);
    assert_eq!(out.stdout.matches("->").count(), 9);

    // the source and target inclusions of an arrow
    let arrow = quiver_core::Quiver::new([n("s"), n("t")], [(n("e"), n("s"), n("t"))]).unwrap();
    let f = lift_i([n("p")], &arrow, |_| n("s")).unwrap();
    let g = lift_i([n("p")], &arrow, |_| n("t")).unwrap();
    let (f, g) = (files.put("f.json", &serialize_morphism(&f)), files.put("g.json", &serialize_morphism(&g)));
    let out = quiver(&["coequalizer", arg(&f), arg(&g)]);
    let q = parse_quiver(&json(&out)["quiver"].to_string()).unwrap();
    assert_eq!((q.vertex_count(), q.edge_count()), (1, 1));
    let out = quiver(&["equalizer", arg(&f), arg(&g)]);
    assert_eq!(json(&out)["subquiver"], serde_json::json!({"vertices": [], "edges": []}));
}

#[test]
fn verify_theorems_small() {
    let out = quiver(&["verify-theorems", "--vmax", "2", "--emax", "1"]);
    assert_eq!(out.code, 0, "{out:?}");
    let body = json(&out);
    assert_eq!(body["holds"], true);
    assert_eq!(body["suites"].as_array().unwrap().len(), 8);
}

#[test]
fn round_trip_on_constructions() {
    let d = parse_quiver(PARALLEL).unwrap();
    for q in [loading(&d), explosion(&parse_quiver(EXAMPLE).unwrap()), build_b([n("l")]), build_k([n("a"), n("b")])] {
        assert_eq!(parse_quiver(&serialize_quiver(&q)).unwrap(), q);
    }
}

#[test]
fn binary_exit_codes() {
    let files = Files::new();
    let lp = files.put("loop.json", LOOP);
    let bin = env!("CARGO_BIN_EXE_quiver");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["is-loaded", arg(&lp)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(serde_json::from_slice::<Value>(&out.stdout).unwrap()["holds"], true);
    assert_eq!(status(&["is-projective", arg(&lp)]).status.code(), Some(1));
    assert_eq!(status(&["is-projective"]).status.code(), Some(2));
}
