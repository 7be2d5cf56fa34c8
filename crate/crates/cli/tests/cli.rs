use std::path::PathBuf;
use std::process::Command;

use cobcat::cob2::SurfaceCobordism;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, Value) {
    let argv = std::iter::once("cobcat").chain(args.iter().copied());
    let (code, out) = cobcat_cli::run(argv);
    let v = serde_json::from_str(&out).unwrap_or(Value::String(out));
    (code, v)
}

fn ok(args: &[&str]) -> Value {
    let (code, v) = run(args);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["status"], "ok");
    v["result"].clone()
}

#[test]
fn sphere_poset_homology() {
    let r = ok(&["cat", "homology", "--cap", "3", &fixture("s2poset.json")]);
    assert_eq!(r["homology"], serde_json::json!(["Z", "0", "Z"]));
}

#[test]
fn parallel_arrows_have_infinite_cyclic_pi1() {
    let r = ok(&["cat", "pi1", &fixture("parallel.json")]);
    assert_eq!(r["presentation"]["abelianization"]["group"], "Z");
    let r = ok(&["localize", "aut", "--object", "*", &fixture("s3.json")]);
    assert_eq!(r["aut"]["abelianization"]["group"], "Z/2");
}

#[test]
fn planar_invariant_of_circles() {
    assert_eq!(ok(&["cob1", "f", &fixture("circle.json")])["f"], 1);
    assert_eq!(ok(&["cob1", "f", &fixture("nested.json")])["f"], 0);
    assert_eq!(ok(&["cob1", "reduce", &fixture("circle.json")])["class"], 1);
    let r = ok(&["cob1", "compose", &fixture("cup.json"), &fixture("cap.json")]);
    assert_eq!(r["matching"]["circles"], 1);
    let r = ok(&["cob1", "compose", &fixture("circle.json"), &fixture("circle.json")]);
    assert_eq!(r["f"], 2);
}

#[test]
fn surface_localization_is_euler_characteristic() {
    let r = ok(&["localize", "surfaces", "--max-chi", "4"]);
    assert_eq!(r["group"]["group"], "Z");
    assert_eq!(r["classes"]["T2"], 0);
    assert_eq!(r["classes"]["K"], 0);
    assert_eq!(r["classes"]["S2"], 2);
    assert_eq!(r["class_equals_euler_characteristic"], true);
}

#[test]
fn surface_commands() {
    let r = ok(&["cob2", "class", &fixture("klein.json")]);
    assert_eq!(r["nullbordant"], true);
    assert_eq!(r["oriented_class"], Value::Null);
    assert_eq!(ok(&["cob2", "euler", &fixture("pants.json")])["euler"], -1);
    assert_eq!(ok(&["cob2", "kcheck", "--k", "0", &fixture("disc_in.json")])["connected"], false);
    assert_eq!(ok(&["cob2", "kcheck", &fixture("pants.json")])["connected"], true);
    assert_eq!(run(&["cob2", "kcheck", "--k", "1", &fixture("pants.json")]).0, 1);
    assert_eq!(run(&["cob2", "class", &fixture("pants.json")]).0, 1);
}

#[test]
fn composite_output_round_trips() {
    let r = ok(&["cob2", "compose", &fixture("annulus.json"), &fixture("annulus.json")]);
    let w = SurfaceCobordism::from_json_str(&r["cobordism"].to_string()).unwrap();
    assert_eq!(w, SurfaceCobordism::from_json_str(&std::fs::read_to_string(fixture("annulus.json")).unwrap()).unwrap());
}

#[test]
fn picard_commands() {
    let r = ok(&["picard", "k", "--input", &fixture("svect_f5.json"), "--element", "odd"]);
    assert_eq!(r["k"], serde_json::json!([2]));
    let r = ok(&["picard", "equiv", &fixture("svect_f5.json"), &fixture("vect_f5.json")]);
    assert_eq!(r["equivalent"], false);
    let r = ok(&["picard", "equiv", &fixture("svect_f5.json"), &fixture("svect_f5.json")]);
    assert_eq!(r["equivalent"], true);
    let r = ok(&["picard", "cob1"]);
    assert_eq!((r["pi0"].as_str(), r["pi1"].as_str()), (Some("Z/2"), Some("Z")));
    assert_eq!(run(&["picard", "k", "--input", &fixture("svect_f5.json"), "--element", "nope"]).0, 1);
}

#[test]
fn frobenius_commands() {
    let r = ok(&["frob", "eval", &fixture("frob_identity_q.json"), &fixture("restricted_cup.json")]);
    assert_eq!(r["matrix"]["entries"], serde_json::json!([["1"], ["0"], ["0"], ["1"]]));
    let r = ok(&["frob", "eval", &fixture("frob_identity_q.json"), &fixture("circle.json")]);
    assert_eq!((r["restricted"].as_bool(), &r["matrix"]["entries"]), (Some(false), &serde_json::json!([["2"]])));
    assert_eq!(run(&["frob", "eval", &fixture("frob_degenerate.json"), &fixture("circle.json")]).0, 1);
    let r = ok(&["frob", "extend", &fixture("frob_hyperbolic_f3.json")]);
    assert_eq!((r["extends"].as_bool(), r["circle"].as_str()), (Some(true), Some("2")));
    assert_eq!(ok(&["frob", "extend", &fixture("frob_degenerate.json")])["extends"], false);
}

#[test]
fn relation_checks() {
    let r = ok(&["relations", "check", "--max-chi", "2", &fixture("mobius_instance.json")]);
    assert_eq!(r["word"], "S2 RP2^-1 K RP2^-1");
    assert_eq!(r["trivial"], true);
    let r = ok(&["relations", "check", &fixture("s3.json")]);
    assert_eq!(r["trivial"], true);
    assert_eq!(r["instances"], 6 * 6 * 6 * 6);
}

#[test]
fn output_is_deterministic() {
    let args = ["localize", "aut", &fixture("parallel.json")];
    let a = cobcat_cli::run(std::iter::once("cobcat").chain(args.iter().map(|s| s.as_ref())));
    let b = cobcat_cli::run(std::iter::once("cobcat").chain(args.iter().map(|s| s.as_ref())));
    assert_eq!(a, b);
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cobcat"))
}

#[test]
fn exit_codes() {
    let out = binary().args(["bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = binary().args(["cob1", "f", "/nonexistent.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = binary().args(["cat", "homology", &fixture("s2poset.json")]).env("COBCAT_MAX_CELLS", "5").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = binary().args(["cat", "homology", "--max-cells", "5", &fixture("s2poset.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = binary().args(["cat", "homology", &fixture("s2poset.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["homology"][2], "Z");
}

#[test]
fn sorted_keys() {
    let (_, out) = cobcat_cli::run(["cobcat", "cob2", "euler", &fixture("pants.json")]);
    let keys: Vec<&str> = out.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
