use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(rel: &str) -> String {
    root().join(rel).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualcell")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn dv_on_the_hexagonal_lattice() {
    let o = run(&["dv", "--gram", &data("data/lattices/a2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    assert_eq!(j["facet_count"], 6);
    assert_eq!(j["venkov_passes"], true);
    assert_eq!(j["belt_lengths"], serde_json::json!([6]));
}

#[test]
fn dv_facet_counts() {
    for (name, facets) in [("z2", 4), ("a2", 6), ("z3", 6), ("fcc", 12), ("bcc", 14)] {
        let j = json(&run(&["dv", "--gram", &data(&format!("data/lattices/{name}.json"))]));
        assert_eq!(j["facet_count"], facets, "{name}");
    }
}

#[test]
fn input_errors_exit_two() {
    let o = run(&["dv", "--gram", "/nonexistent/gram.json"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("dualcell-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"dim\": 2,\n \"gram\": [[1, 0], [0, 1]").unwrap();
    let o = run(&["dv", "--gram", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
    let big = dir.join("big.json");
    std::fs::write(&big, r#"{"dim": 6, "gram": [[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0],[0,0,0,1,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]]}"#)
        .unwrap();
    assert_eq!(run(&["dv", "--gram", big.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["lift", "--gram", &data("data/lattices/z3.json")]).status.code(), Some(2));
    assert_eq!(run(&["--max-dim", "6", "hyper", "enumerate-k5"]).status.code(), Some(2));
    assert_eq!(run(&["cases", "final-case", "--x", "1,2,x"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tiling_commands() {
    let j = json(&run(&["tiling", "audit", "--gram", &data("data/lattices/fcc.json")]));
    assert_eq!(j["audit"]["orbit_counts"], serde_json::json!([3, 8, 6, 1]));
    assert_eq!(j["skinny"]["failures"], serde_json::json!([]));
    let j = json(&run(&["irreducible", "--gram", &data("data/lattices/z3.json")]));
    assert_eq!(j["three_irreducible"], false);
    assert_eq!(j["witness"]["type"], "parallelepiped");
    let j = json(&run(&["dual-cells", "--gram", &data("data/lattices/hex_prism.json")]));
    let classes: Vec<&str> = j["cells"].as_array().unwrap().iter().filter_map(|c| c["classification"].as_str()).collect();
    assert!(classes.contains(&"triangular_prism"), "{classes:?}");
}

#[test]
fn scaling_commands() {
    let gram = data("data/lattices/a2.json");
    let o = run(&["scaling", "build", "--gram", &gram]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    assert_eq!(j["canonical"], true);
    let dir = std::env::temp_dir().join(format!("dualcell-scaling-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, j["factors"].to_string()).unwrap();
    assert_eq!(run(&["scaling", "verify", "--gram", &gram, "--scaling", good.to_str().unwrap()]).status.code(), Some(0));
    let mut factors = j["factors"].as_object().unwrap().clone();
    let first = factors.keys().next().unwrap().clone();
    factors.insert(first, serde_json::json!([2, 1]));
    let bad = dir.join("bad.json");
    std::fs::write(&bad, Value::Object(factors).to_string()).unwrap();
    let o = run(&["scaling", "verify", "--gram", &gram, "--scaling", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["canonical"], false);
    std::fs::remove_dir_all(&dir).unwrap();
    let j = json(&run(&["scaling", "coherence", "--gram", &data("data/lattices/pyramidal4.json")]));
    assert_eq!(j["all_coherent"], true);
    assert!(!j["pairs"].as_array().unwrap().is_empty());
}

#[test]
fn lift_on_the_hexagonal_lattice() {
    let o = run(&["lift", "--gram", &data("data/lattices/a2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json(&o)["report"];
    assert_eq!((r["tangency"].as_bool(), r["gradients"].as_bool(), r["convexity"].as_bool()), (Some(true), Some(true), Some(true)));
}

#[test]
fn hypergraph_commands() {
    let o = run(&["hyper", "audit", "--input", &data("data/hypergraphs/six_eleven.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["all_hold"], true);
    let o = run(&["hyper", "audit", "--input", &data("data/hypergraphs/open.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["closed"], false);
    let j = json(&run(&["hyper", "find-subgraph", "--input", &data("data/hypergraphs/r8.json")]));
    assert!(j["kind"] == "six_eleven" || j["kind"] == "five_ten");
    let j = json(&run(&["hyper", "find-subgraph", "--input", &data("data/hypergraphs/five_ten.json")]));
    assert_eq!(j["kind"], "five_ten");
    let j = json(&run(&["hyper", "enumerate-k5"]));
    assert_eq!(j.as_array().unwrap().len(), 7);
}

#[test]
fn outputs_are_deterministic() {
    let a = run(&["hyper", "audit", "--random", "30", "--seed", "11"]);
    let b = run(&["hyper", "audit", "--random", "30", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["all_hold"], true);
    let c = run(&["cases", "run-all"]);
    let d = Command::new(env!("CARGO_BIN_EXE_dualcell")).args(["cases", "run-all"]).env("DUALCELL_THREADS", "1").output().unwrap();
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn out_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("dualcell-out-{}.json", std::process::id()));
    let o = run(&["--out", path.to_str().unwrap(), "dv", "--gram", &data("data/lattices/z2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(j["facet_count"], 4);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn polytope_json_round_trips() {
    let j = json(&run(&["dv", "--gram", &data("data/lattices/fcc.json")]));
    let pj: dualcell_core::ratpoly::PolytopeJson = serde_json::from_value(j["polytope"].clone()).unwrap();
    let p = pj.to_polytope().unwrap();
    assert_eq!(serde_json::to_value(p.to_json()).unwrap(), j["polytope"]);
}

#[test]
fn cases_against_golden_tables() {
    let o = run(&["cases", "run-all", "--golden", &data("golden")]);
    assert_eq!(o.status.code(), Some(1));
    let j = json(&o);
    assert_eq!(j["golden"]["rows_checked"], 26);
    assert_eq!(j["golden"]["mismatches"], serde_json::json!([]));
    assert_eq!(j["open_rows"], serde_json::json!([["5-10", 2]]));
}

#[test]
fn cone_pipeline_and_final_case() {
    let o = run(&["cases", "cone-pipeline"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["rays"].as_array().unwrap().len(), 10);
    let o = run(&["cases", "final-case"]);
    assert_eq!(o.status.code(), Some(1));
    let j = json(&o);
    assert_eq!(j["contradiction"], true);
    assert_eq!(j["implied_vertices"], 8);
    assert_eq!(j["known_vertices"], 10);
    assert_eq!(run(&["cases", "final-case", "--x", "1,1,1,1,1"]).status.code(), Some(2));
}
