use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use toric_t2::gorenstein::LatticePolygon;
use toric_t2::Cone;
use toric_t2_cli::io::{parse_cone_file, parse_cone_str, parse_polygon_file, parse_polygon_str, ConeSpec, PolygonSpec};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-t2")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn parse_fixture_files() {
    let (_, cone) = parse_cone_file(&fixture("square.json")).unwrap();
    assert_eq!(cone.generators().len(), 4);
    let (_, p) = parse_polygon_file(&fixture("hexagon.json"), false).unwrap();
    assert_eq!(p.len(), 6);
    let err = parse_polygon_file(&fixture("nonconvex.json"), false).unwrap_err();
    assert!(err.to_string().contains("not convex at vertex 2"), "{err}");
    assert!(parse_polygon_file(&fixture("rectangle.json"), false).is_err());
    assert!(parse_polygon_file(&fixture("rectangle.json"), true).is_ok());
}

#[test]
fn t1_on_square() {
    let out = run(&["t1", "--cone", fixture("square.json").to_str().unwrap(), "--degree", "0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["t1_dim"], 1);
    assert_eq!(v["input"]["kind"], "cone");
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn t2_on_two_dimensional_cone() {
    let out = run(&["t2", "--cone", fixture("a3cone.json").to_str().unwrap(), "--degree", "-1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["h1_dim"], 0);
    assert!(v["result"]["t2_dim"].as_str().unwrap().contains("not applicable"));
}

#[test]
fn hexagon_verification() {
    let out = run(&["gorenstein", "--polygon", fixture("hexagon.json").to_str().unwrap(), "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["result"]["verify"]["all_match"], true);
    assert_eq!(v["result"]["k1"], 2);
    assert_eq!(v["result"]["t1_dim"], 3);
}

#[test]
fn rectangle_verification_reports_mismatch() {
    let path = fixture("rectangle.json");
    let out = run(&["gorenstein", "--polygon", path.to_str().unwrap(), "--verify", "--allow-nonprimitive-edges"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["verify"]["all_match"], false);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["hilbert", "--cone", "/nonexistent.json"]).status.code(), Some(2));
    let out = run(&["gorenstein", "--polygon", fixture("nonconvex.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not convex at vertex 2"));
    let out = run(&["t1", "--cone", fixture("square.json").to_str().unwrap(), "--degree", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn scan_hilbert_and_cup_commands() {
    let square = fixture("square.json");
    let sq = square.to_str().unwrap();
    let v = json(&run(&["scan", "--cone", sq]));
    assert_eq!(v["result"]["total_t1"], 1);
    let v = json(&run(&["hilbert", "--cone", sq, "--pretty"]));
    // The dual of the cone over a unit square is again such a cone.
    assert_eq!(v["result"]["count"], 4);
    let hexagon = fixture("hexagon-cone.json");
    let v = json(&run(&["cup", "--cone", hexagon.to_str().unwrap(), "--degR", "0,0,1"]));
    assert_eq!(v["result"]["t2_dim"], 2);
    assert_eq!(v["result"]["table"].as_array().unwrap().len(), 9);
    assert_eq!(v["result"]["table"][0]["bridged"].as_array().unwrap().len(), 3);
    let out = run(&["cup", "--cone", hexagon.to_str().unwrap(), "--degR", "0,0,1", "--degS", "0,0,1", "--phi-index", "1", "--psi-index", "2"]);
    let v = json(&out);
    assert_eq!(v["result"]["table"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["table"][0]["phi_index"], 1);
    let out = run(&["cup", "--cone", hexagon.to_str().unwrap(), "--degR", "0,0,1", "--phi-index", "7", "--psi-index", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cone_round_trip(gens in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 3..6)) {
        let gens: Vec<Vec<i64>> = gens.into_iter().map(|mut g| { g[2] = g[2].abs() + 1; g }).collect();
        if let Ok(cone) = Cone::new(3, &gens) {
            let text = serde_json::to_string(&ConeSpec::from(&cone)).unwrap();
            let (_, back) = parse_cone_str(&text).unwrap();
            prop_assert_eq!(back.generators(), cone.generators());
            prop_assert_eq!(back.facet_normals(), cone.facet_normals());
        }
    }

    #[test]
    fn polygon_round_trip(pts in proptest::collection::vec((0i64..6, 0i64..6), 3..8)) {
        let pts: Vec<[i64; 2]> = pts.into_iter().map(|(x, y)| [x, y]).collect();
        let mut distinct = pts.clone();
        distinct.sort();
        distinct.dedup();
        if let Ok(p) = LatticePolygon::with_nonprimitive_edges(distinct) {
            let text = serde_json::to_string(&PolygonSpec::from(&p)).unwrap();
            let (_, back) = parse_polygon_str(&text, true).unwrap();
            prop_assert_eq!(back, p);
        }
    }

    #[test]
    fn large_coordinates_survive(x in (1i64 << 53)..(1i64 << 60)) {
        let spec = ConeSpec::new(2, &[vec![1, 0], vec![x, 1]]);
        let text = serde_json::to_string(&spec).unwrap();
        let quoted = format!("\"{x}\"");
        prop_assert!(text.contains(&quoted));
        let back: ConeSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, spec);
    }
}
