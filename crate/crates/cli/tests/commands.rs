use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use shortness::substitution::LinkingPolicy;
use shortness::{Edge, MultiGraph};
use shortness_cli::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn common() -> Common {
    Common { jobs: 2, ..Common::default() }
}

fn construct(dir: &tempfile::TempDir, frame: &str, name: &str) -> (ConstructArgs, Report) {
    let args = ConstructArgs {
        host: fixture("snarks20.g6"),
        frame: fixture(frame),
        out: dir.path().join(name),
        blockmap: None,
        edge: Edge::new(0, 14),
        index: 1,
        policy: LinkingPolicy::Canonical,
        check_cyclic: false,
    };
    let r = cmd_construct(&args, &common()).unwrap();
    (args, r)
}

#[test]
fn analyze_petersen() {
    let r = cmd_analyze(&fixture("petersen.g6"), &common()).unwrap();
    assert!(r.ok());
    let g = &r.results[0];
    assert_eq!(g["graph6"], "IheA@GUAo");
    assert_eq!(g["structure"]["classification"], "snark");
    assert_eq!(g["structure"]["girth"], 5);
    assert_eq!(g["circumference"]["length"], 9);
    assert_eq!(g["oddness"]["oddness"], 2);
    assert_eq!(r.inputs[0].sha256.len(), 64);
}

#[test]
fn analyze_k4() {
    let r = cmd_analyze(&fixture("k4.g6"), &common()).unwrap();
    assert_eq!(r.results[0]["structure"]["classification"], "three_edge_colorable");
    assert_eq!(r.results[0]["circumference"]["length"], 4);
}

#[test]
fn corrupt_input_names_the_byte() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.g6");
    std::fs::write(&bad, "C~\nIheA@GUA\n").unwrap();
    let err = cmd_analyze(&bad, &common()).unwrap_err().to_string();
    assert!(err.contains("line 2") && err.contains("byte 11"), "{err}");
    let out = Command::new(env!("CARGO_BIN_EXE_shortness")).arg("analyze").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte"));
}

#[test]
fn caps_produce_skip_markers() {
    let c = Common { cap_circ: 8, cap_odd: 8, ..common() };
    let r = cmd_analyze(&fixture("petersen.g6"), &c).unwrap();
    assert_eq!(r.skipped.len(), 2);
    assert!(r.results[0]["circumference"]["skipped"].is_string());
    assert_eq!(r.results[0]["structure"]["girth"], 5);
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn bound_on_the_twenty_vertex_host() {
    let r = cmd_bound(&fixture("snarks20.g6"), Edge::new(0, 14), 1, &common()).unwrap();
    let b = &r.results["bound"];
    assert_eq!(b["coefficient"], "17/18");
    assert_eq!(b["per_block"], 17);
    assert_eq!(b["host"], "snarks20#1");
}

#[test]
fn bound_on_the_twenty_eight_vertex_host() {
    let r = cmd_bound(&fixture("snarks28.g6"), Edge::new(15, 16), 48, &common()).unwrap();
    let b = &r.results["bound"];
    assert_eq!(b["coefficient"], "12/13");
    assert_eq!(b["oddness_growth"], "1/13");
    assert_eq!(b["q"], 2);
}

#[test]
fn bound_rejects_non_edges() {
    let p = shortness::named::petersen();
    let v = (1..10).find(|&v| !p.has_edge(0, v)).unwrap();
    let err = cmd_bound(&fixture("petersen.g6"), Edge::new(0, v), 0, &common()).unwrap_err();
    assert!(matches!(err, CliError::Core(shortness::Error::NotAnEdge(_))));
    assert!(cmd_bound(&fixture("petersen.g6"), Edge::new(0, 1), 3, &common()).is_err());
}

#[test]
fn construct_writes_graph_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    for (frame, n) in [("f2.s6", 36), ("k5.s6", 90)] {
        let (args, r) = construct(&dir, frame, &format!("{frame}.g6"));
        assert_eq!(r.results["vertices"], n);
        let g6 = std::fs::read_to_string(&args.out).unwrap();
        assert_eq!(shortness::format::parse_graph6(g6.trim()).unwrap().n(), n);
        let bm = read_blockmap(&args.blockmap_path()).unwrap();
        assert_eq!(bm.block_of.len(), n);
        assert_eq!(r.results["graph6"], g6.trim());
    }
}

#[test]
fn bad_frame_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let frame = dir.path().join("c4.s6");
    let c4 = MultiGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    std::fs::write(&frame, shortness::format::serialize_sparse6(&c4)).unwrap();
    let args = ConstructArgs {
        host: fixture("petersen.g6"),
        frame,
        out: dir.path().join("out.g6"),
        blockmap: None,
        edge: Edge::new(0, 1),
        index: 0,
        policy: LinkingPolicy::Canonical,
        check_cyclic: false,
    };
    assert!(cmd_construct(&args, &common()).is_err());
    assert!(!args.out.exists() && !args.blockmap_path().exists());
}

#[test]
fn longcycle_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let (args, _) = construct(&dir, "f2.s6", "g36.g6");
    let lc = LongCycleArgs {
        graph: args.out.clone(),
        blockmap: args.blockmap_path(),
        frame: fixture("f2.s6"),
        mode: shortness::longcycle::SubgraphMode::Full,
        compare_exact: true,
    };
    let r = cmd_longcycle(&lc, &common()).unwrap();
    assert!(r.ok());
    assert_eq!(r.results["contraction_equals_trail"], true);
    assert_eq!(r.results["blocks_visited"], 2);
    let len = r.results["length"].as_u64().unwrap();
    assert!(len <= r.results["exact_circumference"]["length"].as_u64().unwrap());
}

#[test]
fn dominate_examples() {
    let r = cmd_dominate(&fixture("mobius8.g6"), 4, &common()).unwrap();
    assert!(!r.results[0]["survey"]["failures"].as_array().unwrap().is_empty());
    let r = cmd_dominate(&fixture("petersen.g6"), 3, &common()).unwrap();
    assert!(r.results[0]["survey"]["failures"].as_array().unwrap().is_empty());
    let r = cmd_dominate(&fixture("k4.g6"), 0, &common()).unwrap();
    assert_eq!(r.results[0]["survey"]["checked"], 1);
    assert!(r.results[0]["survey"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_stable_across_runs_and_job_counts() {
    let one = Common { jobs: 1, ..Common::default() };
    let four = Common { jobs: 4, ..Common::default() };
    let a = cmd_dominate(&fixture("mobius8.g6"), 4, &one).unwrap();
    let b = cmd_dominate(&fixture("mobius8.g6"), 4, &four).unwrap();
    assert_eq!(a.results, b.results);
    let x = cmd_analyze(&fixture("snarks20.g6"), &one).unwrap().stable_json();
    let y = cmd_analyze(&fixture("snarks20.g6"), &one).unwrap().stable_json();
    assert_eq!(x, y);
}

#[test]
fn scan_with_inline_criteria() {
    let c = parse_criteria(r#"{"max_per_block": 17}"#).unwrap();
    let r = cmd_scan(&fixture("snarks20.g6"), &c, None, &common()).unwrap();
    assert!(r.ok());
    let reports = r.results["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|b| b["coefficient"] == "17/18"));
    assert!(parse_criteria(r#"{"bogus": 1}"#).is_err());
}

#[test]
fn binary_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = Command::new(env!("CARGO_BIN_EXE_shortness"))
        .args(["circ", "--json"])
        .arg(&out)
        .arg(fixture("prism.g6"))
        .status()
        .unwrap();
    assert!(status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["results"][0]["circumference"]["length"], 6);
}
