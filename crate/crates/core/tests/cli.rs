//! End-to-end runs of the command-line tool: exit codes, JSON diagnostics,
//! determinism and golden pictures.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the files under `tests/golden`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use diskiso::gadgets::{synth_vertex_gadget, synth_weighted_edge_gadget, DiskInstance};
use diskiso::geometry::{compute_params, ParamMode, Point2, Provenance, ToyOverrides};
use diskiso::scalar::{int, rat};

const TRIANGLE: &str = r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],"coords":{"0":[0,0],"1":[2,0],"2":[1,2]}}"#;
const TOY: [&str; 8] = ["--params", "toy", "--r", "1/40", "--s", "9/40", "--a", "1/10"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diskiso")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

/// Every stderr line is a JSON object with a level.
fn diagnostics(o: &Output) -> Vec<serde_json::Value> {
    String::from_utf8(o.stderr.clone())
        .unwrap()
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap_or_else(|_| panic!("not JSON: {l}"));
            assert!(v.get("level").is_some(), "no level in {l}");
            v
        })
        .collect()
}

/// Reduce the triangle to an acc instance in `dir`.
fn reduce_triangle(dir: &Path) -> (String, String) {
    let src = write(dir, "triangle.json", TRIANGLE);
    let out = dir.join("acc").display().to_string();
    let mut args = vec!["reduce", "fvs-acc", "--input", &src, "--out", &out];
    args.extend(TOY);
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(diagnostics(&o)[0]["event"], "reduced");
    (format!("{out}/instance.json"), format!("{out}/record.json"))
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, _) = reduce_triangle(dir.path());
    let cert = dir.path().join("opt.json").display().to_string();
    let o = run(&["solve", "acc", "--input", &inst, "--cap-ground", "2000", "--cap-subset", "2", "--out", &cert]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let o = run(&["verify", "acc", "--input", &inst, "--cert", &cert]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["accept"], true);

    let empty = write(dir.path(), "empty.json", r#"{"problem":"acc","candidate":[],"budget":0}"#);
    let o = run(&["verify", "acc", "--input", &inst, "--cert", &empty]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["accept"], false);

    let junk = write(dir.path(), "junk.json", "{not json");
    let o = run(&["verify", "acc", "--input", &inst, "--cert", &junk]);
    assert_eq!(code(&o), 2);
    assert_eq!(diagnostics(&o)[0]["level"], "error");

    let out_of_range = write(dir.path(), "range.json", r#"{"problem":"acc","candidate":[99999],"budget":1}"#);
    assert_eq!(code(&run(&["verify", "acc", "--input", &inst, "--cert", &out_of_range])), 2);

    let missing = dir.path().join("missing.json").display().to_string();
    assert_eq!(code(&run(&["verify", "acc", "--input", &missing, "--cert", &cert])), 2);
    assert_eq!(code(&run(&["verify", "nonsense", "--input", &inst, "--cert", &cert])), 2);
    assert_eq!(code(&run(&["--params", "bogus", "check-params", "--n", "2"])), 2);
}

#[test]
fn solve_then_lift() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, rec) = reduce_triangle(dir.path());
    let cert = dir.path().join("opt.json").display().to_string();
    run(&["solve", "acc", "--input", &inst, "--cap-ground", "2000", "--cap-subset", "2", "--out", &cert]);
    let o = run(&["lift", "--record", &rec, "--instance", &inst, "--solution", &cert]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let l: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((l["problem"].as_str(), l["size"].as_u64()), (Some("fvs"), Some(1)));

    // a solution for the wrong target problem is malformed
    let wrong = write(dir.path(), "wrong.json", r#"{"problem":"isolation","candidate":[0],"budget":1}"#);
    assert_eq!(code(&run(&["lift", "--record", &rec, "--instance", &inst, "--solution", &wrong])), 2);
}

#[test]
fn solve_refuses_beyond_caps() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, _) = reduce_triangle(dir.path());
    let o = run(&["solve", "acc", "--input", &inst]);
    assert_eq!(code(&o), 1);
    assert_eq!(diagnostics(&o)[0]["kind"], "cap_exceeded");
}

#[test]
fn parameter_and_lemma_reports() {
    let o = run(&["check-params", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["params"]["c_e"], 882);
    assert_eq!(v["params"]["c_v"], 76);
    // a radius this large breaks the gadget inequalities
    assert_eq!(code(&run(&["--params", "toy", "--r", "1/2", "check-params", "--n", "2"])), 1);
    assert_eq!(code(&run(&["--r", "one/2", "check-params", "--n", "2"])), 2);

    let o = run(&["lemma-oracle", "--n", "3"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["distance_sq"], "1/13");
    assert_eq!(code(&run(&["lemma-oracle", "--n", "1"])), 2);
}

#[test]
fn corpus_and_render_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a").display().to_string();
    let b = dir.path().join("b").display().to_string();
    for out in [&a, &b] {
        assert_eq!(code(&run(&["corpus", "--count", "3", "--vertices", "5", "--seed", "7", "--out", out])), 0);
    }
    for k in 0..3 {
        let name = format!("graph_{k:03}.json");
        assert_eq!(fs::read(Path::new(&a).join(&name)).unwrap(), fs::read(Path::new(&b).join(&name)).unwrap());
    }
    let graph = format!("{a}/graph_000.json");
    let one = run(&["render", "--input", &graph, "--grid"]);
    let two = run(&["render", "--input", &graph, "--grid"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(String::from_utf8_lossy(&one.stdout).matches("class=\"vertex\"").count(), 5);
}

fn golden(name: &str, inst: &DiskInstance) -> String {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "instance.json", &inst.to_json());
    let o = run(&["render", "--input", &input]);
    assert_eq!(code(&o), 0);
    let svg = String::from_utf8(o.stdout).unwrap();
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &svg).unwrap();
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert!(svg == want, "{name} differs from its golden file");
    svg
}

#[test]
fn golden_vertex_ring() {
    let p = compute_params(2, ParamMode::Sound, &ToyOverrides::default()).unwrap();
    let disks = synth_vertex_gadget(0, &Point2::new(int(1), int(1)), &p).unwrap();
    let svg = golden("vertex_ring.svg", &DiskInstance::new(p.r.clone(), disks, vec![]));
    assert_eq!(svg.matches("class=\"vertex\"").count(), 76);
}

#[test]
fn golden_weighted_gadget() {
    let o = ToyOverrides { r: Some(rat(1, 40)), s: Some(rat(1, 10)), a: Some(rat(1, 5)), ..Default::default() };
    let p = compute_params(2, ParamMode::Toy, &o).unwrap();
    let g = synth_weighted_edge_gadget(0, &Point2::origin(), &Point2::new(int(1), int(0)), 5, &p).unwrap();
    let mut lanes: Vec<usize> = g
        .disks
        .iter()
        .filter_map(|d| match d.prov {
            Provenance::Lane { lane, .. } => Some(lane),
            _ => None,
        })
        .collect();
    let lane_disks = lanes.len();
    lanes.dedup();
    assert_eq!(lanes.len(), 5);
    let svg = golden("weighted_w5.svg", &DiskInstance::new(p.r.clone(), g.disks, vec![]));
    assert_eq!(svg.matches("class=\"lane\"").count(), lane_disks);
}
