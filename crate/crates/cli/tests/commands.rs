use std::path::{Path, PathBuf};

use daestruct::sigfile::{parse_sig, write_sig};
use daestruct_cli::run;
use proptest::prelude::*;

fn model(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name).to_str().unwrap().to_string()
}

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn daestruct(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("daestruct").chain(args.iter().copied()), &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn scratch(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn analyze_pendulum_fine() {
    let r = daestruct(&["analyze", &model("pendulum.sig"), "--print", "fine"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("fine BTF: 1 block(s), sizes 3\n"), "{}", r.stdout);
    assert!(r.stdout.contains("offsets: c = (0,0,2) d = (2,2,0)\n"));
}

#[test]
fn analyze_summary() {
    let r = daestruct(&["analyze", &model("twopendula.dae")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    for line in [
        "n = 6",
        "val = 5",
        "offsets: c = (4,4,6,0,0,2) d = (6,6,4,2,3,0)",
        "coarse blocks: 2 (sizes 3 3)",
        "fine blocks: 4 (sizes 1 1 1 3)",
        "lead times: K = (0,0,2,4)",
        "offset set: infinite",
    ] {
        assert!(r.stdout.lines().any(|l| l == line), "missing {line:?} in\n{}", r.stdout);
    }
}

#[test]
fn two_pendula_dot_has_four_nodes_and_edges() {
    let dir = tempfile::tempdir().unwrap();
    let dot = scratch(&dir, "fbg.dot");
    let r = daestruct(&["analyze", &model("twopendula.dae"), "--dot", dot.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph fbg {"));
    let nodes: Vec<&str> = text.lines().filter(|l| l.contains("[label=\"B")).collect();
    let edges: Vec<&str> = text.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(nodes.len(), 4);
    assert_eq!(
        edges,
        [
            "  B1 -> B2 [label=\"0\"];",
            "  B2 -> B3 [label=\"2\"];",
            "  B3 -> B1 [label=\"-3\"];",
            "  B3 -> B4 [label=\"2\"];",
        ]
    );
    assert!(nodes[3].contains("B4\\nA,B,C|"));
}

#[test]
fn dot_marks_critical_edges_for_given_lead_times() {
    let dir = tempfile::tempdir().unwrap();
    let dot = scratch(&dir, "k.dot");
    let r = daestruct(&["analyze", &model("twopendula.dae"), "--k", "0,0,3,5", "--dot", dot.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("offsets: c = (5,5,7,0,0,3) d = (7,7,5,3,3,0)"));
    let text = std::fs::read_to_string(dot).unwrap();
    let bold: Vec<&str> = text.lines().filter(|l| l.contains("style=bold")).collect();
    assert_eq!(bold.len(), 3);
    assert!(!text.contains("B2 -> B3 [label=\"2\", style=bold]"));
    assert!(text.contains("K=5\"]"));
}

#[test]
fn enumeration_banner_only_for_infinite_sets() {
    let r = daestruct(&["analyze", &model("twopendula.dae"), "--enumerate-k", "6"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("with max K <= 6: 7\ntruncated (set is infinite)\n"));
    assert!(r.stdout.contains("  K = (0,0,3,5)  c = (5,5,7,0,0,3)  d = (7,7,5,3,3,0)\n"));

    let r = daestruct(&["analyze", &model("modpendulum.sig"), "--enumerate-k", "5", "--print", "fbg"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("classification: finite_multiple"));
    assert!(!r.stdout.contains("truncated"));
}

#[test]
fn convert_pendulum_and_two_pendula() {
    let dir = tempfile::tempdir().unwrap();
    let out = scratch(&dir, "p.sig");
    let r = daestruct(&["convert", &model("pendulum.dae"), out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), std::fs::read_to_string(model("pendulum.sig")).unwrap());

    let out = scratch(&dir, "tp.sig");
    assert_eq!(daestruct(&["convert", &model("twopendula.dae"), out.to_str().unwrap()]).code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let triplets = text.lines().skip(2).filter(|l| l.split(' ').count() == 3).count();
    assert_eq!(triplets, 14);
    assert!(text.ends_with("rows A B C D E F\ncols x y lam u v mu\n"));
}

#[test]
fn convert_rejects_empty_equation_set() {
    let dir = tempfile::tempdir().unwrap();
    let src = scratch(&dir, "empty.dae");
    std::fs::write(&src, "DAE v1\nvars x y\n").unwrap();
    let r = daestruct(&["convert", src.to_str().unwrap(), scratch(&dir, "o.sig").to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("0 equations for 2 variables"), "{}", r.stderr);
}

#[test]
fn check_offsets_examples() {
    let sig = model("pendulum.sig");
    let r = daestruct(&["check-offsets", &sig, "--c", "0,0,2"]);
    assert_eq!((r.code, r.stdout.lines().next()), (0, Some("general valid normalised")));
    assert!(r.stdout.contains("witness HVT: "));
    let r = daestruct(&["check-offsets", &sig, "--c", "1,1,3"]);
    assert_eq!((r.code, r.stdout.lines().next()), (0, Some("general valid")));
    let r = daestruct(&["check-offsets", &sig, "--c", "0,0,0"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not a general offset vector"));
    let r = daestruct(&["check-offsets", &sig, "--c", "-1,-1,1", "--d", "1,1,-1"]);
    assert_eq!((r.code, r.stdout.lines().next()), (0, Some("general")));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = scratch(&dir, "bad.sig");
    std::fs::write(&bad, "SIG v1\nn 2\n1 3 0\n").unwrap();

    let cases: [(&[&str], i32, &str); 8] = [
        (&["analyze", &model("illposed.sig")], 2, "structurally ill-posed"),
        (&["analyze", "/nonexistent/model.sig"], 1, "/nonexistent/model.sig"),
        (&["analyze", bad.to_str().unwrap()], 1, "line 3"),
        (&["analyze", &model("pendulum.sig"), "--offsets", "0,0,0"], 2, "not a general offset vector"),
        (&["analyze", &model("pendulum.sig"), "--offsets", "0,0"], 1, "needs 3 values"),
        (&["analyze", &model("twopendula.dae"), "--k", "0,0,0,0"], 2, "not a valid solution"),
        (&["analyze", &model("pendulum.sig"), "--print", "nothing"], 1, "invalid value"),
        (&["check-offsets", &model("illposed.sig"), "--c", "0,0,0"], 2, "structurally ill-posed"),
    ];
    for (args, code, message) in cases {
        let r = daestruct(args);
        assert_eq!(r.code, code, "{args:?}: {}", r.stderr);
        assert!(r.stderr.contains(message), "{args:?}: {}", r.stderr);
    }
    assert_eq!(daestruct(&["--help"]).code, 0);
}

#[test]
fn json_report_shape() {
    let dir = tempfile::tempdir().unwrap();
    let json = scratch(&dir, "r.json");
    let r = daestruct(&["analyze", &model("modpendulum.sig"), "--json", json.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expect = ["n", "labels", "sigma", "hvt", "val", "offsets", "coarse", "fine", "sess", "fbg"];
    expect.sort();
    let mut got = keys.clone();
    got.sort();
    assert_eq!(got, expect);
    assert_eq!(v["offsets"]["c"], serde_json::json!([0, 0, 1]));
    assert_eq!(v["sess"].as_array().unwrap().len(), 3);
    assert_eq!(v["fine"]["order"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["fbg"]["classification"], "finite_multiple");
    assert_eq!(v["fbg"]["canonical_K"], serde_json::json!([0, 0, 1]));
    assert_eq!(
        v["fbg"]["edges"],
        serde_json::json!([{"from": 1, "to": 2, "w": 0}, {"from": 2, "to": 3, "w": 1}, {"from": 3, "to": 1, "w": -2}])
    );
    assert_eq!(v["coarse"]["blocks"][0]["rows"], serde_json::json!(["A", "B", "C"]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convert_then_parse_is_idempotent(entries in proptest::collection::btree_map((0usize..5, 0usize..5), 0i64..6, 1..20)) {
        let n = 5;
        let sigma = daestruct::sigma::SignatureMatrix::new(n, entries.into_iter().map(|((i, j), s)| (i, j, s))).unwrap();
        let once = write_sig(&sigma);
        let twice = write_sig(&parse_sig(&once).unwrap());
        prop_assert_eq!(once, twice);
    }
}
