use std::fs;

use proptest::prelude::*;
use sparsef2::codes::LinearCode;
use sparsef2::graphs::Graph;
use sparsef2::reductions::{EvenSetInstance, PointValueSet, VectorSumInstance};
use sparsef2::{BitMat, BitVec};
use sparsef2_cli::format::{self, Document, Instance, Kind};
use sparsef2_cli::run_args;

fn bitvec(len: usize) -> impl Strategy<Value = BitVec> {
    prop::collection::vec(any::<bool>(), len).prop_map(|b| BitVec::from_bools(&b))
}

fn bitmat(rows: usize, cols: usize) -> impl Strategy<Value = BitMat> {
    prop::collection::vec(bitvec(cols), rows).prop_map(move |r| BitMat::from_rows(cols, r).unwrap())
}

fn provenance() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec("[a-z0-9=: ]{0,20}", 0..3)
        .prop_map(|v| v.into_iter().map(|s| s.trim_start().to_string()).collect())
}

fn round_trip(doc: &Document) -> Result<(), TestCaseError> {
    let text = format::emit(doc).unwrap();
    let kind = doc.instance.kind();
    let back = format::parse(&text, kind).unwrap();
    prop_assert_eq!(&back, doc);
    prop_assert_eq!(format::emit(&back).unwrap(), text.clone());
    prop_assert_eq!(format::sniff(&text), Some(kind));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn matrix_round_trip(m in (1usize..12, 1usize..70).prop_flat_map(|(r, c)| bitmat(r, c)), p in provenance()) {
        round_trip(&Document { provenance: p, instance: Instance::Matrix(m) })?;
    }

    #[test]
    fn vectorsum_round_trip(
        (m, b, k) in (1usize..10, 1usize..20).prop_flat_map(|(r, c)| (bitmat(r, c), bitvec(r), 1usize..6)),
        p in provenance(),
    ) {
        let inst = VectorSumInstance::new(m, b, k).unwrap();
        round_trip(&Document { provenance: p, instance: Instance::VectorSum(inst) })?;
    }

    #[test]
    fn evenset_round_trip(
        (m, k) in (1usize..10, 1usize..20).prop_flat_map(|(r, c)| (bitmat(r, c), 1usize..6)),
        p in provenance(),
    ) {
        let inst = EvenSetInstance::new(m, k).unwrap();
        round_trip(&Document { provenance: p, instance: Instance::EvenSet(inst) })?;
    }

    #[test]
    fn pointvalues_round_trip(
        (pts, vals, k) in (1usize..20, 1usize..16).prop_flat_map(|(m, n)| (prop::collection::vec(bitvec(n), m), bitvec(m), 0usize..4)),
        eps in prop::option::of(0.0f64..0.5),
        delta in prop::option::of(0.0f64..0.5),
        p in provenance(),
    ) {
        let n = pts[0].len();
        let mut pv = PointValueSet::new(n, pts, vals, k).unwrap();
        pv.eps = eps;
        pv.delta = delta;
        round_trip(&Document { provenance: p, instance: Instance::PointValues(pv) })?;
    }

    #[test]
    fn graph_round_trip(
        (n, edges) in (2usize..15).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..30))),
        p in provenance(),
    ) {
        let edges: std::collections::BTreeSet<(usize, usize)> =
            edges.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
        let g = Graph::new(n, edges).unwrap();
        prop_assume!(g.m() > 0);
        round_trip(&Document { provenance: p, instance: Instance::Graph(g) })?;
    }

    #[test]
    fn code_round_trip(g in (1usize..6, 6usize..14).prop_flat_map(|(k, n)| bitmat(n, k)), p in provenance()) {
        let Ok(code) = LinearCode::from_generator(g) else { return Ok(()); };
        round_trip(&Document { provenance: p, instance: Instance::Code(code) })?;
    }
}

#[test]
fn spec_examples_parse() {
    let (g, _) = format::parse_graph("3 2\n1 2\n2 3").unwrap();
    assert_eq!(g, Graph::path(3));
    let inst = format::parse_vectorsum("2 3\n110\n011\nb 11\nk 2").unwrap();
    assert_eq!((inst.m.nrows(), inst.m.ncols(), inst.k), (2, 3, 2));
    let err = format::parse_vectorsum("2 3\n110\n0111\nb 11\nk 2").unwrap_err();
    assert!(err.to_string().contains("line 3"));
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_args(std::iter::once("sparsef2").chain(args.iter().copied()))
}

#[test]
fn clique_pipeline_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = |f: &str| dir.path().join(f).to_str().unwrap().to_string();
    let (code, _, _) = run(&["gen-graph", "--model", "complete", "--n", "3", "--out", &p("k3")]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["reduce", "clique2vs", "--in", &p("k3"), "--k", "3", "--out", &p("vs")]);
    assert_eq!(code, 0);
    let (code, witness, report) = run(&["solve", "--alg", "mitm", "--in", &p("vs"), "--format", "lines"]);
    assert_eq!(code, 0);
    assert!(report.contains("weight=6"), "{report}");
    assert_eq!(witness.lines().last().unwrap().chars().filter(|&c| c == '1').count(), 6);

    let (code, _, _) = run(&["gen-graph", "--model", "path", "--n", "3", "--out", &p("p3")]);
    assert_eq!(code, 0);
    run(&["reduce", "clique2vs", "--in", &p("p3"), "--k", "3", "--out", &p("vs2")]);
    let (code, out, _) = run(&["solve", "--alg", "exhaustive", "--in", &p("vs2")]);
    assert_eq!(code, 1, "{out}");

    fs::write(p("bad"), "2 3\n110\n01\nb 11\nk 2\n").unwrap();
    let (code, _, err) = run(&["solve", "--in", &p("bad")]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"));
    let (code, _, _) = run(&["solve", "--no-such-flag"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["reduce", "vs2es", "--in", &p("vs")]);
    assert_eq!(code, 3, "{err}");
    let (code, _, err) = run(&["solve", "--in", &p("vs"), "--alg", "exhaustive", "--cap", "10"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn density_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code");
    fs::write(&path, "code generator\n7 3\n100\n010\n001\n110\n011\n101\n111\n").unwrap();
    let (code, out, _) = run(&["verify", "density", "--in", path.to_str().unwrap(), "--format", "lines"]);
    assert_eq!(code, 0);
    let get = |k: &str| -> usize {
        out.lines().find_map(|l| l.strip_prefix(&format!("{k}="))).unwrap().parse().unwrap()
    };
    assert!(get("min_weight") >= get("bound"));
}

#[test]
fn identical_seed_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let p = |f: &str| dir.path().join(f).to_str().unwrap().to_string();
    for (i, args) in [
        vec!["gen-graph", "--model", "regular", "--n", "20", "--deg", "4", "--seed", "9"],
        vec!["gen-graph", "--model", "planted", "--n", "9", "--k", "3", "--p", "0.4", "--seed", "2"],
    ]
    .iter()
    .enumerate()
    {
        let a = p(&format!("a{i}"));
        let b = p(&format!("b{i}"));
        let mut x = args.clone();
        x.extend(["--out", &a]);
        let mut y = args.clone();
        y.extend(["--out", &b]);
        assert_eq!(run(&x), run(&y));
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
}

#[test]
fn kind_flag_overrides_detection() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m");
    fs::write(&path, "2 2\n10\n01\n").unwrap();
    let (code, out, _) = run(&["verify", "roundtrip", "--in", path.to_str().unwrap(), "--kind", "matrix"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = run(&["verify", "roundtrip", "--in", path.to_str().unwrap(), "--kind", "graph"]);
    assert_eq!(code, 2);
    let _ = Kind::Matrix;
}
