//! End-to-end tests of the `manifoldnet` binary: subcommand behavior, file
//! outputs, determinism, and the exit-code contract.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use manifoldnet_core::graph::approx_laplacian;
use manifoldnet_core::manifold::riem_dist;
use manifoldnet_core::WeightedGraph;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_manifoldnet"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir()
        .join("manifoldnet-cli-tests")
        .join(name);
    if dir.exists() {
        fs::remove_dir_all(&dir).unwrap();
    }
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_k3(dir: &std::path::Path) -> PathBuf {
    let path = dir.join("k3.tsv");
    fs::write(&path, "0\t1\t1\n0\t2\t1\n1\t2\t1\n").unwrap();
    path
}

#[test]
fn generate_ba_emits_count_files_with_exact_edges() {
    let dir = tmp("gen-ba");
    let out = run(&[
        "generate",
        "--kind",
        "ba",
        "--n",
        "200",
        "--m-attach",
        "6",
        "--count",
        "3",
        "--seed",
        "7",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for i in 0..3 {
        let text = fs::read_to_string(dir.join(format!("ba_{i:03}.tsv"))).unwrap();
        assert_eq!(text.lines().count(), 1164, "exact edge count per file");
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["files"].as_array().unwrap().len(), 3);
    assert_eq!(manifest["base_seed"], 7);
}

#[test]
fn generate_chain_small_cycle_and_reruns_byte_identical() {
    let d1 = tmp("gen-chain-1");
    let d2 = tmp("gen-chain-2");
    for d in [&d1, &d2] {
        let out = run(&[
            "generate",
            "--kind",
            "chain",
            "--n",
            "5",
            "--m",
            "5",
            "--seed",
            "1",
            "--out",
            d.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = fs::read(d1.join("chain_000.tsv")).unwrap();
    let b = fs::read(d2.join("chain_000.tsv")).unwrap();
    assert_eq!(a, b);
    // 5 nodes, 5 edges: the cycle.
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 5);
}

#[test]
fn generate_accepts_json_spec_file() {
    let dir = tmp("gen-spec");
    let spec = dir.join("spec.json");
    fs::write(
        &spec,
        r#"{"kind": "gnm", "n": 20, "m": 50, "seed": 3, "weight_low": 1.0, "weight_high": 2.0}"#,
    )
    .unwrap();
    let out = run(&[
        "generate",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(dir.join("gnm_000.tsv")).unwrap();
    assert_eq!(text.lines().count(), 50);
}

#[test]
fn dist_on_identical_files_is_zero_and_matches_library() {
    let dir = tmp("dist");
    // K2 with weight 1 vs K2 with weight 2.
    let g1 = dir.join("a.tsv");
    let g2 = dir.join("b.tsv");
    fs::write(&g1, "0\t1\t1\n").unwrap();
    fs::write(&g2, "0\t1\t2\n").unwrap();

    let out = run(&["dist", g1.to_str().unwrap(), g1.to_str().unwrap()]);
    assert!(out.status.success());
    let body = stdout(&out);
    let last = body.lines().last().unwrap();
    assert_eq!(
        last.split(',').next_back().unwrap(),
        "0",
        "diagonal is hard zero"
    );
    let off: f64 = last.split(',').next().unwrap().parse().unwrap();
    assert!(off.abs() < 1e-9, "identical inputs are at distance ~0");

    // CLI distance equals the library value on hand-built shifted Laplacians.
    let out = run(&[
        "dist",
        g1.to_str().unwrap(),
        g2.to_str().unwrap(),
        "--eps",
        "0.001",
    ]);
    assert!(out.status.success());
    let body = stdout(&out);
    let cli_value: f64 = body
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    let ga = WeightedGraph::new(2, vec![(0, 1, 1.0)]).unwrap();
    let gb = WeightedGraph::new(2, vec![(0, 1, 2.0)]).unwrap();
    let pa = approx_laplacian(&ga, 1e-3).unwrap();
    let pb = approx_laplacian(&gb, 1e-3).unwrap();
    let expected = riem_dist(&pa, &pb).unwrap();
    assert!(
        (cli_value - expected).abs() < 1e-12,
        "cli {cli_value} vs library {expected}"
    );
    // Normalized Laplacians of a single edge coincide regardless of weight.
    assert!(expected < 1e-9);
}

#[test]
fn dist_frobenius_switch_changes_metric() {
    let dir = tmp("dist-frob");
    let g1 = dir.join("p4.tsv");
    let g2 = dir.join("star4.tsv");
    fs::write(&g1, "0\t1\n1\t2\n2\t3\n").unwrap();
    fs::write(&g2, "0\t1\n0\t2\n0\t3\n").unwrap();
    let riem = run(&["dist", g1.to_str().unwrap(), g2.to_str().unwrap()]);
    let frob = run(&[
        "dist",
        g1.to_str().unwrap(),
        g2.to_str().unwrap(),
        "--metric",
        "frobenius",
    ]);
    assert!(riem.status.success() && frob.status.success());
    let get = |o: &Output| -> f64 {
        stdout(o)
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .nth(1)
            .unwrap()
            .parse()
            .unwrap()
    };
    let (dr, df) = (get(&riem), get(&frob));
    assert!(dr > 0.0 && df > 0.0);
    assert!(
        (dr - df).abs() > 1e-6,
        "metrics should differ on these graphs"
    );
}

#[test]
fn dist_matrix_format_reads_spd_csv() {
    let dir = tmp("dist-matrix");
    let m1 = dir.join("m1.csv");
    let m2 = dir.join("m2.csv");
    fs::write(&m1, "1,0\n0,1\n").unwrap();
    let e = std::f64::consts::E;
    fs::write(&m2, format!("{e},0\n0,{e}\n")).unwrap();
    let out = run(&[
        "dist",
        m1.to_str().unwrap(),
        m2.to_str().unwrap(),
        "--format",
        "matrix",
    ]);
    assert!(out.status.success());
    let body = stdout(&out);
    let v: f64 = body
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((v - 2.0f64.sqrt()).abs() < 1e-10);
}

#[test]
fn mean_of_single_graph_is_its_shifted_laplacian() {
    let dir = tmp("mean-single");
    let k3 = write_k3(&dir);
    let out_csv = dir.join("mean.csv");
    let out = run(&[
        "mean",
        k3.to_str().unwrap(),
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let mean = manifoldnet::io::read_matrix_csv(&out_csv).unwrap();
    let g = WeightedGraph::new(3, vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap();
    let expected = approx_laplacian(&g, 1e-3).unwrap();
    assert!(mean.sub(expected.entries()).frobenius_norm() < 1e-10);
}

#[test]
fn curvature_of_k3_edge_is_half() {
    let dir = tmp("curv");
    let k3 = write_k3(&dir);
    let out = run(&[
        "curvature",
        "--graph",
        k3.to_str().unwrap(),
        "--edge",
        "0",
        "1",
    ]);
    assert!(out.status.success());
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - 0.5).abs() < 1e-9);

    let report = run(&["curvature", "--graph", k3.to_str().unwrap(), "--report"]);
    assert!(report.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&report)).unwrap();
    assert!((json["min_edge_curvature"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(json["bound_satisfied"], true);
}

#[test]
fn laplacian_writes_matrix_csv() {
    let dir = tmp("lap");
    let k3 = write_k3(&dir);
    let out_csv = dir.join("l.csv");
    let out = run(&[
        "laplacian",
        "--graph",
        k3.to_str().unwrap(),
        "--eps",
        "0.001",
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let m = manifoldnet::io::read_matrix_csv(&out_csv).unwrap();
    assert_eq!(m.rows(), 3);
    assert!((m[(0, 0)] - 1.001).abs() < 1e-12);
    assert!((m[(0, 1)] + 0.5).abs() < 1e-12);
}

#[test]
fn ingest_writes_cohort_manifest_and_label_sidecar() {
    let dir = tmp("ingest");
    let expr = dir.join("expr.csv");
    fs::write(
        &expr,
        "gene,s1,s2,s3,s4,s5\n\
         tp53,1,2,3,4,5\n\
         mdm2,2,4,6,8,10\n\
         egfr,5,3,4,1,2\n",
    )
    .unwrap();
    let topo = dir.join("topo.tsv");
    fs::write(&topo, "tp53\tmdm2\nmdm2\tegfr\ntp53\tegfr\n").unwrap();
    let out_dir = dir.join("cohort");
    let out = run(&[
        "ingest",
        "--expression",
        expr.to_str().unwrap(),
        "--topology",
        topo.to_str().unwrap(),
        "--count",
        "4",
        "--subset-size",
        "3",
        "--seed",
        "11",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["files"].as_array().unwrap().len(), 4);
    assert_eq!(manifest["subsets"].as_array().unwrap().len(), 4);
    let labels: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("labels.json")).unwrap()).unwrap();
    assert_eq!(labels["tp53"], 0);
    // Weighted edge lists parse back with gene labels.
    let g = manifoldnet::io::read_edge_list(&out_dir.join("network_000.tsv")).unwrap();
    assert_eq!(g.node_count(), 3);
    assert!(g.labels().is_some());
    assert!(g.edges().iter().all(|e| e.w > 0.0 && e.w <= 1.0));
}

#[test]
fn show_config_prints_documented_defaults() {
    let out = run(&["mean", "ignored.tsv", "--show-config"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(json["eps"], 1e-3);
    assert_eq!(json["tol"], 1e-9);
    assert_eq!(json["max_iter"], 100);
    assert_eq!(json["trace_normalize"], false);
}

#[test]
fn trace_normalize_flag_scales_laplacian() {
    let dir = tmp("tracenorm");
    let k3 = write_k3(&dir);
    let out_csv = dir.join("l.csv");
    let out = run(&[
        "laplacian",
        "--graph",
        k3.to_str().unwrap(),
        "--trace-normalize",
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let m = manifoldnet::io::read_matrix_csv(&out_csv).unwrap();
    assert!((m.trace() - 1.0).abs() < 1e-12);
}

// -- exit-code contract -------------------------------------------------------

#[test]
fn usage_errors_exit_2() {
    let out = run(&[
        "generate", "--kind", "nonsense", "--n", "5", "--m", "5", "--seed", "1", "--out", "/tmp/x",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_input_exits_3() {
    let out = run(&[
        "curvature",
        "--graph",
        "/nonexistent/g.tsv",
        "--edge",
        "0",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn disconnected_graph_exits_4_and_names_the_file() {
    let dir = tmp("exit4");
    let bad = dir.join("disconnected.tsv");
    fs::write(&bad, "0\t1\n2\t3\n").unwrap();
    let good = write_k3(&dir);
    let out = run(&["dist", bad.to_str().unwrap(), good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("different components"), "stderr: {err}");
}

#[test]
fn infeasible_generator_spec_exits_2() {
    let out = run(&[
        "generate",
        "--kind",
        "chain",
        "--n",
        "10",
        "--m",
        "5",
        "--seed",
        "1",
        "--out",
        "/tmp/manifoldnet-infeasible",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_5() {
    let dir = tmp("exit5");
    let g1 = dir.join("a.tsv");
    let g2 = dir.join("b.tsv");
    // Very different graphs with an absurd tolerance and a single iteration.
    fs::write(&g1, "0\t1\n1\t2\n2\t3\n").unwrap();
    fs::write(&g2, "0\t1\n0\t2\n0\t3\n").unwrap();
    let out = run(&[
        "mean",
        g1.to_str().unwrap(),
        g2.to_str().unwrap(),
        "--tol",
        "1e-30",
        "--max-iter",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn toy_experiment_smoke_run_writes_schema_keys() {
    let dir = tmp("toy-smoke");
    let out = run(&[
        "experiment",
        "toy",
        "--seeds",
        "2",
        "--seed",
        "5",
        "--supports",
        "1,1.5",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    for key in [
        "config",
        "seed",
        "matrices",
        "class_stats",
        "clustering",
        "ordering_summary",
        "warnings",
    ] {
        assert!(report.get(key).is_some(), "missing top-level key {key}");
    }
    // Exemplar artifacts exist.
    for file in report["matrices"].as_array().unwrap() {
        assert!(dir.join(file.as_str().unwrap()).exists());
    }
}

#[test]
fn scalefree_smoke_run_smallest_cohort() {
    let dir = tmp("sf-smoke");
    let out = run(&[
        "experiment",
        "scalefree",
        "--n-per-class",
        "2",
        "--n",
        "30",
        "--m-attach",
        "3",
        "--seed",
        "9",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    // 4x4 distance matrix in the CSV: header plus four rows.
    let csv = fs::read_to_string(dir.join("scalefree_riemannian.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert_eq!(report["clustering"].as_array().unwrap().len(), 2);
}
