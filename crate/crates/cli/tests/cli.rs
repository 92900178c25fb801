use std::path::Path;
use std::process::{Command, Output};

use sdmbc_core::channel::{multiplicative_bc, save_channel};

fn sdmbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdmbc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_records(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn corollary1_point_is_printed_exactly() {
    let out = sdmbc(&[
        "region",
        "corollary1",
        "--q",
        "0.6",
        "--gamma",
        "0.5",
        "--p",
        "0.5",
        "--r",
        "1",
    ]);
    assert!(out.status.success());
    let (header, rows) = csv_records(&stdout(&out));
    assert_eq!(header, ["R1", "R2", "D1", "D2", "source"]);
    assert_eq!(
        rows,
        [[
            "0.600000000",
            "0.000000000",
            "0.200000000",
            "0.150000000",
            "corollary1"
        ]]
    );
}

#[test]
fn simulation_is_byte_identical_across_runs_and_thread_counts() {
    let args = [
        "simulate",
        "--channel",
        "multiplicative",
        "--n",
        "200000",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let a = sdmbc(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_sdmbc"))
        .args(args)
        .env("SDMBC_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dueck_inner_reports_the_product_regime() {
    let out = sdmbc(&[
        "region",
        "dueck-inner",
        "--channel",
        "dueck",
        "--ps1",
        "0.25",
        "--beta",
        "0.5",
        "--gamma-ts",
        "1",
    ]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("regime 1"), "{err}");
    assert!(err.contains("CD = C × D"), "{err}");
    assert!(err.contains("D_min = 0.125"), "{err}");
}

#[test]
fn dueck_inner_rejects_out_of_regime_parameters() {
    let out = sdmbc(&[
        "region",
        "dueck-inner",
        "--ps1",
        "0.75",
        "--beta",
        "0.5",
        "--gamma-ts",
        "0.25",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn structural_checks_set_the_exit_code() {
    assert_eq!(
        sdmbc(&["check", "degraded", "--channel", "multiplicative"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        sdmbc(&["check", "degraded", "--channel", "flipping"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        sdmbc(&["check", "degraded", "--channel", "erasure"])
            .status
            .code(),
        Some(1)
    );
    let tradeoff = [
        "check",
        "no-tradeoff",
        "--channel",
        "erasure",
        "--witness",
        "erasure-indicator",
    ];
    assert_eq!(sdmbc(&tradeoff).status.code(), Some(0));
    let constant = [
        "check",
        "no-tradeoff",
        "--channel",
        "erasure",
        "--witness",
        "constant",
    ];
    assert_eq!(sdmbc(&constant).status.code(), Some(1));
    assert_eq!(
        sdmbc(&["check", "no-tradeoff", "--channel", "erasure"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn perturbed_spec_file_is_not_degraded() {
    let spec = multiplicative_bc(0.6, 0.5).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&save_channel(&spec)).unwrap();
    let text = doc.to_string();
    assert!(text.contains("transition"), "{text}");
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, &text).unwrap();
    let ok = sdmbc(&["check", "degraded", "--spec", good.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    perturb_first_active_row(&mut doc["transition"]);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let out = sdmbc(&["check", "degraded", "--spec", bad.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

/// In state (s1=1, s2=0) with x=1, sends 0.3 of the mass from `(y1=1, y2=0)`
/// to `(y1=0, y2=1)`, so receiver 2 learns about the input where receiver 1
/// sees nothing.
fn perturb_first_active_row(transition: &mut serde_json::Value) {
    let row = &mut transition[1][0][1];
    let mut flat: Vec<f64> = serde_json::from_value(row.clone()).expect("row is a flat list");
    let (from, to) = (8 + 2, 4 + 1);
    assert_eq!(flat[from], 1.0);
    flat[from] -= 0.3;
    flat[to] += 0.3;
    *row = serde_json::to_value(flat).unwrap();
}

#[test]
fn bad_inputs_map_to_usage_and_io_codes() {
    assert_eq!(
        sdmbc(&["region", "corollary1", "--q", "1.5"]).status.code(),
        Some(2)
    );
    let missing = sdmbc(&["channel", "--spec", "/nonexistent/spec.json"]);
    assert_eq!(missing.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"not\": \"a channel\"}").unwrap();
    assert_eq!(
        sdmbc(&["channel", "--spec", broken.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let unwritable = sdmbc(&["figure", "fig4", "--out", "/nonexistent/dir/fig4.csv"]);
    assert_eq!(unwritable.status.code(), Some(3));
}

#[test]
fn channel_document_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dueck.json");
    let out = sdmbc(&[
        "channel",
        "--channel",
        "dueck",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let again = sdmbc(&[
        "channel",
        "--spec",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(std::fs::read(&path).unwrap(), again.stdout);
}

#[test]
fn fig4_csv_matches_json_to_nine_decimals() {
    let csv_out = stdout(&sdmbc(&["figure", "fig4"]));
    let json_out: serde_json::Value =
        serde_json::from_slice(&sdmbc(&["figure", "fig4", "--format", "json"]).stdout).unwrap();
    let (header, rows) = csv_records(&csv_out);
    assert_eq!(
        header,
        ["D", "outer", "inner", "resource_splitting", "time_sharing"]
    );
    let objects = json_out.as_array().unwrap();
    assert_eq!(rows.len(), 28);
    assert_eq!(objects.len(), rows.len());
    for (row, obj) in rows.iter().zip(objects) {
        for (cell, key) in row.iter().zip(&header) {
            match obj[key.as_str()].as_f64() {
                Some(v) => assert_eq!(cell, &format!("{v:.9}"), "{key}"),
                None => assert!(cell.is_empty(), "{key}: {cell}"),
            }
        }
    }
}

#[test]
fn fig2_writes_baselines_next_to_the_surface() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig2.csv");
    let run = sdmbc(&[
        "figure",
        "fig2",
        "--grid-res",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let surface = std::fs::read_to_string(&out).unwrap();
    assert!(surface.starts_with("r,p,R1,R2,D1\n"));
    for suffix in ["resource_splitting", "time_sharing"] {
        let path = Path::new(&format!("{}.{suffix}.csv", out.display())).to_owned();
        assert!(std::fs::read_to_string(path)
            .unwrap()
            .starts_with("r,lambda,R1,R2,D1\n"));
    }
}

#[test]
fn estimator_dump_lists_every_pair_for_both_receivers() {
    let out = stdout(&sdmbc(&["estimate", "--channel", "multiplicative"]));
    let (header, rows) = csv_records(&out);
    assert_eq!(
        header,
        ["k", "x", "z", "shat", "d_prime", "reachable", "posterior"]
    );
    assert_eq!(rows.len(), 2 * 2 * 4);
    let reachable: Vec<_> = rows.iter().filter(|r| r[5] == "true").collect();
    assert!(reachable.iter().all(|r| r[6].split(';').count() == 2));
}

#[test]
fn prop3_feedback_preset_reaches_the_corner() {
    let out = stdout(&sdmbc(&[
        "region",
        "prop3",
        "--channel",
        "dueck",
        "--preset",
        "feedback1",
        "--beta",
        "0.5",
    ]));
    let (_, rows) = csv_records(&out);
    let sum = rows
        .iter()
        .map(|r| r[0].parse::<f64>().unwrap() + r[1].parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert!((sum - 1.5625).abs() < 1e-8, "{sum}");
}
