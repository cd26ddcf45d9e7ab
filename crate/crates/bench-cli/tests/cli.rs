//! End-to-end runs of the `circumsphere` binary.

use std::io::Write;
use std::process::{Command, Output};

use circumsphere_bench::report::{parse_csv, parse_json};
use circumsphere_bench::CSV_HEADER;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circumsphere"))
        .args(args)
        .output()
        .unwrap()
}

fn input_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_csv_reports_radius_squared() {
    let f = input_file("# right triangle\n1 0 0  0 1 0  0 0 0\n0 0 0 1 1 1 2 2 2\n");
    let out = run(&[
        "compute",
        "--method",
        "projective",
        "--input",
        f.path().to_str().unwrap(),
        "--output",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,line,status,radius_sq,center_0,center_1,center_2");
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[2], "ok");
    assert_eq!(first[3].parse::<f64>().unwrap(), 0.5);
    assert!(lines[2].contains("degenerate-triangle"));
}

#[test]
fn compute_json_with_radius() {
    let f = input_file("0 0 0 1 0 0 0 1 0 0 0 1\n");
    let path = f.path().to_str().unwrap();
    let out = run(&[
        "compute",
        "--method",
        "tetra-closed",
        "--input",
        path,
        "--radius",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["quantity"], "radius");
    let r = v["results"][0]["value"].as_f64().unwrap();
    assert!((r - 0.75f64.sqrt()).abs() < 1e-15);
}

#[test]
fn compute_linear_in_higher_dimension() {
    // unit simplex in E^4: circumcenter (1/2, 1/2, 1/2, 1/2), r² = 1
    let f = input_file("0 0 0 0  1 0 0 0  0 1 0 0  0 0 1 0  0 0 0 1\n");
    let out = run(&[
        "compute",
        "--method",
        "linear",
        "--dim",
        "4",
        "--input",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let row: Vec<f64> = stdout(&out)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .skip(3)
        .map(|x| x.parse().unwrap())
        .collect();
    assert!((row[0] - 1.0).abs() < 1e-15);
    for c in &row[1..] {
        assert!((c - 0.5).abs() < 1e-15);
    }
}

#[test]
fn all_degenerate_batch_exits_three() {
    let f = input_file("0 0 0 1 1 1 2 2 2\n0 0 0 0 0 0 1 0 0\n");
    let out = run(&["compute", "--method", "standard", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["compute", "--method", "nope", "--input", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["bench"]).status.code(), Some(2));
    assert_eq!(
        run(&["compute", "--method", "standard", "--input", "/no/such/file"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["bench", "--method", "standard", "--dim", "4", "--count", "5"])
            .status
            .code(),
        Some(2)
    );
    let f = input_file("1 2 3 4\n");
    assert_eq!(
        run(&["verify", "--input", f.path().to_str().unwrap(), "--dim", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bench_csv_round_trips_through_json() {
    let out = run(&[
        "bench",
        "--method",
        "standard,projective",
        "--count",
        "200",
        "--seed",
        "3",
        "--radius",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    let report = parse_csv(&text).unwrap();
    assert_eq!(report.rows.len(), 4);
    let json = run(&[
        "bench",
        "--method",
        "standard,projective",
        "--count",
        "200",
        "--seed",
        "3",
        "--radius",
        "--output",
        "json",
    ]);
    let from_json = parse_json(&stdout(&json)).unwrap();
    for (a, b) in report.rows.iter().zip(&from_json.rows) {
        assert_eq!(
            (&a.method, &a.family, a.count, a.max_resid, a.mean_resid),
            (&b.method, &b.family, b.count, b.max_resid, b.mean_resid)
        );
    }
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("speedup vs standard"));
    assert!(stderr.contains("square root share"));
}

#[test]
fn bench_single_instance() {
    let out = run(&["bench", "--method", "facet-projective", "--dim", "5", "--count", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = parse_csv(&stdout(&out)).unwrap();
    assert_eq!(report.rows.len(), 1);
    assert!(report.rows[0].ns_op_median.unwrap() > 0.0);
}

#[test]
fn bench_needle_lists_every_exponent() {
    let out = run(&["bench", "--method", "standard", "--family", "needle", "--count", "120"]);
    assert_eq!(out.status.code(), Some(0));
    let report = parse_csv(&stdout(&out)).unwrap();
    for k in 1..=12 {
        assert!(report.row("standard", &format!("needle:{k}")).is_some(), "k={k}");
    }
}

#[test]
fn verify_passes_good_input_and_flags_degenerate() {
    let f = input_file("1 0 0 0 1 0 0 0 0\n0.1 -0.3 0.2 0.9 0.1 -0.4 -0.5 0.8 0.3\n");
    let out = run(&["verify", "--input", f.path().to_str().unwrap(), "--dim", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.contains("\tok\t")).count(), 2);

    let f = input_file("0 0 0 1 0 0 0 1 0 0 0 1\n0 0 0 1 0 0 0 1 0 1 1 0\n");
    let out = run(&["verify", "--input", f.path().to_str().unwrap(), "--dim", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("degenerate"));

    let f = input_file("0 0 0 1 0 0 0 1 0 1 1 0\n");
    let out = run(&["verify", "--input", f.path().to_str().unwrap(), "--dim", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_handles_facets_in_higher_dimension() {
    let f = input_file("0.7 0 0 0  0 0.7 0 0  0 0 0.7 0  0 0 0 0.7\n");
    let out = run(&["verify", "--input", f.path().to_str().unwrap(), "--dim", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}
