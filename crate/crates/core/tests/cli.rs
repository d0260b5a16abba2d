use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ruled(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ruled"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn emit_spec(dir: &TempDir, name: &str, params: &[&str]) -> String {
    let mut args = vec!["gallery", "--name", name, "--emit-spec"];
    for p in params {
        args.extend(["--param", p]);
    }
    let o = ruled(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    write(dir, &format!("{name}.json"), &stdout(&o))
}

const SCALED_HELICOID: &str = r#"{"type":"expression","cx":"0","cy":"0","cz":"u",
    "dx":"2*cos(u)","dy":"2*sin(u)","dz":"0","domain":[-1,1]}"#;

#[test]
fn fit_on_conoid_reports_inverse_cube() {
    let dir = TempDir::new().unwrap();
    let spec = emit_spec(&dir, "conoidal_const_delta", &["alpha=2", "beta=1"]);
    let o = ruled(&["fit", "--spec", &spec, "--family", "s3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "fit");
    assert_eq!(v["n"], -3);
    for s in v["f_samples"].as_array().unwrap() {
        assert!((s[1].as_f64().unwrap() + 2.0).abs() < 1e-9);
    }
}

#[test]
fn generic_surface_has_no_power_law() {
    let dir = TempDir::new().unwrap();
    let spec = emit_spec(&dir, "generic_skew", &[]);
    for family in ["lc1", "lc2", "s1", "s2", "s3", "s4"] {
        let o = ruled(&["fit", "--spec", &spec, "--family", family]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["outcome"], "no_fit", "{family}");
    }
}

#[test]
fn gauge_violation_needs_standardize() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "h.json", SCALED_HELICOID);
    let o = ruled(&["classify", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("gauge"), "{}", stderr(&o));

    let o = ruled(&["classify", "--spec", &spec, "--standardize"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["flags"]["right_helicoid"], true);
    assert_eq!(v["flags"]["edlinger"], false);
}

#[test]
fn emitted_specs_classify_as_their_class() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("right_helicoid", "right_helicoid"),
        ("hyperboloid_edlinger", "edlinger"),
        ("orthoid_const_delta", "orthoid_const_delta"),
        ("conoidal_const_delta", "conoidal_const_delta"),
    ];
    for (name, flag) in cases {
        let spec = emit_spec(&dir, name, &[]);
        let o = ruled(&["classify", "--spec", &spec]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["flags"][flag], true, "{name}");
    }
    let spec = emit_spec(&dir, "generic_skew", &[]);
    let v: Value = serde_json::from_str(&stdout(&ruled(&["classify", "--spec", &spec]))).unwrap();
    assert!(v["flags"].as_object().unwrap().values().all(|f| f == false));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let spec = emit_spec(&dir, "generic_skew", &["k=0.5"]);
    let runs: Vec<Vec<Vec<u8>>> = (0..2)
        .map(|_| {
            vec![
                ruled(&["invariants", "--spec", &spec]).stdout,
                ruled(&["fit", "--spec", &spec, "--family", "s2"]).stdout,
                ruled(&[
                    "trace", "--spec", &spec, "--family", "s4", "--u0", "0", "--v0", "0.7",
                ])
                .stdout,
                ruled(&["verify", "--all", "--format", "json"]).stdout,
            ]
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn trace_formats() {
    let dir = TempDir::new().unwrap();
    let spec = emit_spec(&dir, "right_helicoid", &[]);
    let base = [
        "trace",
        "--spec",
        spec.as_str(),
        "--family",
        "s1",
        "--u0",
        "0",
        "--v0",
        "0.5",
        "--steps",
        "4",
    ];

    let csv = stdout(&ruled(&[&base[..], &["--format", "csv"]].concat()));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "u,v,x,y,z");
    assert_eq!(lines.len(), 6);
    // constant-striction-distance curves on a helicoid keep v
    for l in &lines[1..] {
        assert_eq!(l.split(',').nth(1).unwrap(), "5.00000000000e-1");
    }

    let obj = stdout(&ruled(&[&base[..], &["--format", "obj"]].concat()));
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 5);
    assert!(obj.ends_with("l 1 2 3 4 5\n"));

    let out = dir.path().join("trace.json");
    let o = ruled(
        &[
            &base[..],
            &["--format", "json", "--out", out.to_str().unwrap()],
        ]
        .concat(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
    assert_eq!(v["stop"]["reason"], "completed");
}

#[test]
fn trace_leaving_the_domain_is_reported() {
    let dir = TempDir::new().unwrap();
    let spec = emit_spec(&dir, "right_helicoid", &[]);
    let o = ruled(&[
        "trace",
        "--spec",
        &spec,
        "--family",
        "s1",
        "--u0",
        "1.4",
        "--v0",
        "0.5",
        "--steps",
        "50",
        "--step-size",
        "0.05",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["stop"]["reason"], "domain_exit");
    assert!(v["points"].as_array().unwrap().len() < 51);
}

#[test]
fn invariants_csv_and_sampling() {
    let dir = TempDir::new().unwrap();
    let spec = emit_spec(&dir, "hyperboloid_edlinger", &["c=2"]);
    let o = ruled(&[
        "invariants",
        "--spec",
        &spec,
        "--u-points",
        "5",
        "--v",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[..4], ["u", "k", "delta", "delta_prime"]);
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert!((r[1] - 2.0).abs() < 1e-10 && (r[2] + 2.0).abs() < 1e-10);
    }
}

#[test]
fn verify_subsets_and_exit_codes() {
    let o = ruled(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines()
            .filter(|l| l.trim_end().ends_with("pass"))
            .count(),
        12 + 2
    );
    assert!(text.contains("overall: pass"));

    let o = ruled(&[
        "verify",
        "--prop",
        "P1",
        "--prop",
        "corollary",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let spec = emit_spec(&dir, "generic_skew", &[]);
    let bad_json = write(
        &dir,
        "bad.json",
        r#"{"type":"gallery","name":"cylinder","params":{}}"#,
    );
    let cases: Vec<Vec<&str>> = vec![
        vec!["fit", "--spec", &spec, "--family", "s9"],
        vec!["fit", "--spec", &spec, "--family", "s1", "--v-points", "4"],
        vec!["classify", "--spec", "/nonexistent/spec.json"],
        vec!["classify", "--spec", &bad_json],
        vec!["gallery", "--name", "edlinger", "--param", "c"],
        vec![
            "trace", "--spec", &spec, "--family", "s1", "--u0", "0", "--v0", "0", "--format",
            "yaml",
        ],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = ruled(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    let o = ruled(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ruled::cli::run(["ruled", "gallery"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, ruled(&["gallery"]).stdout);
    assert!(Path::new(env!("CARGO_BIN_EXE_ruled")).exists());
}
