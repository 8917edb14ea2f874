use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use super::*;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

impl Outcome {
    fn json(&self) -> Value {
        assert_eq!(self.code, EXIT_OK, "stderr: {}", self.err);
        serde_json::from_str(&self.out).unwrap_or_else(|e| panic!("{e}: {}", self.out))
    }
}

fn run_env(args: &[&str], env: Option<&Path>) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(
        std::iter::once("ito-frft").chain(args.iter().copied()),
        &mut Io {
            out: &mut out,
            err: &mut err,
            out_dir_env: env.map(Path::to_path_buf),
        },
    );
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn run_cli(args: &[&str]) -> Outcome {
    run_env(args, None)
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(schema_name);
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let schema = jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap();
    let msgs: Vec<String> = match schema.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    panic!("{schema_name}: {msgs:?}\n{doc}");
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn complex(v: &Value) -> (f64, f64) {
    (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

// ψ^1_{1,0}(x) for real x.
fn psi10(x: f64) -> f64 {
    x / PI.sqrt()
}

const PSI10: &str = r#"{"nu":1,"coeffs":[{"m":1,"n":0,"re":1,"im":0}]}"#;

#[test]
fn axis_values() {
    let ax = parse_axis("1:0.5:3").unwrap();
    assert_eq!(ax.values(), vec![0.5, 1.0, 1.5]);
    assert_eq!(parse_axis("0.3:0:1").unwrap().values(), vec![0.3]);
    assert!(parse_axis("0:1:0").is_err());
    assert!(parse_axis("0:-1:2").is_err());
    assert!(parse_axis("0:1").is_err());
}

#[test]
fn complex_flags() {
    assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
    assert_eq!(parse_complex("-1,2.5").unwrap(), Complex64::new(-1.0, 2.5));
    assert!(parse_complex("1,2,3").is_err());
    assert!(parse_complex("x").is_err());
    assert!(parse_complex("nan").is_err());
}

#[test]
fn help_and_unknown_commands() {
    let help = run_cli(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    for sub in ["hermite", "kernel", "transform", "spectrum", "verify"] {
        assert!(help.out.contains(sub), "{sub} missing from help");
    }
    assert_eq!(run_cli(&["nonsense"]).code, EXIT_USAGE);
    assert_eq!(run_cli(&[]).code, EXIT_USAGE);
}

#[test]
fn hermite_eval_constant() {
    let v = run_cli(&["hermite", "eval", "--nu", "1", "--m", "0", "--n", "0", "--z-re", "5"]).json();
    assert_valid("hermite_output.schema.json", &v);
    assert_eq!(complex(&v["value"]), (1.0, 0.0));
}

#[test]
fn hermite_zeros_of_h11() {
    let v = run_cli(&["hermite", "zeros", "--nu", "1", "--m", "1", "--n", "1"]).json();
    assert_valid("hermite_output.schema.json", &v);
    let radii = v["radii"].as_array().unwrap();
    assert_eq!(radii.len(), 1);
    assert!((radii[0].as_f64().unwrap() - 1.0).abs() < 1e-14);
    assert_eq!(v["origin"], Value::Bool(false));
}

#[test]
fn hermite_nullset_on_unit_circle() {
    let v = run_cli(&["hermite", "nullset", "--nu", "1", "--m", "6", "--n", "6", "--z-re", "1"]).json();
    assert_valid("hermite_output.schema.json", &v);
    assert_eq!(v["indices"], serde_json::json!([[1, 1]]));
}

#[test]
fn hermite_flag_errors() {
    assert_eq!(run_cli(&["hermite", "eval", "--m", "-1", "--n", "0"]).code, EXIT_USAGE);
    assert_eq!(run_cli(&["hermite", "eval", "--m", "1"]).code, EXIT_USAGE);
    assert_eq!(run_cli(&["hermite", "expand", "--m", "1", "--n", "1"]).code, EXIT_USAGE);
    let bad_nu = run_cli(&["hermite", "eval", "--nu", "-1", "--m", "1", "--n", "0"]);
    assert_eq!(bad_nu.code, EXIT_DOMAIN);
    assert!(bad_nu.err.contains("nu"), "{}", bad_nu.err);
    assert!(bad_nu.out.is_empty());
}

#[test]
fn kernel_outputs() {
    for args in [
        &["kernel", "mehler", "--u", "0.3", "--v", "0.2,0.1", "--z", "0.5,-0.1", "--w", "-0.2,0.3", "--trunc", "40"][..],
        &["kernel", "frft", "--z", "1", "--w", "0,1"],
        &["kernel", "bergman", "--z", "0.1", "--w", "0.2", "--a", "0.3", "--b", "0.1,0.1"],
        &["kernel", "gram", "--w", "1", "--z", "0.2", "--a", "0.3,-0.1"],
    ] {
        assert_valid("kernel_output.schema.json", &run_cli(args).json());
    }
    let v = run_cli(&["kernel", "mehler", "--u", "0.3", "--v", "0.2", "--z", "0.5", "--w", "0.4", "--trunc", "60"]).json();
    let (c, s) = (complex(&v["value"]).0, complex(&v["series"]).0);
    assert!((s - c / PI).abs() < 1e-12 * c);
    assert_eq!(run_cli(&["kernel", "bergman", "--z", "1.5"]).code, EXIT_DOMAIN);
    assert_eq!(run_cli(&["kernel", "mehler", "--u", "1,1"]).code, EXIT_DOMAIN);
}

#[test]
fn dual_transform_of_single_mode() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "psi10.json", PSI10);
    let v = run_cli(&[
        "transform", "dual", "--input", f.to_str().unwrap(), "--w", "1", "--grid-x", "0.3:0:1", "--grid-y", "0.2:0:1",
    ])
    .json();
    assert_valid("transform_output.schema.json", &v);
    let (re, im) = complex(&v[0]["value"]);
    assert!((re - psi10(1.0) * 0.3).abs() < 1e-12, "{re}");
    assert!(im.abs() < 1e-12);
}

#[test]
fn frft_of_eigenfunction() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "psi21.json", r#"{"nu":1,"coeffs":[{"m":2,"n":1,"re":1,"im":0}]}"#);
    let v = run_cli(&["transform", "frft", "--input", f.to_str().unwrap(), "--u", "0.5", "--v", "0.5", "--grid-x", "0.5:0:1"])
        .json();
    assert_valid("transform_output.schema.json", &v);
    // ψ_{2,1}(z) = (z² z̄ - 2z)/sqrt(2π) at ν = 1.
    let psi = (0.125 - 1.0) / (2.0 * PI).sqrt();
    let (re, im) = complex(&v[0]["value"]);
    assert!((re - 0.125 * psi).abs() < 1e-8, "{re} vs {}", 0.125 * psi);
    assert!(im.abs() < 1e-8);
}

#[test]
fn empty_coefficients_give_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "empty.json", r#"{"nu":1,"coeffs":[]}"#);
    for kind in ["frft", "dual", "hankel"] {
        let v = run_cli(&["transform", kind, "--input", f.to_str().unwrap(), "--grid-x", "0.3:0.2:3"]).json();
        assert_valid("transform_output.schema.json", &v);
        let samples = v.as_array().unwrap();
        assert_eq!(samples.len(), 3);
        assert!(samples.iter().all(|s| complex(&s["value"]) == (0.0, 0.0)), "{kind}: {v}");
    }
}

#[test]
fn hankel_transform_of_first_mode() {
    // ψ_{1,0} = r e^{iθ}/sqrt(π); its k = 1 profile picks up the factor u.
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "psi10.json", PSI10);
    let v = run_cli(&[
        "transform", "hankel", "--input", f.to_str().unwrap(), "--order", "1", "--u", "0.4", "--v", "0.3", "--grid-x",
        "1:0.5:3",
    ])
    .json();
    assert_valid("transform_output.schema.json", &v);
    for s in v.as_array().unwrap() {
        let y = s["point"].as_f64().unwrap();
        assert!((complex(&s["value"]).0 - 0.4 * psi10(y)).abs() < 1e-10);
    }
    let complex_u = run_cli(&["transform", "hankel", "--input", f.to_str().unwrap(), "--u", "0.4,0.1"]);
    assert_eq!(complex_u.code, EXIT_DOMAIN);
    let aliased = run_cli(&["transform", "hankel", "--input", f.to_str().unwrap(), "--order", "40", "--n-angular", "64"]);
    assert_eq!(aliased.code, EXIT_DOMAIN);
    assert!(aliased.err.contains("alias"), "{}", aliased.err);
}

#[test]
fn invalid_coeff_files_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("missing.json", None, "cannot read"),
        ("noim.json", Some(r#"{"nu":1,"coeffs":[{"m":1,"n":0,"re":1}]}"#), "im"),
        ("dup.json", Some(r#"{"nu":1,"coeffs":[{"m":1,"n":0,"re":1,"im":0},{"m":1,"n":0,"re":2,"im":0}]}"#), "duplicate"),
        ("neg.json", Some(r#"{"nu":1,"coeffs":[{"m":-1,"n":0,"re":1,"im":0}]}"#), "coefficient file"),
        ("nu.json", Some(r#"{"nu":0,"coeffs":[]}"#), "nu"),
        ("extra.json", Some(r#"{"nu":1,"coeffs":[],"scale":2}"#), "scale"),
    ];
    for (name, body, needle) in cases {
        let path = dir.path().join(name);
        if let Some(body) = body {
            fs::write(&path, body).unwrap();
        }
        let o = run_cli(&["transform", "frft", "--input", path.to_str().unwrap()]);
        assert_eq!(o.code, EXIT_DOMAIN, "{name}");
        assert!(o.err.contains(needle), "{name}: {}", o.err);
    }
}

#[test]
fn bad_grid_is_usage_error() {
    assert_eq!(run_cli(&["transform", "frft", "--input", "x.json", "--grid-x", "0:1:0"]).code, EXIT_USAGE);
    assert_eq!(run_cli(&["transform", "frft", "--input", "x.json", "--grid-y", "a:b:c"]).code, EXIT_USAGE);
}

#[test]
fn spectrum_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_cli(&[
        "spectrum", "--nu", "1", "--alpha", "1", "--beta", "1", "--max-m", "5", "--max-n", "3", "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    let csv = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "m,n,s");
    assert_eq!(lines.len() - 1, 6 * 4);
    let summary: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_valid("summary.schema.json", &summary);
    let top = &summary["top"][0];
    assert_eq!((top["m"].as_u64(), top["n"].as_u64()), (Some(0), Some(0)));
    assert!((top["s"].as_f64().unwrap() - (PI / 4.0).sqrt()).abs() < 1e-14);
    assert_eq!(summary["top"].as_array().unwrap().len(), 10);
    assert_eq!(summary["kw"]["in_bracket"], Value::Bool(true));
    let cutoffs: Vec<u64> = summary["schatten"]["partial_sums"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["cutoff"].as_u64().unwrap())
        .collect();
    assert_eq!(cutoffs, [10, 20, 40]);
}

#[test]
fn spectrum_regime_gate() {
    for (a, b) in [("0", "1"), ("1", "-0.5")] {
        let o = run_cli(&["spectrum", "--alpha", a, "--beta", b, "--max-m", "3", "--max-n", "3"]);
        assert_eq!(o.code, EXIT_DOMAIN);
        assert!(o.err.contains("alpha > 0 and beta > 0"), "{}", o.err);
    }
}

#[test]
fn env_override_beats_out_dir_flag() {
    let flag_dir = tempfile::tempdir().unwrap();
    let env_dir = tempfile::tempdir().unwrap();
    let o = run_env(
        &[
            "spectrum", "--alpha", "2", "--beta", "0.5", "--w-re", "1", "--max-m", "2", "--max-n", "2", "--out-dir",
            flag_dir.path().to_str().unwrap(),
        ],
        Some(env_dir.path()),
    );
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    assert!(env_dir.path().join("spectrum.csv").exists());
    assert!(!flag_dir.path().join("spectrum.csv").exists());
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "mix.json",
        r#"{"nu":0.7,"coeffs":[{"m":1,"n":2,"re":0.5,"im":-0.25},{"m":0,"n":0,"re":1,"im":0}]}"#,
    );
    let args = ["transform", "frft", "--input", f.to_str().unwrap(), "--u", "0.3,0.1", "--grid-x", "0:1:4", "--grid-y", "0:1:3"];
    assert_eq!(run_cli(&args).out, run_cli(&args).out);

    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&d1, &d2] {
        let o = run_cli(&[
            "spectrum", "--alpha", "1", "--beta", "2", "--w-re", "0.5", "--w-im", "-1", "--max-m", "8", "--max-n", "8",
            "--out-dir", d.path().to_str().unwrap(),
        ]);
        assert_eq!(o.code, EXIT_OK);
    }
    for file in ["spectrum.csv", "summary.json"] {
        assert_eq!(fs::read(d1.path().join(file)).unwrap(), fs::read(d2.path().join(file)).unwrap());
    }
}

#[test]
fn coeff_file_written_and_reread_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let f = CoeffFile::parse(r#"{"nu":0.3,"coeffs":[{"m":3,"n":1,"re":0.1,"im":-1e-300},{"m":0,"n":4,"re":1.7976931348623157e308,"im":0.3}]}"#)
        .unwrap();
    let path = write(dir.path(), "f.json", &CoeffFile::from_function(&f).to_json());
    let text = fs::read_to_string(&path).unwrap();
    assert_valid("coeff_file.schema.json", &serde_json::from_str(&text).unwrap());
    let back = CoeffFile::read(&path).unwrap();
    assert_eq!(CoeffFile::from_function(&back), CoeffFile::from_function(&f));
}

#[test]
fn verify_config_errors_are_usage_errors() {
    assert_eq!(run_cli(&["verify", "--config", "/nonexistent/cfg.json"]).code, EXIT_USAGE);
    let dir = tempfile::tempdir().unwrap();
    for body in [r#"{"n_radial": 4}"#, r#"{"tolerances": {"orthonormality": 0}}"#, r#"{"tolerances": {"nope": 1}}"#, r#"{"bogus": 1}"#, "not json"] {
        let cfg = write(dir.path(), "cfg.json", body);
        let o = run_cli(&["verify", "--config", cfg.to_str().unwrap()]);
        assert_eq!(o.code, EXIT_USAGE, "{body}");
        assert!(!dir.path().join("report.json").exists());
    }
}

#[test]
fn verify_tight_tolerance_fails_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cfg = write(
        dir.path(),
        "cfg.json",
        &serde_json::json!({
            "tolerances": {"orthonormality": 1e-16, "hankel_fixed_point": 1e-16},
            "output_dir": out,
        })
        .to_string(),
    );
    let o = run_cli(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_VERIFY);
    let report: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_valid("report.schema.json", &report);
    let checks = report["checks"].as_array().unwrap();
    let status = |name: &str| checks.iter().find(|c| c["name"] == name).map(|c| c["status"].as_str().unwrap().to_string());
    assert_eq!(status("orthonormality").as_deref(), Some("fail"));
    assert_eq!(status("hankel_fixed_point").as_deref(), Some("fail"));
    assert_eq!(status("eigenrelation").as_deref(), Some("pass"));
    for name in crate::verify::CRITERIA.iter().chain(crate::verify::INVARIANTS) {
        assert!(checks.iter().any(|c| c["suite"] == *name), "{name} missing");
    }
    // One stdout line per check.
    assert_eq!(o.out.lines().count(), checks.len());
    assert_eq!(report["metadata"]["tool"], "ito-frft");
}
