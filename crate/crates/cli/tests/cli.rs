use std::path::PathBuf;
use std::process::{Command, Output};

use knotwave::knots::TAU;

fn out_dir(name: &str) -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn knotwave(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_knotwave"));
    cmd.args(args).env_remove("KNOTWAVE_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_csv(path: &PathBuf) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

/// `a+btau` labels as printed for lattice knots.
fn parse_tau_label(s: &str) -> f64 {
    s.split('+')
        .map(|t| match t.strip_suffix("tau") {
            Some("") => TAU,
            Some(c) => c.parse::<f64>().unwrap() * TAU,
            None => t.parse::<f64>().unwrap(),
        })
        .sum()
}

#[test]
fn build_tau_quad_names_knot_classes() {
    let d = out_dir("tau_quad_build");
    let o = knotwave(&["build", "--family", "tau-quad", "--level", "0", "--count", "12", "-o", d.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = read_csv(&d.join("basis.csv"));
    assert_eq!(header[0], "x");
    for class in ["phi[1].", "phi[tau].", "phi[1+tau]."] {
        assert!(header.iter().any(|h| h.starts_with(class)), "no column for {class}");
    }
    assert_eq!(rows.len(), 201);
    assert!(rows.iter().all(|r| r.len() == header.len() && r.iter().all(|v| v.is_finite())));
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["params"]["root_branch"], "plus");
    assert_eq!(manifest["window"]["knots"].as_array().unwrap().len(), 12);
    assert!(manifest["gram_error"].as_f64().unwrap() < 1e-9);
}

#[test]
fn build_poly_on_explicit_knots() {
    let d = out_dir("poly_build");
    let o = knotwave(&["build", "--family", "poly", "--degree", "4", "--knots", "0,1,2.5,3", "--format", "json", "-o", d.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("basis.json")).unwrap()).unwrap();
    assert_eq!(v["x"].as_array().unwrap().len(), 201);
    // per interval φ̃², φ̃³, φ̃⁴ and z⁴, plus one function per knot
    assert_eq!(v["functions"].as_array().unwrap().len(), 3 * 4 + 4);
}

#[test]
fn usage_errors_exit_2() {
    let d = out_dir("usage");
    let dir = d.to_str().unwrap();
    let cases: [&[&str]; 6] = [
        &["build", "--family", "quad", "--theta", "1.2", "-o", dir],
        &["build", "--family", "cubic", "-o", dir],
        &["build", "--family", "tau-haar", "--degree", "3", "-o", dir],
        &["build", "--family", "poly", "--sample-points", "1", "-o", dir],
        &["build", "--family", "poly", "--knots", "0,2,1", "-o", dir],
        &["verify", "--family", "poly", "--degree", "13"],
    ];
    for args in cases {
        let o = knotwave(args, &[]);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
    }
    let o = knotwave(&["verify", "--family", "tau-haar"], &[("KNOTWAVE_TOL", "tiny")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("KNOTWAVE_TOL"));
}

#[test]
fn tolerance_is_clamped() {
    let d = out_dir("tol");
    let o = knotwave(&["verify", "--family", "tau-haar", "-o", d.to_str().unwrap()], &[("KNOTWAVE_TOL", "0.5")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("verify.json")).unwrap()).unwrap();
    assert_eq!(v["tolerance"].as_f64(), Some(1e-4));
    assert_eq!(v["passed"], true);
}

#[test]
fn tau_haar_wavelets_follow_the_closed_form() {
    let d = out_dir("tau_haar_wavelets");
    let o = knotwave(&["wavelets", "--family", "tau-haar", "--sample-points", "2001", "-o", d.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = read_csv(&d.join("wavelets.csv"));
    assert!(header.len() > 5);
    // ψ = τ^{-1/2} on [0, 1/τ), -τ^{1/2} on [1/τ, 1)
    let psi = |t: f64| {
        if (0.0..1.0 / TAU).contains(&t) {
            1.0 / TAU.sqrt()
        } else if (1.0 / TAU..1.0).contains(&t) {
            -TAU.sqrt()
        } else {
            0.0
        }
    };
    for (col, label) in header.iter().enumerate().skip(1) {
        let knot = label.strip_prefix("psi[").and_then(|s| s.split(']').next()).unwrap();
        let a = parse_tau_label(knot);
        let near_edge = |t: f64| [0.0, 1.0 / TAU, 1.0].iter().any(|e| (t - e).abs() < 1e-9);
        let mut worst_same: f64 = 0.0;
        let mut worst_flip: f64 = 0.0;
        for r in rows.iter().filter(|r| !near_edge(r[0] - a)) {
            let want = psi(r[0] - a);
            worst_same = worst_same.max((r[col] - want).abs());
            worst_flip = worst_flip.max((r[col] + want).abs());
        }
        assert!(worst_same.min(worst_flip) < 1e-12, "{label}: {worst_same} / {worst_flip}");
    }
}

#[test]
fn poly_wavelets_list_three_flavors() {
    let d = out_dir("poly_wavelets");
    let o = knotwave(&["wavelets", "--family", "poly", "--degree", "2", "-o", d.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, _) = read_csv(&d.join("wavelets.csv"));
    for part in [".bar.hat", ".bar.tilde", ".breve."] {
        assert!(header.iter().any(|h| h.contains(part)), "missing {part}");
    }
    let dims: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("dimensions.json")).unwrap()).unwrap();
    assert!(dims["violations"].as_array().unwrap().is_empty());
    let coeffs = std::fs::read_to_string(d.join("coefficients.csv")).unwrap();
    assert!(coeffs.starts_with("kind,knot,a,a_prime,row,col,value\n"));
    assert!(coeffs.lines().count() > 10);
}

#[test]
fn tau_quad_wavelets_emit_tables() {
    let d = out_dir("tau_quad_wavelets");
    let o = knotwave(&["wavelets", "--family", "tau-quad", "-o", d.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("coefficients.json")).unwrap()).unwrap();
    // C and D for each of the 11 (a, a') pairs
    assert_eq!(v["tau_tables"].as_array().unwrap().len(), 22);
}

#[test]
fn quad_non_refinement_is_a_construction_error() {
    let d = out_dir("quad_not_nested");
    let o = knotwave(&["wavelets", "--family", "quad", "--knots0", "0,1,2", "--knots1", "0,1.5,2", "-o", d.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("missing from the fine window"), "{}", stderr(&o));
    // fine knots present but the b-point of [0, 1] is not
    let o = knotwave(&["wavelets", "--family", "quad", "--knots0", "0,1,2", "--knots1", "0,0.3,1,1.5,2", "-o", d.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn verify_passes_and_perturbation_fails() {
    for args in [
        &["verify", "--family", "tau-quad"][..],
        &["verify", "--family", "poly", "--degree", "8"],
        &["verify", "--family", "quad", "--theta", "0.3"],
    ] {
        let o = knotwave(args, &[]);
        assert_eq!(code(&o), 0, "{args:?}\n{}", stdout(&o));
        assert!(stderr(&o).contains("runtime"));
        assert!(!stdout(&o).contains("FAIL"));
    }
    let o = knotwave(&["verify", "--family", "poly", "--perturb", "1e-3"], &[]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn outputs_are_deterministic() {
    let a = out_dir("det_a");
    let b = out_dir("det_b");
    for d in [&a, &b] {
        let o = knotwave(&["wavelets", "--family", "quad", "--theta", "0.4", "-o", d.to_str().unwrap()], &[]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    for f in ["wavelets.csv", "dimensions.json", "coefficients.csv", "coefficients.json", "manifest.json"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
}
