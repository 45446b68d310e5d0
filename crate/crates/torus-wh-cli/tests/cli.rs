use serde_json::Value;
use std::f64::consts::PI;
use std::process::Command;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_torus-wh")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (code, doc, String::from_utf8(out.stderr).unwrap())
}

fn ok(args: &[&str]) -> Value {
    let (code, doc, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    assert_eq!(doc["schema"], "torus-wh/1");
    doc
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

/// Composite Simpson on [a, b] with m panels.
fn simpson(g: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / m as f64;
    let mut s = g(a) + g(b);
    for j in 1..m {
        s += g(a + j as f64 * h) * if j % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Sheet-one samples of a boundary function as (theta, re, im) triples.
fn sheet(v: &Value, name: &str) -> Vec<(f64, f64, f64)> {
    let th = v["theta"].as_array().unwrap();
    let re = v[name]["re"].as_array().unwrap();
    let im = v[name]["im"].as_array().unwrap();
    (0..th.len()).map(|j| (f(&th[j]), f(&re[j]), f(&im[j]))).collect()
}

#[test]
fn elliptic_matches_quadrature() {
    let doc = ok(&["elliptic", "--k0", "2"]);
    let k0: f64 = 2.0;
    let k = simpson(|p| 1.0 / (1.0 - p.sin().powi(2) / (k0 * k0)).sqrt(), 0.0, PI / 2.0, 2000);
    let kp = simpson(|p| k0 / (p.cos().powi(2) + k0 * k0 * p.sin().powi(2)).sqrt(), 0.0, PI / 2.0, 2000);
    assert!((f(&doc["invariants"]["K"]) - k).abs() < 1e-10 * k);
    assert!((f(&doc["invariants"]["Kp"]) - kp).abs() < 1e-10 * kp);
    assert!((f(&doc["invariants"]["lattice_periods"][0]["re"]) - 4.0 * k).abs() < 1e-9);
}

#[test]
fn even_symbol_factors_like_the_classical_splitting() {
    let doc = ok(&["factor-scalar", "--k0", "2", "--n", "512", "--expr", "exp(1/(xi^2+1))", "--samples"]);
    assert_eq!(doc["invariants"]["kind"], "Special");
    assert!(f(&doc["diagnostics"]["residual"]) < 1e-8);
    assert_eq!(doc["factors"]["middle_descriptor"], "1");
    // exp(1/(1 + xi^2)) = exp(i/(2(xi + i))) exp(-i/(2(xi - i))); the plus factor
    // must be the first one up to a constant
    let plus = sheet(&doc["factors"]["f_plus"], "sheet1");
    let ratios: Vec<(f64, f64)> = plus
        .iter()
        .filter(|(t, _, _)| t.abs() > 1e-9)
        .map(|&(t, re, im)| {
            let x = -1.0 / (t / 2.0).tan();
            // i/(2(x + i)) = (1 + i x)/(2(1 + x^2))
            let (a, b) = (1.0 / (2.0 * (1.0 + x * x)), x / (2.0 * (1.0 + x * x)));
            let (er, ei) = (a.exp() * b.cos(), a.exp() * b.sin());
            let d = er * er + ei * ei;
            ((re * er + im * ei) / d, (im * er - re * ei) / d)
        })
        .collect();
    let (r0, i0) = ratios[0];
    for (r, i) in ratios {
        assert!((r - r0).abs() < 1e-9 && (i - i0).abs() < 1e-9);
    }
}

#[test]
fn kernel_of_r0_preset() {
    let doc = ok(&["kernel", "--k0", "2", "--alpha", "0", "--delta-from-r0", "--samples"]);
    assert_eq!(doc["factors"]["dimension"], 1);
    assert_eq!(doc["invariants"]["det_index"], 0);
    assert!(f(&doc["diagnostics"]["plus_tail"]) < 1e-8);
    // Phi_+ = c ((xi + i)/(xi + 2i), 0)
    let phi = &doc["factors"]["phi_plus"];
    let first = sheet(phi, "first");
    let second = sheet(phi, "second");
    let c = f(&doc["factors"]["phi_plus_at_infinity"][0]["re"]);
    for (j, &(t, re, im)) in first.iter().enumerate() {
        if t.abs() < 1e-9 {
            continue;
        }
        let x = -1.0 / (t / 2.0).tan();
        // (x + i)/(x + 2i) = (x^2 + 2 - i x)/(x^2 + 4)
        let (er, ei) = ((x * x + 2.0) / (x * x + 4.0), -x / (x * x + 4.0));
        assert!((re - c * er).abs() < 1e-9 && (im - c * ei).abs() < 1e-9, "{x}");
        assert!(second[j].1.abs() < 1e-9 && second[j].2.abs() < 1e-9);
    }
    let preset = ok(&["kernel", "--preset", "R_0"]);
    assert_eq!(preset["factors"]["dimension"], 1);
}

#[test]
fn matrix_presets() {
    let doc = ok(&["factor-matrix", "--preset", "example1", "--t", "-1", "--n", "512"]);
    assert_eq!(doc["factors"]["canonical"], true);
    assert!(f(&doc["diagnostics"]["residual"]) < 1e-7);
    assert!((f(&doc["invariants"]["beta"]["re"]) + 2.0).abs() < 1e-9);
    let doc = ok(&["factor-matrix", "--preset", "example2", "--t", "0.3"]);
    let p = &doc["factors"]["partial_indices"];
    let mut idx = [p[0].as_i64().unwrap(), p[1].as_i64().unwrap()];
    idx.sort();
    assert_eq!(idx, [0, 1]);
    let doc = ok(&["factor-matrix", "--preset", "R_nu", "--nu", "2"]);
    assert_eq!(doc["factors"]["canonical"], true);
}

#[test]
fn block_indices() {
    let doc = ok(&["blocks", "--preset", "alpha_plus", "--n", "256"]);
    assert_eq!((doc["invariants"]["n1"].as_i64(), doc["invariants"]["n2"].as_i64()), (Some(0), Some(-1)));
    let doc = ok(&["blocks", "--preset", "S", "--n", "256"]);
    assert_eq!((doc["invariants"]["n1"].as_i64(), doc["invariants"]["n2"].as_i64()), (Some(-1), Some(0)));
    let doc = ok(&["blocks", "--preset", "r_nu", "--beta", "2.1565156474996434*i", "--n", "256"]);
    let nu = &doc["factors"]["closed_form"]["nu"];
    assert!(f(&nu["re"]).abs() < 1e-9 && f(&nu["im"]).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    // special factorization off the lattice: condition failure
    let (code, _, err) = run(&["factor-scalar", "--expr", "exp(0.3*tau/(1+xi^2))", "--mode", "special", "--n", "256"]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("lattice"));
    let (code, _, err) = run(&["classify", "--expr", "xi +"]);
    assert_eq!(code, 1);
    assert!(err.contains("byte 4"));
    assert_eq!(run(&["elliptic", "--k0", "1"]).0, 1);
    assert_eq!(run(&["blocks", "--preset", "nope"]).0, 1);
    assert_eq!(run(&["factor-scalar", "--expr", "1", "--n", "100"]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    let (code, doc, _) = run(&["verify", "--expr", "exp(0.3*tau/(1+xi^2))", "--n", "256", "--tol-residual", "1e-30"]);
    assert_eq!(code, 2);
    assert_eq!(doc["diagnostics"]["passed"], false);
}

#[test]
fn job_file_flags_override_and_output_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("torus-wh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let job = dir.join("job.json");
    std::fs::write(&job, r#"{"command": "classify", "expr": "exp(0.3*tau/(1+xi^2))", "n": 256}"#).unwrap();
    let job = job.to_str().unwrap();
    let doc = ok(&["--json", job]);
    assert_eq!(doc["config"]["n"], 256);
    assert!((f(&doc["invariants"]["beta"]["re"]) - 0.6).abs() < 1e-9);
    let doc = ok(&["classify", "--json", job, "--n", "128"]);
    assert_eq!(doc["config"]["n"], 128);
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for p in [&a, &b] {
        let (code, _, _) = run(&["--json", job, "--out", p.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::write(dir.join("bad.json"), r#"{"comand": "classify"}"#).unwrap();
    assert_eq!(run(&["--json", dir.join("bad.json").to_str().unwrap()]).0, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
