use std::path::Path;
use std::process::{Command, Output};

use spiralflow::cli::output::parse_csv;

const BASE: [&str; 6] = ["--theta-plus", "pi/4", "--theta-minus", "3pi/4", "--mu", "1.5"];

fn spiralflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spiralflow"))
        .args(args)
        .env_remove("SPIRALFLOW_CONFIG")
        .output()
        .expect("binary runs")
}

fn with<A: AsRef<str>, B: AsRef<str>>(base: &[A], extra: &[B]) -> Vec<String> {
    base.iter().map(|s| s.as_ref().to_string()).chain(extra.iter().map(|s| s.as_ref().to_string())).collect()
}

fn run(args: &[String]) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    spiralflow(&refs)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn params_reports_kappa() {
    let o = run(&with(&["params"], &BASE));
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["kappa"].as_f64().unwrap() + 5.3228).abs() < 1e-4);
    for key in ["theta_plus", "theta_minus", "mu", "a", "d_sq_neg", "phi", "s1_re", "s1_im", "s3_re", "s3_im"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&spiralflow(&["params", "--theta-plus", "0", "--theta-minus", "pi", "--mu", "1"])), 2);
    assert_eq!(code(&spiralflow(&["params", "--theta-plus", "x"])), 64);
    assert_eq!(code(&spiralflow(&["frobnicate"])), 64);
    assert_eq!(code(&spiralflow(&["verify", "--suite", "bogus"])), 64);
    assert_eq!(code(&spiralflow(&["figure", "--which", "bogus"])), 64);
    assert_eq!(code(&spiralflow(&["--help"])), 0);
}

#[test]
fn solve_is_byte_identical_and_config_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# spiral parameters\ntheta_plus = pi/4\ntheta_minus = 3pi/4\nmu = 1.5\nsolver.tol = 1e-10\n").unwrap();
    let out = dir.path().join("sol.json");
    let args = ["solve", "--config", path_str(&cfg), "--out", path_str(&out)];
    let first = spiralflow(&args);
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.contains("beta") && text.contains("theta_tilde_minus"));
    let bytes = std::fs::read(&out).unwrap();
    assert_eq!(code(&spiralflow(&args)), 0);
    assert_eq!(std::fs::read(&out).unwrap(), bytes);

    // a config named by the environment is read, and flags override it
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "theta_plus = 1\ntheta_minus = 2\nmu = 0.5\nsolver.tol = 1e-3\n").unwrap();
    let env_run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_spiralflow")).arg("solve").args(extra).env("SPIRALFLOW_CONFIG", &bad).output().unwrap()
    };
    assert_eq!(code(&env_run(&[])), 64);
    assert_eq!(code(&env_run(&["--tol", "1e-10"])), 0);
}

#[test]
fn evolve_from_file_matches_inline() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("sol.json");
    assert_eq!(code(&run(&with(&["solve", "--out", path_str(&sol)], &BASE))), 0);
    let sample = ["--t-list", "2.6,1.6,1.2,0.8,0.6,0.2", "--x-range", "-10,10", "--n-points", "41"];
    let inline = run(&with(&with(&["evolve"], &BASE), &sample));
    let from_file = run(&with(&["evolve", "--solution", path_str(&sol)], &sample));
    assert_eq!(code(&inline), 0);
    assert_eq!(inline.stdout, from_file.stdout);
    let (header, rows) = parse_csv(std::str::from_utf8(&inline.stdout).unwrap()).unwrap();
    assert_eq!(header, "t,x,re_z,im_z");
    assert_eq!(rows.len(), 7 * 41);
    assert!(rows[6 * 41..].iter().all(|r| r[0] == 0.0));
}

#[test]
fn evolve_backward_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("z.svg");
    let extra = ["--backward", "--t-list", "1,0.1", "--n-points", "21", "--svg", path_str(&svg)];
    let o = run(&with(&with(&["evolve"], &BASE), &extra));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (_, rows) = parse_csv(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert!(rows[..42].iter().all(|r| r[0] < 0.0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 3);
}

#[test]
fn failed_sampling_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curves.csv");
    let extra = ["--t-list", "1e-9", "--out", path_str(&out)];
    let o = run(&with(&with(&["evolve"], &["--theta-plus", "1", "--theta-minus", "1", "--mu", "0"]), &extra));
    assert_eq!(code(&o), 4);
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn figures() {
    let o = spiralflow(&["figure", "--which", "spiral", "--theta-plus", "pi/4", "--theta-minus", "3pi/4", "--mu", "-6", "--n-points", "50"]);
    assert_eq!(code(&o), 0);
    let (_, rows) = parse_csv(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(rows.len(), 100);

    let o = spiralflow(&["figure", "--which", "spiral", "--theta-plus", "0.3", "--theta-minus", "2", "--mu", "0"]);
    let (_, rows) = parse_csv(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    for r in rows {
        // straight rays at the arm angles
        let theta: f64 = if r[0] > 0.0 { 0.3 } else { 2.0 };
        assert!((r[1] * theta.sin() - r[2] * theta.cos()).abs() < 1e-15);
    }

    let o = spiralflow(&["figure", "--which", "painleve", "--alpha-im", "0.5", "--kappa", "4", "--n-points", "281"]);
    assert_eq!(code(&o), 0);
    let (header, rows) = parse_csv(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(header, "x,im_u");
    assert_eq!((rows[0][0], rows[280][0]), (-20.0, 8.0));
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = spiralflow(&["verify", "--suite", "monodromy", "--out", path_str(&report)]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(v["suite_name"], "monodromy");

    // the closed-form tail phase is not attained at μ ≠ 0, so the full
    // battery reports exactly that one failure
    let o = run(&with(&["verify", "--suite", "all"], &BASE));
    assert_eq!(code(&o), 5);
    let table = String::from_utf8(o.stdout).unwrap();
    let fails: Vec<&str> = table.lines().filter(|l| l.ends_with("FAIL")).collect();
    assert_eq!(fails.len(), 1, "{table}");
    assert!(fails[0].starts_with("tail phase vs closed form"));

    let o = spiralflow(&["verify", "--suite", "flow", "--theta-plus", "1", "--theta-minus", "2.5", "--mu", "-2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}
