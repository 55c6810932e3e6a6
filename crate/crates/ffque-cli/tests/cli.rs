use std::path::Path;
use std::process::{Command, Output};

fn ffque(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffque")).args(args).current_dir(dir).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eisenstein_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&ffque(&["eisenstein", "coeff", "--q", "5", "--A", "T", "--s", "2+0i", "--n", "0", "--Q", "0"], dir.path()));
    assert!((v["value_re"].as_f64().unwrap() - 629.0 / 624.0).abs() < 1e-12);
    assert_eq!(v["value_im"].as_f64().unwrap(), 0.0);

    let v = json(&ffque(&["eisenstein", "eval", "--g", "n=0,x=0", "--s", "2", "--A", "T", "--tol", "1e-6"], dir.path()));
    assert!((v["value_re"].as_f64().unwrap() - (1.0 + 1.0 / 30.0)).abs() < 1e-6);
    assert!(v["truncation_bound"].as_f64().unwrap() <= 1e-6);

    let v = json(&ffque(&["eisenstein", "index", "--q", "5", "--A", "T^2+2"], dir.path()));
    assert_eq!(v["m"], 26);
    assert_eq!(v["order"], 25 * 624);
}

#[test]
fn eval_rejects_the_critical_strip() {
    let dir = tempfile::tempdir().unwrap();
    let out = ffque(&["eisenstein", "eval", "--g", "n=0,x=0", "--s", "1", "--A", "T"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain"));
}

#[test]
fn spectrum_writes_graph_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&ffque(&["spectrum", "--q", "5", "--A", "T", "--depth", "4", "--degbound", "8", "--out-dir", "g"], dir.path()));
    assert_eq!(v["q"], 5);
    assert!(v["completeness_flags"].is_object());
    let adj = std::fs::read_to_string(dir.path().join("g/adjacency.txt")).unwrap();
    let first: Vec<&str> = adj.lines().next().unwrap().split_whitespace().collect();
    assert_eq!(first.len(), 3);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("g/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["depth"], 4);
}

#[test]
fn que_sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&ffque(
        &["que", "sweep", "--q", "5", "--t", "1.0", "--deg-min", "1", "--deg-max", "3", "--psi", "0:1", "--csv", "s.csv"],
        dir.path(),
    ));
    assert!((v["target_slope"].as_f64().unwrap() - 0.37280).abs() < 1e-5);
    assert_eq!(v["kappa"], 4.0);
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,A,deg_A,abs_A,m,t,H0,I1,I2,I,predicted_leading,scaled_I,residual"
    );
    assert_eq!(lines.count(), 3);
}

#[test]
fn sweep_rejects_singular_t() {
    let dir = tempfile::tempdir().unwrap();
    let out = ffque(&["que", "sweep", "--t", "0", "--deg-max", "2", "--csv", "x.csv"], dir.path());
    assert!(!out.status.success());
}

#[test]
fn verify_rejects_bad_configs() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("q4.cfg"), "# bad field size\nq = 4\n").unwrap();
    let out = ffque(&["verify", "--config", "q4.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("q must be prime > 3") && err.contains("line 2"), "{err}");

    std::fs::write(dir.path().join("t0.cfg"), "q = 5\nt = 0\n").unwrap();
    let out = ffque(&["verify", "--config", "t0.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`t`"));
}

#[test]
fn verify_exit_status_follows_hard_checks() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.cfg"), "q = 5\nspectrum_depth = 3\n").unwrap();
    let out = ffque(&["verify", "--config", "run.cfg", "--json", "summary.json"], dir.path());
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    let checks = summary["checks"].as_array().unwrap();
    assert_eq!(checks.iter().filter(|c| c["hard"] == true).count(), 10);
    let hard_ok = checks.iter().filter(|c| c["hard"] == true).all(|c| c["passed"] == true);
    assert_eq!(summary["hard_passed"], hard_ok);
    assert_eq!(out.status.code(), Some(if hard_ok { 0 } else { 1 }));
    let verdict = &checks.iter().find(|c| c["id"] == "8").unwrap()["detail"]["verdict"];
    assert!(verdict.is_string());
}

#[test]
fn ramanujan_report_csv() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&ffque(&["ramanujan-report", "--A", "T", "--deg-x", "1", "--deg-q", "1", "--out", "r.csv"], dir.path()));
    // 6 monic X of degree <= 1 times 25 polynomials Q of degree <= 1.
    assert_eq!(v["rows"], 150);
    let csv = std::fs::read_to_string(dir.path().join("r.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "q,A,X,Q,brute_value,closed_value,match_flag");
}
