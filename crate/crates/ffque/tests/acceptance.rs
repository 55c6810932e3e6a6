//! Acceptance battery at q = 5. Each test prints one `criterion N: PASS|FAIL`
//! line and asserts the outcome; parameters and tolerances are pinned here.

use ffque::arith::{ramanujan_discrepancy, write_discrepancy_csv};
use ffque::eisenstein::CoeffSource;
use ffque::ff::Poly;
use ffque::que::suite::{
    check_adjacency, check_eisenstein_coefficients, check_formal_identities, check_index, check_orthogonality,
    check_que_slope, check_ramanujan_identity, check_ramanujan_sums, check_sigma_l_series, check_whittaker,
    CheckResult, ADJACENCY_REL_TOL, COEFF_REL_TOL, NSUM_TOL, SERIES_ABS_TOL, SLOPE_REL_TOL,
};
use ffque::que::{que_sweep, TestWeight};
use std::io::Write;
use std::time::{Duration, Instant};

const Q: u32 = 5;

fn report(n: u32, c: &CheckResult, elapsed: Duration) {
    let tag = if c.passed { "PASS" } else { "FAIL" };
    // Straight to the handle so the line survives libtest output capture.
    let line = format!("criterion {n}: {tag} [{:.1}s] {}\n", elapsed.as_secs_f64(), c.summary);
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
}

fn run(n: u32, f: impl FnOnce() -> CheckResult) {
    let start = Instant::now();
    let c = f();
    report(n, &c, start.elapsed());
    assert!(c.passed, "criterion {n} failed: {}", c.summary);
}

#[test]
fn criterion_01_ramanujan_sum_oracle() {
    run(1, || {
        let c = check_ramanujan_sums(Q, 3).unwrap();
        let levels = [Poly::parse(Q, "T").unwrap(), Poly::parse(Q, "T+1").unwrap()];
        let rows = ramanujan_discrepancy(Q, &levels, 3, 3).unwrap();
        let path = std::env::temp_dir().join("ffque_ramanujan_report.csv");
        write_discrepancy_csv(&rows, std::fs::File::create(&path).unwrap()).unwrap();
        assert!(std::fs::metadata(&path).unwrap().len() > 0);
        c
    });
}

#[test]
fn criterion_02_formal_identities() {
    run(2, || check_formal_identities(Q, 6).unwrap());
}

#[test]
fn criterion_03_divisor_sum_series() {
    assert_eq!(SERIES_ABS_TOL, 1e-6);
    run(3, || check_ramanujan_identity(Q, 15).unwrap());
}

#[test]
fn criterion_04_index_and_group_order() {
    run(4, || check_index(Q).unwrap());
}

#[test]
fn criterion_05_eisenstein_coefficients() {
    assert_eq!(COEFF_REL_TOL, 1e-5);
    run(5, || check_eisenstein_coefficients(Q, CoeffSource::Closed).unwrap());
}

#[test]
fn criterion_06_adjacency_eigen_relation() {
    assert_eq!(ADJACENCY_REL_TOL, 1e-5);
    run(6, || check_adjacency(Q).unwrap());
}

#[test]
fn criterion_07_whittaker_and_n_sums() {
    assert_eq!(NSUM_TOL, 1e-8);
    run(7, || check_whittaker(Q).unwrap());
}

#[test]
fn criterion_08_sigma_l_verdict() {
    run(8, || {
        let c = check_sigma_l_series(Q, 8, 5, 20240601).unwrap();
        assert!(!c.detail["verdict"].is_null());
        c
    });
}

#[test]
fn criterion_09_level_aspect_slope() {
    assert_eq!(SLOPE_REL_TOL, 0.2);
    let start = Instant::now();
    run(9, || {
        let run = que_sweep(Q, 1.0, 1..=6, &TestWeight::delta(0), CoeffSource::Closed).unwrap();
        assert_eq!(run.records.len(), 6);
        check_que_slope(&run)
    });
    assert!(start.elapsed() <= Duration::from_secs(600));
}

#[test]
fn criterion_10_character_orthonormality() {
    run(10, || check_orthogonality(Q, 2, 4).unwrap());
}
