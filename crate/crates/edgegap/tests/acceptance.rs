//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line with its measured deviation and runtime. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use edgegap::ensembles::{IdentityId, Interval};
use edgegap::suites::{self, SuiteReport};
use edgegap::EvalConfig;
use std::time::Instant;

fn report(criterion: &str, r: &SuiteReport, started: Instant, budget_s: Option<f64>) {
    let elapsed = started.elapsed().as_secs_f64();
    let status = if r.pass() { "PASS" } else { "FAIL" };
    let worst = r.worst().expect("non-empty suite");
    println!(
        "acceptance {criterion}: {status} | {} checks, max deviation {:.3e} (tol {:.1e}, at {}), {elapsed:.1} s",
        r.checks.len(),
        worst.deviation,
        worst.tolerance,
        worst.label,
    );
    for check in &r.checks {
        assert!(
            check.pass(),
            "{criterion}: {} deviated {:.3e} > {:.1e}",
            check.label,
            check.deviation,
            check.tolerance
        );
    }
    if let Some(budget) = budget_s {
        assert!(
            elapsed < budget,
            "{criterion}: runtime {elapsed:.1} s exceeded budget {budget} s"
        );
    }
}

#[test]
fn criterion_1_df1_factorization() {
    let started = Instant::now();
    let r = suites::df1_suite(&EvalConfig::default(), 1e-8).unwrap();
    report("1 (DF1 factorization)", &r, started, Some(30.0));
}

#[test]
fn criterion_2_route_agreement() {
    let started = Instant::now();
    let r = suites::route_agreement_suite(&EvalConfig::default(), 1e-6).unwrap();
    report("2 (route agreement)", &r, started, Some(120.0));
}

#[test]
fn criterion_3_ode_residuals() {
    let started = Instant::now();
    let r = suites::residual_suite(&EvalConfig::default(), 1e-5, 1e-4, 1e-4, 1e-3).unwrap();
    report(
        "3 (Painlevé residuals and boundary ratios)",
        &r,
        started,
        None,
    );
}

#[test]
fn criterion_4_generating_function_identities() {
    let started = Instant::now();
    let r = suites::generating_identity_suite(&EvalConfig::default(), 1e-6).unwrap();
    report("4 (odd/even generating identities)", &r, started, None);
}

#[test]
fn criterion_5_xi_one_reductions() {
    let started = Instant::now();
    let r = suites::xi1_reduction_suite(&EvalConfig::default(), 1e-7).unwrap();
    report("5 (xi = 1 reductions)", &r, started, None);
}

#[test]
fn criterion_6_n_level_consistency() {
    let started = Instant::now();
    let r = suites::n_level_suite(&EvalConfig::default(), 1e-6, 1e-5, &[0, 1]).unwrap();
    report("6 (n-level consistency)", &r, started, None);
}

#[test]
fn criterion_7_monte_carlo_identities() {
    let started = Instant::now();
    let reps = 200_000;
    let mut checks = Vec::new();
    for (id, interval) in [
        (IdentityId::A1, Interval::above(1.0)),
        (IdentityId::A2, Interval::above(1.0)),
        (IdentityId::A1h, Interval::origin_to(2.0)),
        (IdentityId::A2h, Interval::origin_to(2.0)),
    ] {
        let r = suites::mc_identity_suite(id, 4, 1.0, interval, reps, 7).unwrap();
        checks.extend(r.checks);
    }
    let combined = SuiteReport {
        name: "mc-identities".into(),
        checks,
    };
    report(
        "7 (Monte Carlo count identities)",
        &combined,
        started,
        Some(300.0),
    );
}

#[test]
fn criterion_8_hard_to_soft_limit() {
    let started = Instant::now();
    let r = suites::hard_to_soft_suite(0.0, 1.0, &[20.0, 40.0, 80.0], 0.02).unwrap();
    report("8 (hard-to-soft limit)", &r, started, None);
}

#[test]
fn criterion_9_quadrature_self_convergence() {
    let started = Instant::now();
    let r = suites::self_convergence_suite(1e-9).unwrap();
    report("9 (quadrature self-convergence)", &r, started, None);
}
