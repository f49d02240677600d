//! Monte Carlo validation of the sampling conventions: N = 1 weight
//! audits, the superposition/decimation constructions against direct
//! beta = 2/4 sampling, and convergence of scaled finite-N counts to the
//! soft-edge law.

use edgegap::edgelaws::{e2_soft, Beta, Route};
use edgegap::ensembles::{
    decimation_gap_counts, sample_gap_counts, sample_stream, stats, superposition_gap_counts,
    z_scores, EnsembleSpec, Interval,
};
use edgegap::EvalConfig;

/// KS audit of the N = 1 marginals against their closed-form laws at
/// alpha ~ 0.01 (threshold 1.63/sqrt(R)).
#[test]
fn weight_convention_audit_n1() {
    let reps = 100_000usize;
    let threshold = 1.63 / (reps as f64).sqrt();

    type Case = (EnsembleSpec, Box<dyn Fn(f64) -> f64>, &'static str);
    let cases: Vec<Case> = vec![
        (
            EnsembleSpec::gaussian(Beta::One, 1).unwrap(),
            Box::new(|x| stats::normal_cdf(x, 0.0, 1.0)),
            "OE1(e^{-x^2/2}) = N(0,1)",
        ),
        (
            EnsembleSpec::gaussian(Beta::Two, 1).unwrap(),
            Box::new(|x| stats::normal_cdf(x, 0.0, 0.5f64.sqrt())),
            "UE1(e^{-x^2}) = N(0,1/2)",
        ),
        (
            EnsembleSpec::gaussian(Beta::Four, 1).unwrap(),
            Box::new(|x| stats::normal_cdf(x, 0.0, 0.5f64.sqrt())),
            "SE1(e^{-x^2}) = N(0,1/2)",
        ),
        (
            EnsembleSpec::laguerre(Beta::One, 1, 0.5).unwrap(),
            Box::new(|x| stats::gamma_cdf(x, 1.5, 2.0)),
            "LOE1(x^{1/2}e^{-x/2}) = Gamma(3/2, 2)",
        ),
        (
            EnsembleSpec::laguerre(Beta::Two, 1, 1.0).unwrap(),
            Box::new(|x| stats::gamma_cdf(x, 2.0, 1.0)),
            "LUE1(x e^{-x}) = Gamma(2, 1)",
        ),
        (
            EnsembleSpec::laguerre(Beta::Four, 1, 2.5).unwrap(),
            Box::new(|x| stats::gamma_cdf(x, 3.5, 1.0)),
            "LSE1(x^{5/2}e^{-x}) = Gamma(7/2, 1)",
        ),
    ];

    for (i, (spec, cdf, name)) in cases.iter().enumerate() {
        let mut draws: Vec<f64> = (0..reps)
            .map(|r| sample_stream(spec, 1000 + i as u64, r as u64).eigenvalues[0])
            .collect();
        draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let d = stats::ks_statistic(&draws, cdf);
        assert!(d < threshold, "{name}: KS = {d:.5} >= {threshold:.5}");
    }
}

/// Superposition: even(OE_4 u OE_5) gap counts match direct UE_4 counts,
/// Gaussian on (1, inf) and Laguerre (underlying a = 1) on (0, 2).
#[test]
fn superposition_matches_direct_beta2() {
    let reps = 100_000;

    let sup = superposition_gap_counts(
        &EnsembleSpec::gaussian(Beta::One, 4).unwrap(),
        &EnsembleSpec::gaussian(Beta::One, 5).unwrap(),
        Interval::above(1.0),
        reps,
        11,
    )
    .unwrap();
    let direct = sample_gap_counts(
        &EnsembleSpec::gaussian(Beta::Two, 4).unwrap(),
        Interval::above(1.0),
        reps,
        12,
    );
    for (n, z) in z_scores(&sup, &direct).into_iter().enumerate() {
        assert!(z.abs() < 4.0, "gaussian superposition n = {n}: z = {z:.2}");
    }

    let c = 0.0; // OE exponent (a-1)/2 with a = 1
    let suph = superposition_gap_counts(
        &EnsembleSpec::laguerre(Beta::One, 4, c).unwrap(),
        &EnsembleSpec::laguerre(Beta::One, 5, c).unwrap(),
        Interval::origin_to(2.0),
        reps,
        13,
    )
    .unwrap();
    let directh = sample_gap_counts(
        &EnsembleSpec::laguerre(Beta::Two, 4, 1.0).unwrap(),
        Interval::origin_to(2.0),
        reps,
        14,
    );
    for (n, z) in z_scores(&suph, &directh).into_iter().enumerate() {
        assert!(z.abs() < 4.0, "laguerre superposition n = {n}: z = {z:.2}");
    }
}

/// Decimation: even(OE_9) matches SE_4 on both families.
#[test]
fn decimation_matches_direct_beta4() {
    let reps = 100_000;

    let dec = decimation_gap_counts(
        &EnsembleSpec::gaussian(Beta::One, 9).unwrap(),
        Interval::above(1.0),
        reps,
        21,
    )
    .unwrap();
    let direct = sample_gap_counts(
        &EnsembleSpec::gaussian(Beta::Four, 4).unwrap(),
        Interval::above(1.0),
        reps,
        22,
    );
    for (n, z) in z_scores(&dec, &direct).into_iter().enumerate() {
        assert!(z.abs() < 4.0, "gaussian decimation n = {n}: z = {z:.2}");
    }

    // Hard edge with underlying a = 1: OE exponent 0, SE exponent a + 1.
    let dech = decimation_gap_counts(
        &EnsembleSpec::laguerre(Beta::One, 9, 0.0).unwrap(),
        Interval::origin_to(2.0),
        reps,
        23,
    )
    .unwrap();
    let directh = sample_gap_counts(
        &EnsembleSpec::laguerre(Beta::Four, 4, 2.0).unwrap(),
        Interval::origin_to(2.0),
        reps,
        24,
    );
    for (n, z) in z_scores(&dech, &directh).into_iter().enumerate() {
        assert!(z.abs() < 4.0, "laguerre decimation n = {n}: z = {z:.2}");
    }
}

/// Scaled-edge convergence: empirical E(0) of GUE_200 above the scaled
/// edge point is within 3 sigma + 0.02 finite-N allowance of the
/// soft-edge law at s = 0.
#[test]
fn scaled_edge_counts_approach_soft_law() {
    let n = 200usize;
    let reps = 20_000u64;
    let s = 0.0;
    let nf = n as f64;
    let edge = (2.0 * nf).sqrt() + s / (2f64.sqrt() * nf.powf(1.0 / 6.0));
    let spec = EnsembleSpec::gaussian(Beta::Two, n).unwrap();
    let stats = sample_gap_counts(&spec, Interval::above(edge), reps, 31);
    let limit = e2_soft(s, 1.0, Route::Fredholm, &EvalConfig::default())
        .unwrap()
        .value;
    let gap = (stats.prob(0) - limit).abs();
    let allowance = 3.0 * stats.std_err(0) + 0.02;
    assert!(
        gap < allowance,
        "E(0) = {} vs soft limit {limit}: gap {gap:.4} >= {allowance:.4}",
        stats.prob(0)
    );
}
