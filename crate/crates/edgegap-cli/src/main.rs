//! `edgegap`: tabulate edge gap-probability generating functions, verify
//! the determinant/Painlevé/Monte-Carlo identities, trace transcendents
//! and sample finite-N ensembles.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

// `!(x > 0.0)` rejects NaN flag values along with the out-of-range ones.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod opts;
mod output;

use clap::Parser;
use edgegap::edgelaws::{Beta, Edge, GapQuery, Route};
use edgegap::ensembles::{self, Interval};
use edgegap::suites;
use edgegap::transcendents::{trace, Regime};
use edgegap::EvalConfig;
use opts::{
    parse_grid, Cli, Command, CommonOpts, EdgeArg, FormatArg, MethodArg, SampleOpts, TabulateOpts,
    TranscendentOpts, VerifyOpts,
};
use output::{Cell, Table};

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                0
            } else {
                1
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Tabulate(opts) => cmd_tabulate(opts),
        Command::Verify(opts) => cmd_verify(opts),
        Command::Transcendent(opts) => cmd_transcendent(opts),
        Command::Sample(opts) => cmd_sample(opts),
    }
}

fn setup(common: &CommonOpts) -> Result<EvalConfig, String> {
    if let Some(threads) = common.threads {
        if threads == 0 {
            return Err("--threads must be positive".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| format!("thread pool: {e}"))?;
    }
    if !(2..=512).contains(&common.quad_order) {
        return Err(format!(
            "--quad-order {} outside supported range 2..=512",
            common.quad_order
        ));
    }
    if !(common.truncation > 0.0) {
        return Err("--truncation must be positive".into());
    }
    Ok(EvalConfig {
        quad_order: common.quad_order,
        truncation: common.truncation,
    })
}

fn emit(table: &Table, common: &CommonOpts) -> Result<(), String> {
    let write = |mut w: &mut dyn std::io::Write| match common.format {
        FormatArg::Csv => table.write_csv(&mut w),
        FormatArg::Json => table.write_json(&mut w),
    };
    match &common.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            write(&mut file).map_err(|e| format!("write failed: {e}"))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock).map_err(|e| format!("write failed: {e}"))
        }
    }
}

fn beta_from(v: u8) -> Result<Beta, String> {
    Beta::from_value(v).ok_or_else(|| format!("--beta must be 1, 2 or 4, got {v}"))
}

fn edge_from(edge: EdgeArg, a: Option<f64>) -> Result<Edge, String> {
    match edge {
        EdgeArg::Soft => Ok(Edge::Soft),
        EdgeArg::Hard => {
            let a = a.ok_or("--a is required for the hard edge")?;
            if !(a > -1.0) {
                return Err(format!("--a must exceed -1, got {a}"));
            }
            Ok(Edge::Hard { a })
        }
    }
}

fn cmd_tabulate(opts: TabulateOpts) -> Result<bool, String> {
    let cfg = setup(&opts.common)?;
    let beta = beta_from(opts.beta)?;
    let edge = edge_from(opts.edge, opts.a)?;
    let s_grid = parse_grid(&opts.s)?;
    if opts.xi.is_empty() {
        return Err("--xi list must be non-empty".into());
    }
    for &xi in &opts.xi {
        if !(0.0..=2.0).contains(&xi) {
            return Err(format!("xi = {xi} outside [0, 2]"));
        }
    }
    if matches!(edge, Edge::Hard { .. }) && s_grid.iter().any(|&s| s <= 0.0) {
        return Err("hard-edge grid requires s > 0".into());
    }
    let routes: Vec<Route> = match opts.method {
        MethodArg::Fredholm => vec![Route::Fredholm],
        MethodArg::Painleve => vec![Route::Painleve],
        MethodArg::Both => vec![Route::Fredholm, Route::Painleve],
    };

    let mut queries = Vec::new();
    for &s in &s_grid {
        for &xi in &opts.xi {
            for &route in &routes {
                queries.push(GapQuery {
                    edge,
                    beta,
                    s,
                    xi,
                    route,
                });
            }
        }
    }
    let values = edgegap::parallel::map_indexed(queries.len(), |i| queries[i].evaluate(&cfg));

    let mut table = Table::new(vec![
        "edge",
        "beta",
        "a",
        "s",
        "xi",
        "method",
        "value",
        "quad_order",
        "truncation",
    ]);
    for (q, v) in queries.iter().zip(values) {
        let v = v.map_err(|e| format!("evaluation failed at s={}, xi={}: {e}", q.s, q.xi))?;
        table.push(vec![
            Cell::Text(edge_name(q.edge).into()),
            Cell::Int(beta.value() as i64),
            match q.edge {
                Edge::Soft => Cell::Text(String::new()),
                Edge::Hard { a } => Cell::Float(a),
            },
            Cell::Float(q.s),
            Cell::Float(q.xi),
            Cell::Text(route_name(q.route).into()),
            Cell::Float(v.value),
            Cell::Int(v.quad_order as i64),
            Cell::Float(v.truncation),
        ]);
    }
    emit(&table, &opts.common)?;
    Ok(true)
}

fn edge_name(edge: Edge) -> &'static str {
    match edge {
        Edge::Soft => "soft",
        Edge::Hard { .. } => "hard",
    }
}

fn route_name(route: Route) -> &'static str {
    match route {
        Route::Fredholm => "fredholm",
        Route::Painleve => "painleve",
    }
}

fn cmd_verify(opts: VerifyOpts) -> Result<bool, String> {
    let cfg = setup(&opts.common)?;
    let which = opts.identity.to_lowercase();
    let mut reports = Vec::new();
    let run_suite = |name: &str, reports: &mut Vec<suites::SuiteReport>| -> Result<(), String> {
        let to_msg = |e: suites::SuiteError| format!("suite {name}: {e}");
        match name {
            "df1" => reports.push(suites::df1_suite(&cfg, 1e-8).map_err(to_msg)?),
            "routes" => reports.push(suites::route_agreement_suite(&cfg, 1e-6).map_err(to_msg)?),
            "residuals" => {
                reports.push(suites::residual_suite(&cfg, 1e-5, 1e-4, 1e-4, 1e-3).map_err(to_msg)?)
            }
            "identities" => {
                reports.push(suites::generating_identity_suite(&cfg, 1e-6).map_err(to_msg)?)
            }
            "xi1" => reports.push(suites::xi1_reduction_suite(&cfg, 1e-7).map_err(to_msg)?),
            "nlevel" | "bd" => {
                reports.push(suites::n_level_suite(&cfg, 1e-6, 1e-5, &opts.levels).map_err(to_msg)?)
            }
            "hardsoft" => reports.push(
                suites::hard_to_soft_suite(0.0, 1.0, &[20.0, 40.0, 80.0], 0.02).map_err(to_msg)?,
            ),
            "selfconv" => reports.push(suites::self_convergence_suite(1e-9).map_err(to_msg)?),
            "a1" | "a2" | "a1h" | "a2h" => {
                let id = match name {
                    "a1" => ensembles::IdentityId::A1,
                    "a2" => ensembles::IdentityId::A2,
                    "a1h" => ensembles::IdentityId::A1h,
                    _ => ensembles::IdentityId::A2h,
                };
                let hard = matches!(id, ensembles::IdentityId::A1h | ensembles::IdentityId::A2h);
                let interval = if hard {
                    Interval::origin_to(opts.s.unwrap_or(2.0))
                } else {
                    Interval::above(opts.s.unwrap_or(1.0))
                };
                reports.push(
                    suites::mc_identity_suite(
                        id, opts.n_dim, opts.a, interval, opts.reps, opts.seed,
                    )
                    .map_err(to_msg)?,
                );
            }
            other => return Err(format!("unknown identity `{other}`")),
        }
        Ok(())
    };

    if which == "all" {
        for name in [
            "df1",
            "routes",
            "residuals",
            "identities",
            "xi1",
            "nlevel",
            "hardsoft",
            "selfconv",
            "a1",
            "a2",
            "a1h",
            "a2h",
        ] {
            run_suite(name, &mut reports)?;
        }
    } else {
        run_suite(&which, &mut reports)?;
    }

    let all_pass = reports.iter().all(suites::SuiteReport::pass);
    match opts.common.format {
        FormatArg::Csv => {
            // Flat per-check rows; the per-suite roll-up goes to stderr.
            let mut table = Table::new(vec!["suite", "check", "deviation", "tolerance", "pass"]);
            for report in &reports {
                for check in &report.checks {
                    table.push(vec![
                        Cell::Text(report.name.clone()),
                        Cell::Text(check.label.clone()),
                        Cell::Float(check.deviation),
                        Cell::Float(check.tolerance),
                        Cell::Bool(check.pass()),
                    ]);
                }
            }
            emit(&table, &opts.common)?;
        }
        FormatArg::Json => {
            let text = verify_report_json(&reports);
            write_text(&text, &opts.common)?;
        }
    }
    for report in &reports {
        if let Some(worst) = report.worst() {
            eprintln!(
                "{}: {} checks, max deviation {:.3e} ({}), {}",
                report.name,
                report.checks.len(),
                worst.deviation,
                worst.label,
                if report.pass() { "pass" } else { "FAIL" }
            );
        }
    }
    Ok(all_pass)
}

/// One object per identity suite: its grid of checks, the max deviation
/// and the overall verdict.
fn verify_report_json(reports: &[suites::SuiteReport]) -> String {
    let mut out = String::from("[\n");
    for (i, report) in reports.iter().enumerate() {
        out.push_str(&format!(
            "  {{\"identity\":\"{}\",\"max_deviation\":{},\"pass\":{},\"checks\":[\n",
            report.name,
            output::format_float(report.max_deviation()),
            report.pass()
        ));
        for (j, check) in report.checks.iter().enumerate() {
            let sep = if j + 1 == report.checks.len() {
                ""
            } else {
                ","
            };
            out.push_str(&format!(
                "    {{\"check\":\"{}\",\"deviation\":{},\"tolerance\":{},\"pass\":{}}}{sep}\n",
                check.label.replace('"', "\\\""),
                output::format_float(check.deviation),
                output::format_float(check.tolerance),
                check.pass()
            ));
        }
        let sep = if i + 1 == reports.len() { "" } else { "," };
        out.push_str(&format!("  ]}}{sep}\n"));
    }
    out.push_str("]\n");
    out
}

fn write_text(text: &str, common: &CommonOpts) -> Result<(), String> {
    match &common.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| format!("write failed: {e}"))
        }
    }
}

fn cmd_transcendent(opts: TranscendentOpts) -> Result<bool, String> {
    let cfg = setup(&opts.common)?;
    let grid = parse_grid(&opts.s)?;
    let regime = match edge_from(opts.edge, opts.a)? {
        Edge::Soft => Regime::Soft,
        Edge::Hard { a } => Regime::Hard { a },
    };
    if matches!(regime, Regime::Hard { .. }) && grid.iter().any(|&t| t <= 0.0) {
        return Err("hard-edge grid requires t > 0".into());
    }
    let mut table = Table::new(vec!["edge", "a", "xi", "t", "q", "residual", "mu"]);
    for &xi in &opts.xi {
        let tr = trace(regime, xi, &grid, &cfg).map_err(|e| format!("trace failed: {e}"))?;
        for i in 0..tr.grid.len() {
            table.push(vec![
                Cell::Text(
                    match regime {
                        Regime::Soft => "soft",
                        Regime::Hard { .. } => "hard",
                    }
                    .into(),
                ),
                match regime {
                    Regime::Soft => Cell::Text(String::new()),
                    Regime::Hard { a } => Cell::Float(a),
                },
                Cell::Float(xi),
                Cell::Float(tr.grid[i]),
                Cell::Float(tr.values[i]),
                Cell::Float(tr.residuals[i]),
                Cell::Float(tr.mu[i]),
            ]);
        }
    }
    emit(&table, &opts.common)?;
    Ok(true)
}

fn cmd_sample(opts: SampleOpts) -> Result<bool, String> {
    setup(&opts.common)?;
    let beta = beta_from(opts.beta)?;
    let (spec, interval) = match opts.edge {
        EdgeArg::Soft => (
            ensembles::EnsembleSpec::gaussian(beta, opts.n_dim).map_err(|e| e.to_string())?,
            Interval::above(opts.s),
        ),
        EdgeArg::Hard => {
            let a = opts.a.ok_or("--a is required for Laguerre sampling")?;
            if !(opts.s > 0.0) {
                return Err("hard-edge interval requires s > 0".into());
            }
            (
                ensembles::EnsembleSpec::laguerre(beta, opts.n_dim, a)
                    .map_err(|e| e.to_string())?,
                Interval::origin_to(opts.s),
            )
        }
    };
    if opts.reps == 0 {
        return Err("--reps must be positive".into());
    }
    let stats = ensembles::sample_gap_counts(&spec, interval, opts.reps, opts.seed);
    let mut table = Table::new(vec!["n", "count", "prob", "std_err"]);
    for n in 0..=stats.max_count() {
        table.push(vec![
            Cell::Int(n as i64),
            Cell::Int(stats.counts[n] as i64),
            Cell::Float(stats.prob(n)),
            Cell::Float(stats.std_err(n)),
        ]);
    }
    emit(&table, &opts.common)?;
    Ok(true)
}
