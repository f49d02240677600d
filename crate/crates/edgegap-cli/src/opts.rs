//! Command-line surface: subcommands, shared flags, grid parsing.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "edgegap",
    about = "Soft/hard edge gap-probability generating functions: \
             Fredholm determinants, Painlevé transcendents, beta-ensemble Monte Carlo",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate generating-function values over an (s, xi) grid.
    Tabulate(TabulateOpts),
    /// Run identity/verification suites and report deviations.
    Verify(VerifyOpts),
    /// Trace a Painlevé transcendent with residual diagnostics.
    Transcendent(TranscendentOpts),
    /// Draw ensemble samples and report empirical gap counts.
    Sample(SampleOpts),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum EdgeArg {
    Soft,
    Hard,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum MethodArg {
    Fredholm,
    Painleve,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum FormatArg {
    Csv,
    Json,
}

/// Flags shared by every subcommand that evaluates the laws.
#[derive(Args, Debug, Clone)]
pub struct CommonOpts {
    /// Quadrature order m for the Nyström discretization.
    #[arg(long = "quad-order", default_value_t = 80)]
    pub quad_order: usize,
    /// Base truncation length L for semi-infinite domains.
    #[arg(long, default_value_t = 25.0)]
    pub truncation: f64,
    /// Worker threads for grid fan-out (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct TabulateOpts {
    /// Edge regime.
    #[arg(long, value_enum)]
    pub edge: EdgeArg,
    /// Symmetry class beta (1, 2 or 4).
    #[arg(long)]
    pub beta: u8,
    /// Underlying hard-edge Bessel parameter a (the beta = 2 index; the
    /// beta = 1/4 laws carry (a-1)/2 and a+1).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Counting parameters: comma-separated list in [0, 2].
    #[arg(long, value_delimiter = ',', required = true)]
    pub xi: Vec<f64>,
    /// Interval endpoint grid `lo:hi:step` (or a single value).
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    /// Evaluation route.
    #[arg(long, value_enum, default_value_t = MethodArg::Fredholm)]
    pub method: MethodArg,
    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Args, Debug)]
pub struct VerifyOpts {
    /// Which identity suite: df1 | routes | residuals | identities | xi1 |
    /// nlevel | bd | hardsoft | selfconv | a1 | a2 | a1h | a2h | all.
    #[arg(long)]
    pub identity: String,
    /// Matrix dimension N for the Monte Carlo identities.
    #[arg(long = "N", default_value_t = 4)]
    pub n_dim: usize,
    /// Underlying Laguerre parameter a for the hard-edge Monte Carlo
    /// identities.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a: f64,
    /// Interval endpoint for the Monte Carlo identities
    /// ((s, inf) Gaussian, (0, s) Laguerre).
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<f64>,
    /// Monte Carlo replicates per stream.
    #[arg(long, default_value_t = 200_000)]
    pub reps: u64,
    /// Seed for the Monte Carlo identities.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Levels to check in the bd suite (comma separated).
    #[arg(long = "n", value_delimiter = ',', default_values_t = vec![0usize, 1])]
    pub levels: Vec<usize>,
    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Args, Debug)]
pub struct TranscendentOpts {
    /// Edge regime.
    #[arg(long, value_enum)]
    pub edge: EdgeArg,
    /// Bessel parameter a (hard edge).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Counting parameters: comma-separated list in [0, 2].
    #[arg(long, value_delimiter = ',', required = true)]
    pub xi: Vec<f64>,
    /// Grid `lo:hi:step`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Args, Debug)]
pub struct SampleOpts {
    /// Ensemble family via its edge: soft -> Gaussian, hard -> Laguerre.
    #[arg(long, value_enum)]
    pub edge: EdgeArg,
    /// Symmetry class beta (1, 2 or 4).
    #[arg(long)]
    pub beta: u8,
    /// Laguerre weight exponent (hard edge).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Matrix dimension N.
    #[arg(long = "N", default_value_t = 4)]
    pub n_dim: usize,
    /// Replicates.
    #[arg(long, default_value_t = 10_000)]
    pub reps: u64,
    /// Seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Counting interval endpoint: (s, inf) Gaussian, (0, s) Laguerre.
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    #[command(flatten)]
    pub common: CommonOpts,
}

/// Parse `lo:hi:step` (inclusive of endpoints within half a step) or a
/// single value.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.len() {
        1 => {
            let v: f64 = parts[0]
                .parse()
                .map_err(|_| format!("invalid grid value `{text}`"))?;
            Ok(vec![v])
        }
        3 => {
            let lo: f64 = parts[0]
                .parse()
                .map_err(|_| format!("invalid grid start in `{text}`"))?;
            let hi: f64 = parts[1]
                .parse()
                .map_err(|_| format!("invalid grid end in `{text}`"))?;
            let step: f64 = parts[2]
                .parse()
                .map_err(|_| format!("invalid grid step in `{text}`"))?;
            if !(step > 0.0) || hi < lo {
                return Err(format!("degenerate grid `{text}`"));
            }
            let mut out = Vec::new();
            let mut k = 0usize;
            // Relative slack on top of the half-step rule so that grids
            // like 0:1:0.4 keep their endpoint despite rounding.
            let cutoff = hi + 0.5 * step + 1e-9 * (step + hi.abs());
            loop {
                let v = lo + k as f64 * step;
                if v > cutoff || k > 10_000_000 {
                    break;
                }
                out.push(v.min(hi));
                k += 1;
            }
            Ok(out)
        }
        _ => Err(format!(
            "grid must be `value` or `lo:hi:step`, got `{text}`"
        )),
    }
}
