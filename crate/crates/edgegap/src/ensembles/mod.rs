//! Finite-N Monte Carlo sampling of the Gaussian and Laguerre
//! beta = 1, 2, 4 ensembles, the superposition/decimation constructions,
//! and empirical verification of the gap-count identities.
//!
//! Sampling uses the tridiagonal (Gaussian) and bidiagonal (Laguerre)
//! beta-ensemble models, so a draw costs O(N^2) instead of O(N^3). The
//! raw models carry weights `exp(-beta x^2 / 2)` and
//! `x^c exp(-beta x / 2)`; samples are rescaled so the weights match the
//! conventions of the edge identities exactly (beta = 4: x -> sqrt(2) x
//! Gaussian, x -> 2x Laguerre; identity otherwise). The rescaling table
//! is pinned by the N = 1 closed-form audits in the test suite.
//!
//! Orderings: Gaussian samples are stored descending (superposition and
//! decimation act on descending labels), hard-edge Laguerre samples
//! ascending.
//!
//! Determinism: a sample is a pure function of (spec, seed, stream);
//! replicate r of a run uses stream r, and each ensemble inside an
//! identity check derives its own seed by a fixed mix, so results are
//! byte-identical however the replicate loop is scheduled.

pub mod stats;

use crate::edgelaws::Beta;
use crate::linalg::symtri_eigenvalues;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnsembleError {
    #[error("invalid ensemble specification: {0}")]
    InvalidSpec(&'static str),
    #[error("superposition needs beta = 1 samples of sizes N and N + 1")]
    SuperpositionMismatch,
    #[error("decimation needs a beta = 1 sample of odd size")]
    DecimationMismatch,
    #[error("identity check needs n <= {0}")]
    LevelOutOfRange(usize),
}

/// Weight family. The Laguerre exponent is the power of x in the weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Gaussian,
    Laguerre { exponent: f64 },
}

/// An ensemble: family, symmetry class, matrix dimension. The weight
/// conventions per class are `OE(e^(-x^2/2))`, `UE(e^(-x^2))`,
/// `SE(e^(-x^2))` for Gaussian and `OE(x^c e^(-x/2))`, `UE(x^c e^(-x))`,
/// `SE(x^c e^(-x))` for Laguerre with `c` the stored exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub family: Family,
    pub beta: Beta,
    pub n: usize,
}

impl EnsembleSpec {
    pub fn gaussian(beta: Beta, n: usize) -> Result<Self, EnsembleError> {
        if n == 0 {
            return Err(EnsembleError::InvalidSpec("dimension must be positive"));
        }
        Ok(Self {
            family: Family::Gaussian,
            beta,
            n,
        })
    }

    pub fn laguerre(beta: Beta, n: usize, exponent: f64) -> Result<Self, EnsembleError> {
        if n == 0 {
            return Err(EnsembleError::InvalidSpec("dimension must be positive"));
        }
        if !(exponent > -1.0) {
            return Err(EnsembleError::InvalidSpec(
                "Laguerre weight exponent must exceed -1",
            ));
        }
        Ok(Self {
            family: Family::Laguerre { exponent },
            beta,
            n,
        })
    }

    /// Eigenvalues of Gaussian samples are labelled descending, hard-edge
    /// Laguerre samples ascending.
    pub fn descending(&self) -> bool {
        matches!(self.family, Family::Gaussian)
    }

    fn beta_value(&self) -> f64 {
        self.beta.value() as f64
    }

    /// Affine rescaling from the raw tridiagonal/bidiagonal weight to the
    /// identity conventions.
    fn rescale(&self) -> f64 {
        match (self.family, self.beta) {
            (Family::Gaussian, Beta::Four) => std::f64::consts::SQRT_2,
            (Family::Laguerre { .. }, Beta::Four) => 2.0,
            _ => 1.0,
        }
    }
}

/// Sorted eigenvalue draw with its seed lineage.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSample {
    pub eigenvalues: Vec<f64>,
    pub spec: EnsembleSpec,
    pub seed: u64,
    pub stream: u64,
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Fixed mix for deriving per-ensemble seeds inside identity checks.
fn mixed_seed(seed: u64, tag: u64) -> u64 {
    seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn chi(rng: &mut ChaCha8Rng, dof: f64) -> f64 {
    debug_assert!(dof > 0.0);
    let g = Gamma::new(0.5 * dof, 2.0).expect("valid chi dof");
    g.sample(rng).sqrt()
}

/// One eigenvalue draw: replicate `stream` of the stream family seeded by
/// `seed`.
pub fn sample_stream(spec: &EnsembleSpec, seed: u64, stream: u64) -> EnsembleSample {
    let mut rng = rng_for(seed, stream);
    let n = spec.n;
    let beta = spec.beta_value();
    let mut eig = match spec.family {
        Family::Gaussian => {
            let mut diag = Vec::with_capacity(n);
            for _ in 0..n {
                let g: f64 = StandardNormal.sample(&mut rng);
                diag.push(g / beta.sqrt());
            }
            let mut off = Vec::with_capacity(n.saturating_sub(1));
            for i in 0..n.saturating_sub(1) {
                let dof = beta * (n - 1 - i) as f64;
                off.push(chi(&mut rng, dof) / (2.0 * beta).sqrt());
            }
            symtri_eigenvalues(&diag, &off)
        }
        Family::Laguerre { exponent } => {
            let mut a = Vec::with_capacity(n);
            for i in 0..n {
                let dof = 2.0 * exponent + 2.0 + beta * (n - 1 - i) as f64;
                a.push(chi(&mut rng, dof));
            }
            let mut b = Vec::with_capacity(n.saturating_sub(1));
            for i in 0..n.saturating_sub(1) {
                let dof = beta * (n - 1 - i) as f64;
                b.push(chi(&mut rng, dof));
            }
            let mut diag = Vec::with_capacity(n);
            let mut off = Vec::with_capacity(n.saturating_sub(1));
            for i in 0..n {
                let prev = if i == 0 { 0.0 } else { b[i - 1] };
                diag.push((a[i] * a[i] + prev * prev) / beta);
                if i + 1 < n {
                    off.push(a[i] * b[i] / beta);
                }
            }
            symtri_eigenvalues(&diag, &off)
        }
    };
    let scale = spec.rescale();
    for v in eig.iter_mut() {
        *v *= scale;
    }
    if spec.descending() {
        eig.reverse();
    }
    EnsembleSample {
        eigenvalues: eig,
        spec: *spec,
        seed,
        stream,
    }
}

/// Replicate 0 of the stream family.
pub fn sample(spec: &EnsembleSpec, seed: u64) -> EnsembleSample {
    sample_stream(spec, seed, 0)
}

fn weights_match(a: &EnsembleSpec, b: &EnsembleSpec) -> bool {
    match (a.family, b.family) {
        (Family::Gaussian, Family::Gaussian) => true,
        (Family::Laguerre { exponent: x }, Family::Laguerre { exponent: y }) => x == y,
        _ => false,
    }
}

/// Merge two beta = 1 samples of sizes N and N + 1 and keep the even
/// labelled eigenvalues under the family ordering; distributed as the
/// beta = 2 ensemble of size N.
pub fn superpose_even(
    s1: &EnsembleSample,
    s2: &EnsembleSample,
) -> Result<EnsembleSample, EnsembleError> {
    if s1.spec.beta != Beta::One
        || s2.spec.beta != Beta::One
        || !weights_match(&s1.spec, &s2.spec)
        || s2.spec.n != s1.spec.n + 1
    {
        return Err(EnsembleError::SuperpositionMismatch);
    }
    let mut merged: Vec<f64> = s1
        .eigenvalues
        .iter()
        .chain(s2.eigenvalues.iter())
        .copied()
        .collect();
    sort_convention(&mut merged, s1.spec.descending());
    let target = EnsembleSpec {
        family: match s1.spec.family {
            Family::Gaussian => Family::Gaussian,
            Family::Laguerre { exponent } => Family::Laguerre {
                exponent: 2.0 * exponent + 1.0,
            },
        },
        beta: Beta::Two,
        n: s1.spec.n,
    };
    Ok(EnsembleSample {
        eigenvalues: even_labelled(&merged),
        spec: target,
        seed: s1.seed,
        stream: s1.stream,
    })
}

/// Keep the even labelled eigenvalues of a beta = 1 sample of odd size
/// 2N + 1; distributed as the beta = 4 ensemble of size N.
pub fn decimate_even(s: &EnsembleSample) -> Result<EnsembleSample, EnsembleError> {
    if s.spec.beta != Beta::One || s.spec.n.is_multiple_of(2) {
        return Err(EnsembleError::DecimationMismatch);
    }
    let target = EnsembleSpec {
        family: match s.spec.family {
            Family::Gaussian => Family::Gaussian,
            Family::Laguerre { exponent } => Family::Laguerre {
                exponent: 2.0 * exponent + 2.0,
            },
        },
        beta: Beta::Four,
        n: s.spec.n / 2,
    };
    Ok(EnsembleSample {
        eigenvalues: even_labelled(&s.eigenvalues),
        spec: target,
        seed: s.seed,
        stream: s.stream,
    })
}

fn sort_convention(v: &mut [f64], descending: bool) {
    if descending {
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    } else {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    }
}

/// Labels are 1-based: x_2, x_4, ... are indices 1, 3, ... here.
fn even_labelled(ordered: &[f64]) -> Vec<f64> {
    ordered.iter().skip(1).step_by(2).copied().collect()
}

/// Open interval for gap counting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn above(s: f64) -> Self {
        Self {
            lo: s,
            hi: f64::INFINITY,
        }
    }

    pub fn origin_to(s: f64) -> Self {
        Self { lo: 0.0, hi: s }
    }

    pub fn count(&self, xs: &[f64]) -> usize {
        xs.iter().filter(|&&x| x > self.lo && x < self.hi).count()
    }
}

/// Empirical gap-count frequencies with binomial standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct CountStatistics {
    pub interval: Interval,
    pub counts: Vec<u64>,
    pub reps: u64,
}

impl CountStatistics {
    fn from_counts(interval: Interval, raw: Vec<usize>) -> Self {
        let reps = raw.len() as u64;
        let max = raw.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0u64; max + 1];
        for c in raw {
            counts[c] += 1;
        }
        Self {
            interval,
            counts,
            reps,
        }
    }

    /// Empirical probability of exactly n eigenvalues in the interval.
    pub fn prob(&self, n: usize) -> f64 {
        self.counts.get(n).copied().unwrap_or(0) as f64 / self.reps as f64
    }

    /// Binomial standard error sqrt(p (1 - p) / R).
    pub fn std_err(&self, n: usize) -> f64 {
        let p = self.prob(n);
        (p * (1.0 - p) / self.reps as f64).sqrt()
    }

    pub fn max_count(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }
}

/// Gap counts over an already materialized sample stream.
pub fn gap_counts<'a, I>(samples: I, interval: Interval) -> CountStatistics
where
    I: IntoIterator<Item = &'a EnsembleSample>,
{
    let raw: Vec<usize> = samples
        .into_iter()
        .map(|s| interval.count(&s.eigenvalues))
        .collect();
    CountStatistics::from_counts(interval, raw)
}

/// Draw `reps` replicates (streams 0..reps) and count eigenvalues in the
/// interval; replicates fan out across the worker pool.
pub fn sample_gap_counts(
    spec: &EnsembleSpec,
    interval: Interval,
    reps: u64,
    seed: u64,
) -> CountStatistics {
    let spec = *spec;
    let raw = crate::parallel::map_indexed(reps as usize, move |r| {
        interval.count(&sample_stream(&spec, seed, r as u64).eigenvalues)
    });
    CountStatistics::from_counts(interval, raw)
}

/// Sequential twin of [`sample_gap_counts`]; the bench suite compares the
/// two.
pub fn sample_gap_counts_sequential(
    spec: &EnsembleSpec,
    interval: Interval,
    reps: u64,
    seed: u64,
) -> CountStatistics {
    let raw = crate::parallel::map_indexed_sequential(reps as usize, |r| {
        interval.count(&sample_stream(spec, seed, r as u64).eigenvalues)
    });
    CountStatistics::from_counts(interval, raw)
}

/// Gap counts of the even-labelled superposition of independent size-N
/// and size-(N+1) beta = 1 draws.
pub fn superposition_gap_counts(
    spec_n: &EnsembleSpec,
    spec_n1: &EnsembleSpec,
    interval: Interval,
    reps: u64,
    seed: u64,
) -> Result<CountStatistics, EnsembleError> {
    // Validate once on a dry pair so per-replicate work can't fail.
    superpose_even(
        &sample_stream(spec_n, seed, 0),
        &sample_stream(spec_n1, mixed_seed(seed, 1), 0),
    )?;
    let (spec_n, spec_n1) = (*spec_n, *spec_n1);
    let raw = crate::parallel::map_indexed(reps as usize, move |r| {
        let s1 = sample_stream(&spec_n, seed, r as u64);
        let s2 = sample_stream(&spec_n1, mixed_seed(seed, 1), r as u64);
        let sup = superpose_even(&s1, &s2).expect("validated specs");
        interval.count(&sup.eigenvalues)
    });
    Ok(CountStatistics::from_counts(interval, raw))
}

/// Gap counts of the even-labelled decimation of a beta = 1 draw of odd
/// size.
pub fn decimation_gap_counts(
    spec: &EnsembleSpec,
    interval: Interval,
    reps: u64,
    seed: u64,
) -> Result<CountStatistics, EnsembleError> {
    decimate_even(&sample_stream(spec, seed, 0))?;
    let spec = *spec;
    let raw = crate::parallel::map_indexed(reps as usize, move |r| {
        let dec = decimate_even(&sample_stream(&spec, seed, r as u64)).expect("validated spec");
        interval.count(&dec.eigenvalues)
    });
    Ok(CountStatistics::from_counts(interval, raw))
}

/// Per-n z-scores between two independent empirical count distributions.
pub fn z_scores(a: &CountStatistics, b: &CountStatistics) -> Vec<f64> {
    let len = a.max_count().max(b.max_count()) + 1;
    (0..len)
        .map(|n| {
            let diff = a.prob(n) - b.prob(n);
            let se = (a.std_err(n).powi(2) + b.std_err(n).powi(2)).sqrt();
            zscore(diff, se)
        })
        .collect()
}

fn zscore(diff: f64, se: f64) -> f64 {
    if se == 0.0 {
        if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        diff / se
    }
}

/// Which finite-N count identity to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityId {
    /// Gaussian superposition: UE_N counts against OE_N x OE_{N+1}.
    A1,
    /// Gaussian decimation: SE_N counts against OE_{2N+1}.
    A2,
    /// Laguerre superposition (hard edge).
    A1h,
    /// Laguerre decimation (hard edge).
    A2h,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheckRow {
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub interval: Interval,
    pub reps: u64,
    pub rows: Vec<IdentityCheckRow>,
    pub pass: bool,
}

/// Monte Carlo check of a superposition/decimation count identity with
/// independent sample streams on both sides; passes when every |z| < 4.
///
/// `laguerre_a` is the underlying hard-edge parameter: the beta = 2 side
/// carries weight exponent a, the beta = 1 streams (a-1)/2, the beta = 4
/// side a + 1.
pub fn verify_identity(
    id: IdentityId,
    n_dim: usize,
    laguerre_a: f64,
    interval: Interval,
    reps: u64,
    seed: u64,
) -> Result<IdentityReport, EnsembleError> {
    let rows = match id {
        IdentityId::A1 | IdentityId::A1h => {
            let (ue, oe_n, oe_n1) = if id == IdentityId::A1 {
                (
                    EnsembleSpec::gaussian(Beta::Two, n_dim)?,
                    EnsembleSpec::gaussian(Beta::One, n_dim)?,
                    EnsembleSpec::gaussian(Beta::One, n_dim + 1)?,
                )
            } else {
                let c = 0.5 * (laguerre_a - 1.0);
                (
                    EnsembleSpec::laguerre(Beta::Two, n_dim, laguerre_a)?,
                    EnsembleSpec::laguerre(Beta::One, n_dim, c)?,
                    EnsembleSpec::laguerre(Beta::One, n_dim + 1, c)?,
                )
            };
            let stat_u = sample_gap_counts(&ue, interval, reps, mixed_seed(seed, 0));
            let stat_p = sample_gap_counts(&oe_n, interval, reps, mixed_seed(seed, 1));
            let stat_q = sample_gap_counts(&oe_n1, interval, reps, mixed_seed(seed, 2));
            (0..=n_dim / 2)
                .map(|n| superposition_row(n, &stat_u, &stat_p, &stat_q))
                .collect()
        }
        IdentityId::A2 | IdentityId::A2h => {
            let (se, oe) = if id == IdentityId::A2 {
                (
                    EnsembleSpec::gaussian(Beta::Four, n_dim)?,
                    EnsembleSpec::gaussian(Beta::One, 2 * n_dim + 1)?,
                )
            } else {
                (
                    EnsembleSpec::laguerre(Beta::Four, n_dim, laguerre_a + 1.0)?,
                    EnsembleSpec::laguerre(Beta::One, 2 * n_dim + 1, 0.5 * (laguerre_a - 1.0))?,
                )
            };
            let stat_s = sample_gap_counts(&se, interval, reps, mixed_seed(seed, 0));
            let stat_o = sample_gap_counts(&oe, interval, reps, mixed_seed(seed, 1));
            (0..=n_dim)
                .map(|n| {
                    let lhs = stat_s.prob(n);
                    let p = stat_o.prob(2 * n) + stat_o.prob(2 * n + 1);
                    let var_rhs = p * (1.0 - p) / reps as f64;
                    let se_total = (stat_s.std_err(n).powi(2) + var_rhs).sqrt();
                    IdentityCheckRow {
                        n,
                        lhs,
                        rhs: p,
                        z: zscore(lhs - p, se_total),
                    }
                })
                .collect::<Vec<_>>()
        }
    };
    let pass = rows.iter().all(|r| r.z.abs() < 4.0);
    Ok(IdentityReport {
        id,
        interval,
        reps,
        rows,
        pass,
    })
}

/// One row of the superposition identity:
/// `E(n; UE_N) = sum_p E(2n+1-p; OE_N) (E(p; OE_{N+1}) + E(p-1; OE_{N+1}))`
/// with multinomial error propagation on each independent stream.
fn superposition_row(
    n: usize,
    stat_u: &CountStatistics,
    stat_p: &CountStatistics,
    stat_q: &CountStatistics,
) -> IdentityCheckRow {
    let reps = stat_u.reps as f64;
    let top = 2 * n + 1;
    let q_at = |k: isize| {
        if k < 0 {
            0.0
        } else {
            stat_q.prob(k as usize)
        }
    };
    let rhs: f64 = (0..=top)
        .map(|p| stat_p.prob(top - p) * (q_at(p as isize) + q_at(p as isize - 1)))
        .sum();

    // Variance of a linear form sum c_i p_i of one multinomial vector:
    // (sum c_i^2 p_i - (sum c_i p_i)^2) / R.
    let multinomial_var = |coef: &dyn Fn(usize) -> f64, stat: &CountStatistics| {
        let mut first = 0.0;
        let mut second = 0.0;
        for k in 0..=stat.max_count() {
            let c = coef(k);
            let p = stat.prob(k);
            first += c * c * p;
            second += c * p;
        }
        (first - second * second) / reps
    };
    // d rhs / d P(i) and d rhs / d Q(i).
    let coef_p = |i: usize| {
        if i <= top {
            q_at((top - i) as isize) + q_at((top - i) as isize - 1)
        } else {
            0.0
        }
    };
    let coef_q = |i: usize| {
        let mut c = 0.0;
        if i <= top {
            c += stat_p.prob(top - i);
        }
        if i < top {
            c += stat_p.prob(top - i - 1);
        }
        c
    };
    let var_rhs = multinomial_var(&coef_p, stat_p) + multinomial_var(&coef_q, stat_q);
    let lhs = stat_u.prob(n);
    let se = (stat_u.std_err(n).powi(2) + var_rhs).sqrt();
    IdentityCheckRow {
        n,
        lhs,
        rhs,
        z: zscore(lhs - rhs, se),
    }
}
