//! Gauss-Legendre quadrature with the interval mappings used to
//! discretize the edge integral operators.
//!
//! Rules are built on the reference interval (-1, 1) and mapped onto the
//! operator domains: affinely for finite intervals, affinely onto a
//! truncated window `(lo, lo + L)` for `(lo, inf)` (the Airy-type kernels
//! decay super-exponentially, so the truncation error sits far below the
//! discretization error), and through `x = u^2` for hard-edge domains
//! `(0, hi)`, which restores geometric Nyström convergence when the
//! kernel carries half-integer powers of the variables near 0.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("quadrature order {0} outside supported range 2..=512")]
    Order(usize),
    #[error("degenerate integration domain")]
    DegenerateDomain,
}

/// Target interval of a mapped rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// (lo, hi) with an affine map.
    Finite { lo: f64, hi: f64 },
    /// (lo, inf) truncated to (lo, lo + length), mapped affinely.
    SemiInfinite { lo: f64, length: f64 },
    /// (0, hi) with nodes clustered at 0 through x = u^2.
    SqrtFinite { hi: f64 },
}

/// Nodes and weights on the reference interval plus the mapped image.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    ref_nodes: Vec<f64>,
    ref_weights: Vec<f64>,
    mapping: Option<Domain>,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.ref_nodes.len()
    }

    /// Nodes in the mapped domain (reference nodes if unmapped).
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Weights matching [`points`](Self::points).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn mapping(&self) -> Option<Domain> {
        self.mapping
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Classical Gauss-Legendre rule on (-1, 1); exact for polynomials of
/// degree <= 2m - 1.
pub fn gauss_legendre(m: usize) -> Result<QuadratureRule, QuadError> {
    if !(2..=512).contains(&m) {
        return Err(QuadError::Order(m));
    }
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let n = m as f64;
    for i in 0..m.div_ceil(2) {
        // Newton iteration from the Chebyshev-like initial guess.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, z);
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, z);
        nodes[i] = -z;
        nodes[m - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * d * d);
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    Ok(QuadratureRule {
        points: nodes.clone(),
        weights: weights.clone(),
        ref_nodes: nodes,
        ref_weights: weights,
        mapping: None,
    })
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=m {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Map a reference rule onto `domain`.
pub fn map_rule(rule: &QuadratureRule, domain: Domain) -> Result<QuadratureRule, QuadError> {
    let m = rule.order();
    let mut points = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    match domain {
        Domain::Finite { lo, hi } => {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(QuadError::DegenerateDomain);
            }
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            for (&t, &w) in rule.ref_nodes.iter().zip(&rule.ref_weights) {
                points.push(mid + half * t);
                weights.push(half * w);
            }
        }
        Domain::SemiInfinite { lo, length } => {
            if !lo.is_finite() || !(length > 0.0) {
                return Err(QuadError::DegenerateDomain);
            }
            let half = 0.5 * length;
            for (&t, &w) in rule.ref_nodes.iter().zip(&rule.ref_weights) {
                points.push(lo + half * (t + 1.0));
                weights.push(half * w);
            }
        }
        Domain::SqrtFinite { hi } => {
            if !(hi > 0.0) || !hi.is_finite() {
                return Err(QuadError::DegenerateDomain);
            }
            let half = 0.5 * hi.sqrt();
            for (&t, &w) in rule.ref_nodes.iter().zip(&rule.ref_weights) {
                let u = half * (t + 1.0);
                points.push(u * u);
                weights.push(2.0 * u * half * w);
            }
        }
    }
    Ok(QuadratureRule {
        ref_nodes: rule.ref_nodes.clone(),
        ref_weights: rule.ref_weights.clone(),
        mapping: Some(domain),
        points,
        weights,
    })
}

/// Integral of `f` over (0, upper) by dyadic bisection toward 0 with a
/// fixed Gauss-Legendre rule per piece. Handles integrable endpoint
/// behaviour at 0 (powers, logarithms); the truncated stub below
/// `upper 2^-depth` must be negligible at the caller's tolerance.
pub fn integrate_dyadic_to_zero<F: Fn(f64) -> f64>(
    upper: f64,
    depth: usize,
    order: usize,
    f: F,
) -> Result<f64, QuadError> {
    if !(upper > 0.0) || !upper.is_finite() {
        return Err(QuadError::DegenerateDomain);
    }
    let rule = gauss_legendre(order)?;
    let mut total = 0.0;
    let mut hi = upper;
    for _ in 0..depth {
        let lo = 0.5 * hi;
        let piece = map_rule(&rule, Domain::Finite { lo, hi })?;
        total += piece.integrate(&f);
        hi = lo;
    }
    Ok(total)
}
