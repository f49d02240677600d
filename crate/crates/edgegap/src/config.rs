//! Shared numeric configuration: quadrature order and semi-infinite
//! truncation policy.

use crate::quad::{gauss_legendre, map_rule, Domain, QuadError, QuadratureRule};

/// Quadrature order and truncation length used by every determinant,
/// resolvent and transcendent integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Gauss-Legendre order m (default 80; self-convergence checked
    /// against m = 160 on the standard parameter box).
    pub quad_order: usize,
    /// Base truncation length L for semi-infinite domains. The effective
    /// window on (s, inf) is max(L, 12 - s): the Airy kernel entries decay
    /// like exp(-(4/3) x^(3/2)), so truncation error is far below the
    /// discretization error.
    pub truncation: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            quad_order: 80,
            truncation: 25.0,
        }
    }
}

impl EvalConfig {
    pub fn with_order(quad_order: usize) -> Self {
        Self {
            quad_order,
            ..Self::default()
        }
    }

    /// Effective truncation window for a soft domain starting at `s`.
    pub fn tail_length(&self, s: f64) -> f64 {
        self.truncation.max(12.0 - s)
    }

    pub fn base_rule(&self) -> Result<QuadratureRule, QuadError> {
        gauss_legendre(self.quad_order)
    }

    /// Rule on the truncated Airy-kernel domain (s, inf).
    pub fn soft_rule(&self, s: f64) -> Result<QuadratureRule, QuadError> {
        map_rule(
            &self.base_rule()?,
            Domain::SemiInfinite {
                lo: s,
                length: self.tail_length(s),
            },
        )
    }

    /// Rule for endpoint-resolvent evaluations on (s, inf). Deep in the
    /// left tail the spectral gap 1 - lambda_1 shrinks like the gap
    /// probability itself, and the top eigenvalue must be resolved well
    /// below that gap for the resolvent to mean anything; past s = -4 the
    /// order scales with the window so the node density stays high enough
    /// (empirically ~4.8 nodes per unit holds q to ~1e-9 at s = -6.5).
    pub(crate) fn soft_resolvent_rule(&self, s: f64) -> Result<QuadratureRule, QuadError> {
        let length = self.tail_length(s);
        let mut order = self.quad_order;
        if s < -4.0 {
            order = order.max((4.8 * length).ceil() as usize).min(512);
        }
        map_rule(
            &gauss_legendre(order)?,
            Domain::SemiInfinite { lo: s, length },
        )
    }

    /// Rule on (0, inf) for the soft V operator with shift s (the kernel
    /// decays in x + u + s, so the window length follows s as well).
    pub fn v_soft_rule(&self, s: f64) -> Result<QuadratureRule, QuadError> {
        map_rule(
            &self.base_rule()?,
            Domain::SemiInfinite {
                lo: 0.0,
                length: self.tail_length(s),
            },
        )
    }

    /// Rule on (0, s) for the Bessel kernel, clustered at 0 via x = u^2 so
    /// that the half-integer powers of the kernel stay resolved.
    pub fn hard_rule(&self, s: f64) -> Result<QuadratureRule, QuadError> {
        map_rule(&self.base_rule()?, Domain::SqrtFinite { hi: s })
    }

    /// Rule on (0, 1) for the hard V operator.
    pub fn v_hard_rule(&self) -> Result<QuadratureRule, QuadError> {
        map_rule(&self.base_rule()?, Domain::SqrtFinite { hi: 1.0 })
    }
}
