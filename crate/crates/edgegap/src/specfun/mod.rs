//! Special functions used by the edge kernels and boundary conditions:
//! Airy Ai and Ai', Bessel J_a and J_a' for real order a > -1, and the
//! Gamma function.
//!
//! The public operations validate their domains and return
//! [`SpecFunError`] outside them; the crate-internal `raw` entry points
//! are total on the validated domains and are what the kernel assembly
//! calls in hot loops.
//!
//! Everything is binary64. Accuracy contracts (checked by the test
//! suites): Ai to 1e-13 relative for x >= -20 and 1e-13 absolute beyond;
//! J_a to 1e-12 relative for x <= 50 and 1e-10 beyond; Gamma to 1e-13
//! relative on (0, 170].

mod airy;
mod bessel;
mod gamma;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("argument {0} outside the supported domain: {1}")]
    Domain(f64, &'static str),
    #[error("J_a'(0) is singular for non-integer order a = {0} < 1")]
    SingularDerivative(f64),
}

/// Crate-internal total evaluations (no domain checks beyond debug asserts).
pub(crate) mod raw {
    pub(crate) use super::airy::ai_pair;
    pub(crate) use super::bessel::besselj;
    pub(crate) use super::gamma::{gamma, ln_gamma};

    pub(crate) fn ai(x: f64) -> f64 {
        ai_pair(x).0
    }

    pub(crate) fn ai_prime(x: f64) -> f64 {
        ai_pair(x).1
    }

    /// J_a'(x) for x > 0 via the neighbour recurrences.
    pub(crate) fn besselj_prime(a: f64, x: f64) -> f64 {
        if a >= 1.0 {
            0.5 * (besselj(a - 1.0, x) - besselj(a + 1.0, x))
        } else if a == 0.0 {
            -besselj(1.0, x)
        } else {
            besselj(a - 1.0, x) - (a / x) * besselj(a, x)
        }
    }
}

/// The Airy function Ai(x) for finite |x| <= 1e3.
pub fn airy_ai(x: f64) -> Result<f64, SpecFunError> {
    check_airy_arg(x)?;
    Ok(raw::ai(x))
}

/// Ai'(x), same domain as [`airy_ai`].
pub fn airy_ai_prime(x: f64) -> Result<f64, SpecFunError> {
    check_airy_arg(x)?;
    Ok(raw::ai_prime(x))
}

fn check_airy_arg(x: f64) -> Result<(), SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::Domain(x, "Airy argument must be finite"));
    }
    if x.abs() > 1e3 {
        return Err(SpecFunError::Domain(
            x,
            "Airy argument limited to |x| <= 1e3",
        ));
    }
    Ok(())
}

/// Bessel J_a(x) for order a > -1 and 0 <= x <= 1e4.
pub fn bessel_j(a: f64, x: f64) -> Result<f64, SpecFunError> {
    check_bessel_args(a, x)?;
    Ok(raw::besselj(a, x))
}

/// J_a'(x). At x = 0 the derivative exists only for a = 0 (value 0),
/// a = 1 (value 1/2) and a > 1 (value 0); other orders are rejected.
pub fn bessel_j_prime(a: f64, x: f64) -> Result<f64, SpecFunError> {
    check_bessel_args(a, x)?;
    if x == 0.0 {
        return if a == 0.0 {
            Ok(0.0)
        } else if a == 1.0 {
            Ok(0.5)
        } else if a > 1.0 {
            Ok(0.0)
        } else {
            Err(SpecFunError::SingularDerivative(a))
        };
    }
    Ok(raw::besselj_prime(a, x))
}

fn check_bessel_args(a: f64, x: f64) -> Result<(), SpecFunError> {
    if !(a.is_finite() && x.is_finite()) {
        return Err(SpecFunError::Domain(x, "Bessel arguments must be finite"));
    }
    if a <= -1.0 {
        return Err(SpecFunError::Domain(a, "Bessel order must exceed -1"));
    }
    if !(0.0..=1e4).contains(&x) {
        return Err(SpecFunError::Domain(
            x,
            "Bessel argument limited to [0, 1e4]",
        ));
    }
    Ok(())
}

/// Gamma(x) for 0 < x <= 170.
pub fn gamma_fn(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() || x <= 0.0 || x > 170.0 {
        return Err(SpecFunError::Domain(
            x,
            "Gamma argument limited to (0, 170]",
        ));
    }
    Ok(raw::gamma(x))
}
