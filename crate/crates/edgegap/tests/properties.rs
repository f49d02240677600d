//! Property tests for the structural invariants: quadrature exactness,
//! the xi-bar map, odd/even projections, kernel symmetry, deterministic
//! sampling.

use edgegap::edgelaws::{odd_even_parts, xi_bar, Beta};
use edgegap::ensembles::{sample_stream, EnsembleSpec, Interval};
use edgegap::fredholm::{kernel_eval, KernelOperator};
use edgegap::quad::{gauss_legendre, map_rule, Domain};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Gauss-Legendre integrates any polynomial of degree <= 2m - 1
    /// exactly on (-1, 1).
    #[test]
    fn quadrature_polynomial_exactness(
        m in 2usize..10,
        coeffs in prop::collection::vec(-1.0f64..1.0, 1..16),
    ) {
        let deg = (coeffs.len() - 1).min(2 * m - 2);
        let rule = gauss_legendre(m).unwrap();
        let quad = rule.integrate(|x| {
            coeffs[..=deg].iter().rev().fold(0.0, |acc, c| acc * x + c)
        });
        let exact: f64 = coeffs[..=deg]
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { 2.0 * c / (k as f64 + 1.0) } else { 0.0 })
            .sum();
        prop_assert!((quad - exact).abs() < 1e-12);
    }

    /// Mapped weights stay positive and sum to the interval length.
    #[test]
    fn mapped_weights_sum_to_length(lo in -10.0f64..10.0, len in 0.1f64..40.0) {
        let rule = gauss_legendre(24).unwrap();
        let mapped = map_rule(&rule, Domain::Finite { lo, hi: lo + len }).unwrap();
        prop_assert!(mapped.weights().iter().all(|w| *w > 0.0));
        let total: f64 = mapped.weights().iter().sum();
        prop_assert!((total - len).abs() < 1e-10 * len.max(1.0));
        prop_assert!(mapped.points().iter().all(|&x| x > lo && x < lo + len));
    }

    /// xi-bar: range-preserving on [0, 2], symmetric under reflection,
    /// fixed points 0 and 1.
    #[test]
    fn xi_bar_properties(xi in 0.0f64..=2.0) {
        let xb = xi_bar(xi);
        prop_assert!((0.0..=1.0).contains(&xb));
        prop_assert!((xb - xi_bar(2.0 - xi)).abs() < 1e-15);
        prop_assert!((xi_bar(xi) - (2.0 * xi - xi * xi)).abs() < 1e-15);
    }

    /// Odd/even projection recovers the parts of any polynomial in
    /// (1 - xi) and reconstructs the function.
    #[test]
    fn odd_even_projection_algebra(
        xi in 0.0f64..=2.0,
        coeffs in prop::collection::vec(-1.0f64..1.0, 1..8),
    ) {
        let f = |x: f64| {
            Ok(coeffs.iter().rev().fold(0.0, |acc, c| acc * (1.0 - x) + c))
        };
        let (odd, even) = odd_even_parts(f, xi).unwrap();
        // Reconstruction.
        prop_assert!((odd + even - f(xi).unwrap()).abs() < 1e-12);
        // Against the explicit coefficient split.
        let u = 1.0 - xi;
        let odd_direct: f64 = coeffs
            .iter()
            .enumerate()
            .filter(|(k, _)| k % 2 == 1)
            .map(|(k, c)| c * u.powi(k as i32))
            .sum();
        prop_assert!((odd - odd_direct).abs() < 1e-12);
    }

    /// Kernels are symmetric in their arguments.
    #[test]
    fn kernel_symmetry(
        x in 0.05f64..3.0,
        y in 0.05f64..3.0,
        a in 0.0f64..3.0,
    ) {
        let soft = KernelOperator::soft(-1.0);
        prop_assert_eq!(
            kernel_eval(&soft, x, y).unwrap(),
            kernel_eval(&soft, y, x).unwrap()
        );
        let hard = KernelOperator::hard(4.0, a);
        prop_assert_eq!(
            kernel_eval(&hard, x, y).unwrap(),
            kernel_eval(&hard, y, x).unwrap()
        );
        let v_hard = KernelOperator::v_hard(2.0, a);
        let (u, v) = (x / 4.0, y / 4.0);
        prop_assert_eq!(
            kernel_eval(&v_hard, u, v).unwrap(),
            kernel_eval(&v_hard, v, u).unwrap()
        );
    }

    /// Same (spec, seed, stream) always reproduces the same draw, and
    /// interval counts never exceed the dimension.
    #[test]
    fn sampling_determinism_and_count_bounds(
        seed in any::<u64>(),
        stream in 0u64..1000,
        n in 1usize..12,
        lo in -3.0f64..3.0,
    ) {
        let spec = EnsembleSpec::gaussian(Beta::Two, n).unwrap();
        let a = sample_stream(&spec, seed, stream);
        let b = sample_stream(&spec, seed, stream);
        prop_assert_eq!(&a, &b);
        let count = Interval::above(lo).count(&a.eigenvalues);
        prop_assert!(count <= n);
        // Descending order per the Gaussian convention.
        prop_assert!(a.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }
}
