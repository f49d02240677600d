//! Airy function Ai and its derivative on the real line.
//!
//! Evaluation strategy (switchover points are module constants):
//!
//! * `x >= 10`: asymptotic expansion in `zeta = (2/3) x^(3/2)` (DLMF
//!   9.7.5-9.7.6). At the switchover `zeta ~ 21` the optimally truncated
//!   series is below 1e-18 relative.
//! * `x <= -14`: the oscillatory expansions (DLMF 9.7.9-9.7.10), again
//!   fully converged at the switchover (`zeta ~ 35`).
//! * in between: Taylor-series marching of the Airy ODE `y'' = x y`
//!   downward from an anchor at `x = 10` seeded by the asymptotic
//!   expansion. Marching toward decreasing `x` follows the growing
//!   solution, so the recessive-mode contamination that ruins upward
//!   integration of Ai cannot occur; accumulated error stays a small
//!   multiple of machine epsilon over the whole span.
//!
//! Ai underflows to zero near `x = 106`; beyond that the function returns
//! 0 exactly, which satisfies the absolute accuracy contract.

/// Switch to the positive-x asymptotic series.
const POS_ASYMPTOTIC: f64 = 10.0;
/// Switch to the negative-x asymptotic series.
const NEG_ASYMPTOTIC: f64 = -14.0;
/// Taylor order and step for the ODE march.
const MARCH_TERMS: usize = 28;
const MARCH_STEP: f64 = 0.5;

const INV_TWO_SQRT_PI: f64 = 0.28209479177387814; // 1/(2 sqrt(pi))
const INV_SQRT_PI: f64 = 0.5641895835477563;

/// (Ai(x), Ai'(x)) for finite real x.
pub(crate) fn ai_pair(x: f64) -> (f64, f64) {
    if x >= POS_ASYMPTOTIC {
        asymptotic_pos(x)
    } else if x <= NEG_ASYMPTOTIC {
        asymptotic_neg(x)
    } else {
        march_from_anchor(x)
    }
}

/// Poincaré coefficients u_k of the Airy expansions; v_k = u_k (6k+1)/(1-6k).
fn next_u(u: f64, k: usize) -> f64 {
    let k = k as f64;
    u * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * k * (2.0 * k - 1.0))
}

fn asymptotic_pos(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let mut u = 1.0;
    let mut sum_ai = 1.0;
    let mut sum_aip = 1.0;
    let mut sign = -1.0;
    let mut zk = 1.0;
    for k in 1..60 {
        u = next_u(u, k);
        zk *= zeta;
        let term = u / zk;
        if term.abs() < 1e-18 {
            break;
        }
        let v_term = term * (6.0 * k as f64 + 1.0) / (1.0 - 6.0 * k as f64);
        sum_ai += sign * term;
        sum_aip += sign * v_term;
        sign = -sign;
    }
    let e = (-zeta).exp();
    let x4 = x.powf(0.25);
    (
        INV_TWO_SQRT_PI * e / x4 * sum_ai,
        -INV_TWO_SQRT_PI * e * x4 * sum_aip,
    )
}

fn asymptotic_neg(x: f64) -> (f64, f64) {
    let z = -x;
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    // Even/odd split of the u_k, v_k tails with signs (-1)^floor(k/2):
    //   Ai(-z)  =  (cos w * Se_u + sin w * So_u) / (sqrt(pi) z^(1/4))
    //   Ai'(-z) =  (sin w * Se_v - cos w * So_v) * z^(1/4) / sqrt(pi)
    // where w = zeta - pi/4 (DLMF 9.7.9-9.7.10).
    let mut se_u = 1.0;
    let mut so_u = 0.0;
    let mut se_v = 1.0;
    let mut so_v = 0.0;
    let mut u = 1.0;
    let mut zk = 1.0;
    for k in 1..60 {
        u = next_u(u, k);
        zk *= zeta;
        let term = u / zk;
        if term.abs() < 1e-18 {
            break;
        }
        let v_term = term * (6.0 * k as f64 + 1.0) / (1.0 - 6.0 * k as f64);
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            so_u += sign * term;
            so_v += sign * v_term;
        } else {
            se_u += sign * term;
            se_v += sign * v_term;
        }
    }
    let w = zeta - std::f64::consts::FRAC_PI_4;
    let (sw, cw) = w.sin_cos();
    let z4 = z.powf(0.25);
    (
        INV_SQRT_PI / z4 * (cw * se_u + sw * so_u),
        INV_SQRT_PI * z4 * (sw * se_v - cw * so_v),
    )
}

/// Taylor march of y'' = x y from the asymptotic anchor down to `x`.
fn march_from_anchor(x: f64) -> (f64, f64) {
    let (mut y, mut dy) = asymptotic_pos(POS_ASYMPTOTIC);
    let span = x - POS_ASYMPTOTIC;
    let n = (span.abs() / MARCH_STEP).ceil().max(1.0) as usize;
    let h = span / n as f64;
    let mut t = POS_ASYMPTOTIC;
    for _ in 0..n {
        let (ny, ndy) = taylor_step(t, y, dy, h);
        y = ny;
        dy = ndy;
        t += h;
    }
    (y, dy)
}

/// One Taylor step of the Airy ODE: coefficients from
/// c_{n+2} = (x0 c_n + c_{n-1}) / ((n+1)(n+2)).
fn taylor_step(x0: f64, y: f64, dy: f64, h: f64) -> (f64, f64) {
    let mut c = [0.0; MARCH_TERMS];
    c[0] = y;
    c[1] = dy;
    c[2] = 0.5 * x0 * y;
    for n in 1..MARCH_TERMS - 2 {
        c[n + 2] = (x0 * c[n] + c[n - 1]) / (((n + 1) * (n + 2)) as f64);
    }
    let mut val = 0.0;
    let mut der = 0.0;
    for n in (1..MARCH_TERMS).rev() {
        val = val * h + c[n];
        der = der * h + c[n] * n as f64;
    }
    val = val * h + c[0];
    (val, der)
}

#[cfg(test)]
mod tests {
    use super::*;

    const AI0: f64 = 0.3550280538878172; // 3^(-2/3) / Gamma(2/3)
    const AIP0: f64 = -0.2588194037928068; // -3^(-1/3) / Gamma(1/3)

    /// Independent Maclaurin oracle: Ai = Ai(0) f + Ai'(0) g with
    /// f, g the standard Airy ODE power-series solutions. Trustworthy to
    /// ~1e-13 for |x| <= 6 (cancellation grows like exp((4/3)|x|^1.5)).
    fn maclaurin_oracle(x: f64) -> (f64, f64) {
        let mut f = 1.0;
        let mut fp = 0.0;
        let mut g = x;
        let mut gp = 1.0;
        let mut tf = 1.0;
        let mut tg = x;
        for k in 0..40 {
            let n = 3.0 * k as f64;
            tf *= x * x * x / ((n + 2.0) * (n + 3.0));
            f += tf;
            fp += tf * (n + 3.0) / x;
            tg *= x * x * x / ((n + 3.0) * (n + 4.0));
            g += tg;
            gp += tg * (n + 4.0) / x;
        }
        (AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp)
    }

    #[test]
    fn origin_closed_forms() {
        let (ai, aip) = ai_pair(0.0);
        assert!((ai - AI0).abs() < 2e-15, "Ai(0) = {ai}");
        assert!((aip - AIP0).abs() < 2e-15, "Ai'(0) = {aip}");
    }

    #[test]
    fn matches_maclaurin_oracle_on_core_interval() {
        // The oracle itself loses ~eps * exp((2/3)|x|^1.5) to cancellation,
        // so the usable window is |x| <= ~5.5 at these tolerances.
        let mut x: f64 = -5.5;
        while x <= 5.0 {
            if x.abs() > 1e-9 {
                let (ai, aip) = ai_pair(x);
                let (oi, oip) = maclaurin_oracle(x);
                assert!((ai - oi).abs() < 5e-12, "Ai({x}) = {ai} vs oracle {oi}");
                assert!(
                    (aip - oip).abs() < 2e-11,
                    "Ai'({x}) = {aip} vs oracle {oip}"
                );
            }
            x += 0.25;
        }
    }

    #[test]
    fn negative_asymptotic_consistent_with_march() {
        // The ODE march and the oscillatory expansion are independent
        // routes; agreement at the switchover validates both.
        for &x in &[-14.0, -16.5, -20.0] {
            let (a, ap) = march_from_anchor(x);
            let (b, bp) = asymptotic_neg(x);
            assert!((a - b).abs() < 2e-13, "Ai({x}): {a} vs {b}");
            assert!((ap - bp).abs() < 1e-12, "Ai'({x}): {ap} vs {bp}");
        }
    }

    #[test]
    fn deep_oscillatory_region_is_finite_and_bounded() {
        for &x in &[-50.0f64, -200.0, -1000.0] {
            let (ai, aip) = ai_pair(x);
            let envelope = INV_SQRT_PI / (-x).powf(0.25);
            assert!(ai.abs() <= 1.05 * envelope);
            assert!(aip.abs() <= 1.05 * INV_SQRT_PI * (-x).powf(0.25));
        }
    }

    #[test]
    fn far_positive_underflow_is_zero() {
        let (ai, _) = ai_pair(500.0);
        assert_eq!(ai, 0.0);
    }
}
