//! Modified Bessel functions of the first kind of orders zero and one.
//!
//! Small and moderate arguments use the ascending power series, which has only
//! positive terms and is therefore free of cancellation. Large arguments use
//! the Hankel asymptotic expansion of `e^{-x} I_n(x)`, truncated once the terms
//! fall below double precision. The expansion carries an intrinsic error of
//! order `e^{-2x}` (the subdominant exponential is not representable on the
//! real axis), so the switch happens at [`ASYMPTOTIC_THRESHOLD`] where that
//! error is below `1e-17`.

use crate::error::{CurvelastError, Result};

/// Largest argument accepted by the unscaled [`bessel_i`] (`e^700` is close to
/// the top of the `f64` range).
pub const MAX_ARG: f64 = 700.0;

/// Arguments above this value use the asymptotic expansion.
pub const ASYMPTOTIC_THRESHOLD: f64 = 20.0;

/// Below this argument [`bessel_i_ratio01`] uses the Laurent expansion
/// `2/x + x/4`.
pub const RATIO_SMALL_ARG: f64 = 1e-4;

fn check_order(order: u32) -> Result<()> {
    if order > 1 {
        return Err(CurvelastError::Domain {
            what: "bessel_i",
            value: f64::from(order),
            reason: "only orders 0 and 1 are implemented",
        });
    }
    Ok(())
}

fn check_arg(what: &'static str, x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(CurvelastError::Domain {
            what,
            value: x,
            reason: "argument must be finite and nonnegative",
        });
    }
    Ok(())
}

/// Ascending series `Σ_m (x/2)^{2m+n} / (m! (m+n)!)`.
fn series(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let n = f64::from(order);
    let mut term = if order == 0 { 1.0 } else { half };
    let mut sum = term;
    for m in 1..1000 {
        let m = m as f64;
        term *= q / (m * (m + n));
        sum += term;
        if term <= 1e-18 * sum {
            break;
        }
    }
    sum
}

/// Hankel expansion of `√(2πx) e^{-x} I_n(x)`, truncated at the smallest term.
fn asymptotic_sum(order: u32, x: f64) -> f64 {
    let mu = 4.0 * f64::from(order * order);
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = term * (odd * odd - mu) / (8.0 * k as f64 * x);
        if next.abs() >= term.abs() && k > 1 {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `e^{-x} I_n(x)` for `n ∈ {0, 1}` and any finite `x ≥ 0`.
pub fn bessel_i_scaled(order: u32, x: f64) -> Result<f64> {
    check_order(order)?;
    check_arg("bessel_i_scaled", x)?;
    if x <= ASYMPTOTIC_THRESHOLD {
        Ok(series(order, x) * (-x).exp())
    } else {
        Ok(asymptotic_sum(order, x) / (2.0 * std::f64::consts::PI * x).sqrt())
    }
}

/// `I_n(x)` for `n ∈ {0, 1}` and `0 ≤ x ≤ 700`.
pub fn bessel_i(order: u32, x: f64) -> Result<f64> {
    check_order(order)?;
    check_arg("bessel_i", x)?;
    if x > MAX_ARG {
        return Err(CurvelastError::Domain {
            what: "bessel_i",
            value: x,
            reason: "argument above 700 overflows; use bessel_i_scaled",
        });
    }
    if x <= ASYMPTOTIC_THRESHOLD {
        Ok(series(order, x))
    } else {
        Ok(bessel_i_scaled(order, x)? * x.exp())
    }
}

/// Derivative `I_n'(x)`: `I₀' = I₁` and `I₁' = I₀ − I₁/x` (with `I₁'(0) = 1/2`).
pub fn bessel_i_derivative(order: u32, x: f64) -> Result<f64> {
    check_order(order)?;
    match order {
        0 => bessel_i(1, x),
        _ if x == 0.0 => Ok(0.5),
        _ => Ok(bessel_i(0, x)? - bessel_i(1, x)? / x),
    }
}

/// The ratio `I₀(x)/I₁(x)` for `x > 0`, valid for arbitrarily large `x`.
pub fn bessel_i_ratio01(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(CurvelastError::Domain {
            what: "bessel_i_ratio01",
            value: x,
            reason: "argument must be finite and positive",
        });
    }
    if x < RATIO_SMALL_ARG {
        Ok(2.0 / x + 0.25 * x)
    } else if x <= ASYMPTOTIC_THRESHOLD {
        Ok(series(0, x) / series(1, x))
    } else {
        Ok(asymptotic_sum(0, x) / asymptotic_sum(1, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_i(0, -1e-3).is_err());
        assert!(bessel_i(1, 700.5).is_err());
        assert!(bessel_i(2, 1.0).is_err());
        assert!(bessel_i_ratio01(0.0).is_err());
        assert!(bessel_i_ratio01(f64::NAN).is_err());
        assert!(bessel_i_scaled(0, 1e4).is_ok());
    }

    #[test]
    fn branches_meet_at_threshold() {
        let x = ASYMPTOTIC_THRESHOLD;
        for n in 0..2 {
            let s = series(n, x) * (-x).exp();
            let a = asymptotic_sum(n, x) / (2.0 * std::f64::consts::PI * x).sqrt();
            assert!(((s - a) / s).abs() < 1e-14, "order {n}: {s} vs {a}");
        }
    }
}
