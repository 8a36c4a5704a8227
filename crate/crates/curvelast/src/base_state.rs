//! The homogeneous finite deformation of the coated cylinder.
//!
//! A cylinder of reference radius `A` is stretched axially by `λ`; its radius
//! becomes `aA`. The azimuthal stretch `a(λ)` follows from the traction
//! condition on the lateral surface, whose only nontrivial component reads
//!
//! `P̄₃₃ + (P̄_s11 + M̄_s11/A)/A = 0`.
//!
//! [`base_residual`] returns this condition multiplied by `8a²A³`, which for the
//! Helfrich energy is the polynomial
//! `8μa(a²−1)A³ + 4Da(a⁴λ²−1)A³ + 8γλa²A² + βλ(4a²A²H₀² − 1)`.

use crate::bulk_material::{base_pk1, BulkMaterial};
use crate::error::{CurvelastError, Result};
use crate::surface_material::{base_surface_stress_moment, SurfaceModel};
use std::f64::consts::PI;

/// Default search interval for `a`.
pub const DEFAULT_BRACKET: (f64, f64) = (0.2, 3.0);
/// Number of geometric widenings of the default interval.
const MAX_WIDENINGS: usize = 4;
/// Relative step of the central difference in [`dfz_dlambda`].
pub const DFZ_REL_STEP: f64 = 1e-6;

/// A solved base state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseState {
    pub lambda_ax: f64,
    pub a: f64,
    pub radius_ref: f64,
    pub mat: BulkMaterial,
    pub surf: SurfaceModel,
}

impl BaseState {
    /// Solves for `a(λ)` on the default interval.
    pub fn solve(lambda: f64, mat: &BulkMaterial, surf: &SurfaceModel, radius_ref: f64) -> Result<Self> {
        let a = solve_azimuthal_stretch(lambda, mat, surf, radius_ref, None)?;
        Ok(Self {
            lambda_ax: lambda,
            a,
            radius_ref,
            mat: *mat,
            surf: *surf,
        })
    }

    pub fn residual(&self) -> Result<f64> {
        base_residual(self.a, self.lambda_ax, &self.mat, &self.surf, self.radius_ref)
    }

    pub fn axial_force(&self) -> Result<f64> {
        axial_force(self.lambda_ax, self.a, &self.mat, &self.surf, self.radius_ref)
    }

    /// The same state in units where `μ = 1` and `A = 1`.
    pub fn nondimensional(&self) -> Self {
        let mu = self.mat.mu;
        Self {
            lambda_ax: self.lambda_ax,
            a: self.a,
            radius_ref: 1.0,
            mat: BulkMaterial {
                mu: 1.0,
                d_modulus: self.mat.d_modulus / mu,
            },
            surf: self.surf.nondimensional(mu, self.radius_ref),
        }
    }
}

fn check_positive(what: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(CurvelastError::Domain {
            what,
            value: v,
            reason: "must be finite and positive",
        });
    }
    Ok(())
}

/// Lateral traction condition multiplied by `8a²A³`.
pub fn base_residual(a: f64, lambda: f64, mat: &BulkMaterial, surf: &SurfaceModel, radius_ref: f64) -> Result<f64> {
    check_positive("radius_ref", radius_ref)?;
    let p = base_pk1(a, lambda, mat)?;
    let (ps, ms) = base_surface_stress_moment(surf, a, lambda, radius_ref)?;
    let big_a = radius_ref;
    Ok(8.0 * a * a * big_a.powi(3) * (p[(2, 2)] + (ps[(0, 0)] + ms[(0, 0)] / big_a) / big_a))
}

/// The Helfrich residual as a closed-form polynomial (`α_s` must vanish).
pub fn helfrich_residual_closed_form(
    a: f64,
    lambda: f64,
    mat: &BulkMaterial,
    surf: &SurfaceModel,
    radius_ref: f64,
) -> f64 {
    let (mu, d) = (mat.mu, mat.d_modulus);
    let (g, b, h0) = (surf.gamma, surf.beta_s, surf.h0);
    let big_a = radius_ref;
    8.0 * mu * a * (a * a - 1.0) * big_a.powi(3)
        + 4.0 * d * a * (a.powi(4) * lambda * lambda - 1.0) * big_a.powi(3)
        + 8.0 * g * lambda * a * a * big_a * big_a
        + b * lambda * (4.0 * a * a * big_a * big_a * h0 * h0 - 1.0)
}

/// Scale of the residual used in the convergence test.
fn residual_scale(mat: &BulkMaterial, surf: &SurfaceModel, radius_ref: f64) -> f64 {
    let surface = (surf.gamma / radius_ref)
        .max(surf.alpha_s / radius_ref)
        .max(surf.beta_s / radius_ref.powi(3));
    mat.mu.max(mat.d_modulus).max(surface) * radius_ref.powi(3)
}

/// Solves the traction condition for `a` by bisection followed by Newton
/// polishing.
///
/// With `bracket = None` the search starts on [`DEFAULT_BRACKET`] and widens the
/// interval by a factor of two on each side up to four times. An explicit
/// bracket is used as given.
pub fn solve_azimuthal_stretch(
    lambda: f64,
    mat: &BulkMaterial,
    surf: &SurfaceModel,
    radius_ref: f64,
    bracket: Option<(f64, f64)>,
) -> Result<f64> {
    check_positive("lambda", lambda)?;
    check_positive("radius_ref", radius_ref)?;
    let f = |a: f64| base_residual(a, lambda, mat, surf, radius_ref);

    let (mut lo, mut hi) = bracket.unwrap_or(DEFAULT_BRACKET);
    check_positive("bracket lower end", lo)?;
    check_positive("bracket upper end", hi)?;
    if lo >= hi {
        return Err(CurvelastError::InvalidParameters(format!("empty bracket [{lo}, {hi}]")));
    }
    let widenings = if bracket.is_some() { 0 } else { MAX_WIDENINGS };
    let (mut f_lo, mut f_hi) = (f(lo)?, f(hi)?);
    let mut tries = 0;
    while f_lo.signum() == f_hi.signum() && f_lo != 0.0 && f_hi != 0.0 {
        if tries == widenings {
            return Err(CurvelastError::NoBracket {
                what: "base residual",
                lo,
                hi,
                f_lo,
                f_hi,
            });
        }
        lo *= 0.5;
        hi *= 2.0;
        f_lo = f(lo)?;
        f_hi = f(hi)?;
        tries += 1;
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }

    // Bisection down to a narrow interval.
    while hi - lo > 1e-8 * hi {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    // Newton polishing inside the bracket.
    let mut a = 0.5 * (lo + hi);
    for _ in 0..60 {
        let r = f(a)?;
        if r == 0.0 {
            break;
        }
        let h = 1e-7 * a;
        let slope = (f(a + h)? - f(a - h)?) / (2.0 * h);
        if slope == 0.0 || !slope.is_finite() {
            return Err(CurvelastError::NoConvergence {
                what: "azimuthal stretch",
                detail: format!("vanishing residual slope at a = {a}"),
            });
        }
        let next = (a - r / slope).clamp(lo, hi);
        let done = (next - a).abs() <= 4.0 * f64::EPSILON * a;
        a = next;
        if done {
            break;
        }
    }

    let r = f(a)?;
    let tol = 1e-12 * residual_scale(mat, surf, radius_ref);
    if r.abs() > tol {
        return Err(CurvelastError::NoConvergence {
            what: "azimuthal stretch",
            detail: format!("residual {r:e} exceeds {tol:e} at a = {a}"),
        });
    }
    Ok(a)
}

/// Resultant axial force `F_z = πA² P̄₂₂ + 2πA P̄_s22`.
pub fn axial_force(lambda: f64, a: f64, mat: &BulkMaterial, surf: &SurfaceModel, radius_ref: f64) -> Result<f64> {
    check_positive("radius_ref", radius_ref)?;
    let p = base_pk1(a, lambda, mat)?;
    let (ps, _) = base_surface_stress_moment(surf, a, lambda, radius_ref)?;
    Ok(PI * radius_ref * radius_ref * p[(1, 1)] + 2.0 * PI * radius_ref * ps[(1, 1)])
}

/// Axial force of the incompressible cylinder, `a = λ^{-1/2}`.
///
/// The bulk stress is `P = μF − pF^{-T}`; the pressure follows from the
/// lateral condition, `p = a(μa + (P̄_s11 + M̄_s11/A)/A)`, and
/// `F_z = πA²(μλ − p/λ) + 2πA P̄_s22`.
pub fn axial_force_incompressible(lambda: f64, mu: f64, surf: &SurfaceModel, radius_ref: f64) -> Result<f64> {
    check_positive("lambda", lambda)?;
    check_positive("mu", mu)?;
    check_positive("radius_ref", radius_ref)?;
    let a = 1.0 / lambda.sqrt();
    let (ps, ms) = base_surface_stress_moment(surf, a, lambda, radius_ref)?;
    let p = a * (mu * a + (ps[(0, 0)] + ms[(0, 0)] / radius_ref) / radius_ref);
    Ok(PI * radius_ref * radius_ref * (mu * lambda - p / lambda) + 2.0 * PI * radius_ref * ps[(1, 1)])
}

fn force_along_branch(lambda: f64, mat: &BulkMaterial, surf: &SurfaceModel, radius_ref: f64) -> Result<f64> {
    let a = solve_azimuthal_stretch(lambda, mat, surf, radius_ref, None)?;
    axial_force(lambda, a, mat, surf, radius_ref)
}

/// Central difference of the axial force along the solved branch `a(λ)` with
/// absolute step `h`.
pub fn dfz_dlambda_with_step(
    lambda: f64,
    mat: &BulkMaterial,
    surf: &SurfaceModel,
    radius_ref: f64,
    h: f64,
) -> Result<f64> {
    check_positive("step", h)?;
    let fp = force_along_branch(lambda + h, mat, surf, radius_ref)?;
    let fm = force_along_branch(lambda - h, mat, surf, radius_ref)?;
    Ok((fp - fm) / (2.0 * h))
}

/// Total derivative `dF_z/dλ` along the base-state branch, step `10⁻⁶ λ`.
pub fn dfz_dlambda(lambda: f64, mat: &BulkMaterial, surf: &SurfaceModel, radius_ref: f64) -> Result<f64> {
    check_positive("lambda", lambda)?;
    dfz_dlambda_with_step(lambda, mat, surf, radius_ref, DFZ_REL_STEP * lambda)
}

/// Root of `dF_z/dλ` on `[lo, hi]` (the limiting point of the force curve).
pub fn limiting_point(mat: &BulkMaterial, surf: &SurfaceModel, radius_ref: f64, (lo, hi): (f64, f64)) -> Result<f64> {
    let f = |l: f64| dfz_dlambda(l, mat, surf, radius_ref);
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    if f_lo.signum() == f_hi.signum() {
        return Err(CurvelastError::NoBracket {
            what: "dF_z/dlambda",
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    crate::rootfind::brent("limiting point", lo, hi, 1e-12, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stress_free_reference() {
        let m = BulkMaterial::new(1.0, 3.0).unwrap();
        let s = SurfaceModel::tension(0.0).unwrap();
        assert_eq!(base_residual(1.0, 1.0, &m, &s, 1.0).unwrap(), 0.0);
        assert!((solve_azimuthal_stretch(1.0, &m, &s, 1.0, None).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn explicit_bracket_without_sign_change() {
        let m = BulkMaterial::new(1.0, 0.0).unwrap();
        let s = SurfaceModel::tension(1.0).unwrap();
        let err = solve_azimuthal_stretch(1.0, &m, &s, 1.0, Some((0.7, 0.9))).unwrap_err();
        assert!(matches!(err, CurvelastError::NoBracket { .. }));
    }
}
