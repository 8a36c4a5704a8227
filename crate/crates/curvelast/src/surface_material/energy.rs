//! Surface energies, written once over generic dual numbers so that exact
//! first and second derivatives come from forward-mode automatic
//! differentiation.

use nalgebra::SVector;
use num_dual::{gradient, hessian, DualNum};

use super::{SurfaceInvariants, SurfaceModel, SurfacePrincipalState};
use crate::error::{CurvelastError, Result};

/// `Ψᵖ(λ₁, λ₂, κ₁, κ₂)` for any dual-number type.
pub fn principal_energy_generic<T: DualNum<Primitive = f64>>(m: &SurfaceModel, l1: T, l2: T, k1: T, k2: T) -> T {
    let j = l1.clone() * &l2;
    let x = k1 / (l1.clone() * &l1 * 2.0) + k2 / (l2.clone() * &l2 * 2.0) + m.h0;
    let jm1 = j.clone() - 1.0;
    j.clone() * m.gamma + jm1.clone() * jm1 * (0.5 * m.alpha_s) + j * x.clone() * x * (0.5 * m.beta_s)
}

/// `Ψⁱ(I₁, …, I₆)` for any dual-number type. The shipped energies do not
/// depend on `I₄` or `I₆`.
pub fn invariant_energy_generic<T: DualNum<Primitive = f64>>(m: &SurfaceModel, inv: &[T; 6]) -> T {
    let s = inv[1].sqrt();
    let x = (inv[0].clone() * &inv[2] - &inv[4]) / (inv[1].clone() * 2.0) + m.h0;
    let sm1 = s.clone() - 1.0;
    s.clone() * m.gamma + sm1.clone() * sm1 * (0.5 * m.alpha_s) + s * x.clone() * x * (0.5 * m.beta_s)
}

/// `Ψ₅ = ∂Ψⁱ/∂I₅ = −β X /(2S)` written in principal variables.
fn coupling_generic<T: DualNum<Primitive = f64>>(m: &SurfaceModel, l1: T, l2: T, k1: T, k2: T) -> T {
    let s = l1.clone() * &l2;
    let x = k1 / (l1.clone() * &l1 * 2.0) + k2 / (l2.clone() * &l2 * 2.0) + m.h0;
    -(x * m.beta_s) / (s * 2.0)
}

fn principal_vector(s: &SurfacePrincipalState) -> SVector<f64, 4> {
    SVector::from([s.lam1, s.lam2, s.kap1, s.kap2])
}

fn check_state(s: &SurfacePrincipalState) -> Result<()> {
    for (what, v) in [("lam1", s.lam1), ("lam2", s.lam2)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(CurvelastError::Domain {
                what,
                value: v,
                reason: "surface stretches must be positive",
            });
        }
    }
    Ok(())
}

/// Surface energy per unit reference area.
pub fn surface_energy(model: &SurfaceModel, s: &SurfacePrincipalState) -> Result<f64> {
    check_state(s)?;
    Ok(principal_energy_generic(model, s.lam1, s.lam2, s.kap1, s.kap2))
}

/// Value, gradient and Hessian of `Ψᵖ` in the variable order `(λ₁, λ₂, κ₁, κ₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalDerivs {
    pub value: f64,
    pub grad: [f64; 4],
    pub hess: [[f64; 4]; 4],
}

pub fn principal_derivatives(model: &SurfaceModel, s: &SurfacePrincipalState) -> PrincipalDerivs {
    let (value, g, h) = hessian(
        |x| principal_energy_generic(model, x[0], x[1], x[2], x[3]),
        &principal_vector(s),
    );
    let mut hess = [[0.0; 4]; 4];
    for (r, row) in hess.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            *v = h[(r, c)];
        }
    }
    PrincipalDerivs {
        value,
        grad: [g[0], g[1], g[2], g[3]],
        hess,
    }
}

pub(crate) fn principal_gradient(model: &SurfaceModel, s: &SurfacePrincipalState) -> [f64; 4] {
    principal_derivatives(model, s).grad
}

/// `Ψ₅` and its gradient with respect to `(λ₁, λ₂, κ₁, κ₂)`.
pub fn coupling_psi5(model: &SurfaceModel, s: &SurfacePrincipalState) -> (f64, [f64; 4]) {
    let (v, g) = gradient(
        |x| coupling_generic(model, x[0], x[1], x[2], x[3]),
        &principal_vector(s),
    );
    (v, [g[0], g[1], g[2], g[3]])
}

/// First and second derivatives of an invariant-form energy `Ψⁱ(I₁, …, I₆)`.
///
/// Accessors use the customary one-based labels: `p(5) = Ψ₅ = ∂Ψ/∂I₅`,
/// `pp(1, 6) = Ψ₁₆ = ∂²Ψ/∂I₁∂I₆`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InvariantDerivs {
    pub first: [f64; 6],
    pub second: [[f64; 6]; 6],
}

impl InvariantDerivs {
    pub fn p(&self, i: usize) -> f64 {
        self.first[i - 1]
    }

    pub fn pp(&self, i: usize, j: usize) -> f64 {
        self.second[i - 1][j - 1]
    }
}

/// An energy expressed through the six surface invariants.
pub trait InvariantEnergy {
    fn derivatives(&self, inv: &SurfaceInvariants) -> InvariantDerivs;
}

impl InvariantEnergy for SurfaceModel {
    fn derivatives(&self, inv: &SurfaceInvariants) -> InvariantDerivs {
        invariant_derivatives(self, inv)
    }
}

/// Exact derivatives of `Ψⁱ` for a shipped model.
pub fn invariant_derivatives(model: &SurfaceModel, inv: &SurfaceInvariants) -> InvariantDerivs {
    let (_, g, h) = hessian(
        |x| {
            let v = [x[0], x[1], x[2], x[3], x[4], x[5]];
            invariant_energy_generic(model, &v)
        },
        &SVector::from(inv.i),
    );
    let mut out = InvariantDerivs::default();
    for r in 0..6 {
        out.first[r] = g[r];
        for c in 0..6 {
            out.second[r][c] = h[(r, c)];
        }
    }
    out
}

/// Quadratic energy in the invariants, used to exercise every coupling term
/// (including those of `I₄` and `I₆`) that the shipped models leave at zero:
/// `Ψ = Σ gᵢ (Iᵢ − cᵢ) + ½ Σ Hᵢⱼ (Iᵢ − cᵢ)(Iⱼ − cⱼ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialInvariantEnergy {
    pub center: [f64; 6],
    pub linear: [f64; 6],
    pub quadratic: [[f64; 6]; 6],
}

impl PolynomialInvariantEnergy {
    /// Builds the energy; the quadratic coefficients are symmetrized.
    pub fn new(center: [f64; 6], linear: [f64; 6], quadratic: [[f64; 6]; 6]) -> Self {
        let mut q = [[0.0; 6]; 6];
        for r in 0..6 {
            for c in 0..6 {
                q[r][c] = 0.5 * (quadratic[r][c] + quadratic[c][r]);
            }
        }
        Self {
            center,
            linear,
            quadratic: q,
        }
    }

    pub fn value(&self, inv: &SurfaceInvariants) -> f64 {
        let d: Vec<f64> = (0..6).map(|n| inv.i[n] - self.center[n]).collect();
        let mut v = 0.0;
        for r in 0..6 {
            v += self.linear[r] * d[r];
            for c in 0..6 {
                v += 0.5 * self.quadratic[r][c] * d[r] * d[c];
            }
        }
        v
    }
}

impl InvariantEnergy for PolynomialInvariantEnergy {
    fn derivatives(&self, inv: &SurfaceInvariants) -> InvariantDerivs {
        let mut out = InvariantDerivs {
            first: self.linear,
            second: self.quadratic,
        };
        for r in 0..6 {
            for c in 0..6 {
                out.first[r] += self.quadratic[r][c] * (inv.i[c] - self.center[c]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_and_invariant_energies_agree() {
        let m = SurfaceModel::generic(0.7, 1.3, 2.1, -0.8).unwrap();
        let s = SurfacePrincipalState::new(1.2, 0.9, 0.6, -0.3, 1.0).unwrap();
        let ep = surface_energy(&m, &s).unwrap();
        let ei = invariant_energy_generic(&m, &s.invariants().i);
        assert!((ep - ei).abs() < 1e-14 * ep.abs().max(1.0));
    }

    #[test]
    fn coupling_matches_invariant_derivative() {
        let m = SurfaceModel::helfrich(0.3, 1.7, 0.4).unwrap();
        let s = SurfacePrincipalState::new(0.8, 1.4, 0.9, 0.1, 1.0).unwrap();
        let d = invariant_derivatives(&m, &s.invariants());
        let (p5, _) = coupling_psi5(&m, &s);
        assert!((d.p(5) - p5).abs() < 1e-14);
    }
}
