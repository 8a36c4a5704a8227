//! Finite-difference oracle for the surface stiffness blocks.
//!
//! The oracle never touches a modulus formula. It evaluates the surface
//! stress `P_s = ∂Ψ/∂F_s` and the moment `F_s M_s` (with `M_s = ∂Ψ/∂κ`) from
//! the first invariant derivatives only,
//!
//! `P_s = F_s [2Ψ₁ I + 2I₂Ψ₂ C⁻¹ + 2Ψ₅ κ + Ψ₆ (κe − eκ)]`,
//! `M_s = Ψ₃ I + Ψ₄ (tr κ I − κ) + Ψ₅ C + ½Ψ₆ (eC − Ce)`,
//!
//! and differentiates them by central differences along
//! `F_s = F̄_s + ε η F̄_s` and `κ = κ̄ + ε F̄ᵀ ρ F̄`. The pushed-forward
//! responses `J̄⁻¹ (dP_s) F̄ᵀ` and `J̄⁻¹ d(F_s M_s) F̄ᵀ` give the columns of
//! the four blocks. All 81 components of each block are filled, so entries
//! that the analytic paths assume to vanish are checked as well.

use nalgebra::{Matrix2, Matrix3x2};

use super::energy::InvariantEnergy;
use super::moduli::SurfaceModuli;
use super::{SurfaceInvariants, SurfacePrincipalState};
use crate::error::{CurvelastError, Result};
use crate::tensor_core::{Sparsity, Tensor2, Tensor4Block};

/// Smallest accepted relative step.
pub const FD_STEP_MIN: f64 = 1e-7;
/// Largest accepted relative step.
pub const FD_STEP_MAX: f64 = 1e-4;

fn to2(m: &Matrix2<f64>) -> [[f64; 2]; 2] {
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

/// Surface stress `P_s` and `F_s M_s` at a general `(F_s, κ)`.
fn stress_and_moment(
    energy: &dyn InvariantEnergy,
    fs: &Matrix3x2<f64>,
    kappa: &Matrix2<f64>,
) -> (Matrix3x2<f64>, Matrix3x2<f64>) {
    let c = fs.transpose() * fs;
    let c_inv = c.try_inverse().expect("surface metric must be invertible");
    let e = Matrix2::new(0.0, 1.0, -1.0, 0.0);
    let inv = SurfaceInvariants::from_tensors(&to2(&c), &to2(kappa));
    let d = energy.derivatives(&inv);
    let id = Matrix2::identity();
    let i2 = inv.i[1];
    let ps_inner =
        id * (2.0 * d.p(1)) + c_inv * (2.0 * i2 * d.p(2)) + kappa * (2.0 * d.p(5)) + (kappa * e - e * kappa) * d.p(6);
    let ms = id * d.p(3) + (id * kappa.trace() - kappa) * d.p(4) + c * d.p(5) + (e * c - c * e) * (0.5 * d.p(6));
    (fs * ps_inner, fs * ms)
}

/// Embeds a `3×2` surface tensor into the `3×3` component matrix.
fn embed(m: &Matrix3x2<f64>) -> Tensor2 {
    let mut t = Tensor2::zero();
    for i in 0..3 {
        for j in 0..2 {
            t[(i, j)] = m[(i, j)];
        }
    }
    t
}

/// Finite-difference stiffness blocks for any invariant-form energy at an
/// aligned state, with relative step `step ∈ [1e-7, 1e-4]`.
pub fn fd_surface_moduli_oracle(
    energy: &dyn InvariantEnergy,
    s: &SurfacePrincipalState,
    step: f64,
) -> Result<SurfaceModuli> {
    if !(FD_STEP_MIN..=FD_STEP_MAX).contains(&step) {
        return Err(CurvelastError::InvalidStep {
            step,
            min: FD_STEP_MIN,
            max: FD_STEP_MAX,
        });
    }
    let s = SurfacePrincipalState::new(s.lam1, s.lam2, s.kap1, s.kap2, s.radius_ref)?;
    let js = s.jacobian();
    let fbar = Matrix3x2::new(s.lam1, 0.0, 0.0, s.lam2, 0.0, 0.0);
    let f2 = Matrix2::new(s.lam1, 0.0, 0.0, s.lam2);
    let kbar = Matrix2::new(s.kap1, 0.0, 0.0, s.kap2);
    let fbar3 = Tensor2::diag(s.lam1, s.lam2, 0.0);
    let push = |d: &Matrix3x2<f64>| embed(d).dot(&fbar3.transpose()) * (1.0 / js);

    let mut a = Tensor4Block::zeros(Sparsity::Full);
    let mut b = Tensor4Block::zeros(Sparsity::Full);
    let mut c = Tensor4Block::zeros(Sparsity::Full);
    let mut d = Tensor4Block::zeros(Sparsity::Full);

    for k in 0..3 {
        for l in 0..2 {
            // F_s = F̄_s + ε e_k ⊗ e_l F̄_s: row k of the perturbation is row l of F̄_s.
            let mut dir = Matrix3x2::zeros();
            for col in 0..2 {
                dir[(k, col)] = fbar[(l, col)];
            }
            let (pp, mp) = stress_and_moment(energy, &(fbar + dir * step), &kbar);
            let (pm, mm) = stress_and_moment(energy, &(fbar - dir * step), &kbar);
            let sigma = push(&((pp - pm) / (2.0 * step)));
            let mom = push(&((mp - mm) / (2.0 * step)));
            for i in 0..3 {
                for j in 0..3 {
                    a.set(i, j, k, l, sigma[(i, j)]);
                    c.set(i, j, k, l, mom[(i, j)]);
                }
            }
        }
    }
    for k in 0..2 {
        for l in 0..2 {
            let mut rho = Matrix2::zeros();
            rho[(k, l)] += 0.5;
            rho[(l, k)] += 0.5;
            let dir = f2.transpose() * rho * f2;
            let (pp, mp) = stress_and_moment(energy, &fbar, &(kbar + dir * step));
            let (pm, mm) = stress_and_moment(energy, &fbar, &(kbar - dir * step));
            let sigma = push(&((pp - pm) / (2.0 * step)));
            let mom = push(&((mp - mm) / (2.0 * step)));
            for i in 0..3 {
                for j in 0..3 {
                    b.set(i, j, k, l, sigma[(i, j)]);
                    d.set(i, j, k, l, mom[(i, j)]);
                }
            }
        }
    }
    Ok(SurfaceModuli {
        a_s: a,
        b_s: b,
        c_s: c,
        d_s: d,
        js_bar: js,
    })
}
