//! Incremental surface stress `χ_s` of the cylinder under an axisymmetric
//! perturbation `u(z) e_r + v(z) e_z` of its lateral surface.
//!
//! `χ_s` is linear in the jet `(u, u_z, u_zz, u_zzz, v_z, v_zz)` evaluated on
//! the surface `r = aA`, so it is stored as a coefficient table. The
//! production table is assembled generically from the stiffness blocks:
//!
//! `χ_s = σ_s − b̄ m_s + n̄ ⊗ ī_s div_s(m_s) + θ_s`, with
//! `σ_s = 𝒜_s : η_s + ℬ_s : ρ_s`, `m_s = 𝒞_s : η_s + 𝒟_s : ρ_s`,
//! `θ_s = J̄⁻¹[(b̄ η_s − ω_s) F̄_s M̄_s F̄_sᵀ − (η_sᵀ n̄) ⊗ (ī_s l̄) − n̄ ⊗ (ξ_s l̄)]`,
//!
//! where on the cylinder `b̄ = −1/(aA) e_θθ`, `l̄ = −(a M̄_s,θθ / A) e_r`, and
//! `η_s = u/(aA) e_θθ + v_z e_zz + u_z e_rz`,
//! `ρ_s = u/(aA)² e_θθ − u_zz e_zz`, `ω_s = u_zz e_zz`,
//! `ξ_s = u/(aA) e_θθ + v_z e_zz − u_z e_zr`.
//! The surface divergence of `m_s` on the deformed cylinder of radius
//! `ρ = aA` has components `(∂_z m_θz + m_rθ/ρ, ∂_z m_zz, ∂_z m_rz − m_θθ/ρ)`.

use num_complex::Complex64;

use super::moduli::{surface_moduli_aligned, SurfaceModuli};
use super::{base_surface_stress_moment, SurfaceModel, SurfacePrincipalState};
use crate::error::Result;
use crate::tensor_core::{double_contract, Tensor2, NORMAL};

/// Surface values of the perturbation and its axial derivatives, ordered
/// `u, ∂u/∂z, ∂²u/∂z², ∂³u/∂z³, ∂v/∂z, ∂²v/∂z²`.
pub type SurfaceJet<T> = [T; 6];

/// Jet slot indices.
pub mod slot {
    pub const U: usize = 0;
    pub const U_Z: usize = 1;
    pub const U_ZZ: usize = 2;
    pub const U_ZZZ: usize = 3;
    pub const V_Z: usize = 4;
    pub const V_ZZ: usize = 5;
}

/// `coeffs[i][j][n]` multiplies jet slot `n` in `χ_s,ij`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceCoeffTable {
    pub coeffs: [[[f64; 6]; 3]; 3],
}

impl SurfaceCoeffTable {
    pub fn coeff(&self, i: usize, j: usize, slot: usize) -> f64 {
        self.coeffs[i][j][slot]
    }

    pub fn evaluate(&self, jet: &SurfaceJet<f64>) -> Tensor2 {
        let mut out = Tensor2::zero();
        for i in 0..3 {
            for j in 0..3 {
                out[(i, j)] = self.coeffs[i][j].iter().zip(jet).map(|(c, x)| c * x).sum();
            }
        }
        out
    }

    /// One component for a complex jet (used with `e^{ikz}` modes).
    pub fn component_complex(&self, i: usize, j: usize, jet: &SurfaceJet<Complex64>) -> Complex64 {
        self.coeffs[i][j].iter().zip(jet).map(|(c, x)| x * *c).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .flatten()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

struct CylinderGeometry {
    a: f64,
    lambda: f64,
    radius_ref: f64,
    m11: f64,
    m22: f64,
}

impl CylinderGeometry {
    fn rho(&self) -> f64 {
        self.a * self.radius_ref
    }

    fn eta(&self, u: f64, u_z: f64, v_z: f64) -> Tensor2 {
        let mut t = Tensor2::zero();
        t[(0, 0)] = u / self.rho();
        t[(1, 1)] = v_z;
        t[(NORMAL, 1)] = u_z;
        t
    }

    fn curvature_perturbation(&self, u: f64, u_zz: f64) -> Tensor2 {
        Tensor2::diag(u / self.rho().powi(2), -u_zz, 0.0)
    }
}

fn assemble(moduli: &SurfaceModuli, g: &CylinderGeometry, jet: &SurfaceJet<f64>) -> Tensor2 {
    use slot::*;
    let rho = g.rho();
    let js = g.a * g.lambda;
    let eta0 = g.eta(jet[U], jet[U_Z], jet[V_Z]);
    let rho0 = g.curvature_perturbation(jet[U], jet[U_ZZ]);
    // The axial derivative of the fields shifts every jet slot by one.
    let eta1 = g.eta(jet[U_Z], jet[U_ZZ], jet[V_ZZ]);
    let rho1 = g.curvature_perturbation(jet[U_Z], jet[U_ZZZ]);

    let sigma = double_contract(&moduli.a_s, &eta0) + double_contract(&moduli.b_s, &rho0);
    let m0 = double_contract(&moduli.c_s, &eta0) + double_contract(&moduli.d_s, &rho0);
    let m1 = double_contract(&moduli.c_s, &eta1) + double_contract(&moduli.d_s, &rho1);

    let b_bar = Tensor2::diag(-1.0 / rho, 0.0, 0.0);
    let div = [
        m1[(0, 1)] + m0[(NORMAL, 0)] / rho,
        m1[(1, 1)],
        m1[(NORMAL, 1)] - m0[(0, 0)] / rho,
    ];

    let omega = Tensor2::diag(0.0, jet[U_ZZ], 0.0);
    let mut xi = Tensor2::diag(jet[U] / rho, jet[V_Z], 0.0);
    xi[(1, NORMAL)] = -jet[U_Z];
    let l_bar = [0.0, 0.0, -g.a * g.m11 / g.radius_ref];
    let fmf = Tensor2::diag(g.a * g.a * g.m11, g.lambda * g.lambda * g.m22, 0.0);
    let n = [0.0, 0.0, 1.0];
    let eta_t_n = eta0.transpose().dot_vec(&n);
    let proj_l = [l_bar[0], l_bar[1], 0.0];
    let theta = ((b_bar.dot(&eta0) - omega).dot(&fmf)
        - Tensor2::outer(&eta_t_n, &proj_l)
        - Tensor2::outer(&n, &xi.dot_vec(&l_bar)))
        * (1.0 / js);

    let mut chi = sigma - b_bar.dot(&m0) + theta;
    chi[(NORMAL, 0)] += div[0];
    chi[(NORMAL, 1)] += div[1];
    chi
}

/// Coefficient table of `χ_s` assembled from a given set of stiffness blocks
/// and base moment `M̄_s = diag(m11, m22)`.
pub fn surface_coeffs_from_moduli(
    moduli: &SurfaceModuli,
    a: f64,
    lambda: f64,
    radius_ref: f64,
    m11: f64,
    m22: f64,
) -> SurfaceCoeffTable {
    let g = CylinderGeometry {
        a,
        lambda,
        radius_ref,
        m11,
        m22,
    };
    let mut coeffs = [[[0.0; 6]; 3]; 3];
    for n in 0..6 {
        let mut jet = [0.0; 6];
        jet[n] = 1.0;
        let chi = assemble(moduli, &g, &jet);
        for i in 0..3 {
            for j in 0..3 {
                coeffs[i][j][n] = chi[(i, j)];
            }
        }
    }
    SurfaceCoeffTable { coeffs }
}

/// Production coefficient table of `χ_s` for any shipped model.
pub fn incremental_surface_coeffs(
    model: &SurfaceModel,
    a: f64,
    lambda: f64,
    radius_ref: f64,
) -> Result<SurfaceCoeffTable> {
    let s = SurfacePrincipalState::cylinder(a, lambda, radius_ref)?;
    let moduli = surface_moduli_aligned(model, &s)?;
    let (_, m_bar) = base_surface_stress_moment(model, a, lambda, radius_ref)?;
    Ok(surface_coeffs_from_moduli(
        &moduli,
        a,
        lambda,
        radius_ref,
        m_bar[(0, 0)],
        m_bar[(1, 1)],
    ))
}

/// Closed-form table of the three components of `χ_s` that enter the
/// boundary conditions, for the Helfrich energy `γJ + β/2 J X²` (any
/// `α_s` contribution is ignored):
///
/// `χ_s11 = (γ + β(4H₀²a²A² − 1)/(8a²A²)) v_z + β/(4a³A³) u − βH₀/2 u_zz`,
/// `χ_s22 = (γ/(aA) + β(4H₀²a²A² − 1)/(8a³A³)) u`,
/// `χ_s32 = (γ + β(4H₀²a²A² + 4H₀aA − 1)/(8a²A²)) u_z − β/4 u_zzz`.
pub fn helfrich_surface_coeffs(
    model: &SurfaceModel,
    a: f64,
    lambda: f64,
    radius_ref: f64,
) -> Result<SurfaceCoeffTable> {
    SurfacePrincipalState::cylinder(a, lambda, radius_ref)?;
    use slot::*;
    let (g, b, h0) = (model.gamma, model.beta_s, model.h0);
    let r = a * radius_ref;
    let r2 = r * r;
    let mut coeffs = [[[0.0; 6]; 3]; 3];
    coeffs[0][0][V_Z] = g + b / (8.0 * r2) * (4.0 * h0 * h0 * r2 - 1.0);
    coeffs[0][0][U] = b / (4.0 * r2 * r);
    coeffs[0][0][U_ZZ] = -b * h0 / 2.0;
    coeffs[1][1][U] = g / r + b / (8.0 * r2 * r) * (4.0 * h0 * h0 * r2 - 1.0);
    coeffs[NORMAL][1][U_Z] = g + b / (8.0 * r2) * (4.0 * h0 * h0 * r2 + 4.0 * h0 * r - 1.0);
    coeffs[NORMAL][1][U_ZZZ] = -b / 4.0;
    Ok(SurfaceCoeffTable { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tension_only_coefficients() {
        let m = SurfaceModel::helfrich(1.0, 0.0, 0.0).unwrap();
        let t = incremental_surface_coeffs(&m, 0.9, 1.2, 1.0).unwrap();
        assert!((t.coeff(0, 0, slot::V_Z) - 1.0).abs() < 1e-14);
        assert!((t.coeff(2, 1, slot::U_Z) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bending_coefficients_at_rest() {
        let m = SurfaceModel::helfrich(0.0, 8.0, 0.0).unwrap();
        let t = incremental_surface_coeffs(&m, 1.0, 1.0, 1.0).unwrap();
        assert!((t.coeff(0, 0, slot::U) - 2.0).abs() < 1e-13);
        assert!(t.coeff(0, 0, slot::U_ZZ).abs() < 1e-13);
    }
}
