//! Compressible neo-Hookean bulk: energy, base stress, tangent moduli and the
//! incremental stress coefficients of the axisymmetric cylinder problem.
//!
//! The energy density is
//! `W = μ/2 (I₁ − 3 − 2 ln J) + D/2 ((J² − 1)/2 − ln J)`
//! with the homogeneous deformation gradient `F̄ = diag(a, λ, a)` in the basis
//! `(e_θ, e_z, e_r)`.

use crate::error::{CurvelastError, Result};
use crate::tensor_core::{double_contract, Sparsity, Tensor2, Tensor4Block};

/// Compressible neo-Hookean parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BulkMaterial {
    /// Shear modulus `μ > 0`.
    pub mu: f64,
    /// Second modulus `D ≥ 0`; `D → ∞` is the incompressible limit.
    pub d_modulus: f64,
}

impl BulkMaterial {
    pub fn new(mu: f64, d_modulus: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(CurvelastError::InvalidParameters(format!(
                "mu must be positive, got {mu}"
            )));
        }
        if !(d_modulus >= 0.0) || !d_modulus.is_finite() {
            return Err(CurvelastError::InvalidParameters(format!(
                "d_modulus must be nonnegative, got {d_modulus}"
            )));
        }
        Ok(Self { mu, d_modulus })
    }

    /// Material with the given Poisson ratio `ν ∈ [0, 1/2)`, i.e. `D = 2μν/(1 − 2ν)`.
    pub fn from_poisson(mu: f64, nu: f64) -> Result<Self> {
        if !(0.0..0.5).contains(&nu) {
            return Err(CurvelastError::InvalidParameters(format!(
                "Poisson ratio must lie in [0, 0.5), got {nu}"
            )));
        }
        Self::new(mu, 2.0 * mu * nu / (1.0 - 2.0 * nu))
    }

    /// Poisson ratio `ν = D / (2 (D + μ))`.
    pub fn poisson(&self) -> f64 {
        self.d_modulus / (2.0 * (self.d_modulus + self.mu))
    }
}

fn check_stretches(a: f64, lambda: f64) -> Result<()> {
    for (what, v) in [("azimuthal stretch", a), ("axial stretch", lambda)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(CurvelastError::Domain {
                what,
                value: v,
                reason: "stretches must be positive",
            });
        }
    }
    Ok(())
}

/// Energy density at principal stretches `(a, λ, a)`.
pub fn bulk_energy(a: f64, lambda: f64, mat: &BulkMaterial) -> Result<f64> {
    check_stretches(a, lambda)?;
    let j = a * a * lambda;
    let i1 = 2.0 * a * a + lambda * lambda;
    let ln_j = j.ln();
    Ok(0.5 * mat.mu * (i1 - 3.0 - 2.0 * ln_j) + 0.5 * mat.d_modulus * (0.5 * (j * j - 1.0) - ln_j))
}

/// Base first Piola–Kirchhoff stress `P̄ = μ(F̄ − F̄⁻ᵀ) + D/2 (J² − 1) F̄⁻ᵀ`.
pub fn base_pk1(a: f64, lambda: f64, mat: &BulkMaterial) -> Result<Tensor2> {
    check_stretches(a, lambda)?;
    let (mu, d) = (mat.mu, mat.d_modulus);
    let p11 = mu * (a - 1.0 / a) + 0.5 * d * (a.powi(3) * lambda * lambda - 1.0 / a);
    let p22 = mu * (lambda - 1.0 / lambda) + 0.5 * d * (a.powi(4) * lambda - 1.0 / lambda);
    Ok(Tensor2::diag(p11, p22, p11))
}

/// Axisymmetric incremental displacement gradient with radial displacement
/// `u(z, r)` and axial displacement `v(z, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DisplacementGradient {
    pub u_over_r: f64,
    pub u_r: f64,
    pub u_z: f64,
    pub v_z: f64,
    pub v_r: f64,
}

impl DisplacementGradient {
    /// Components in the basis `(e_θ, e_z, e_r)`:
    /// `η = u/r e_θθ + v_z e_zz + v_r e_zr + u_z e_rz + u_r e_rr`.
    pub fn to_tensor(&self) -> Tensor2 {
        let mut eta = Tensor2::zero();
        eta[(0, 0)] = self.u_over_r;
        eta[(1, 1)] = self.v_z;
        eta[(1, 2)] = self.v_r;
        eta[(2, 1)] = self.u_z;
        eta[(2, 2)] = self.u_r;
        eta
    }

    fn as_array(&self) -> [f64; 5] {
        [self.u_over_r, self.u_r, self.u_z, self.v_z, self.v_r]
    }
}

/// Coefficients of the five nonzero incremental bulk stress components.
///
/// `rows[c][g]` multiplies gradient entry `g` (ordered `u/r, ∂u/∂r, ∂u/∂z,
/// ∂v/∂z, ∂v/∂r`) in component `c` (ordered `χ₁₁, χ₂₂, χ₃₃, χ₂₃, χ₃₂`, with
/// `1, 2, 3 = θ, z, r`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncrementalBulkCoeffs {
    pub rows: [[f64; 5]; 5],
}

impl IncrementalBulkCoeffs {
    pub const U_OVER_R: usize = 0;
    pub const U_R: usize = 1;
    pub const U_Z: usize = 2;
    pub const V_Z: usize = 3;
    pub const V_R: usize = 4;

    pub const CHI11: usize = 0;
    pub const CHI22: usize = 1;
    pub const CHI33: usize = 2;
    pub const CHI23: usize = 3;
    pub const CHI32: usize = 4;

    /// Tensor position `(i, j)` of each stored component.
    pub const POSITIONS: [(usize, usize); 5] = [(0, 0), (1, 1), (2, 2), (1, 2), (2, 1)];

    pub fn coeff(&self, component: usize, gradient_entry: usize) -> f64 {
        self.rows[component][gradient_entry]
    }

    /// Incremental actual stress `χ` for the given displacement gradient.
    pub fn evaluate(&self, grad: &DisplacementGradient) -> Tensor2 {
        let g = grad.as_array();
        let mut chi = Tensor2::zero();
        for (row, &(i, j)) in self.rows.iter().zip(Self::POSITIONS.iter()) {
            chi[(i, j)] = row.iter().zip(g.iter()).map(|(c, x)| c * x).sum();
        }
        chi
    }
}

/// Closed-form coefficient table of the incremental stress `χ`.
pub fn incremental_bulk_coeffs(a: f64, lambda: f64, mat: &BulkMaterial) -> Result<IncrementalBulkCoeffs> {
    check_stretches(a, lambda)?;
    let (mu, d) = (mat.mu, mat.d_modulus);
    let a2 = a * a;
    let j2 = a2 * a2 * lambda * lambda;
    let denom = 2.0 * a2 * lambda;
    let normal_theta = (2.0 * mu * (a2 + 1.0) + d * (j2 + 1.0)) / denom;
    let normal_z = (2.0 * mu * (lambda * lambda + 1.0) + d * (j2 + 1.0)) / denom;
    let shear = (2.0 * mu + d * (1.0 - j2)) / denom;
    let cross = d * a2 * lambda;

    type C = IncrementalBulkCoeffs;
    let mut rows = [[0.0; 5]; 5];
    rows[C::CHI11][C::U_OVER_R] = normal_theta;
    rows[C::CHI11][C::U_R] = cross;
    rows[C::CHI11][C::V_Z] = cross;
    rows[C::CHI22][C::V_Z] = normal_z;
    rows[C::CHI22][C::U_R] = cross;
    rows[C::CHI22][C::U_OVER_R] = cross;
    rows[C::CHI33][C::U_R] = normal_theta;
    rows[C::CHI33][C::V_Z] = cross;
    rows[C::CHI33][C::U_OVER_R] = cross;
    rows[C::CHI23][C::U_Z] = shear;
    rows[C::CHI23][C::V_R] = mu / lambda;
    rows[C::CHI32][C::V_R] = shear;
    rows[C::CHI32][C::U_Z] = mu * lambda / a2;
    Ok(IncrementalBulkCoeffs { rows })
}

/// Mixed tangent moduli `𝔸 = ∂P/∂F` at `F̄ = diag(a, λ, a)`, assembled from the
/// metric form `𝔸_ijkl = 4 F_ia F_kc ∂²W/∂C_aj∂C_cl + 2 δ_ik ∂W/∂C_lj`.
///
/// `∂W/∂C = μ/2 (I − C⁻¹) + D/4 (J² − 1) C⁻¹`; the second derivative uses the
/// symmetrized `∂C⁻¹/∂C`.
pub fn bulk_moduli_check(a: f64, lambda: f64, mat: &BulkMaterial) -> Result<Tensor4Block> {
    check_stretches(a, lambda)?;
    let (mu, d) = (mat.mu, mat.d_modulus);
    let f = [a, lambda, a];
    let c_inv = [1.0 / (a * a), 1.0 / (lambda * lambda), 1.0 / (a * a)];
    let j2 = (a * a * lambda).powi(2);
    let ci = |p: usize, q: usize| if p == q { c_inv[p] } else { 0.0 };
    let s1 = |p: usize, q: usize| {
        if p == q {
            0.5 * mu * (1.0 - c_inv[p]) + 0.25 * d * (j2 - 1.0) * c_inv[p]
        } else {
            0.0
        }
    };
    let s2 = |p: usize, q: usize, r: usize, s: usize| {
        let d_cinv = -0.5 * (ci(p, r) * ci(q, s) + ci(p, s) * ci(q, r));
        0.25 * d * j2 * ci(p, q) * ci(r, s) + (0.25 * d * (j2 - 1.0) - 0.5 * mu) * d_cinv
    };
    let mut out = Tensor4Block::zeros(Sparsity::Full);
    for (i, j, k, l) in crate::tensor_core::all_indices() {
        // F̄ is diagonal, so the sums over a and c collapse to a = i, c = k.
        let mut v = 4.0 * f[i] * f[k] * s2(i, j, k, l);
        if i == k {
            v += 2.0 * s1(l, j);
        }
        out.set(i, j, k, l, v);
    }
    Ok(out)
}

/// Incremental stress from the moduli: `χ = J̄⁻¹ (𝔸 : (η F̄)) F̄ᵀ`.
pub fn chi_from_moduli(moduli: &Tensor4Block, a: f64, lambda: f64, eta: &Tensor2) -> Tensor2 {
    let f = Tensor2::diag(a, lambda, a);
    let p1 = double_contract(moduli, &eta.dot(&f));
    p1.dot(&f.transpose()) * (1.0 / (a * a * lambda))
}
