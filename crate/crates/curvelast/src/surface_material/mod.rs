//! Surface constitutive laws for the lateral surface of the cylinder.
//!
//! Three energies are shipped, all special cases of the generic principal form
//!
//! `Ψᵖ(λ₁, λ₂, κ₁, κ₂) = γ J + α/2 (J − 1)² + β/2 · J · X²`,
//! `J = λ₁λ₂`, `X = κ₁/(2λ₁²) + κ₂/(2λ₂²) + H₀`,
//!
//! where `λ_α` are the principal surface stretches and `κ_α` the principal
//! relative curvatures (referential, `κ = −F_sᵀ b F_s`). The same energy written
//! through the six invariants of `(C_s, κ)` is
//!
//! `Ψⁱ = γ S + α/2 (S − 1)² + β/2 · S · X²`, `S = √I₂`,
//! `X = (I₁I₃ − I₅)/(2I₂) + H₀`.
//!
//! Submodules:
//! * [`energy`]: generic (dual-number) energies, the invariant derivatives
//!   and a polynomial test energy;
//! * [`moduli`]: the four stiffness blocks `𝒜_s, ℬ_s, 𝒞_s, 𝒟_s` from the
//!   principal form and from the invariant form;
//! * [`oracle`]: the finite-difference stiffness oracle;
//! * [`incremental`]: the incremental surface stress `χ_s` of the cylinder.

pub mod energy;
pub mod incremental;
pub mod moduli;
pub mod oracle;

pub use energy::{invariant_derivatives, surface_energy, InvariantDerivs, InvariantEnergy, PolynomialInvariantEnergy};
pub use incremental::{helfrich_surface_coeffs, incremental_surface_coeffs, SurfaceCoeffTable, SurfaceJet};
pub use moduli::{surface_moduli_aligned, surface_moduli_invariant, SurfaceModuli};
pub use oracle::{fd_surface_moduli_oracle, FD_STEP_MAX, FD_STEP_MIN};

use crate::error::{CurvelastError, Result};
use crate::tensor_core::Tensor2;

/// Which surface energy is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    /// `Ψ = γ J` only.
    SurfaceTensionOnly,
    /// `Ψ = γ J + α/2 (J − 1)²`.
    StretchResistance,
    /// `Ψ = γ J + β/2 · J · X²` (Helfrich bending).
    HelfrichBending,
    /// All four parameters active at once.
    GenericPrincipal,
}

/// A surface energy together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceModel {
    pub kind: SurfaceKind,
    /// Surface tension `γ ≥ 0` (force per length).
    pub gamma: f64,
    /// Stretching rigidity `α_s ≥ 0` (force per length).
    pub alpha_s: f64,
    /// Bending rigidity `β_s ≥ 0` (force times length).
    pub beta_s: f64,
    /// Spontaneous curvature `H₀` (inverse length).
    pub h0: f64,
}

impl SurfaceModel {
    /// Validating constructor.
    pub fn new(kind: SurfaceKind, gamma: f64, alpha_s: f64, beta_s: f64, h0: f64) -> Result<Self> {
        for (name, v) in [("gamma", gamma), ("alpha_s", alpha_s), ("beta_s", beta_s)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(CurvelastError::InvalidParameters(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        if !h0.is_finite() {
            return Err(CurvelastError::InvalidParameters(format!(
                "h0 must be finite, got {h0}"
            )));
        }
        let bad = match kind {
            SurfaceKind::SurfaceTensionOnly => alpha_s != 0.0 || beta_s != 0.0,
            SurfaceKind::StretchResistance => beta_s != 0.0,
            SurfaceKind::HelfrichBending => alpha_s != 0.0,
            SurfaceKind::GenericPrincipal => false,
        };
        if bad {
            return Err(CurvelastError::InvalidParameters(format!(
                "{kind:?} does not accept alpha_s = {alpha_s}, beta_s = {beta_s}"
            )));
        }
        Ok(Self {
            kind,
            gamma,
            alpha_s,
            beta_s,
            h0,
        })
    }

    pub fn tension(gamma: f64) -> Result<Self> {
        Self::new(SurfaceKind::SurfaceTensionOnly, gamma, 0.0, 0.0, 0.0)
    }

    pub fn stretch(gamma: f64, alpha_s: f64) -> Result<Self> {
        Self::new(SurfaceKind::StretchResistance, gamma, alpha_s, 0.0, 0.0)
    }

    pub fn helfrich(gamma: f64, beta_s: f64, h0: f64) -> Result<Self> {
        Self::new(SurfaceKind::HelfrichBending, gamma, 0.0, beta_s, h0)
    }

    pub fn generic(gamma: f64, alpha_s: f64, beta_s: f64, h0: f64) -> Result<Self> {
        Self::new(SurfaceKind::GenericPrincipal, gamma, alpha_s, beta_s, h0)
    }

    /// The model expressed in units where the shear modulus `mu` and the
    /// reference radius `radius` equal one.
    pub fn nondimensional(&self, mu: f64, radius: f64) -> Self {
        Self {
            kind: self.kind,
            gamma: self.gamma / (mu * radius),
            alpha_s: self.alpha_s / (mu * radius),
            beta_s: self.beta_s / (mu * radius.powi(3)),
            h0: self.h0 * radius,
        }
    }
}

/// Principal surface stretches and relative curvatures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePrincipalState {
    pub lam1: f64,
    pub lam2: f64,
    pub kap1: f64,
    pub kap2: f64,
    /// Reference radius `A` (only used for bookkeeping).
    pub radius_ref: f64,
}

impl SurfacePrincipalState {
    pub fn new(lam1: f64, lam2: f64, kap1: f64, kap2: f64, radius_ref: f64) -> Result<Self> {
        for (what, v) in [("lam1", lam1), ("lam2", lam2), ("radius_ref", radius_ref)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(CurvelastError::Domain {
                    what,
                    value: v,
                    reason: "surface stretches and the radius must be positive",
                });
            }
        }
        if !kap1.is_finite() || !kap2.is_finite() {
            return Err(CurvelastError::InvalidParameters("curvatures must be finite".into()));
        }
        Ok(Self {
            lam1,
            lam2,
            kap1,
            kap2,
            radius_ref,
        })
    }

    /// Lateral surface of the deformed cylinder: `λ₁ = a`, `λ₂ = λ`,
    /// `κ₁ = a/A`, `κ₂ = 0`.
    pub fn cylinder(a: f64, lambda: f64, radius_ref: f64) -> Result<Self> {
        Self::new(a, lambda, a / radius_ref, 0.0, radius_ref)
    }

    /// Surface Jacobian `J_s = λ₁λ₂`.
    pub fn jacobian(&self) -> f64 {
        self.lam1 * self.lam2
    }

    pub fn invariants(&self) -> SurfaceInvariants {
        SurfaceInvariants::from_principal(self)
    }
}

/// The six invariants of `(C_s, κ)`: `I₁ = tr C_s`, `I₂ = det C_s`,
/// `I₃ = tr κ`, `I₄ = det κ`, `I₅ = tr(C_s κ)`, `I₆ = tr(C_s κ e)` with the
/// permutation `e = e₁⊗e₂ − e₂⊗e₁` in the right-handed `(e_θ, e_z)` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceInvariants {
    pub i: [f64; 6],
}

impl SurfaceInvariants {
    /// Invariants of an aligned state; `I₆` vanishes.
    pub fn from_principal(s: &SurfacePrincipalState) -> Self {
        let (l1s, l2s) = (s.lam1 * s.lam1, s.lam2 * s.lam2);
        Self {
            i: [
                l1s + l2s,
                l1s * l2s,
                s.kap1 + s.kap2,
                s.kap1 * s.kap2,
                l1s * s.kap1 + l2s * s.kap2,
                0.0,
            ],
        }
    }

    /// Invariants of a general `2×2` pair `(C_s, κ)`.
    pub fn from_tensors(c: &[[f64; 2]; 2], kappa: &[[f64; 2]; 2]) -> Self {
        let tr = |m: &[[f64; 2]; 2]| m[0][0] + m[1][1];
        let det = |m: &[[f64; 2]; 2]| m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let mul = |x: &[[f64; 2]; 2], y: &[[f64; 2]; 2]| {
            let mut o = [[0.0; 2]; 2];
            for (r, row) in o.iter_mut().enumerate() {
                for (col, v) in row.iter_mut().enumerate() {
                    *v = x[r][0] * y[0][col] + x[r][1] * y[1][col];
                }
            }
            o
        };
        let e = [[0.0, 1.0], [-1.0, 0.0]];
        let ck = mul(c, kappa);
        Self {
            i: [tr(c), det(c), tr(kappa), det(kappa), tr(&ck), tr(&mul(&ck, &e))],
        }
    }
}

/// Base surface stress `P̄_s` and moment `M̄_s` on the cylinder, both diagonal
/// in `(e_θ, e_z)`: `P̄_s = diag(∂Ψᵖ/∂λ₁, ∂Ψᵖ/∂λ₂)`,
/// `M̄_s = diag(∂Ψᵖ/∂κ₁, ∂Ψᵖ/∂κ₂)` at `(a, λ, a/A, 0)`.
pub fn base_surface_stress_moment(
    model: &SurfaceModel,
    a: f64,
    lambda: f64,
    radius_ref: f64,
) -> Result<(Tensor2, Tensor2)> {
    let s = SurfacePrincipalState::cylinder(a, lambda, radius_ref)?;
    let g = energy::principal_gradient(model, &s);
    Ok((Tensor2::diag(g[0], g[1], 0.0), Tensor2::diag(g[2], g[3], 0.0)))
}
