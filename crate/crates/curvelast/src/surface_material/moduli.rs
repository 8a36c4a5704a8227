//! The four surface stiffness blocks.
//!
//! For perturbations `η` of the surface deformation and `ρ` of the relative
//! curvature (both pushed forward to the current configuration) the
//! incremental surface stress and moment are
//! `σ_s = 𝒜_s : η + ℬ_s : ρ` and `m_s = 𝒞_s : η + 𝒟_s : ρ`.
//! Every block stores the moduli themselves, i.e. the quantities `J̄_s 𝒜_s`
//! etc. divided by the surface Jacobian `J̄_s = λ̄₁λ̄₂`.
//!
//! `𝒜_s` and `𝒞_s` carry the transverse entries `(r, α, r, β)` in addition
//! to the in-plane ones; `ℬ_s` and `𝒟_s` act on the symmetric `ρ` and are
//! stored symmetrized in their last index pair.

use super::energy::{coupling_psi5, principal_derivatives, InvariantDerivs, PrincipalDerivs};
use super::{SurfaceModel, SurfacePrincipalState};
use crate::error::Result;
use crate::tensor_core::{Sparsity, Tensor4Block, NORMAL};

/// Relative separation below which two principal values are treated as equal
/// and the shear entries are evaluated through their analytic limits.
pub const DEGENERACY_TOL: f64 = 1e-7;

/// The stiffness blocks of a surface energy at one state.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceModuli {
    pub a_s: Tensor4Block,
    pub b_s: Tensor4Block,
    pub c_s: Tensor4Block,
    pub d_s: Tensor4Block,
    /// Surface Jacobian `J̄_s = λ̄₁λ̄₂`.
    pub js_bar: f64,
}

impl SurfaceModuli {
    pub fn zeros(js_bar: f64) -> Self {
        Self {
            a_s: Tensor4Block::zeros(Sparsity::InPlaneWithTransverse),
            b_s: Tensor4Block::zeros(Sparsity::InPlane),
            c_s: Tensor4Block::zeros(Sparsity::InPlaneWithTransverse),
            d_s: Tensor4Block::zeros(Sparsity::InPlane),
            js_bar,
        }
    }

    pub fn blocks(&self) -> [(&'static str, &Tensor4Block); 4] {
        [
            ("A_s", &self.a_s),
            ("B_s", &self.b_s),
            ("C_s", &self.c_s),
            ("D_s", &self.d_s),
        ]
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks().iter().fold(0.0_f64, |m, (_, b)| m.max(b.max_abs()))
    }
}

fn nearly_equal(x: f64, y: f64, scale: f64) -> bool {
    (x - y).abs() <= DEGENERACY_TOL * scale
}

/// The invariant-form potentials `(Ψ₁, Ψ₂, Ψ₃, Ψ₄)` recovered from the
/// principal gradient of `Ψᵖ` and the model's `Ψ₅`.
///
/// With `Pα = ∂Ψᵖ/∂λα /(2λα) − κα Ψ₅ = Ψ₁ + λβ² Ψ₂` and
/// `Kα = ∂Ψᵖ/∂κα − λα² Ψ₅ = Ψ₃ + κβ Ψ₄`, the pairs are solved directly when
/// the principal values are distinct and through the derivative along the
/// antisymmetric direction when they coincide.
pub fn shear_potentials(p: &PrincipalDerivs, psi5: (f64, [f64; 4]), s: &SurfacePrincipalState) -> [f64; 4] {
    let (l1, l2, k1, k2) = (s.lam1, s.lam2, s.kap1, s.kap2);
    let (g, h) = (&p.grad, &p.hess);
    let (c5, dc5) = psi5;

    let p1 = g[0] / (2.0 * l1) - k1 * c5;
    let p2 = g[1] / (2.0 * l2) - k2 * c5;
    let (psi1, psi2) = if nearly_equal(l1, l2, l1.max(l2)) {
        let d1p1 = h[0][0] / (2.0 * l1) - g[0] / (2.0 * l1 * l1) - k1 * dc5[0];
        let d2p1 = h[0][1] / (2.0 * l1) - k1 * dc5[1];
        let d1p2 = h[1][0] / (2.0 * l2) - k2 * dc5[0];
        let d2p2 = h[1][1] / (2.0 * l2) - g[1] / (2.0 * l2 * l2) - k2 * dc5[1];
        let lbar = 0.5 * (l1 + l2);
        let psi2 = -(d1p1 - d1p2 - d2p1 + d2p2) / (4.0 * lbar);
        (0.5 * (p1 + p2) - 0.5 * (l1 * l1 + l2 * l2) * psi2, psi2)
    } else {
        let psi2 = (p1 - p2) / (l2 * l2 - l1 * l1);
        ((l1 * l1 * p1 - l2 * l2 * p2) / (l1 * l1 - l2 * l2), psi2)
    };

    let q1 = g[2] - l1 * l1 * c5;
    let q2 = g[3] - l2 * l2 * c5;
    let (psi3, psi4) = if nearly_equal(k1, k2, 1.0_f64.max(k1.abs()).max(k2.abs())) {
        let d1q1 = h[2][2] - l1 * l1 * dc5[2];
        let d2q1 = h[2][3] - l1 * l1 * dc5[3];
        let d1q2 = h[3][2] - l2 * l2 * dc5[2];
        let d2q2 = h[3][3] - l2 * l2 * dc5[3];
        let psi4 = -(d1q1 - d1q2 - d2q1 + d2q2) / 2.0;
        (0.5 * (q1 + q2) - 0.5 * (k1 + k2) * psi4, psi4)
    } else {
        let psi4 = (q1 - q2) / (k2 - k1);
        (q1 - k2 * psi4, psi4)
    };
    [psi1, psi2, psi3, psi4]
}

/// Stiffness blocks from the principal form `Ψᵖ` of a shipped model.
///
/// Normal entries (`αα ββ` patterns and the transverse entries) are
/// Hessian and gradient entries of `Ψᵖ`:
/// `J̄𝒜_ααββ = λαλβ Ψᵖ,λαλβ`, `J̄𝒜_3α3α = λα Ψᵖ,λα`,
/// `J̄ℬ_ααββ = λαλβ² Ψᵖ,λακβ`, `J̄𝒞_ααββ = λα²(δαβ Ψᵖ,κα + λβ Ψᵖ,λβκα)`,
/// `J̄𝒞_3α3α = λα² Ψᵖ,κα`, `J̄𝒟_ααββ = λα²λβ² Ψᵖ,κακβ`.
///
/// Shear entries (`αβ αβ`, `αβ βα`, `α ≠ β`) cannot be recovered from `Ψᵖ`
/// alone when the energy depends on `I₅`; they use the invariant potentials
/// of [`shear_potentials`] together with the model's `Ψ₅`.
pub fn surface_moduli_aligned(model: &SurfaceModel, s: &SurfacePrincipalState) -> Result<SurfaceModuli> {
    let s = SurfacePrincipalState::new(s.lam1, s.lam2, s.kap1, s.kap2, s.radius_ref)?;
    let p = principal_derivatives(model, &s);
    let c5 = coupling_psi5(model, &s);
    let [psi1, psi2, psi3, psi4] = shear_potentials(&p, c5, &s);
    let psi5 = c5.0;

    let lam = [s.lam1, s.lam2];
    let kap = [s.kap1, s.kap2];
    let js = s.jacobian();
    let i1 = lam[0] * lam[0] + lam[1] * lam[1];
    let i2 = (lam[0] * lam[1]).powi(2);
    let (g, h) = (&p.grad, &p.hess);

    let mut m = SurfaceModuli::zeros(js);
    for a in 0..2 {
        let (la, ka) = (lam[a], kap[a]);
        for b in 0..2 {
            let lb = lam[b];
            m.a_s.set(a, a, b, b, la * lb * h[a][b] / js);
            m.b_s.set(a, a, b, b, la * lb * lb * h[a][2 + b] / js);
            let diag = if a == b { g[2 + a] } else { 0.0 };
            m.c_s.set(a, a, b, b, la * la * (diag + lb * h[b][2 + a]) / js);
            m.d_s.set(a, a, b, b, la * la * lb * lb * h[2 + a][2 + b] / js);
        }
        m.a_s.set(NORMAL, a, NORMAL, a, la * g[a] / js);
        m.c_s.set(NORMAL, a, NORMAL, a, la * la * g[2 + a] / js);

        let b = 1 - a;
        let (lb, kb) = (lam[b], kap[b]);
        m.a_s.set(a, b, a, b, 2.0 * lb * lb * (psi1 + kb * psi5) / js);
        m.a_s.set(a, b, b, a, -2.0 * i2 * psi2 / js);
        m.b_s.set(a, b, a, b, i2 * psi5 / js);
        m.b_s.set(a, b, b, a, i2 * psi5 / js);
        m.c_s.set(a, b, a, b, lb * lb * (psi3 + ka * psi4 + i1 * psi5) / js);
        m.c_s.set(a, b, b, a, i2 * psi5 / js);
        m.d_s.set(a, b, a, b, -0.5 * i2 * psi4 / js);
        m.d_s.set(a, b, b, a, -0.5 * i2 * psi4 / js);
    }
    Ok(m)
}

/// Stiffness blocks from the first and second derivatives of an
/// invariant-form energy `Ψⁱ(I₁, …, I₆)` at an aligned state (`I₆ = 0`).
///
/// Entries odd in `I₆` change sign with the orientation of the pair
/// `(α, β)`; the factor `s = +1` for `(α, β) = (θ, z)` and `s = −1` for
/// `(z, θ)` follows the right-handed permutation used for `I₆`.
pub fn surface_moduli_invariant(d: &InvariantDerivs, s: &SurfacePrincipalState) -> Result<SurfaceModuli> {
    let s = SurfacePrincipalState::new(s.lam1, s.lam2, s.kap1, s.kap2, s.radius_ref)?;
    let lam = [s.lam1, s.lam2];
    let kap = [s.kap1, s.kap2];
    let js = s.jacobian();
    let inv = s.invariants().i;
    let (i1, i2, i3, i4, i5) = (inv[0], inv[1], inv[2], inv[3], inv[4]);
    let p = |i: usize| d.p(i);
    let pp = |i: usize, j: usize| d.pp(i, j);

    let mut m = SurfaceModuli::zeros(js);
    for a in 0..2 {
        let b = 1 - a;
        let sg = if a == 0 { 1.0 } else { -1.0 };
        let (la, lb, ka, kb) = (lam[a], lam[b], kap[a], kap[b]);
        let (la2, lb2) = (la * la, lb * lb);
        let (la4, lb4) = (la2 * la2, lb2 * lb2);
        let dk = ka - kb;
        let dl = la2 - lb2;
        let r1a = pp(1, 6) + lb2 * pp(2, 6) + ka * pp(5, 6);
        let r1b = pp(1, 6) + la2 * pp(2, 6) + kb * pp(5, 6);
        let r3a = pp(3, 6) + kb * pp(4, 6) + la2 * pp(5, 6);
        let r3b = pp(3, 6) + ka * pp(4, 6) + lb2 * pp(5, 6);

        // 𝒜_s
        let aaaa = 2.0 * la2 * p(1)
            + 2.0 * i2 * p(2)
            + 2.0 * la2 * ka * p(5)
            + 4.0 * la4 * pp(1, 1)
            + 8.0 * la2 * i2 * pp(1, 2)
            + 8.0 * la4 * ka * pp(1, 5)
            + 4.0 * i2 * i2 * pp(2, 2)
            + 8.0 * la2 * ka * i2 * pp(2, 5)
            + 4.0 * la4 * ka * ka * pp(5, 5);
        let aabb = 4.0
            * i2
            * (p(2) + pp(1, 1) + i1 * pp(1, 2) + i3 * pp(1, 5) + i2 * pp(2, 2) + i5 * pp(2, 5) + i4 * pp(5, 5));
        let aaab = sg * la * lb * dk * (p(6) + 2.0 * la2 * r1a);
        m.a_s.set(a, a, a, a, aaaa / js);
        m.a_s.set(a, a, b, b, aabb / js);
        m.a_s.set(a, a, a, b, aaab / js);
        m.a_s.set(a, b, a, a, aaab / js);
        m.a_s.set(a, a, b, a, sg * 2.0 * la2 * la * lb * dk * r1a / js);
        m.a_s.set(a, b, b, b, sg * 2.0 * la * lb2 * lb * dk * r1b / js);
        m.a_s.set(
            a,
            b,
            a,
            b,
            (2.0 * lb2 * (p(1) + kb * p(5)) + i2 * dk * dk * pp(6, 6)) / js,
        );
        m.a_s.set(a, b, b, a, -i2 * (2.0 * p(2) - dk * dk * pp(6, 6)) / js);
        m.a_s.set(
            NORMAL,
            a,
            NORMAL,
            a,
            (2.0 * la2 * p(1) + 2.0 * i2 * p(2) + 2.0 * la2 * ka * p(5)) / js,
        );
        m.a_s.set(NORMAL, a, NORMAL, b, sg * la * lb * dk * p(6) / js);

        // ℬ_s
        let baaaa = 2.0
            * la4
            * (p(5)
                + pp(1, 3)
                + kb * pp(1, 4)
                + la2 * pp(1, 5)
                + lb2 * pp(2, 3)
                + kb * lb2 * pp(2, 4)
                + i2 * pp(2, 5)
                + ka * pp(3, 5)
                + i4 * pp(4, 5)
                + ka * la2 * pp(5, 5));
        let baabb = 2.0
            * i2
            * (pp(1, 3)
                + ka * pp(1, 4)
                + lb2 * pp(1, 5)
                + lb2 * pp(2, 3)
                + ka * lb2 * pp(2, 4)
                + lb4 * pp(2, 5)
                + ka * pp(3, 5)
                + ka * ka * pp(4, 5)
                + ka * lb2 * pp(5, 5));
        let baaab = sg * la2 * la * lb * (-dl * r1a - p(6));
        let bshear = i2 * (p(5) - 0.5 * dk * dl * pp(6, 6));
        m.b_s.set(a, a, a, a, baaaa / js);
        m.b_s.set(a, a, b, b, baabb / js);
        m.b_s.set(a, a, a, b, baaab / js);
        m.b_s.set(a, a, b, a, baaab / js);
        m.b_s.set(a, b, a, a, sg * la2 * la * lb * (p(6) + dk * r3a) / js);
        m.b_s.set(a, b, b, b, sg * la * lb2 * lb * (dk * r3b - p(6)) / js);
        m.b_s.set(a, b, a, b, bshear / js);
        m.b_s.set(a, b, b, a, bshear / js);

        // 𝒞_s
        let caaaa = la2 * p(3)
            + la2 * kb * p(4)
            + 3.0 * la4 * p(5)
            + 2.0 * la4 * pp(1, 3)
            + 2.0 * la4 * kb * pp(1, 4)
            + 2.0 * la4 * la2 * pp(1, 5)
            + 2.0 * la2 * i2 * pp(2, 3)
            + 2.0 * la2 * kb * i2 * pp(2, 4)
            + 2.0 * la4 * i2 * pp(2, 5)
            + 2.0 * la4 * ka * pp(3, 5)
            + 2.0 * la4 * i4 * pp(4, 5)
            + 2.0 * la4 * la2 * ka * pp(5, 5);
        let caabb = 2.0
            * i2
            * (pp(1, 3)
                + kb * pp(1, 4)
                + la2 * pp(1, 5)
                + la2 * pp(2, 3)
                + la2 * kb * pp(2, 4)
                + la4 * pp(2, 5)
                + kb * pp(3, 5)
                + kb * kb * pp(4, 5)
                + la2 * kb * pp(5, 5));
        m.c_s.set(a, a, a, a, caaaa / js);
        m.c_s.set(a, a, b, b, caabb / js);
        m.c_s.set(
            a,
            a,
            a,
            b,
            sg * (0.5 * la * lb * i1 * p(6) + la2 * la * lb * dk * r3a) / js,
        );
        m.c_s.set(a, a, b, a, sg * la2 * la * lb * (p(6) + dk * r3a) / js);
        m.c_s.set(
            a,
            b,
            a,
            a,
            sg * (-0.5 * la * lb * (3.0 * la2 - lb2) * p(6) - la2 * la * lb * dl * r1a) / js,
        );
        m.c_s.set(a, b, b, b, sg * la * lb2 * lb * (p(6) - dl * r1b) / js);
        m.c_s.set(
            a,
            b,
            a,
            b,
            (lb2 * (p(3) + ka * p(4) + i1 * p(5)) - 0.5 * i2 * dl * dk * pp(6, 6)) / js,
        );
        m.c_s.set(a, b, b, a, i2 * (p(5) - 0.5 * dl * dk * pp(6, 6)) / js);
        m.c_s
            .set(NORMAL, a, NORMAL, a, la2 * (p(3) + kb * p(4) + la2 * p(5)) / js);
        m.c_s.set(NORMAL, a, NORMAL, b, -sg * 0.5 * la * lb * dl * p(6) / js);

        // 𝒟_s
        let daaaa = la4
            * (pp(3, 3)
                + 2.0 * kb * pp(3, 4)
                + 2.0 * la2 * pp(3, 5)
                + kb * kb * pp(4, 4)
                + 2.0 * kb * la2 * pp(4, 5)
                + la4 * pp(5, 5));
        let daabb =
            i2 * (p(4) + pp(3, 3) + i3 * pp(3, 4) + i1 * pp(3, 5) + i4 * pp(4, 4) + i5 * pp(4, 5) + i2 * pp(5, 5));
        let daaab = -sg * 0.5 * la2 * la * lb * dl * r3a;
        let dshear = 0.25 * i2 * (-2.0 * p(4) + dl * dl * pp(6, 6));
        m.d_s.set(a, a, a, a, daaaa / js);
        m.d_s.set(a, a, b, b, daabb / js);
        m.d_s.set(a, a, a, b, daaab / js);
        m.d_s.set(a, a, b, a, daaab / js);
        m.d_s.set(a, b, a, a, daaab / js);
        m.d_s.set(a, b, b, b, -sg * 0.5 * la * lb2 * lb * dl * r3b / js);
        m.d_s.set(a, b, a, b, dshear / js);
        m.d_s.set(a, b, b, a, dshear / js);
    }
    Ok(m)
}
