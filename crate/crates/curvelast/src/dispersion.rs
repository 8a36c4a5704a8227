//! Axisymmetric bifurcation of the coated cylinder.
//!
//! Incremental displacements `u(r) e^{ikz} e_r + v(r) e^{ikz} e_z` satisfy two
//! coupled equilibrium equations in the bulk,
//!
//! `K₁ v_zz + K₂ (v_rr + v_r/r) + K₃ (u_zr + u_z/r) = 0`,
//! `K₅ u_zz + K₃ v_zr + K₄ (u_rr + u_r/r − u/r²) = 0`,
//!
//! with `K₁ = 2μ(1+λ²) + D(J²+1)`, `K₂ = 2μa²`, `K₃ = 2μ + D(J²+1)`,
//! `K₄ = 2μ(a²+1) + D(J²+1)`, `K₅ = 2μλ²` and `J = a²λ`. Regular solutions are
//! `u = I₁(kqr)`, `v = c I₀(kqr)` where `q²` is a root of
//! `K₂K₄ s² − (K₁K₄ + K₂K₅ − K₃²) s + K₁K₅ = 0`, namely `q₁² = λ²/a²` and
//! `q₂² = K₁/K₄`.
//!
//! The two traction conditions on `r = aA`,
//! `∂_z χ_s22 − χ₂₃ = 0` and `∂_z χ_s32 − χ_s11/(aA) − χ₃₃ = 0`,
//! evaluated on both modes give a `2×2` complex matrix whose determinant
//! vanishes at bifurcation. All evaluations are carried out in units with
//! `μ = 1`, `A = 1`; each mode column is divided by `I₁(kq aA)`, and the
//! determinant is reported as `Ω = (det / i) · 8λ²/k`, which coincides with
//! the incompressible closed form in the limit `D → ∞`.

use num_complex::Complex64;

use crate::base_state::{solve_azimuthal_stretch, BaseState};
use crate::bulk_material::BulkMaterial;
use crate::error::{CurvelastError, Result};
use crate::rootfind::brent;
use crate::special_fn::{bessel_i_ratio01, bessel_i_scaled};
use crate::surface_material::incremental::slot;
use crate::surface_material::{
    base_surface_stress_moment, incremental_surface_coeffs, SurfaceCoeffTable, SurfaceModel,
};

/// Threshold on `|q₁² − q₂²|` below which the two Bessel modes coincide.
pub const DEGENERATE_ROOT_TOL: f64 = 1e-10;
/// Shift applied to `λ` when a scan point hits the repeated-root case.
pub const DEGENERATE_SHIFT: f64 = 1e-9;
/// Largest accepted relative residual of a reconstructed mode.
pub const MODE_RESIDUAL_TOL: f64 = 1e-8;
/// Radii (as fractions of the deformed radius) at which modes are checked.
pub const MODE_CHECK_RADII: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 1.0];
/// Number of scan intervals used to bracket roots in `λ`.
pub const SCAN_STEPS: usize = 64;
/// Relative half-width of the continuation window.
pub const CONTINUATION_WINDOW: f64 = 0.2;
/// Half-width of the band around `λ = 1` where the reduced incompressible
/// determinant is evaluated by interpolation.
pub const INCOMPRESSIBLE_INTERP_BAND: f64 = 1e-3;

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

/// The coefficients `K₁ … K₅` of the incremental equilibrium equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdeCoeffs {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub k5: f64,
}

impl PdeCoeffs {
    pub fn new(a: f64, lambda: f64, mat: &BulkMaterial) -> Self {
        let (mu, d) = (mat.mu, mat.d_modulus);
        let vol = d * (a.powi(4) * lambda * lambda + 1.0);
        Self {
            k1: 2.0 * mu * (1.0 + lambda * lambda) + vol,
            k2: 2.0 * mu * a * a,
            k3: 2.0 * mu + vol,
            k4: 2.0 * mu * (a * a + 1.0) + vol,
            k5: 2.0 * mu * lambda * lambda,
        }
    }

    /// Coefficients `[c₂, c₁, c₀]` of the characteristic quadratic in `s = q²`.
    pub fn characteristic_polynomial(&self) -> [f64; 3] {
        [
            self.k2 * self.k4,
            -(self.k1 * self.k4 + self.k2 * self.k5 - self.k3 * self.k3),
            self.k1 * self.k5,
        ]
    }

    /// The characteristic quadratic at `s`, relative to the size of its terms.
    pub fn relative_polynomial_residual(&self, s: f64) -> f64 {
        let [c2, c1, c0] = self.characteristic_polynomial();
        let terms = [c2 * s * s, c1 * s, c0];
        let sum: f64 = terms.iter().sum();
        sum.abs() / terms.iter().map(|t| t.abs()).sum::<f64>()
    }
}

/// The two roots `(q₁², q₂²)` of the characteristic quadratic.
///
/// `q₂² = K₁/K₄` is evaluated as `1 + 2μ(λ² − a²)/K₄`, and the difference
/// `q₁² − q₂² = (λ² − a²)(K₄ − 2μa²)/(a²K₄)` is formed from the factored
/// expression, so both stay accurate for very large `D`.
pub fn characteristic_roots(a: f64, lambda: f64, mat: &BulkMaterial) -> Result<(f64, f64)> {
    check_positive("azimuthal stretch", a)?;
    check_positive("axial stretch", lambda)?;
    let k = PdeCoeffs::new(a, lambda, mat);
    let q1sq = lambda * lambda / (a * a);
    let q2sq = 1.0 + 2.0 * mat.mu * (lambda * lambda - a * a) / k.k4;
    if root_gap(a, lambda, mat).abs() < DEGENERATE_ROOT_TOL {
        return Err(CurvelastError::DegenerateRoots { q1sq, q2sq });
    }
    Ok((q1sq, q2sq))
}

/// `q₁² − q₂²` in factored form.
pub fn root_gap(a: f64, lambda: f64, mat: &BulkMaterial) -> f64 {
    let k = PdeCoeffs::new(a, lambda, mat);
    (lambda * lambda - a * a) * (k.k4 - k.k2) / (a * a * k.k4)
}

/// Outcome of testing the two readings of the printed `q₂` expression
/// `K₁/K₄` against the characteristic quadratic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Q2Probe {
    pub printed: f64,
    /// Relative residual of the quadratic when `K₁/K₄` is taken as `q₂²`.
    pub residual_as_square: f64,
    /// Relative residual when `K₁/K₄` is taken as `q₂` (so `q₂² = (K₁/K₄)²`).
    pub residual_as_root: f64,
}

impl Q2Probe {
    pub fn new(a: f64, lambda: f64, mat: &BulkMaterial) -> Self {
        let k = PdeCoeffs::new(a, lambda, mat);
        let printed = k.k1 / k.k4;
        Self {
            printed,
            residual_as_square: k.relative_polynomial_residual(printed),
            residual_as_root: k.relative_polynomial_residual(printed * printed),
        }
    }

    /// True when the data single out the reading `q₂² = K₁/K₄`.
    pub fn square_reading_confirmed(&self) -> bool {
        self.residual_as_square < 1e-12 && self.residual_as_root > 1e-6
    }
}

/// Amplitude ratio `c = v̂/û` of the mode `u = I₁(kqr)`, `v = c I₀(kqr)`.
///
/// The ratio follows from either equilibrium equation:
/// `c = −iK₃q/(K₂q² − K₁)` or `c = i(K₄q² − K₅)/(K₃q)`. The two agree exactly
/// when `q²` is a characteristic root; otherwise [`CurvelastError::NotARoot`]
/// is returned. `c` does not depend on `k`.
pub fn mode_amplitude_ratio(k: f64, qsq: f64, a: f64, lambda: f64, mat: &BulkMaterial) -> Result<Complex64> {
    check_positive("wavenumber", k)?;
    check_positive("q^2", qsq)?;
    let p = PdeCoeffs::new(a, lambda, mat);
    let q = qsq.sqrt();
    let den1 = p.k2 * qsq - p.k1;
    let num2 = p.k4 * qsq - p.k5;
    // Cross-multiplied consistency: (K₄q² − K₅)(K₂q² − K₁) + K₃²q² = 0.
    let lhs = num2 * den1;
    let rhs = -p.k3 * p.k3 * qsq;
    let residual = (lhs - rhs).abs() / (lhs.abs() + rhs.abs());
    if residual > 1e-10 {
        return Err(CurvelastError::NotARoot { qsq, residual });
    }
    let c = if den1.abs() >= (p.k3 * q).abs() {
        -p.k3 * q / den1
    } else {
        num2 / (p.k3 * q)
    };
    Ok(Complex64::new(0.0, c))
}

/// Relative residuals of both equilibrium equations for the mode
/// `u = I₁(kqr)`, `v = c I₀(kqr)` at radius `r` (deformed units).
///
/// Radial derivatives are formed from `I₀' = I₁` and `I₁' = I₀ − I₁/x`; each
/// residual is divided by the sum of the magnitudes of its terms.
pub fn pde_residuals(
    k: f64,
    qsq: f64,
    c: Complex64,
    a: f64,
    lambda: f64,
    mat: &BulkMaterial,
    r: f64,
) -> Result<(f64, f64)> {
    check_positive("radius", r)?;
    let p = PdeCoeffs::new(a, lambda, mat);
    let kq = k * qsq.sqrt();
    let x = kq * r;
    // A common factor e^{-x} scales every term and drops out of the ratio.
    let i0 = bessel_i_scaled(0, x)?;
    let i1 = bessel_i_scaled(1, x)?;
    let i1p = i0 - i1 / x;
    let i1pp = i1 - i1p / x + i1 / (x * x);
    let ik = Complex64::new(0.0, k);

    let u = Complex64::from(i1);
    let u_r = Complex64::from(kq * i1p);
    let u_rr = Complex64::from(kq * kq * i1pp);
    let u_z = ik * u;
    let u_zz = ik * u_z;
    let u_zr = ik * u_r;
    let v = c * i0;
    let v_r = c * (kq * i1);
    let v_rr = c * (kq * kq * i1p);
    let v_zz = ik * ik * v;
    let v_zr = ik * v_r;

    let rel = |terms: &[Complex64]| {
        let sum: Complex64 = terms.iter().sum();
        let size: f64 = terms.iter().map(|t| t.norm()).sum();
        if size == 0.0 {
            0.0
        } else {
            sum.norm() / size
        }
    };
    let eq1 = rel(&[p.k1 * v_zz, p.k2 * v_rr, p.k2 * v_r / r, p.k3 * u_zr, p.k3 * u_z / r]);
    let eq2 = rel(&[
        p.k5 * u_zz,
        p.k3 * v_zr,
        p.k4 * u_rr,
        p.k4 * u_r / r,
        -p.k4 * u / (r * r),
    ]);
    Ok((eq1, eq2))
}

/// A fully assembled boundary problem at one `(k, λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionProblem {
    /// Base state in units with `μ = 1`, `A = 1`.
    pub base: BaseState,
    /// Wavenumber in units of `1/A`.
    pub k: f64,
    pub q1sq: f64,
    pub q2sq: f64,
    pub mode_ratios: [Complex64; 2],
    /// `boundary_matrix[condition][mode]`, columns normalized by `I₁(kq aA)`.
    pub boundary_matrix: [[Complex64; 2]; 2],
    /// `Ω = Re(det/i) · 8λ²/k`.
    pub omega: f64,
    /// `|Im(det/i)| / |det|`.
    pub omega_imag_rel: f64,
    /// Largest relative PDE residual over both modes and all check radii.
    pub max_mode_residual: f64,
}

struct ModeBoundary {
    column: [Complex64; 2],
    residual: f64,
}

/// Base pressure `p = D(J² − 1)` of a nondimensional base state in
/// equilibrium, read off the lateral traction condition
/// `p = −2μ(a² − 1) − 2a(P̄_s11 + M̄_s11)`.
///
/// Forming `D(J² − 1)` directly loses about `D·ε` to cancellation once
/// `D ≫ μ`; the equilibrium form has no such loss.
fn base_pressure(nd: &BaseState) -> Result<f64> {
    let (a, mu) = (nd.a, nd.mat.mu);
    let (ps, ms) = base_surface_stress_moment(&nd.surf, a, nd.lambda_ax, 1.0)?;
    Ok(-2.0 * mu * (a * a - 1.0) - 2.0 * a * (ps[(0, 0)] + ms[(0, 0)]))
}

#[allow(clippy::too_many_arguments)]
fn mode_column(
    k: f64,
    qsq: f64,
    c: Complex64,
    a: f64,
    lambda: f64,
    mat: &BulkMaterial,
    pressure: f64,
    surf: &SurfaceCoeffTable,
) -> Result<ModeBoundary> {
    let rho = a;
    let mut residual = 0.0_f64;
    for frac in MODE_CHECK_RADII {
        let (r1, r2) = pde_residuals(k, qsq, c, a, lambda, mat, frac * rho)?;
        residual = residual.max(r1).max(r2);
    }
    if residual > MODE_RESIDUAL_TOL {
        return Err(CurvelastError::NotARoot { qsq, residual });
    }

    let kq = k * qsq.sqrt();
    let x = kq * rho;
    let ratio = bessel_i_ratio01(x)?;
    let ik = Complex64::new(0.0, k);
    // Values on r = aA after division by I₁(kq aA).
    let u = Complex64::from(1.0);
    let u_r = Complex64::from(kq * (ratio - 1.0 / x));
    let v = c * ratio;
    let v_r = c * kq;
    let (u_z, v_z) = (ik * u, ik * v);

    // The bulk rows χ₂₃ = [(2μ + D(1 − J²)) u_z]/(2a²λ) + (μ/λ) v_r and
    // χ₃₃ = [(2μ(a² + 1) + D(1 − J²)) u_r]/(2a²λ) + Da²λ (u_r + u/r + v_z),
    // with D(1 − J²) = −p and the divergence in closed form: u_r + u/r = kqR
    // and v_z = −kĉR for c = iĉ, so the divergence is kR(q − ĉ) with
    // q − ĉ = 2μ(λ² − a²q²)/(K₃q).
    let (mu, q) = (mat.mu, qsq.sqrt());
    let denom = 2.0 * a * a * lambda;
    let k3 = PdeCoeffs::new(a, lambda, mat).k3;
    let q_minus_c = 2.0 * mu * (lambda * lambda - a * a * qsq) / (k3 * q);
    let d_div = mat.d_modulus * a * a * lambda * k * ratio * q_minus_c;
    let chi23 = u_z * ((2.0 * mu - pressure) / denom) + v_r * (mu / lambda);
    let chi33 = u_r * ((2.0 * mu * (a * a + 1.0) - pressure) / denom) + d_div;

    let mut jet = [Complex64::from(0.0); 6];
    jet[slot::U] = u;
    jet[slot::U_Z] = u_z;
    jet[slot::U_ZZ] = ik * u_z;
    jet[slot::U_ZZZ] = ik * ik * u_z;
    jet[slot::V_Z] = v_z;
    jet[slot::V_ZZ] = ik * v_z;
    // An axial derivative multiplies every e^{ikz} quantity by ik.
    let bc1 = ik * surf.component_complex(1, 1, &jet) - chi23;
    let bc2 = ik * surf.component_complex(2, 1, &jet) - surf.component_complex(0, 0, &jet) / rho - chi33;
    Ok(ModeBoundary {
        column: [bc1, bc2],
        residual,
    })
}

/// Assembles the boundary problem for a solved base state (any units) and a
/// wavenumber `k` in the same length units (deformed configuration).
pub fn assemble(k: f64, base: &BaseState) -> Result<DispersionProblem> {
    check_positive("wavenumber", k)?;
    let nd = base.nondimensional();
    let k = k * base.radius_ref;
    let (a, lambda) = (nd.a, nd.lambda_ax);
    let (q1sq, q2sq) = characteristic_roots(a, lambda, &nd.mat)?;
    let pressure = base_pressure(&nd)?;
    let surf = incremental_surface_coeffs(&nd.surf, a, lambda, 1.0)?;

    let mut ratios = [Complex64::from(0.0); 2];
    let mut matrix = [[Complex64::from(0.0); 2]; 2];
    let mut max_res = 0.0_f64;
    for (j, qsq) in [q1sq, q2sq].into_iter().enumerate() {
        let c = mode_amplitude_ratio(k, qsq, a, lambda, &nd.mat)?;
        let col = mode_column(k, qsq, c, a, lambda, &nd.mat, pressure, &surf)?;
        ratios[j] = c;
        matrix[0][j] = col.column[0];
        matrix[1][j] = col.column[1];
        max_res = max_res.max(col.residual);
    }
    let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
    let normalized = det / Complex64::new(0.0, 1.0);
    let omega_imag_rel = if det.norm() == 0.0 {
        0.0
    } else {
        normalized.im.abs() / det.norm()
    };
    Ok(DispersionProblem {
        base: nd,
        k,
        q1sq,
        q2sq,
        mode_ratios: ratios,
        boundary_matrix: matrix,
        omega: normalized.re * 8.0 * lambda * lambda / k,
        omega_imag_rel,
        max_mode_residual: max_res,
    })
}

/// The `2×2` boundary matrix (conditions × modes) at `(k, λ)`.
pub fn boundary_matrix(k: f64, base: &BaseState) -> Result<[[Complex64; 2]; 2]> {
    Ok(assemble(k, base)?.boundary_matrix)
}

/// The Helfrich boundary conditions written out term by term (`α_s` is
/// ignored), evaluated on the same normalized modes as [`assemble`]:
///
/// `(μ/λ) v_r + [(2μ + D(1 − a⁴λ²))/(2a²λ) − γ/(aA) + β(1 − 4H₀²a²A²)/(8a³A³)] u_z`,
/// `β/4 u_zzzz − [γ + β(4H₀²a²A² + 8H₀aA − 1)/(8a²A²)] u_zz + [Dλa/A + β/(4a⁴A⁴)] u`
/// `+ K₄/(2a²λ) u_r + [Da²λ + γ/(aA) + β(4H₀²a²A² − 1)/(8a³A³)] v_z`.
///
/// These are the negatives of the generic conditions, so the returned matrix
/// equals `−boundary_matrix`.
pub fn helfrich_boundary_matrix_explicit(k: f64, base: &BaseState) -> Result<[[Complex64; 2]; 2]> {
    check_positive("wavenumber", k)?;
    let nd = base.nondimensional();
    let k = k * base.radius_ref;
    let (a, lambda) = (nd.a, nd.lambda_ax);
    let (mu, d) = (nd.mat.mu, nd.mat.d_modulus);
    let (g, b, h0) = (nd.surf.gamma, nd.surf.beta_s, nd.surf.h0);
    let big_a = 1.0;
    let r = a * big_a;
    let j2 = a.powi(4) * lambda * lambda;
    let pde = PdeCoeffs::new(a, lambda, &nd.mat);
    let (q1sq, q2sq) = characteristic_roots(a, lambda, &nd.mat)?;

    let c_uz1 = (2.0 * mu + d * (1.0 - j2)) / (2.0 * a * a * lambda) - g / r
        + b / (8.0 * r.powi(3)) * (1.0 - 4.0 * h0 * h0 * r * r);
    let c_uzz = -(g + b / (8.0 * r * r) * (4.0 * h0 * h0 * r * r + 8.0 * h0 * r - 1.0));
    let c_u = d * lambda * a / big_a + b / (4.0 * r.powi(4));
    let c_ur = pde.k4 / (2.0 * a * a * lambda);
    let c_vz = d * a * a * lambda + g / r + b / (8.0 * r.powi(3)) * (4.0 * h0 * h0 * r * r - 1.0);

    let ik = Complex64::new(0.0, k);
    let mut out = [[Complex64::from(0.0); 2]; 2];
    for (j, qsq) in [q1sq, q2sq].into_iter().enumerate() {
        let c = mode_amplitude_ratio(k, qsq, a, lambda, &nd.mat)?;
        let kq = k * qsq.sqrt();
        let x = kq * r;
        let ratio = bessel_i_ratio01(x)?;
        let u = Complex64::from(1.0);
        let u_r = Complex64::from(kq * (ratio - 1.0 / x));
        let v_z = ik * c * ratio;
        let v_r = c * kq;
        let u_z = ik * u;
        let u_zz = ik * u_z;
        let u_zzzz = u_zz * u_zz;
        out[0][j] = v_r * (mu / lambda) + u_z * c_uz1;
        out[1][j] = u_zzzz * (b / 4.0) + u_zz * c_uzz + u * c_u + u_r * c_ur + v_z * c_vz;
    }
    Ok(out)
}

/// `Ω(k, λ)` for dimensional inputs; `k` in inverse deformed length.
pub fn dispersion_det(k: f64, lambda: f64, mat: &BulkMaterial, surf: &SurfaceModel, radius_ref: f64) -> Result<f64> {
    let base = BaseState::solve(lambda, mat, surf, radius_ref)?;
    Ok(assemble(k, &base)?.omega)
}

/// `Ω / (q₁² − q₂²)`: removes the trivial zero of `Ω` on the repeated-root
/// line `a = λ`, which would otherwise show up as a spurious bifurcation.
pub fn dispersion_det_reduced(
    k: f64,
    lambda: f64,
    mat: &BulkMaterial,
    surf: &SurfaceModel,
    radius_ref: f64,
) -> Result<f64> {
    let base = BaseState::solve(lambda, mat, surf, radius_ref)?;
    let p = assemble(k, &base)?;
    Ok(p.omega / (p.q1sq - p.q2sq))
}

/// Closed-form determinant of the incompressible problem (`μ = A = 1`):
///
/// `Ω = −16√λ(λ³ − 1 + 2kλ R(kλ)) + 8k(λ³ + 1)² R(k/√λ) + 8γλ(λ³ − 1)(k² − λ)`
/// `+ βλ(λ³ − 1)(4H₀²(k² − λ) + 8H₀k²√λ + 2k⁴ + 3λ² − k²λ)`,
///
/// with `R(x) = I₀(x)/I₁(x)`.
pub fn dispersion_det_incompressible(k: f64, lambda: f64, gamma: f64, beta_s: f64, h0: f64) -> Result<f64> {
    check_positive("wavenumber", k)?;
    check_positive("axial stretch", lambda)?;
    let s = lambda.sqrt();
    let l3 = lambda.powi(3);
    let k2 = k * k;
    let bulk = -16.0 * s * (l3 - 1.0 + 2.0 * k * lambda * bessel_i_ratio01(k * lambda)?)
        + 8.0 * k * (l3 + 1.0).powi(2) * bessel_i_ratio01(k / s)?;
    let tension = 8.0 * gamma * lambda * (l3 - 1.0) * (k2 - lambda);
    let bending = beta_s
        * lambda
        * (l3 - 1.0)
        * (4.0 * h0 * h0 * (k2 - lambda) + 8.0 * h0 * k2 * s + 2.0 * k2 * k2 + 3.0 * lambda * lambda - k2 * lambda);
    Ok(bulk + tension + bending)
}

/// `Ω / (λ³ − 1)` for the incompressible closed form. Within
/// [`INCOMPRESSIBLE_INTERP_BAND`] of `λ = 1` the quotient is obtained by cubic
/// interpolation through `λ = 1 ± 2δ, 1 ± 4δ` with `δ` the band half-width.
pub fn dispersion_det_incompressible_reduced(k: f64, lambda: f64, gamma: f64, beta_s: f64, h0: f64) -> Result<f64> {
    let direct =
        |l: f64| -> Result<f64> { Ok(dispersion_det_incompressible(k, l, gamma, beta_s, h0)? / (l.powi(3) - 1.0)) };
    if (lambda - 1.0).abs() >= INCOMPRESSIBLE_INTERP_BAND {
        return direct(lambda);
    }
    let d = 2.0 * INCOMPRESSIBLE_INTERP_BAND;
    let nodes = [1.0 - 2.0 * d, 1.0 - d, 1.0 + d, 1.0 + 2.0 * d];
    let mut vals = [0.0; 4];
    for (v, &x) in vals.iter_mut().zip(&nodes) {
        *v = direct(x)?;
    }
    let mut out = 0.0;
    for i in 0..4 {
        let mut w = 1.0;
        for j in 0..4 {
            if i != j {
                w *= (lambda - nodes[j]) / (nodes[i] - nodes[j]);
            }
        }
        out += w * vals[i];
    }
    Ok(out)
}

/// Small-`k` limit of the incompressible determinant:
/// `(λ³ − 1)[16√λ(λ³ + 2) − 8γλ² + βλ²(3λ − 4H₀²)]`.
pub fn incompressible_small_k_limit(lambda: f64, gamma: f64, beta_s: f64, h0: f64) -> f64 {
    let l3 = lambda.powi(3);
    (l3 - 1.0)
        * (16.0 * lambda.sqrt() * (l3 + 2.0) - 8.0 * gamma * lambda * lambda
            + beta_s * lambda * lambda * (3.0 * lambda - 4.0 * h0 * h0))
}

/// Surface tension at which a tension-only incompressible cylinder reaches
/// its long-wave threshold: `γ* = 2(λ³ + 2)/λ^{3/2}`.
pub fn tension_threshold(lambda: f64) -> f64 {
    2.0 * (lambda.powi(3) + 2.0) / lambda.powf(1.5)
}

/// Which determinant a bifurcation search uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DispersionModel {
    /// The compressible boundary problem; `k` in inverse deformed length.
    Compressible {
        mat: BulkMaterial,
        surf: SurfaceModel,
        radius_ref: f64,
    },
    /// The incompressible closed form in units `μ = A = 1`.
    Incompressible { gamma: f64, beta_s: f64, h0: f64 },
}

/// One evaluation of the reduced determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub lambda: f64,
    pub value: f64,
    pub a: f64,
    pub mode_residual: f64,
}

impl DispersionModel {
    /// Azimuthal stretch of the base state at `λ`.
    pub fn azimuthal_stretch(&self, lambda: f64) -> Result<f64> {
        match self {
            Self::Compressible { mat, surf, radius_ref } => {
                solve_azimuthal_stretch(lambda, mat, surf, *radius_ref, None)
            }
            Self::Incompressible { .. } => {
                check_positive("axial stretch", lambda)?;
                Ok(1.0 / lambda.sqrt())
            }
        }
    }

    /// Reduced determinant (trivial repeated-root factor removed).
    pub fn reduced_det(&self, k: f64, lambda: f64) -> Result<Evaluation> {
        match self {
            Self::Compressible { mat, surf, radius_ref } => {
                let base = BaseState::solve(lambda, mat, surf, *radius_ref)?;
                let p = assemble(k, &base)?;
                Ok(Evaluation {
                    lambda,
                    value: p.omega / (p.q1sq - p.q2sq),
                    a: base.a,
                    mode_residual: p.max_mode_residual,
                })
            }
            Self::Incompressible { gamma, beta_s, h0 } => Ok(Evaluation {
                lambda,
                value: dispersion_det_incompressible_reduced(k, lambda, *gamma, *beta_s, *h0)?,
                a: 1.0 / lambda.sqrt(),
                mode_residual: 0.0,
            }),
        }
    }

    /// Like [`Self::reduced_det`], but shifts `λ` by `±1e-9` when it lands
    /// on the repeated-root case.
    pub fn reduced_det_shifted(&self, k: f64, lambda: f64) -> Result<Evaluation> {
        match self.reduced_det(k, lambda) {
            Err(CurvelastError::DegenerateRoots { .. }) => self
                .reduced_det(k, lambda + DEGENERATE_SHIFT)
                .or_else(|_| self.reduced_det(k, lambda - DEGENERATE_SHIFT)),
            other => other,
        }
    }
}

/// A root of the dispersion relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationPoint {
    pub k: f64,
    pub lambda_crit: f64,
    pub a: f64,
    /// `|Ω_reduced|` at the returned root.
    pub omega_residual: f64,
    /// Largest `|Ω_reduced|` over the scan, the scale of the residual test.
    pub omega_scale: f64,
    /// Largest mode residual over every evaluation of the search.
    pub max_mode_residual: f64,
}

/// Critical stretch at fixed `k`: the largest root of the reduced
/// determinant in `λ_bracket`.
///
/// The bracket is scanned with [`SCAN_STEPS`] intervals; sign changes are
/// examined from the top down, refined with Brent's method and accepted once
/// the residual is below `1e-9` of the scan scale (sign changes caused by a
/// pole or by round-off are rejected by that test).
pub fn critical_stretch_model(k: f64, model: &DispersionModel, (lo, hi): (f64, f64)) -> Result<BifurcationPoint> {
    check_positive("wavenumber", k)?;
    check_positive("bracket lower end", lo)?;
    if !(hi > lo) || !hi.is_finite() {
        return Err(CurvelastError::InvalidParameters(format!("empty bracket [{lo}, {hi}]")));
    }
    let mut max_mode = 0.0_f64;
    let mut samples: Vec<Option<Evaluation>> = Vec::with_capacity(SCAN_STEPS + 1);
    for i in 0..=SCAN_STEPS {
        let l = lo + (hi - lo) * i as f64 / SCAN_STEPS as f64;
        let e = match model.reduced_det_shifted(k, l) {
            Ok(e) => Some(e),
            Err(CurvelastError::NoBracket { .. } | CurvelastError::NoConvergence { .. }) => None,
            Err(e) => return Err(e),
        };
        if let Some(e) = &e {
            max_mode = max_mode.max(e.mode_residual);
        }
        samples.push(e);
    }
    let scale = samples.iter().flatten().fold(0.0_f64, |m, e| m.max(e.value.abs()));

    for i in (0..SCAN_STEPS).rev() {
        let (Some(e0), Some(e1)) = (samples[i], samples[i + 1]) else {
            continue;
        };
        if e0.value.signum() == e1.value.signum() && e0.value != 0.0 && e1.value != 0.0 {
            continue;
        }
        let mut mode = 0.0_f64;
        let root = brent("critical stretch", e0.lambda, e1.lambda, 1e-13 * e1.lambda, |l| {
            let e = model.reduced_det_shifted(k, l)?;
            mode = mode.max(e.mode_residual);
            Ok(e.value)
        });
        max_mode = max_mode.max(mode);
        let root = match root {
            Ok(r) => r,
            Err(CurvelastError::DegenerateRoots { .. }) => continue,
            Err(e) => return Err(e),
        };
        let at = model.reduced_det_shifted(k, root)?;
        max_mode = max_mode.max(at.mode_residual);
        if at.value.abs() <= 1e-9 * scale {
            return Ok(BifurcationPoint {
                k,
                lambda_crit: root,
                a: at.a,
                omega_residual: at.value.abs(),
                omega_scale: scale,
                max_mode_residual: max_mode,
            });
        }
    }
    let first = samples.iter().flatten().next();
    let last = samples.iter().flatten().last();
    Err(CurvelastError::NoBracket {
        what: "dispersion determinant",
        lo,
        hi,
        f_lo: first.map_or(f64::NAN, |e| e.value),
        f_hi: last.map_or(f64::NAN, |e| e.value),
    })
}

/// Critical stretch of the compressible problem (dimensional inputs).
pub fn critical_stretch(
    k: f64,
    mat: &BulkMaterial,
    surf: &SurfaceModel,
    radius_ref: f64,
    lambda_bracket: (f64, f64),
) -> Result<BifurcationPoint> {
    let model = DispersionModel::Compressible {
        mat: *mat,
        surf: *surf,
        radius_ref,
    };
    critical_stretch_model(k, &model, lambda_bracket)
}

/// One point of a traced bifurcation curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub k: f64,
    pub point: Result<BifurcationPoint>,
}

/// Traces `λ_crit(k)` over an increasing grid. Each search first uses a
/// window of ±20% around the previous root (clipped to the full bracket) and
/// falls back to the full bracket; missing roots are reported, never
/// interpolated.
pub fn bifurcation_curve(k_grid: &[f64], model: &DispersionModel, full_bracket: (f64, f64)) -> Result<Vec<CurvePoint>> {
    if k_grid.is_empty() {
        return Err(CurvelastError::InvalidParameters("empty wavenumber grid".into()));
    }
    if k_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(CurvelastError::InvalidParameters(
            "wavenumber grid must be increasing".into(),
        ));
    }
    let mut out = Vec::with_capacity(k_grid.len());
    let mut previous: Option<f64> = None;
    for &k in k_grid {
        let mut result = None;
        if let Some(p) = previous {
            let window = (
                (p * (1.0 - CONTINUATION_WINDOW)).max(full_bracket.0),
                (p * (1.0 + CONTINUATION_WINDOW)).min(full_bracket.1),
            );
            if window.1 > window.0 {
                if let Ok(bp) = critical_stretch_model(k, model, window) {
                    result = Some(Ok(bp));
                }
            }
        }
        let point = result.unwrap_or_else(|| critical_stretch_model(k, model, full_bracket));
        previous = point.as_ref().ok().map(|bp| bp.lambda_crit).or(previous);
        out.push(CurvePoint { k, point });
    }
    Ok(out)
}
