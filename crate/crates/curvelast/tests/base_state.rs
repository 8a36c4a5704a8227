//! Azimuthal stretch, axial force and the limiting point of the force curve.

use curvelast::base_state::{
    axial_force, axial_force_incompressible, base_residual, dfz_dlambda, dfz_dlambda_with_step,
    helfrich_residual_closed_form, limiting_point, solve_azimuthal_stretch, BaseState, DFZ_REL_STEP,
};
use curvelast::bulk_material::BulkMaterial;
use curvelast::surface_material::SurfaceModel;
use curvelast::CurvelastError;
use proptest::prelude::*;
use std::f64::consts::PI;

fn mat(mu: f64, d: f64) -> BulkMaterial {
    BulkMaterial { mu, d_modulus: d }
}

fn bare() -> SurfaceModel {
    SurfaceModel::tension(0.0).unwrap()
}

#[test]
fn reference_state_is_stress_free() {
    assert_eq!(base_residual(1.0, 1.0, &mat(1.0, 5.0), &bare(), 1.0).unwrap(), 0.0);
    let s = BaseState::solve(1.0, &mat(1.0, 5.0), &bare(), 1.0).unwrap();
    assert!((s.a - 1.0).abs() < 1e-14);
    assert!(s.residual().unwrap().abs() < 1e-12);
}

#[test]
fn tension_only_root_is_the_golden_ratio_conjugate() {
    // 8a(a² − 1) + 8a² = 0 gives a² + a − 1 = 0.
    let a = solve_azimuthal_stretch(1.0, &mat(1.0, 0.0), &SurfaceModel::tension(1.0).unwrap(), 1.0, None).unwrap();
    assert!((a - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12, "{a}");
}

#[test]
fn nearly_incompressible_root_approaches_isochoric_value() {
    let m = mat(1.0, 1e8);
    let a = solve_azimuthal_stretch(1.5, &m, &bare(), 1.0, None).unwrap();
    assert!((a - 1.0 / 1.5f64.sqrt()).abs() < 1e-4, "{a}");
    let r = base_residual(a, 1.5, &m, &bare(), 1.0).unwrap();
    assert!(r.abs() / m.d_modulus < 1e-12);
}

#[test]
fn incompressible_limit_converges_at_rate_one_over_d() {
    let surf = SurfaceModel::helfrich(1.2, 0.8, -0.5).unwrap();
    let lambda: f64 = 1.3;
    let exact = 1.0 / lambda.sqrt();
    let errors: Vec<f64> = [1e4, 1e6, 1e8]
        .iter()
        .map(|&d| (solve_azimuthal_stretch(lambda, &mat(1.0, d), &surf, 1.0, None).unwrap() - exact).abs())
        .collect();
    assert!(errors[0] > errors[1] && errors[1] > errors[2], "{errors:?}");
    for w in errors.windows(2) {
        let ratio = w[1] / w[0];
        assert!((ratio - 1e-2).abs() < 1e-3, "ratio {ratio}");
    }
}

#[test]
fn residual_depends_on_a() {
    let (m, s) = (mat(1.0, 3.0), SurfaceModel::helfrich(1.0, 1.0, 0.2).unwrap());
    let h = 1e-6;
    let slope = (base_residual(0.9 + h, 1.2, &m, &s, 1.0).unwrap() - base_residual(0.9 - h, 1.2, &m, &s, 1.0).unwrap())
        / (2.0 * h);
    assert!(slope.abs() > 1.0);
}

#[test]
fn explicit_bracket_without_root_is_reported() {
    let err = solve_azimuthal_stretch(
        1.0,
        &mat(1.0, 0.0),
        &SurfaceModel::tension(1.0).unwrap(),
        1.0,
        Some((0.7, 0.9)),
    )
    .unwrap_err();
    assert!(matches!(err, CurvelastError::NoBracket { .. }));
    assert!(solve_azimuthal_stretch(-1.0, &mat(1.0, 0.0), &bare(), 1.0, None).is_err());
}

#[test]
fn axial_force_examples() {
    let f = axial_force(2.0, 1.0, &mat(1.0, 0.0), &bare(), 1.0).unwrap();
    assert!((f - PI * 1.5).abs() < 1e-14);
    let f = axial_force(1.0, 1.0, &mat(1.0, 0.0), &SurfaceModel::tension(1.0).unwrap(), 1.0).unwrap();
    assert!((f - 2.0 * PI).abs() < 1e-14);
}

#[test]
fn incompressible_force_is_the_large_d_limit() {
    for (surf, l, r) in [
        (SurfaceModel::helfrich(2.0, 1.5, -0.7).unwrap(), 1.4, 1.0),
        (SurfaceModel::tension(3.0).unwrap(), 0.8, 2.0),
        (SurfaceModel::stretch(1.0, 4.0).unwrap(), 2.2, 0.5),
    ] {
        let m = mat(1.3, 1.3e8);
        let a = solve_azimuthal_stretch(l, &m, &surf, r, None).unwrap();
        let proxy = axial_force(l, a, &m, &surf, r).unwrap();
        let exact = axial_force_incompressible(l, 1.3, &surf, r).unwrap();
        assert!(
            (proxy - exact).abs() <= 1e-6 * exact.abs().max(1.0),
            "{proxy} vs {exact}"
        );
    }
    assert_eq!(axial_force_incompressible(1.0, 1.0, &bare(), 1.0).unwrap(), 0.0);
}

#[test]
fn force_slope_at_rest() {
    let d = dfz_dlambda(1.0, &mat(1.0, 0.0), &bare(), 1.0).unwrap();
    assert!((d - 2.0 * PI).abs() < 1e-7, "{d}");
}

#[test]
fn force_slope_is_step_converged() {
    let (m, s) = (mat(1.0, 4.0), SurfaceModel::helfrich(3.0, 1.5, -1.0).unwrap());
    for lambda in [0.8, 1.2, 2.0] {
        let h = DFZ_REL_STEP * lambda;
        let coarse = dfz_dlambda_with_step(lambda, &m, &s, 1.0, h).unwrap();
        let fine = dfz_dlambda_with_step(lambda, &m, &s, 1.0, h / 2.0).unwrap();
        assert!(
            (coarse - fine).abs() <= 1e-8 * fine.abs().max(1.0),
            "{coarse} vs {fine}"
        );
    }
}

#[test]
fn limiting_point_brackets_are_checked() {
    let err = limiting_point(&mat(1.0, 4.0), &bare(), 1.0, (1.0, 2.0)).unwrap_err();
    assert!(matches!(err, CurvelastError::NoBracket { .. }));
}

#[test]
fn nondimensional_state_has_the_same_stretches() {
    let s = BaseState::solve(
        1.4,
        &mat(2.0, 6.0),
        &SurfaceModel::helfrich(3.0, 2.0, -0.3).unwrap(),
        1.5,
    )
    .unwrap();
    let n = s.nondimensional();
    assert_eq!(n.a, s.a);
    let again = BaseState::solve(n.lambda_ax, &n.mat, &n.surf, 1.0).unwrap();
    assert!((again.a - s.a).abs() < 1e-12);
}

proptest! {
    #[test]
    fn generic_residual_matches_helfrich_polynomial(
        a in 0.3f64..2.5, l in 0.3f64..3.0, mu in 0.1f64..5.0, d in 0.0f64..50.0,
        g in 0.0f64..10.0, b in 0.0f64..10.0, h0 in -3.0f64..3.0, r in 0.3f64..3.0,
    ) {
        let (m, s) = (mat(mu, d), SurfaceModel::helfrich(g, b, h0).unwrap());
        let generic = base_residual(a, l, &m, &s, r).unwrap();
        let closed = helfrich_residual_closed_form(a, l, &m, &s, r);
        let scale = (mu + d) * r.powi(3) * a.powi(5).max(1.0) * l * l.max(1.0) + (g + b) * l * (1.0 + a * a * r * r * (1.0 + h0 * h0));
        prop_assert!((generic - closed).abs() <= 1e-12 * scale, "{} vs {}", generic, closed);
    }

    #[test]
    fn solved_state_satisfies_the_traction_condition(
        l in 0.5f64..2.5, d in 0.0f64..20.0, g in 0.0f64..4.0, b in 0.0f64..4.0, h0 in -1.5f64..1.5,
    ) {
        let (m, s) = (mat(1.0, d), SurfaceModel::helfrich(g, b, h0).unwrap());
        if let Ok(state) = BaseState::solve(l, &m, &s, 1.0) {
            let scale = 1.0 + d + g + b;
            prop_assert!(state.residual().unwrap().abs() <= 1e-9 * scale);
        }
    }
}
