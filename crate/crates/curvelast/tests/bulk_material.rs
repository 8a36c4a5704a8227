//! Compressible neo-Hookean bulk: energy, base stress and the two incremental
//! stress paths.

use curvelast::bulk_material::{
    base_pk1, bulk_energy, bulk_moduli_check, chi_from_moduli, incremental_bulk_coeffs, BulkMaterial,
    DisplacementGradient, IncrementalBulkCoeffs as C,
};
use curvelast::tensor_core::Tensor2;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mat(mu: f64, d: f64) -> BulkMaterial {
    BulkMaterial { mu, d_modulus: d }
}

#[test]
fn energy_examples() {
    assert_eq!(bulk_energy(1.0, 1.0, &mat(1.3, 4.0)).unwrap(), 0.0);
    let w = bulk_energy(1.0, 2.0, &mat(1.0, 0.0)).unwrap();
    assert!((w - (1.5 - 2f64.ln())).abs() < 1e-15);
    assert_eq!(bulk_energy(1.0, 1.0, &mat(0.0, 2.0)).unwrap(), 0.0);
    assert!(bulk_energy(0.0, 1.0, &mat(1.0, 1.0)).is_err());
    assert!(bulk_energy(1.0, -1.0, &mat(1.0, 1.0)).is_err());
}

#[test]
fn base_stress_examples() {
    assert_eq!(base_pk1(1.0, 1.0, &mat(2.0, 5.0)).unwrap(), Tensor2::zero());
    let p = base_pk1(1.0, 2.0, &mat(1.0, 0.0)).unwrap();
    assert!((p - Tensor2::diag(0.0, 1.5, 0.0)).max_abs() < 1e-15);
    assert_eq!(base_pk1(1.0, 1.0, &mat(1.0, 2.0)).unwrap(), Tensor2::zero());
}

#[test]
fn coefficient_examples() {
    let t = incremental_bulk_coeffs(1.0, 1.0, &mat(1.0, 0.0)).unwrap();
    assert!((t.coeff(C::CHI11, C::U_OVER_R) - 2.0).abs() < 1e-15);
    assert!((t.coeff(C::CHI23, C::V_R) - 1.0).abs() < 1e-15);

    let t = incremental_bulk_coeffs(1.0, 1.0, &mat(0.0, 1.0)).unwrap();
    assert!((t.coeff(C::CHI11, C::U_OVER_R) - 1.0).abs() < 1e-15);
    assert!((t.coeff(C::CHI11, C::U_R) - 1.0).abs() < 1e-15);
    assert!((t.coeff(C::CHI11, C::V_Z) - 1.0).abs() < 1e-15);
}

#[test]
fn moduli_contraction_example() {
    let m = bulk_moduli_check(1.0, 1.0, &mat(1.0, 0.0)).unwrap();
    let chi = chi_from_moduli(&m, 1.0, 1.0, &Tensor2::dyad(1, 2));
    assert!((chi[(1, 2)] - 1.0).abs() < 1e-15);
    assert_eq!(chi_from_moduli(&m, 1.0, 1.0, &Tensor2::zero()), Tensor2::zero());
}

#[test]
fn two_paths_agree_on_100_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB01C);
    for _ in 0..100 {
        let a = rng.random_range(0.4..2.0);
        let l = rng.random_range(0.4..2.5);
        let m = mat(rng.random_range(0.1..10.0), rng.random_range(0.0..100.0));
        let g = DisplacementGradient {
            u_over_r: rng.random_range(-1.0..1.0),
            u_r: rng.random_range(-1.0..1.0),
            u_z: rng.random_range(-1.0..1.0),
            v_z: rng.random_range(-1.0..1.0),
            v_r: rng.random_range(-1.0..1.0),
        };
        let table = incremental_bulk_coeffs(a, l, &m).unwrap().evaluate(&g);
        let moduli = bulk_moduli_check(a, l, &m).unwrap();
        let contracted = chi_from_moduli(&moduli, a, l, &g.to_tensor());
        let scale = table.max_abs();
        assert!(
            (table - contracted).max_abs() <= 1e-12 * scale,
            "a={a} λ={l} {m:?}: {table:?} vs {contracted:?}"
        );
    }
}

#[test]
fn undeformed_shear_rows_coincide() {
    let t = incremental_bulk_coeffs(1.0, 1.0, &mat(1.7, 3.2)).unwrap();
    assert!((t.coeff(C::CHI23, C::V_R) - 1.7).abs() < 1e-15);
    for g in 0..5 {
        let swapped = match g {
            C::U_Z => C::V_R,
            C::V_R => C::U_Z,
            x => x,
        };
        assert!((t.coeff(C::CHI23, g) - t.coeff(C::CHI32, swapped)).abs() < 1e-15);
    }
    // With both shear rows equal to μ(u_z + v_r), the symmetric gradient drives both alike.
    assert!((t.coeff(C::CHI23, C::U_Z) - t.coeff(C::CHI23, C::V_R)).abs() < 1e-15);
}

#[test]
fn volumetric_coefficient_grows_linearly_in_d() {
    let (a, l) = (0.8, 1.5625);
    let coeff = |d: f64| {
        incremental_bulk_coeffs(a, l, &mat(1.0, d))
            .unwrap()
            .coeff(C::CHI11, C::U_R)
    };
    let slopes: Vec<f64> = [1e2, 1e4, 1e6].iter().map(|&d| coeff(d) / d).collect();
    assert!((slopes[0] - slopes[2]).abs() < 1e-12 * slopes[2].abs());
    assert!((slopes[1] - a * a * l).abs() < 1e-12);
}

proptest! {
    #[test]
    fn stress_is_the_energy_gradient(a in 0.4f64..2.0, l in 0.4f64..2.5, mu in 0.1f64..5.0, d in 0.0f64..20.0) {
        let m = mat(mu, d);
        let p = base_pk1(a, l, &m).unwrap();
        let h = 1e-6;
        let dw_dl = (bulk_energy(a, l + h, &m).unwrap() - bulk_energy(a, l - h, &m).unwrap()) / (2.0 * h);
        let dw_da = (bulk_energy(a + h, l, &m).unwrap() - bulk_energy(a - h, l, &m).unwrap()) / (2.0 * h);
        let scale = 1.0 + mu + d;
        prop_assert!((dw_dl - p[(1, 1)]).abs() <= 1e-7 * scale * (1.0 + p[(1, 1)].abs()));
        prop_assert!((dw_da - (p[(0, 0)] + p[(2, 2)])).abs() <= 1e-7 * scale * (1.0 + p[(0, 0)].abs()));
        prop_assert_eq!(p[(0, 0)], p[(2, 2)]);
    }

    #[test]
    fn normal_rows_swap_roles(a in 0.4f64..2.0, l in 0.4f64..2.5, mu in 0.1f64..5.0, d in 0.0f64..50.0) {
        let t = incremental_bulk_coeffs(a, l, &mat(mu, d)).unwrap();
        prop_assert_eq!(t.coeff(C::CHI33, C::U_R), t.coeff(C::CHI11, C::U_OVER_R));
        prop_assert_eq!(t.coeff(C::CHI33, C::U_OVER_R), t.coeff(C::CHI11, C::U_R));
        prop_assert_eq!(t.coeff(C::CHI33, C::V_Z), t.coeff(C::CHI11, C::V_Z));
    }

    #[test]
    fn poisson_round_trip(nu in 0.0f64..0.499, mu in 0.1f64..10.0) {
        let m = BulkMaterial::from_poisson(mu, nu).unwrap();
        prop_assert!((m.poisson() - nu).abs() < 1e-12);
    }
}
