//! Acceptance report: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use curvelast::base_state::{limiting_point, solve_azimuthal_stretch};
use curvelast::bulk_material::{
    bulk_moduli_check, chi_from_moduli, incremental_bulk_coeffs, BulkMaterial, DisplacementGradient,
};
use curvelast::dispersion::{
    critical_stretch, critical_stretch_model, dispersion_det_incompressible, dispersion_det_incompressible_reduced,
    incompressible_small_k_limit, tension_threshold, BifurcationPoint, DispersionModel, SCAN_STEPS,
};
use curvelast::surface_material::{
    fd_surface_moduli_oracle, helfrich_surface_coeffs, incremental_surface_coeffs, invariant_derivatives,
    surface_moduli_aligned, surface_moduli_invariant, InvariantEnergy, SurfaceModel, SurfaceModuli,
    SurfacePrincipalState,
};
use curvelast::tensor_core::all_indices;
use curvelast::{CurvelastError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion.
struct Outcome {
    pass: bool,
    detail: String,
}

/// Largest mode residual seen while evaluating criteria 2 to 5.
#[derive(Default)]
struct ModeLog {
    max: f64,
    evaluations: usize,
}

impl ModeLog {
    fn record(&mut self, bp: &BifurcationPoint) {
        self.max = self.max.max(bp.max_mode_residual);
        self.evaluations += 1;
    }

    /// Covers searches that end without a root: the scan points are
    /// re-evaluated and their mode residuals logged.
    fn record_scan(&mut self, k: f64, model: &DispersionModel, (lo, hi): (f64, f64)) {
        for i in 0..=SCAN_STEPS {
            let l = lo + (hi - lo) * i as f64 / SCAN_STEPS as f64;
            if let Ok(e) = model.reduced_det_shifted(k, l) {
                self.max = self.max.max(e.mode_residual);
                self.evaluations += 1;
            }
        }
    }
}

fn bulk(mu: f64, d: f64) -> BulkMaterial {
    BulkMaterial { mu, d_modulus: d }
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Closed-form values computed with 30-digit arithmetic:
/// `(k, λ, γ, β_s, H₀, Ω)`.
const CLOSED_FORM_REFERENCE: [(f64, f64, f64, f64, f64, f64); 5] = [
    (0.1, 1.5, 6.5, 0.0, 0.0, -25.776_129_399_715_103),
    (0.5, 0.8, 3.4, 4.4, -1.45, -2.346_453_397_941_029_4),
    (1.7, 2.2, 1.0, 8.0, -1.45, 166.188_353_406_884_94),
    (3.0, 1.2, 0.0, 0.0, 0.0, 64.577_683_338_821_74),
    (0.05, 0.6, 14.0, 1.9, -2.0, 17.559_386_537_054_294),
];

fn criterion_1() -> Result<Outcome> {
    let start = Instant::now();
    let mut worst_ref = 0.0_f64;
    for (k, l, g, b, h, want) in CLOSED_FORM_REFERENCE {
        let got = dispersion_det_incompressible(k, l, g, b, h)?;
        worst_ref = worst_ref.max((got - want).abs() / want.abs());
    }
    let mut worst_limit = 0.0_f64;
    for lambda in [0.6f64, 0.8, 1.3, 2.0, 3.0] {
        let expanded = 16.0 * lambda.sqrt() * (lambda.powi(3) - 1.0) * (lambda.powi(3) + 2.0);
        let numerical = dispersion_det_incompressible(1e-4, lambda, 0.0, 0.0, 0.0)?;
        worst_limit = worst_limit.max((numerical - expanded).abs() / expanded.abs());
    }
    let mut worst_gamma = 0.0_f64;
    for lambda in [0.7, 1.0, 1.4, 2.0] {
        let root = bisect(0.5, 50.0, |g| {
            dispersion_det_incompressible_reduced(1e-4, lambda, g, 0.0, 0.0).unwrap()
        });
        worst_gamma = worst_gamma.max((root - tension_threshold(lambda)).abs());
    }
    let consistent = (incompressible_small_k_limit(1.0, 6.0, 0.0, 0.0)).abs() == 0.0 && tension_threshold(1.0) == 6.0;
    let elapsed = start.elapsed().as_secs_f64();
    Ok(Outcome {
        pass: worst_ref <= 1e-13 && worst_limit <= 1e-6 && worst_gamma <= 1e-5 && consistent && elapsed < 1.0,
        detail: format!(
            "closed form vs 30-digit reference rel {worst_ref:.1e}; k=1e-4 limit rel {worst_limit:.1e}; \
             γ* root error {worst_gamma:.1e}; γ*(1) = {}; {elapsed:.3} s",
            tension_threshold(1.0)
        ),
    })
}

/// Compares the compressible search at `D = 1e8` with the closed form at one
/// `k`; `Ok(None)` means both paths agree that there is no root.
fn compare_paths(k: f64, surf: &SurfaceModel, bracket: (f64, f64), log: &mut ModeLog) -> Result<Option<f64>> {
    let closed = DispersionModel::Incompressible {
        gamma: surf.gamma,
        beta_s: surf.beta_s,
        h0: surf.h0,
    };
    let compressible = DispersionModel::Compressible {
        mat: bulk(1.0, 1e8),
        surf: *surf,
        radius_ref: 1.0,
    };
    let c = critical_stretch_model(k, &compressible, bracket);
    let n = critical_stretch_model(k, &closed, bracket);
    match (c, n) {
        (Ok(c), Ok(n)) => {
            log.record(&c);
            Ok(Some((c.lambda_crit - n.lambda_crit).abs()))
        }
        (Err(CurvelastError::NoBracket { .. }), Err(CurvelastError::NoBracket { .. })) => {
            log.record_scan(k, &compressible, bracket);
            Ok(None)
        }
        (c, n) => Err(CurvelastError::NoConvergence {
            what: "path comparison",
            detail: format!("k={k}: compressible {c:?}, closed form {n:?}"),
        }),
    }
}

fn criterion_2(log: &mut ModeLog) -> Result<Outcome> {
    let start = Instant::now();
    let grid: Vec<f64> = (1..=10).map(|i| 0.05 * 40f64.powf(i as f64 / 10.0)).collect();
    let bracket = (0.3, 4.0);
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, surf) in [
        ("γ=6.5", SurfaceModel::tension(6.5)?),
        ("γ=0.5 β=2 H₀=−1.45", SurfaceModel::helfrich(0.5, 2.0, -1.45)?),
        ("γ=1 β=8 H₀=−1.45", SurfaceModel::helfrich(1.0, 8.0, -1.45)?),
    ] {
        let (mut roots, mut absent, mut worst) = (0, 0, 0.0_f64);
        for &k in &grid {
            match compare_paths(k, &surf, bracket, log) {
                Ok(Some(d)) => {
                    roots += 1;
                    worst = worst.max(d);
                }
                Ok(None) => absent += 1,
                Err(e) => {
                    pass = false;
                    parts.push(format!("{name}: {e}"));
                }
            }
        }
        pass &= worst <= 1e-3;
        parts.push(format!(
            "{name}: {roots} roots (max |Δλ| {worst:.1e}), {absent} absent on both paths"
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 30.0;
    Ok(Outcome {
        pass,
        detail: format!("{}; {elapsed:.2} s", parts.join("; ")),
    })
}

/// Searches a 40-point geometric grid for the largest `λ_crit` and checks the
/// interior-maximum property at `k*`.
fn interior_maximum(model: &DispersionModel, bracket: (f64, f64), log: &mut ModeLog) -> Result<(bool, String)> {
    let grid: Vec<f64> = (0..40).map(|i| 0.01 * 400f64.powf(i as f64 / 39.0)).collect();
    let mut best: Option<(usize, f64)> = None;
    for (i, &k) in grid.iter().enumerate() {
        if let Ok(bp) = critical_stretch_model(k, model, bracket) {
            log.record(&bp);
            if best.is_none_or(|(_, l)| bp.lambda_crit > l) {
                best = Some((i, bp.lambda_crit));
            }
        }
    }
    let Some((i, l_star)) = best else {
        return Ok((false, "no root on the grid".into()));
    };
    let k_star = grid[i];
    let mut side = |k: f64| -> Result<f64> {
        let bp = critical_stretch_model(k, model, bracket)?;
        log.record(&bp);
        Ok(bp.lambda_crit)
    };
    let (below, above) = (side(k_star / 4.0)?, side(4.0 * k_star)?);
    let ok = i > 0 && i + 1 < grid.len() && l_star > below && l_star > above;
    Ok((
        ok,
        format!("k*={k_star:.4} λ*={l_star:.6} > λ(k*/4)={below:.6}, λ(4k*)={above:.6}"),
    ))
}

fn criterion_3(log: &mut ModeLog) -> Result<Outcome> {
    let model = DispersionModel::Incompressible {
        gamma: 3.4,
        beta_s: 4.4,
        h0: -1.45,
    };
    let (pass, detail) = interior_maximum(&model, (1.0 + 1e-6, 6.0), log)?;
    Ok(Outcome {
        pass,
        detail: format!("incompressible γ=3.4 β=4.4 H₀=−1.45: {detail}"),
    })
}

fn criterion_4(log: &mut ModeLog) -> Result<Outcome> {
    let stretch = DispersionModel::Compressible {
        mat: BulkMaterial::from_poisson(1.0, 0.49)?,
        surf: SurfaceModel::stretch(12.0, 30.0)?,
        radius_ref: 1.0,
    };
    let helfrich = DispersionModel::Compressible {
        mat: BulkMaterial::from_poisson(1.0, 0.4)?,
        surf: SurfaceModel::helfrich(14.0, 1.9, -2.0)?,
        radius_ref: 1.0,
    };
    let (p1, d1) = interior_maximum(&stretch, (0.3, 6.0), log)?;
    let (p2, d2) = interior_maximum(&helfrich, (0.3, 6.0), log)?;
    Ok(Outcome {
        pass: p1 && p2,
        detail: format!("ν=0.49 stretch γ=12 α=30: {d1}; ν=0.4 Helfrich γ=14 β=1.9 H₀=−2: {d2}"),
    })
}

fn criterion_5(log: &mut ModeLog) -> Result<Outcome> {
    let sets = [
        (0.49, SurfaceModel::stretch(8.0, 1.0)?),
        (0.49, SurfaceModel::stretch(12.0, 30.0)?),
        (0.4, SurfaceModel::helfrich(14.0, 1.9, -2.0)?),
        (0.4, SurfaceModel::helfrich(5.0, 0.5, -2.0)?),
        (0.3, SurfaceModel::tension(8.0)?),
    ];
    let mut worst = 0.0_f64;
    let mut parts = Vec::new();
    for (nu, surf) in sets {
        let mat = BulkMaterial::from_poisson(1.0, nu)?;
        let bp = critical_stretch(1e-4, &mat, &surf, 1.0, (0.3, 6.0))?;
        log.record(&bp);
        let lc = bp.lambda_crit;
        let lp = limiting_point(&mat, &surf, 1.0, (0.9 * lc, 1.1 * lc))?;
        worst = worst.max((lc - lp).abs());
        parts.push(format!("{lc:.7}/{lp:.7}"));
    }
    Ok(Outcome {
        pass: worst <= 1e-4,
        detail: format!("Ω root / dF_z/dλ root: {}; max diff {worst:.1e}", parts.join(", ")),
    })
}

/// Richardson combination of the finite-difference oracle at `1e-4` and
/// `5e-5`, which removes its `h²` truncation term.
fn fd_oracle(energy: &dyn InvariantEnergy, s: &SurfacePrincipalState) -> Result<SurfaceModuli> {
    let coarse = fd_surface_moduli_oracle(energy, s, 1e-4)?;
    let fine = fd_surface_moduli_oracle(energy, s, 5e-5)?;
    Ok(SurfaceModuli {
        a_s: fine.a_s.lin_comb(4.0 / 3.0, &coarse.a_s, -1.0 / 3.0),
        b_s: fine.b_s.lin_comb(4.0 / 3.0, &coarse.b_s, -1.0 / 3.0),
        c_s: fine.c_s.lin_comb(4.0 / 3.0, &coarse.c_s, -1.0 / 3.0),
        d_s: fine.d_s.lin_comb(4.0 / 3.0, &coarse.d_s, -1.0 / 3.0),
        js_bar: fine.js_bar,
    })
}

/// Largest `|x − y| / max(rel·|y|, floor)` over all entries.
fn excess(x: &SurfaceModuli, y: &SurfaceModuli, rel: f64, floor: f64) -> f64 {
    let mut worst = 0.0_f64;
    for ((_, bx), (_, by)) in x.blocks().iter().zip(y.blocks().iter()) {
        for (i, j, k, l) in all_indices() {
            let (a, b) = (bx.get(i, j, k, l), by.get(i, j, k, l));
            worst = worst.max((a - b).abs() / (rel * b.abs()).max(floor));
        }
    }
    worst
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> Result<SurfacePrincipalState> {
    if n.is_multiple_of(2) {
        SurfacePrincipalState::cylinder(
            rng.random_range(0.5..1.8),
            rng.random_range(0.5..2.0),
            rng.random_range(0.5..2.0),
        )
    } else {
        SurfacePrincipalState::new(
            rng.random_range(0.5..1.8),
            rng.random_range(0.5..1.8),
            rng.random_range(-1.5..1.5),
            rng.random_range(-1.5..1.5),
            1.0,
        )
    }
}

fn criterion_6() -> Result<Outcome> {
    let models = [
        SurfaceModel::tension(1.3)?,
        SurfaceModel::stretch(0.7, 2.1)?,
        SurfaceModel::helfrich(0.4, 1.9, -1.45)?,
        SurfaceModel::generic(0.3, 1.1, 0.8, 0.5)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE);
    let (mut fd_worst, mut inv_worst) = (0.0_f64, 0.0_f64);
    for model in &models {
        for n in 0..50 {
            let s = random_state(&mut rng, n)?;
            let aligned = surface_moduli_aligned(model, &s)?;
            fd_worst = fd_worst.max(excess(&aligned, &fd_oracle(model, &s)?, 1e-6, 1e-10));
            let invariant = surface_moduli_invariant(&invariant_derivatives(model, &s.invariants()), &s)?;
            inv_worst = inv_worst.max(excess(&invariant, &aligned, 1e-10, 1e-10));
        }
    }
    let mut bulk_worst = 0.0_f64;
    for _ in 0..100 {
        let (a, l) = (rng.random_range(0.4..2.0), rng.random_range(0.4..2.5));
        let m = bulk(rng.random_range(0.1..10.0), rng.random_range(0.0..100.0));
        let g = DisplacementGradient {
            u_over_r: rng.random_range(-1.0..1.0),
            u_r: rng.random_range(-1.0..1.0),
            u_z: rng.random_range(-1.0..1.0),
            v_z: rng.random_range(-1.0..1.0),
            v_r: rng.random_range(-1.0..1.0),
        };
        let table = incremental_bulk_coeffs(a, l, &m)?.evaluate(&g);
        let contracted = chi_from_moduli(&bulk_moduli_check(a, l, &m)?, a, l, &g.to_tensor());
        bulk_worst = bulk_worst.max((table - contracted).max_abs() / table.max_abs());
    }
    Ok(Outcome {
        pass: fd_worst <= 1.0 && inv_worst <= 1.0 && bulk_worst <= 1e-12,
        detail: format!(
            "aligned vs FD {fd_worst:.2} of tolerance (1e-6 rel, 1e-10 floor, 200 states); \
             invariant vs aligned {inv_worst:.2} of 1e-10; bulk two-path {bulk_worst:.1e} (100 draws)"
        ),
    })
}

fn criterion_7() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC415);
    let mut worst = 0.0_f64;
    for _ in 0..50 {
        let model = SurfaceModel::helfrich(
            rng.random_range(0.0..5.0),
            rng.random_range(0.0..5.0),
            rng.random_range(-2.5..2.5),
        )?;
        let (a, l, r) = (
            rng.random_range(0.5..1.8),
            rng.random_range(0.5..2.5),
            rng.random_range(0.5..2.0),
        );
        let generic = incremental_surface_coeffs(&model, a, l, r)?;
        let table = helfrich_surface_coeffs(&model, a, l, r)?;
        let floor = table.max_abs();
        for i in 0..3 {
            for j in 0..3 {
                for n in 0..6 {
                    let (g, t) = (generic.coeff(i, j, n), table.coeff(i, j, n));
                    worst = worst.max((g - t).abs() / t.abs().max(floor));
                }
            }
        }
    }
    Ok(Outcome {
        pass: worst <= 1e-12,
        detail: format!("generic vs Helfrich table, 50 states: {worst:.1e}"),
    })
}

fn criterion_8() -> Result<Outcome> {
    let zero = SurfaceModel::tension(0.0)?;
    let mut worst = 0.0_f64;
    for lambda in [0.5f64, 0.8, 1.5, 2.0, 3.0] {
        let a = solve_azimuthal_stretch(lambda, &bulk(1.0, 1e8), &zero, 1.0, None)?;
        worst = worst.max((a - lambda.powf(-0.5)).abs());
    }
    let golden = solve_azimuthal_stretch(1.0, &bulk(1.0, 0.0), &SurfaceModel::tension(1.0)?, 1.0, None)?;
    let err = (golden - (5f64.sqrt() - 1.0) / 2.0).abs();
    Ok(Outcome {
        pass: worst <= 1e-4 && err <= 1e-12,
        detail: format!("D=1e8 |a − λ^(-1/2)| ≤ {worst:.1e}; golden root error {err:.1e}"),
    })
}

fn criterion_9(log: &ModeLog) -> Outcome {
    Outcome {
        pass: log.max < 1e-8 && log.evaluations > 0,
        detail: format!(
            "max mode residual {:.1e} over {} searches and scans",
            log.max, log.evaluations
        ),
    }
}

fn report(n: usize, outcome: Result<Outcome>) -> bool {
    let o = outcome.unwrap_or_else(|e| Outcome {
        pass: false,
        detail: format!("error: {e}"),
    });
    println!("{} criterion {n}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    o.pass
}

fn main() -> ExitCode {
    let mut log = ModeLog::default();
    let results = [
        report(1, criterion_1()),
        report(2, criterion_2(&mut log)),
        report(3, criterion_3(&mut log)),
        report(4, criterion_4(&mut log)),
        report(5, criterion_5(&mut log)),
        report(6, criterion_6()),
        report(7, criterion_7()),
        report(8, criterion_8()),
        report(9, Ok(criterion_9(&log))),
    ];
    if results.iter().all(|p| *p) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
