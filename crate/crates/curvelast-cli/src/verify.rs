//! Cross-path verification suites run by `curvelast verify`.

use std::str::FromStr;

use curvelast::base_state::{limiting_point, BaseState};
use curvelast::bulk_material::{
    bulk_moduli_check, chi_from_moduli, incremental_bulk_coeffs, BulkMaterial, DisplacementGradient,
};
use curvelast::dispersion::{
    boundary_matrix, critical_stretch, dispersion_det_incompressible_reduced, helfrich_boundary_matrix_explicit,
    DispersionModel, Q2Probe, MODE_RESIDUAL_TOL,
};
use curvelast::surface_material::{
    fd_surface_moduli_oracle, helfrich_surface_coeffs, incremental_surface_coeffs, invariant_derivatives,
    surface_moduli_aligned, surface_moduli_invariant, SurfaceKind, SurfaceModel, SurfaceModuli, SurfacePrincipalState,
};
use curvelast::tensor_core::{all_indices, Sparsity, Tensor4Block};
use curvelast::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Physics;

const BLOCK_NAMES: [&str; 4] = ["A_s", "B_s", "C_s", "D_s"];
const AXES: [char; 3] = ['θ', 'z', 'r'];

/// Tolerances of the moduli comparisons: relative to the reference entry,
/// with an absolute floor.
const FD_REL: f64 = 1e-6;
const INVARIANT_REL: f64 = 1e-10;
const MODULI_FLOOR: f64 = 1e-10;
const TWO_PATH_REL: f64 = 1e-12;
const EXPLICIT_REL: f64 = 1e-11;
const PROXY_REL: f64 = 1e-5;
const LONG_WAVE_ABS: f64 = 1e-4;

/// A deliberately perturbed stiffness entry, written `a_s:0011` (block,
/// then the four indices in the `θ, z, r` = `0, 1, 2` convention).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corruption {
    pub block: usize,
    pub index: (usize, usize, usize, usize),
}

impl FromStr for Corruption {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let err = || format!("expected `<block>:<ijkl>` such as `a_s:0011`, got `{s}`");
        let (block, idx) = s.split_once(':').ok_or_else(err)?;
        let block = BLOCK_NAMES
            .iter()
            .position(|b| b.eq_ignore_ascii_case(block))
            .ok_or_else(err)?;
        let digits: Vec<usize> = idx
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).filter(|&d| d < 3))
            .collect::<Option<_>>()
            .ok_or_else(err)?;
        let [i, j, k, l] = digits.as_slice() else {
            return Err(err());
        };
        Ok(Self {
            block,
            index: (*i, *j, *k, *l),
        })
    }
}

fn entry_name(block: usize, (i, j, k, l): (usize, usize, usize, usize)) -> String {
    format!(
        "{}[{i}{j}{k}{l}] ({}{}{}{})",
        BLOCK_NAMES[block], AXES[i], AXES[j], AXES[k], AXES[l]
    )
}

/// Inputs of a verification run.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyInput {
    /// Parameter set from the user's configuration, checked alongside the
    /// shipped sets.
    pub extra: Option<Physics>,
    pub corrupt: Option<Corruption>,
}

/// Outcome of one suite.
#[derive(Debug, Clone, Serialize)]
pub struct Suite {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub data: Value,
}

impl Suite {
    fn from_result(name: &'static str, r: Result<(bool, String, Value)>) -> Self {
        match r {
            Ok((pass, detail, data)) => Self {
                name,
                pass,
                detail,
                data,
            },
            Err(e) => Self {
                name,
                pass: false,
                detail: format!("error: {e}"),
                data: Value::Null,
            },
        }
    }
}

/// Full verification report.
#[derive(Debug, Clone)]
pub struct Report {
    pub suites: Vec<Suite>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.suites.iter().filter(|s| !s.pass).count()
    }

    /// `0` when every suite passes, otherwise `2 + failed` (capped at 125).
    pub fn exit_code(&self) -> u8 {
        match self.failed() {
            0 => 0,
            n => (2 + n).min(125) as u8,
        }
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!(
                "{} {}: {}\n",
                if s.pass { "PASS" } else { "FAIL" },
                s.name,
                s.detail
            ));
        }
        out.push_str(&format!("{} of {} suites failed\n", self.failed(), self.suites.len()));
        out
    }

    pub fn json(&self) -> String {
        let v = json!({
            "meta": {
                "normalization": "internal units mu = 1, A = 1",
                "failed": self.failed(),
                "exit_code": self.exit_code(),
            },
            "rows": self.suites,
        });
        let mut text = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
        text.push('\n');
        text
    }
}

/// Runs every suite.
pub fn run(input: &VerifyInput) -> Report {
    Report {
        suites: vec![
            Suite::from_result("fd_moduli", fd_moduli(input)),
            Suite::from_result("invariant_moduli", invariant_moduli(input)),
            Suite::from_result("bulk_two_path", bulk_two_path()),
            Suite::from_result("chi_s_two_path", chi_s_two_path(input)),
            Suite::from_result("omega_two_path", omega_two_path()),
            Suite::from_result("q2_probe", q2_probe()),
            Suite::from_result("long_wave_consistency", long_wave_consistency()),
            Suite::from_result("mode_validity", mode_validity(input)),
        ],
    }
}

fn shipped_models() -> Result<Vec<SurfaceModel>> {
    Ok(vec![
        SurfaceModel::tension(1.3)?,
        SurfaceModel::stretch(0.7, 2.1)?,
        SurfaceModel::helfrich(0.4, 1.9, -1.45)?,
        SurfaceModel::generic(0.3, 1.1, 0.8, 0.5)?,
    ])
}

/// Shipped surface models plus the user's, in units `μ = A = 1`.
fn surface_models(input: &VerifyInput) -> Result<Vec<SurfaceModel>> {
    let mut models = shipped_models()?;
    if let Some(p) = input.extra {
        models.push(p.surf.nondimensional(p.mat.mu, p.radius));
    }
    Ok(models)
}

/// Alternates cylinder states and general aligned states.
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

fn aligned(model: &SurfaceModel, s: &SurfacePrincipalState, corrupt: Option<Corruption>) -> Result<SurfaceModuli> {
    let mut m = surface_moduli_aligned(model, s)?;
    if let Some(c) = corrupt {
        let blocks = [&mut m.a_s, &mut m.b_s, &mut m.c_s, &mut m.d_s];
        let target = blocks.into_iter().nth(c.block).expect("block index below four");
        let mut full = target.lin_comb(1.0, &Tensor4Block::zeros(Sparsity::Full), 0.0);
        let (i, j, k, l) = c.index;
        let v = full.get(i, j, k, l);
        full.set(i, j, k, l, v + 1e-3 * v.abs().max(1.0));
        *target = full;
    }
    Ok(m)
}

/// Richardson combination of the finite-difference oracle at `1e-4` and
/// `5e-5`, which removes its `h²` truncation term.
fn fd_oracle(model: &SurfaceModel, s: &SurfacePrincipalState) -> Result<SurfaceModuli> {
    let coarse = fd_surface_moduli_oracle(model, s, 1e-4)?;
    let fine = fd_surface_moduli_oracle(model, s, 5e-5)?;
    let r = |f: &Tensor4Block, c: &Tensor4Block| f.lin_comb(4.0 / 3.0, c, -1.0 / 3.0);
    Ok(SurfaceModuli {
        a_s: r(&fine.a_s, &coarse.a_s),
        b_s: r(&fine.b_s, &coarse.b_s),
        c_s: r(&fine.c_s, &coarse.c_s),
        d_s: r(&fine.d_s, &coarse.d_s),
        js_bar: fine.js_bar,
    })
}

/// Worst entry of `|x − y| / max(rel·|y|, floor)` with its location.
#[derive(Debug, Clone, Copy, Default)]
struct Worst {
    excess: f64,
    block: usize,
    index: (usize, usize, usize, usize),
    got: f64,
    want: f64,
}

impl Worst {
    fn update(&mut self, x: &SurfaceModuli, y: &SurfaceModuli, rel: f64, floor: f64) {
        for (b, ((_, bx), (_, by))) in x.blocks().iter().zip(y.blocks().iter()).enumerate() {
            for (i, j, k, l) in all_indices() {
                let (got, want) = (bx.get(i, j, k, l), by.get(i, j, k, l));
                let e = (got - want).abs() / (rel * want.abs()).max(floor);
                if e > self.excess {
                    *self = Self {
                        excess: e,
                        block: b,
                        index: (i, j, k, l),
                        got,
                        want,
                    };
                }
            }
        }
    }

    fn outcome(&self, states: usize, rel: f64, against: &str) -> (bool, String, Value) {
        let entry = entry_name(self.block, self.index);
        let pass = self.excess <= 1.0;
        let detail = if pass {
            format!(
                "{states} states within {rel:e} relative of {against}; worst {:.2} of tolerance at {entry}",
                self.excess
            )
        } else {
            format!(
                "entry {entry} off by {:.3e} of tolerance ({} vs {against} {})",
                self.excess, self.got, self.want
            )
        };
        let data = json!({ "worst_entry": entry, "excess": self.excess, "states": states });
        (pass, detail, data)
    }
}

fn fd_moduli(input: &VerifyInput) -> Result<(bool, String, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFD);
    let mut worst = Worst::default();
    let mut states = 0;
    for model in surface_models(input)? {
        for n in 0..20 {
            let s = random_state(&mut rng, n)?;
            worst.update(
                &aligned(&model, &s, input.corrupt)?,
                &fd_oracle(&model, &s)?,
                FD_REL,
                MODULI_FLOOR,
            );
            states += 1;
        }
    }
    Ok(worst.outcome(states, FD_REL, "finite differences"))
}

fn invariant_moduli(input: &VerifyInput) -> Result<(bool, String, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1A);
    let mut worst = Worst::default();
    let mut states = 0;
    for model in surface_models(input)? {
        for n in 0..20 {
            let s = random_state(&mut rng, n)?;
            let invariant = surface_moduli_invariant(&invariant_derivatives(&model, &s.invariants()), &s)?;
            worst.update(
                &aligned(&model, &s, input.corrupt)?,
                &invariant,
                INVARIANT_REL,
                MODULI_FLOOR,
            );
            states += 1;
        }
    }
    Ok(worst.outcome(states, INVARIANT_REL, "the invariant form"))
}

fn bulk_two_path() -> Result<(bool, String, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let (a, l) = (rng.random_range(0.4..2.0), rng.random_range(0.4..2.5));
        let m = BulkMaterial::new(rng.random_range(0.1..10.0), rng.random_range(0.0..100.0))?;
        let g = DisplacementGradient {
            u_over_r: rng.random_range(-1.0..1.0),
            u_r: rng.random_range(-1.0..1.0),
            u_z: rng.random_range(-1.0..1.0),
            v_z: rng.random_range(-1.0..1.0),
            v_r: rng.random_range(-1.0..1.0),
        };
        let table = incremental_bulk_coeffs(a, l, &m)?.evaluate(&g);
        let contracted = chi_from_moduli(&bulk_moduli_check(a, l, &m)?, a, l, &g.to_tensor());
        worst = worst.max((table - contracted).max_abs() / table.max_abs());
    }
    Ok((
        worst <= TWO_PATH_REL,
        format!("component table vs moduli contraction, 100 draws: {worst:.1e} (limit {TWO_PATH_REL:e})"),
        json!({ "max_rel": worst }),
    ))
}

fn chi_s_two_path(input: &VerifyInput) -> Result<(bool, String, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    let mut models = Vec::new();
    for _ in 0..50 {
        models.push(SurfaceModel::helfrich(
            rng.random_range(0.0..5.0),
            rng.random_range(0.0..5.0),
            rng.random_range(-2.5..2.5),
        )?);
    }
    if let Some(p) = input.extra.filter(|p| p.surf.kind == SurfaceKind::HelfrichBending) {
        models.push(p.surf.nondimensional(p.mat.mu, p.radius));
    }
    let mut worst = 0.0_f64;
    for model in &models {
        let (a, l, r) = (
            rng.random_range(0.5..1.8),
            rng.random_range(0.5..2.5),
            rng.random_range(0.5..2.0),
        );
        let generic = incremental_surface_coeffs(model, a, l, r)?;
        let table = helfrich_surface_coeffs(model, a, l, r)?;
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
    Ok((
        worst <= TWO_PATH_REL,
        format!(
            "generic vs Helfrich table, {} states: {worst:.1e} (limit {TWO_PATH_REL:e})",
            models.len()
        ),
        json!({ "max_rel": worst, "states": models.len() }),
    ))
}

fn omega_two_path() -> Result<(bool, String, Value)> {
    let mut explicit_worst = 0.0_f64;
    for (surf, l, d) in [
        (SurfaceModel::helfrich(0.5, 2.0, -1.45)?, 1.3, 49.0),
        (SurfaceModel::helfrich(14.0, 1.9, -2.0)?, 0.85, 4.0),
        (SurfaceModel::tension(6.5)?, 1.6, 10.0),
    ] {
        let base = BaseState::solve(l, &BulkMaterial::new(1.0, d)?, &surf, 1.0)?;
        for k in [0.05, 0.4, 1.7] {
            let generic = boundary_matrix(k, &base)?;
            let explicit = helfrich_boundary_matrix_explicit(k, &base)?;
            for (gr, er) in generic.iter().zip(&explicit) {
                for (g, e) in gr.iter().zip(er) {
                    explicit_worst = explicit_worst.max((g + e).norm() / g.norm().max(1e-300));
                }
            }
        }
    }

    let (g, b, h) = (6.5, 0.7, -1.45);
    let proxy = DispersionModel::Compressible {
        mat: BulkMaterial::new(1.0, 1e8)?,
        surf: SurfaceModel::helfrich(g, b, h)?,
        radius_ref: 1.0,
    };
    let mut proxy_worst = 0.0_f64;
    for k in [0.1, 0.9] {
        let lambdas: Vec<f64> = (0..=40)
            .map(|i| 0.5 + 1.5 * i as f64 / 40.0)
            .filter(|l| (l - 1.0).abs() > 1e-7)
            .collect();
        let closed = lambdas
            .iter()
            .map(|&l| dispersion_det_incompressible_reduced(k, l, g, b, h))
            .collect::<Result<Vec<f64>>>()?;
        let scale = closed.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        for (&l, &c) in lambdas.iter().zip(&closed) {
            let n = proxy.reduced_det_shifted(k, l)?.value;
            proxy_worst = proxy_worst.max((n - c).abs() / scale);
        }
    }
    let pass = explicit_worst <= EXPLICIT_REL && proxy_worst <= PROXY_REL;
    Ok((
        pass,
        format!(
            "explicit Helfrich conditions vs generic assembly {explicit_worst:.1e} (limit {EXPLICIT_REL:e}); \
             closed form vs D = 1e8 solver {proxy_worst:.1e} of scale (limit {PROXY_REL:e})"
        ),
        json!({ "explicit_vs_generic": explicit_worst, "closed_form_vs_proxy": proxy_worst }),
    ))
}

fn q2_probe() -> Result<(bool, String, Value)> {
    let mut rows = Vec::new();
    let mut all_confirmed = true;
    let (mut worst_square, mut best_root) = (0.0_f64, f64::INFINITY);
    for (lambda, d) in [(1.3, 4.0), (0.8, 49.0), (2.0, 1.0)] {
        let mat = BulkMaterial::new(1.0, d)?;
        let a = BaseState::solve(lambda, &mat, &SurfaceModel::tension(0.5)?, 1.0)?.a;
        let p = Q2Probe::new(a, lambda, &mat);
        all_confirmed &= p.square_reading_confirmed();
        worst_square = worst_square.max(p.residual_as_square);
        best_root = best_root.min(p.residual_as_root);
        rows.push(json!({
            "lambda": lambda, "d_modulus": d, "a": a, "printed": p.printed,
            "residual_if_q2_squared": p.residual_as_square,
            "residual_if_q2": p.residual_as_root,
        }));
    }
    let verdict = if all_confirmed {
        "the printed expression is q2^2"
    } else {
        "inconclusive"
    };
    Ok((
        all_confirmed,
        format!(
            "reading q2^2 = K1/K4: characteristic residual <= {worst_square:.1e}; reading q2 = K1/K4: residual >= {best_root:.1e}; verdict: {verdict}"
        ),
        json!({ "verdict": verdict, "cases": rows }),
    ))
}

fn long_wave_consistency() -> Result<(bool, String, Value)> {
    let mut worst = 0.0_f64;
    let mut rows = Vec::new();
    for (nu, surf) in [
        (0.49, SurfaceModel::stretch(8.0, 1.0)?),
        (0.4, SurfaceModel::helfrich(14.0, 1.9, -2.0)?),
        (0.3, SurfaceModel::tension(8.0)?),
    ] {
        let mat = BulkMaterial::from_poisson(1.0, nu)?;
        let lc = critical_stretch(1e-4, &mat, &surf, 1.0, (0.3, 6.0))?.lambda_crit;
        let lp = limiting_point(&mat, &surf, 1.0, (0.9 * lc, 1.1 * lc))?;
        worst = worst.max((lc - lp).abs());
        rows.push(json!({ "nu": nu, "lambda_crit_small_k": lc, "limiting_point": lp }));
    }
    Ok((
        worst <= LONG_WAVE_ABS,
        format!("critical stretch at k = 1e-4 vs force-curve limiting point, 3 sets: max |diff| {worst:.1e} (limit {LONG_WAVE_ABS:e})"),
        json!({ "max_abs_diff": worst, "cases": rows }),
    ))
}

fn mode_validity(input: &VerifyInput) -> Result<(bool, String, Value)> {
    let mut models = vec![
        DispersionModel::Compressible {
            mat: BulkMaterial::new(1.0, 49.0)?,
            surf: SurfaceModel::helfrich(2.0, 1.0, -1.45)?,
            radius_ref: 1.0,
        },
        DispersionModel::Compressible {
            mat: BulkMaterial::new(1.0, 4.0)?,
            surf: SurfaceModel::stretch(3.0, 5.0)?,
            radius_ref: 1.0,
        },
        DispersionModel::Compressible {
            mat: BulkMaterial::new(1.0, 1e8)?,
            surf: SurfaceModel::tension(6.5)?,
            radius_ref: 1.0,
        },
    ];
    if let Some(p) = input.extra {
        models.push(DispersionModel::Compressible {
            mat: p.mat,
            surf: p.surf,
            radius_ref: p.radius,
        });
    }
    let mut worst = 0.0_f64;
    let mut evaluations = 0;
    for model in &models {
        for k in [0.01, 0.1, 0.5, 1.0, 3.0, 10.0] {
            for i in 0..10 {
                let l = 0.55 + 0.3 * i as f64;
                if let Ok(e) = model.reduced_det_shifted(k, l) {
                    worst = worst.max(e.mode_residual);
                    evaluations += 1;
                }
            }
        }
    }
    Ok((
        evaluations > 0 && worst < MODE_RESIDUAL_TOL,
        format!("max relative PDE residual {worst:.1e} over {evaluations} evaluations (limit {MODE_RESIDUAL_TOL:e})"),
        json!({ "max_residual": worst, "evaluations": evaluations }),
    ))
}
