//! The `base-state`, `dispersion` and `bifurcation` workflows.

use curvelast::base_state::{axial_force_incompressible, BaseState};
use curvelast::dispersion::{bifurcation_curve, dispersion_det_incompressible_reduced, DispersionModel};
use curvelast::CurvelastError;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::config::{ConfigError, Format, Physics, RunConfig};
use crate::output::{csv, fmt12, json12};

/// Header of the dispersion table.
pub const DISPERSION_HEADER: [&str; 4] = ["k", "lambda", "omega", "status"];
/// Header of the bifurcation table.
pub const BIFURCATION_HEADER: [&str; 5] = ["k", "lambda_crit", "a", "omega_residual", "status"];
/// Header of the base-state table.
pub const BASE_STATE_HEADER: [&str; 5] = ["lambda", "a", "F_z", "residual", "nu"];

const NORMALIZATION: &str = "inputs in user units; internal units mu = 1, A = 1; lambda and a are stretches; \
     F_z in user force units; k in inverse deformed user length; omega and omega_residual are the \
     nondimensional reduced determinant (trivial repeated-root factor removed)";

/// A failed command.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// No root could be bracketed.
    #[error("{0}")]
    Bracket(String),
    /// The inputs are outside the domain of the numerical routines.
    #[error("{0}")]
    Domain(String),
    #[error("cannot write output: {0}")]
    Io(String),
}

impl From<CurvelastError> for CliError {
    fn from(e: CurvelastError) -> Self {
        match e {
            CurvelastError::NoBracket { .. } | CurvelastError::NoConvergence { .. } => Self::Bracket(e.to_string()),
            _ => Self::Domain(e.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Bracket(_) => 2,
            Self::Config(_) | Self::Domain(_) | Self::Io(_) => 1,
        }
    }
}

fn missing(what: &str) -> CliError {
    ConfigError::Invalid(format!("missing key `{what}`")).into()
}

/// `meta` block shared by every JSON report.
pub fn meta(cfg: &RunConfig, phys: &Physics) -> Value {
    let mut params = Map::new();
    params.insert("mu".into(), json12(phys.mat.mu));
    params.insert(
        "d_modulus".into(),
        if phys.incompressible {
            Value::Null
        } else {
            json12(phys.mat.d_modulus)
        },
    );
    params.insert("gamma".into(), json12(phys.surf.gamma));
    params.insert("alpha_s".into(), json12(phys.surf.alpha_s));
    params.insert("beta_s".into(), json12(phys.surf.beta_s));
    params.insert("h0".into(), json12(phys.surf.h0));
    params.insert("radius".into(), json12(phys.radius));
    params.insert("incompressible".into(), Value::Bool(phys.incompressible));
    if let Some(l) = cfg.lambda {
        params.insert("lambda".into(), json12(l));
    }
    if let Some(k) = cfg.k {
        params.insert("k".into(), json12(k));
    }
    json!({
        "normalization": NORMALIZATION,
        "model": phys.model,
        "params": params,
        "route": phys.route(),
    })
}

/// Renders a table as CSV or as the JSON report.
fn render(cfg: &RunConfig, phys: &Physics, header: &[&str], rows: &[Vec<Value>]) -> String {
    match cfg.format() {
        Format::Csv => {
            let text: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|v| match v {
                            Value::Number(n) => fmt12(n.as_f64().unwrap_or(f64::NAN)),
                            Value::Null => "nan".into(),
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        })
                        .collect()
                })
                .collect();
            csv(header, &text)
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect()))
                .collect();
            let mut text = serde_json::to_string_pretty(&json!({ "meta": meta(cfg, phys), "rows": rows }))
                .expect("JSON values always serialize");
            text.push('\n');
            text
        }
    }
}

/// Base state at a single stretch. JSON unless `format = csv`.
pub fn base_state(cfg: &RunConfig) -> Result<String, CliError> {
    let phys = cfg.physics()?;
    let lambda = cfg.lambda.ok_or_else(|| missing("lambda"))?;
    let (a, f_z, residual, nu) = if phys.uses_closed_form() {
        let f_z = axial_force_incompressible(lambda, phys.mat.mu, &phys.surf, phys.radius)?;
        (1.0 / lambda.sqrt(), f_z, 0.0, 0.5)
    } else {
        let state = BaseState::solve(lambda, &phys.mat, &phys.surf, phys.radius)?;
        let nu = if phys.incompressible { 0.5 } else { phys.mat.poisson() };
        (state.a, state.axial_force()?, state.residual()?, nu)
    };
    let values = [lambda, a, f_z, residual, nu];
    if cfg.format == Some(Format::Csv) {
        let row: Vec<String> = values.iter().map(|&v| fmt12(v)).collect();
        return Ok(csv(&BASE_STATE_HEADER, &[row]));
    }
    let mut report = Map::new();
    report.insert("meta".into(), meta(cfg, &phys));
    for (h, v) in BASE_STATE_HEADER.iter().zip(values) {
        report.insert(h.to_string(), json12(v));
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(report)).expect("JSON values always serialize");
    text.push('\n');
    Ok(text)
}

/// Determinant evaluator in user units.
enum Evaluator {
    ClosedForm {
        radius: f64,
        gamma: f64,
        beta_s: f64,
        h0: f64,
    },
    Solver(DispersionModel),
}

impl Evaluator {
    fn new(phys: &Physics) -> Self {
        if phys.uses_closed_form() {
            let s = phys.surf.nondimensional(phys.mat.mu, phys.radius);
            Self::ClosedForm {
                radius: phys.radius,
                gamma: s.gamma,
                beta_s: s.beta_s,
                h0: s.h0,
            }
        } else {
            Self::Solver(DispersionModel::Compressible {
                mat: phys.mat,
                surf: phys.surf,
                radius_ref: phys.radius,
            })
        }
    }

    /// Model for curve tracing together with the factor that turns a user
    /// wavenumber into the model's wavenumber.
    fn model(&self) -> (DispersionModel, f64) {
        match *self {
            Self::ClosedForm {
                radius,
                gamma,
                beta_s,
                h0,
            } => (DispersionModel::Incompressible { gamma, beta_s, h0 }, radius),
            Self::Solver(m) => (m, 1.0),
        }
    }

    fn omega(&self, k: f64, lambda: f64) -> (f64, &'static str) {
        let value = match *self {
            Self::ClosedForm {
                radius,
                gamma,
                beta_s,
                h0,
            } => dispersion_det_incompressible_reduced(k * radius, lambda, gamma, beta_s, h0),
            Self::Solver(m) => m.reduced_det(k, lambda).map(|e| e.value),
        };
        match value {
            Ok(v) => (v, "ok"),
            Err(CurvelastError::DegenerateRoots { .. }) => (f64::NAN, "degenerate_roots"),
            Err(CurvelastError::NoBracket { .. } | CurvelastError::NoConvergence { .. }) => (f64::NAN, "no_base_state"),
            Err(_) => (f64::NAN, "error"),
        }
    }
}

/// `Ω` over a wavenumber grid at fixed `λ`, or over a stretch grid at fixed `k`.
pub fn dispersion(cfg: &RunConfig) -> Result<String, CliError> {
    let phys = cfg.physics()?;
    let grid: Vec<(f64, f64)> = match (cfg.lambda, cfg.k_range, cfg.k, cfg.lambda_range) {
        (Some(l), Some(kr), None, None) => {
            validate_k_range(kr.min, kr.max, kr.steps)?;
            kr.points().into_iter().map(|k| (k, l)).collect()
        }
        (None, None, Some(k), Some(lr)) => {
            let steps = lr.steps.ok_or_else(|| {
                ConfigError::Invalid("`lambda_range` needs a step count (`lo, hi, steps`) for a dispersion scan".into())
            })?;
            if !(lr.lo > 0.0 && lr.hi > lr.lo) || steps < 2 {
                return Err(ConfigError::Invalid(
                    "`lambda_range` must satisfy 0 < lo < hi with at least 2 steps".into(),
                )
                .into());
            }
            lr.points().into_iter().map(|l| (k, l)).collect()
        }
        _ => {
            return Err(ConfigError::Invalid(
                "dispersion needs either `lambda` with `k_range`, or `k` with `lambda_range` (not both)".into(),
            )
            .into())
        }
    };
    let eval = Evaluator::new(&phys);
    let rows: Vec<Vec<Value>> = grid
        .par_iter()
        .map(|&(k, l)| {
            let (omega, status) = eval.omega(k, l);
            vec![json12(k), json12(l), json12(omega), Value::String(status.into())]
        })
        .collect();
    Ok(render(cfg, &phys, &DISPERSION_HEADER, &rows))
}

fn validate_k_range(min: f64, max: f64, steps: usize) -> Result<(), CliError> {
    let ok = min > 0.0 && steps >= 1 && (max > min || (steps == 1 && max >= min));
    if !ok {
        return Err(
            ConfigError::Invalid("`k_range` must satisfy 0 < k_min < k_max with at least 1 step".into()).into(),
        );
    }
    Ok(())
}

/// Traced bifurcation curve. Fails with a bracket error when no wavenumber of
/// the grid has a root.
pub fn bifurcation(cfg: &RunConfig) -> Result<String, CliError> {
    let phys = cfg.physics()?;
    let kr = cfg.k_range.ok_or_else(|| missing("k_range"))?;
    validate_k_range(kr.min, kr.max, kr.steps)?;
    let lr = cfg.lambda_range.ok_or_else(|| missing("lambda_range"))?;
    if !(lr.lo > 0.0 && lr.hi > lr.lo) {
        return Err(ConfigError::Invalid("`lambda_range` must satisfy 0 < lo < hi".into()).into());
    }
    let (model, k_scale) = Evaluator::new(&phys).model();
    let k_user = kr.points();
    let k_model: Vec<f64> = k_user.iter().map(|k| k * k_scale).collect();
    let curve = bifurcation_curve(&k_model, &model, (lr.lo, lr.hi))?;
    let mut found = 0;
    let rows: Vec<Vec<Value>> = k_user
        .iter()
        .zip(&curve)
        .map(|(&k, p)| match &p.point {
            Ok(bp) => {
                found += 1;
                vec![
                    json12(k),
                    json12(bp.lambda_crit),
                    json12(bp.a),
                    json12(bp.omega_residual),
                    Value::String("ok".into()),
                ]
            }
            Err(e) => {
                let status = if matches!(e, CurvelastError::NoBracket { .. }) {
                    "no_root"
                } else {
                    "error"
                };
                vec![
                    json12(k),
                    Value::Null,
                    Value::Null,
                    Value::Null,
                    Value::String(status.into()),
                ]
            }
        })
        .collect();
    if found == 0 {
        return Err(CliError::Bracket(format!(
            "no critical stretch in [{}, {}] for any of the {} wavenumbers",
            lr.lo,
            lr.hi,
            k_user.len()
        )));
    }
    Ok(render(cfg, &phys, &BIFURCATION_HEADER, &rows))
}
