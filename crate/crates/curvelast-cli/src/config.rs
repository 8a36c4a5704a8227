//! Run configuration: a flat `key = value` text format whose keys double as
//! command-line flags.
//!
//! Blank lines and lines starting with `#` are ignored. Ranges are written as
//! comma-separated lists: `lambda_range = 0.5, 3.0` and
//! `k_range = 0.01, 2.0, 40`.

use std::fmt::Write as _;
use std::str::FromStr;

use curvelast::bulk_material::BulkMaterial;
use curvelast::surface_material::SurfaceModel;
use serde::Serialize;
use thiserror::Error;

/// A configuration problem; always maps to exit code 1.
#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{key}`: cannot parse `{value}`: {reason}")]
    Value { key: String, value: String, reason: String },
    #[error("key `{0}` given twice")]
    Duplicate(String),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
}

/// Surface energy family selected by `model`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    Tension,
    Stretch,
    Helfrich,
}

impl FromStr for ModelName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tension" => Ok(Self::Tension),
            "stretch" => Ok(Self::Stretch),
            "helfrich" => Ok(Self::Helfrich),
            _ => Err("expected tension, stretch or helfrich".into()),
        }
    }
}

impl ModelName {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Tension => "tension",
            Self::Stretch => "stretch",
            Self::Helfrich => "helfrich",
        }
    }
}

/// Output format selected by `format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err("expected csv or json".into()),
        }
    }
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

/// A wavenumber grid `k_min … k_max` with `steps` points, geometric when
/// both ends are positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl KRange {
    /// Grid points in increasing order, spaced geometrically.
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let ratio = self.max / self.min;
        (0..self.steps)
            .map(|i| self.min * ratio.powf(i as f64 / (self.steps - 1) as f64))
            .collect()
    }
}

/// A stretch interval, optionally sampled with `steps` evenly spaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: Option<usize>,
}

impl LambdaRange {
    pub fn points(&self) -> Vec<f64> {
        let n = self.steps.unwrap_or(2).max(2);
        (0..n)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

/// Every key of the configuration file. All fields are optional at parse
/// time; [`RunConfig::validate`] checks what each command needs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub mu: Option<f64>,
    pub d_modulus: Option<f64>,
    pub gamma: Option<f64>,
    pub alpha_s: Option<f64>,
    pub beta_s: Option<f64>,
    pub h0: Option<f64>,
    pub radius: Option<f64>,
    pub model: Option<ModelName>,
    pub incompressible: Option<bool>,
    pub lambda: Option<f64>,
    pub lambda_range: Option<LambdaRange>,
    pub k: Option<f64>,
    pub k_range: Option<KRange>,
    pub output_path: Option<String>,
    pub format: Option<Format>,
}

/// Keys in serialization order.
pub const KEYS: [&str; 15] = [
    "mu",
    "d_modulus",
    "gamma",
    "alpha_s",
    "beta_s",
    "h0",
    "radius",
    "model",
    "incompressible",
    "lambda",
    "lambda_range",
    "k",
    "k_range",
    "output_path",
    "format",
];

fn value_err(key: &str, value: &str, reason: impl ToString) -> ConfigError {
    ConfigError::Value {
        key: key.into(),
        value: value.into(),
        reason: reason.to_string(),
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = value.parse().map_err(|e| value_err(key, value, e))?;
    if !v.is_finite() {
        return Err(value_err(key, value, "must be finite"));
    }
    Ok(v)
}

fn parse_list(key: &str, value: &str) -> Result<Vec<String>, ConfigError> {
    let parts: Vec<String> = value.split(',').map(|p| p.trim().to_string()).collect();
    if parts.iter().any(String::is_empty) {
        return Err(value_err(key, value, "empty list entry"));
    }
    Ok(parts)
}

impl RunConfig {
    /// Parses the text of a configuration file.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        let mut seen = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line: n + 1,
                    text: raw.to_string(),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if seen.contains(&key.to_string()) {
                return Err(ConfigError::Duplicate(key.into()));
            }
            seen.push(key.to_string());
            cfg.set(key, value)?;
        }
        Ok(cfg)
    }

    /// Reads and parses a configuration file.
    pub fn load(path: &str) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.into(),
            reason: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Sets one key from its textual value (used for files and flags alike).
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "mu" => self.mu = Some(parse_f64(key, value)?),
            "d_modulus" => self.d_modulus = Some(parse_f64(key, value)?),
            "gamma" => self.gamma = Some(parse_f64(key, value)?),
            "alpha_s" => self.alpha_s = Some(parse_f64(key, value)?),
            "beta_s" => self.beta_s = Some(parse_f64(key, value)?),
            "h0" => self.h0 = Some(parse_f64(key, value)?),
            "radius" => self.radius = Some(parse_f64(key, value)?),
            "lambda" => self.lambda = Some(parse_f64(key, value)?),
            "k" => self.k = Some(parse_f64(key, value)?),
            "model" => self.model = Some(value.parse().map_err(|e| value_err(key, value, e))?),
            "format" => self.format = Some(value.parse().map_err(|e| value_err(key, value, e))?),
            "incompressible" => {
                self.incompressible = Some(match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(value_err(key, value, "expected true or false")),
                })
            }
            "output_path" => {
                if value.is_empty() {
                    return Err(value_err(key, value, "empty path"));
                }
                self.output_path = Some(value.to_string());
            }
            "lambda_range" => {
                let parts = parse_list(key, value)?;
                let (lo, hi, steps) = match parts.as_slice() {
                    [lo, hi] => (parse_f64(key, lo)?, parse_f64(key, hi)?, None),
                    [lo, hi, n] => (
                        parse_f64(key, lo)?,
                        parse_f64(key, hi)?,
                        Some(n.parse::<usize>().map_err(|e| value_err(key, value, e))?),
                    ),
                    _ => return Err(value_err(key, value, "expected `lo, hi` or `lo, hi, steps`")),
                };
                self.lambda_range = Some(LambdaRange { lo, hi, steps });
            }
            "k_range" => {
                let parts = parse_list(key, value)?;
                let [min, max, steps] = parts.as_slice() else {
                    return Err(value_err(key, value, "expected `k_min, k_max, steps`"));
                };
                self.k_range = Some(KRange {
                    min: parse_f64(key, min)?,
                    max: parse_f64(key, max)?,
                    steps: steps.parse().map_err(|e| value_err(key, value, e))?,
                });
            }
            _ => return Err(ConfigError::UnknownKey(key.into())),
        }
        Ok(())
    }

    /// Overwrites every key that `other` sets.
    pub fn merge(&mut self, other: &Self) {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f.clone(); } )* };
        }
        take!(
            mu,
            d_modulus,
            gamma,
            alpha_s,
            beta_s,
            h0,
            radius,
            model,
            incompressible,
            lambda,
            lambda_range,
            k,
            k_range,
            output_path,
            format
        );
    }

    /// Serializes the set keys in [`KEYS`] order; floats use the shortest
    /// representation that parses back to the same value.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        let num = |v: f64| format!("{v:?}");
        if let Some(v) = self.mu {
            line("mu", num(v));
        }
        if let Some(v) = self.d_modulus {
            line("d_modulus", num(v));
        }
        if let Some(v) = self.gamma {
            line("gamma", num(v));
        }
        if let Some(v) = self.alpha_s {
            line("alpha_s", num(v));
        }
        if let Some(v) = self.beta_s {
            line("beta_s", num(v));
        }
        if let Some(v) = self.h0 {
            line("h0", num(v));
        }
        if let Some(v) = self.radius {
            line("radius", num(v));
        }
        if let Some(v) = self.model {
            line("model", v.as_str().into());
        }
        if let Some(v) = self.incompressible {
            line("incompressible", v.to_string());
        }
        if let Some(v) = self.lambda {
            line("lambda", num(v));
        }
        if let Some(r) = self.lambda_range {
            let steps = r.steps.map(|n| format!(", {n}")).unwrap_or_default();
            line("lambda_range", format!("{}, {}{steps}", num(r.lo), num(r.hi)));
        }
        if let Some(v) = self.k {
            line("k", num(v));
        }
        if let Some(r) = self.k_range {
            line("k_range", format!("{}, {}, {}", num(r.min), num(r.max), r.steps));
        }
        if let Some(v) = &self.output_path {
            line("output_path", v.clone());
        }
        if let Some(v) = self.format {
            line("format", v.as_str().into());
        }
        out
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    /// Checks the invariants shared by every physics command and builds the
    /// material records.
    pub fn physics(&self) -> Result<Physics, ConfigError> {
        let mu = self.mu.ok_or_else(|| ConfigError::Invalid("missing key `mu`".into()))?;
        let radius = self.radius.unwrap_or(1.0);
        if !(radius > 0.0) {
            return Err(ConfigError::Invalid(format!("radius must be positive, got {radius}")));
        }
        let incompressible = self.incompressible.unwrap_or(false);
        match (self.d_modulus, incompressible) {
            (Some(_), true) => {
                return Err(ConfigError::Invalid(
                    "give either `d_modulus` or `incompressible = true`, not both".into(),
                ))
            }
            (None, false) => {
                return Err(ConfigError::Invalid(
                    "missing key `d_modulus` (or set `incompressible = true`)".into(),
                ))
            }
            _ => {}
        }
        let d = self.d_modulus.unwrap_or(INCOMPRESSIBLE_PROXY * mu);
        let mat = BulkMaterial::new(mu, d).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let model = self.model.unwrap_or(ModelName::Helfrich);
        let (g, al, b, h) = (
            self.gamma.unwrap_or(0.0),
            self.alpha_s.unwrap_or(0.0),
            self.beta_s.unwrap_or(0.0),
            self.h0.unwrap_or(0.0),
        );
        let surf = match model {
            ModelName::Tension => {
                if al != 0.0 || b != 0.0 || h != 0.0 {
                    return Err(ConfigError::Invalid(
                        "model = tension takes only `gamma` (alpha_s, beta_s and h0 must be zero)".into(),
                    ));
                }
                SurfaceModel::tension(g)
            }
            ModelName::Stretch => {
                if b != 0.0 || h != 0.0 {
                    return Err(ConfigError::Invalid("model = stretch takes no `beta_s` or `h0`".into()));
                }
                SurfaceModel::stretch(g, al)
            }
            ModelName::Helfrich => {
                if al != 0.0 {
                    return Err(ConfigError::Invalid("model = helfrich takes no `alpha_s`".into()));
                }
                SurfaceModel::helfrich(g, b, h)
            }
        }
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(Physics {
            mat,
            surf,
            radius,
            model,
            incompressible,
        })
    }
}

/// `D/μ` used when `incompressible = true` routes to the compressible solver.
pub const INCOMPRESSIBLE_PROXY: f64 = 1e8;

/// Validated physical inputs in user units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Physics {
    pub mat: BulkMaterial,
    pub surf: SurfaceModel,
    pub radius: f64,
    pub model: ModelName,
    pub incompressible: bool,
}

impl Physics {
    /// True when the incompressible closed form applies directly.
    pub fn uses_closed_form(&self) -> bool {
        self.incompressible && matches!(self.model, ModelName::Tension | ModelName::Helfrich)
    }

    /// Label of the determinant used, for output metadata.
    pub fn route(&self) -> &'static str {
        match (self.incompressible, self.uses_closed_form()) {
            (true, true) => "incompressible closed form",
            (true, false) => "compressible solver with D = 1e8 mu as incompressible proxy",
            _ => "compressible solver",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SAMPLE: &str = "# sample\nmu = 2.5\nd_modulus = 49\n\ngamma = 12\nalpha_s = 30\nmodel = stretch\n\
                          lambda_range = 0.3, 6\nk_range = 0.01, 4, 40\nformat = json\n";

    #[test]
    fn parses_sample() {
        let c = RunConfig::parse(SAMPLE).unwrap();
        assert_eq!(c.mu, Some(2.5));
        assert_eq!(c.model, Some(ModelName::Stretch));
        assert_eq!(
            c.k_range,
            Some(KRange {
                min: 0.01,
                max: 4.0,
                steps: 40
            })
        );
        assert_eq!(
            c.lambda_range,
            Some(LambdaRange {
                lo: 0.3,
                hi: 6.0,
                steps: None
            })
        );
        assert_eq!(c.format(), Format::Json);
    }

    #[test]
    fn sample_round_trips() {
        let c = RunConfig::parse(SAMPLE).unwrap();
        assert_eq!(RunConfig::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn errors_are_reported() {
        assert!(matches!(
            RunConfig::parse("mu 1"),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
        assert!(matches!(RunConfig::parse("nu = 1"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(RunConfig::parse("mu = x"), Err(ConfigError::Value { .. })));
        assert!(matches!(
            RunConfig::parse("mu = 1\nmu = 2"),
            Err(ConfigError::Duplicate(_))
        ));
        assert!(matches!(RunConfig::parse("mu = inf"), Err(ConfigError::Value { .. })));
    }

    #[test]
    fn bulk_law_must_be_unique() {
        let both = RunConfig::parse("mu = 1\nd_modulus = 2\nincompressible = true").unwrap();
        assert!(both.physics().is_err());
        let neither = RunConfig::parse("mu = 1").unwrap();
        assert!(neither.physics().is_err());
        let proxy = RunConfig::parse("mu = 2\nincompressible = true\nmodel = stretch")
            .unwrap()
            .physics()
            .unwrap();
        assert_eq!(proxy.mat.d_modulus, 2e8);
        assert!(!proxy.uses_closed_form());
    }

    #[test]
    fn model_parameters_are_checked() {
        let c = RunConfig::parse("mu = 1\nd_modulus = 1\nmodel = tension\nbeta_s = 1").unwrap();
        assert!(c.physics().is_err());
        let c = RunConfig::parse("mu = 1\nd_modulus = 1\nmodel = helfrich\nbeta_s = -1").unwrap();
        assert!(c.physics().is_err());
    }

    #[test]
    fn merge_prefers_the_override() {
        let mut base = RunConfig::parse("mu = 1\ngamma = 2").unwrap();
        base.merge(&RunConfig::parse("gamma = 3").unwrap());
        assert_eq!((base.mu, base.gamma), (Some(1.0), Some(3.0)));
    }

    #[test]
    fn geometric_grid_hits_both_ends() {
        let p = KRange {
            min: 0.01,
            max: 4.0,
            steps: 40,
        }
        .points();
        assert_eq!(p.len(), 40);
        assert_eq!(p[0], 0.01);
        assert!((p[39] - 4.0).abs() < 1e-14);
    }

    fn arb_config() -> impl Strategy<Value = RunConfig> {
        let f = || proptest::option::of(-1e6f64..1e6);
        let model = proptest::option::of(prop_oneof![
            Just(ModelName::Tension),
            Just(ModelName::Stretch),
            Just(ModelName::Helfrich)
        ]);
        let format = proptest::option::of(prop_oneof![Just(Format::Csv), Just(Format::Json)]);
        let lr =
            proptest::option::of(
                (0.01f64..10.0, 0.01f64..10.0, proptest::option::of(2usize..100))
                    .prop_map(|(lo, hi, steps)| LambdaRange { lo, hi, steps }),
            );
        let kr = proptest::option::of(
            (1e-4f64..1.0, 1.0f64..100.0, 1usize..500).prop_map(|(min, max, steps)| KRange { min, max, steps }),
        );
        let path = proptest::option::of("[a-z][a-z0-9_./]{0,20}");
        (
            (f(), f(), f(), f(), f(), f(), f()),
            (
                model,
                proptest::option::of(any::<bool>()),
                f(),
                lr,
                f(),
                kr,
                path,
                format,
            ),
        )
            .prop_map(
                |(
                    (mu, d_modulus, gamma, alpha_s, beta_s, h0, radius),
                    (model, incompressible, lambda, lambda_range, k, k_range, output_path, format),
                )| {
                    RunConfig {
                        mu,
                        d_modulus,
                        gamma,
                        alpha_s,
                        beta_s,
                        h0,
                        radius,
                        model,
                        incompressible,
                        lambda,
                        lambda_range,
                        k,
                        k_range,
                        output_path,
                        format,
                    }
                },
            )
    }

    proptest! {
        #[test]
        fn parse_serialize_parse_is_identity(cfg in arb_config()) {
            let text = cfg.to_text();
            let parsed = RunConfig::parse(&text).unwrap();
            prop_assert_eq!(&parsed, &cfg);
            prop_assert_eq!(RunConfig::parse(&parsed.to_text()).unwrap(), parsed);
        }
    }
}
