//! Run configuration: defaults, then a flat `key = value` file, then flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::angles::parse_angle;
use crate::error::{Error, Result};
use crate::flow::FlowConfig;
use crate::monodromy::SpiralParams;
use crate::pii::ShootConfig;

pub const CONFIG_ENV: &str = "SPIRALFLOW_CONFIG";

/// Times of the evolution figure.
pub const FIGURE_TIMES: [f64; 6] = [2.6, 1.6, 1.2, 0.8, 0.6, 0.2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    pub r: f64,
    pub l: f64,
    pub tol: f64,
    pub grid_step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSettings {
    pub c_region: f64,
    pub t_list: Vec<f64>,
    pub x_range: [f64; 2],
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputSettings {
    pub format: Format,
    pub path: Option<PathBuf>,
}

/// Unresolved angles are kept as text until all sources are merged.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamText {
    pub theta_plus: Option<String>,
    pub theta_minus: Option<String>,
    pub mu: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ParamText,
    pub solver: SolverSettings,
    pub regions: RegionSettings,
    pub output: OutputSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        let shoot = ShootConfig::default();
        Self {
            params: ParamText::default(),
            solver: SolverSettings { r: shoot.r, l: shoot.l, tol: shoot.tol, grid_step: FlowConfig::default().first_panel },
            regions: RegionSettings {
                c_region: crate::asymptotics::DEFAULT_REGION,
                t_list: FIGURE_TIMES.to_vec(),
                x_range: [-10.0, 10.0],
                n_points: 801,
            },
            output: OutputSettings { format: Format::Csv, path: None },
        }
    }
}

fn number(key: &str, value: &str) -> Result<f64> {
    let v: f64 = value.trim().parse().map_err(|_| Error::Config(format!("{key}: not a number: `{value}`")))?;
    if !v.is_finite() {
        return Err(Error::Config(format!("{key}: not finite")));
    }
    Ok(v)
}

pub fn number_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value.split(',').filter(|s| !s.trim().is_empty()).map(|s| number(key, s)).collect()
}

impl RunConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "theta_plus" | "params.theta_plus" => self.params.theta_plus = Some(value.to_string()),
            "theta_minus" | "params.theta_minus" => self.params.theta_minus = Some(value.to_string()),
            "mu" | "params.mu" => self.params.mu = Some(value.to_string()),
            "solver.R" | "solver.r" => self.solver.r = number(key, value)?,
            "solver.L" | "solver.l" => self.solver.l = number(key, value)?,
            "solver.tol" => self.solver.tol = number(key, value)?,
            "solver.grid_step" => self.solver.grid_step = number(key, value)?,
            "regions.c_region" => self.regions.c_region = number(key, value)?,
            "regions.t_list" => self.regions.t_list = number_list(key, value)?,
            "regions.x_range" => {
                let v = number_list(key, value)?;
                if v.len() != 2 {
                    return Err(Error::Config(format!("{key}: expected two numbers")));
                }
                self.regions.x_range = [v[0], v[1]];
            }
            "regions.n_points" => {
                self.regions.n_points =
                    value.parse().map_err(|_| Error::Config(format!("{key}: not a count: `{value}`")))?
            }
            "output.format" => {
                self.output.format = match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    "svg" => Format::Svg,
                    _ => return Err(Error::Config(format!("{key}: unknown format `{value}`"))),
                }
            }
            "output.path" => self.output.path = Some(PathBuf::from(value)),
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Merge a config file's settings.
    pub fn load_str(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", n + 1)))?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.load_str(&text)
    }

    /// Defaults, then the file named by `explicit` or by the environment.
    pub fn from_sources(explicit: Option<&Path>) -> Result<Self> {
        let mut cfg = Self::default();
        let env = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
        if let Some(path) = explicit.map(Path::to_path_buf).or(env) {
            cfg.load_file(&path)?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1e-13..=1e-6).contains(&self.solver.tol) {
            return Err(Error::BadTolerance(self.solver.tol));
        }
        if self.regions.n_points < 2 {
            return Err(Error::Config("regions.n_points must be at least 2".into()));
        }
        if self.regions.x_range[0] >= self.regions.x_range[1] {
            return Err(Error::Config("regions.x_range must be increasing".into()));
        }
        if self.regions.t_list.iter().any(|&t| t.is_nan() || t <= 0.0) {
            return Err(Error::Config("regions.t_list must be strictly positive".into()));
        }
        Ok(())
    }

    pub fn spiral_params(&self) -> Result<SpiralParams> {
        let get = |v: &Option<String>, name: &str| -> Result<f64> {
            let text = v.as_deref().ok_or_else(|| Error::Config(format!("missing {name}")))?;
            parse_angle(text).ok_or_else(|| Error::Config(format!("{name}: cannot parse `{text}`")))
        };
        let mu_text = self.params.mu.as_deref().unwrap_or("0");
        let mu = number("mu", mu_text)?;
        SpiralParams::new(get(&self.params.theta_plus, "theta_plus")?, get(&self.params.theta_minus, "theta_minus")?, mu)
    }

    pub fn shoot(&self) -> ShootConfig {
        ShootConfig { r: self.solver.r, l: self.solver.l, tol: self.solver.tol, ..ShootConfig::default() }
    }

    pub fn flow(&self) -> FlowConfig {
        FlowConfig { first_panel: self.solver.grid_step, ..FlowConfig::default() }
    }

    /// Evenly spaced abscissae over `regions.x_range`.
    pub fn xs(&self) -> Vec<f64> {
        let [a, b] = self.regions.x_range;
        let n = self.regions.n_points;
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }
}
