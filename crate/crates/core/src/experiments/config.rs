//! Flat `key = value` experiment configuration.
//!
//! One assignment per line, `#` starts a comment. A `preset = <name>` line
//! loads a named configuration first; every other line then overrides it,
//! whatever its position. Later assignments win over earlier ones.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::params::{SystemParams, Terminal};

use super::presets::{preset_names, preset_source};

/// Quantity varied by a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Temperature(Terminal),
    Lambda(usize),
    Coupling,
    /// `gamma_L = gamma_R = b gamma_M`.
    GammaBias,
    Rho44,
}

impl Axis {
    pub const NAMES: [&'static str; 9] = [
        "T_L",
        "T_M",
        "T_R",
        "lambda1",
        "lambda2",
        "lambda3",
        "g",
        "gamma_bias",
        "rho44",
    ];

    /// Parameters at axis value `v`; the dark-state axis leaves them as is.
    pub fn apply(self, base: &SystemParams, v: f64) -> SystemParams {
        match self {
            Axis::Temperature(t) => base.with_temperature(t, v),
            Axis::Lambda(k) => {
                let mut lambda = base.lambda;
                lambda[k] = v;
                base.with_lambda(lambda)
            }
            Axis::Coupling => base.with_g(v),
            Axis::GammaBias => with_gamma_bias(base, v),
            Axis::Rho44 => *base,
        }
    }
}

pub fn with_gamma_bias(base: &SystemParams, b: f64) -> SystemParams {
    let gm = base.gamma[1];
    base.with_gamma([b * gm, gm, b * gm])
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "T_L" => Axis::Temperature(Terminal::L),
            "T_M" => Axis::Temperature(Terminal::M),
            "T_R" => Axis::Temperature(Terminal::R),
            "lambda1" => Axis::Lambda(0),
            "lambda2" => Axis::Lambda(1),
            "lambda3" => Axis::Lambda(2),
            "g" => Axis::Coupling,
            "gamma_bias" => Axis::GammaBias,
            "rho44" => Axis::Rho44,
            _ => {
                return Err(Error::param(
                    "axis",
                    format!("unknown axis `{s}`; expected one of {}", Axis::NAMES.join(", ")),
                ))
            }
        })
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axis::Temperature(t) => ["T_L", "T_M", "T_R"][t.index()],
            Axis::Lambda(k) => ["lambda1", "lambda2", "lambda3"][*k],
            Axis::Coupling => "g",
            Axis::GammaBias => "gamma_bias",
            Axis::Rho44 => "rho44",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub params: SystemParams,
    pub control: Terminal,
    pub rho44: Option<f64>,
    /// Applied after every other parameter, see [`with_gamma_bias`].
    pub gamma_bias: Option<f64>,
    pub axis: Option<Axis>,
    pub range: Option<(f64, f64)>,
    pub points: Option<usize>,
    pub values: Option<Vec<f64>>,
    pub drive_omega: Option<f64>,
    pub drive_duration: Option<f64>,
    /// Drive duration in units of `pi / drive_omega`.
    pub drive_angle_pi: Option<f64>,
    pub compare_lambda1: Option<f64>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            params: SystemParams::reference(),
            control: Terminal::M,
            rho44: None,
            gamma_bias: None,
            axis: None,
            range: None,
            points: None,
            values: None,
            drive_omega: None,
            drive_duration: None,
            drive_angle_pi: None,
            compare_lambda1: None,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let lines = assignments(text)?;
        let mut cfg = match lines.iter().find(|(_, k, _)| k == "preset") {
            Some((line, _, name)) => Self::preset(name).map_err(|e| Error::Config {
                line: *line,
                message: e.to_string(),
            })?,
            None => Config::default(),
        };
        for (line, key, value) in lines.iter().filter(|(_, k, _)| k != "preset") {
            cfg.set(key, value).map_err(|e| Error::Config {
                line: *line,
                message: e.to_string(),
            })?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn preset(name: &str) -> Result<Self> {
        let src = preset_source(name).ok_or_else(|| {
            Error::param(
                "preset",
                format!(
                    "unknown preset `{name}`; available: {}",
                    preset_names().collect::<Vec<_>>().join(", ")
                ),
            )
        })?;
        Self::parse(src)
    }

    /// Assign one key, as a config line or command-line override would.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let p = &mut self.params;
        match key {
            "omega_L" => p.omega_l = number(key, value)?,
            "omega_M" => p.omega_m = number(key, value)?,
            "g" => p.g = number(key, value)?,
            "lambda1" => p.lambda[0] = number(key, value)?,
            "lambda2" => p.lambda[1] = number(key, value)?,
            "lambda3" => p.lambda[2] = number(key, value)?,
            "T_L" => p.temperature[0] = number(key, value)?,
            "T_M" => p.temperature[1] = number(key, value)?,
            "T_R" => p.temperature[2] = number(key, value)?,
            "gamma" => p.gamma = [number(key, value)?; 3],
            "gamma_L" => p.gamma[0] = number(key, value)?,
            "gamma_M" => p.gamma[1] = number(key, value)?,
            "gamma_R" => p.gamma[2] = number(key, value)?,
            "gamma_bias" => self.gamma_bias = Some(number(key, value)?),
            "rho44" => self.rho44 = Some(number(key, value)?),
            "control" => self.control = value.parse()?,
            "axis" => self.axis = Some(value.parse()?),
            "range" => self.range = Some(parse_range(value)?),
            "points" => {
                self.points = Some(
                    value
                        .parse()
                        .map_err(|_| Error::param(key, format!("`{value}` is not a count")))?,
                )
            }
            "values" => {
                self.values = Some(
                    value
                        .split(',')
                        .map(|v| number(key, v.trim()))
                        .collect::<Result<Vec<f64>>>()?,
                )
            }
            "drive_omega" => self.drive_omega = Some(number(key, value)?),
            "drive_duration" => self.drive_duration = Some(number(key, value)?),
            "drive_angle_pi" => self.drive_angle_pi = Some(number(key, value)?),
            "compare_lambda1" => self.compare_lambda1 = Some(number(key, value)?),
            "preset" => return Err(Error::param(key, "a preset can only be chosen inside a config file")),
            _ => return Err(Error::param(key, "unknown key")),
        }
        Ok(())
    }

    /// Physical parameters with the decay-rate bias applied, validated.
    pub fn resolved_params(&self) -> Result<SystemParams> {
        let p = match self.gamma_bias {
            Some(b) => with_gamma_bias(&self.params, b),
            None => self.params,
        };
        p.validate()?;
        Ok(p)
    }

    /// Sweep grid: explicit `values`, or `points` evenly spaced over `range`.
    pub fn grid(&self) -> Result<Vec<f64>> {
        match (&self.values, self.range, self.points) {
            (Some(_), Some(_), _) => Err(Error::param("values", "give either `values` or `range`, not both")),
            (Some(v), None, _) => {
                if v.len() < 2 {
                    return Err(Error::param("values", "need at least 2 values"));
                }
                Ok(v.clone())
            }
            (None, Some((lo, hi)), Some(n)) => linspace(lo, hi, n),
            (None, Some(_), None) => Err(Error::param("points", "required with `range`")),
            (None, None, _) => Err(Error::param("range", "no sweep grid configured")),
        }
    }

    /// Drive duration from `drive_duration` or `drive_angle_pi`.
    pub fn drive(&self) -> Result<(f64, f64)> {
        let omega = self
            .drive_omega
            .ok_or_else(|| Error::param("drive_omega", "required for modulation"))?;
        let duration = match (self.drive_duration, self.drive_angle_pi) {
            (Some(d), None) => d,
            (None, Some(a)) => a * std::f64::consts::PI / omega,
            (Some(_), Some(_)) => {
                return Err(Error::param(
                    "drive_duration",
                    "give either `drive_duration` or `drive_angle_pi`",
                ))
            }
            (None, None) => return Err(Error::param("drive_duration", "required for modulation")),
        };
        Ok((omega, duration))
    }
}

/// `points` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo < hi) {
        return Err(Error::param("range", format!("need lo < hi, got {lo}:{hi}")));
    }
    if points < 2 {
        return Err(Error::param("points", format!("need at least 2, got {points}")));
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i == points - 1 { hi } else { lo + step * i as f64 })
        .collect())
}

pub fn parse_range(s: &str) -> Result<(f64, f64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Error::param("range", format!("expected lo:hi, got `{s}`")))?;
    Ok((number("range", lo.trim())?, number("range", hi.trim())?))
}

fn number(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::param(key, format!("`{value}` is not a finite number")))
}

fn assignments(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Config {
            line: i + 1,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        out.push((i + 1, k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}
