//! Flat `key = value` run configuration.
//!
//! Blank lines and `#` comments are ignored. `oscillator` and `transition`
//! may repeat; every other key may appear once. Command-line overrides go
//! through [`RunConfig::apply`] and therefore accept exactly the same keys.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}{field}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            line: None,
            field: field.into(),
            message: message.into(),
        }
    }

    fn at(mut self, line: usize) -> Self {
        self.line = Some(line);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Full multipole pipeline.
    Full,
    /// Near-surface law.
    Short,
    /// Far-field dipole integral.
    Long,
    /// The absorption preset; see [`crate::fig1`].
    Fig1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    /// Frequencies in a unit `ω_u` (normally the first plasma frequency),
    /// lengths in `2πc/ω_u`, squared dipoles in `ħε₀c³/ω_u²`.
    Reduced,
    /// rad/s, m, C²m²; energies in J and forces in N.
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
}

macro_rules! keyword_enum {
    ($ty:ident { $($variant:ident => $name:literal),+ $(,)? }) => {
        impl FromStr for $ty {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($name => Ok($ty::$variant),)+
                    _ => Err(format!("expected one of: {}", [$($name),+].join(", "))),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($ty::$variant => $name,)+ })
            }
        }
    };
}

keyword_enum!(Mode { Full => "full", Short => "short", Long => "long", Fig1 => "fig1" });
keyword_enum!(Spacing { Linear => "linear", Log => "log" });
keyword_enum!(Units { Reduced => "reduced", Si => "si" });
keyword_enum!(Format { Csv => "csv" });

/// One Drude–Lorentz term, in config units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSpec {
    pub plasma: f64,
    pub resonance: f64,
    pub damping: f64,
}

/// One atomic transition, in config units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionSpec {
    pub frequency: f64,
    pub dipole_sq: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub units: Units,
    pub mode: Mode,
    pub oscillators: Vec<OscillatorSpec>,
    pub transitions: Vec<TransitionSpec>,
    pub radius: f64,
    /// Atom distances from the sphere centre.
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub quad_rel_tol: f64,
    pub max_panels: usize,
    pub series_rel_tol: f64,
    pub n_max: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            units: Units::Reduced,
            mode: Mode::Full,
            oscillators: vec![OscillatorSpec {
                plasma: 1.0,
                resonance: 0.0,
                damping: 0.1,
            }],
            transitions: vec![TransitionSpec {
                frequency: 0.7,
                dipole_sq: 1.0,
            }],
            radius: 1.0,
            r_min: 1.01,
            r_max: 1.5,
            points: 10,
            spacing: Spacing::Log,
            quad_rel_tol: 1e-7,
            max_panels: 4000,
            series_rel_tol: 1e-8,
            n_max: 200_000,
            output: None,
            format: Format::Csv,
            jobs: 0,
        }
    }
}

/// Keys accepted in files and overrides, in serialization order.
pub const KEYS: &[&str] = &[
    "units",
    "mode",
    "oscillator",
    "transition",
    "radius",
    "r_min",
    "r_max",
    "points",
    "spacing",
    "quad_rel_tol",
    "max_panels",
    "series_rel_tol",
    "n_max",
    "output",
    "format",
    "jobs",
];

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value
        .parse::<T>()
        .map_err(|e| ConfigError::new(key, format!("cannot parse {value:?}: {e}")))
}

fn parse_list(key: &str, value: &str, len: usize) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != len {
        return Err(ConfigError::new(
            key,
            format!("expected {len} comma-separated numbers, got {value:?}"),
        ));
    }
    parts.iter().map(|p| parse_value::<f64>(key, p)).collect()
}

/// Shortest representation that parses back to the same `f64`.
fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

impl RunConfig {
    /// Parses a config file. Scalars not mentioned keep their defaults; an
    /// `oscillator` or `transition` line replaces the default list.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut seen: Vec<&str> = Vec::new();
        let mut listed = (false, false);
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::new(line, "expected `key = value`").at(lineno))?;
            let key = key.trim();
            let value = value.trim();
            let known = KEYS
                .iter()
                .find(|k| **k == key)
                .ok_or_else(|| ConfigError::new(key, "unknown key").at(lineno))?;
            match *known {
                "oscillator" if !listed.0 => {
                    cfg.oscillators.clear();
                    listed.0 = true;
                }
                "transition" if !listed.1 => {
                    cfg.transitions.clear();
                    listed.1 = true;
                }
                "oscillator" | "transition" => {}
                k if seen.contains(&k) => {
                    return Err(ConfigError::new(key, "given more than once").at(lineno));
                }
                k => seen.push(k),
            }
            cfg.apply(key, value).map_err(|e| e.at(lineno))?;
        }
        Ok(cfg)
    }

    /// Sets one field. `oscillator` and `transition` append; the value
    /// `none` clears the list.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "units" => self.units = parse_value(key, value)?,
            "mode" => self.mode = parse_value(key, value)?,
            "oscillator" if value == "none" => self.oscillators.clear(),
            "oscillator" => {
                let v = parse_list(key, value, 3)?;
                self.oscillators.push(OscillatorSpec {
                    plasma: v[0],
                    resonance: v[1],
                    damping: v[2],
                });
            }
            "transition" if value == "none" => self.transitions.clear(),
            "transition" => {
                let v = parse_list(key, value, 2)?;
                self.transitions.push(TransitionSpec {
                    frequency: v[0],
                    dipole_sq: v[1],
                });
            }
            "radius" => self.radius = parse_value(key, value)?,
            "r_min" => self.r_min = parse_value(key, value)?,
            "r_max" => self.r_max = parse_value(key, value)?,
            "points" => self.points = parse_value(key, value)?,
            "spacing" => self.spacing = parse_value(key, value)?,
            "quad_rel_tol" => self.quad_rel_tol = parse_value(key, value)?,
            "max_panels" => self.max_panels = parse_value(key, value)?,
            "series_rel_tol" => self.series_rel_tol = parse_value(key, value)?,
            "n_max" => self.n_max = parse_value(key, value)?,
            "output" => {
                self.output = if value.is_empty() {
                    None
                } else {
                    Some(PathBuf::from(value))
                }
            }
            "format" => self.format = parse_value(key, value)?,
            "jobs" => self.jobs = parse_value(key, value)?,
            _ => return Err(ConfigError::new(key, "unknown key")),
        }
        Ok(())
    }

    /// Applies a `key=value` override from the command line.
    pub fn apply_override(&mut self, pair: &str) -> Result<(), ConfigError> {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| ConfigError::new(pair, "override must look like key=value"))?;
        self.apply(key.trim(), value.trim())
    }

    /// Writes every field in [`KEYS`] order; [`RunConfig::parse`] reads it
    /// back unchanged.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        put("units", self.units.to_string());
        put("mode", self.mode.to_string());
        if self.oscillators.is_empty() {
            put("oscillator", "none".into());
        }
        for o in &self.oscillators {
            put(
                "oscillator",
                format!(
                    "{}, {}, {}",
                    fmt_f64(o.plasma),
                    fmt_f64(o.resonance),
                    fmt_f64(o.damping)
                ),
            );
        }
        if self.transitions.is_empty() {
            put("transition", "none".into());
        }
        for t in &self.transitions {
            put(
                "transition",
                format!("{}, {}", fmt_f64(t.frequency), fmt_f64(t.dipole_sq)),
            );
        }
        put("radius", fmt_f64(self.radius));
        put("r_min", fmt_f64(self.r_min));
        put("r_max", fmt_f64(self.r_max));
        put("points", self.points.to_string());
        put("spacing", self.spacing.to_string());
        put("quad_rel_tol", fmt_f64(self.quad_rel_tol));
        put("max_panels", self.max_panels.to_string());
        put("series_rel_tol", fmt_f64(self.series_rel_tol));
        put("n_max", self.n_max.to_string());
        put(
            "output",
            self.output
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default(),
        );
        put("format", self.format.to_string());
        put("jobs", self.jobs.to_string());
        out
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = |field: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(ConfigError::new(
                    field,
                    format!("must be positive and finite, got {v}"),
                ))
            }
        };
        positive("radius", self.radius)?;
        positive("r_min", self.r_min)?;
        positive("r_max", self.r_max)?;
        if self.points < 2 {
            return Err(ConfigError::new("points", "need at least 2 grid points"));
        }
        if self.r_max <= self.r_min {
            return Err(ConfigError::new("r_max", "must exceed r_min"));
        }
        if self.mode != Mode::Fig1 && self.r_min <= self.radius {
            return Err(ConfigError::new(
                "r_min",
                "atom must lie outside the sphere (r_min > radius)",
            ));
        }
        if !(self.quad_rel_tol > 0.0 && self.quad_rel_tol <= 1e-2) {
            return Err(ConfigError::new("quad_rel_tol", "must lie in (0, 1e-2]"));
        }
        if !(self.series_rel_tol > 0.0 && self.series_rel_tol < 1.0) {
            return Err(ConfigError::new("series_rel_tol", "must lie in (0, 1)"));
        }
        if self.max_panels < 4 {
            return Err(ConfigError::new("max_panels", "must be at least 4"));
        }
        if self.n_max < 2 {
            return Err(ConfigError::new("n_max", "must be at least 2"));
        }
        for (i, o) in self.oscillators.iter().enumerate() {
            let field = format!("oscillator[{i}]");
            if !(o.plasma >= 0.0 && o.resonance >= 0.0 && o.damping >= 0.0)
                || !(o.plasma.is_finite() && o.resonance.is_finite() && o.damping.is_finite())
            {
                return Err(ConfigError::new(
                    field,
                    "parameters must be finite and >= 0",
                ));
            }
        }
        for (i, t) in self.transitions.iter().enumerate() {
            if !(t.frequency > 0.0
                && t.frequency.is_finite()
                && t.dipole_sq >= 0.0
                && t.dipole_sq.is_finite())
            {
                return Err(ConfigError::new(
                    format!("transition[{i}]"),
                    "frequency must be positive and dipole_sq >= 0",
                ));
            }
        }
        Ok(())
    }

    /// Distance grid in config units.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if i == n - 1 {
                    return self.r_max;
                }
                match self.spacing {
                    Spacing::Linear => self.r_min + (self.r_max - self.r_min) * t,
                    Spacing::Log => {
                        (self.r_min.ln() + (self.r_max.ln() - self.r_min.ln()) * t).exp()
                    }
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let cfg = RunConfig::default();
        assert_eq!(RunConfig::parse(&cfg.serialize()).unwrap(), cfg);
    }

    #[test]
    fn reports_line_and_field() {
        let err = RunConfig::parse("radius = 1\n\nr_min = abc\n").unwrap_err();
        assert_eq!(err.line, Some(3));
        assert_eq!(err.field, "r_min");
        let err = RunConfig::parse("# c\nbogus = 1").unwrap_err();
        assert_eq!((err.line, err.field.as_str()), (Some(2), "bogus"));
        assert!(RunConfig::parse("radius = 1\nradius = 2").is_err());
        assert!(RunConfig::parse("oscillator = 1, 2").is_err());
        assert!(RunConfig::parse("just text").is_err());
    }

    #[test]
    fn lists_replace_defaults_and_repeat() {
        let cfg = RunConfig::parse(
            "oscillator = 1, 0, 0.1\noscillator = 2, 3, 0.5 # inner shell\ntransition = none",
        )
        .unwrap();
        assert_eq!(cfg.oscillators.len(), 2);
        assert!(cfg.transitions.is_empty());
        assert_eq!(RunConfig::parse(&cfg.serialize()).unwrap(), cfg);
    }

    #[test]
    fn validation() {
        let mut cfg = RunConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.r_min = 0.5;
        assert_eq!(cfg.validate().unwrap_err().field, "r_min");
        cfg = RunConfig {
            points: 1,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        cfg = RunConfig {
            quad_rel_tol: 0.5,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn grids_hit_both_ends() {
        let cfg = RunConfig {
            r_min: 2.0,
            r_max: 20.0,
            points: 3,
            ..Default::default()
        };
        let g = cfg.grid();
        assert_eq!(g[0], 2.0);
        assert_eq!(g[2], 20.0);
        assert!((g[1] - 40f64.sqrt()).abs() < 1e-12);
    }
}
