//! Line-oriented `key = value` configuration.

use std::fmt;
use std::path::Path;

use cxpt_core::wave::WaveConfig;
use cxpt_core::SourceConfig;
use thiserror::Error;

/// Environment variable naming the configuration file.
pub const CONFIG_ENV: &str = "CXPT_CONFIG";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Pass thresholds of the verification suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub identity: f64,
    pub gradient: f64,
    pub harmonic: f64,
    pub moment: f64,
    pub point_source: f64,
    pub descent: f64,
    pub cross_formula: f64,
    pub wave: f64,
    pub wave_velocity: f64,
    pub wave_residual: f64,
    pub huygens: f64,
    pub causality: f64,
    pub clifford: f64,
    pub lambda: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: 1e-12,
            gradient: 1e-6,
            harmonic: 1e-5,
            moment: 1e-6,
            point_source: 1e-2,
            descent: 1e-6,
            cross_formula: 1e-8,
            wave: 1e-6,
            wave_velocity: 1e-4,
            wave_residual: 1e-3,
            huygens: 1e-8,
            causality: 1e-10,
            clifford: 1e-4,
            lambda: 4.0 * f64::EPSILON,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub source: SourceConfig,
    pub wave: WaveConfig,
    /// Polar nodes on a ball boundary (azimuth is twice this) or per box edge.
    pub boundary_order: usize,
    pub volume_order: usize,
    /// Step for first derivatives of geometric quantities.
    pub fd_step: f64,
    /// Step for Laplacians.
    pub laplacian_step: f64,
    /// Step for `Df` in Borel–Pompeiu volume integrals and `j̃`.
    pub clifford_step: f64,
    /// Lattice spacing of wave-equation residuals.
    pub lattice_step: f64,
    /// `|y|` used when a command needs an axis length and none is given.
    pub default_a: f64,
    pub format: Format,
    pub tolerances: Tolerances,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            source: SourceConfig::default(),
            wave: WaveConfig::default(),
            boundary_order: 24,
            volume_order: 16,
            fd_step: 1e-4,
            laplacian_step: 1e-3,
            clifford_step: 1e-3,
            lattice_step: 0.05,
            default_a: 1.0,
            format: Format::Json,
            tolerances: Tolerances::default(),
        }
    }
}

/// Every accepted key with a one-line description, in documentation order.
pub const KEYS: &[(&str, &str)] = &[
    ("quadrature.interval.order", "Gauss-Legendre nodes per panel in source integrals (24)"),
    ("quadrature.interval.panels", "panels over [0, a] in source integrals (8)"),
    ("quadrature.circle.order", "trapezoid nodes for circle means (64)"),
    ("quadrature.sphere.order", "polar nodes for sphere means in source actions; azimuth is twice this (16)"),
    ("quadrature.wave.order", "polar nodes of the S^2 rule of the wave solver; azimuth is twice this (24)"),
    ("quadrature.hypersphere.order", "polar nodes per level of the S^4 rule (n = 5); azimuth is twice this (12)"),
    ("quadrature.boundary.order", "boundary nodes of Borel-Pompeiu domains; azimuth is twice this (24)"),
    ("quadrature.volume.order", "Gauss-Legendre order of Borel-Pompeiu volume rules (16)"),
    ("fd.step", "step for first derivatives of geometric quantities (1e-4)"),
    ("fd.laplacian_step", "step for finite-difference Laplacians (1e-3)"),
    ("fd.source_step", "step for radial and axial derivatives of sphere means (1e-3)"),
    ("fd.taylor_step", "relative step for Taylor coefficients in u = a^2 - rho^2 (1e-3)"),
    ("fd.wave_step", "step for radial and s derivatives in the wave solver (1e-3)"),
    ("fd.clifford_step", "step for Df and the hyperbolic Dirac operator (1e-3)"),
    ("wave.lattice_step", "lattice spacing of wave-equation residuals (0.05)"),
    ("default.a", "axis length |y| when a command needs one and none is given (1.0)"),
    ("output.format", "json or csv; csv applies to lattice outputs (json)"),
    ("tolerance.identity", "branch and coordinate identities (1e-12)"),
    ("tolerance.gradient", "gradient and Laplacian identities of p, q (1e-6)"),
    ("tolerance.harmonic", "relative Laplacian of the holomorphic potential (1e-5)"),
    ("tolerance.moment", "monopole, dipole and centroid (1e-6)"),
    ("tolerance.point_source", "final point-source error (1e-2)"),
    ("tolerance.descent", "descent identity (1e-6)"),
    ("tolerance.cross_formula", "agreement of the general and explicit source formulas (1e-8)"),
    ("tolerance.wave", "plane-wave closed forms and initial value (1e-6)"),
    ("tolerance.wave_velocity", "initial time derivative (1e-4)"),
    ("tolerance.wave_residual", "finite-difference wave residual (1e-3)"),
    ("tolerance.huygens", "Huygens perturbation bound (1e-8)"),
    ("tolerance.causality", "causality perturbation bound (1e-10)"),
    ("tolerance.clifford", "Borel-Pompeiu, extended Borel-Pompeiu and continuity residuals (1e-4)"),
    ("tolerance.lambda", "relative error of lambda coefficients (4 ulp)"),
];

fn parse_order(v: &str) -> Result<usize, String> {
    let k: usize = v.parse().map_err(|_| format!("expected an integer, got {v:?}"))?;
    if k < 4 {
        return Err(format!("quadrature orders must be at least 4, got {k}"));
    }
    Ok(k)
}

fn parse_positive(v: &str) -> Result<f64, String> {
    let x: f64 = v.parse().map_err(|_| format!("expected a number, got {v:?}"))?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(format!("expected a positive finite number, got {v}"));
    }
    Ok(x)
}

impl Config {
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let t = &mut self.tolerances;
        match key {
            "quadrature.interval.order" => self.source.quad_order = parse_order(value)?,
            "quadrature.interval.panels" => {
                self.source.panels = value
                    .parse()
                    .ok()
                    .filter(|&k: &usize| k >= 1)
                    .ok_or_else(|| format!("expected a positive integer, got {value:?}"))?
            }
            "quadrature.circle.order" => self.source.circle_nodes = parse_order(value)?,
            "quadrature.sphere.order" => {
                self.source.sphere_polar = parse_order(value)?;
                self.source.sphere_azimuth = 2 * self.source.sphere_polar;
            }
            "quadrature.wave.order" => {
                self.wave.sphere_polar = parse_order(value)?;
                self.wave.sphere_azimuth = 2 * self.wave.sphere_polar;
            }
            "quadrature.hypersphere.order" => {
                self.wave.hyper_polar = parse_order(value)?;
                self.wave.hyper_azimuth = 2 * self.wave.hyper_polar;
            }
            "quadrature.boundary.order" => self.boundary_order = parse_order(value)?,
            "quadrature.volume.order" => self.volume_order = parse_order(value)?,
            "fd.step" => self.fd_step = parse_positive(value)?,
            "fd.laplacian_step" => self.laplacian_step = parse_positive(value)?,
            "fd.source_step" => self.source.fd_step = parse_positive(value)?,
            "fd.taylor_step" => self.source.taylor_step = parse_positive(value)?,
            "fd.wave_step" => self.wave.fd_step = parse_positive(value)?,
            "fd.clifford_step" => self.clifford_step = parse_positive(value)?,
            "wave.lattice_step" => self.lattice_step = parse_positive(value)?,
            "default.a" => self.default_a = parse_positive(value)?,
            "output.format" => {
                self.format = match value {
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    _ => return Err(format!("output.format must be json or csv, got {value:?}")),
                }
            }
            "tolerance.identity" => t.identity = parse_positive(value)?,
            "tolerance.gradient" => t.gradient = parse_positive(value)?,
            "tolerance.harmonic" => t.harmonic = parse_positive(value)?,
            "tolerance.moment" => t.moment = parse_positive(value)?,
            "tolerance.point_source" => t.point_source = parse_positive(value)?,
            "tolerance.descent" => t.descent = parse_positive(value)?,
            "tolerance.cross_formula" => t.cross_formula = parse_positive(value)?,
            "tolerance.wave" => t.wave = parse_positive(value)?,
            "tolerance.wave_velocity" => t.wave_velocity = parse_positive(value)?,
            "tolerance.wave_residual" => t.wave_residual = parse_positive(value)?,
            "tolerance.huygens" => t.huygens = parse_positive(value)?,
            "tolerance.causality" => t.causality = parse_positive(value)?,
            "tolerance.clifford" => t.clifford = parse_positive(value)?,
            "tolerance.lambda" => t.lambda = parse_positive(value)?,
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Parse `key = value` lines over the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ConfigError::Parse { line: i + 1, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || value.is_empty() {
                return Err(err(format!("expected `key = value`, got {line:?}")));
            }
            cfg.set(key, value).map_err(err)?;
        }
        Ok(cfg)
    }
}

pub fn load_config(path: &Path) -> Result<Config, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Config::parse(&text)
}

/// The file named by `explicit`, else by `CXPT_CONFIG`, else the defaults.
pub fn resolve_config(explicit: Option<&Path>) -> Result<Config, ConfigError> {
    match explicit {
        Some(p) => load_config(p),
        None => match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => load_config(Path::new(&p)),
            _ => Ok(Config::default()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(Config::parse("").unwrap(), Config::default());
        assert_eq!(Config::parse("# only a comment\n\n").unwrap(), Config::default());
    }

    #[test]
    fn overrides_apply() {
        let cfg = Config::parse("fd.step = 1e-5\nquadrature.sphere.order = 20 # finer\n").unwrap();
        assert_eq!(cfg.fd_step, 1e-5);
        assert_eq!((cfg.source.sphere_polar, cfg.source.sphere_azimuth), (20, 40));
        assert_eq!(Config::parse("output.format = csv").unwrap().format, Format::Csv);
    }

    #[test]
    fn low_orders_are_rejected() {
        let e = Config::parse("\nquadrature.sphere.order = 3").unwrap_err();
        assert!(matches!(e, ConfigError::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn unknown_and_malformed_lines_are_rejected() {
        assert!(matches!(Config::parse("no.such.key = 1"), Err(ConfigError::Parse { line: 1, .. })));
        assert!(matches!(Config::parse("fd.step 1e-5"), Err(ConfigError::Parse { line: 1, .. })));
        assert!(matches!(Config::parse("fd.step = -1"), Err(ConfigError::Parse { line: 1, .. })));
        assert!(matches!(Config::parse("tolerance.wave = 0"), Err(ConfigError::Parse { .. })));
    }

    #[test]
    fn every_documented_key_is_accepted() {
        for (key, _) in KEYS {
            let value = match *key {
                "output.format" => "json",
                k if k.starts_with("quadrature.") => "8",
                _ => "0.5",
            };
            Config::parse(&format!("{key} = {value}")).unwrap_or_else(|e| panic!("{key}: {e}"));
        }
    }
}
