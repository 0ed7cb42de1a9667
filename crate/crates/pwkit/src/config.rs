//! Run configuration: presets, optional TOML overrides and command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("ConfigError: configuration file {0} is empty")]
    Empty(PathBuf),
    #[error("ConfigError: cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("ConfigError: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("ConfigError: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Minutes on a laptop.
    Desk,
    /// Doubled meshes; up to half an hour.
    Thorough,
}

/// Pass thresholds for every check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub evenness: f64,
    pub radon_support: f64,
    pub fourier_slice: f64,
    pub plancherel: f64,
    /// Minimum decrease of the Plancherel defect when the mesh doubles.
    pub plancherel_refinement: f64,
    /// Relative to the sup norm of the function.
    pub inversion: f64,
    pub projection: f64,
    /// Relative error of the support radius estimate.
    pub support_estimate: f64,
    /// Largest allowed change of the seminorm per doubling of the imaginary extent.
    pub growth_stable: f64,
    /// Smallest required growth per doubling below the critical type.
    pub growth_divergent: f64,
    pub homogeneity: f64,
    pub violation: f64,
    pub extension: f64,
    pub sphere_slice_s3: f64,
    pub sphere_slice_s2: f64,
    pub sphere_constant: f64,
    /// In profile steps.
    pub sphere_support: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            evenness: 1e-6,
            radon_support: 1e-10,
            fourier_slice: 1e-5,
            plancherel: 1e-4,
            plancherel_refinement: 4.0,
            inversion: 1e-3,
            projection: 1e-5,
            support_estimate: 0.05,
            growth_stable: 2.0,
            growth_divergent: 2.0,
            homogeneity: 1e-6,
            violation: 0.5,
            extension: 1e-5,
            sphere_slice_s3: 1e-6,
            sphere_slice_s2: 1e-4,
            sphere_constant: 1e-8,
            sphere_support: 1.0,
        }
    }
}

impl Tolerances {
    fn validate(&self) -> Result<(), ConfigError> {
        let all = [
            self.evenness,
            self.radon_support,
            self.fourier_slice,
            self.plancherel,
            self.plancherel_refinement,
            self.inversion,
            self.projection,
            self.support_estimate,
            self.growth_stable,
            self.growth_divergent,
            self.homogeneity,
            self.violation,
            self.extension,
            self.sphere_slice_s3,
            self.sphere_slice_s2,
            self.sphere_constant,
            self.sphere_support,
        ];
        if all.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            Err(ConfigError::Invalid("tolerances must be positive and finite".into()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub preset: Preset,
    pub seed: u64,
    /// Points per axis of the 2-D grids.
    pub points: usize,
    pub half_width: f64,
    /// Directions on the circle.
    pub directions: usize,
    /// Points per axis of the 3-D grids.
    pub points_3d: usize,
    pub suite_size: usize,
    pub kmax: u32,
    /// Polynomial weight order of the Paley-Wiener seminorm.
    pub order: u32,
    pub inversion_nodes: usize,
    pub sphere_samples: usize,
    pub m_max: usize,
    pub weyl_degree: usize,
    pub lift_targets: usize,
    pub tolerances: Tolerances,
}

impl RunConfig {
    pub fn preset(preset: Preset) -> Self {
        match preset {
            Preset::Desk => Self {
                preset,
                seed: 7,
                points: 257,
                half_width: 1.0,
                directions: 64,
                points_3d: 65,
                suite_size: 5,
                kmax: 6,
                order: 2,
                inversion_nodes: 20,
                sphere_samples: 2049,
                m_max: 12,
                weyl_degree: 6,
                lift_targets: 10,
                tolerances: Tolerances::default(),
            },
            Preset::Thorough => Self {
                points: 513,
                directions: 128,
                points_3d: 97,
                sphere_samples: 4097,
                weyl_degree: 8,
                lift_targets: 20,
                ..Self::preset(Preset::Desk)
            }
            .with_preset(preset),
        }
    }

    fn with_preset(mut self, preset: Preset) -> Self {
        self.preset = preset;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.points < 33 || self.points % 2 == 0 || self.points_3d < 33 || self.points_3d % 2 == 0 {
            return Err(ConfigError::Invalid("grid points must be odd and at least 33".into()));
        }
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(ConfigError::Invalid("half width must be positive".into()));
        }
        if self.directions < 4 || self.directions % 2 == 1 {
            return Err(ConfigError::Invalid("direction count must be even and at least 4".into()));
        }
        if self.suite_size == 0 {
            return Err(ConfigError::Invalid("suite must contain at least one function".into()));
        }
        if self.kmax > 8 {
            return Err(ConfigError::Invalid("kmax is capped at 8".into()));
        }
        self.tolerances.validate()
    }

    /// Applies the overrides of a TOML file.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_owned(), source })?;
        self.apply_toml(&text, path)
    }

    pub fn apply_toml(&mut self, text: &str, origin: &Path) -> Result<(), ConfigError> {
        let file: ConfigFile = toml::from_str(text)?;
        if file == ConfigFile::default() {
            return Err(ConfigError::Empty(origin.to_owned()));
        }
        if let Some(p) = file.preset {
            let keep_tol = self.tolerances.clone();
            *self = Self::preset(p);
            self.tolerances = keep_tol;
        }
        macro_rules! take {
            ($($field:ident),*) => {$( if let Some(v) = file.$field { self.$field = v; } )*};
        }
        take!(
            seed,
            points,
            half_width,
            directions,
            points_3d,
            suite_size,
            kmax,
            order,
            inversion_nodes,
            sphere_samples,
            m_max,
            weyl_degree,
            lift_targets,
            tolerances
        );
        Ok(())
    }
}

/// Keys accepted in a configuration file; everything is optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    preset: Option<Preset>,
    seed: Option<u64>,
    points: Option<usize>,
    half_width: Option<f64>,
    directions: Option<usize>,
    points_3d: Option<usize>,
    suite_size: Option<usize>,
    kmax: Option<u32>,
    order: Option<u32>,
    inversion_nodes: Option<usize>,
    sphere_samples: Option<usize>,
    m_max: Option<usize>,
    weyl_degree: Option<usize>,
    lift_targets: Option<usize>,
    tolerances: Option<Tolerances>,
}
