//! Physical constants, discretization parameters and the quantities derived
//! from them.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Placement of the upper slit's coarse-grained positions.
///
/// `Corrected` puts the upper slit on `[(d-a)/2, (d+a)/2]`, the mirror image
/// of the lower slit. `PaperLiteral` evaluates the upper branch of the slit
/// grid formula with the global index `i'`, which shifts the upper slit by a
/// full slit width to `[(d+a)/2, (d+3a)/2]` and makes the effective centre
/// separation `d + a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryMode {
    #[default]
    Corrected,
    PaperLiteral,
}

impl GeometryMode {
    pub fn name(self) -> &'static str {
        match self {
            GeometryMode::Corrected => "corrected",
            GeometryMode::PaperLiteral => "paper",
        }
    }
}

impl fmt::Display for GeometryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeometryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "corrected" => Ok(GeometryMode::Corrected),
            "paper" | "paper_literal" | "paperliteral" => Ok(GeometryMode::PaperLiteral),
            other => Err(Error::InvalidConfig(format!(
                "unknown geometry mode `{other}` (expected corrected or paper)"
            ))),
        }
    }
}

/// All physical and discretization constants of one experiment (SI units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Electron mass, kg.
    pub electron_mass: f64,
    /// de Broglie wavelength, m.
    pub wavelength: f64,
    /// Planck constant, J·s.
    pub planck: f64,
    /// Width of each slit, m.
    pub slit_width: f64,
    /// Centre-to-centre slit separation, m.
    pub slit_separation: f64,
    /// Distance from the slit wall to the detector screen, m.
    pub wall_to_screen: f64,
    pub screen_min: f64,
    pub screen_max: f64,
    /// Number of coarse-grained positions on the screen and on the wall
    /// (half of them per slit). Must be even.
    pub n_positions: usize,
    pub geometry_mode: GeometryMode,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            electron_mass: 9.109e-31,
            wavelength: 1.23e-10,
            planck: 6.6261e-34,
            slit_width: 0.15e-8,
            slit_separation: 0.615e-8,
            wall_to_screen: 1.0,
            screen_min: -0.15,
            screen_max: 0.15,
            n_positions: 2000,
            geometry_mode: GeometryMode::Corrected,
        }
    }
}

impl ExperimentConfig {
    pub fn with_n(mut self, n: usize) -> Self {
        self.n_positions = n;
        self
    }

    pub fn with_geometry(mut self, mode: GeometryMode) -> Self {
        self.geometry_mode = mode;
        self
    }

    /// ħ = h / 2π
    pub fn reduced_planck(&self) -> f64 {
        self.planck / (2.0 * PI)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("electron_mass", self.electron_mass),
            ("wavelength", self.wavelength),
            ("planck", self.planck),
            ("slit_width", self.slit_width),
            ("slit_separation", self.slit_separation),
            ("wall_to_screen", self.wall_to_screen),
        ];
        for (name, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be finite and strictly positive, got {value}"
                )));
            }
        }
        if !self.screen_min.is_finite() || !self.screen_max.is_finite() {
            return Err(Error::InvalidConfig("screen bounds must be finite".into()));
        }
        if self.screen_min >= self.screen_max {
            return Err(Error::InvalidConfig(format!(
                "screen_min ({}) must be below screen_max ({})",
                self.screen_min, self.screen_max
            )));
        }
        if self.slit_separation <= self.slit_width {
            return Err(Error::InvalidConfig(format!(
                "slit_separation ({}) must exceed slit_width ({})",
                self.slit_separation, self.slit_width
            )));
        }
        if self.n_positions < 2 || !self.n_positions.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "N must be even and at least 2, got {}",
                self.n_positions
            )));
        }
        Ok(())
    }
}

/// Quantities computed once from an [`ExperimentConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedQuantities {
    /// v = h / (λ m), m/s.
    pub velocity: f64,
    /// Width of one coarse-grained slit interval, 2a/N.
    pub delta_slit: f64,
    /// Spacing of the screen grid, (Z_max - Z_min)/N.
    pub delta_screen: f64,
    /// Discrete amplitude Δ_slit/√(2a) assigned to every slit position.
    pub slit_amplitude: f64,
    /// Wall-to-screen transit time L/v, shared by all paths.
    pub transit_time: f64,
}

pub fn derive(config: &ExperimentConfig) -> Result<DerivedQuantities> {
    config.validate()?;
    let n = config.n_positions as f64;
    let velocity = config.planck / (config.wavelength * config.electron_mass);
    let delta_slit = 2.0 * config.slit_width / n;
    let delta_screen = (config.screen_max - config.screen_min) / n;
    let slit_amplitude = delta_slit / (2.0 * config.slit_width).sqrt();
    let transit_time = config.wall_to_screen / velocity;

    let derived = DerivedQuantities {
        velocity,
        delta_slit,
        delta_screen,
        slit_amplitude,
        transit_time,
    };
    let fields = [
        ("velocity", velocity),
        ("delta_slit", delta_slit),
        ("delta_screen", delta_screen),
        ("slit_amplitude", slit_amplitude),
        ("transit_time", transit_time),
    ];
    for (name, value) in fields {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::NonFinite(format!("derived {name} = {value}")));
        }
    }
    Ok(derived)
}

impl DerivedQuantities {
    /// Σ over all N slit positions of Δ_slit · (1/√(2a))², which is 1 for a
    /// correctly normalised discrete slit distribution.
    pub fn slit_pmf_total(&self, config: &ExperimentConfig) -> f64 {
        let density = 1.0 / (2.0 * config.slit_width);
        config.n_positions as f64 * self.delta_slit * density
    }
}
