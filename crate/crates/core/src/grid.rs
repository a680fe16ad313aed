//! Coarse-grained position grids on the detector screen and the slit wall.
//!
//! Positions are generated as `centre + offset * spacing` with half-integer
//! offsets. This is algebraically the same as `(i - 0.5) * spacing + edge`,
//! but a grid symmetric about zero comes out exactly antisymmetric in
//! floating point. The kernel phase reaches ~1e9 rad at the screen edges, so
//! ulp-level asymmetries in `x - x'` would otherwise show up in the profile.

use serde::{Deserialize, Serialize};

use crate::config::{DerivedQuantities, ExperimentConfig, GeometryMode};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grids {
    /// Screen positions x_i, ascending, spacing Δ_screen.
    pub screen_positions: Vec<f64>,
    /// Slit positions x'_{i'}: first N/2 entries belong to the lower slit,
    /// the remaining N/2 to the upper slit.
    pub slit_positions: Vec<f64>,
}

impl Grids {
    pub fn n(&self) -> usize {
        self.screen_positions.len()
    }

    pub fn lower_slit(&self) -> &[f64] {
        &self.slit_positions[..self.slit_positions.len() / 2]
    }

    pub fn upper_slit(&self) -> &[f64] {
        &self.slit_positions[self.slit_positions.len() / 2..]
    }
}

/// `count` points of the given spacing centred on `centre`.
fn centred_points(centre: f64, spacing: f64, count: usize) -> impl Iterator<Item = f64> {
    let mid = (count as f64 + 1.0) / 2.0;
    (1..=count).map(move |k| centre + (k as f64 - mid) * spacing)
}

/// Centre of the lower and upper slit for the configured geometry.
pub fn slit_centres(config: &ExperimentConfig) -> (f64, f64) {
    let half_d = config.slit_separation / 2.0;
    let upper = match config.geometry_mode {
        GeometryMode::Corrected => half_d,
        GeometryMode::PaperLiteral => half_d + config.slit_width,
    };
    (-half_d, upper)
}

pub fn build_grids(config: &ExperimentConfig, derived: &DerivedQuantities) -> Result<Grids> {
    config.validate()?;
    let n = config.n_positions;
    let half = n / 2;

    let screen_centre = (config.screen_min + config.screen_max) / 2.0;
    let screen_positions = centred_points(screen_centre, derived.delta_screen, n).collect();

    let (lower_centre, upper_centre) = slit_centres(config);
    let slit_positions = centred_points(lower_centre, derived.delta_slit, half)
        .chain(centred_points(upper_centre, derived.delta_slit, half))
        .collect();

    Ok(Grids {
        screen_positions,
        slit_positions,
    })
}
