//! Accumulation of slit amplitudes at the screen and the resulting
//! standalone probability density.
//!
//! Each screen position is an independent task that owns both of its qubit
//! columns, and every inner sum runs over slit positions in ascending order
//! (then over the wall qubit state), so the result does not depend on how
//! rayon schedules the work.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{DerivedQuantities, ExperimentConfig};
use crate::error::{Error, Result};
use crate::grid::Grids;
use crate::kernel::FreeParticleKernel;
use crate::qubit::{admits, QubitBehavior};

/// Marginal screen amplitudes per slit. Entry `[i][e - 1]` is the amplitude
/// at screen position `i` (0-based) with screen qubit state `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeField {
    pub behavior: QubitBehavior,
    pub config: ExperimentConfig,
    pub delta_screen: f64,
    pub positions: Vec<f64>,
    pub lower: Vec<[Complex64; 2]>,
    pub upper: Vec<[Complex64; 2]>,
}

impl AmplitudeField {
    pub fn n(&self) -> usize {
        self.positions.len()
    }
}

/// Screen probability density for one qubit behavior.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntensityProfile {
    pub behavior: QubitBehavior,
    pub config: ExperimentConfig,
    pub delta_screen: f64,
    pub positions: Vec<f64>,
    pub density: Vec<f64>,
}

impl IntensityProfile {
    pub fn len(&self) -> usize {
        self.density.len()
    }

    pub fn is_empty(&self) -> bool {
        self.density.is_empty()
    }
}

fn slit_sum(
    kernel: &FreeParticleKernel,
    behavior: QubitBehavior,
    x: f64,
    slit: &[f64],
    in_lower_slit: bool,
    e: u8,
    amplitude: f64,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &x_prime in slit {
        for e_prime in 1..=2u8 {
            if admits(behavior, in_lower_slit, e_prime, e) {
                acc += kernel.eval(x, x_prime) * amplitude;
            }
        }
    }
    acc
}

fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub fn accumulate(
    config: &ExperimentConfig,
    derived: &DerivedQuantities,
    grids: &Grids,
    behavior: QubitBehavior,
) -> Result<AmplitudeField> {
    config.validate()?;
    let n = config.n_positions;
    if grids.screen_positions.len() != n || grids.slit_positions.len() != n {
        return Err(Error::InvalidConfig(format!(
            "grid sizes ({}, {}) do not match N = {n}",
            grids.screen_positions.len(),
            grids.slit_positions.len()
        )));
    }
    let kernel = FreeParticleKernel::new(config, derived)?;
    let amplitude = derived.slit_amplitude;
    let lower_slit = grids.lower_slit();
    let upper_slit = grids.upper_slit();

    let cells: Vec<([Complex64; 2], [Complex64; 2])> = grids
        .screen_positions
        .par_iter()
        .map(|&x| {
            let mut lower = [Complex64::new(0.0, 0.0); 2];
            let mut upper = [Complex64::new(0.0, 0.0); 2];
            for e in 1..=2u8 {
                let col = (e - 1) as usize;
                lower[col] = slit_sum(&kernel, behavior, x, lower_slit, true, e, amplitude);
                upper[col] = slit_sum(&kernel, behavior, x, upper_slit, false, e, amplitude);
            }
            (lower, upper)
        })
        .collect();

    let (lower, upper): (Vec<_>, Vec<_>) = cells.into_iter().unzip();
    for (i, (l, u)) in lower.iter().zip(&upper).enumerate() {
        for col in 0..2 {
            if !is_finite(l[col]) || !is_finite(u[col]) {
                return Err(Error::NonFiniteAmplitude {
                    i: i + 1,
                    e: col + 1,
                });
            }
        }
    }

    Ok(AmplitudeField {
        behavior,
        config: *config,
        delta_screen: derived.delta_screen,
        positions: grids.screen_positions.clone(),
        lower,
        upper,
    })
}

/// p_i = |upper_{i,1} + lower_{i,1}|² + |upper_{i,2} + lower_{i,2}|²
pub fn intensity(field: &AmplitudeField) -> Result<IntensityProfile> {
    let density: Vec<f64> = field
        .lower
        .par_iter()
        .zip(field.upper.par_iter())
        .map(|(l, u)| (u[0] + l[0]).norm_sqr() + (u[1] + l[1]).norm_sqr())
        .collect();
    for (i, &p) in density.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFiniteAmplitude { i: i + 1, e: 1 });
        }
        if p < 0.0 {
            return Err(Error::NegativeDensity { i: i + 1, value: p });
        }
    }
    Ok(IntensityProfile {
        behavior: field.behavior,
        config: field.config,
        delta_screen: field.delta_screen,
        positions: field.positions.clone(),
        density,
    })
}
