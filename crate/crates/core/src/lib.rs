//! Coarse-grained simulation of the electron double-slit experiment with an
//! environmental which-path qubit.
//!
//! The slit wall and the detector screen are each discretised into `N`
//! positions. Every slit position carries the same amplitude and is
//! propagated to every screen position with the free-particle path-integral
//! kernel. A two-state qubit either ignores the electron (`None`), records
//! the slit it went through (`Remembers`), or records it and then resets
//! (`Forgets`); the behavior decides which composite transitions are
//! admissible and therefore whether the two slits' amplitudes can interfere.
//!
//! ```no_run
//! use doubleslit_core::{simulate, ExperimentConfig, QubitBehavior};
//!
//! let profile = simulate(&ExperimentConfig::default(), QubitBehavior::None).unwrap();
//! assert_eq!(profile.density.len(), 2000);
//! ```

pub mod analysis;
pub mod config;
pub mod error;
pub mod grid;
pub mod kernel;
pub mod propagation;
pub mod qubit;

pub use analysis::{
    analytic_predictions, find_first_minimum, find_peaks, find_secondary_maximum, fringe_spacing,
    total_probability, validate, AnalyticPredictions, Check, Peak, Side, Tolerances,
    ValidationReport, DEFAULT_PEAK_THRESHOLD,
};
pub use config::{derive, DerivedQuantities, ExperimentConfig, GeometryMode};
pub use error::{Error, Result};
pub use grid::{build_grids, Grids};
pub use kernel::{kernel, FreeParticleKernel};
pub use num_complex::Complex64;
pub use propagation::{accumulate, intensity, AmplitudeField, IntensityProfile};
pub use qubit::{build_mask, interference_possible, is_allowed, QubitBehavior, TransitionMask};

/// Amplitude field for one behavior: derive, build grids, accumulate.
pub fn simulate_field(
    config: &ExperimentConfig,
    behavior: QubitBehavior,
) -> Result<AmplitudeField> {
    let derived = derive(config)?;
    let grids = build_grids(config, &derived)?;
    accumulate(config, &derived, &grids, behavior)
}

/// Full pipeline for one behavior, ending in the screen profile.
pub fn simulate(config: &ExperimentConfig, behavior: QubitBehavior) -> Result<IntensityProfile> {
    intensity(&simulate_field(config, behavior)?)
}
