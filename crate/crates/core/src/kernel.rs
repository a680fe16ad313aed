//! Free-particle path-integral propagator.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::config::{DerivedQuantities, ExperimentConfig};
use crate::error::{Error, Result};

/// The free-particle kernel `A · exp(B)` for a fixed transit time T = L/v:
///
/// ```text
/// A = sqrt(m / (2 i π ħ T))
/// B = i m (x - x')² / (2 ħ T)
/// ```
///
/// `A` uses the principal square root, i.e. `sqrt(1/i) = exp(-iπ/4)`.
/// Both factors are independent of the positions and are computed once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeParticleKernel {
    prefactor: Complex64,
    phase_per_m2: f64,
}

impl FreeParticleKernel {
    pub fn new(config: &ExperimentConfig, derived: &DerivedQuantities) -> Result<Self> {
        let hbar = config.reduced_planck();
        let t = derived.transit_time;
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::NonFinite(format!("transit time {t}")));
        }
        let modulus = (config.electron_mass / (2.0 * PI * hbar * t)).sqrt();
        let prefactor = Complex64::from_polar(modulus, -FRAC_PI_4);
        let phase_per_m2 = config.electron_mass / (2.0 * hbar * t);
        if !(modulus.is_finite() && phase_per_m2.is_finite()) {
            return Err(Error::NonFinite(format!(
                "kernel prefactor |A| = {modulus}, phase scale = {phase_per_m2}"
            )));
        }
        Ok(Self {
            prefactor,
            phase_per_m2,
        })
    }

    /// Position-independent factor `A`.
    pub fn prefactor(&self) -> Complex64 {
        self.prefactor
    }

    /// Kernel value without the finiteness check; used in the hot loop,
    /// where the accumulated sums are checked instead.
    #[inline]
    pub fn eval(&self, x: f64, x_prime: f64) -> Complex64 {
        let dx = x - x_prime;
        let phase = self.phase_per_m2 * (dx * dx);
        let (sin, cos) = phase.sin_cos();
        self.prefactor * Complex64::new(cos, sin)
    }

    pub fn try_eval(&self, x: f64, x_prime: f64) -> Result<Complex64> {
        let value = self.eval(x, x_prime);
        if value.re.is_finite() && value.im.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite(format!(
                "kernel({x}, {x_prime}) = {value}"
            )))
        }
    }
}

/// Kernel amplitude for a transition from wall position `x_prime` to screen
/// position `x`.
pub fn kernel(
    x: f64,
    x_prime: f64,
    config: &ExperimentConfig,
    derived: &DerivedQuantities,
) -> Result<Complex64> {
    FreeParticleKernel::new(config, derived)?.try_eval(x, x_prime)
}
