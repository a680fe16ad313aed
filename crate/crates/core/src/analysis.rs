//! Comparison of simulated screen profiles with the textbook single-slit and
//! double-slit optics predictions.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, GeometryMode};
use crate::error::{Error, Result};
use crate::grid::slit_centres;
use crate::propagation::IntensityProfile;
use crate::qubit::{build_mask, interference_possible, QubitBehavior};

/// Position of the first secondary single-slit maximum in units of λL/a.
pub const SECONDARY_MAXIMUM_FACTOR: f64 = 1.43;

/// Default peak prominence threshold, as a fraction of the global maximum.
pub const DEFAULT_PEAK_THRESHOLD: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticPredictions {
    /// λL/a
    pub first_minimum: f64,
    /// 1.43 λL/a
    pub secondary_maximum: f64,
    /// λL/d
    pub fringe_spacing: f64,
    /// λL / (distance between the slit centres actually used by the grid).
    /// Equals `fringe_spacing` in corrected geometry and λL/(d+a) in the
    /// literal geometry.
    pub effective_fringe_spacing: f64,
}

pub fn analytic_predictions(config: &ExperimentConfig) -> AnalyticPredictions {
    let lambda_l = config.wavelength * config.wall_to_screen;
    let first_minimum = lambda_l / config.slit_width;
    let (lower, upper) = slit_centres(config);
    AnalyticPredictions {
        first_minimum,
        secondary_maximum: SECONDARY_MAXIMUM_FACTOR * first_minimum,
        fringe_spacing: lambda_l / config.slit_separation,
        effective_fringe_spacing: lambda_l / (upper - lower),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub index: usize,
    pub position: f64,
    pub density: f64,
    pub prominence: f64,
}

fn check_profile(profile: &IntensityProfile) -> Result<()> {
    if profile.density.is_empty() {
        return Err(Error::EmptyProfile);
    }
    if profile.positions.len() != profile.density.len() {
        return Err(Error::InvalidConfig(format!(
            "profile has {} positions but {} densities",
            profile.positions.len(),
            profile.density.len()
        )));
    }
    Ok(())
}

fn global_max(values: &[f64]) -> (usize, f64) {
    values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| {
            if v > best.1 {
                (i, v)
            } else {
                best
            }
        })
}

/// Local maxima as `(first, last)` index of the (possibly flat) top.
fn local_maxima(values: &[f64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < values.len() {
        if values[i] > values[i - 1] {
            let mut end = i;
            while end + 1 < values.len() && values[end + 1] == values[i] {
                end += 1;
            }
            if end + 1 < values.len() && values[end + 1] < values[i] {
                out.push((i, end));
            }
            i = end + 1;
        } else {
            i += 1;
        }
    }
    out
}

/// Height of a peak above the higher of the two lowest points separating it
/// from strictly higher terrain (or the profile edge) on either side.
fn prominence(values: &[f64], first: usize, last: usize) -> f64 {
    let height = values[first];
    let left_base = values[..first]
        .iter()
        .rev()
        .take_while(|&&v| v <= height)
        .fold(height, |m, &v| m.min(v));
    let right_base = values[last + 1..]
        .iter()
        .take_while(|&&v| v <= height)
        .fold(height, |m, &v| m.min(v));
    height - left_base.max(right_base)
}

/// Local maxima whose prominence exceeds `min_prominence_fraction` of the
/// global maximum, in ascending position order. A flat top is reported at
/// its leftmost index.
pub fn find_peaks(profile: &IntensityProfile, min_prominence_fraction: f64) -> Result<Vec<Peak>> {
    check_profile(profile)?;
    if !(min_prominence_fraction > 0.0 && min_prominence_fraction < 1.0) {
        return Err(Error::InvalidThreshold(min_prominence_fraction));
    }
    let values = &profile.density;
    let threshold = min_prominence_fraction * global_max(values).1;
    Ok(local_maxima(values)
        .into_iter()
        .filter_map(|(first, last)| {
            let prominence = prominence(values, first, last);
            (prominence > threshold).then(|| Peak {
                index: first,
                position: profile.positions[first],
                density: values[first],
                prominence,
            })
        })
        .collect())
}

/// Peaks lying inside `|x| <= half_width`.
pub fn peaks_within(peaks: &[Peak], half_width: f64) -> Vec<Peak> {
    peaks
        .iter()
        .copied()
        .filter(|p| p.position.abs() <= half_width)
        .collect()
}

/// Median gap between consecutive peaks inside `|x| <= half_width`
/// (normally the central diffraction lobe, λL/a).
pub fn fringe_spacing(peaks: &[Peak], half_width: f64) -> Result<f64> {
    let inside = peaks_within(peaks, half_width);
    if inside.len() < 3 {
        return Err(Error::NoFringes {
            found: inside.len(),
        });
    }
    let mut gaps: Vec<f64> = inside
        .windows(2)
        .map(|w| w[1].position - w[0].position)
        .collect();
    gaps.sort_by(|a, b| a.total_cmp(b));
    let mid = gaps.len() / 2;
    Ok(if gaps.len() % 2 == 1 {
        gaps[mid]
    } else {
        (gaps[mid - 1] + gaps[mid]) / 2.0
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Towards increasing x.
    Positive,
    /// Towards decreasing x.
    Negative,
}

/// Index of the first strict local minimum met when walking from the global
/// maximum towards `side`.
pub fn first_minimum_index(profile: &IntensityProfile, side: Side) -> Result<usize> {
    check_profile(profile)?;
    let v = &profile.density;
    let (start, _) = global_max(v);
    let is_min = |j: usize| j > 0 && j + 1 < v.len() && v[j] < v[j - 1] && v[j] < v[j + 1];
    let found = match side {
        Side::Positive => (start + 1..v.len()).find(|&j| is_min(j)),
        Side::Negative => (1..start).rev().find(|&j| is_min(j)),
    };
    found.ok_or(Error::NoMinimum)
}

/// Position of the first diffraction minimum on the positive side of the
/// central maximum.
pub fn find_first_minimum(profile: &IntensityProfile) -> Result<f64> {
    first_minimum_index(profile, Side::Positive).map(|i| profile.positions[i])
}

/// Position of the first peak beyond the first minimum on the given side.
pub fn find_secondary_maximum(
    profile: &IntensityProfile,
    side: Side,
    min_prominence_fraction: f64,
) -> Result<f64> {
    let min_index = first_minimum_index(profile, side)?;
    let peaks = find_peaks(profile, min_prominence_fraction)?;
    let found = match side {
        Side::Positive => peaks.iter().find(|p| p.index > min_index),
        Side::Negative => peaks.iter().rev().find(|p| p.index < min_index),
    };
    found.map(|p| p.position).ok_or(Error::NoSecondaryMaximum)
}

/// Σ p_i Δ_screen
pub fn total_probability(profile: &IntensityProfile) -> f64 {
    profile
        .density
        .iter()
        .map(|p| p * profile.delta_screen)
        .sum()
}

/// Tolerances used by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub normalization_target: f64,
    /// Absolute.
    pub normalization: f64,
    /// Relative, pairwise across behaviors.
    pub normalization_agreement: f64,
    /// Relative to λL/d.
    pub fringe_spacing: f64,
    /// In screen cells.
    pub first_minimum_cells: f64,
    /// In screen cells.
    pub secondary_maximum_cells: f64,
    /// Minimum number of peaks in the central lobe that counts as fringes.
    pub min_fringe_peaks: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            normalization_target: 0.95,
            normalization: 0.02,
            normalization_agreement: 1e-6,
            fringe_spacing: 0.10,
            first_minimum_cells: 2.0,
            secondary_maximum_cells: 5.0,
            min_fringe_peaks: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// `None` when the feature could not be measured at all.
    pub measured: Option<f64>,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn within(name: String, measured: Option<f64>, expected: f64, tolerance: f64) -> Self {
        let pass = measured.is_some_and(|m| (m - expected).abs() <= tolerance);
        Self {
            name,
            measured,
            expected,
            tolerance,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BehaviorSummary {
    pub behavior: QubitBehavior,
    pub total_probability: f64,
    pub peaks_in_central_lobe: usize,
    pub interference_detected: bool,
    pub fringe_spacing_measured: Option<f64>,
    pub first_minimum_measured: Option<f64>,
    pub first_minimum_negative_measured: Option<f64>,
    pub secondary_max_measured: Option<f64>,
    pub secondary_max_negative_measured: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub geometry: GeometryMode,
    pub n_positions: usize,
    pub delta_screen: f64,
    pub peak_threshold: f64,
    pub expected: AnalyticPredictions,
    pub tolerances: Tolerances,
    pub behaviors: Vec<BehaviorSummary>,
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

impl ValidationReport {
    pub fn summary(&self, behavior: QubitBehavior) -> Option<&BehaviorSummary> {
        self.behaviors.iter().find(|s| s.behavior == behavior)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Flat `key = value` text, one entry per line.
    pub fn to_key_value(&self) -> String {
        fn opt(v: Option<f64>) -> String {
            v.map_or_else(|| "none".to_string(), |x| x.to_string())
        }
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        kv("geometry", self.geometry.to_string());
        kv("n_positions", self.n_positions.to_string());
        kv("delta_screen_m", self.delta_screen.to_string());
        kv("peak_threshold", self.peak_threshold.to_string());
        kv(
            "expected.first_minimum_m",
            self.expected.first_minimum.to_string(),
        );
        kv(
            "expected.secondary_max_m",
            self.expected.secondary_maximum.to_string(),
        );
        kv(
            "expected.fringe_spacing_m",
            self.expected.fringe_spacing.to_string(),
        );
        kv(
            "expected.effective_fringe_spacing_m",
            self.expected.effective_fringe_spacing.to_string(),
        );
        for s in &self.behaviors {
            let b = s.behavior.name();
            kv(
                &format!("{b}.total_probability"),
                s.total_probability.to_string(),
            );
            kv(
                &format!("{b}.peaks_in_central_lobe"),
                s.peaks_in_central_lobe.to_string(),
            );
            kv(
                &format!("{b}.interference_detected"),
                s.interference_detected.to_string(),
            );
            kv(
                &format!("{b}.fringe_spacing_m"),
                opt(s.fringe_spacing_measured),
            );
            kv(
                &format!("{b}.first_minimum_m"),
                opt(s.first_minimum_measured),
            );
            kv(
                &format!("{b}.first_minimum_negative_m"),
                opt(s.first_minimum_negative_measured),
            );
            kv(
                &format!("{b}.secondary_max_m"),
                opt(s.secondary_max_measured),
            );
            kv(
                &format!("{b}.secondary_max_negative_m"),
                opt(s.secondary_max_negative_measured),
            );
        }
        for c in &self.checks {
            kv(&format!("check.{}.measured", c.name), opt(c.measured));
            kv(
                &format!("check.{}.expected", c.name),
                c.expected.to_string(),
            );
            kv(
                &format!("check.{}.tolerance", c.name),
                c.tolerance.to_string(),
            );
            kv(&format!("check.{}.pass", c.name), c.pass.to_string());
        }
        kv("all_passed", self.all_passed.to_string());
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn summarize(
    profile: &IntensityProfile,
    predictions: &AnalyticPredictions,
    tol: &Tolerances,
    peak_threshold: f64,
) -> Result<BehaviorSummary> {
    let peaks = find_peaks(profile, peak_threshold)?;
    let lobe = predictions.first_minimum;
    let peaks_in_central_lobe = peaks_within(&peaks, lobe).len();
    let interference_detected = peaks_in_central_lobe >= tol.min_fringe_peaks;
    let remembers = profile.behavior == QubitBehavior::Remembers;

    let fringe_spacing_measured = if remembers {
        None
    } else {
        fringe_spacing(&peaks, lobe).ok()
    };
    let (mut first_min, mut first_min_neg, mut second_max, mut second_max_neg) =
        (None, None, None, None);
    if remembers {
        let at = |i: usize| profile.positions[i];
        first_min = first_minimum_index(profile, Side::Positive).ok().map(at);
        first_min_neg = first_minimum_index(profile, Side::Negative).ok().map(at);
        second_max = find_secondary_maximum(profile, Side::Positive, peak_threshold).ok();
        second_max_neg = find_secondary_maximum(profile, Side::Negative, peak_threshold).ok();
    }
    Ok(BehaviorSummary {
        behavior: profile.behavior,
        total_probability: total_probability(profile),
        peaks_in_central_lobe,
        interference_detected,
        fringe_spacing_measured,
        first_minimum_measured: first_min,
        first_minimum_negative_measured: first_min_neg,
        secondary_max_measured: second_max,
        secondary_max_negative_measured: second_max_neg,
    })
}

/// Builds the validation report for profiles of one or more distinct
/// behaviors, all computed with `config`.
pub fn validate(
    profiles: &[IntensityProfile],
    config: &ExperimentConfig,
    peak_threshold: f64,
) -> Result<ValidationReport> {
    validate_with(profiles, config, peak_threshold, &Tolerances::default())
}

pub fn validate_with(
    profiles: &[IntensityProfile],
    config: &ExperimentConfig,
    peak_threshold: f64,
    tol: &Tolerances,
) -> Result<ValidationReport> {
    if profiles.is_empty() {
        return Err(Error::EmptyProfile);
    }
    if !(peak_threshold > 0.0 && peak_threshold < 1.0) {
        return Err(Error::InvalidThreshold(peak_threshold));
    }
    let mut seen = BTreeSet::new();
    for p in profiles {
        if p.config != *config {
            return Err(Error::MismatchedConfigs);
        }
        if !seen.insert(p.behavior) {
            return Err(Error::DuplicateBehavior(p.behavior.to_string()));
        }
    }

    let expected = analytic_predictions(config);
    let delta_screen = profiles[0].delta_screen;
    let behaviors = profiles
        .iter()
        .map(|p| summarize(p, &expected, tol, peak_threshold))
        .collect::<Result<Vec<_>>>()?;

    let mut checks = Vec::new();
    for s in &behaviors {
        let b = s.behavior.name();
        checks.push(Check::within(
            format!("normalization_{b}"),
            Some(s.total_probability),
            tol.normalization_target,
            tol.normalization,
        ));
    }
    if behaviors.len() > 1 {
        let totals: Vec<f64> = behaviors.iter().map(|s| s.total_probability).collect();
        let worst = totals
            .iter()
            .flat_map(|a| {
                totals
                    .iter()
                    .map(move |b| (a - b).abs() / a.abs().max(b.abs()))
            })
            .fold(0.0, f64::max);
        checks.push(Check {
            name: "normalization_agreement".into(),
            measured: Some(worst),
            expected: 0.0,
            tolerance: tol.normalization_agreement,
            pass: worst <= tol.normalization_agreement,
        });
    }
    for s in &behaviors {
        let b = s.behavior.name();
        match s.behavior {
            QubitBehavior::None | QubitBehavior::Forgets => {
                checks.push(Check::within(
                    format!("fringe_spacing_{b}"),
                    s.fringe_spacing_measured,
                    expected.fringe_spacing,
                    tol.fringe_spacing * expected.fringe_spacing,
                ));
            }
            QubitBehavior::Remembers => {
                let min_tol = tol.first_minimum_cells * delta_screen;
                let max_tol = tol.secondary_maximum_cells * delta_screen;
                checks.push(Check::within(
                    "first_minimum_positive".into(),
                    s.first_minimum_measured,
                    expected.first_minimum,
                    min_tol,
                ));
                checks.push(Check::within(
                    "first_minimum_negative".into(),
                    s.first_minimum_negative_measured,
                    -expected.first_minimum,
                    min_tol,
                ));
                checks.push(Check::within(
                    "secondary_max_positive".into(),
                    s.secondary_max_measured,
                    expected.secondary_maximum,
                    max_tol,
                ));
                checks.push(Check::within(
                    "secondary_max_negative".into(),
                    s.secondary_max_negative_measured,
                    -expected.secondary_maximum,
                    max_tol,
                ));
            }
        }
        let should_interfere = interference_possible(&build_mask(s.behavior, 2)?);
        checks.push(Check {
            name: format!("interference_{b}"),
            measured: Some(s.peaks_in_central_lobe as f64),
            expected: tol.min_fringe_peaks as f64,
            tolerance: 0.0,
            pass: s.interference_detected == should_interfere,
        });
    }

    let all_passed = checks.iter().all(|c| c.pass);
    Ok(ValidationReport {
        geometry: config.geometry_mode,
        n_positions: config.n_positions,
        delta_screen,
        peak_threshold,
        expected,
        tolerances: *tol,
        behaviors,
        checks,
        all_passed,
    })
}
