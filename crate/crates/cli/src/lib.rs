//! Command-line driver: argument parsing, scenario execution and the
//! artifact writers (CSV profiles, SVG plots, mask exports, reports).

pub mod config_file;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use doubleslit_core::{
    build_mask, simulate, validate, ExperimentConfig, GeometryMode, IntensityProfile,
    QubitBehavior, ValidationReport, DEFAULT_PEAK_THRESHOLD,
};
use thiserror::Error;

pub use output::{behavior_path, parse_profile_csv, profile_to_csv, profile_to_svg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] doubleslit_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QubitArg {
    None,
    Remembers,
    Forgets,
    All,
}

impl QubitArg {
    fn behaviors(self) -> Vec<QubitBehavior> {
        match self {
            QubitArg::None => vec![QubitBehavior::None],
            QubitArg::Remembers => vec![QubitBehavior::Remembers],
            QubitArg::Forgets => vec![QubitBehavior::Forgets],
            QubitArg::All => QubitBehavior::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    Corrected,
    Paper,
}

#[derive(Debug, Parser)]
#[command(
    name = "doubleslit",
    version,
    about = "Simulate the coarse-grained electron double-slit experiment with a which-path qubit"
)]
struct Args {
    /// Qubit behavior(s) to simulate.
    #[arg(long, value_enum, default_value = "all")]
    qubit: QubitArg,
    /// Number of screen (and slit) positions; must be even.
    #[arg(long)]
    n: Option<usize>,
    /// Upper-slit placement.
    #[arg(long, value_enum)]
    geometry: Option<GeometryArg>,
    /// Write the profile as CSV (suffixed with the behavior when several run).
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Write an SVG plot (suffixed with the behavior when several run).
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Directory for transition-mask exports.
    #[arg(long, value_name = "DIR")]
    masks: Option<PathBuf>,
    /// Size of the exported masks.
    #[arg(long, default_value_t = 8)]
    mask_n: usize,
    /// Validation report; `.json` selects JSON, anything else key = value text.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Exit with status 2 if any validation check fails.
    #[arg(long)]
    check: bool,
    /// Minimum peak prominence as a fraction of the global maximum.
    #[arg(long, default_value_t = DEFAULT_PEAK_THRESHOLD)]
    peak_threshold: f64,
    /// Key-value configuration file (lambda, a, d, L, N, Zmin, Zmax).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Worker threads for the propagation (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRequest {
    pub behaviors: Vec<QubitBehavior>,
    pub config: ExperimentConfig,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub masks: Option<PathBuf>,
    pub mask_n: usize,
    pub report: Option<PathBuf>,
    pub check: bool,
    pub peak_threshold: f64,
    pub threads: Option<usize>,
}

impl RunRequest {
    fn output_path(&self, base: &Path, behavior: QubitBehavior) -> PathBuf {
        if self.behaviors.len() > 1 {
            behavior_path(base, behavior)
        } else {
            base.to_path_buf()
        }
    }
}

pub fn parse_args<I, T>(argv: I) -> Result<RunRequest, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv)?;

    let mut config = ExperimentConfig::default();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        config_file::apply_config_text(&text, &mut config)?;
    }
    if let Some(n) = args.n {
        config.n_positions = n;
    }
    if let Some(g) = args.geometry {
        config.geometry_mode = match g {
            GeometryArg::Corrected => GeometryMode::Corrected,
            GeometryArg::Paper => GeometryMode::PaperLiteral,
        };
    }
    config.validate()?;

    if !(args.peak_threshold > 0.0 && args.peak_threshold < 1.0) {
        return Err(CliError::Invalid(format!(
            "--peak-threshold must lie in (0, 1), got {}",
            args.peak_threshold
        )));
    }
    if args.masks.is_some() && (args.mask_n < 2 || !args.mask_n.is_multiple_of(2)) {
        return Err(CliError::Invalid(format!(
            "--mask-n must be even and at least 2, got {}",
            args.mask_n
        )));
    }
    if args.threads == Some(0) {
        return Err(CliError::Invalid("--threads must be at least 1".into()));
    }
    if args.csv.is_none()
        && args.svg.is_none()
        && args.masks.is_none()
        && args.report.is_none()
        && !args.check
    {
        return Err(CliError::Invalid(
            "nothing to do: request at least one of --csv, --svg, --masks, --report, --check"
                .into(),
        ));
    }
    let files = [&args.csv, &args.svg, &args.report];
    for (i, a) in files.iter().enumerate() {
        for b in &files[i + 1..] {
            if a.is_some() && a == b {
                return Err(CliError::Invalid(
                    "two outputs point at the same file".into(),
                ));
            }
        }
    }

    Ok(RunRequest {
        behaviors: args.qubit.behaviors(),
        config,
        csv: args.csv,
        svg: args.svg,
        masks: args.masks,
        mask_n: args.mask_n,
        report: args.report,
        check: args.check,
        peak_threshold: args.peak_threshold,
        threads: args.threads,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Result of a completed run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub profiles: Vec<IntensityProfile>,
    pub report: Option<ValidationReport>,
    pub written: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn exit_code(&self, check: bool) -> i32 {
        match &self.report {
            Some(r) if check && !r.all_passed => EXIT_VALIDATION,
            _ => EXIT_OK,
        }
    }
}

fn compute_profiles(request: &RunRequest) -> Result<Vec<IntensityProfile>, CliError> {
    let go = || {
        request
            .behaviors
            .iter()
            .map(|&b| simulate(&request.config, b))
            .collect::<Result<Vec<_>, _>>()
    };
    let profiles = match request.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Invalid(format!("cannot start thread pool: {e}")))?
            .install(go),
        None => go(),
    };
    Ok(profiles?)
}

/// Runs every requested behavior and writes the requested artifacts.
pub fn execute(request: &RunRequest) -> Result<RunOutcome, CliError> {
    let profiles = compute_profiles(request)?;
    let mut written = Vec::new();

    for p in &profiles {
        if let Some(base) = &request.csv {
            let path = request.output_path(base, p.behavior);
            write(&path, &profile_to_csv(p))?;
            written.push(path);
        }
        if let Some(base) = &request.svg {
            let path = request.output_path(base, p.behavior);
            write(&path, &profile_to_svg(p))?;
            written.push(path);
        }
    }

    if let Some(dir) = &request.masks {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        for &b in &request.behaviors {
            let path = dir.join(format!("mask_{}.txt", b.name()));
            write(&path, &build_mask(b, request.mask_n)?.to_text())?;
            written.push(path);
        }
    }

    let report = if request.report.is_some() || request.check {
        Some(validate(
            &profiles,
            &request.config,
            request.peak_threshold,
        )?)
    } else {
        None
    };
    if let (Some(path), Some(r)) = (&request.report, &report) {
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let text = if is_json {
            r.to_json()
        } else {
            r.to_key_value()
        };
        write(path, &text)?;
        written.push(path.clone());
    }

    Ok(RunOutcome {
        profiles,
        report,
        written,
    })
}

/// Runs the request and maps the outcome to a process exit code.
pub fn run(request: &RunRequest) -> i32 {
    match execute(request) {
        Ok(outcome) => {
            if request.check {
                if let Some(r) = &outcome.report {
                    for c in &r.checks {
                        let measured = c
                            .measured
                            .map_or_else(|| "n/a".to_string(), |m| format!("{m:.6e}"));
                        println!(
                            "{} {:<26} measured={measured} expected={:.6e} tolerance={:.3e}",
                            if c.pass { "PASS" } else { "FAIL" },
                            c.name,
                            c.expected,
                            c.tolerance
                        );
                    }
                }
            }
            outcome.exit_code(request.check)
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_COMPUTATION
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunRequest, CliError> {
        parse_args(std::iter::once("doubleslit").chain(args.iter().copied()))
    }

    #[test]
    fn remembers_with_defaults() {
        let r = parse(&["--qubit", "remembers", "--csv", "out.csv"]).unwrap();
        assert_eq!(r.behaviors, vec![QubitBehavior::Remembers]);
        assert_eq!(r.config, ExperimentConfig::default());
        assert_eq!(r.peak_threshold, 0.01);
    }

    #[test]
    fn all_behaviors_at_reduced_n() {
        let r = parse(&["--n", "500", "--qubit", "all", "--report", "out.json"]).unwrap();
        assert_eq!(r.behaviors.len(), 3);
        assert_eq!(r.config.n_positions, 500);
    }

    #[test]
    fn odd_n_is_rejected() {
        let err = parse(&["--n", "3", "--check"]).unwrap_err();
        assert!(err.to_string().contains("even"), "{err}");
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(parse(&["--bogus"]), Err(CliError::Usage(_))));
        assert!(matches!(
            parse(&["--n", "ten", "--check"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            parse(&["--qubit", "sometimes", "--check"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(parse(&[]), Err(CliError::Invalid(_))));
        assert!(matches!(
            parse(&["--check", "--peak-threshold", "1.5"]),
            Err(CliError::Invalid(_))
        ));
        assert!(matches!(
            parse(&["--csv", "a", "--svg", "a"]),
            Err(CliError::Invalid(_))
        ));
        assert!(matches!(
            parse(&["--masks", "m", "--mask-n", "5"]),
            Err(CliError::Invalid(_))
        ));
    }

    #[test]
    fn geometry_flag() {
        let r = parse(&["--geometry", "paper", "--check"]).unwrap();
        assert_eq!(r.config.geometry_mode, GeometryMode::PaperLiteral);
    }
}
