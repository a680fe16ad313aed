//! CSV and SVG renderings of screen profiles.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use doubleslit_core::{IntensityProfile, QubitBehavior};

use crate::CliError;

pub const CSV_HEADER: &str = "x_m,probability_density";

/// Profile as CSV with 17 significant digits per value, LF line endings.
pub fn profile_to_csv(profile: &IntensityProfile) -> String {
    let mut out = String::with_capacity(48 * (profile.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (x, p) in profile.positions.iter().zip(&profile.density) {
        let _ = writeln!(out, "{x:.16e},{p:.16e}");
    }
    out
}

/// Reads `(positions, densities)` back from [`profile_to_csv`] output.
pub fn parse_profile_csv(text: &str) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(CSV_HEADER) => {}
        other => {
            return Err(CliError::Invalid(format!(
                "unexpected CSV header {other:?}"
            )))
        }
    }
    let mut xs = Vec::new();
    let mut ps = Vec::new();
    for (row, line) in lines.enumerate() {
        let bad = || CliError::Invalid(format!("malformed CSV row {}: `{line}`", row + 1));
        let (x, p) = line.split_once(',').ok_or_else(bad)?;
        xs.push(x.parse().map_err(|_| bad())?);
        ps.push(p.parse().map_err(|_| bad())?);
    }
    Ok((xs, ps))
}

/// `out.csv` becomes `out_remembers.csv`.
pub fn behavior_path(path: &Path, behavior: QubitBehavior) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{}.{}", behavior.name(), ext.to_string_lossy()),
        None => format!("{stem}_{}", behavior.name()),
    };
    path.with_file_name(name)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

fn ticks(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..=count).map(move |k| lo + (hi - lo) * k as f64 / count as f64)
}

/// Static SVG line plot of one profile: axes with ticks, a single polyline
/// for the density, and the qubit behavior as title.
pub fn profile_to_svg(profile: &IntensityProfile) -> String {
    let cfg = &profile.config;
    let (x_lo, x_hi) = (cfg.screen_min, cfg.screen_max);
    let peak = profile.density.iter().copied().fold(0.0, f64::max);
    let y_hi = if peak > 0.0 { peak * 1.05 } else { 1.0 };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + plot_h - y / y_hi * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="30" font-family="sans-serif" font-size="18" text-anchor="middle">qubit behavior: {}</text>"#,
        WIDTH / 2.0,
        profile.behavior
    );
    let (x0, y0, x1, y1) = (LEFT, TOP + plot_h, LEFT + plot_w, TOP);
    let _ = writeln!(
        svg,
        r#"<rect x="{x0}" y="{y1}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for x in ticks(x_lo, x_hi, 6) {
        let px = sx(x);
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{}" stroke="black"/>"#,
            y0 + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{px:.2}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{x:.3}</text>"#,
            y0 + 20.0
        );
    }
    for y in ticks(0.0, y_hi, 5) {
        let py = sy(y);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="black"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{y:.2}</text>"#,
            x0 - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">Detector screen position (m)</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{0}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 20 {0})">Probability density (1/m)</text>"#,
        (y0 + y1) / 2.0
    );
    let mut points = String::with_capacity(16 * profile.len());
    for (x, p) in profile.positions.iter().zip(&profile.density) {
        let _ = write!(points, "{:.2},{:.2} ", sx(*x), sy(*p));
    }
    let _ = writeln!(
        svg,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="1" points="{}"/>"#,
        points.trim_end()
    );
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use doubleslit_core::ExperimentConfig;

    fn tiny() -> IntensityProfile {
        IntensityProfile {
            behavior: QubitBehavior::Forgets,
            config: ExperimentConfig::default().with_n(4),
            delta_screen: 0.075,
            positions: vec![-0.1125, -0.0375, 0.0375, 0.1125],
            density: vec![0.1, 1.0 / 3.0, 2.5e-300, 0.0],
        }
    }

    #[test]
    fn csv_layout() {
        let csv = profile_to_csv(&tiny());
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(
            lines.next(),
            Some("-1.1250000000000000e-1,1.0000000000000001e-1")
        );
        assert!(!csv.contains('\r'));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn csv_reads_back_bitwise() {
        let p = tiny();
        let (xs, ps) = parse_profile_csv(&profile_to_csv(&p)).unwrap();
        assert_eq!(xs, p.positions);
        assert_eq!(ps, p.density);
        assert!(parse_profile_csv("x,y\n").is_err());
        assert!(parse_profile_csv("x_m,probability_density\n1.0;2.0\n").is_err());
    }

    #[test]
    fn behavior_suffix() {
        assert_eq!(
            behavior_path(Path::new("out/run.csv"), QubitBehavior::None),
            PathBuf::from("out/run_none.csv")
        );
        assert_eq!(
            behavior_path(Path::new("plot"), QubitBehavior::Forgets),
            PathBuf::from("plot_forgets")
        );
    }

    #[test]
    fn svg_has_title_and_single_polyline() {
        let svg = profile_to_svg(&tiny());
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("qubit behavior: forgets"));
    }
}
