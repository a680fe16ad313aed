//! Flat `key = value` configuration files.
//!
//! Recognised keys: `lambda`, `a`, `d`, `L`, `N`, `Zmin`, `Zmax`. Blank lines
//! and lines starting with `#` are ignored.

use doubleslit_core::ExperimentConfig;

use crate::CliError;

pub fn apply_config_text(text: &str, config: &mut ExperimentConfig) -> Result<(), CliError> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let invalid = |msg: String| CliError::Invalid(format!("config line {}: {msg}", lineno + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| invalid(format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let real = || {
            value
                .parse::<f64>()
                .map_err(|_| invalid(format!("`{value}` is not a number")))
        };
        match key {
            "lambda" => config.wavelength = real()?,
            "a" => config.slit_width = real()?,
            "d" => config.slit_separation = real()?,
            "L" => config.wall_to_screen = real()?,
            "Zmin" => config.screen_min = real()?,
            "Zmax" => config.screen_max = real()?,
            "N" => {
                config.n_positions = value
                    .parse::<usize>()
                    .map_err(|_| invalid(format!("`{value}` is not a positive integer")))?
            }
            other => return Err(invalid(format!("unknown key `{other}`"))),
        }
    }
    Ok(())
}
