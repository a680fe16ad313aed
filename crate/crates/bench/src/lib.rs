//! Shared fixtures for the criterion benchmarks.

use doubleslit_core::{build_grids, derive, DerivedQuantities, ExperimentConfig, Grids};

/// Default experiment at `n` positions with its derived quantities and grids.
pub fn fixture(n: usize) -> (ExperimentConfig, DerivedQuantities, Grids) {
    let config = ExperimentConfig::default().with_n(n);
    let derived = derive(&config).expect("valid config");
    let grids = build_grids(&config, &derived).expect("valid grids");
    (config, derived, grids)
}
