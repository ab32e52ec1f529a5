//! Mollification of sampled maps, contact-defect decay rates, Hölder
//! exponent estimation, and the no-embedding region predicate.

mod grid;
mod holder;
mod mollify;
mod rates;

pub use grid::{sample_fn, sample_parametric, GridDomain, SampledMap};
pub use holder::{holder_fit, target_distance, HolderFit, MetricTag};
pub use mollify::{bump, bump_deriv, mollified_map, mollify, MollifiedFamily};
pub use rates::{contact_defect_rates, RateTable};

use crate::error::{Error, Result};

/// The no-embedding region `2γ + θ(k-1) - k > 0`: inside it there is no
/// injective map of a k-dimensional domain that is C^γ for the Korányi
/// metric and C^θ for the Euclidean one.
pub fn gromov_region(k: usize, gamma: f64, theta: f64) -> Result<bool> {
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if !(gamma > 0.5 && gamma <= 1.0) {
        return Err(Error::invalid(format!("gamma must lie in (1/2, 1], got {gamma}")));
    }
    if !(theta > 0.0) {
        return Err(Error::invalid(format!("theta must be positive, got {theta}")));
    }
    Ok(gromov_margin(k, gamma, theta) > 0.0)
}

/// The margin `2γ + θ(k-1) - k` itself.
pub fn gromov_margin(k: usize, gamma: f64, theta: f64) -> f64 {
    2.0 * gamma + theta * (k as f64 - 1.0) - k as f64
}
