//! Empirical Hölder-exponent estimation by upper-envelope log-log
//! regression over sampled parameter pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heis::{koranyi_dist, HeisenbergPoint};
use crate::linalg::line_fit;
use crate::rng;

use super::grid::{GridDomain, SampledMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricTag {
    Koranyi,
    Euclidean,
}

/// Distance between two target values under the tagged metric. The Korányi
/// tag requires odd-length values (points of some ℍ_n).
pub fn target_distance(tag: MetricTag, a: &[f64], b: &[f64]) -> Result<f64> {
    match tag {
        MetricTag::Euclidean => {
            Ok(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt())
        }
        MetricTag::Koranyi => {
            if a.len() % 2 == 0 {
                return Err(Error::invalid(
                    "Korányi distance needs values in ℝ^{2n+1} (odd length)",
                ));
            }
            let n = (a.len() - 1) / 2;
            let p = HeisenbergPoint::new(n, a.to_vec())?;
            let q = HeisenbergPoint::new(n, b.to_vec())?;
            koranyi_dist(&p, &q)
        }
    }
}

/// Fitted Hölder data: `d(φ(x), φ(y)) ≲ constant · |x-y|^exponent`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HolderFit {
    pub exponent: f64,
    pub constant: f64,
    pub metric: MetricTag,
    /// RMS deviation of the per-bin upper envelope from the fitted line
    /// (log units).
    pub residual: f64,
}

const BINS: usize = 20;
const QUANTILE: f64 = 0.99;

/// Estimate the Hölder exponent of a sampled map under the tagged metric.
///
/// Pairs are drawn with log-uniform parameter separations from a seeded
/// stream; within each log-separation bin the 0.99 quantile of log-distance
/// forms the upper envelope, and a least-squares line through the envelope
/// gives (exponent, log constant).
pub fn holder_fit(
    map: &SampledMap,
    tag: MetricTag,
    pair_budget: usize,
    seed: u64,
) -> Result<HolderFit> {
    if pair_budget < 1000 {
        return Err(Error::invalid("pair budget must be at least 1000"));
    }
    let d = map.domain.dim();
    let n = map.domain.nodes_per_axis();
    let spacing = map.domain.spacing();
    // Cap separations at a quarter of the domain diameter: above that any
    // bounded map saturates the envelope and would drag the exponent down.
    let max_sep = match &map.domain {
        GridDomain::Torus { period, .. } => period / 2.0 * (d as f64).sqrt(),
        GridDomain::Cube { half_width, .. } => 2.0 * half_width * (d as f64).sqrt(),
    } / 4.0;
    let lo = (2.0 * spacing).ln();
    let hi = max_sep.ln();
    if hi <= lo {
        return Err(Error::invalid("grid too coarse for the separation range"));
    }
    let mut rng = rng::seeded(seed);
    use rand::Rng;

    // (log sep, log dist) samples per bin; the regression pairs the
    // quantile entry with its own separation, not the bin center.
    let mut bins: Vec<Vec<(f64, f64)>> = vec![Vec::new(); BINS];
    let mut degenerate = true;
    for _ in 0..pair_budget {
        let a: Vec<usize> = (0..d).map(|_| rng.random_range(0..n)).collect();
        // log-uniform separation, random direction
        let r = (rng.random_range(lo..hi)).exp();
        let dir = rng::sphere_point(&mut rng, d);
        let mut b_idx = Vec::with_capacity(d);
        let mut ok = true;
        for (ai, di) in a.iter().zip(&dir) {
            let step = (r * di / spacing).round() as i64;
            let raw = *ai as i64 + step;
            match &map.domain {
                GridDomain::Torus { n, .. } => {
                    let nn = *n as i64;
                    b_idx.push((((raw % nn) + nn) % nn) as usize);
                }
                GridDomain::Cube { n, .. } => {
                    if raw < 0 || raw >= *n as i64 {
                        ok = false;
                        break;
                    }
                    b_idx.push(raw as usize);
                }
            }
        }
        if !ok || b_idx == a {
            continue;
        }
        let sep = map.domain.param_distance(&a, &b_idx);
        if sep <= 0.0 || sep.ln() >= hi {
            continue;
        }
        let dist = target_distance(tag, map.value(&a), map.value(&b_idx))?;
        if dist > 1e-300 {
            degenerate = false;
        } else {
            continue;
        }
        let t = ((sep.ln() - lo) / (hi - lo) * BINS as f64).floor();
        let bi = (t.max(0.0) as usize).min(BINS - 1);
        bins[bi].push((sep.ln(), dist.ln()));
    }
    if degenerate {
        return Err(Error::degenerate("all sampled pairs map to the same value"));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for bin in bins.iter_mut() {
        if bin.len() < 8 {
            continue;
        }
        bin.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let qi = ((bin.len() - 1) as f64 * QUANTILE).round() as usize;
        xs.push(bin[qi].0);
        ys.push(bin[qi].1);
    }
    if xs.len() < 3 {
        return Err(Error::degenerate("too few populated separation bins"));
    }
    let (slope, intercept, residual) = line_fit(&xs, &ys);
    Ok(HolderFit { exponent: slope, constant: intercept.exp(), metric: tag, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::grid::{sample_fn, sample_parametric};
    use crate::gallery;

    #[test]
    fn identity_exponents_under_both_metrics() {
        let map = sample_parametric(&gallery::identity_into_h(1, 1.0), 48).unwrap();
        let k = holder_fit(&map, MetricTag::Koranyi, 20_000, 7).unwrap();
        assert!(
            (0.45..=0.55).contains(&k.exponent),
            "Korányi exponent {}",
            k.exponent
        );
        let e = holder_fit(&map, MetricTag::Euclidean, 20_000, 7).unwrap();
        assert!(
            (0.95..=1.05).contains(&e.exponent),
            "Euclidean exponent {}",
            e.exponent
        );
    }

    #[test]
    fn vertical_segment_exponent_is_exactly_half() {
        let map = sample_parametric(&gallery::vertical_segment(), 512).unwrap();
        let f = holder_fit(&map, MetricTag::Koranyi, 20_000, 3).unwrap();
        assert!((f.exponent - 0.5).abs() < 0.02, "exponent {}", f.exponent);
        assert!((f.constant - 1.0).abs() < 0.05, "constant {}", f.constant);
        assert!(f.residual < 0.01, "residual {}", f.residual);
    }

    #[test]
    fn constant_map_is_flagged_degenerate() {
        let d = super::super::grid::GridDomain::Cube { dim: 1, n: 64, half_width: 1.0 };
        let map = sample_fn(d, 3, |_| vec![1.0, 2.0, 3.0]).unwrap();
        assert!(holder_fit(&map, MetricTag::Euclidean, 2000, 1).is_err());
    }

    #[test]
    fn koranyi_tag_rejects_even_dimension_targets() {
        let d = super::super::grid::GridDomain::Cube { dim: 1, n: 64, half_width: 1.0 };
        let map = sample_fn(d, 2, |x| vec![x[0], x[0]]).unwrap();
        assert!(holder_fit(&map, MetricTag::Koranyi, 2000, 1).is_err());
    }

    #[test]
    fn scale_consistency_of_the_estimator() {
        // doubling the parameter scale leaves the exponent unchanged
        let map1 = sample_parametric(&gallery::identity_into_h(1, 1.0), 40).unwrap();
        let map2 = sample_parametric(&gallery::identity_into_h(1, 2.0), 40).unwrap();
        let f1 = holder_fit(&map1, MetricTag::Koranyi, 15_000, 11).unwrap();
        let f2 = holder_fit(&map2, MetricTag::Koranyi, 15_000, 11).unwrap();
        assert!((f1.exponent - f2.exponent).abs() < 0.04, "{} vs {}", f1.exponent, f2.exponent);
    }

    #[test]
    fn weierstrass_exponents() {
        let map = sample_parametric(&gallery::weierstrass_curve(), 4096).unwrap();
        let e = holder_fit(&map, MetricTag::Euclidean, 30_000, 5).unwrap();
        assert!((e.exponent - 0.5).abs() < 0.07, "Euclidean exponent {}", e.exponent);
        let k = holder_fit(&map, MetricTag::Koranyi, 30_000, 5).unwrap();
        assert!((k.exponent - 0.25).abs() < 0.07, "Korányi exponent {}", k.exponent);
    }
}
