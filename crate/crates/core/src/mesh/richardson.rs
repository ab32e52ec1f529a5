//! Power-law extrapolation of refinement sequences.

use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::linalg::Mat;

#[derive(Clone, Copy, Debug)]
pub struct RichardsonFit {
    pub limit: f64,
    /// Fitted convergence order; `None` when the sequence is constant.
    pub order: Option<f64>,
    pub residual: f64,
}

/// Least-squares fit `value(h) ≈ limit + C·h^order` on a strictly
/// decreasing sequence of mesh sizes (at least three entries).
pub fn richardson_limit(values: &[(f64, f64)]) -> Result<RichardsonFit> {
    if values.len() < 3 {
        return Err(Error::invalid("need at least 3 (h, value) entries"));
    }
    if !values.windows(2).all(|w| w[0].0 > w[1].0 && w[1].0 > 0.0) {
        return Err(Error::invalid("h must be strictly decreasing and positive"));
    }
    let vmax = values.iter().map(|(_, v)| v.abs()).fold(0.0, f64::max);
    let spread = values
        .iter()
        .map(|(_, v)| v)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if spread.1 - spread.0 <= 1e-15 * vmax.max(1e-300) {
        return Ok(RichardsonFit { limit: values[0].1, order: None, residual: 0.0 });
    }

    // For fixed order q the model is linear in (limit, C); scan + refine q.
    let rss_for = |q: f64| -> (f64, f64, f64) {
        let n = values.len() as f64;
        let mut shq = 0.0;
        let mut shq2 = 0.0;
        let mut sv = 0.0;
        let mut svhq = 0.0;
        for &(h, v) in values {
            let hq = h.powf(q);
            shq += hq;
            shq2 += hq * hq;
            sv += v;
            svhq += v * hq;
        }
        let a = Mat::from_rows(&[vec![n, shq], vec![shq, shq2]]);
        match solve(&a, &[sv, svhq]) {
            Some(x) => {
                let (l, c) = (x[0], x[1]);
                let rss: f64 = values
                    .iter()
                    .map(|&(h, v)| {
                        let e = v - (l + c * h.powf(q));
                        e * e
                    })
                    .sum();
                (rss, l, c)
            }
            None => (f64::INFINITY, 0.0, 0.0),
        }
    };

    let mut best_q = 1.0;
    let mut best = f64::INFINITY;
    let mut q = 0.05;
    while q <= 8.0 {
        let (rss, _, _) = rss_for(q);
        if rss < best {
            best = rss;
            best_q = q;
        }
        q += 0.05;
    }
    // golden-section refinement around the best grid point
    let (mut lo, mut hi) = ((best_q - 0.06).max(0.01), best_q + 0.06);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let a = hi - phi * (hi - lo);
        let b = lo + phi * (hi - lo);
        if rss_for(a).0 < rss_for(b).0 {
            hi = b;
        } else {
            lo = a;
        }
    }
    let qstar = 0.5 * (lo + hi);
    let (rss, limit, _c) = rss_for(qstar);
    Ok(RichardsonFit {
        limit,
        order: Some(qstar),
        residual: (rss / values.len() as f64).sqrt(),
    })
}
