//! Mollification of sampled maps by the compactly supported bump kernel
//! `exp(-1/(1-r²))` on r < 1, rescaled to radius ε and normalized
//! discretely to unit mass at every evaluation point.

use crate::error::{Error, Result};
use crate::forms::SmoothMap;
use crate::linalg::Mat;

use super::grid::{GridDomain, SampledMap};

#[inline]
pub fn bump(r: f64) -> f64 {
    if r.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - r * r)).exp()
    }
}

/// d bump / d r.
#[inline]
pub fn bump_deriv(r: f64) -> f64 {
    if r.abs() >= 1.0 {
        0.0
    } else {
        let d = 1.0 - r * r;
        bump(r) * (-2.0 * r / (d * d))
    }
}

fn window_radius(domain: &GridDomain, eps: f64) -> i64 {
    (eps / domain.spacing()).ceil() as i64 + 1
}

/// Validate the mollification scale against the grid.
fn check_eps(base: &SampledMap, eps: f64) -> Result<()> {
    let h = base.domain.spacing();
    if !(eps > 0.0) || eps < 2.0 * h {
        return Err(Error::invalid(format!(
            "mollification scale {eps} must be at least twice the grid spacing {h}"
        )));
    }
    Ok(())
}

/// Walk the kernel window around grid node `center`, yielding
/// (folded flat index, kernel weight).
fn window_sum(
    base: &SampledMap,
    center_pos: &[f64],
    center_idx: &[i64],
    eps: f64,
    mut visit: impl FnMut(usize, f64, &[f64]),
) {
    let d = base.domain.dim();
    let m = window_radius(&base.domain, eps);
    let mut offset = vec![-m; d];
    loop {
        // virtual index and its real-space position
        let mut dist2 = 0.0;
        let mut folded = Vec::with_capacity(d);
        let mut diff = vec![0.0; d];
        for a in 0..d {
            let iv = center_idx[a] + offset[a];
            let pos = base.domain.axis_coord(iv);
            let dx = center_pos[a] - pos;
            diff[a] = dx;
            dist2 += dx * dx;
            folded.push(base.domain.fold_index(iv));
        }
        let r = dist2.sqrt() / eps;
        if r < 1.0 {
            let w = bump(r);
            let flat = base.flat_index(&folded);
            visit(flat, w, &diff);
        }
        // advance offset
        let mut a = 0;
        loop {
            offset[a] += 1;
            if offset[a] <= m {
                break;
            }
            offset[a] = -m;
            a += 1;
            if a == d {
                return;
            }
        }
    }
}

/// Discrete mollification evaluated at the grid nodes.
///
/// The weighted average is accumulated relative to the center value, so a
/// constant map passes through bit-exactly.
pub fn mollify(base: &SampledMap, eps: f64) -> Result<SampledMap> {
    check_eps(base, eps)?;
    let count = base.domain.node_count();
    let mut values = Vec::with_capacity(count);
    for flat in 0..count {
        let multi = base.multi_index(flat);
        let center_idx: Vec<i64> = multi.iter().map(|&i| i as i64).collect();
        let center_pos = base.node_position(&multi);
        let center_val = base.values[flat].clone();
        let mut wsum = 0.0;
        let mut acc = vec![0.0; base.out_dim];
        window_sum(base, &center_pos, &center_idx, eps, |g, w, _| {
            wsum += w;
            for ((a, v), c) in acc.iter_mut().zip(&base.values[g]).zip(&center_val) {
                *a += w * (v - c);
            }
        });
        values.push(
            acc.into_iter()
                .zip(&center_val)
                .map(|(v, c)| c + v / wsum)
                .collect(),
        );
    }
    Ok(SampledMap { domain: base.domain.clone(), out_dim: base.out_dim, values })
}

/// The mollified map as a smooth map on the continuous domain, with the
/// exact kernel-sum gradient.
pub fn mollified_map(base: &SampledMap, eps: f64) -> Result<SmoothMap> {
    check_eps(base, eps)?;
    let base_eval = base.clone();
    let base_jac = base.clone();
    let d = base.domain.dim();
    let out = base.out_dim;
    Ok(SmoothMap::from_fn_with_jacobian(
        d,
        out,
        move |x: &[f64]| {
            let (wsum, acc, _, _, center) = kernel_sums(&base_eval, x, eps);
            acc.into_iter().zip(center).map(|(v, c)| c + v / wsum).collect()
        },
        move |x: &[f64]| {
            let (wsum, acc, dw, dacc, _) = kernel_sums(&base_jac, x, eps);
            // d/dx of Σ w (v - c) / Σ w; the shift drops out of the gradient
            let mut j = Mat::zeros(out, d);
            for c in 0..d {
                for r in 0..out {
                    let v = (dacc[c][r] * wsum - acc[r] * dw[c]) / (wsum * wsum);
                    j.set(r, c, v);
                }
            }
            j
        },
    ))
}

type Sums = (f64, Vec<f64>, Vec<f64>, Vec<Vec<f64>>, Vec<f64>);

/// Σw, Σw·(v - c), the gradients Σ∂w, Σ∂w·(v - c), and the center value c
/// (value at the nearest grid node) at an arbitrary point.
fn kernel_sums(base: &SampledMap, x: &[f64], eps: f64) -> Sums {
    let d = base.domain.dim();
    let h = base.domain.spacing();
    let center_idx: Vec<i64> = match &base.domain {
        GridDomain::Torus { .. } => x.iter().map(|&xi| (xi / h).round() as i64).collect(),
        GridDomain::Cube { half_width, .. } => {
            x.iter().map(|&xi| ((xi + half_width) / h).round() as i64).collect()
        }
    };
    let center_multi: Vec<usize> = center_idx.iter().map(|&i| base.domain.fold_index(i)).collect();
    let center_val = base.values[base.flat_index(&center_multi)].clone();
    let mut wsum = 0.0;
    let mut acc = vec![0.0; base.out_dim];
    let mut dw = vec![0.0; d];
    let mut dacc = vec![vec![0.0; base.out_dim]; d];
    window_sum(base, x, &center_idx, eps, |g, w, diff| {
        let v = &base.values[g];
        wsum += w;
        for ((a, vi), c) in acc.iter_mut().zip(v).zip(&center_val) {
            *a += w * (vi - c);
        }
        let r2: f64 = diff.iter().map(|t| t * t).sum();
        let r = r2.sqrt();
        if r > 1e-14 {
            let dk = bump_deriv(r / eps) / eps;
            for c in 0..d {
                let g_c = dk * diff[c] / r;
                dw[c] += g_c;
                for ((t, vi), cv) in dacc[c].iter_mut().zip(v).zip(&center_val) {
                    *t += g_c * (vi - cv);
                }
            }
        }
    });
    (wsum, acc, dw, dacc, center_val)
}

/// A family of mollifications of one base map at decreasing scales.
#[derive(Clone, Debug)]
pub struct MollifiedFamily {
    pub base: SampledMap,
    pub eps_list: Vec<f64>,
    pub smoothed: Vec<SampledMap>,
}

impl MollifiedFamily {
    pub fn build(base: SampledMap, eps_list: &[f64]) -> Result<MollifiedFamily> {
        if eps_list.is_empty() {
            return Err(Error::invalid("empty mollification scale list"));
        }
        if !eps_list.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0) {
            return Err(Error::invalid("mollification scales must be strictly decreasing"));
        }
        let smoothed: Result<Vec<SampledMap>> =
            eps_list.iter().map(|&e| mollify(&base, e)).collect();
        Ok(MollifiedFamily { base, eps_list: eps_list.to_vec(), smoothed: smoothed? })
    }

    /// Sup distances ‖φ_ε − φ‖∞ per scale.
    pub fn sup_distances(&self) -> Vec<f64> {
        self.smoothed
            .iter()
            .map(|s| s.sup_distance(&self.base).expect("same grid"))
            .collect()
    }
}
