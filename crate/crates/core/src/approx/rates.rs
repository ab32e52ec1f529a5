//! Measured decay rates of pulled-back forms under mollification.
//!
//! For a base map sampled on a grid and a list of forms, this computes
//! `sup_x ‖φ_ε*(form)‖_∞` over (a subsample of) the grid for each scale ε
//! and fits the log-log slope. For the contact form α and a C^γ horizontal
//! base the slope tracks 2γ-1; for a generic k-form it tracks k(γ-1) with
//! γ the Euclidean Hölder exponent.

use crate::error::{Error, Result};
use crate::forms::DifferentialForm;
use crate::linalg::{det, line_fit, Mat};

use super::grid::SampledMap;
use super::mollify::mollified_map;

#[derive(Clone, Debug)]
pub struct RateTable {
    pub form_id: String,
    /// (ε, sup over grid of the max pulled-back coefficient magnitude)
    pub rows: Vec<(f64, f64)>,
    /// log-log slope of the rows.
    pub slope: f64,
}

fn ascending_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::forms::tuples(n, k)
}

/// Max |coefficient| of the pullback of `form` through the map with the
/// given value and Jacobian.
fn pullback_sup_at(form: &DifferentialForm, y: &[f64], jac: &Mat, domain_dim: usize) -> f64 {
    let k = form.degree();
    let mut worst = 0.0f64;
    for cols in ascending_tuples(domain_dim, k) {
        let mut coeff = 0.0;
        for (rows, field) in form.terms() {
            let c = field.eval(y);
            if c == 0.0 {
                continue;
            }
            let minor = if k == 0 {
                1.0
            } else {
                let mut m = Mat::zeros(k, k);
                for (ri, &r) in rows.iter().enumerate() {
                    for (ci, &cc) in cols.iter().enumerate() {
                        m.set(ri, ci, jac.get(r, cc));
                    }
                }
                det(&m)
            };
            coeff += c * minor;
        }
        worst = worst.max(coeff.abs());
    }
    worst
}

/// Defect tables for each form over the mollification scales.
///
/// `node_budget` caps how many grid nodes enter the sup (a uniform stride
/// subsample; the full grid when it fits the budget).
pub fn contact_defect_rates(
    base: &SampledMap,
    eps_list: &[f64],
    forms: &[(String, DifferentialForm)],
    node_budget: usize,
) -> Result<Vec<RateTable>> {
    if eps_list.is_empty() {
        return Err(Error::invalid("empty mollification scale list"));
    }
    if !eps_list.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0) {
        return Err(Error::invalid("scales must be strictly decreasing"));
    }
    for (_, f) in forms {
        if f.dim() != base.out_dim {
            return Err(Error::DimensionMismatch { expected: base.out_dim, got: f.dim() });
        }
    }
    let d = base.domain.dim();
    let count = base.domain.node_count();
    let stride = (count / node_budget.max(1)).max(1);
    let mut sups = vec![Vec::new(); forms.len()];
    for &eps in eps_list {
        let f = mollified_map(base, eps)?;
        let mut worst = vec![0.0f64; forms.len()];
        let mut flat = 0;
        while flat < count {
            let multi = base.multi_index(flat);
            let pos = base.node_position(&multi);
            let y = f.eval(&pos);
            let jac = f.jacobian(&pos);
            for (fi, (_, form)) in forms.iter().enumerate() {
                worst[fi] = worst[fi].max(pullback_sup_at(form, &y, &jac, d));
            }
            flat += stride;
        }
        for (fi, w) in worst.into_iter().enumerate() {
            sups[fi].push((eps, w));
        }
    }
    Ok(forms
        .iter()
        .zip(sups)
        .map(|((id, _), rows)| {
            let xs: Vec<f64> = rows.iter().map(|(e, _)| e.ln()).collect();
            let ys: Vec<f64> = rows.iter().map(|(_, s)| s.max(1e-300).ln()).collect();
            let (slope, _, _) = line_fit(&xs, &ys);
            RateTable { form_id: id.clone(), rows, slope }
        })
        .collect())
}
