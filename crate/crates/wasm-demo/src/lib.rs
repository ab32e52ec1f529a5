//! Browser bindings for three interactive views: Hopf fibers with their
//! linking number, the horizontal figure-eight lift under mollification,
//! and the no-embedding parameter region. Each entry point returns a JSON
//! string; rendering happens in plain JS on the page.

use serde_json::json;
use wasm_bindgen::prelude::*;

use heislab_core::approx::{
    contact_defect_rates, gromov_margin, mollified_map, sample_parametric,
};
use heislab_core::forms::contact_form;
use heislab_core::gallery;
use heislab_core::hopf::{hopf_via_fibers, sample_sphere_map};
use heislab_core::mesh::SphereMesh;

fn unit3(theta: f64, phi: f64) -> Vec<f64> {
    vec![phi.sin() * theta.cos(), phi.sin() * theta.sin(), phi.cos()]
}

fn err_json(e: impl std::fmt::Display) -> String {
    json!({ "error": e.to_string() }).to_string()
}

/// Fibers of the Hopf map over two regular values given in spherical
/// coordinates, stereographically projected to ℝ³, plus their linking
/// number. `level` is the 𝕊³ mesh refinement (3 or 4 are sensible).
#[wasm_bindgen]
pub fn hopf_fibers_json(
    level: usize,
    p_theta: f64,
    p_phi: f64,
    q_theta: f64,
    q_phi: f64,
) -> String {
    let mesh = match SphereMesh::unit_sphere(3, level.min(4)) {
        Ok(m) => m,
        Err(e) => return err_json(e),
    };
    let h = gallery::hopf_smooth_map();
    let sample = match sample_sphere_map(&mesh, |x| {
        let mut y = h.eval(x);
        let n: f64 = y.iter().map(|c| c * c).sum::<f64>().sqrt();
        for c in &mut y {
            *c /= n;
        }
        y
    }) {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    let p = unit3(p_theta, p_phi);
    let q = unit3(q_theta, q_phi);
    let report = match hopf_via_fibers(&sample, &p, &q) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    // re-extract the projected curves for drawing (same pole as the
    // linking computation, projected through the library path)
    let fibers = |target: &[f64]| -> Result<Vec<Vec<Vec<f64>>>, String> {
        let curves = heislab_core::hopf::extract_fiber_robust(&sample, target, 20)
            .map_err(|e| e.to_string())?;
        Ok(curves
            .iter()
            .map(|c| {
                c.points
                    .iter()
                    .map(|x| {
                        // stereographic from the report pole
                        let pole = report.pole;
                        let xp: f64 = x.iter().zip(pole.iter()).map(|(a, b)| a * b).sum();
                        let scale = 1.0 / (1.0 - xp);
                        vec![x[0] * scale, x[1] * scale, x[2] * scale]
                    })
                    .collect()
            })
            .collect())
    };
    let fp = match fibers(&p) {
        Ok(f) => f,
        Err(e) => return err_json(e),
    };
    let fq = match fibers(&q) {
        Ok(f) => f,
        Err(e) => return err_json(e),
    };
    json!({
        "linking": report.value,
        "fibers_p": fp,
        "fibers_q": fq,
        "mesh_level": level.min(4),
    })
    .to_string()
}

/// The horizontal figure-eight polyline, its mollification at scale `eps`,
/// and the pointwise contact defect |φ_ε*α| along the parameter — the
/// curve-level view of the first-order defect rate.
#[wasm_bindgen]
pub fn figure_eight_json(samples: usize, eps: f64, grid: usize) -> String {
    let samples = samples.clamp(64, 4096);
    let grid = grid.clamp(1024, 32768);
    let map = gallery::figure_eight_polyline();
    let curve: Vec<Vec<f64>> = (0..=samples)
        .map(|i| map.eval(&[2.0 * std::f64::consts::PI * i as f64 / samples as f64]))
        .collect();
    let base = match sample_parametric(&map, grid) {
        Ok(b) => b,
        Err(e) => return err_json(e),
    };
    let smooth = match mollified_map(&base, eps) {
        Ok(m) => m,
        Err(e) => return err_json(e),
    };
    let mut mollified = Vec::with_capacity(samples + 1);
    let mut defect = Vec::with_capacity(samples + 1);
    let mut sup: f64 = 0.0;
    for i in 0..=samples {
        let s = 2.0 * std::f64::consts::PI * i as f64 / samples as f64;
        let y = smooth.eval(&[s]);
        let j = smooth.jacobian(&[s]);
        // α_y(∂φ) = ∂t + 2(y1 ∂x - y0 ∂y)
        let a = j.get(2, 0) + 2.0 * (y[1] * j.get(0, 0) - y[0] * j.get(1, 0));
        sup = sup.max(a.abs());
        defect.push(vec![s, a.abs()]);
        mollified.push(y);
    }
    // defect-vs-eps table for the slope readout
    let alpha = contact_form(1);
    let eps_list: Vec<f64> = (0..4).map(|i| eps / 2f64.powi(i)).collect();
    let slope = contact_defect_rates(&base, &eps_list, &[("alpha".into(), alpha)], 4096)
        .map(|t| t[0].slope)
        .unwrap_or(f64::NAN);
    json!({
        "curve": curve,
        "mollified": mollified,
        "defect": defect,
        "sup_defect": sup,
        "alpha_slope": slope,
    })
    .to_string()
}

/// The region 2γ + θ(k-1) - k > 0 on a resolution×resolution grid of
/// (γ, θ) ∈ (1/2, 1] × (0, 1].
#[wasm_bindgen]
pub fn gromov_grid_json(k: usize, resolution: usize) -> String {
    let k = k.clamp(1, 6);
    let n = resolution.clamp(8, 256);
    let gammas: Vec<f64> = (0..n).map(|i| 0.5 + 0.5 * (i as f64 + 0.5) / n as f64).collect();
    let thetas: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    let margins: Vec<Vec<f64>> = thetas
        .iter()
        .map(|&th| gammas.iter().map(|&g| gromov_margin(k, g, th)).collect())
        .collect();
    json!({
        "k": k,
        "gammas": gammas,
        "thetas": thetas,
        "margins": margins,
    })
    .to_string()
}
