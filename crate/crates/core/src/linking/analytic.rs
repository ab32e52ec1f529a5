//! The analytic linking number: the limit of ∮ φ_ε*(ω) over mollified
//! approximations of a Hölder circle map, with Cauchy defects as the
//! convergence certificate.

use crate::approx::{mollified_map, SampledMap};
use crate::error::{Error, Result};
use crate::forms::{exterior_d, DifferentialForm, SmoothMap};
use crate::linalg::Mat;
use crate::mesh::{integrate_pullback, richardson_limit, simplex_quadrature, SphereMesh};

/// Input map of an analytic-linking computation.
pub enum LinkingMapInput<'a> {
    /// A smooth map from ambient ℝ² (restricting to 𝕊¹): no mollification
    /// is needed and the integral is evaluated directly.
    Smooth(&'a SmoothMap),
    /// A circle map sampled on the periodic parameter grid.
    SampledCircle(&'a SampledMap),
}

#[derive(Clone, Debug)]
pub struct AnalyticLinking {
    /// Extrapolated limit of the mollified integrals.
    pub value: f64,
    /// Values ∮ φ_ε*(ω) per scale.
    pub sweep: Vec<(f64, f64)>,
    /// Successive differences |I(ε_{i+1}) - I(ε_i)|.
    pub cauchy_defects: Vec<f64>,
    /// Whether the defects decrease monotonically (convergence evidence).
    pub converged: bool,
}

/// Adapt a mollified circle-parameter map to ambient ℝ² for sphere-mesh
/// integration.
fn sampled_circle_to_ambient(base: &SampledMap, eps: f64) -> Result<SmoothMap> {
    if base.domain.dim() != 1 {
        return Err(Error::invalid("sampled circle maps must have a 1-d parameter grid"));
    }
    let m = mollified_map(base, eps)?;
    let m2 = m.clone();
    let out = base.out_dim;
    Ok(SmoothMap::from_fn_with_jacobian(
        2,
        out,
        move |x: &[f64]| m.eval(&[x[1].atan2(x[0])]),
        move |x: &[f64]| {
            let r2 = x[0] * x[0] + x[1] * x[1];
            let d = m2.jacobian(&[x[1].atan2(x[0])]);
            let mut j = Mat::zeros(out, 2);
            for r in 0..out {
                j.set(r, 0, d.get(r, 0) * (-x[1] / r2));
                j.set(r, 1, d.get(r, 0) * (x[0] / r2));
            }
            j
        },
    ))
}

/// Verify that dω vanishes near the image samples (the disjointness
/// precondition of the analytic linking number).
fn check_support_clearance(
    eta: &DifferentialForm,
    image_samples: &[Vec<f64>],
    clearance: f64,
) -> Result<()> {
    let mut worst = 0.0f64;
    for p in image_samples {
        for k in 0..=6 {
            let mut x = p.clone();
            if k > 0 {
                let axis = (k - 1) / 2;
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                x[axis] += sign * clearance;
            }
            for (_, f) in eta.terms() {
                worst = worst.max(f.eval(&x).abs());
            }
        }
    }
    if worst > 1e-8 {
        return Err(Error::degenerate(format!(
            "dω does not vanish near the embedded sphere (max {worst:.3e})"
        )));
    }
    Ok(())
}

/// Compute the analytic linking number of a circle map against a 1-form ω
/// whose differential avoids the image.
///
/// `eta` supplies dω when the caller has an analytically-built differential
/// (as the Mayer–Vietoris forms do); otherwise dω is recomputed from ω.
pub fn analytic_linking(
    input: LinkingMapInput<'_>,
    omega: &DifferentialForm,
    eta: Option<&DifferentialForm>,
    mesh: &SphereMesh,
    eps_list: &[f64],
) -> Result<AnalyticLinking> {
    if mesh.k != 1 {
        return Err(Error::invalid("analytic linking is implemented over circle meshes"));
    }
    if omega.degree() != 1 {
        return Err(Error::invalid("analytic linking pairs circles with 1-forms"));
    }
    if eps_list.len() < 3 {
        return Err(Error::invalid("need at least 3 mollification scales"));
    }
    if !eps_list.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0) {
        return Err(Error::invalid("mollification scales must be strictly decreasing"));
    }
    let rule = simplex_quadrature(1, 4)?;
    let eta = match eta {
        Some(e) => e.clone(),
        None => exterior_d(omega),
    };

    match input {
        LinkingMapInput::Smooth(f) => {
            let samples: Vec<Vec<f64>> = (0..256)
                .map(|i| {
                    let th = 2.0 * std::f64::consts::PI * i as f64 / 256.0;
                    f.eval(&[th.cos(), th.sin()])
                })
                .collect();
            check_support_clearance(&eta, &samples, 1e-3)?;
            let value = integrate_pullback(f, omega, mesh, &rule)?;
            Ok(AnalyticLinking {
                value,
                sweep: eps_list.iter().map(|&e| (e, value)).collect(),
                cauchy_defects: vec![0.0; eps_list.len() - 1],
                converged: true,
            })
        }
        LinkingMapInput::SampledCircle(base) => {
            check_support_clearance(&eta, &base.values, 1e-3)?;
            let mut sweep = Vec::with_capacity(eps_list.len());
            for &eps in eps_list {
                let f = sampled_circle_to_ambient(base, eps)?;
                let v = integrate_pullback(&f, omega, mesh, &rule)?;
                sweep.push((eps, v));
            }
            let defects: Vec<f64> =
                sweep.windows(2).map(|w| (w[1].1 - w[0].1).abs()).collect();
            let converged = defects.windows(2).all(|w| w[1] < w[0] + 1e-15);
            let value = match richardson_limit(&sweep) {
                Ok(fit) => fit.limit,
                Err(_) => sweep.last().expect("nonempty").1,
            };
            Ok(AnalyticLinking { value, sweep, cauchy_defects: defects, converged })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{sample_parametric, GridDomain};
    use crate::forms::{Polynomial, ScalarField};
    use crate::gallery;
    use crate::linking::gauss::presets;
    use crate::linking::gauss::gauss_linking;
    use crate::linking::mv::{mv_induction_build, SphereEmbedding};
    use std::sync::Arc;

    fn circle_mesh() -> SphereMesh {
        SphereMesh::unit_sphere(1, 8).unwrap()
    }

    fn mv_circle_form(tube: f64) -> crate::linking::mv::LinkingForm {
        let phi = SphereEmbedding::One {
            eval: Arc::new(|s: f64| vec![s.cos(), s.sin(), 0.0]),
            samples: 2048,
        };
        mv_induction_build(&phi, tube).unwrap()
    }

    #[test]
    fn smooth_map_needs_no_mollification() {
        let form = mv_circle_form(0.15);
        let f = gallery::circle_map_to_ambient(&gallery::unit_circle_r3()).unwrap();
        let direct = integrate_pullback(
            &f,
            &form.omega,
            &circle_mesh(),
            &simplex_quadrature(1, 4).unwrap(),
        )
        .unwrap();
        let res = analytic_linking(
            LinkingMapInput::Smooth(&f),
            &form.omega,
            Some(&form.eta),
            &circle_mesh(),
            &[0.2, 0.1, 0.05],
        )
        .unwrap();
        assert_eq!(res.value, direct);
        assert!(res.cauchy_defects.iter().all(|d| *d < 1e-8));
        assert!(res.converged);
    }

    #[test]
    fn sampled_circle_matches_gauss_oracle_after_normalization() {
        let form = mv_circle_form(0.15);
        let base = sample_parametric(&gallery::unit_circle_r3(), 16384).unwrap();
        let eps = [0.2, 0.1, 0.05, 0.025];
        let res = analytic_linking(
            LinkingMapInput::SampledCircle(&base),
            &form.omega,
            Some(&form.eta),
            &circle_mesh(),
            &eps,
        )
        .unwrap();
        assert!(res.converged, "defects {:?}", res.cauchy_defects);
        for w in res.cauchy_defects.windows(2) {
            assert!(w[1] < w[0], "defects must decrease: {:?}", res.cauchy_defects);
        }
        // the linking integral carries the dipole charge 2; dividing by it
        // gives the integer linking number of the circle with the dual axis,
        // which the Gauss oracle measures on the standard Hopf pair
        let normalized = res.value.abs() / form.base_charge;
        let (a, b) = presets::hopf_link(512);
        let oracle = gauss_linking(&a, &b).unwrap().abs();
        assert!(
            (normalized - oracle).abs() < 1e-2,
            "normalized {normalized} vs oracle {oracle}"
        );
    }

    #[test]
    fn far_supported_form_gives_zero() {
        // ω supported in a far-away ball: the curve never sees it
        let g = ScalarField::callable(3, |x: &[f64]| {
            let d2 = (x[0] - 9.0) * (x[0] - 9.0) + x[1] * x[1] + x[2] * x[2];
            crate::linking::mv::smooth_step_down(d2.sqrt() - 0.5)
        });
        let mut omega = DifferentialForm::zero(3, 1);
        omega.set_term(vec![0], g);
        let base = sample_parametric(&gallery::unit_circle_r3(), 4096).unwrap();
        let res = analytic_linking(
            LinkingMapInput::SampledCircle(&base),
            &omega,
            None,
            &circle_mesh(),
            &[0.2, 0.1, 0.05],
        )
        .unwrap();
        assert!(res.value.abs() < 1e-6, "value {}", res.value);
    }

    #[test]
    fn support_violation_is_rejected() {
        // ω = x dy has dω = dx∧dy everywhere, in particular on the circle
        let mut omega = DifferentialForm::zero(3, 1);
        omega.set_term(vec![1], ScalarField::poly(Polynomial::var(3, 0)));
        let base = sample_parametric(&gallery::unit_circle_r3(), 4096).unwrap();
        let res = analytic_linking(
            LinkingMapInput::SampledCircle(&base),
            &omega,
            None,
            &circle_mesh(),
            &[0.2, 0.1, 0.05],
        );
        assert!(res.is_err());
    }

    #[test]
    fn eps_list_validation() {
        let form = mv_circle_form(0.15);
        let base = sample_parametric(&gallery::unit_circle_r3(), 4096).unwrap();
        for bad in [&[0.2, 0.1][..], &[0.1, 0.2, 0.3][..]] {
            assert!(analytic_linking(
                LinkingMapInput::SampledCircle(&base),
                &form.omega,
                Some(&form.eta),
                &circle_mesh(),
                bad,
            )
            .is_err());
        }
        let _ = GridDomain::Torus { dim: 1, n: 16, period: 1.0 };
    }
}
