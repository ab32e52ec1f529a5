//! Boundary-integral obstruction test for Hölder maps into ℍ_n: mollify a
//! disk map, integrate a pulled-back 1-form over the boundary circle, and
//! watch the magnitudes decay as the mollification scale shrinks.

use crate::approx::{mollified_map, sample_parametric};
use crate::error::{Error, Result};
use crate::forms::DifferentialForm;
use crate::gallery::{Domain, ParametricMap};
use crate::linalg::line_fit;
use crate::mesh::{integrate_pullback, simplex_quadrature, BallMesh};

/// For each ε, |∮_{∂B} φ_ε*(κ)| for the mollified disk map.
pub fn horizontality_obstruction_test(
    map: &ParametricMap,
    kappa: &DifferentialForm,
    ball: &BallMesh,
    eps_list: &[f64],
    grid_n: usize,
) -> Result<Vec<(f64, f64)>> {
    if ball.dim != 2 {
        return Err(Error::invalid("obstruction test is implemented on disk meshes"));
    }
    if kappa.degree() != 1 {
        return Err(Error::invalid("boundary forms must have degree 1"));
    }
    if kappa.dim() != map.out_dim {
        return Err(Error::DimensionMismatch { expected: map.out_dim, got: kappa.dim() });
    }
    match map.domain {
        Domain::Cube { dim: 2, .. } | Domain::Ball { dim: 2, .. } => {}
        _ => return Err(Error::invalid("obstruction test needs a 2-parameter map")),
    }
    if eps_list.is_empty() || !eps_list.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0) {
        return Err(Error::invalid("mollification scales must be strictly decreasing"));
    }
    let base = sample_parametric(map, grid_n)?;
    let boundary = ball.boundary()?;
    let rule = simplex_quadrature(1, 4)?;
    let mut out = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let f = mollified_map(&base, eps)?;
        let v = integrate_pullback(&f, kappa, &boundary, &rule)?;
        out.push((eps, v.abs()));
    }
    Ok(out)
}

/// Log-log slope of an (ε, magnitude) table (entries below `floor` are
/// clamped to keep the fit finite).
pub fn decay_slope(rows: &[(f64, f64)], floor: f64) -> f64 {
    let xs: Vec<f64> = rows.iter().map(|(e, _)| e.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|(_, v)| v.max(floor).ln()).collect();
    line_fit(&xs, &ys).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{exterior_d, Polynomial, ScalarField};
    use crate::gallery;
    use crate::rng::seeded;
    use rand::Rng;

    fn random_poly_one_form(rng: &mut rand_chacha::ChaCha8Rng) -> DifferentialForm {
        let mut f = DifferentialForm::zero(3, 1);
        for i in 0..3 {
            let mut p = Polynomial::zero(3);
            for _ in 0..3 {
                let e: Vec<u32> = (0..3).map(|_| rng.random_range(0..=1)).collect();
                p = p.add(&Polynomial::monomial(3, e, rng.random_range(-2i32..=2) as f64));
            }
            f.set_term(vec![i], ScalarField::poly(p));
        }
        f
    }

    #[test]
    fn horizontal_disk_boundary_integrals_vanish() {
        let ball = BallMesh::unit_ball(2, 5).unwrap();
        let map = gallery::horizontal_disk();
        let mut rng = seeded(21);
        for _ in 0..3 {
            let kappa = random_poly_one_form(&mut rng);
            let rows = horizontality_obstruction_test(
                &map,
                &kappa,
                &ball,
                &[0.4, 0.25, 0.15],
                48,
            )
            .unwrap();
            for (eps, v) in rows {
                assert!(v < 1e-6, "eps {eps}: boundary integral {v}");
            }
        }
    }

    #[test]
    fn ruled_disk_boundary_integrals_decay_at_least_first_order() {
        let disk = gallery::polyline_ruled_disk();
        let ball = BallMesh::unit_ball(2, 6).unwrap();
        let mut rng = seeded(33);
        let kappa = random_poly_one_form(&mut rng);
        let eps: Vec<f64> = (0..4).map(|i| 0.32 / 2f64.powi(i)).collect();
        let rows = horizontality_obstruction_test(&disk, &kappa, &ball, &eps, 128).unwrap();
        let slope = decay_slope(&rows, 1e-14);
        assert!(slope > 0.8, "slope {slope}, rows {rows:?}");
        assert!(
            rows.last().unwrap().1 < 0.5 * rows.first().unwrap().1,
            "no decay: {rows:?}"
        );
    }

    #[test]
    fn exact_form_agrees_with_stokes_path() {
        // κ = dω with ω polynomial: the boundary integral of φ_ε*(κ) and
        // the Stokes residual of (φ_ε, ω) are the same number because
        // ∫_B φ_ε*(dκ) = 0.
        let disk = gallery::polyline_ruled_disk();
        let ball = BallMesh::unit_ball(2, 7).unwrap();
        let mut omega = DifferentialForm::zero(3, 0);
        omega.set_term(
            vec![],
            ScalarField::poly(Polynomial::var(3, 0).mul(&Polynomial::var(3, 2))),
        );
        let kappa = exterior_d(&omega);
        let rows =
            horizontality_obstruction_test(&disk, &kappa, &ball, &[0.4, 0.3, 0.2], 96).unwrap();
        // κ is exact, so the boundary integral of the closed loop must
        // vanish to quadrature accuracy at every scale
        for (eps, v) in rows {
            assert!(v < 1e-6, "eps {eps}: exact-form boundary integral {v}");
        }
    }

    #[test]
    fn input_validation() {
        let ball = BallMesh::unit_ball(2, 3).unwrap();
        let map = gallery::horizontal_disk();
        let two_form = DifferentialForm::basis(3, &[0, 1]);
        assert!(horizontality_obstruction_test(&map, &two_form, &ball, &[0.2, 0.1], 32).is_err());
        let kappa = DifferentialForm::dx(3, 0);
        assert!(
            horizontality_obstruction_test(&map, &kappa, &ball, &[0.1, 0.2], 32).is_err()
        );
        let curve_map = gallery::figure_eight_lift();
        assert!(
            horizontality_obstruction_test(&curve_map, &kappa, &ball, &[0.2, 0.1], 32).is_err()
        );
    }
}
