//! The Hopf invariant two ways: linking of regular fibers after
//! stereographic projection, and the integral ∫ ω ∧ φ*(η) against a
//! verified primitive.

use crate::error::{Error, Result};
use crate::forms::{
    exterior_d, pullback, wedge, DifferentialForm, Polynomial, ScalarField, SmoothMap,
};
use crate::linking::{gauss_linking, PlCurve};
use crate::mesh::{integrate_pullback, simplex_quadrature, SphereMesh};
use crate::rng;

use super::fiber::{extract_fiber_robust, SphereMapSample};

/// Result of a fiber-linking Hopf computation.
#[derive(Clone, Debug)]
pub struct HopfFibers {
    pub value: f64,
    pub pole: [f64; 4],
    pub fiber_components: (usize, usize),
}

fn orthonormal_frame(pole: &[f64; 4]) -> [[f64; 4]; 3] {
    // Gram-Schmidt the standard basis against the pole, then pin the
    // handedness: (pole, u1, u2, u3) is a negative frame of ℝ⁴, which
    // makes the projected linking of the standard Hopf fibers equal +1
    // (matching the ∫ ω ∧ φ*η convention).
    let mut frame: Vec<[f64; 4]> = Vec::new();
    let mut basis = vec![*pole];
    for i in 0..4 {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        for b in &basis {
            let d: f64 = v.iter().zip(b.iter()).map(|(x, y)| x * y).sum();
            for (vc, bc) in v.iter_mut().zip(b.iter()) {
                *vc -= d * bc;
            }
        }
        let n: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-6 {
            for c in &mut v {
                *c /= n;
            }
            basis.push(v);
            frame.push(v);
            if frame.len() == 3 {
                break;
            }
        }
    }
    let m = crate::linalg::Mat::from_rows(&[
        pole.to_vec(),
        frame[0].to_vec(),
        frame[1].to_vec(),
        frame[2].to_vec(),
    ]);
    if crate::linalg::det(&m) > 0.0 {
        for c in &mut frame[2] {
            *c = -*c;
        }
    }
    [frame[0], frame[1], frame[2]]
}

/// Stereographic projection of a curve on 𝕊³ from `pole` into ℝ³.
fn stereograph(curve: &PlCurve, pole: &[f64; 4]) -> Result<PlCurve> {
    let frame = orthonormal_frame(pole);
    let points: Vec<Vec<f64>> = curve
        .points
        .iter()
        .map(|x| {
            let xp: f64 = x.iter().zip(pole.iter()).map(|(a, b)| a * b).sum();
            frame
                .iter()
                .map(|u| {
                    let xu: f64 = x.iter().zip(u.iter()).map(|(a, b)| a * b).sum();
                    xu / (1.0 - xp)
                })
                .collect()
        })
        .collect();
    PlCurve::new(3, points, curve.closed)
}

fn min_pole_distance(curves: &[&PlCurve], pole: &[f64; 4]) -> f64 {
    let mut best = f64::INFINITY;
    for c in curves {
        for p in &c.points {
            let d: f64 = p.iter().zip(pole.iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
            best = best.min(d.sqrt());
        }
    }
    best
}

/// Linking number of two fiber families after projecting from `pole`.
pub fn hopf_via_fibers_with_pole(
    map: &SphereMapSample,
    p: &[f64],
    q: &[f64],
    pole: &[f64; 4],
) -> Result<HopfFibers> {
    let fp = extract_fiber_robust(map, p, 20)?;
    let fq = extract_fiber_robust(map, q, 20)?;
    if fp.is_empty() || fq.is_empty() {
        return Ok(HopfFibers {
            value: 0.0,
            pole: *pole,
            fiber_components: (fp.len(), fq.len()),
        });
    }
    for a in &fp {
        for b in &fq {
            if a.min_distance(b)? < 1e-3 {
                return Err(Error::degenerate("fibers intersect; choose other values"));
            }
        }
    }
    let all: Vec<&PlCurve> = fp.iter().chain(fq.iter()).collect();
    if min_pole_distance(&all, pole) < 0.1 {
        return Err(Error::PerturbAndRetry("projection pole too close to a fiber".into()));
    }
    let mut value = 0.0;
    for a in &fp {
        let pa = stereograph(a, pole)?;
        for b in &fq {
            let pb = stereograph(b, pole)?;
            value += gauss_linking(&pa, &pb)?;
        }
    }
    Ok(HopfFibers { value, pole: *pole, fiber_components: (fp.len(), fq.len()) })
}

/// As [`hopf_via_fibers_with_pole`] with an automatically selected pole
/// (first seeded candidate clearing the fibers by 0.15).
pub fn hopf_via_fibers(map: &SphereMapSample, p: &[f64], q: &[f64]) -> Result<HopfFibers> {
    let fp = extract_fiber_robust(map, p, 20)?;
    let fq = extract_fiber_robust(map, q, 20)?;
    if fp.is_empty() || fq.is_empty() {
        return Ok(HopfFibers {
            value: 0.0,
            pole: [1.0, 0.0, 0.0, 0.0],
            fiber_components: (fp.len(), fq.len()),
        });
    }
    let all: Vec<&PlCurve> = fp.iter().chain(fq.iter()).collect();
    let mut rng = rng::seeded(42);
    for _ in 0..200 {
        let cand = rng::sphere_point(&mut rng, 4);
        let pole = [cand[0], cand[1], cand[2], cand[3]];
        if min_pole_distance(&all, &pole) > 0.15 {
            return hopf_via_fibers_with_pole(map, p, q, &pole);
        }
    }
    Err(Error::degenerate("no projection pole clears the fibers"))
}

/// The area form of 𝕊² with unit total integral, extended to ℝ³ ∖ {0}:
/// `(x dy∧dz - y dx∧dz + z dx∧dy) / (4π |x|³)`.
pub fn unit_area_form_s2() -> DifferentialForm {
    let coeff = |i: usize, sign: f64| {
        ScalarField::callable(3, move |x: &[f64]| {
            let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            let r3 = r2 * r2.sqrt();
            sign * x[i] / (4.0 * std::f64::consts::PI * r3)
        })
    };
    let mut eta = DifferentialForm::zero(3, 2);
    eta.set_term(vec![1, 2], coeff(0, 1.0));
    eta.set_term(vec![0, 2], coeff(1, -1.0));
    eta.set_term(vec![0, 1], coeff(2, 1.0));
    eta
}

/// The standard contact 1-form of ℝ⁴, `x₁dx₂ - x₂dx₁ + x₃dx₄ - x₄dx₃`.
pub fn standard_round_one_form() -> DifferentialForm {
    let v = |i: usize| Polynomial::var(4, i);
    let mut sigma = DifferentialForm::zero(4, 1);
    sigma.set_term(vec![1], ScalarField::poly(v(0)));
    sigma.set_term(vec![0], ScalarField::poly(v(1).neg()));
    sigma.set_term(vec![3], ScalarField::poly(v(2)));
    sigma.set_term(vec![2], ScalarField::poly(v(3).neg()));
    sigma
}

/// Random tangent pair at a point of 𝕊³.
fn tangent_pair(rng: &mut rand_chacha::ChaCha8Rng, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut pick = |avoid: &[Vec<f64>]| -> Vec<f64> {
        loop {
            let mut v = rng::sphere_point(rng, 4);
            let d: f64 = v.iter().zip(x).map(|(a, b)| a * b).sum();
            for (vc, xc) in v.iter_mut().zip(x) {
                *vc -= d * xc;
            }
            for a in avoid {
                let d: f64 = v.iter().zip(a).map(|(p, q)| p * q).sum();
                for (vc, ac) in v.iter_mut().zip(a) {
                    *vc -= d * ac;
                }
            }
            let n: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if n > 1e-3 {
                for c in &mut v {
                    *c /= n;
                }
                return v;
            }
        }
    };
    let v = pick(&[]);
    let w = pick(&[v.clone()]);
    (v, w)
}

/// Calibrate the constant c with `d(cσ)|_{𝕊³} = φ*(η)` for the given map
/// and return cσ, verifying the restriction identity on random tangent
/// pairs.
pub fn calibrated_primitive(
    map: &SmoothMap,
    eta: &DifferentialForm,
    seed: u64,
) -> Result<DifferentialForm> {
    let sigma = standard_round_one_form();
    let dsigma = exterior_d(&sigma);
    let target = pullback(map, eta)?;
    let mut rng = rng::seeded(seed);
    // estimate c at a batch of points, then verify constancy
    let mut ratios = Vec::new();
    for _ in 0..24 {
        let x = rng::sphere_point(&mut rng, 4);
        let (v, w) = tangent_pair(&mut rng, &x);
        let denom = dsigma.evaluate(&x, &[v.clone(), w.clone()])?;
        if denom.abs() < 1e-3 {
            continue;
        }
        let num = target.evaluate(&x, &[v, w])?;
        ratios.push(num / denom);
    }
    if ratios.len() < 8 {
        return Err(Error::degenerate("could not sample nondegenerate tangent pairs"));
    }
    let c = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let spread = ratios.iter().map(|r| (r - c).abs()).fold(0.0, f64::max);
    if spread > 1e-8 * (1.0 + c.abs()) {
        return Err(Error::degenerate(format!(
            "pullback is not proportional to dσ on 𝕊³ (spread {spread:.3e})"
        )));
    }
    Ok(sigma.scale(c))
}

/// Verify `dω|_{𝕊³} = φ*(η)` by sampling, then integrate ω ∧ φ*(η) over
/// the 3-sphere mesh.
pub fn hopf_via_forms(
    map: &SmoothMap,
    eta: &DifferentialForm,
    omega: &DifferentialForm,
    mesh: &SphereMesh,
) -> Result<f64> {
    if mesh.k != 3 {
        return Err(Error::invalid("the Hopf integral needs a 3-sphere mesh"));
    }
    if map.domain_dim != 4 || map.codomain_dim != 3 || omega.dim() != 4 || eta.dim() != 3 {
        return Err(Error::invalid("shape mismatch in the Hopf integral"));
    }
    let domega = exterior_d(omega);
    let target = pullback(map, eta)?;
    let mut rng = rng::seeded(7);
    let mut worst = 0.0f64;
    for _ in 0..64 {
        let x = rng::sphere_point(&mut rng, 4);
        let (v, w) = tangent_pair(&mut rng, &x);
        let a = domega.evaluate(&x, &[v.clone(), w.clone()])?;
        let b = target.evaluate(&x, &[v, w])?;
        worst = worst.max((a - b).abs());
    }
    if worst > 1e-6 {
        return Err(Error::invalid(format!(
            "primitive verification failed: |dω - φ*η| up to {worst:.3e} on 𝕊³"
        )));
    }
    let integrand = wedge(omega, &target)?;
    let rule = simplex_quadrature(3, 4)?;
    integrate_pullback(&SmoothMap::identity(4), &integrand, mesh, &rule)
}
