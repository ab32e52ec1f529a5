//! Quadrature of pulled-back forms over sphere and ball meshes, and the
//! Stokes-residual harness.
//!
//! Sphere meshes integrate through the curved chart (barycentric interpolant
//! re-projected to the sphere), so the integral approximates the true
//! spherical integral to quadrature order. Ball meshes integrate the flat
//! simplices exactly; the Stokes residual of a smooth map with a polynomial
//! form is then dominated by the O(h²) geometric sliver between the
//! polytope and the ball.

use crate::error::{Error, Result};
use crate::forms::{exterior_d, DifferentialForm, SmoothMap};
use crate::par;

use super::ball::BallMesh;
use super::quadrature::QuadratureRule;
use super::sphere::SphereMesh;

/// ∫ over the (curved) sphere mesh of the pullback `f*a`.
///
/// `f` is defined on the ambient ℝ^{k+1} of the mesh; `a` has degree k on
/// the codomain of `f`. Reversing the mesh orientation negates the value.
pub fn integrate_pullback(
    f: &SmoothMap,
    a: &DifferentialForm,
    mesh: &SphereMesh,
    rule: &QuadratureRule,
) -> Result<f64> {
    integrate_pullback_threads(f, a, mesh, rule, 1)
}

/// As [`integrate_pullback`] with an explicit thread cap.
pub fn integrate_pullback_threads(
    f: &SmoothMap,
    a: &DifferentialForm,
    mesh: &SphereMesh,
    rule: &QuadratureRule,
    threads: usize,
) -> Result<f64> {
    if a.degree() != mesh.k {
        return Err(Error::invalid(format!(
            "form degree {} does not match mesh dimension {}",
            a.degree(),
            mesh.k
        )));
    }
    if f.domain_dim != mesh.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: mesh.ambient_dim(), got: f.domain_dim });
    }
    if f.codomain_dim != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: f.codomain_dim });
    }
    if rule.dim != mesh.k {
        return Err(Error::invalid(format!(
            "rule dimension {} does not match mesh dimension {}",
            rule.dim, mesh.k
        )));
    }
    let k = mesh.k;
    let ambient = mesh.ambient_dim();
    let per_simplex = |range: std::ops::Range<usize>| -> f64 {
        let mut acc = 0.0;
        for si in range {
            let s = &mesh.simplices[si];
            let verts: Vec<&[f64]> = s.iter().map(|&v| mesh.vertices[v].as_slice()).collect();
            for (lam, &w) in rule.nodes.iter().zip(&rule.weights) {
                // barycentric interpolant and its radial projection
                let mut y = vec![0.0; ambient];
                for (l, v) in lam.iter().zip(&verts) {
                    for (yi, vi) in y.iter_mut().zip(*v) {
                        *yi += l * vi;
                    }
                }
                let r = y.iter().map(|x| x * x).sum::<f64>().sqrt();
                let p: Vec<f64> = y.iter().map(|x| x / r).collect();
                // tangent vectors dP(v_j - v_0)
                let mut tangents = Vec::with_capacity(k);
                for j in 1..=k {
                    let e: Vec<f64> = verts[j].iter().zip(verts[0]).map(|(a, b)| a - b).collect();
                    let dot: f64 = p.iter().zip(&e).map(|(a, b)| a * b).sum();
                    tangents.push(
                        e.iter().zip(&p).map(|(ei, pi)| (ei - pi * dot) / r).collect::<Vec<f64>>(),
                    );
                }
                let fy = f.eval(&p);
                let jac = f.jacobian(&p);
                let wvecs: Vec<Vec<f64>> = tangents.iter().map(|t| jac.matvec(t)).collect();
                acc += w * a.evaluate(&fy, &wvecs).expect("shape-checked evaluation");
            }
        }
        acc
    };
    let total: f64 = par::map_chunks(mesh.simplices.len(), threads, per_simplex)
        .into_iter()
        .sum();
    Ok(total)
}

/// ∫ over the flat ball mesh of the pullback `f*a` (degree = ball dim).
pub fn integrate_over_ball(
    f: &SmoothMap,
    a: &DifferentialForm,
    ball: &BallMesh,
    rule: &QuadratureRule,
) -> Result<f64> {
    if a.degree() != ball.dim {
        return Err(Error::invalid(format!(
            "form degree {} does not match ball dimension {}",
            a.degree(),
            ball.dim
        )));
    }
    if f.domain_dim != ball.dim {
        return Err(Error::DimensionMismatch { expected: ball.dim, got: f.domain_dim });
    }
    if f.codomain_dim != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: f.codomain_dim });
    }
    if rule.dim != ball.dim {
        return Err(Error::invalid("rule dimension does not match ball dimension".to_string()));
    }
    let d = ball.dim;
    let per_simplex = |range: std::ops::Range<usize>| -> f64 {
        let mut acc = 0.0;
        for si in range {
            let s = &ball.simplices[si];
            let verts: Vec<&[f64]> = s.iter().map(|&v| ball.vertices[v].as_slice()).collect();
            let edges: Vec<Vec<f64>> = (1..=d)
                .map(|j| verts[j].iter().zip(verts[0]).map(|(a, b)| a - b).collect())
                .collect();
            for (lam, &w) in rule.nodes.iter().zip(&rule.weights) {
                let mut x = vec![0.0; d];
                for (l, v) in lam.iter().zip(&verts) {
                    for (xi, vi) in x.iter_mut().zip(*v) {
                        *xi += l * vi;
                    }
                }
                let fy = f.eval(&x);
                let jac = f.jacobian(&x);
                let wvecs: Vec<Vec<f64>> = edges.iter().map(|t| jac.matvec(t)).collect();
                acc += w * a.evaluate(&fy, &wvecs).expect("shape-checked evaluation");
            }
        }
        acc
    };
    let total: f64 = par::map_chunks(ball.simplices.len(), 1, per_simplex).into_iter().sum();
    Ok(total)
}

/// Stokes residual `∫_{∂B} F*ω - ∫_B F*(dω)` for a degree-(dim-1) form ω.
pub fn stokes_residual(
    f: &SmoothMap,
    omega: &DifferentialForm,
    ball: &BallMesh,
    rule_boundary: &QuadratureRule,
    rule_interior: &QuadratureRule,
) -> Result<f64> {
    if omega.degree() + 1 != ball.dim {
        return Err(Error::invalid(format!(
            "Stokes needs a degree-{} form on a dim-{} ball, got degree {}",
            ball.dim - 1,
            ball.dim,
            omega.degree()
        )));
    }
    let boundary = ball.boundary()?;
    let surface = integrate_pullback(f, omega, &boundary, rule_boundary)?;
    let volume = integrate_over_ball(f, &exterior_d(omega), ball, rule_interior)?;
    Ok(surface - volume)
}
