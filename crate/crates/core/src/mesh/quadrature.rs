//! Quadrature rules on reference simplices, in barycentric coordinates.
//!
//! Weights are positive and sum to the reference-simplex volume `1/dim!`.
//! Edges use Gauss–Legendre, triangles the symmetric 7-point degree-5 rule,
//! and tetrahedra a conical-product (Duffy) rule built from Gauss–Legendre
//! factors, which keeps all weights positive.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub dim: usize,
    pub order: usize,
    /// Barycentric node coordinates, each of length `dim + 1`.
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Gauss–Legendre nodes/weights on [0, 1].
fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Initial guess for the i-th root of P_n on [-1, 1].
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Evaluate P_n and P_n' by recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // sort ascending on [0, 1]
        nodes[n - 1 - i] = 0.5 * (x + 1.0);
        weights[n - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

fn edge_rule(points: usize) -> QuadratureRule {
    let (t, w) = gauss_legendre_unit(points);
    QuadratureRule {
        dim: 1,
        order: 2 * points - 1,
        nodes: t.iter().map(|&s| vec![1.0 - s, s]).collect(),
        weights: w,
    }
}

/// Symmetric 7-point degree-5 triangle rule. Weights normalized to area 1/2.
fn triangle_rule() -> QuadratureRule {
    let s15 = 15f64.sqrt();
    let mut nodes = vec![vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]];
    let mut weights = vec![9.0 / 40.0];
    let b1 = (6.0 - s15) / 21.0;
    let a1 = 1.0 - 2.0 * b1;
    let w1 = (155.0 - s15) / 1200.0;
    let b2 = (6.0 + s15) / 21.0;
    let a2 = 1.0 - 2.0 * b2;
    let w2 = (155.0 + s15) / 1200.0;
    for (a, b, w) in [(a1, b1, w1), (a2, b2, w2)] {
        nodes.push(vec![a, b, b]);
        nodes.push(vec![b, a, b]);
        nodes.push(vec![b, b, a]);
        weights.extend_from_slice(&[w, w, w]);
    }
    QuadratureRule {
        dim: 2,
        order: 5,
        nodes,
        weights: weights.into_iter().map(|w| w * 0.5).collect(),
    }
}

/// Conical-product rule on the reference tetrahedron via the Duffy map
/// `(u,v,w) ↦ λ = (1-u, u(1-v), uv(1-w), uvw)` with Jacobian `u²v`.
fn tetrahedron_rule(points_per_axis: usize) -> QuadratureRule {
    let (t, w) = gauss_legendre_unit(points_per_axis);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (iu, &u) in t.iter().enumerate() {
        for (iv, &v) in t.iter().enumerate() {
            for (iw, &ww) in t.iter().enumerate() {
                nodes.push(vec![1.0 - u, u * (1.0 - v), u * v * (1.0 - ww), u * v * ww]);
                weights.push(w[iu] * w[iv] * w[iw] * u * u * v);
            }
        }
    }
    QuadratureRule { dim: 3, order: 2 * points_per_axis - 3, nodes, weights }
}

/// Rule of at least the requested polynomial order on the `dim`-simplex.
pub fn simplex_quadrature(dim: usize, order: usize) -> Result<QuadratureRule> {
    match dim {
        1 => Ok(edge_rule(((order + 2) / 2).max(3))),
        2 => {
            if order <= 5 {
                Ok(triangle_rule())
            } else {
                Err(Error::Unsupported(format!("triangle rules above order 5 (requested {order})")))
            }
        }
        3 => Ok(tetrahedron_rule((((order + 3) / 2) + 1).max(4))),
        _ => Err(Error::Unsupported(format!("quadrature on {dim}-simplices"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ∫ over reference simplex of Πλ_i^{e_i} = (Π e_i!) / (dim + Σe_i)! · dim!·(1/dim!)
    /// (classical Dirichlet integral; includes the simplex volume factor).
    fn exact_bary_monomial(dim: usize, exps: &[u32]) -> f64 {
        let fact = |m: u32| -> f64 { (1..=m).map(f64::from).product::<f64>().max(1.0) };
        let se: u32 = exps.iter().sum();
        let num: f64 = exps.iter().map(|&e| fact(e)).product();
        num / fact(dim as u32 + se)
    }

    fn check_rule(rule: &QuadratureRule, degree: u32) {
        assert!(rule.weights.iter().all(|&w| w > 0.0), "weights positive");
        let vol = 1.0 / (1..=rule.dim).map(|i| i as f64).product::<f64>();
        assert!((rule.weight_sum() - vol).abs() < 1e-14, "weights sum to ref volume");
        // exactness on all barycentric monomials up to `degree`
        let npts = rule.dim + 1;
        let mut exps = vec![0u32; npts];
        loop {
            let total: u32 = exps.iter().sum();
            if total <= degree {
                let quad: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(lam, w)| {
                        let mut m = *w;
                        for (l, &e) in lam.iter().zip(&exps) {
                            for _ in 0..e {
                                m *= l;
                            }
                        }
                        m
                    })
                    .sum();
                let exact = exact_bary_monomial(rule.dim, &exps);
                assert!(
                    (quad - exact).abs() < 1e-13,
                    "dim {} exps {:?}: quad {} vs exact {}",
                    rule.dim,
                    exps,
                    quad,
                    exact
                );
            }
            // advance multi-exponent
            let mut i = 0;
            loop {
                exps[i] += 1;
                if exps[i] <= degree {
                    break;
                }
                exps[i] = 0;
                i += 1;
                if i == npts {
                    return;
                }
            }
        }
    }

    #[test]
    fn edge_rule_exact_to_degree_5() {
        check_rule(&simplex_quadrature(1, 4).unwrap(), 5);
    }

    #[test]
    fn triangle_rule_exact_to_degree_5() {
        check_rule(&simplex_quadrature(2, 4).unwrap(), 5);
    }

    #[test]
    fn tetrahedron_rule_exact_to_degree_5() {
        check_rule(&simplex_quadrature(3, 4).unwrap(), 5);
    }
}
