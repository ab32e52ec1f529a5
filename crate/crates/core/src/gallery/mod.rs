//! Concrete maps used throughout the crate: the horizontal figure-eight
//! lift into ℍ_1 (smooth and rough-Lipschitz parametrizations), radial
//! extensions, the identity into ℍ_n, the Hopf map, horizontal disks, and a
//! Weierstrass-type fractal curve for rate experiments.

use std::sync::Arc;

use crate::approx::MetricTag;
use crate::error::{Error, Result};
use crate::forms::{Polynomial, SmoothMap};
use crate::linalg::Mat;

/// Parameter domain of a gallery map.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    /// Angle parameter s ∈ [0, 2π) on 𝕊¹.
    Circle,
    /// Unit vectors in ℝ⁴ (𝕊³).
    Sphere3,
    /// Cube [-w, w]^dim.
    Cube { dim: usize, half_width: f64 },
    /// Unit ball in ℝ^dim; `punctured` excludes the origin.
    Ball { dim: usize, punctured: bool },
}

impl Domain {
    pub fn param_dim(&self) -> usize {
        match self {
            Domain::Circle => 1,
            Domain::Sphere3 => 4,
            Domain::Cube { dim, .. } | Domain::Ball { dim, .. } => *dim,
        }
    }
}

/// A named evaluatable map with optional exact derivative and declared
/// Hölder regularity per metric.
#[derive(Clone)]
pub struct ParametricMap {
    pub name: &'static str,
    pub domain: Domain,
    pub out_dim: usize,
    eval: Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>,
    deriv: Option<Arc<dyn Fn(&[f64]) -> Mat + Send + Sync>>,
    /// Declared Hölder exponents, verified by the estimator in tests.
    pub tags: Vec<(MetricTag, f64)>,
}

impl std::fmt::Debug for ParametricMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParametricMap")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("out_dim", &self.out_dim)
            .field("tags", &self.tags)
            .finish()
    }
}

impl ParametricMap {
    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        (self.eval)(x)
    }

    /// Domain-validated evaluation.
    pub fn eval_checked(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.domain.param_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.domain.param_dim(),
                got: x.len(),
            });
        }
        if let Domain::Ball { punctured: true, .. } = self.domain {
            let r: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if r < 1e-12 {
                return Err(Error::degenerate("radial extension is undefined at the origin"));
            }
        }
        Ok((self.eval)(x))
    }

    pub fn has_exact_derivative(&self) -> bool {
        self.deriv.is_some()
    }

    /// Jacobian with respect to the domain parameters (exact when available,
    /// central differences otherwise).
    pub fn jacobian(&self, x: &[f64]) -> Mat {
        match &self.deriv {
            Some(d) => d(x),
            None => {
                let h = 1e-5;
                let d = self.domain.param_dim();
                let mut j = Mat::zeros(self.out_dim, d);
                for c in 0..d {
                    let mut xp = x.to_vec();
                    let mut xm = x.to_vec();
                    xp[c] += h;
                    xm[c] -= h;
                    let fp = (self.eval)(&xp);
                    let fm = (self.eval)(&xm);
                    for r in 0..self.out_dim {
                        j.set(r, c, (fp[r] - fm[r]) / (2.0 * h));
                    }
                }
                j
            }
        }
    }
}

fn lemniscate_lift(s: f64) -> Vec<f64> {
    let (sin, cos) = s.sin_cos();
    vec![sin, sin * cos, 2.0 * cos - (2.0 / 3.0) * cos * cos * cos - 4.0 / 3.0]
}

fn lemniscate_lift_deriv(s: f64) -> Vec<f64> {
    let (sin, cos) = s.sin_cos();
    vec![cos, (2.0 * s).cos(), -2.0 * sin * sin * sin]
}

/// Horizontal lift of the Gerono lemniscate: an exactly α-horizontal,
/// closed, embedded circle in ℍ_1. The planar curve self-intersects at the
/// origin, but the two passes sit at heights t(0) = 0 and t(π) = -8/3, so
/// the lift is injective.
pub fn figure_eight_lift() -> ParametricMap {
    ParametricMap {
        name: "figure_eight_lift",
        domain: Domain::Circle,
        out_dim: 3,
        eval: Arc::new(|x: &[f64]| lemniscate_lift(x[0])),
        deriv: Some(Arc::new(|x: &[f64]| {
            let d = lemniscate_lift_deriv(x[0]);
            Mat::from_rows(&[vec![d[0]], vec![d[1]], vec![d[2]]])
        })),
        tags: vec![(MetricTag::Koranyi, 1.0), (MetricTag::Euclidean, 1.0)],
    }
}

/// Corner count of the horizontal figure-eight polygon.
const POLYGON_CORNERS: usize = 256;

/// Closed horizontal polygon through samples of the Gerono lemniscate.
///
/// Straight segments with α-horizontal velocity stay horizontal along their
/// whole length (rulings of the contact structure), so the polyline is an
/// exactly horizontal Lipschitz circle whose velocity is genuinely
/// discontinuous at every corner: the sharp first-order witness for the
/// mollified contact-defect rate. The vertical increments are the shoelace
/// terms 2(x_k y_{k+1} - y_k x_{k+1}); the second half of the planar
/// polygon is the exact y-axis mirror of the first, so the lift closes up
/// to rounding dust.
fn polygon_vertices() -> Vec<[f64; 3]> {
    let m = POLYGON_CORNERS;
    let half = m / 2;
    let mut planar: Vec<[f64; 2]> = Vec::with_capacity(m);
    for k in 0..half {
        let s = std::f64::consts::PI * k as f64 / half as f64;
        let (sin, cos) = s.sin_cos();
        planar.push([sin, sin * cos]);
    }
    for k in 0..half {
        let p = planar[k];
        planar.push([-p[0], p[1]]);
    }
    let mut out = Vec::with_capacity(m + 1);
    let mut t = 0.0;
    out.push([planar[0][0], planar[0][1], t]);
    for k in 0..m {
        let a = planar[k];
        let b = planar[(k + 1) % m];
        t += 2.0 * (a[0] * b[1] - a[1] * b[0]);
        out.push([b[0], b[1], t]);
    }
    out
}

/// The horizontal figure-eight polyline (see [`polygon_vertices`]),
/// parametrized at unit corner rate over [0, 2π).
pub fn figure_eight_polyline() -> ParametricMap {
    let verts = Arc::new(polygon_vertices());
    let verts2 = verts.clone();
    let m = POLYGON_CORNERS;
    let seg = move |s: f64| -> (usize, f64) {
        let two_pi = 2.0 * std::f64::consts::PI;
        let wrapped = s.rem_euclid(two_pi);
        let u = wrapped / two_pi * m as f64;
        let k = (u.floor() as usize).min(m - 1);
        (k, u - k as f64)
    };
    let seg2 = seg;
    ParametricMap {
        name: "figure_eight_polyline",
        domain: Domain::Circle,
        out_dim: 3,
        eval: Arc::new(move |x: &[f64]| {
            let (k, f) = seg(x[0]);
            let a = verts[k];
            let b = verts[k + 1];
            (0..3).map(|i| a[i] + f * (b[i] - a[i])).collect()
        }),
        deriv: Some(Arc::new(move |x: &[f64]| {
            let (k, _) = seg2(x[0]);
            let a = verts2[k];
            let b = verts2[k + 1];
            let rate = POLYGON_CORNERS as f64 / (2.0 * std::f64::consts::PI);
            Mat::from_rows(&[
                vec![(b[0] - a[0]) * rate],
                vec![(b[1] - a[1]) * rate],
                vec![(b[2] - a[2]) * rate],
            ])
        })),
        tags: vec![(MetricTag::Koranyi, 1.0), (MetricTag::Euclidean, 1.0)],
    }
}

/// Degree-zero homogeneous extension `Φ(x) = φ(x/|x|)` of a circle map to
/// the punctured disk.
pub fn radial_extension(phi: &ParametricMap) -> Result<ParametricMap> {
    if phi.domain != Domain::Circle {
        return Err(Error::invalid("radial extension needs a circle-domain map"));
    }
    let eval = phi.eval.clone();
    let out_dim = phi.out_dim;
    let name: &'static str = match phi.name {
        "figure_eight_lift" => "figure_eight_disk",
        "figure_eight_polyline" => "figure_eight_disk_polyline",
        _ => "radial_extension",
    };
    Ok(ParametricMap {
        name,
        domain: Domain::Ball { dim: 2, punctured: true },
        out_dim,
        eval: {
            let eval = eval.clone();
            Arc::new(move |x: &[f64]| eval(&[x[1].atan2(x[0])]))
        },
        deriv: phi.deriv.clone().map(|d| {
            let arc: Arc<dyn Fn(&[f64]) -> Mat + Send + Sync> = Arc::new(move |x: &[f64]| {
                let r2 = x[0] * x[0] + x[1] * x[1];
                let dphi = d(&[x[1].atan2(x[0])]);
                // ∇θ = (-y, x)/r²; the radial derivative vanishes.
                let mut j = Mat::zeros(dphi.rows, 2);
                for rr in 0..dphi.rows {
                    j.set(rr, 0, dphi.get(rr, 0) * (-x[1] / r2));
                    j.set(rr, 1, dphi.get(rr, 0) * (x[0] / r2));
                }
                j
            });
            arc
        }),
        tags: phi.tags.clone(),
    })
}

/// The identity of the cube [-w, w]^{2n+1} viewed as a map into ℍ_n:
/// Euclidean-Lipschitz but only C^{1/2} for the Korányi metric.
pub fn identity_into_h(n: usize, half_width: f64) -> ParametricMap {
    let dim = 2 * n + 1;
    ParametricMap {
        name: if n == 1 { "identity_H1" } else { "identity_Hn" },
        domain: Domain::Cube { dim, half_width },
        out_dim: dim,
        eval: Arc::new(|x: &[f64]| x.to_vec()),
        deriv: Some(Arc::new(move |_x: &[f64]| {
            let mut j = Mat::zeros(dim, dim);
            for i in 0..dim {
                j.set(i, i, 1.0);
            }
            j
        })),
        tags: vec![(MetricTag::Koranyi, 0.5), (MetricTag::Euclidean, 1.0)],
    }
}

/// The vertical segment s ↦ (0, 0, s): Korányi distance is exactly
/// |Δs|^{1/2}.
pub fn vertical_segment() -> ParametricMap {
    ParametricMap {
        name: "vertical_segment",
        domain: Domain::Cube { dim: 1, half_width: 1.0 },
        out_dim: 3,
        eval: Arc::new(|x: &[f64]| vec![0.0, 0.0, x[0]]),
        deriv: Some(Arc::new(|_x: &[f64]| Mat::from_rows(&[vec![0.0], vec![0.0], vec![1.0]]))),
        tags: vec![(MetricTag::Koranyi, 0.5), (MetricTag::Euclidean, 1.0)],
    }
}

/// The Hopf map 𝕊³ → 𝕊² ⊂ ℝ³,
/// `h(x) = (2(x₁x₃+x₂x₄), 2(x₂x₃-x₁x₄), x₁²+x₂²-x₃²-x₄²)`;
/// |h(x)| = |x|² is an algebraic identity, so unit inputs give unit outputs.
pub fn hopf_map() -> ParametricMap {
    let smooth = hopf_smooth_map();
    let smooth2 = smooth.clone();
    ParametricMap {
        name: "hopf_map",
        domain: Domain::Sphere3,
        out_dim: 3,
        eval: Arc::new(move |x: &[f64]| smooth.eval(x)),
        deriv: Some(Arc::new(move |x: &[f64]| smooth2.jacobian(x))),
        tags: vec![(MetricTag::Euclidean, 1.0)],
    }
}

/// The Hopf map as an exact polynomial map ℝ⁴ → ℝ³.
pub fn hopf_smooth_map() -> SmoothMap {
    let v = |i: usize| Polynomial::var(4, i);
    let c1 = v(0).mul(&v(2)).add(&v(1).mul(&v(3))).scale(2.0);
    let c2 = v(1).mul(&v(2)).sub(&v(0).mul(&v(3))).scale(2.0);
    let c3 = v(0).pow(2).add(&v(1).pow(2)).sub(&v(2).pow(2)).sub(&v(3).pow(2));
    SmoothMap::from_polys(4, vec![c1, c2, c3])
}

/// A Lipschitz horizontal disk `Φ(u,v) = (u(1+v²)/2, 0, 0)`: the image lies
/// in the x-axis, so Φ*α = 0 exactly and rank DΦ ≤ 1.
pub fn horizontal_disk() -> ParametricMap {
    ParametricMap {
        name: "horizontal_disk",
        domain: Domain::Cube { dim: 2, half_width: 1.0 },
        out_dim: 3,
        eval: Arc::new(|x: &[f64]| vec![x[0] * (1.0 + x[1] * x[1]) / 2.0, 0.0, 0.0]),
        deriv: Some(Arc::new(|x: &[f64]| {
            Mat::from_rows(&[
                vec![(1.0 + x[1] * x[1]) / 2.0, x[0] * x[1]],
                vec![0.0, 0.0],
                vec![0.0, 0.0],
            ])
        })),
        tags: vec![(MetricTag::Koranyi, 1.0), (MetricTag::Euclidean, 1.0)],
    }
}

/// The horizontal disk as a polynomial map (for exact pullbacks).
pub fn horizontal_disk_smooth_map() -> SmoothMap {
    let u = Polynomial::var(2, 0);
    let v = Polynomial::var(2, 1);
    let one = Polynomial::constant(2, 1.0);
    SmoothMap::from_polys(
        2,
        vec![u.mul(&one.add(&v.mul(&v))).scale(0.5), Polynomial::zero(2), Polynomial::zero(2)],
    )
}

/// A Lipschitz horizontal disk sweeping the figure-eight polyline:
/// `Φ(u,v) = polyline(g(u,v))` with an asymmetric Lipschitz ramp g.
/// Rank DΦ ≤ 1 and Φ*α = 0 (the polyline rulings are horizontal), but the
/// boundary loop runs back and forth across the polyline corners at
/// varying speeds, so mollified boundary integrals are nonzero and decay
/// at the first-order commutator rate.
pub fn polyline_ruled_disk() -> ParametricMap {
    let polyline = figure_eight_polyline();
    let polyline2 = polyline.clone();
    let g = |u: f64, v: f64| {
        std::f64::consts::FRAC_PI_2 * (u + 0.8 * v + 0.35 * u * v + 0.3 * v * v)
    };
    ParametricMap {
        name: "polyline_ruled_disk",
        domain: Domain::Cube { dim: 2, half_width: 1.0 },
        out_dim: 3,
        eval: Arc::new(move |x: &[f64]| polyline.eval(&[g(x[0], x[1])])),
        deriv: Some(Arc::new(move |x: &[f64]| {
            let s = g(x[0], x[1]);
            let d = polyline2.jacobian(&[s]);
            let gu = std::f64::consts::FRAC_PI_2 * (1.0 + 0.35 * x[1]);
            let gv = std::f64::consts::FRAC_PI_2 * (0.8 + 0.35 * x[0] + 0.6 * x[1]);
            let mut j = Mat::zeros(3, 2);
            for r in 0..3 {
                j.set(r, 0, d.get(r, 0) * gu);
                j.set(r, 1, d.get(r, 0) * gv);
            }
            j
        })),
        // Lipschitz and horizontal by construction (tested via rank and
        // obstruction decay); its envelope is not a clean power law at
        // desk-scale separations, so no exponent tags are declared.
        tags: vec![],
    }
}

const WEIERSTRASS_LEVELS: usize = 12;

/// A three-component Weierstrass-type curve `Σ 2^{-j/2} cos(2^j s + θ_cj)`:
/// Euclidean-C^{1/2}, Korányi-C^{1/4} (the vertical component dominates).
pub fn weierstrass_curve() -> ParametricMap {
    ParametricMap {
        name: "weierstrass_curve",
        domain: Domain::Cube { dim: 1, half_width: std::f64::consts::PI },
        out_dim: 3,
        eval: Arc::new(|x: &[f64]| {
            let s = x[0];
            let mut out = vec![0.0; 3];
            for (c, o) in out.iter_mut().enumerate() {
                for j in 0..=WEIERSTRASS_LEVELS {
                    let f = (1u64 << j) as f64;
                    *o += ((f * s) + 0.7 * (c as f64 + 1.0) * j as f64).cos() / f.sqrt();
                }
            }
            out
        }),
        deriv: None,
        tags: vec![(MetricTag::Koranyi, 0.25), (MetricTag::Euclidean, 0.5)],
    }
}

/// The planar unit circle in ℝ³ (xy-plane): the standard linking-test curve.
pub fn unit_circle_r3() -> ParametricMap {
    ParametricMap {
        name: "unit_circle_r3",
        domain: Domain::Circle,
        out_dim: 3,
        eval: Arc::new(|x: &[f64]| vec![x[0].cos(), x[0].sin(), 0.0]),
        deriv: Some(Arc::new(|x: &[f64]| {
            Mat::from_rows(&[vec![-x[0].sin()], vec![x[0].cos()], vec![0.0]])
        })),
        tags: vec![(MetricTag::Euclidean, 1.0)],
    }
}

/// All registered gallery maps.
pub fn registry() -> Vec<ParametricMap> {
    vec![
        figure_eight_lift(),
        figure_eight_polyline(),
        radial_extension(&figure_eight_lift()).expect("circle domain"),
        identity_into_h(1, 1.0),
        vertical_segment(),
        hopf_map(),
        horizontal_disk(),
        polyline_ruled_disk(),
        weierstrass_curve(),
        unit_circle_r3(),
    ]
}

/// Look a gallery map up by name.
pub fn lookup(name: &str) -> Result<ParametricMap> {
    registry()
        .into_iter()
        .find(|m| m.name == name)
        .ok_or_else(|| Error::invalid(format!("unknown gallery map '{name}'")))
}

/// Adapt a circle-domain map to a SmoothMap on ambient ℝ² (via atan2), as
/// needed by sphere-mesh integration.
pub fn circle_map_to_ambient(phi: &ParametricMap) -> Result<SmoothMap> {
    if phi.domain != Domain::Circle {
        return Err(Error::invalid("expected a circle-domain map"));
    }
    let eval = phi.eval.clone();
    let out_dim = phi.out_dim;
    match &phi.deriv {
        Some(d) => {
            let d = d.clone();
            Ok(SmoothMap::from_fn_with_jacobian(
                2,
                out_dim,
                move |x: &[f64]| eval(&[x[1].atan2(x[0])]),
                move |x: &[f64]| {
                    let r2 = x[0] * x[0] + x[1] * x[1];
                    let dphi = d(&[x[1].atan2(x[0])]);
                    let mut j = Mat::zeros(out_dim, 2);
                    for rr in 0..out_dim {
                        j.set(rr, 0, dphi.get(rr, 0) * (-x[1] / r2));
                        j.set(rr, 1, dphi.get(rr, 0) * (x[0] / r2));
                    }
                    j
                },
            ))
        }
        None => Ok(SmoothMap::from_fn(2, out_dim, move |x: &[f64]| eval(&[x[1].atan2(x[0])]))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heis::{contact_form_at, koranyi_dist, HeisenbergPoint};
    use crate::linalg::singular_values;

    fn alpha_pairing(p: &[f64], v: &[f64]) -> f64 {
        let hp = HeisenbergPoint::new(1, p.to_vec()).unwrap();
        contact_form_at(&hp).pair(v).unwrap()
    }

    #[test]
    fn figure_eight_is_exactly_horizontal() {
        for map in [figure_eight_lift(), figure_eight_polyline()] {
            for i in 0..1000 {
                let s = 2.0 * std::f64::consts::PI * (i as f64 + 0.21) / 1000.0;
                let p = map.eval(&[s]);
                let j = map.jacobian(&[s]);
                let v: Vec<f64> = (0..3).map(|r| j.get(r, 0)).collect();
                let a = alpha_pairing(&p, &v);
                assert!(a.abs() < 1e-10, "{} at s={s}: α = {a}", map.name);
            }
        }
    }

    #[test]
    fn figure_eight_closes_and_embeds() {
        let map = figure_eight_lift();
        let start = map.eval(&[0.0]);
        let end = map.eval(&[2.0 * std::f64::consts::PI]);
        for (a, b) in start.iter().zip(&end) {
            assert!((a - b).abs() < 1e-12);
        }
        let t0 = map.eval(&[0.0])[2];
        let tpi = map.eval(&[std::f64::consts::PI])[2];
        assert!((t0 - tpi).abs() > 2.0, "self-intersection passes must differ in height");
        let n = 400;
        let mut min_d = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                let si = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                let sj = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                let gap = (si - sj).abs().min(2.0 * std::f64::consts::PI - (si - sj).abs());
                if gap < 0.1 {
                    continue;
                }
                let p = HeisenbergPoint::new(1, map.eval(&[si])).unwrap();
                let q = HeisenbergPoint::new(1, map.eval(&[sj])).unwrap();
                min_d = min_d.min(koranyi_dist(&p, &q).unwrap());
            }
        }
        assert!(min_d > 0.01, "embeddedness margin {min_d}");
    }

    #[test]
    fn polyline_closes_and_velocity_jumps_at_corners() {
        let p = figure_eight_polyline();
        let start = p.eval(&[0.0]);
        let end = p.eval(&[2.0 * std::f64::consts::PI - 1e-15]);
        for (a, b) in start.iter().zip(&end) {
            assert!((a - b).abs() < 1e-10, "closure defect {}", (a - b).abs());
        }
        // velocity genuinely discontinuous across a corner
        let two_pi = 2.0 * std::f64::consts::PI;
        let corner = two_pi / POLYGON_CORNERS as f64;
        let before = p.jacobian(&[corner - 1e-6]);
        let after = p.jacobian(&[corner + 1e-6]);
        let jump: f64 = (0..3).map(|r| (before.get(r, 0) - after.get(r, 0)).abs()).sum();
        assert!(jump > 1e-4, "no corner jump {jump}");
    }

    #[test]
    fn radial_extension_is_homogeneous_and_horizontal() {
        let ext = radial_extension(&figure_eight_lift()).unwrap();
        let x = [0.3, -0.4];
        let half: Vec<f64> = x.iter().map(|v| v / 2.0).collect();
        assert_eq!(ext.eval(&x), ext.eval(&half));
        let th: f64 = 1.234;
        let on_circle = ext.eval(&[th.cos(), th.sin()]);
        let direct = figure_eight_lift().eval(&[th]);
        for (a, b) in on_circle.iter().zip(&direct) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(ext.eval_checked(&[0.0, 0.0]).is_err());
        for &(ux, uy) in &[(0.9, 0.1), (-0.5, 0.6), (0.2, -0.8)] {
            let j = ext.jacobian(&[ux, uy]);
            let sv = singular_values(&j);
            assert!(sv[1] < 1e-12, "second singular value {}", sv[1]);
            let p = ext.eval(&[ux, uy]);
            for c in 0..2 {
                let v: Vec<f64> = (0..3).map(|r| j.get(r, c)).collect();
                assert!(alpha_pairing(&p, &v).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn hopf_map_is_unit_norm_and_sends_pole_correctly() {
        let h = hopf_map();
        let mut rng = crate::rng::seeded(4);
        for _ in 0..200 {
            let x = crate::rng::sphere_point(&mut rng, 4);
            let y = h.eval(&x);
            let n: f64 = y.iter().map(|v| v * v).sum::<f64>();
            assert!((n - 1.0).abs() < 1e-13, "norm² {n}");
        }
        assert_eq!(h.eval(&[1.0, 0.0, 0.0, 0.0]), vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn horizontal_disk_is_rank_one_and_flat() {
        let d = horizontal_disk();
        let mut rng = crate::rng::seeded(8);
        for _ in 0..100 {
            let x = crate::rng::cube_point(&mut rng, 2, 1.0);
            let p = d.eval(&x);
            assert_eq!(p[1], 0.0);
            assert_eq!(p[2], 0.0);
            let j = d.jacobian(&x);
            let sv = singular_values(&j);
            assert!(sv[1] < 1e-12);
            for c in 0..2 {
                let v: Vec<f64> = (0..3).map(|r| j.get(r, c)).collect();
                assert_eq!(alpha_pairing(&p, &v), 0.0);
            }
        }
    }

    #[test]
    fn registry_lookup_round_trip() {
        for m in registry() {
            let found = lookup(m.name).unwrap();
            assert_eq!(found.name, m.name);
        }
        assert!(lookup("no_such_map").is_err());
    }
}
