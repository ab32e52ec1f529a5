//! Gauss linking number of disjoint closed polygonal curves in ℝ³.
//!
//! The double integral of the Gauss kernel over a pair of straight segments
//! has a closed form: the signed solid angle of the spherical quadrilateral
//! spanned by the four endpoint differences. Summing it over all segment
//! pairs integrates the kernel exactly, so the result sits within rounding
//! error of an integer for any pair of disjoint closed polygons.

use crate::error::{Error, Result};
use crate::par;

use super::curve::PlCurve;

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn normalized(a: [f64; 3]) -> Option<[f64; 3]> {
    let n = dot(&a, &a).sqrt();
    if n < 1e-300 {
        None
    } else {
        Some([a[0] / n, a[1] / n, a[2] / n])
    }
}

fn sub(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Exact Gauss-kernel integral over one segment pair, divided by 4π.
fn pair_solid_angle(p1: &[f64], p2: &[f64], p3: &[f64], p4: &[f64]) -> f64 {
    let r13 = sub(p3, p1);
    let r14 = sub(p4, p1);
    let r23 = sub(p3, p2);
    let r24 = sub(p4, p2);
    let n1 = normalized(cross(&r13, &r14));
    let n2 = normalized(cross(&r14, &r24));
    let n3 = normalized(cross(&r24, &r23));
    let n4 = normalized(cross(&r23, &r13));
    let (n1, n2, n3, n4) = match (n1, n2, n3, n4) {
        (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
        // some endpoint quadruple is collinear/coplanar through the other
        // segment: the pair contributes zero measure
        _ => return 0.0,
    };
    let asin_c = |x: f64| x.clamp(-1.0, 1.0).asin();
    let omega = asin_c(dot(&n1, &n2)) + asin_c(dot(&n2, &n3)) + asin_c(dot(&n3, &n4))
        + asin_c(dot(&n4, &n1));
    let t1 = sub(p2, p1);
    let t2 = sub(p4, p3);
    let sign = dot(&cross(&t2, &t1), &r13);
    if sign > 0.0 {
        omega / (4.0 * std::f64::consts::PI)
    } else if sign < 0.0 {
        -omega / (4.0 * std::f64::consts::PI)
    } else {
        0.0
    }
}

/// Minimum distance below which curves count as intersecting.
pub const MIN_SEPARATION: f64 = 1e-9;

/// Gauss linking number of two disjoint closed curves in ℝ³.
pub fn gauss_linking(a: &PlCurve, b: &PlCurve) -> Result<f64> {
    gauss_linking_threads(a, b, 1)
}

/// As [`gauss_linking`] with an explicit thread cap.
pub fn gauss_linking_threads(a: &PlCurve, b: &PlCurve, threads: usize) -> Result<f64> {
    if a.dim != 3 || b.dim != 3 {
        return Err(Error::invalid("Gauss linking needs curves in ℝ³"));
    }
    if !a.closed || !b.closed {
        return Err(Error::invalid("Gauss linking needs closed curves"));
    }
    let sep = a.min_distance(b)?;
    if sep < MIN_SEPARATION {
        return Err(Error::degenerate(format!(
            "curves intersect (min segment distance {sep:.3e})"
        )));
    }
    let na = a.segment_count();
    let nb = b.segment_count();
    let total = par::sum_indexed(na, threads, |i| {
        let (a1, a2) = a.segment(i);
        let mut acc = 0.0;
        for j in 0..nb {
            let (b1, b2) = b.segment(j);
            acc += pair_solid_angle(a1, a2, b1, b2);
        }
        acc
    });
    Ok(total)
}

/// Signed-crossing count of the planar projections: an independent
/// combinatorial linking oracle for well-separated curves. The projection
/// direction must be generic for the input pair.
pub fn crossing_sign_linking(a: &PlCurve, b: &PlCurve, direction: &[f64; 3]) -> Result<f64> {
    if a.dim != 3 || b.dim != 3 {
        return Err(Error::invalid("crossing oracle needs curves in ℝ³"));
    }
    // frame (u, v, w) with w the projection direction
    let w = normalized(*direction).ok_or_else(|| Error::invalid("zero direction"))?;
    let seed = if w[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let u = normalized(cross(&w, &seed)).expect("independent seed");
    let v = cross(&w, &u);
    let proj = |p: &[f64]| -> (f64, f64, f64) {
        let p3 = [p[0], p[1], p[2]];
        (dot(&p3, &u), dot(&p3, &v), dot(&p3, &w))
    };
    let mut total = 0.0;
    for i in 0..a.segment_count() {
        let (a1, a2) = a.segment(i);
        let (ax1, ay1, ah1) = proj(a1);
        let (ax2, ay2, ah2) = proj(a2);
        for j in 0..b.segment_count() {
            let (b1, b2) = b.segment(j);
            let (bx1, by1, bh1) = proj(b1);
            let (bx2, by2, bh2) = proj(b2);
            // 2D segment intersection
            let d1 = (ax2 - ax1, ay2 - ay1);
            let d2 = (bx2 - bx1, by2 - by1);
            let denom = d1.0 * d2.1 - d1.1 * d2.0;
            if denom.abs() < 1e-14 {
                continue;
            }
            let rx = bx1 - ax1;
            let ry = by1 - ay1;
            let s = (rx * d2.1 - ry * d2.0) / denom;
            let t = (rx * d1.1 - ry * d1.0) / denom;
            if !(0.0..1.0).contains(&s) || !(0.0..1.0).contains(&t) {
                continue;
            }
            let ha = ah1 + s * (ah2 - ah1);
            let hb = bh1 + t * (bh2 - bh1);
            // sign: +1 when the over-strand/under-strand frame is positive
            let over_sign = if ha > hb { 1.0 } else { -1.0 };
            total += 0.5 * over_sign * denom.signum();
        }
    }
    Ok(total)
}

/// The standard two-component test links.
pub mod presets {
    use super::super::curve::{circle_curve, PlCurve};

    /// Two far-apart unit circles in parallel planes: unlinked.
    pub fn unlink(n: usize) -> (PlCurve, PlCurve) {
        let a = circle_curve(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], 1.0, n);
        let b = circle_curve(&[0.0, 0.0, 5.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], 1.0, n);
        (a, b)
    }

    /// The standard Hopf link: unit circle in the xy-plane and a unit circle
    /// in the xz-plane centered at (1, 0, 0).
    pub fn hopf_link(n: usize) -> (PlCurve, PlCurve) {
        let a = circle_curve(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], 1.0, n);
        let b = circle_curve(&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0], 1.0, n);
        (a, b)
    }

    /// The (2,4) torus link: two (1,2) curves on the torus R = 2, r = 1/2,
    /// linking number ±2.
    pub fn torus_link_2_4(n: usize) -> (PlCurve, PlCurve) {
        let make = |phase: f64| -> PlCurve {
            let points = (0..n)
                .map(|i| {
                    let th = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                    let w = 2.0 * th + phase;
                    let rad = 2.0 + 0.5 * w.cos();
                    vec![rad * th.cos(), rad * th.sin(), 0.5 * w.sin()]
                })
                .collect();
            PlCurve::new(3, points, true).expect("torus curve")
        };
        (make(0.0), make(std::f64::consts::PI))
    }
}

#[cfg(test)]
mod tests {
    use super::super::curve::circle_curve;
    use super::presets::*;
    use super::*;

    #[test]
    fn unlink_is_zero() {
        let (a, b) = unlink(512);
        let lk = gauss_linking(&a, &b).unwrap();
        assert!(lk.abs() < 1e-3, "unlink {lk}");
    }

    #[test]
    fn hopf_link_is_plus_minus_one_and_matches_crossings() {
        let (a, b) = hopf_link(512);
        let lk = gauss_linking(&a, &b).unwrap();
        assert!((lk.abs() - 1.0).abs() < 1e-3, "hopf {lk}");
        let oracle = crossing_sign_linking(&a, &b, &[0.13, 0.21, 0.97]).unwrap();
        assert!((lk - oracle).abs() < 1e-3, "gauss {lk} vs crossings {oracle}");
    }

    #[test]
    fn torus_2_4_is_plus_minus_two_and_matches_crossings() {
        let (a, b) = torus_link_2_4(512);
        let lk = gauss_linking(&a, &b).unwrap();
        assert!((lk.abs() - 2.0).abs() < 1e-3, "torus {lk}");
        let oracle = crossing_sign_linking(&a, &b, &[0.05, 0.11, 0.99]).unwrap();
        assert!((lk - oracle).abs() < 1e-3, "gauss {lk} vs crossings {oracle}");
    }

    #[test]
    fn symmetry_reflection_and_rigid_motion() {
        let (a, b) = hopf_link(256);
        let lk = gauss_linking(&a, &b).unwrap();
        let lk_sym = gauss_linking(&b, &a).unwrap();
        assert!((lk - lk_sym).abs() < 1e-9, "symmetry");
        // reflection through z = 0 negates
        let refl = |p: &[f64]| vec![p[0], p[1], -p[2]];
        let lk_refl = gauss_linking(&a.map_points(refl), &b.map_points(refl)).unwrap();
        assert!((lk + lk_refl).abs() < 1e-9, "reflection");
        // rigid motion preserves
        let c = 0.3f64.cos();
        let s = 0.3f64.sin();
        let rot = |p: &[f64]| vec![c * p[0] - s * p[2] + 0.7, p[1] - 1.1, s * p[0] + c * p[2]];
        let lk_rot = gauss_linking(&a.map_points(rot), &b.map_points(rot)).unwrap();
        assert!((lk - lk_rot).abs() < 1e-9, "rigid motion");
    }

    #[test]
    fn intersecting_curves_are_rejected() {
        let a = circle_curve(&[0.0; 3], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], 1.0, 64);
        let b = circle_curve(&[0.0; 3], &[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0], 1.0, 64);
        assert!(matches!(gauss_linking(&a, &b), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn refinement_keeps_the_integer() {
        let (a, b) = hopf_link(64);
        let lk64 = gauss_linking(&a, &b).unwrap();
        let lk128 = gauss_linking(&a.refined(), &b.refined()).unwrap();
        assert!((lk64 - lk128).abs() < 1e-6, "{lk64} vs {lk128}");
    }

    #[test]
    fn thread_counts_agree() {
        let (a, b) = hopf_link(128);
        let l1 = gauss_linking_threads(&a, &b, 1).unwrap();
        let l4 = gauss_linking_threads(&a, &b, 4).unwrap();
        assert_eq!(l1.to_bits(), l4.to_bits());
    }
}
