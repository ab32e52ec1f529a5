//! Piecewise-linear curves and their CSV serialization.

use crate::error::{Error, Result};

/// An oriented polygonal curve in ℝ^dim (dim 3 or 4 in practice).
#[derive(Clone, Debug)]
pub struct PlCurve {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub closed: bool,
}

impl PlCurve {
    pub fn new(dim: usize, points: Vec<Vec<f64>>, closed: bool) -> Result<PlCurve> {
        if points.len() < 2 {
            return Err(Error::invalid("a curve needs at least two points"));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
        }
        let n = points.len();
        let seg_count = if closed { n } else { n - 1 };
        for i in 0..seg_count {
            let a = &points[i];
            let b = &points[(i + 1) % n];
            let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
            if d == 0.0 {
                return Err(Error::degenerate(format!("consecutive points {i} coincide")));
            }
        }
        Ok(PlCurve { dim, points, closed })
    }

    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len() - 1
        }
    }

    pub fn segment(&self, i: usize) -> (&[f64], &[f64]) {
        let n = self.points.len();
        (&self.points[i], &self.points[(i + 1) % n])
    }

    /// Split every segment at its midpoint.
    pub fn refined(&self) -> PlCurve {
        let n = self.points.len();
        let mut points = Vec::with_capacity(2 * n);
        for i in 0..self.segment_count() {
            let (a, b) = (&self.points[i], &self.points[(i + 1) % n]);
            points.push(a.clone());
            points.push(a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect());
        }
        if !self.closed {
            points.push(self.points[n - 1].clone());
        }
        PlCurve { dim: self.dim, points, closed: self.closed }
    }

    /// Reverse the orientation.
    pub fn reversed(&self) -> PlCurve {
        let mut points = self.points.clone();
        points.reverse();
        PlCurve { dim: self.dim, points, closed: self.closed }
    }

    /// Apply a pointwise transform.
    pub fn map_points(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> PlCurve {
        PlCurve {
            dim: self.dim,
            points: self.points.iter().map(|p| f(p)).collect(),
            closed: self.closed,
        }
    }

    /// Minimum distance between the segments of two curves (same dimension).
    pub fn min_distance(&self, other: &PlCurve) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut best = f64::INFINITY;
        for i in 0..self.segment_count() {
            let (a1, a2) = self.segment(i);
            for j in 0..other.segment_count() {
                let (b1, b2) = other.segment(j);
                best = best.min(segment_distance(a1, a2, b1, b2));
            }
        }
        Ok(best)
    }

    /// CSV with a `# closed=<bool>` header comment and one point per line.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# closed={}\n", self.closed);
        for p in &self.points {
            let line: Vec<String> = p.iter().map(|x| format!("{x:.16e}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<PlCurve> {
        let mut closed = false;
        let mut points: Vec<Vec<f64>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("closed=") {
                    closed = v
                        .trim()
                        .parse::<bool>()
                        .map_err(|_| Error::Parse(format!("bad closed flag: {v}")))?;
                }
                continue;
            }
            let p: Vec<f64> = line
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            points.push(p);
        }
        if points.is_empty() {
            return Err(Error::Parse("no points in curve CSV".into()));
        }
        let dim = points[0].len();
        if !(3..=4).contains(&dim) {
            return Err(Error::Parse(format!("curves must have 3 or 4 columns, got {dim}")));
        }
        PlCurve::new(dim, points, closed)
    }
}

/// Closest distance between segments [a1, a2] and [b1, b2].
pub fn segment_distance(a1: &[f64], a2: &[f64], b1: &[f64], b2: &[f64]) -> f64 {
    let dim = a1.len();
    let d1: Vec<f64> = (0..dim).map(|i| a2[i] - a1[i]).collect();
    let d2: Vec<f64> = (0..dim).map(|i| b2[i] - b1[i]).collect();
    let r: Vec<f64> = (0..dim).map(|i| a1[i] - b1[i]).collect();
    let dot = |u: &[f64], v: &[f64]| -> f64 { u.iter().zip(v).map(|(x, y)| x * y).sum() };
    let a = dot(&d1, &d1);
    let e = dot(&d2, &d2);
    let f = dot(&d2, &r);
    let c = dot(&d1, &r);
    let b = dot(&d1, &d2);
    let denom = a * e - b * b;
    let mut s = if denom.abs() > 1e-300 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
    let mut t = if e > 1e-300 { ((b * s + f) / e).clamp(0.0, 1.0) } else { 0.0 };
    // re-clamp s for the clamped t
    s = if a > 1e-300 { ((b * t - c) / a).clamp(0.0, 1.0) } else { 0.0 };
    t = if e > 1e-300 { ((b * s + f) / e).clamp(0.0, 1.0) } else { 0.0 };
    let mut d = 0.0;
    for i in 0..dim {
        let diff = (a1[i] + s * d1[i]) - (b1[i] + t * d2[i]);
        d += diff * diff;
    }
    d.sqrt()
}

/// Planar circle of radius `r` in the plane spanned by `u`, `v` around
/// `center`, with `n` segments.
pub fn circle_curve(center: &[f64; 3], u: &[f64; 3], v: &[f64; 3], r: f64, n: usize) -> PlCurve {
    let points = (0..n)
        .map(|i| {
            let th = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            (0..3)
                .map(|c| center[c] + r * (th.cos() * u[c] + th.sin() * v[c]))
                .collect()
        })
        .collect();
    PlCurve::new(3, points, true).expect("regular polygon")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_input() {
        assert!(PlCurve::new(3, vec![vec![0.0; 3]], true).is_err());
        let dup = vec![vec![0.0; 3], vec![0.0; 3], vec![1.0, 0.0, 0.0]];
        assert!(PlCurve::new(3, dup, true).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let c = circle_curve(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], 1.0, 16);
        let text = c.to_csv();
        let back = PlCurve::from_csv(&text).unwrap();
        assert!(back.closed);
        assert_eq!(back.points.len(), 16);
        for (a, b) in c.points.iter().zip(&back.points) {
            for (x, y) in a.iter().zip(b) {
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn segment_distance_basics() {
        let d = segment_distance(
            &[0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[1.0, 1.0, 0.0],
        );
        assert!((d - 1.0).abs() < 1e-14);
        let d = segment_distance(
            &[0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0],
            &[2.0, 0.0, 1.0],
            &[3.0, 0.0, 1.0],
        );
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn refine_doubles_segments() {
        let c = circle_curve(&[0.0; 3], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], 1.0, 8);
        assert_eq!(c.refined().segment_count(), 16);
    }
}
