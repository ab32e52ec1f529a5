//! The Heisenberg group ℍ_n as a concrete structure on ℝ^{2n+1}: group law,
//! Korányi metric, contact form, horizontal frames, dilations, and the
//! Euclidean-vs-Korányi comparison scan.
//!
//! Coordinates are `(p_1, …, p_2n, p_{2n+1}) = (z, t)` with the complex pair
//! `z_j = (p_{2j-1}, p_{2j})` and the vertical coordinate `t = p_{2n+1}`.
//!
//! Conventions. The group law is
//! `(z,t)·(z',t') = (z+z', t + t' + 2 Im Σ conj(z_j) z'_j)`, the unique
//! convention under which the contact form
//! `α = dt + 2 Σ (p_{2j} dp_{2j-1} - p_{2j-1} dp_{2j})` is left invariant —
//! so that curves with α-horizontal velocity are exactly the Lipschitz
//! curves of the metric. The Korányi distance is the gauge of the group
//! difference, `d(p,q) = ‖q⁻¹·p‖` with `‖(z,t)‖ = (|z|⁴ + t²)^{1/4}`: it is
//! exactly left-invariant and satisfies the triangle inequality exactly
//! (Cygan's inequality). The horizontal frame is the kernel basis of α:
//! `X_j = ∂_{2j-1} - 2 p_{2j} ∂_t`, `Y_j = ∂_{2j} + 2 p_{2j-1} ∂_t`.

use crate::error::{Error, Result};
use crate::par;
use crate::rng;

/// A point of ℍ_n, stored as its 2n+1 global coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergPoint {
    n: usize,
    coords: Vec<f64>,
}

impl HeisenbergPoint {
    pub fn new(n: usize, coords: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("group index n must be >= 1"));
        }
        if coords.len() != 2 * n + 1 {
            return Err(Error::DimensionMismatch { expected: 2 * n + 1, got: coords.len() });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("coordinates must be finite"));
        }
        Ok(HeisenbergPoint { n, coords })
    }

    pub fn origin(n: usize) -> Self {
        HeisenbergPoint { n, coords: vec![0.0; 2 * n + 1] }
    }

    /// Convenience constructor for ℍ_1.
    pub fn h1(x: f64, y: f64, t: f64) -> Self {
        HeisenbergPoint { n: 1, coords: vec![x, y, t] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The horizontal coordinates (p_1, …, p_2n).
    pub fn z(&self) -> &[f64] {
        &self.coords[..2 * self.n]
    }

    /// The vertical coordinate t = p_{2n+1}.
    pub fn t(&self) -> f64 {
        self.coords[2 * self.n]
    }

    pub fn euclid_norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

fn check_same_group(p: &HeisenbergPoint, q: &HeisenbergPoint) -> Result<()> {
    if p.n != q.n {
        return Err(Error::DimensionMismatch { expected: 2 * p.n + 1, got: 2 * q.n + 1 });
    }
    Ok(())
}

/// Group product `p · q`.
pub fn group_mul(p: &HeisenbergPoint, q: &HeisenbergPoint) -> Result<HeisenbergPoint> {
    check_same_group(p, q)?;
    let n = p.n;
    let mut coords = vec![0.0; 2 * n + 1];
    for i in 0..2 * n {
        coords[i] = p.coords[i] + q.coords[i];
    }
    // 2 Im Σ conj(z_j) z'_j = 2 Σ (x_j y'_j - y_j x'_j)
    let mut twist = 0.0;
    for j in 0..n {
        let (x, y) = (p.coords[2 * j], p.coords[2 * j + 1]);
        let (xq, yq) = (q.coords[2 * j], q.coords[2 * j + 1]);
        twist += x * yq - y * xq;
    }
    coords[2 * n] = p.t() + q.t() + 2.0 * twist;
    Ok(HeisenbergPoint { n, coords })
}

/// Group inverse `p⁻¹ = (-z, -t)`.
pub fn group_inv(p: &HeisenbergPoint) -> HeisenbergPoint {
    HeisenbergPoint { n: p.n, coords: p.coords.iter().map(|c| -c).collect() }
}

/// The vertical coordinate of `q⁻¹·p`, evaluated in a form that is exactly
/// antisymmetric in `(p, q)` under IEEE arithmetic.
fn group_twist(p: &HeisenbergPoint, q: &HeisenbergPoint) -> f64 {
    let n = p.n;
    let mut s = 0.0;
    for j in 0..n {
        let (xp, yp) = (p.coords[2 * j], p.coords[2 * j + 1]);
        let (xq, yq) = (q.coords[2 * j], q.coords[2 * j + 1]);
        s += xp * yq - yp * xq;
    }
    (p.t() - q.t()) + 2.0 * s
}

/// Korányi distance `d(p,q) = (|z_p - z_q|⁴ + twist²)^{1/4}`.
///
/// `twist` is the vertical part of the group difference `q⁻¹·p`, so the
/// distance is exactly left-invariant; symmetry is exact because `twist`
/// flips sign exactly when the arguments are swapped.
pub fn koranyi_dist(p: &HeisenbergPoint, q: &HeisenbergPoint) -> Result<f64> {
    check_same_group(p, q)?;
    let mut z2 = 0.0;
    for i in 0..2 * p.n {
        let d = p.coords[i] - q.coords[i];
        z2 += d * d;
    }
    let tw = group_twist(p, q);
    Ok((z2 * z2 + tw * tw).sqrt().sqrt())
}

/// Korányi gauge `‖p‖ = d(p, 0)`.
pub fn koranyi_norm(p: &HeisenbergPoint) -> f64 {
    koranyi_dist(p, &HeisenbergPoint::origin(p.n)).expect("same group")
}

/// Carnot dilation `δ_r(z, t) = (r z, r² t)`, a similarity of the Korányi
/// metric: `d(δ_r p, δ_r q) = r · d(p, q)`.
pub fn dilation(r: f64, p: &HeisenbergPoint) -> Result<HeisenbergPoint> {
    if !(r > 0.0) {
        return Err(Error::invalid(format!("dilation factor must be positive, got {r}")));
    }
    let n = p.n;
    let mut coords: Vec<f64> = p.coords.iter().map(|c| r * c).collect();
    coords[2 * n] = r * r * p.t();
    Ok(HeisenbergPoint { n, coords })
}

/// A covector on ℝ^N, paired with tangent vectors by the Euclidean pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct Covector {
    components: Vec<f64>,
}

impl Covector {
    pub fn new(components: Vec<f64>) -> Self {
        Covector { components }
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn base_dim(&self) -> usize {
        self.components.len()
    }

    /// Pairing ⟨this, v⟩.
    pub fn pair(&self, v: &[f64]) -> Result<f64> {
        if v.len() != self.components.len() {
            return Err(Error::DimensionMismatch { expected: self.components.len(), got: v.len() });
        }
        Ok(self.components.iter().zip(v).map(|(a, b)| a * b).sum())
    }
}

/// The contact form α evaluated at `p`:
/// component 2j-1 is `2 p_{2j}`, component 2j is `-2 p_{2j-1}`, and the
/// vertical component is 1.
pub fn contact_form_at(p: &HeisenbergPoint) -> Covector {
    let n = p.n;
    let mut c = vec![0.0; 2 * n + 1];
    for j in 0..n {
        c[2 * j] = 2.0 * p.coords[2 * j + 1];
        c[2 * j + 1] = -2.0 * p.coords[2 * j];
    }
    c[2 * n] = 1.0;
    Covector { components: c }
}

/// Basis of the horizontal plane ker α at a point.
#[derive(Clone, Debug)]
pub struct HorizontalFrame {
    pub point: HeisenbergPoint,
    pub vectors: Vec<Vec<f64>>,
}

/// The 2n-vector kernel basis of α at `p`:
/// `X_j = e_{2j-1} - 2 p_{2j} e_t` and `Y_j = e_{2j} + 2 p_{2j-1} e_t`.
/// The pairing `α_p(X_j) = α_p(Y_j) = 0` holds exactly in f64.
pub fn horizontal_frame(p: &HeisenbergPoint) -> HorizontalFrame {
    let n = p.n;
    let dim = 2 * n + 1;
    let mut vectors = Vec::with_capacity(2 * n);
    for j in 0..n {
        let mut x = vec![0.0; dim];
        x[2 * j] = 1.0;
        x[2 * n] = -2.0 * p.coords[2 * j + 1];
        vectors.push(x);
        let mut y = vec![0.0; dim];
        y[2 * j + 1] = 1.0;
        y[2 * n] = 2.0 * p.coords[2 * j];
        vectors.push(y);
    }
    HorizontalFrame { point: p.clone(), vectors }
}

/// Whether `v` is horizontal at `p` up to the scale-free tolerance
/// `|α_p(v)| ≤ tol · (1 + |v|)`.
pub fn is_horizontal_velocity(p: &HeisenbergPoint, v: &[f64], tol: f64) -> Result<bool> {
    if v.len() != 2 * p.n + 1 {
        return Err(Error::DimensionMismatch { expected: 2 * p.n + 1, got: v.len() });
    }
    if tol < 0.0 {
        return Err(Error::invalid("tolerance must be nonnegative"));
    }
    let alpha = contact_form_at(p).pair(v)?;
    let vnorm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    Ok(alpha.abs() <= tol * (1.0 + vnorm))
}

/// Result of a comparison-ratio scan over random point pairs.
#[derive(Clone, Copy, Debug)]
pub struct ComparisonScan {
    /// max of |p-q| / ((|p| + |q| + 1) · d_H(p,q))
    pub max_euclid_ratio: f64,
    /// max of d_H(p,q) / ((|p|^{1/2} + |q|^{1/2} + 1) · |p-q|^{1/2})
    pub max_koranyi_ratio: f64,
    /// pairs that entered the maxima (degenerate p = q pairs are skipped)
    pub pairs_used: usize,
}

/// Empirical extremal ratios comparing the Euclidean and Korányi metrics
/// over `sample_count` uniform pairs in the Euclidean ball of the given
/// radius in ℝ³ (that is, ℍ_1). Both maxima stay bounded as the sample
/// count grows with the radius held fixed.
pub fn comparison_ratio_scan(sample_count: usize, radius: f64, seed: u64) -> Result<ComparisonScan> {
    comparison_ratio_scan_h(1, sample_count, radius, seed, 1)
}

/// As [`comparison_ratio_scan`], with explicit group index and thread cap.
pub fn comparison_ratio_scan_h(
    n: usize,
    sample_count: usize,
    radius: f64,
    seed: u64,
    threads: usize,
) -> Result<ComparisonScan> {
    if sample_count < 1 {
        return Err(Error::invalid("sample_count must be >= 1"));
    }
    if !(radius > 0.0) {
        return Err(Error::invalid("radius must be positive"));
    }
    let dim = 2 * n + 1;
    // Pre-draw pairs sequentially so that the sample set for count N is a
    // prefix of the set for any larger count: doubling the budget can only
    // grow the maxima.
    let mut rng = rng::seeded(seed);
    let pairs: Vec<(HeisenbergPoint, HeisenbergPoint)> = (0..sample_count)
        .map(|_| {
            let a = rng::ball_point(&mut rng, dim, radius);
            let b = rng::ball_point(&mut rng, dim, radius);
            (
                HeisenbergPoint { n, coords: a },
                HeisenbergPoint { n, coords: b },
            )
        })
        .collect();
    let ratios = |range: std::ops::Range<usize>| -> (f64, f64, usize) {
        let mut m1 = f64::NEG_INFINITY;
        let mut m2 = f64::NEG_INFINITY;
        let mut used = 0usize;
        for i in range {
            let (p, q) = &pairs[i];
            let de: f64 = p
                .coords
                .iter()
                .zip(&q.coords)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if de == 0.0 {
                continue;
            }
            let dh = koranyi_dist(p, q).expect("same group");
            let (np, nq) = (p.euclid_norm(), q.euclid_norm());
            m1 = m1.max(de / ((np + nq + 1.0) * dh));
            m2 = m2.max(dh / ((np.sqrt() + nq.sqrt() + 1.0) * de.sqrt()));
            used += 1;
        }
        (m1, m2, used)
    };
    let parts = par::map_chunks(sample_count, threads, ratios);
    let mut m1 = f64::NEG_INFINITY;
    let mut m2 = f64::NEG_INFINITY;
    let mut used = 0usize;
    for (a, b, u) in parts {
        m1 = m1.max(a);
        m2 = m2.max(b);
        used += u;
    }
    if used == 0 {
        return Err(Error::degenerate("all sampled pairs were identical points"));
    }
    Ok(ComparisonScan { max_euclid_ratio: m1, max_koranyi_ratio: m2, pairs_used: used })
}
