//! Fiber extraction for sampled maps 𝕊³ → 𝕊²: the preimage of a regular
//! value is traced through the tetrahedral mesh as the common zero set of
//! two affine constraint fields per tetrahedron.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{det, solve, Mat};
use crate::linking::PlCurve;
use crate::mesh::SphereMesh;

/// A map 𝕊³ → 𝕊² given by unit values at mesh vertices; within tetrahedra
/// the map is the normalized linear interpolant.
#[derive(Clone, Debug)]
pub struct SphereMapSample {
    pub mesh: SphereMesh,
    pub values: Vec<Vec<f64>>,
}

/// Sample a target-sphere-valued map at the mesh vertices.
pub fn sample_sphere_map(
    mesh: &SphereMesh,
    f: impl Fn(&[f64]) -> Vec<f64>,
) -> Result<SphereMapSample> {
    if mesh.k != 3 {
        return Err(Error::invalid("sphere map samples need a 3-sphere mesh"));
    }
    let mut values = Vec::with_capacity(mesh.vertices.len());
    for v in &mesh.vertices {
        let y = f(v);
        if y.len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: y.len() });
        }
        let n: f64 = y.iter().map(|c| c * c).sum::<f64>();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("vertex value norm² {n} is off the 2-sphere")));
        }
        values.push(y);
    }
    Ok(SphereMapSample { mesh: mesh.clone(), values })
}

impl SphereMapSample {
    /// Largest within-tetrahedron value spread.
    pub fn max_value_spread(&self) -> f64 {
        let mut worst = 0.0f64;
        for tet in &self.mesh.simplices {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let d: f64 = self.values[tet[i]]
                        .iter()
                        .zip(&self.values[tet[j]])
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt();
                    worst = worst.max(d);
                }
            }
        }
        worst
    }
}

/// Orthonormal basis (a, b) of the plane orthogonal to unit p, with
/// (a, b, p) right-handed.
fn orthobasis(p: &[f64]) -> ([f64; 3], [f64; 3]) {
    let seed = if p[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let mut a = [
        seed[1] * p[2] - seed[2] * p[1],
        seed[2] * p[0] - seed[0] * p[2],
        seed[0] * p[1] - seed[1] * p[0],
    ];
    let na = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    for c in &mut a {
        *c /= na;
    }
    let b = [
        p[1] * a[2] - p[2] * a[1],
        p[2] * a[0] - p[0] * a[2],
        p[0] * a[1] - p[1] * a[0],
    ];
    (a, b)
}

/// Hit point of the zero set on one face, in face-sorted vertex order.
fn face_hit(
    sample: &SphereMapSample,
    face: &[usize; 3],
    a: &[f64; 3],
    b: &[f64; 3],
    p: &[f64],
) -> Option<Vec<f64>> {
    let f = |vi: usize, dir: &[f64; 3]| -> f64 {
        sample.values[vi].iter().zip(dir).map(|(x, y)| x * y).sum()
    };
    let f1 = [f(face[0], a), f(face[1], a), f(face[2], a)];
    let f2 = [f(face[0], b), f(face[1], b), f(face[2], b)];
    let m = Mat::from_rows(&[
        vec![f1[1] - f1[0], f1[2] - f1[0]],
        vec![f2[1] - f2[0], f2[2] - f2[0]],
    ]);
    if det(&m).abs() < 1e-300 {
        return None;
    }
    let lam = solve(&m, &[-f1[0], -f2[0]])?;
    let (l1, l2) = (lam[0], lam[1]);
    let l0 = 1.0 - l1 - l2;
    let tol = -1e-10;
    if l0 < tol || l1 < tol || l2 < tol {
        return None;
    }
    // positive-side check: the interpolated value must point towards +p
    let g: f64 = (0..3)
        .map(|c| {
            let v = l0 * sample.values[face[0]][c]
                + l1 * sample.values[face[1]][c]
                + l2 * sample.values[face[2]][c];
            v * p[c]
        })
        .sum();
    if g <= 0.0 {
        return None;
    }
    let x: Vec<f64> = (0..4)
        .map(|c| {
            l0 * sample.mesh.vertices[face[0]][c]
                + l1 * sample.mesh.vertices[face[1]][c]
                + l2 * sample.mesh.vertices[face[2]][c]
        })
        .collect();
    Some(x)
}

/// In-tet gradient of a linear vertex field, as a vector in the tet's
/// affine hull in ℝ⁴.
fn tet_gradient(mesh: &SphereMesh, tet: &[usize], vals: [f64; 4]) -> Vec<f64> {
    let e: Vec<Vec<f64>> = (1..4)
        .map(|i| {
            (0..4)
                .map(|c| mesh.vertices[tet[i]][c] - mesh.vertices[tet[0]][c])
                .collect()
        })
        .collect();
    let mut gram = Mat::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            gram.set(i, j, e[i].iter().zip(&e[j]).map(|(x, y)| x * y).sum());
        }
    }
    let rhs: Vec<f64> = (0..3).map(|i| vals[i + 1] - vals[0]).collect();
    let c = solve(&gram, &rhs).unwrap_or(vec![0.0; 3]);
    (0..4)
        .map(|comp| (0..3).map(|i| c[i] * e[i][comp]).sum())
        .collect()
}

/// Extract the preimage of a regular value `p` as closed polygonal curves
/// on 𝕊³, oriented by the preimage convention: (x, τ, ∇f₁, ∇f₂) is a
/// positive frame of ℝ⁴ along the fiber.
pub fn extract_fiber(sample: &SphereMapSample, p: &[f64]) -> Result<Vec<PlCurve>> {
    if p.len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: p.len() });
    }
    let pn: f64 = p.iter().map(|c| c * c).sum::<f64>();
    if (pn - 1.0).abs() > 1e-9 {
        return Err(Error::invalid("query value must be a unit vector"));
    }
    for v in &sample.values {
        let d: f64 = v.iter().zip(p).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        if d < 1e-6 {
            return Err(Error::PerturbAndRetry(format!(
                "query value within {d:.2e} of a vertex value"
            )));
        }
    }
    // |interpolant| >= 1 - spread, so the normalized map (and the sign
    // test against p) is well defined exactly when the spread stays
    // below 1; meshes with spread around 0.5 or less give clean fibers.
    let spread = sample.max_value_spread();
    if spread >= 1.0 {
        return Err(Error::invalid(format!(
            "value spread {spread:.3} too coarse; refine the mesh"
        )));
    }
    let (a, b) = orthobasis(p);

    // face-sorted hit points, keyed by the sorted face triple
    let mut hits: BTreeMap<[usize; 3], Vec<f64>> = BTreeMap::new();
    // per tet: the (up to two) crossed faces
    let mut tet_faces: Vec<Vec<[usize; 3]>> = vec![Vec::new(); sample.mesh.simplices.len()];
    for (ti, tet) in sample.mesh.simplices.iter().enumerate() {
        for omit in 0..4 {
            let mut face = [0usize; 3];
            let mut w = 0;
            for (i, &v) in tet.iter().enumerate() {
                if i != omit {
                    face[w] = v;
                    w += 1;
                }
            }
            face.sort_unstable();
            if let Some(x) = face_hit(sample, &face, &a, &b, p) {
                hits.insert(face, x);
                tet_faces[ti].push(face);
            }
        }
        if tet_faces[ti].len() == 1 || tet_faces[ti].len() > 2 {
            return Err(Error::PerturbAndRetry(format!(
                "tetrahedron {ti} crossed in {} faces",
                tet_faces[ti].len()
            )));
        }
    }

    // adjacency: face -> tets crossing it
    let mut face_tets: BTreeMap<[usize; 3], Vec<usize>> = BTreeMap::new();
    for (ti, faces) in tet_faces.iter().enumerate() {
        for f in faces {
            face_tets.entry(*f).or_default().push(ti);
        }
    }

    let mut used = vec![false; sample.mesh.simplices.len()];
    let mut curves = Vec::new();
    for start in 0..sample.mesh.simplices.len() {
        if used[start] || tet_faces[start].is_empty() {
            continue;
        }
        // walk the chain of crossed tets
        let mut points: Vec<Vec<f64>> = Vec::new();
        let mut cur = start;
        let mut enter_face = tet_faces[start][0];
        points.push(hits[&enter_face].clone());
        loop {
            used[cur] = true;
            let faces = &tet_faces[cur];
            let exit = if faces[0] == enter_face { faces[1] } else { faces[0] };
            points.push(hits[&exit].clone());
            let adj = &face_tets[&exit];
            let next = adj.iter().copied().find(|&t| t != cur);
            match next {
                Some(t) if t == start => break,
                Some(t) if !used[t] => {
                    enter_face = exit;
                    cur = t;
                }
                _ => break,
            }
        }
        // drop the repeated closing point
        if points.len() > 2 {
            let first = points[0].clone();
            if let Some(last) = points.last() {
                let d: f64 =
                    first.iter().zip(last).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
                if d < 1e-24 {
                    points.pop();
                }
            }
        }
        if points.len() < 3 {
            continue;
        }
        // orient by the preimage convention at the starting tet
        let tet = &sample.mesh.simplices[start];
        let fa = [
            sample.values[tet[0]].iter().zip(&a).map(|(x, y)| x * y).sum::<f64>(),
            sample.values[tet[1]].iter().zip(&a).map(|(x, y)| x * y).sum::<f64>(),
            sample.values[tet[2]].iter().zip(&a).map(|(x, y)| x * y).sum::<f64>(),
            sample.values[tet[3]].iter().zip(&a).map(|(x, y)| x * y).sum::<f64>(),
        ];
        let fb = [
            sample.values[tet[0]].iter().zip(&b).map(|(x, y)| x * y).sum::<f64>(),
            sample.values[tet[1]].iter().zip(&b).map(|(x, y)| x * y).sum::<f64>(),
            sample.values[tet[2]].iter().zip(&b).map(|(x, y)| x * y).sum::<f64>(),
            sample.values[tet[3]].iter().zip(&b).map(|(x, y)| x * y).sum::<f64>(),
        ];
        let g1 = tet_gradient(&sample.mesh, tet, fa);
        let g2 = tet_gradient(&sample.mesh, tet, fb);
        let tau: Vec<f64> = points[1].iter().zip(&points[0]).map(|(x, y)| x - y).collect();
        let mid: Vec<f64> =
            points[1].iter().zip(&points[0]).map(|(x, y)| 0.5 * (x + y)).collect();
        let frame = Mat::from_rows(&[mid, tau, g1, g2]);
        if det(&frame) < 0.0 {
            points.reverse();
        }
        // project points back to the unit sphere
        for pt in &mut points {
            let n: f64 = pt.iter().map(|c| c * c).sum::<f64>().sqrt();
            for c in pt.iter_mut() {
                *c /= n;
            }
        }
        curves.push(PlCurve::new(4, points, true)?);
    }
    Ok(curves)
}

/// Extraction with automatic retry: level-set queries that graze mesh
/// edges or vertex values are re-run with a small seeded jitter of `p`.
pub fn extract_fiber_robust(
    sample: &SphereMapSample,
    p: &[f64],
    tries: usize,
) -> Result<Vec<PlCurve>> {
    let mut rng = crate::rng::seeded(0x5eed);
    let mut query: Vec<f64> = p.to_vec();
    let mut last = None;
    for _ in 0..tries.max(1) {
        match extract_fiber(sample, &query) {
            Ok(c) => return Ok(c),
            Err(Error::PerturbAndRetry(msg)) => {
                last = Some(Error::PerturbAndRetry(msg));
                use rand::Rng;
                let mut q: Vec<f64> =
                    p.iter().map(|c| c + rng.random_range(-1e-3..1e-3)).collect();
                let n: f64 = q.iter().map(|c| c * c).sum::<f64>().sqrt();
                for c in &mut q {
                    *c /= n;
                }
                query = q;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::degenerate("fiber extraction failed")))
}
