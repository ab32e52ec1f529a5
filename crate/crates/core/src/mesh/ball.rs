//! Simplicial meshes of the unit disk B² and ball B³, built by coning sphere
//! meshes to the origin through graded radial layers. Boundary extraction
//! returns the outer sphere mesh with its induced orientation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{det, Mat};

use super::sphere::SphereMesh;

#[derive(Clone, Debug)]
pub struct BallMesh {
    /// Intrinsic dimension k+1 (2 for the disk, 3 for the ball).
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    pub simplices: Vec<Vec<usize>>,
    pub refinement_level: usize,
}

fn edge_det(vertices: &[Vec<f64>], s: &[usize]) -> f64 {
    let d = s.len() - 1;
    let mut m = Mat::zeros(d, d);
    for r in 1..s.len() {
        for c in 0..d {
            m.set(r - 1, c, vertices[s[r]][c] - vertices[s[0]][c]);
        }
    }
    det(&m)
}

fn orient_positive(vertices: &[Vec<f64>], s: &mut [usize]) {
    if edge_det(vertices, s) < 0.0 {
        s.swap(0, 1);
    }
}

impl BallMesh {
    /// Unit ball of the given intrinsic dimension (2 or 3). `level` controls
    /// both the boundary sphere refinement and the number of radial layers.
    pub fn unit_ball(dim: usize, level: usize) -> Result<BallMesh> {
        match dim {
            2 => Ok(disk(level)),
            3 => Ok(ball3(level)),
            _ => Err(Error::Unsupported(format!("ball meshes of dimension {dim}"))),
        }
    }

    /// Extract the boundary: faces incident to exactly one simplex, with the
    /// induced orientation.
    pub fn boundary(&self) -> Result<SphereMesh> {
        let mut faces: BTreeMap<Vec<usize>, (Vec<usize>, i8, usize)> = BTreeMap::new();
        for s in &self.simplices {
            for omit in 0..s.len() {
                let ordered: Vec<usize> =
                    s.iter().enumerate().filter(|(i, _)| *i != omit).map(|(_, &v)| v).collect();
                let omit_sign = if omit % 2 == 0 { 1i8 } else { -1 };
                let mut sorted = ordered.clone();
                sorted.sort_unstable();
                let e = faces.entry(sorted).or_insert((ordered, omit_sign, 0));
                e.2 += 1;
            }
        }
        let mut used: Vec<bool> = vec![false; self.vertices.len()];
        let mut boundary_faces = Vec::new();
        for (_, (ordered, parity, count)) in faces {
            match count {
                1 => {
                    let mut f = ordered;
                    if parity < 0 {
                        f.swap(0, 1);
                    }
                    for &v in &f {
                        used[v] = true;
                    }
                    boundary_faces.push(f);
                }
                2 => {}
                c => return Err(Error::invalid(format!("face incident to {c} simplices"))),
            }
        }
        // compact vertex indices
        let mut remap = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, &u) in used.iter().enumerate() {
            if u {
                remap[i] = vertices.len();
                vertices.push(self.vertices[i].clone());
            }
        }
        for f in &mut boundary_faces {
            for v in f.iter_mut() {
                *v = remap[*v];
            }
        }
        let mesh = SphereMesh {
            k: self.dim - 1,
            vertices,
            simplices: boundary_faces,
            refinement_level: self.refinement_level,
        };
        mesh.check_closed_oriented()?;
        Ok(mesh)
    }

    pub fn max_edge(&self) -> f64 {
        let mut h: f64 = 0.0;
        for s in &self.simplices {
            for i in 0..s.len() {
                for j in (i + 1)..s.len() {
                    let d: f64 = self.vertices[s[i]]
                        .iter()
                        .zip(&self.vertices[s[j]])
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt();
                    h = h.max(d);
                }
            }
        }
        h
    }
}

/// Polar disk mesh: rings of a regular 3·2^level-gon at radii i/L.
fn disk(level: usize) -> BallMesh {
    let m = 3usize << level;
    let layers = (1usize << level).max(1);
    let ring_vertex = |j: usize| -> Vec<f64> {
        let th = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        vec![th.cos(), th.sin()]
    };
    let mut vertices = vec![vec![0.0, 0.0]];
    for ring in 1..=layers {
        let r = ring as f64 / layers as f64;
        for j in 0..m {
            let v = ring_vertex(j);
            vertices.push(vec![r * v[0], r * v[1]]);
        }
    }
    let ring_base = |ring: usize| 1 + (ring - 1) * m;
    let mut simplices = Vec::new();
    for i in 0..m {
        simplices.push(vec![0, ring_base(1) + i, ring_base(1) + (i + 1) % m]);
    }
    for ring in 1..layers {
        let lo = ring_base(ring);
        let hi = ring_base(ring + 1);
        for i in 0..m {
            let j = (i + 1) % m;
            simplices.push(vec![lo + i, hi + i, hi + j]);
            simplices.push(vec![lo + i, hi + j, lo + j]);
        }
    }
    for s in &mut simplices {
        orient_positive(&vertices, s);
    }
    BallMesh { dim: 2, vertices, simplices, refinement_level: level }
}

/// Shelled ball mesh over the icosphere: prisms between consecutive shells
/// split into tetrahedra by the global-vertex-order shuffle, innermost shell
/// coned to the center.
fn ball3(level: usize) -> BallMesh {
    let sphere = SphereMesh::unit_sphere(2, level).expect("icosphere");
    let m = sphere.vertices.len();
    let layers = (1usize << level).max(1);
    let mut vertices = vec![vec![0.0, 0.0, 0.0]];
    for shell in 1..=layers {
        let r = shell as f64 / layers as f64;
        for v in &sphere.vertices {
            vertices.push(v.iter().map(|x| r * x).collect());
        }
    }
    let shell_base = |shell: usize| 1 + (shell - 1) * m;
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    // innermost shell cones to the center
    for t in &sphere.simplices {
        simplices.push(vec![0, shell_base(1) + t[0], shell_base(1) + t[1], shell_base(1) + t[2]]);
    }
    // prisms between shells, split along the global vertex order
    for shell in 1..layers {
        let lo = shell_base(shell);
        let hi = shell_base(shell + 1);
        for t in &sphere.simplices {
            let mut w = t.clone();
            w.sort_unstable();
            let (w0, w1, w2) = (w[0], w[1], w[2]);
            simplices.push(vec![lo + w0, lo + w1, lo + w2, hi + w2]);
            simplices.push(vec![lo + w0, lo + w1, hi + w1, hi + w2]);
            simplices.push(vec![lo + w0, hi + w0, hi + w1, hi + w2]);
        }
    }
    for s in &mut simplices {
        orient_positive(&vertices, s);
    }
    BallMesh { dim: 3, vertices, simplices, refinement_level: level }
}
