//! Oriented triangulations of 𝕊^k for k = 1, 2, 3.
//!
//! Simplices are oriented so that the matrix with the vertex coordinates as
//! rows has positive determinant — for a star-shaped-around-the-origin mesh
//! this is the coherent outward orientation, checked by
//! [`SphereMesh::check_closed_oriented`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{det, Mat};

#[derive(Clone, Debug)]
pub struct SphereMesh {
    pub k: usize,
    /// Unit vectors in ℝ^{k+1}.
    pub vertices: Vec<Vec<f64>>,
    /// Oriented (k+1)-tuples of vertex indices.
    pub simplices: Vec<Vec<usize>>,
    pub refinement_level: usize,
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v {
        *x /= n;
    }
}

fn vertex_det(vertices: &[Vec<f64>], simplex: &[usize]) -> f64 {
    let d = simplex.len();
    let mut m = Mat::zeros(d, d);
    for (r, &vi) in simplex.iter().enumerate() {
        for c in 0..d {
            m.set(r, c, vertices[vi][c]);
        }
    }
    det(&m)
}

/// Reorder (swap one pair) so the vertex-coordinate determinant is positive.
fn orient_outward(vertices: &[Vec<f64>], simplex: &mut [usize]) {
    if vertex_det(vertices, simplex) < 0.0 {
        simplex.swap(0, 1);
    }
}

impl SphereMesh {
    /// Base meshes: regular triangle on 𝕊¹, icosahedron on 𝕊², 16-cell
    /// boundary on 𝕊³; then `level` rounds of edge-midpoint refinement with
    /// re-projection.
    pub fn unit_sphere(k: usize, level: usize) -> Result<SphereMesh> {
        let mut mesh = match k {
            1 => circle_base(),
            2 => icosahedron(),
            3 => cross_polytope_boundary(),
            _ => return Err(Error::Unsupported(format!("sphere meshes of dimension {k}"))),
        };
        for _ in 0..level {
            mesh = mesh.refined();
        }
        Ok(mesh)
    }

    pub fn ambient_dim(&self) -> usize {
        self.k + 1
    }

    /// One round of edge-midpoint subdivision with projection to the sphere.
    pub fn refined(&self) -> SphereMesh {
        let mut vertices = self.vertices.clone();
        let mut midpoint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut mid = |a: usize, b: usize, vertices: &mut Vec<Vec<f64>>| -> usize {
            let key = (a.min(b), a.max(b));
            match midpoint.get(&key) {
                Some(&i) => i,
                None => {
                    let mut v: Vec<f64> = vertices[a]
                        .iter()
                        .zip(&vertices[b])
                        .map(|(x, y)| 0.5 * (x + y))
                        .collect();
                    normalize(&mut v);
                    vertices.push(v);
                    let i = vertices.len() - 1;
                    midpoint.insert(key, i);
                    i
                }
            }
        };
        let mut simplices = Vec::new();
        match self.k {
            1 => {
                for e in &self.simplices {
                    let m = mid(e[0], e[1], &mut vertices);
                    simplices.push(vec![e[0], m]);
                    simplices.push(vec![m, e[1]]);
                }
            }
            2 => {
                for t in &self.simplices {
                    let (a, b, c) = (t[0], t[1], t[2]);
                    let ab = mid(a, b, &mut vertices);
                    let bc = mid(b, c, &mut vertices);
                    let ca = mid(c, a, &mut vertices);
                    simplices.push(vec![a, ab, ca]);
                    simplices.push(vec![b, bc, ab]);
                    simplices.push(vec![c, ca, bc]);
                    simplices.push(vec![ab, bc, ca]);
                }
            }
            3 => {
                for t in &self.simplices {
                    let (v0, v1, v2, v3) = (t[0], t[1], t[2], t[3]);
                    let m01 = mid(v0, v1, &mut vertices);
                    let m02 = mid(v0, v2, &mut vertices);
                    let m03 = mid(v0, v3, &mut vertices);
                    let m12 = mid(v1, v2, &mut vertices);
                    let m13 = mid(v1, v3, &mut vertices);
                    let m23 = mid(v2, v3, &mut vertices);
                    // red refinement: 4 corner tets + central octahedron
                    // split along its shortest diagonal (the split is
                    // interior to the parent, so face coherence with
                    // neighbors is unaffected)
                    for tet in [
                        vec![v0, m01, m02, m03],
                        vec![m01, v1, m12, m13],
                        vec![m02, m12, v2, m23],
                        vec![m03, m13, m23, v3],
                    ] {
                        simplices.push(tet);
                    }
                    let len2 = |a: usize, b: usize| -> f64 {
                        vertices[a]
                            .iter()
                            .zip(&vertices[b])
                            .map(|(x, y)| (x - y) * (x - y))
                            .sum()
                    };
                    // candidate diagonals with their equatorial cycles
                    let options = [
                        ((m01, m23), [m02, m12, m13, m03]),
                        ((m02, m13), [m01, m12, m23, m03]),
                        ((m03, m12), [m01, m13, m23, m02]),
                    ];
                    let best = options
                        .iter()
                        .min_by(|x, y| {
                            len2(x.0 .0, x.0 .1)
                                .partial_cmp(&len2(y.0 .0, y.0 .1))
                                .unwrap()
                        })
                        .unwrap();
                    let ((da, db), eq) = (best.0, best.1);
                    for i in 0..4 {
                        simplices.push(vec![da, db, eq[i], eq[(i + 1) % 4]]);
                    }
                }
            }
            _ => unreachable!(),
        }
        for s in &mut simplices {
            orient_outward(&vertices, s);
        }
        SphereMesh { k: self.k, vertices, simplices, refinement_level: self.refinement_level + 1 }
    }

    /// The same mesh with every simplex orientation reversed.
    pub fn reversed(&self) -> SphereMesh {
        let mut simplices = self.simplices.clone();
        for s in &mut simplices {
            s.swap(0, 1);
        }
        SphereMesh { simplices, ..self.clone() }
    }

    /// Counts of (vertices, edges, top simplices).
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut edges: std::collections::BTreeSet<(usize, usize)> = Default::default();
        for s in &self.simplices {
            for i in 0..s.len() {
                for j in (i + 1)..s.len() {
                    edges.insert((s[i].min(s[j]), s[i].max(s[j])));
                }
            }
        }
        (self.vertices.len(), edges.len(), self.simplices.len())
    }

    /// V - E + F for k = 2 meshes.
    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.counts();
        v as i64 - e as i64 + f as i64
    }

    /// Verify the closed-oriented invariant: every (k-1)-face is shared by
    /// exactly two simplices with opposite induced orientations, and all
    /// vertices are unit length.
    pub fn check_closed_oriented(&self) -> Result<()> {
        for v in &self.vertices {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (n - 1.0).abs() > 1e-14 {
                return Err(Error::invalid(format!("vertex norm {n} off the sphere")));
            }
        }
        let mut faces: BTreeMap<Vec<usize>, Vec<i8>> = BTreeMap::new();
        for s in &self.simplices {
            for omit in 0..s.len() {
                let mut face: Vec<usize> =
                    s.iter().enumerate().filter(|(i, _)| *i != omit).map(|(_, &v)| v).collect();
                // parity of sorting the face tuple
                let mut parity = if omit % 2 == 0 { 1i8 } else { -1 };
                let m = face.len();
                for i in 0..m {
                    for j in 0..m.saturating_sub(1 + i) {
                        if face[j] > face[j + 1] {
                            face.swap(j, j + 1);
                            parity = -parity;
                        }
                    }
                }
                faces.entry(face).or_default().push(parity);
            }
        }
        for (face, signs) in &faces {
            if signs.len() != 2 || signs[0] + signs[1] != 0 {
                return Err(Error::invalid(format!(
                    "face {face:?} has incoherent incidences {signs:?}"
                )));
            }
        }
        Ok(())
    }

    /// Longest edge length.
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

fn circle_base() -> SphereMesh {
    let m = 3;
    let vertices: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let th = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
            vec![th.cos(), th.sin()]
        })
        .collect();
    let mut simplices: Vec<Vec<usize>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    for s in &mut simplices {
        orient_outward(&vertices, s);
    }
    SphereMesh { k: 1, vertices, simplices, refinement_level: 0 }
}

fn icosahedron() -> SphereMesh {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let vertices: Vec<Vec<f64>> = raw
        .iter()
        .map(|v| {
            let mut v = v.to_vec();
            normalize(&mut v);
            v
        })
        .collect();
    let faces = [
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    let mut simplices: Vec<Vec<usize>> = faces.iter().map(|f| f.to_vec()).collect();
    for s in &mut simplices {
        orient_outward(&vertices, s);
    }
    SphereMesh { k: 2, vertices, simplices, refinement_level: 0 }
}

/// Boundary of the 4-dimensional cross-polytope: 8 vertices ±e_i and the 16
/// tetrahedra picking one of ±e_i per axis.
fn cross_polytope_boundary() -> SphereMesh {
    let mut vertices = Vec::new();
    for i in 0..4 {
        for s in [1.0, -1.0] {
            let mut v = vec![0.0; 4];
            v[i] = s;
            vertices.push(v);
        }
    }
    // vertex index: 2*axis + (0 for +, 1 for -)
    let mut simplices = Vec::new();
    for mask in 0..16usize {
        let tet: Vec<usize> = (0..4).map(|axis| 2 * axis + ((mask >> axis) & 1)).collect();
        simplices.push(tet);
    }
    for s in &mut simplices {
        orient_outward(&vertices, s);
    }
    SphereMesh { k: 3, vertices, simplices, refinement_level: 0 }
}
