//! Grid-sampled maps on tori and cubes.

use crate::error::{Error, Result};
use crate::gallery::{Domain, ParametricMap};

/// Sampling domain of a [`SampledMap`].
#[derive(Clone, Debug, PartialEq)]
pub enum GridDomain {
    /// Periodic cube [0, period)^dim with n nodes per axis.
    Torus { dim: usize, n: usize, period: f64 },
    /// Cube [-half_width, half_width]^dim with n nodes per axis (endpoints
    /// included); convolution reflects at the boundary.
    Cube { dim: usize, n: usize, half_width: f64 },
}

impl GridDomain {
    pub fn dim(&self) -> usize {
        match self {
            GridDomain::Torus { dim, .. } | GridDomain::Cube { dim, .. } => *dim,
        }
    }

    pub fn nodes_per_axis(&self) -> usize {
        match self {
            GridDomain::Torus { n, .. } | GridDomain::Cube { n, .. } => *n,
        }
    }

    /// Grid spacing.
    pub fn spacing(&self) -> f64 {
        match self {
            GridDomain::Torus { n, period, .. } => period / *n as f64,
            GridDomain::Cube { n, half_width, .. } => 2.0 * half_width / (*n as f64 - 1.0),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes_per_axis().pow(self.dim() as u32)
    }

    /// Position of an axis index (indices outside 0..n denote the periodic
    /// or reflected virtual extension and still get a real coordinate).
    pub fn axis_coord(&self, idx: i64) -> f64 {
        match self {
            GridDomain::Torus { n, period, .. } => period * idx as f64 / *n as f64,
            GridDomain::Cube { n, half_width, .. } => {
                -half_width + 2.0 * half_width * idx as f64 / (*n as f64 - 1.0)
            }
        }
    }

    /// Map a virtual axis index into the stored range (wrap or reflect).
    pub fn fold_index(&self, idx: i64) -> usize {
        match self {
            GridDomain::Torus { n, .. } => {
                let n = *n as i64;
                (((idx % n) + n) % n) as usize
            }
            GridDomain::Cube { n, .. } => {
                let n = *n as i64;
                let mut i = idx;
                loop {
                    if i < 0 {
                        i = -i;
                    } else if i >= n {
                        i = 2 * (n - 1) - i;
                    } else {
                        return i as usize;
                    }
                }
            }
        }
    }

    /// Wrap-aware parameter distance between two node positions.
    pub fn param_distance(&self, a: &[usize], b: &[usize]) -> f64 {
        let mut s = 0.0;
        match self {
            GridDomain::Torus { n, period, .. } => {
                for (&ia, &ib) in a.iter().zip(b) {
                    let d = (ia as f64 - ib as f64).abs() * period / *n as f64;
                    let d = d.min(period - d);
                    s += d * d;
                }
            }
            GridDomain::Cube { .. } => {
                for (&ia, &ib) in a.iter().zip(b) {
                    let d = (self.axis_coord(ia as i64) - self.axis_coord(ib as i64)).abs();
                    s += d * d;
                }
            }
        }
        s.sqrt()
    }
}

/// A map sampled on a regular grid, stored row-major over the axes.
#[derive(Clone, Debug)]
pub struct SampledMap {
    pub domain: GridDomain,
    pub out_dim: usize,
    pub values: Vec<Vec<f64>>,
}

impl SampledMap {
    pub fn flat_index(&self, multi: &[usize]) -> usize {
        let n = self.domain.nodes_per_axis();
        let mut idx = 0;
        for &m in multi {
            idx = idx * n + m;
        }
        idx
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let d = self.domain.dim();
        let n = self.domain.nodes_per_axis();
        let mut multi = vec![0; d];
        for i in (0..d).rev() {
            multi[i] = flat % n;
            flat /= n;
        }
        multi
    }

    pub fn node_position(&self, multi: &[usize]) -> Vec<f64> {
        multi.iter().map(|&i| self.domain.axis_coord(i as i64)).collect()
    }

    pub fn value(&self, multi: &[usize]) -> &[f64] {
        &self.values[self.flat_index(multi)]
    }

    /// Largest node-wise Euclidean distance to another sampling of the same
    /// grid.
    pub fn sup_distance(&self, other: &SampledMap) -> Result<f64> {
        if self.domain != other.domain || self.out_dim != other.out_dim {
            return Err(Error::invalid("sampled maps live on different grids"));
        }
        let mut sup = 0.0f64;
        for (a, b) in self.values.iter().zip(&other.values) {
            let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
            sup = sup.max(d);
        }
        Ok(sup)
    }
}

/// Sample a map given by a closure on an explicit grid domain.
pub fn sample_fn(
    domain: GridDomain,
    out_dim: usize,
    f: impl Fn(&[f64]) -> Vec<f64>,
) -> Result<SampledMap> {
    if domain.nodes_per_axis() < 16 {
        return Err(Error::invalid("grid resolution must be at least 16 per axis"));
    }
    let count = domain.node_count();
    let mut values = Vec::with_capacity(count);
    let mut map = SampledMap { domain, out_dim, values: Vec::new() };
    for flat in 0..count {
        let multi = map.multi_index(flat);
        let pos = map.node_position(&multi);
        let v = f(&pos);
        debug_assert_eq!(v.len(), out_dim);
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("sampled value is not finite"));
        }
        values.push(v);
    }
    map.values = values;
    Ok(map)
}

/// Sample a gallery map on its natural grid: circle-domain maps on the
/// periodic parameter torus, cube/ball-domain maps on their bounding cube.
/// Punctured-ball maps take the +x limit value at the origin node.
pub fn sample_parametric(map: &ParametricMap, n: usize) -> Result<SampledMap> {
    let out_dim = map.out_dim;
    match &map.domain {
        Domain::Circle => sample_fn(
            GridDomain::Torus { dim: 1, n, period: 2.0 * std::f64::consts::PI },
            out_dim,
            |x| map.eval(x),
        ),
        Domain::Cube { dim, half_width } => sample_fn(
            GridDomain::Cube { dim: *dim, n, half_width: *half_width },
            out_dim,
            |x| map.eval(x),
        ),
        Domain::Ball { dim, punctured } => {
            let punctured = *punctured;
            sample_fn(GridDomain::Cube { dim: *dim, n, half_width: 1.0 }, out_dim, |x| {
                if punctured && x.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-12 {
                    let mut e = vec![0.0; x.len()];
                    e[0] = 1e-9;
                    map.eval(&e)
                } else {
                    map.eval(x)
                }
            })
        }
        Domain::Sphere3 => Err(Error::Unsupported(
            "grid sampling of sphere-domain maps (use SphereMapSample)".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_indexing_and_folding() {
        let d = GridDomain::Torus { dim: 2, n: 16, period: 2.0 * std::f64::consts::PI };
        assert_eq!(d.fold_index(-1), 15);
        assert_eq!(d.fold_index(16), 0);
        assert!((d.spacing() - std::f64::consts::PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn cube_reflection() {
        let d = GridDomain::Cube { dim: 1, n: 17, half_width: 1.0 };
        assert_eq!(d.fold_index(-1), 1);
        assert_eq!(d.fold_index(17), 15);
        assert_eq!(d.fold_index(5), 5);
        assert_eq!(d.axis_coord(0), -1.0);
        assert_eq!(d.axis_coord(16), 1.0);
    }

    #[test]
    fn sampling_rejects_tiny_grids() {
        let d = GridDomain::Cube { dim: 1, n: 8, half_width: 1.0 };
        assert!(sample_fn(d, 1, |x| vec![x[0]]).is_err());
    }

    #[test]
    fn round_trip_indices() {
        let d = GridDomain::Cube { dim: 3, n: 16, half_width: 1.0 };
        let m = sample_fn(d, 1, |x| vec![x[0] + x[1] + x[2]]).unwrap();
        for flat in [0usize, 5, 100, 4095] {
            assert_eq!(m.flat_index(&m.multi_index(flat)), flat);
        }
    }
}
