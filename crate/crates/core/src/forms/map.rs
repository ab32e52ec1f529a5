//! Evaluatable maps ℝ^d → ℝ^N with exact or finite-difference Jacobians.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Mat;

use super::poly::Polynomial;
use super::scalar::DEFAULT_FD_STEP;

#[derive(Clone)]
pub enum MapKind {
    /// Component polynomials with precomputed partials; evaluation and
    /// Jacobian are exact.
    Poly(Vec<Polynomial>, Vec<Vec<Polynomial>>),
    Callable {
        eval: Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>,
        jacobian: Option<Arc<dyn Fn(&[f64]) -> Mat + Send + Sync>>,
        fd_step: f64,
    },
}

#[derive(Clone)]
pub struct SmoothMap {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub kind: MapKind,
}

impl std::fmt::Debug for SmoothMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmoothMap")
            .field("domain_dim", &self.domain_dim)
            .field("codomain_dim", &self.codomain_dim)
            .field("polynomial", &matches!(self.kind, MapKind::Poly(..)))
            .finish()
    }
}

impl SmoothMap {
    pub fn from_polys(domain_dim: usize, components: Vec<Polynomial>) -> Self {
        assert!(components.iter().all(|p| p.dim() == domain_dim));
        let partials: Vec<Vec<Polynomial>> = components
            .iter()
            .map(|p| (0..domain_dim).map(|c| p.partial(c)).collect())
            .collect();
        SmoothMap {
            domain_dim,
            codomain_dim: components.len(),
            kind: MapKind::Poly(components, partials),
        }
    }

    pub fn from_fn(
        domain_dim: usize,
        codomain_dim: usize,
        f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        SmoothMap {
            domain_dim,
            codomain_dim,
            kind: MapKind::Callable { eval: Arc::new(f), jacobian: None, fd_step: DEFAULT_FD_STEP },
        }
    }

    pub fn from_fn_with_jacobian(
        domain_dim: usize,
        codomain_dim: usize,
        f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
        jac: impl Fn(&[f64]) -> Mat + Send + Sync + 'static,
    ) -> Self {
        SmoothMap {
            domain_dim,
            codomain_dim,
            kind: MapKind::Callable {
                eval: Arc::new(f),
                jacobian: Some(Arc::new(jac)),
                fd_step: DEFAULT_FD_STEP,
            },
        }
    }

    pub fn identity(dim: usize) -> Self {
        SmoothMap::from_polys(dim, (0..dim).map(|i| Polynomial::var(dim, i)).collect())
    }

    pub fn constant(domain_dim: usize, value: Vec<f64>) -> Self {
        SmoothMap::from_polys(
            domain_dim,
            value.into_iter().map(|c| Polynomial::constant(domain_dim, c)).collect(),
        )
    }

    pub fn polynomial_components(&self) -> Option<&[Polynomial]> {
        match &self.kind {
            MapKind::Poly(p, _) => Some(p),
            MapKind::Callable { .. } => None,
        }
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.domain_dim);
        match &self.kind {
            MapKind::Poly(ps, _) => ps.iter().map(|p| p.eval(x)).collect(),
            MapKind::Callable { eval, .. } => eval(x),
        }
    }

    /// Jacobian (codomain_dim × domain_dim) at `x`.
    pub fn jacobian(&self, x: &[f64]) -> Mat {
        match &self.kind {
            MapKind::Poly(_, partials) => {
                let mut j = Mat::zeros(self.codomain_dim, self.domain_dim);
                for (i, row) in partials.iter().enumerate() {
                    for (col, dp) in row.iter().enumerate() {
                        j.set(i, col, dp.eval(x));
                    }
                }
                j
            }
            MapKind::Callable { eval, jacobian, fd_step } => match jacobian {
                Some(jac) => jac(x),
                None => {
                    let h = *fd_step;
                    let mut j = Mat::zeros(self.codomain_dim, self.domain_dim);
                    for col in 0..self.domain_dim {
                        let mut xp = x.to_vec();
                        let mut xm = x.to_vec();
                        xp[col] += h;
                        xm[col] -= h;
                        let fp = eval(&xp);
                        let fm = eval(&xm);
                        for i in 0..self.codomain_dim {
                            j.set(i, col, (fp[i] - fm[i]) / (2.0 * h));
                        }
                    }
                    j
                }
            },
        }
    }

    /// Cross-check a supplied Jacobian against central differences at `x`.
    pub fn jacobian_consistency(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.domain_dim {
            return Err(Error::DimensionMismatch { expected: self.domain_dim, got: x.len() });
        }
        let j = self.jacobian(x);
        let h = 1e-5;
        let mut worst = 0.0f64;
        for col in 0..self.domain_dim {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[col] += h;
            xm[col] -= h;
            let fp = self.eval(&xp);
            let fm = self.eval(&xm);
            for i in 0..self.codomain_dim {
                let fd = (fp[i] - fm[i]) / (2.0 * h);
                worst = worst.max((fd - j.get(i, col)).abs());
            }
        }
        Ok(worst)
    }
}
