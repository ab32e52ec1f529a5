//! Coefficient fields of differential forms: exact polynomials or callable
//! functions with optional exact gradients.

use std::sync::Arc;

use super::poly::Polynomial;

/// Default central-difference step for callable fields without a gradient.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

#[derive(Clone)]
pub struct CallableField {
    pub dim: usize,
    pub eval: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    pub grad: Option<Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>>,
    pub fd_step: f64,
}

impl std::fmt::Debug for CallableField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CallableField")
            .field("dim", &self.dim)
            .field("grad", &self.grad.is_some())
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum ScalarField {
    Poly(Polynomial),
    Callable(CallableField),
}

impl ScalarField {
    pub fn poly(p: Polynomial) -> Self {
        ScalarField::Poly(p)
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        ScalarField::Poly(Polynomial::constant(dim, c))
    }

    pub fn callable(dim: usize, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        ScalarField::Callable(CallableField {
            dim,
            eval: Arc::new(f),
            grad: None,
            fd_step: DEFAULT_FD_STEP,
        })
    }

    pub fn callable_with_grad(
        dim: usize,
        f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        grad: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        ScalarField::Callable(CallableField {
            dim,
            eval: Arc::new(f),
            grad: Some(Arc::new(grad)),
            fd_step: DEFAULT_FD_STEP,
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            ScalarField::Poly(p) => p.dim(),
            ScalarField::Callable(c) => c.dim,
        }
    }

    pub fn is_poly(&self) -> bool {
        matches!(self, ScalarField::Poly(_))
    }

    pub fn as_poly(&self) -> Option<&Polynomial> {
        match self {
            ScalarField::Poly(p) => Some(p),
            ScalarField::Callable(_) => None,
        }
    }

    /// Exactly-zero polynomial field (callables are never reported zero).
    pub fn is_zero_poly(&self) -> bool {
        matches!(self, ScalarField::Poly(p) if p.is_zero())
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            ScalarField::Poly(p) => p.eval(x),
            ScalarField::Callable(c) => (c.eval)(x),
        }
    }

    /// Partial derivative ∂/∂x_i: exact for polynomials, exact gradient or
    /// central differences with the stored step for callables.
    pub fn partial(&self, i: usize) -> ScalarField {
        match self {
            ScalarField::Poly(p) => ScalarField::Poly(p.partial(i)),
            ScalarField::Callable(c) => {
                let c = c.clone();
                let dim = c.dim;
                ScalarField::Callable(CallableField {
                    dim,
                    eval: Arc::new(move |x: &[f64]| match &c.grad {
                        Some(g) => g(x)[i],
                        None => {
                            let h = c.fd_step;
                            let mut xp = x.to_vec();
                            let mut xm = x.to_vec();
                            xp[i] += h;
                            xm[i] -= h;
                            ((c.eval)(&xp) - (c.eval)(&xm)) / (2.0 * h)
                        }
                    }),
                    grad: None,
                    fd_step: DEFAULT_FD_STEP,
                })
            }
        }
    }

    pub fn neg(&self) -> ScalarField {
        self.scale(-1.0)
    }

    pub fn scale(&self, s: f64) -> ScalarField {
        match self {
            ScalarField::Poly(p) => ScalarField::Poly(p.scale(s)),
            ScalarField::Callable(c) => {
                let f = c.eval.clone();
                ScalarField::Callable(CallableField {
                    dim: c.dim,
                    eval: Arc::new(move |x| s * f(x)),
                    grad: None,
                    fd_step: c.fd_step,
                })
            }
        }
    }

    pub fn add(&self, other: &ScalarField) -> ScalarField {
        debug_assert_eq!(self.dim(), other.dim());
        match (self, other) {
            (ScalarField::Poly(a), ScalarField::Poly(b)) => ScalarField::Poly(a.add(b)),
            _ => {
                let a = self.clone();
                let b = other.clone();
                ScalarField::callable(self.dim(), move |x| a.eval(x) + b.eval(x))
            }
        }
    }

    /// Product; mixed polynomial/callable operands promote to callable.
    pub fn mul(&self, other: &ScalarField) -> ScalarField {
        debug_assert_eq!(self.dim(), other.dim());
        match (self, other) {
            (ScalarField::Poly(a), ScalarField::Poly(b)) => ScalarField::Poly(a.mul(b)),
            _ => {
                let a = self.clone();
                let b = other.clone();
                ScalarField::callable(self.dim(), move |x| a.eval(x) * b.eval(x))
            }
        }
    }
}
