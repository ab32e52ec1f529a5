//! Exterior k-forms on ℝ^N with polynomial or callable coefficients.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{det, Mat};

use super::poly::Polynomial;
use super::scalar::ScalarField;

/// A k-form `Σ_I f_I dx_I` indexed by strictly increasing 0-based tuples.
///
/// Absent tuples mean zero coefficients; exactly-zero polynomial
/// coefficients are pruned on insertion. The degree-0 form stores a single
/// empty-tuple term.
#[derive(Clone, Debug)]
pub struct DifferentialForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, ScalarField>,
}

/// Sign of the permutation sorting the concatenation of two disjoint
/// ascending tuples, with `None` for a repeated index.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut inversions = 0usize;
    for &i in a {
        for &j in b {
            if i == j {
                return None;
            }
            if i > j {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<usize> = a.iter().chain(b).copied().collect();
    merged.sort_unstable();
    Some((merged, if inversions % 2 == 0 { 1.0 } else { -1.0 }))
}

impl DifferentialForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(degree <= dim, "degree {degree} exceeds dimension {dim}");
        DifferentialForm { dim, degree, terms: BTreeMap::new() }
    }

    /// Degree-0 form from a scalar field.
    pub fn from_scalar(f: ScalarField) -> Self {
        let dim = f.dim();
        let mut form = DifferentialForm::zero(dim, 0);
        form.set_term(vec![], f);
        form
    }

    /// The coordinate 1-form `dx_i`.
    pub fn dx(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut form = DifferentialForm::zero(dim, 1);
        form.set_term(vec![i], ScalarField::constant(dim, 1.0));
        form
    }

    /// Basis k-form `dx_{i_1} ∧ … ∧ dx_{i_k}` for an ascending tuple.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut form = DifferentialForm::zero(dim, indices.len());
        assert!(indices.windows(2).all(|w| w[0] < w[1]));
        assert!(indices.iter().all(|&i| i < dim));
        form.set_term(indices.to_vec(), ScalarField::constant(dim, 1.0));
        form
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, ScalarField> {
        &self.terms
    }

    pub fn coefficient(&self, indices: &[usize]) -> Option<&ScalarField> {
        self.terms.get(indices)
    }

    /// Insert/replace a term, pruning exactly-zero polynomial coefficients.
    pub fn set_term(&mut self, indices: Vec<usize>, f: ScalarField) {
        debug_assert_eq!(indices.len(), self.degree);
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.iter().all(|&i| i < self.dim));
        debug_assert_eq!(f.dim(), self.dim);
        if f.is_zero_poly() {
            self.terms.remove(&indices);
        } else {
            self.terms.insert(indices, f);
        }
    }

    pub fn add_term(&mut self, indices: Vec<usize>, f: ScalarField) {
        let combined = match self.terms.get(&indices) {
            Some(existing) => existing.add(&f),
            None => f,
        };
        self.set_term(indices, combined);
    }

    /// True when every coefficient is an exactly-zero polynomial (or absent).
    pub fn is_zero_poly(&self) -> bool {
        self.terms.values().all(|f| f.is_zero_poly())
    }

    /// All coefficients polynomial?
    pub fn is_poly(&self) -> bool {
        self.terms.values().all(|f| f.is_poly())
    }

    /// Largest |coefficient| over all polynomial terms (panics on callable).
    pub fn max_abs_poly_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|f| f.as_poly().expect("polynomial form").max_abs_coeff())
            .fold(0.0, f64::max)
    }

    pub fn neg(&self) -> DifferentialForm {
        self.scale(-1.0)
    }

    pub fn scale(&self, s: f64) -> DifferentialForm {
        let mut out = DifferentialForm::zero(self.dim, self.degree);
        for (i, f) in &self.terms {
            out.set_term(i.clone(), f.scale(s));
        }
        out
    }

    pub fn add(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        if self.degree != other.degree && !(self.terms.is_empty() || other.terms.is_empty()) {
            return Err(Error::invalid(format!(
                "cannot add forms of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let degree = if self.terms.is_empty() { other.degree } else { self.degree };
        let mut out = DifferentialForm::zero(self.dim, degree);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), f.clone());
        }
        for (i, f) in &other.terms {
            out.add_term(i.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.add(&other.neg())
    }

    /// Alternating multilinear evaluation at `p` on `degree` vectors.
    pub fn evaluate(&self, p: &[f64], vectors: &[Vec<f64>]) -> Result<f64> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: p.len() });
        }
        if vectors.len() != self.degree {
            return Err(Error::invalid(format!(
                "degree-{} form needs {} vectors, got {}",
                self.degree,
                self.degree,
                vectors.len()
            )));
        }
        for v in vectors {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
            }
        }
        let k = self.degree;
        let mut total = 0.0;
        for (idx, f) in &self.terms {
            let c = f.eval(p);
            if c == 0.0 {
                continue;
            }
            let minor = if k == 0 {
                1.0
            } else {
                let mut m = Mat::zeros(k, k);
                for (a, v) in vectors.iter().enumerate() {
                    for (b, &i) in idx.iter().enumerate() {
                        m.set(a, b, v[i]);
                    }
                }
                det(&m)
            };
            total += c * minor;
        }
        Ok(total)
    }
}

/// Exterior (wedge) product. Degrees summing above the dimension give the
/// zero top-degree form. Mixed polynomial/callable coefficients promote to
/// callable.
pub fn wedge(a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, got: b.dim });
    }
    let dim = a.dim;
    let deg = a.degree + b.degree;
    if deg > dim {
        return Ok(DifferentialForm::zero(dim, dim));
    }
    let mut out = DifferentialForm::zero(dim, deg);
    for (ia, fa) in &a.terms {
        for (ib, fb) in &b.terms {
            if let Some((merged, sign)) = merge_sign(ia, ib) {
                out.add_term(merged, fa.mul(fb).scale(sign));
            }
        }
    }
    Ok(out)
}

/// Exterior derivative. Exact for polynomial coefficients; callable
/// coefficients differentiate by stored gradient or central differences.
/// A top-degree input returns the (empty) zero form.
pub fn exterior_d(a: &DifferentialForm) -> DifferentialForm {
    let dim = a.dim;
    if a.degree >= dim {
        return DifferentialForm::zero(dim, dim);
    }
    let mut out = DifferentialForm::zero(dim, a.degree + 1);
    for (idx, f) in &a.terms {
        for m in 0..dim {
            if idx.contains(&m) {
                continue;
            }
            let df = f.partial(m);
            if df.is_zero_poly() {
                continue;
            }
            // dx_m ∧ dx_I: sign = (-1)^{#elements of I below m}
            let below = idx.iter().filter(|&&i| i < m).count();
            let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
            let mut merged = idx.clone();
            merged.push(m);
            merged.sort_unstable();
            out.add_term(merged, df.scale(sign));
        }
    }
    out
}

/// The contact 1-form α on ℝ^{2n+1} as an exact polynomial form:
/// `α = dt + 2 Σ (p_{2j} dp_{2j-1} - p_{2j-1} dp_{2j})` (0-based: coefficient
/// of dx_{2j} is `2 x_{2j+1}`, of dx_{2j+1} is `-2 x_{2j}`, of dt is 1).
pub fn contact_form(n: usize) -> DifferentialForm {
    let dim = 2 * n + 1;
    let mut form = DifferentialForm::zero(dim, 1);
    for j in 0..n {
        form.set_term(vec![2 * j], ScalarField::poly(Polynomial::var(dim, 2 * j + 1).scale(2.0)));
        form.set_term(
            vec![2 * j + 1],
            ScalarField::poly(Polynomial::var(dim, 2 * j).scale(-2.0)),
        );
    }
    form.set_term(vec![dim - 1], ScalarField::constant(dim, 1.0));
    form
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dx(i: usize) -> DifferentialForm {
        DifferentialForm::dx(3, i)
    }

    #[test]
    fn wedge_examples() {
        // dx ∧ dx = 0
        assert!(wedge(&dx(0), &dx(0)).unwrap().is_zero_poly());
        // dx ∧ dy = -(dy ∧ dx)
        let ab = wedge(&dx(0), &dx(1)).unwrap();
        let ba = wedge(&dx(1), &dx(0)).unwrap();
        assert!(ab.add(&ba).unwrap().is_zero_poly());
        // (y dx) ∧ (x dy) = xy dx∧dy
        let ydx = {
            let mut f = DifferentialForm::zero(3, 1);
            f.set_term(vec![0], ScalarField::poly(Polynomial::var(3, 1)));
            f
        };
        let xdy = {
            let mut f = DifferentialForm::zero(3, 1);
            f.set_term(vec![1], ScalarField::poly(Polynomial::var(3, 0)));
            f
        };
        let w = wedge(&ydx, &xdy).unwrap();
        let xy = Polynomial::var(3, 0).mul(&Polynomial::var(3, 1));
        assert_eq!(w.coefficient(&[0, 1]).unwrap().as_poly().unwrap(), &xy);
    }

    #[test]
    fn wedge_rejects_dim_mismatch_and_overflows_to_zero() {
        let a = DifferentialForm::dx(3, 0);
        let b = DifferentialForm::dx(2, 0);
        assert!(wedge(&a, &b).is_err());
        let top = DifferentialForm::basis(3, &[0, 1, 2]);
        let z = wedge(&top, &a).unwrap();
        assert!(z.is_zero_poly());
    }

    #[test]
    fn anticommutativity_sign_on_higher_degrees() {
        // For deg a ∧ deg b: a∧b = (-1)^{ab} b∧a; test a 2-form and a 1-form.
        let a = DifferentialForm::basis(4, &[0, 2]);
        let b = DifferentialForm::dx(4, 1);
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        // (-1)^{2·1} = +1
        assert!(ab.sub(&ba).unwrap().is_zero_poly());
    }

    #[test]
    fn exterior_d_examples() {
        // d(contact form on ℝ³) = -4 dx∧dy (the display 4 dy∧dx)
        let alpha = contact_form(1);
        let da = exterior_d(&alpha);
        let expect = Polynomial::constant(3, -4.0);
        assert_eq!(da.coefficient(&[0, 1]).unwrap().as_poly().unwrap(), &expect);
        assert_eq!(da.terms().len(), 1);

        // d(x dy - y dx) = 2 dx∧dy
        let mut f = DifferentialForm::zero(3, 1);
        f.set_term(vec![1], ScalarField::poly(Polynomial::var(3, 0)));
        f.add_term(vec![0], ScalarField::poly(Polynomial::var(3, 1).neg()));
        let df = exterior_d(&f);
        assert_eq!(
            df.coefficient(&[0, 1]).unwrap().as_poly().unwrap(),
            &Polynomial::constant(3, 2.0)
        );

        // d(d(x²y dz)) = 0 exactly
        let mut g = DifferentialForm::zero(3, 1);
        let x2y = Polynomial::var(3, 0).pow(2).mul(&Polynomial::var(3, 1));
        g.set_term(vec![2], ScalarField::poly(x2y));
        assert!(exterior_d(&exterior_d(&g)).is_zero_poly());
    }

    #[test]
    fn evaluate_form_examples() {
        let f = DifferentialForm::from_scalar(ScalarField::poly(Polynomial::var(3, 2)));
        assert_eq!(f.evaluate(&[0.0, 0.0, 7.0], &[]).unwrap(), 7.0);

        let dxdy = DifferentialForm::basis(3, &[0, 1]);
        let e1 = vec![1.0, 0.0, 0.0];
        let e2 = vec![0.0, 1.0, 0.0];
        assert_eq!(dxdy.evaluate(&[0.0; 3], &[e1.clone(), e2.clone()]).unwrap(), 1.0);
        let swapped = dxdy.evaluate(&[0.0; 3], &[e2, e1]).unwrap();
        assert_eq!(swapped, -1.0);

        assert!(dxdy.evaluate(&[0.0; 3], &[vec![1.0, 0.0, 0.0]]).is_err());
    }
}
