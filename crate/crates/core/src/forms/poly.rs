//! Sparse multivariate polynomials with f64 coefficients.
//!
//! Keys are dense exponent vectors of fixed length `dim`; terms with exactly
//! zero coefficient are pruned, so a polynomial built from exact (dyadic)
//! arithmetic compares exactly.

use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        let mut p = Polynomial::zero(dim);
        if c != 0.0 {
            p.terms.insert(vec![0; dim], c);
        }
        p
    }

    /// The coordinate monomial `x_i`.
    pub fn var(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut e = vec![0; dim];
        e[i] = 1;
        let mut p = Polynomial::zero(dim);
        p.terms.insert(e, 1.0);
        p
    }

    pub fn monomial(dim: usize, exponents: Vec<u32>, coeff: f64) -> Self {
        assert_eq!(exponents.len(), dim);
        let mut p = Polynomial::zero(dim);
        if coeff != 0.0 {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, f64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn insert_add(&mut self, e: Vec<u32>, c: f64) {
        if c == 0.0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let nv = *o.get() + c;
                if nv == 0.0 {
                    o.remove();
                } else {
                    *o.get_mut() = nv;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        if s == 0.0 {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), s * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, other.dim);
        let mut out = Polynomial::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.dim, 1.0);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        let mut s = 0.0;
        for (e, c) in &self.terms {
            let mut m = *c;
            for (xi, &ei) in x.iter().zip(e) {
                for _ in 0..ei {
                    m *= xi;
                }
            }
            s += m;
        }
        s
    }

    /// Exact partial derivative ∂/∂x_i.
    pub fn partial(&self, i: usize) -> Polynomial {
        assert!(i < self.dim);
        let mut out = Polynomial::zero(self.dim);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert_add(e2, c * f64::from(e[i]));
        }
        out
    }

    /// Substitute `subs[i]` for variable `x_i`; all `subs` share a common
    /// domain dimension, which becomes the result's dimension.
    pub fn compose(&self, subs: &[Polynomial]) -> Polynomial {
        assert_eq!(subs.len(), self.dim);
        let d = if subs.is_empty() { 0 } else { subs[0].dim };
        let mut out = Polynomial::zero(d);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(d, *c);
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = term.mul(&subs[i].pow(ei));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_eval() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = x.mul(&x).add(&y.scale(3.0)); // x^2 + 3y
        assert_eq!(p.eval(&[2.0, 1.0]), 7.0);
        assert_eq!(p.partial(0).eval(&[2.0, 1.0]), 4.0);
        assert_eq!(p.partial(1).eval(&[2.0, 1.0]), 3.0);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn compose_substitutes() {
        // p(x, y) = x*y, substitute x = u+v, y = u-v -> u^2 - v^2
        let p = Polynomial::var(2, 0).mul(&Polynomial::var(2, 1));
        let u = Polynomial::var(2, 0);
        let v = Polynomial::var(2, 1);
        let q = p.compose(&[u.add(&v), u.sub(&v)]);
        let expect = Polynomial::var(2, 0).pow(2).sub(&Polynomial::var(2, 1).pow(2));
        assert_eq!(q, expect);
    }
}
