//! Pullback of forms along smooth maps.

use crate::error::{Error, Result};
use crate::linalg::{det, Mat};

use super::form::DifferentialForm;
use super::map::{MapKind, SmoothMap};
use super::poly::Polynomial;
use super::scalar::ScalarField;

/// Ascending index tuples of length `k` drawn from `0..n`.
pub(crate) fn ascending_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Polynomial minor determinant of the Jacobian of `f` with rows `rows`
/// (codomain indices) and columns `cols` (domain indices).
fn poly_minor(f: &[Polynomial], rows: &[usize], cols: &[usize]) -> Polynomial {
    let k = rows.len();
    let d = if f.is_empty() { 0 } else { f[0].dim() };
    if k == 0 {
        return Polynomial::constant(d, 1.0);
    }
    // Laplace expansion over permutations (k is tiny here).
    let mut result = Polynomial::zero(d);
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let mut sign = 1.0;
        for i in 0..k {
            for j in (i + 1)..k {
                if perm[i] > perm[j] {
                    sign = -sign;
                }
            }
        }
        let mut term = Polynomial::constant(d, sign);
        for (r, &p) in perm.iter().enumerate() {
            term = term.mul(&f[rows[r]].partial(cols[p]));
        }
        result = result.add(&term);
        // next permutation
        if !next_permutation(&mut perm) {
            break;
        }
    }
    result
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Pullback `f*a`: a form on the domain of `f`. Exact polynomial algebra
/// when both `f` and `a` are polynomial; callable coefficients otherwise.
/// Degrees above the domain dimension pull back to the zero form.
pub fn pullback(f: &SmoothMap, a: &DifferentialForm) -> Result<DifferentialForm> {
    if f.codomain_dim != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: f.codomain_dim });
    }
    let d = f.domain_dim;
    let k = a.degree();
    if k > d {
        return Ok(DifferentialForm::zero(d, d));
    }
    let mut out = DifferentialForm::zero(d, k);
    let poly_path = a.is_poly() && matches!(f.kind, MapKind::Poly(..));
    if poly_path {
        let comps = f.polynomial_components().expect("polynomial map");
        for cols in ascending_tuples(d, k) {
            let mut coeff = Polynomial::zero(d);
            for (rows, field) in a.terms() {
                let composed = field.as_poly().expect("polynomial form").compose(comps);
                coeff = coeff.add(&composed.mul(&poly_minor(comps, rows, &cols)));
            }
            out.set_term(cols, ScalarField::poly(coeff));
        }
    } else {
        for cols in ascending_tuples(d, k) {
            let f = f.clone();
            let a = a.clone();
            let cols_cl = cols.clone();
            out.set_term(
                cols,
                ScalarField::callable(d, move |x: &[f64]| {
                    let y = f.eval(x);
                    let jac = f.jacobian(x);
                    let mut total = 0.0;
                    for (rows, field) in a.terms() {
                        let c = field.eval(&y);
                        if c == 0.0 {
                            continue;
                        }
                        let kk = rows.len();
                        let minor = if kk == 0 {
                            1.0
                        } else {
                            let mut m = Mat::zeros(kk, kk);
                            for (ri, &r) in rows.iter().enumerate() {
                                for (ci, &c2) in cols_cl.iter().enumerate() {
                                    m.set(ri, ci, jac.get(r, c2));
                                }
                            }
                            det(&m)
                        };
                        total += c * minor;
                    }
                    total
                }),
            );
        }
    }
    Ok(out)
}
