//! Exact exterior calculus on ℝ^N: k-forms with polynomial or callable
//! coefficients, wedge, exterior derivative, pullback, and the constructive
//! Lefschetz decomposition against the Heisenberg contact form.

mod form;
mod io;
mod lefschetz;
mod map;
mod poly;
mod pullback;
mod scalar;

pub use form::{contact_form, exterior_d, wedge, DifferentialForm};
pub use io::{form_from_json, form_to_json, FormJson, MonomialJson, TermJson};
pub use lefschetz::{lefschetz_decompose, lefschetz_residual};
pub use map::{MapKind, SmoothMap};
pub use poly::Polynomial;
pub use pullback::pullback;
pub use scalar::{CallableField, ScalarField, DEFAULT_FD_STEP};

pub(crate) use pullback::ascending_tuples as tuples;

/// Ascending index tuples of length `k` from `0..dim` (the term-index
/// enumeration used by forms of degree `k`).
pub fn index_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    pullback::ascending_tuples(dim, k)
}

/// Random form with small-integer polynomial coefficients on every index
/// tuple: the standard seed-reproducible test input (integer coefficients
/// keep the exterior-calculus identities exact in f64).
pub fn random_integer_form(
    dim: usize,
    degree: usize,
    coeff_degree: u32,
    seed: u64,
) -> DifferentialForm {
    use rand::Rng;
    let mut rng = crate::rng::seeded(seed);
    let mut form = DifferentialForm::zero(dim, degree);
    for idx in index_tuples(dim, degree) {
        let mut poly = Polynomial::zero(dim);
        for _ in 0..3 {
            let e: Vec<u32> = (0..dim).map(|_| rng.random_range(0..=coeff_degree)).collect();
            poly = poly.add(&Polynomial::monomial(dim, e, rng.random_range(-8i32..=8) as f64));
        }
        form.set_term(idx, ScalarField::poly(poly));
    }
    form
}
