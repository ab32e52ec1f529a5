//! Constructive Lefschetz decomposition on ℝ^{2n+1}: every k-form with
//! k ≥ n+1 splits as `κ = α ∧ β + dα ∧ σ` against the contact form α.
//!
//! The construction eliminates the vertical differential through α first
//! (every term containing dt is rewritten via dt = α - λ with λ horizontal),
//! then solves the remaining horizontal part against the constant-coefficient
//! 2-form dα. The horizontal solve is a fixed linear map on coefficient
//! tuples, so polynomial inputs stay polynomial; for n = 1 the solve is a
//! division by -4 and the decomposition is exact dyadic arithmetic.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{min_norm_solve, solve, Mat};

use super::form::{contact_form, exterior_d, wedge, DifferentialForm};
use super::pullback::ascending_tuples;
use super::scalar::ScalarField;

/// Index tuple ordering helper: sign of inserting ascending pair `(a, b)`
/// into ascending `s` (None if they collide).
fn insert_pair_sign(s: &[usize], a: usize, b: usize) -> Option<(Vec<usize>, f64)> {
    if s.contains(&a) || s.contains(&b) {
        return None;
    }
    // dα-term dx_a ∧ dx_b ∧ dx_S: count transpositions to sort.
    let mut merged: Vec<usize> = Vec::with_capacity(s.len() + 2);
    merged.push(a);
    merged.push(b);
    merged.extend_from_slice(s);
    // bubble sort counting swaps (tiny tuples)
    let mut sign = 1.0;
    let mut v = merged.clone();
    let m = v.len();
    for i in 0..m {
        for j in 0..m - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    Some((v, sign))
}

/// The matrix of `σ ↦ dα ∧ σ` on horizontal forms over ℝ^{2n}
/// (rows: degree-k targets, cols: degree-(k-2) sources), in the bases of
/// ascending tuples. `dα = -4 Σ dx_{2j} ∧ dx_{2j+1}`.
fn lefschetz_matrix(n: usize, k: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>, Mat) {
    let h = 2 * n;
    let sources = ascending_tuples(h, k - 2);
    let targets = ascending_tuples(h, k);
    let target_index: BTreeMap<&[usize], usize> =
        targets.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut m = Mat::zeros(targets.len(), sources.len());
    for (col, s) in sources.iter().enumerate() {
        for j in 0..n {
            if let Some((merged, sign)) = insert_pair_sign(s, 2 * j, 2 * j + 1) {
                let row = target_index[merged.as_slice()];
                m.set(row, col, m.get(row, col) - 4.0 * sign);
            }
        }
    }
    (sources, targets, m)
}

/// Decompose `κ = α ∧ β + dα ∧ σ` for a k-form on ℝ^{2n+1}, k ≥ n+1.
/// Returns `(β, σ)`.
pub fn lefschetz_decompose(
    kappa: &DifferentialForm,
    n: usize,
) -> Result<(DifferentialForm, DifferentialForm)> {
    let dim = 2 * n + 1;
    if kappa.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: kappa.dim() });
    }
    let k = kappa.degree();
    if k < n + 1 {
        return Err(Error::invalid(format!(
            "Lefschetz decomposition needs degree >= n+1 = {}, got {k}",
            n + 1
        )));
    }
    let t_index = dim - 1;

    // Split off terms containing dt: κ = ρ ∧ dt + κ₀ with ρ, κ₀ horizontal.
    let mut rho = DifferentialForm::zero(dim, k - 1);
    let mut kappa0 = DifferentialForm::zero(dim, k);
    for (idx, f) in kappa.terms() {
        if idx.last() == Some(&t_index) {
            rho.set_term(idx[..k - 1].to_vec(), f.clone());
        } else {
            kappa0.set_term(idx.clone(), f.clone());
        }
    }

    // dt = α - λ with λ the horizontal part of α, so
    // κ = ρ∧α + (κ₀ - ρ∧λ); the first summand is (-1)^{k-1} α∧ρ.
    let beta = rho.scale(if (k - 1) % 2 == 0 { 1.0 } else { -1.0 });
    let mut lambda = contact_form(n);
    lambda.set_term(vec![t_index], ScalarField::constant(dim, 0.0));
    let kappa_h = kappa0.sub(&wedge(&rho, &lambda)?)?;

    // Solve dα ∧ σ = κ_h on the horizontal coefficient level.
    let mut sigma = DifferentialForm::zero(dim, k - 2);
    if k >= 2 && k <= 2 * n {
        let (sources, targets, m) = lefschetz_matrix(n, k);
        if !sources.is_empty() && !targets.is_empty() {
            // Constants matrix P with σ = P · κ_h, columns solved per target.
            // For square systems (k = n+1) this is plain Gaussian solve; for
            // wide systems the minimum-norm solution is used.
            let square = sources.len() == targets.len();
            let mut p_cols: Vec<Vec<f64>> = Vec::with_capacity(targets.len());
            for t in 0..targets.len() {
                let mut e = vec![0.0; targets.len()];
                e[t] = 1.0;
                let col = if square {
                    solve(&m, &e)
                } else {
                    min_norm_solve(&m, &e)
                }
                .ok_or_else(|| Error::invalid("degenerate Lefschetz system"))?;
                p_cols.push(col);
            }
            for (si, s) in sources.iter().enumerate() {
                let mut acc: Option<ScalarField> = None;
                for (ti, t) in targets.iter().enumerate() {
                    let c = p_cols[ti][si];
                    if c == 0.0 {
                        continue;
                    }
                    if let Some(f) = kappa_h.coefficient(t) {
                        let scaled = f.scale(c);
                        acc = Some(match acc {
                            None => scaled,
                            Some(prev) => prev.add(&scaled),
                        });
                    }
                }
                if let Some(f) = acc {
                    sigma.set_term(s.clone(), f);
                }
            }
        }
    } else if !kappa_h.is_zero_poly() && kappa_h.terms().iter().any(|(_, f)| !f.is_zero_poly()) {
        // k > 2n: horizontal k-forms on ℝ^{2n} vanish identically, so a
        // nonzero remainder means an internal inconsistency.
        return Err(Error::invalid("horizontal remainder of top-degree input is nonzero"));
    }

    Ok((beta, sigma))
}

/// Reconstruction defect `α∧β + dα∧σ - κ` (zero when the decomposition is
/// consistent).
pub fn lefschetz_residual(
    kappa: &DifferentialForm,
    beta: &DifferentialForm,
    sigma: &DifferentialForm,
    n: usize,
) -> Result<DifferentialForm> {
    let alpha = contact_form(n);
    let dalpha = exterior_d(&alpha);
    wedge(&alpha, beta)?.add(&wedge(&dalpha, sigma)?)?.sub(kappa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::poly::Polynomial;
    use crate::rng::{cube_point, seeded};
    use rand::Rng;

    fn p3_var(i: usize) -> Polynomial {
        Polynomial::var(3, i)
    }

    #[test]
    fn three_dim_table_cases() {
        // κ = dx∧dy -> β = 0, σ = -1/4
        let kappa = DifferentialForm::basis(3, &[0, 1]);
        let (beta, sigma) = lefschetz_decompose(&kappa, 1).unwrap();
        assert!(beta.is_zero_poly());
        assert_eq!(
            sigma.coefficient(&[]).unwrap().as_poly().unwrap(),
            &Polynomial::constant(3, -0.25)
        );
        assert!(lefschetz_residual(&kappa, &beta, &sigma, 1).unwrap().is_zero_poly());

        // κ = dy∧dz -> σ = -y/2; β = -dy in the α∧β + dα∧σ convention
        // (the β∧α ordering of the same split carries +dy).
        let kappa = DifferentialForm::basis(3, &[1, 2]);
        let (beta, sigma) = lefschetz_decompose(&kappa, 1).unwrap();
        assert_eq!(
            sigma.coefficient(&[]).unwrap().as_poly().unwrap(),
            &p3_var(1).scale(-0.5)
        );
        assert_eq!(
            beta.coefficient(&[1]).unwrap().as_poly().unwrap(),
            &Polynomial::constant(3, -1.0)
        );
        assert_eq!(beta.terms().len(), 1);
        assert!(lefschetz_residual(&kappa, &beta, &sigma, 1).unwrap().is_zero_poly());

        // κ = dx∧dy∧dz: reconstruction identity holds exactly.
        let kappa = DifferentialForm::basis(3, &[0, 1, 2]);
        let (beta, sigma) = lefschetz_decompose(&kappa, 1).unwrap();
        assert!(lefschetz_residual(&kappa, &beta, &sigma, 1).unwrap().is_zero_poly());
    }

    #[test]
    fn rejects_low_degree_and_wrong_dim() {
        let one_form = DifferentialForm::dx(3, 0);
        assert!(lefschetz_decompose(&one_form, 1).is_err());
        let wrong_dim = DifferentialForm::basis(4, &[0, 1]);
        assert!(lefschetz_decompose(&wrong_dim, 1).is_err());
    }

    fn random_int_poly(rng: &mut rand_chacha::ChaCha8Rng, dim: usize, deg: u32) -> Polynomial {
        let mut p = Polynomial::zero(dim);
        for _ in 0..4 {
            let e: Vec<u32> = (0..dim)
                .map(|_| rng.random_range(0..=deg.min(2)))
                .collect();
            let c = rng.random_range(-8i32..=8) as f64;
            p = p.add(&Polynomial::monomial(dim, e, c));
        }
        p
    }

    #[test]
    fn reconstruction_exact_on_random_integer_forms_h1() {
        let mut rng = seeded(77);
        for degree in [2usize, 3] {
            for _ in 0..50 {
                let mut kappa = DifferentialForm::zero(3, degree);
                for idx in ascending_tuples(3, degree) {
                    kappa.set_term(idx, ScalarField::poly(random_int_poly(&mut rng, 3, 3)));
                }
                let (beta, sigma) = lefschetz_decompose(&kappa, 1).unwrap();
                let res = lefschetz_residual(&kappa, &beta, &sigma, 1).unwrap();
                assert!(res.is_zero_poly(), "nonzero residual at degree {degree}");
            }
        }
    }

    #[test]
    fn reconstruction_sampled_for_h2() {
        let n = 2;
        let dim = 5;
        let mut rng = seeded(101);
        for _ in 0..10 {
            let mut kappa = DifferentialForm::zero(dim, n + 1);
            for idx in ascending_tuples(dim, n + 1) {
                kappa.set_term(idx, ScalarField::poly(random_int_poly(&mut rng, dim, 2)));
            }
            let (beta, sigma) = lefschetz_decompose(&kappa, n).unwrap();
            let res = lefschetz_residual(&kappa, &beta, &sigma, n).unwrap();
            let scale = kappa.max_abs_poly_coeff().max(1.0);
            for _ in 0..20 {
                let x = cube_point(&mut rng, dim, 1.0);
                let vs: Vec<Vec<f64>> = (0..n + 1).map(|_| cube_point(&mut rng, dim, 1.0)).collect();
                let v = res.evaluate(&x, &vs).unwrap();
                assert!(v.abs() < 1e-12 * scale, "residual {v}");
            }
        }
    }

    #[test]
    fn higher_degree_h2_forms_decompose() {
        let n = 2;
        let dim = 5;
        let mut rng = seeded(55);
        for degree in [4usize, 5] {
            let mut kappa = DifferentialForm::zero(dim, degree);
            for idx in ascending_tuples(dim, degree) {
                kappa.set_term(idx, ScalarField::poly(random_int_poly(&mut rng, dim, 2)));
            }
            let (beta, sigma) = lefschetz_decompose(&kappa, n).unwrap();
            let res = lefschetz_residual(&kappa, &beta, &sigma, n).unwrap();
            let scale = kappa.max_abs_poly_coeff().max(1.0);
            for _ in 0..20 {
                let x = cube_point(&mut rng, dim, 1.0);
                let vs: Vec<Vec<f64>> = (0..degree).map(|_| cube_point(&mut rng, dim, 1.0)).collect();
                let v = res.evaluate(&x, &vs).unwrap();
                assert!(v.abs() < 1e-11 * scale, "degree {degree} residual {v}");
            }
        }
    }
}
