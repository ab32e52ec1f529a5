//! Inductive construction of linking forms for embedded spheres 𝕊⁰ and 𝕊¹.
//!
//! Base case: a dipole 0-form equal to +1 near φ(-1) and -1 near φ(+1);
//! its differential is supported on two shells away from the point pair.
//! Induction step: split η₀ = γ_U + γ_V by a smooth partition subordinate
//! to the complements of the two closed hemisphere tubes and keep ω₁ := γ_U.
//! Then dω₁ vanishes in a tube around the whole embedded circle while
//! ∮ φ*ω₁ reproduces the base charge up to sign.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::{exterior_d, wedge, DifferentialForm, ScalarField};

/// Smooth monotone step: 1 for t ≤ 0, 0 for t ≥ 1 (C^∞).
pub fn smooth_step_down(t: f64) -> f64 {
    if t <= 0.0 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        let h = |s: f64| (-1.0 / s).exp();
        h(1.0 - t) / (h(1.0 - t) + h(t))
    }
}

fn d_smooth_step_down(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        0.0
    } else {
        let h = |s: f64| (-1.0 / s).exp();
        let dh = |s: f64| h(s) / (s * s);
        let a = h(1.0 - t);
        let b = h(t);
        let da = -dh(1.0 - t);
        let db = dh(t);
        (da * (a + b) - a * (da + db)) / ((a + b) * (a + b))
    }
}

/// Radial cutoff: 1 for r ≤ radius/2, 0 for r ≥ radius.
fn cut(r: f64, radius: f64) -> f64 {
    smooth_step_down((r - radius / 2.0) / (radius / 2.0))
}

fn d_cut(r: f64, radius: f64) -> f64 {
    d_smooth_step_down((r - radius / 2.0) / (radius / 2.0)) / (radius / 2.0)
}

/// An embedded sphere handed to the induction.
pub enum SphereEmbedding {
    /// 𝕊⁰: the two image points φ(-1), φ(+1) in ℝ³.
    Zero { minus: Vec<f64>, plus: Vec<f64> },
    /// 𝕊¹: angle parametrization of an embedded circle in ℝ³; `samples`
    /// controls the density of the distance-field sampling.
    One { eval: Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>, samples: usize },
}

/// The constructed ℓ-form, its differential, and the verified clearance of
/// supp(dω) from the embedded sphere.
pub struct LinkingForm {
    pub level: usize,
    pub omega: DifferentialForm,
    pub eta: DifferentialForm,
    /// Distance from the embedded sphere within which η was verified to
    /// vanish.
    pub support_gap: f64,
    /// The 𝕊⁰ base integral (+2 with the dipole signs used here).
    pub base_charge: f64,
}

fn dist_to(samples: &[Vec<f64>], x: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    for s in samples {
        let d: f64 = s.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
        if d < best {
            best = d;
        }
    }
    best.sqrt()
}

/// The dipole 0-form of the base case with bump radius `radius`.
fn dipole_form(minus: &[f64], plus: &[f64], radius: f64) -> DifferentialForm {
    let minus = minus.to_vec();
    let plus = plus.to_vec();
    let minus2 = minus.clone();
    let plus2 = plus.clone();
    let f = ScalarField::callable_with_grad(
        3,
        move |x: &[f64]| {
            let rm: f64 =
                minus.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            let rp: f64 = plus.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            cut(rm, radius) - cut(rp, radius)
        },
        move |x: &[f64]| {
            let mut g = vec![0.0; 3];
            let rm: f64 =
                minus2.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            let rp: f64 =
                plus2.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            if rm > 1e-12 {
                let dm = d_cut(rm, radius);
                for i in 0..3 {
                    g[i] += dm * (x[i] - minus2[i]) / rm;
                }
            }
            if rp > 1e-12 {
                let dp = d_cut(rp, radius);
                for i in 0..3 {
                    g[i] -= dp * (x[i] - plus2[i]) / rp;
                }
            }
            g
        },
    );
    DifferentialForm::from_scalar(f)
}

/// Oriented 𝕊⁰ integral used throughout: value at φ(-1) minus value at
/// φ(+1), so the dipole base charge is +2.
pub fn s0_integral(omega0: &DifferentialForm, minus: &[f64], plus: &[f64]) -> Result<f64> {
    let vm = omega0.evaluate(minus, &[])?;
    let vp = omega0.evaluate(plus, &[])?;
    Ok(vm - vp)
}

/// Build the linking form for an embedded 𝕊⁰ or 𝕊¹.
pub fn mv_induction_build(phi: &SphereEmbedding, tube_radius: f64) -> Result<LinkingForm> {
    if !(tube_radius > 0.0) {
        return Err(Error::invalid("tube radius must be positive"));
    }
    match phi {
        SphereEmbedding::Zero { minus, plus } => {
            let sep: f64 =
                minus.iter().zip(plus).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            if sep <= 4.0 * tube_radius {
                return Err(Error::degenerate(format!(
                    "point separation {sep} too small for bump radius {}",
                    2.0 * tube_radius
                )));
            }
            let radius = 2.0 * tube_radius;
            let omega = dipole_form(minus, plus, radius);
            let eta = exterior_d(&omega);
            let charge = s0_integral(&omega, minus, plus)?;
            if (charge - 2.0).abs() > 1e-12 {
                return Err(Error::degenerate("dipole bumps overlap"));
            }
            // η vanishes where ω is locally constant: within radius/2 of
            // either point.
            Ok(LinkingForm {
                level: 0,
                omega,
                eta,
                support_gap: radius / 2.0,
                base_charge: charge,
            })
        }
        SphereEmbedding::One { eval, samples } => {
            build_level_one(eval.clone(), *samples, tube_radius)
        }
    }
}

fn build_level_one(
    eval: Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>,
    samples: usize,
    tube_radius: f64,
) -> Result<LinkingForm> {
    if samples < 64 {
        return Err(Error::invalid("need at least 64 circle samples"));
    }
    let pi = std::f64::consts::PI;
    let equator_minus = eval(pi);
    let equator_plus = eval(0.0);
    // closed hemisphere sample sets (parameters [0, π] and [π, 2π])
    let half = samples / 2;
    let upper: Vec<Vec<f64>> = (0..=half).map(|i| eval(pi * i as f64 / half as f64)).collect();
    let lower: Vec<Vec<f64>> =
        (0..=half).map(|i| eval(pi + pi * i as f64 / half as f64)).collect();

    // base dipole at the equator pair
    let base = mv_induction_build(
        &SphereEmbedding::Zero { minus: equator_minus.clone(), plus: equator_plus.clone() },
        tube_radius,
    )?;
    let bump_radius = 2.0 * tube_radius;

    // Separation precondition: wherever η₀ is solidly nonzero (the middle
    // of its support shells) at least one hemisphere must clear the closed
    // tube, otherwise the subordinate partition degenerates and loses η₀
    // mass between the overlapping tubes.
    for center in [&equator_minus, &equator_plus] {
        for i in 0..48 {
            for j in 0..12 {
                let th = 2.0 * pi * i as f64 / 48.0;
                let ph = pi * (j as f64 + 0.5) / 12.0;
                for rr in [0.55, 0.75, 0.95] {
                    let r = rr * bump_radius;
                    let x = [
                        center[0] + r * ph.sin() * th.cos(),
                        center[1] + r * ph.sin() * th.sin(),
                        center[2] + r * ph.cos(),
                    ];
                    let du = dist_to(&upper, &x);
                    let dl = dist_to(&lower, &x);
                    if du.max(dl) <= 1.01 * tube_radius {
                        return Err(Error::degenerate(format!(
                            "hemisphere separation margin violated near ({:.3}, {:.3}, {:.3})",
                            x[0], x[1], x[2]
                        )));
                    }
                }
            }
        }
    }

    // ψ_U = H(d_upper) / (H(d_upper) + H(d_lower)) with
    // H(d) = 1 - step((d - R_t)/R_t), evaluated in log space: the H factors
    // underflow near the tube boundary, and a naive ratio guard would put a
    // numerical jump inside supp η₀. Where both tubes cover the point (both
    // H zero) the separation precondition guarantees η₀ = 0, so ψ may take
    // any value there; it returns 0.
    let log_h = move |d: f64| -> f64 {
        let t = (d - tube_radius) / tube_radius;
        if t <= 0.0 {
            f64::NEG_INFINITY
        } else if t >= 1.0 {
            0.0
        } else {
            let la = -1.0 / t;
            let lb = -1.0 / (1.0 - t);
            let m = la.max(lb);
            la - (m + ((la - m).exp() + (lb - m).exp()).ln())
        }
    };
    let upper_arc = Arc::new(upper);
    let lower_arc = Arc::new(lower);
    let psi = {
        let upper_arc = upper_arc.clone();
        let lower_arc = lower_arc.clone();
        ScalarField::callable(3, move |x: &[f64]| {
            let lu = log_h(dist_to(&upper_arc, x));
            let ll = log_h(dist_to(&lower_arc, x));
            if lu == f64::NEG_INFINITY {
                0.0
            } else if ll == f64::NEG_INFINITY {
                1.0
            } else {
                1.0 / (1.0 + (ll - lu).exp())
            }
        })
    };
    let mut omega1 = DifferentialForm::zero(3, 1);
    for i in 0..3 {
        let eta0_coeff = base
            .eta
            .coefficient(&[i])
            .cloned()
            .unwrap_or_else(|| ScalarField::constant(3, 0.0));
        let psi = psi.clone();
        omega1.set_term(
            vec![i],
            ScalarField::callable(3, move |x: &[f64]| {
                let e = eta0_coeff.eval(x);
                if e == 0.0 {
                    return 0.0;
                }
                psi.eval(x) * e
            }),
        );
    }
    // dω₁ = dψ ∧ η₀ (the ψ·dη₀ term is identically zero since η₀ is
    // exact); computing it this way keeps η₁ bit-exactly zero wherever ψ
    // is locally constant, instead of leaving second-difference noise.
    let dpsi = exterior_d(&DifferentialForm::from_scalar(psi));
    let eta1 = wedge(&dpsi, &base.eta)?;

    // verify the support gap on a dense tube sample
    let gap = tube_radius / 2.0;
    let mut worst = 0.0f64;
    for i in 0..samples {
        let s = 2.0 * pi * i as f64 / samples as f64;
        let c = eval(s);
        for (du, dv, dw) in [
            (gap, 0.0, 0.0),
            (0.0, gap, 0.0),
            (0.0, 0.0, gap),
            (-gap, 0.0, 0.0),
            (0.0, -gap, 0.0),
            (0.0, 0.0, -gap),
        ] {
            let x = [c[0] + du, c[1] + dv, c[2] + dw];
            for (_, f) in eta1.terms() {
                worst = worst.max(f.eval(&x).abs());
            }
        }
    }
    if worst > 1e-12 {
        return Err(Error::degenerate(format!(
            "dω₁ fails to vanish near the circle (max {worst:.3e})"
        )));
    }
    Ok(LinkingForm {
        level: 1,
        omega: omega1,
        eta: eta1,
        support_gap: gap,
        base_charge: base.base_charge,
    })
}
