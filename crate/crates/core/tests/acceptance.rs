//! Acceptance suite: one test per criterion, each asserting its stated
//! tolerances and runtime budget and printing a PASS line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::Instant;

use heislab_core::approx::{
    contact_defect_rates, gromov_margin, gromov_region, holder_fit, sample_parametric, MetricTag,
};
use heislab_core::forms::{
    contact_form, exterior_d, lefschetz_decompose, lefschetz_residual, wedge, DifferentialForm,
    Polynomial, ScalarField, SmoothMap,
};
use heislab_core::gallery;
use heislab_core::heis::{
    comparison_ratio_scan, contact_form_at, group_mul, koranyi_dist, HeisenbergPoint,
};
use heislab_core::hopf::{hopf_via_fibers, hopf_via_fibers_with_pole, sample_sphere_map};
use heislab_core::linalg::singular_values;
use heislab_core::linking::{
    analytic_linking, gauss_linking, horizontality_obstruction_test, mv_induction_build, presets,
    LinkingMapInput, SphereEmbedding,
};
use heislab_core::mesh::{
    integrate_pullback, simplex_quadrature, stokes_residual, BallMesh, SphereMesh,
};
use heislab_core::rng::{cube_point, seeded, sphere_point};
use rand::Rng;

/// Criteria run one at a time so each runtime budget is measured without
/// contention from sibling tests.
fn exclusive() -> MutexGuard<'static, ()> {
    static LOCK: OnceLock<Mutex<()>> = OnceLock::new();
    match LOCK.get_or_init(|| Mutex::new(())).lock() {
        Ok(g) => g,
        Err(poisoned) => poisoned.into_inner(),
    }
}

fn budget(name: &str, started: Instant, seconds: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < seconds, "{name} took {elapsed:.2}s, budget {seconds}s");
    println!("{name}: PASS ({elapsed:.2}s)");
}

fn random_point(rng: &mut rand_chacha::ChaCha8Rng, r: f64) -> HeisenbergPoint {
    HeisenbergPoint::new(1, cube_point(rng, 3, r)).unwrap()
}

/// Convergence order as the log-log slope of an (h, residual) table.
fn log_log_order(seq: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = seq.iter().map(|(h, _)| h.ln()).collect();
    let ys: Vec<f64> = seq.iter().map(|(_, r)| r.max(1e-300).ln()).collect();
    heislab_core::linalg::line_fit(&xs, &ys).0
}

#[test]
fn c01_metric_suite() {
    let _guard = exclusive();
    let t0 = Instant::now();
    let mut rng = seeded(101);
    for _ in 0..10_000 {
        let g = random_point(&mut rng, 2.0);
        let p = random_point(&mut rng, 2.0);
        let q = random_point(&mut rng, 2.0);
        let r = random_point(&mut rng, 2.0);
        let dpq = koranyi_dist(&p, &q).unwrap();
        let dqp = koranyi_dist(&q, &p).unwrap();
        assert_eq!(dpq.to_bits(), dqp.to_bits(), "symmetry must be exact");
        let dpr = koranyi_dist(&p, &r).unwrap();
        let dqr = koranyi_dist(&q, &r).unwrap();
        assert!(dpr <= dpq + dqr + 1e-10, "triangle inequality");
        let dg = koranyi_dist(&group_mul(&g, &p).unwrap(), &group_mul(&g, &q).unwrap()).unwrap();
        assert!((dg - dpq).abs() < 1e-10, "left invariance: {dg} vs {dpq}");
    }
    for &t in &[2.0, 0.09, -5.5, 1e-7] {
        let p = HeisenbergPoint::h1(0.0, 0.0, t);
        assert_eq!(
            koranyi_dist(&p, &HeisenbergPoint::origin(1)).unwrap(),
            t.abs().sqrt(),
            "vertical distance must be exactly |t|^(1/2)"
        );
    }
    budget("criterion 01 metric suite", t0, 5.0);
}

#[test]
fn c02_comparison_bounds() {
    let _guard = exclusive();
    let t0 = Instant::now();
    let scan = comparison_ratio_scan(10_000, 2.0, 7).unwrap();
    assert!(scan.max_euclid_ratio.is_finite());
    assert!(scan.max_koranyi_ratio.is_finite());
    let scan2 = comparison_ratio_scan(20_000, 2.0, 7).unwrap();
    let change1 = (scan2.max_euclid_ratio - scan.max_euclid_ratio) / scan.max_euclid_ratio;
    let change2 = (scan2.max_koranyi_ratio - scan.max_koranyi_ratio) / scan.max_koranyi_ratio;
    assert!((0.0..0.05).contains(&change1), "euclid ratio drift {change1}");
    assert!((0.0..0.05).contains(&change2), "koranyi ratio drift {change2}");
    budget("criterion 02 comparison bounds", t0, 10.0);
}

fn random_int_poly(rng: &mut rand_chacha::ChaCha8Rng, dim: usize, deg: u32) -> Polynomial {
    let mut p = Polynomial::zero(dim);
    for _ in 0..4 {
        let e: Vec<u32> = (0..dim).map(|_| rng.random_range(0..=deg)).collect();
        p = p.add(&Polynomial::monomial(dim, e, rng.random_range(-8i32..=8) as f64));
    }
    p
}

fn random_int_form(
    rng: &mut rand_chacha::ChaCha8Rng,
    dim: usize,
    degree: usize,
    coeff_deg: u32,
) -> DifferentialForm {
    let mut f = DifferentialForm::zero(dim, degree);
    for idx in heislab_core::forms::index_tuples(dim, degree) {
        f.set_term(idx, ScalarField::poly(random_int_poly(rng, dim, coeff_deg)));
    }
    f
}

#[test]
fn c03_exterior_calculus() {
    let _guard = exclusive();
    let t0 = Instant::now();
    let mut rng = seeded(303);
    for _ in 0..100 {
        let deg_a = rng.random_range(0..=2usize);
        let deg_b = rng.random_range(0..=2usize);
        let a = random_int_form(&mut rng, 3, deg_a, 2);
        let b = random_int_form(&mut rng, 3, deg_b, 2);
        // d ∘ d = 0 as a polynomial identity
        assert!(exterior_d(&exterior_d(&a)).is_zero_poly());
        // Leibniz: d(a∧b) = da∧b + (-1)^{deg a} a∧db, polynomial-exact
        let lhs = exterior_d(&wedge(&a, &b).unwrap());
        let sign = if deg_a % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = wedge(&exterior_d(&a), &b)
            .unwrap()
            .add(&wedge(&a, &exterior_d(&b)).unwrap().scale(sign))
            .unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero_poly(), "Leibniz identity");
    }
    // dα = 4 Σ dp_{2j} ∧ dp_{2j-1}, i.e. the coefficient of dx∧dy is -4
    for n in [1usize, 2] {
        let da = exterior_d(&contact_form(n));
        assert_eq!(da.terms().len(), n);
        for j in 0..n {
            let c = da.coefficient(&[2 * j, 2 * j + 1]).unwrap().as_poly().unwrap();
            assert_eq!(c, &Polynomial::constant(2 * n + 1, -4.0));
        }
    }
    budget("criterion 03 exterior calculus", t0, 5.0);
}

#[test]
fn c04_lefschetz_decomposition() {
    let _guard = exclusive();
    let t0 = Instant::now();
    let mut rng = seeded(404);
    for degree in [2usize, 3] {
        for _ in 0..50 {
            let kappa = random_int_form(&mut rng, 3, degree, 3);
            let (beta, sigma) = lefschetz_decompose(&kappa, 1).unwrap();
            let res = lefschetz_residual(&kappa, &beta, &sigma, 1).unwrap();
            assert!(res.is_zero_poly(), "degree-{degree} reconstruction must be exact");
        }
    }
    // n = 2 at degree n+1: sampled residual < 1e-12
    for _ in 0..10 {
        let kappa = random_int_form(&mut rng, 5, 3, 2);
        let (beta, sigma) = lefschetz_decompose(&kappa, 2).unwrap();
        let res = lefschetz_residual(&kappa, &beta, &sigma, 2).unwrap();
        let scale = kappa.max_abs_poly_coeff().max(1.0);
        for _ in 0..20 {
            let x = cube_point(&mut rng, 5, 1.0);
            let vs: Vec<Vec<f64>> = (0..3).map(|_| cube_point(&mut rng, 5, 1.0)).collect();
            let v = res.evaluate(&x, &vs).unwrap();
            assert!(v.abs() < 1e-12 * scale, "sampled residual {v}");
        }
    }
    budget("criterion 04 lefschetz", t0, 10.0);
}

#[test]
fn c05_stokes_order() {
    let _guard = exclusive();
    let t0 = Instant::now();
    let mut rng = seeded(505);
    let id2 = SmoothMap::identity(2);
    let id3 = SmoothMap::identity(3);
    let rule1 = simplex_quadrature(1, 4).unwrap();
    let rule2 = simplex_quadrature(2, 4).unwrap();
    let rule3 = simplex_quadrature(3, 4).unwrap();
    // disk: 5 random 1-forms with a guaranteed constant part in dω
    let disks: Vec<BallMesh> =
        (3..=6).map(|l| BallMesh::unit_ball(2, l).unwrap()).collect();
    for form_i in 0..5 {
        let mut omega = random_int_form(&mut rng, 2, 1, 2);
        let c0 = (1 + form_i) as f64;
        omega.add_term(vec![1], ScalarField::poly(Polynomial::var(2, 0).scale(c0)));
        let mut seq = Vec::new();
        for ball in &disks {
            let res = stokes_residual(&id2, &omega, ball, &rule1, &rule2).unwrap();
            seq.push((ball.max_edge(), res.abs()));
        }
        let order = log_log_order(&seq);
        assert!((order - 2.0).abs() < 0.3, "disk form {form_i}: order {order}");
    }
    // ball: 5 random 2-forms with a constant part in dω
    let balls: Vec<BallMesh> =
        (1..=4).map(|l| BallMesh::unit_ball(3, l).unwrap()).collect();
    for form_i in 0..5 {
        let mut omega = random_int_form(&mut rng, 3, 2, 1);
        let c0 = (1 + form_i) as f64;
        omega.add_term(vec![1, 2], ScalarField::poly(Polynomial::var(3, 0).scale(c0)));
        let mut seq = Vec::new();
        for ball in &balls {
            let res = stokes_residual(&id3, &omega, ball, &rule2, &rule3).unwrap();
            seq.push((ball.max_edge(), res.abs()));
        }
        let order = log_log_order(&seq);
        assert!((order - 2.0).abs() < 0.3, "ball form {form_i}: order {order}");
    }
    budget("criterion 05 stokes order", t0, 60.0);
}

#[test]
fn c06_linking() {
    let _guard = exclusive();
    let t0 = Instant::now();
    // Gauss oracle on the three standard pairs
    let (a, b) = presets::unlink(512);
    assert!(gauss_linking(&a, &b).unwrap().abs() < 1e-3);
    let (a, b) = presets::hopf_link(512);
    let hopf_lk = gauss_linking(&a, &b).unwrap();
    assert!((hopf_lk.abs() - 1.0).abs() < 1e-3, "hopf link {hopf_lk}");
    let (a, b) = presets::torus_link_2_4(512);
    let torus_lk = gauss_linking(&a, &b).unwrap();
    assert!((torus_lk.abs() - 2.0).abs() < 1e-3, "torus link {torus_lk}");

    // analytic linking of the circle against the induction form
    let phi = SphereEmbedding::One {
        eval: std::sync::Arc::new(|s: f64| vec![s.cos(), s.sin(), 0.0]),
        samples: 2048,
    };
    let form = mv_induction_build(&phi, 0.15).unwrap();
    let base = sample_parametric(&gallery::unit_circle_r3(), 16384).unwrap();
    let mesh = SphereMesh::unit_sphere(1, 8).unwrap();
    let res = analytic_linking(
        LinkingMapInput::SampledCircle(&base),
        &form.omega,
        Some(&form.eta),
        &mesh,
        &[0.2, 0.1, 0.05, 0.025],
    )
    .unwrap();
    // Cauchy defects decrease monotonically for the Lipschitz circle
    for w in res.cauchy_defects.windows(2) {
        assert!(w[1] < w[0], "defects must decrease: {:?}", res.cauchy_defects);
    }
    // normalized by the dipole charge, the analytic value is the integer
    // the Gauss oracle measures on the standard Hopf pair
    let normalized = res.value.abs() / form.base_charge;
    assert!(
        (normalized - hopf_lk.abs()).abs() < 1e-2,
        "analytic {normalized} vs gauss {}",
        hopf_lk.abs()
    );
    budget("criterion 06 linking", t0, 120.0);
}

#[test]
fn c07_mayer_vietoris() {
    let _guard = exclusive();
    let t0 = Instant::now();
    let base = mv_induction_build(
        &SphereEmbedding::Zero { minus: vec![-1.0, 0.0, 0.0], plus: vec![1.0, 0.0, 0.0] },
        0.2,
    )
    .unwrap();
    assert_eq!(base.base_charge, 2.0, "base integral must be exactly 2");
    let circle = SphereEmbedding::One {
        eval: std::sync::Arc::new(|s: f64| vec![s.cos(), s.sin(), 0.0]),
        samples: 2048,
    };
    let map = gallery::circle_map_to_ambient(&gallery::unit_circle_r3()).unwrap();
    let mesh = SphereMesh::unit_sphere(1, 8).unwrap();
    let rule = simplex_quadrature(1, 4).unwrap();
    let mut integrals = Vec::new();
    for tube in [0.15, 0.075] {
        let form = mv_induction_build(&circle, tube).unwrap();
        let v = integrate_pullback(&map, &form.omega, &mesh, &rule).unwrap();
        assert!(
            (v.abs() - form.base_charge).abs() < 1e-2,
            "tube {tube}: step magnitude {v} vs base {}",
            form.base_charge
        );
        integrals.push(v.abs());
    }
    assert!(
        (integrals[0] - integrals[1]).abs() < 1e-2,
        "tube halving moved the integral: {integrals:?}"
    );
    budget("criterion 07 mayer-vietoris", t0, 120.0);
}

#[test]
fn c08_hopf_invariant() {
    let _guard = exclusive();
    let t0 = Instant::now();
    let mesh = SphereMesh::unit_sphere(3, 3).unwrap();
    let h = gallery::hopf_smooth_map();
    let sample = sample_sphere_map(&mesh, |x| {
        let mut y = h.eval(x);
        let n: f64 = y.iter().map(|c| c * c).sum::<f64>().sqrt();
        for c in &mut y {
            *c /= n;
        }
        y
    })
    .unwrap();
    let unit3 = |p: [f64; 3]| -> Vec<f64> {
        let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        vec![p[0] / n, p[1] / n, p[2] / n]
    };
    let p1 = unit3([0.05, 0.02, 1.0]);
    let q1 = unit3([0.03, -0.04, -1.0]);
    let p2 = unit3([0.9, 0.1, 0.3]);
    let q2 = unit3([-0.2, 0.8, -0.4]);
    let r1 = hopf_via_fibers(&sample, &p1, &q1).unwrap();
    assert!(
        (r1.value - r1.value.round()).abs() < 1e-2 && r1.value.round().abs() == 1.0,
        "hopf value {}",
        r1.value
    );
    let r2 = hopf_via_fibers(&sample, &p2, &q2).unwrap();
    assert!((r1.value - r2.value).abs() < 2e-2, "pair stability {} vs {}", r1.value, r2.value);
    let mut rng = seeded(808);
    let mut poles = Vec::new();
    while poles.len() < 2 {
        let c = sphere_point(&mut rng, 4);
        poles.push([c[0], c[1], c[2], c[3]]);
    }
    let va = hopf_via_fibers_with_pole(&sample, &p1, &q1, &poles[0]).unwrap();
    let vb = hopf_via_fibers_with_pole(&sample, &p1, &q1, &poles[1]).unwrap();
    assert!((va.value - vb.value).abs() < 2e-2, "pole stability {} vs {}", va.value, vb.value);
    // null-homotopic test map: image inside the upper cap
    let null_sample = sample_sphere_map(&mesh, |x| {
        let y = h.eval(x);
        let v = [0.35 * y[0], 0.35 * y[1], 1.0];
        unit3([v[0], v[1], v[2]])
    })
    .unwrap();
    let r0 = hopf_via_fibers(&null_sample, &unit3([0.1, 0.0, -1.0]), &unit3([0.0, 0.2, -1.0]))
        .unwrap();
    assert_eq!(r0.value, 0.0, "null-homotopic map must give 0");
    budget("criterion 08 hopf invariant", t0, 180.0);
}

#[test]
fn c09_horizontality_and_rank() {
    let _guard = exclusive();
    let t0 = Instant::now();
    // |φ*α| < 1e-10 at 1000 nodes for the figure-eight lift
    let lift = gallery::figure_eight_lift();
    for i in 0..1000 {
        let s = 2.0 * std::f64::consts::PI * i as f64 / 1000.0;
        let p = HeisenbergPoint::new(1, lift.eval(&[s])).unwrap();
        let j = lift.jacobian(&[s]);
        let v: Vec<f64> = (0..3).map(|r| j.get(r, 0)).collect();
        let a = contact_form_at(&p).pair(&v).unwrap();
        assert!(a.abs() < 1e-10, "lift contact defect {a} at s = {s}");
    }
    // horizontal gallery maps: second singular value < 1e-8
    let mut rng = seeded(909);
    for name in ["horizontal_disk", "polyline_ruled_disk", "figure_eight_disk"] {
        let map = gallery::lookup(name).unwrap();
        for _ in 0..50 {
            let x: Vec<f64> = loop {
                let x = cube_point(&mut rng, 2, 0.95);
                if x.iter().map(|c| c * c).sum::<f64>().sqrt() > 0.1 {
                    break x;
                }
            };
            let sv = singular_values(&map.jacobian(&x));
            assert!(sv[1] < 1e-8, "{name}: second singular value {}", sv[1]);
        }
    }
    // horizontality obstruction on the horizontal disk: values < 1e-6
    let ball = BallMesh::unit_ball(2, 5).unwrap();
    let disk = gallery::horizontal_disk();
    let kappa = {
        let mut f = DifferentialForm::zero(3, 1);
        f.set_term(vec![1], ScalarField::poly(Polynomial::var(3, 0)));
        f.set_term(vec![0], ScalarField::poly(random_int_poly(&mut rng, 3, 2)));
        f
    };
    let rows =
        horizontality_obstruction_test(&disk, &kappa, &ball, &[0.4, 0.25, 0.15], 48).unwrap();
    for (eps, v) in rows {
        assert!(v < 1e-6, "eps {eps}: obstruction value {v}");
    }
    budget("criterion 09 horizontality and rank", t0, 30.0);
}

#[test]
fn c10_mollification_rates() {
    let _guard = exclusive();
    let t0 = Instant::now();
    let alpha = contact_form(1);
    let dx = DifferentialForm::dx(3, 0);
    // γ = 1 polyline: α-defect slope ≈ 2γ-1 = 1
    let poly = sample_parametric(&gallery::figure_eight_polyline(), 16384).unwrap();
    let eps_fine: Vec<f64> = (0..5).map(|i| 0.0246 / 2f64.powi(i)).collect();
    let tables = contact_defect_rates(
        &poly,
        &eps_fine,
        &[("alpha".into(), alpha.clone()), ("dx".into(), dx.clone())],
        20_000,
    )
    .unwrap();
    assert!((tables[0].slope - 1.0).abs() < 0.15, "polyline alpha slope {}", tables[0].slope);
    // generic-form slope ≈ k(γ-1) = 0 for the Lipschitz polyline
    assert!(tables[1].slope.abs() < 0.2, "polyline dx slope {}", tables[1].slope);

    // γ = 1/2 identity: α-defect slope ≈ 0
    let ident = sample_parametric(&gallery::identity_into_h(1, 1.0), 24).unwrap();
    let tables = contact_defect_rates(
        &ident,
        &[0.5, 0.35, 0.25, 0.18],
        &[("alpha".into(), alpha)],
        3_000,
    )
    .unwrap();
    assert!(tables[0].slope.abs() < 0.15, "identity alpha slope {}", tables[0].slope);

    // genuinely C^{1/2} curve: generic-form slope ≈ k(γ-1) = -1/2
    let w = sample_parametric(&gallery::weierstrass_curve(), 4096).unwrap();
    let eps: Vec<f64> = (0..6).map(|i| 0.2 / 2f64.powi(i)).collect();
    let tables = contact_defect_rates(&w, &eps, &[("dx".into(), dx)], 10_000).unwrap();
    assert!((tables[0].slope + 0.5).abs() < 0.2, "weierstrass dx slope {}", tables[0].slope);
    budget("criterion 10 mollification rates", t0, 120.0);
}

#[test]
fn c11_holder_estimator() {
    let _guard = exclusive();
    let t0 = Instant::now();
    let ident = sample_parametric(&gallery::identity_into_h(1, 1.0), 48).unwrap();
    let k = holder_fit(&ident, MetricTag::Koranyi, 20_000, 7).unwrap();
    assert!((0.45..=0.55).contains(&k.exponent), "identity Korányi exponent {}", k.exponent);
    let e = holder_fit(&ident, MetricTag::Euclidean, 20_000, 7).unwrap();
    assert!((0.95..=1.05).contains(&e.exponent), "identity Euclidean exponent {}", e.exponent);
    let vert = sample_parametric(&gallery::vertical_segment(), 512).unwrap();
    let v = holder_fit(&vert, MetricTag::Koranyi, 20_000, 3).unwrap();
    assert!((v.exponent - 0.5).abs() < 0.02, "vertical exponent {}", v.exponent);
    budget("criterion 11 holder estimator", t0, 30.0);
}

#[test]
fn c12_gromov_region() {
    let _guard = exclusive();
    let t0 = Instant::now();
    let gammas: Vec<f64> = (0..10).map(|i| 0.55 + 0.05 * i as f64).collect();
    let thetas: Vec<f64> = (0..10).map(|i| 0.1 + 0.1 * i as f64).collect();
    for k in 1..=3usize {
        for &g in &gammas {
            for &th in &thetas {
                let predicate = gromov_region(k, g, th).unwrap();
                let direct = 2.0 * g + th * (k as f64 - 1.0) - k as f64 > 0.0;
                assert_eq!(predicate, direct, "k={k} gamma={g} theta={th}");
                assert_eq!(
                    predicate,
                    gromov_margin(k, g, th) > 0.0,
                    "margin consistency"
                );
            }
        }
        // monotone in gamma and theta at every grid point
        for w in gammas.windows(2) {
            for &th in &thetas {
                let lo = gromov_region(k, w[0], th).unwrap();
                let hi = gromov_region(k, w[1], th).unwrap();
                assert!(!lo || hi);
            }
        }
        for &g in &gammas {
            for w in thetas.windows(2) {
                let lo = gromov_region(k, g, w[0]).unwrap();
                let hi = gromov_region(k, g, w[1]).unwrap();
                assert!(!lo || hi);
            }
        }
    }
    budget("criterion 12 gromov region", t0, 1.0);
}
