//! `heislab`: reproducible experiment driver for the Heisenberg-group
//! toolkit. Every subcommand writes a CSV or JSON artifact plus a run
//! manifest (config echo, version, wall time, output hashes); identical
//! config and seed give byte-identical artifact bodies.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use heislab_core::approx::{
    contact_defect_rates, gromov_margin, gromov_region, holder_fit, sample_parametric, MetricTag,
};
use heislab_core::error::Error;
use heislab_core::forms::{
    contact_form, form_from_json, form_to_json, lefschetz_decompose, lefschetz_residual,
    DifferentialForm, Polynomial, ScalarField, SmoothMap,
};
use heislab_core::gallery;
use heislab_core::heis::{
    comparison_ratio_scan_h, group_mul, koranyi_dist, HeisenbergPoint,
};
use heislab_core::hopf::{
    calibrated_primitive, hopf_via_fibers, hopf_via_forms, sample_sphere_map, unit_area_form_s2,
};
use heislab_core::linking::{
    analytic_linking, gauss_linking_threads, mv_induction_build, presets, LinkingMapInput,
    PlCurve, SphereEmbedding,
};
use heislab_core::mesh::{
    integrate_pullback, simplex_quadrature, stokes_residual, BallMesh, SphereMesh,
};
use heislab_core::rng::{cube_point, seeded};

use output::{num, Run};

#[derive(Parser)]
#[command(name = "heislab", version, about = "Heisenberg-group geometry experiments")]
struct Cli {
    /// Worker thread cap (default: HEISLAB_THREADS or 1).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Koranyi,
    Euclidean,
}

#[derive(Clone, Copy, ValueEnum)]
enum LinkPreset {
    Unlink,
    Hopf,
    Torus24,
}

#[derive(Clone, Copy, ValueEnum)]
enum HopfMethod {
    Fibers,
    Forms,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Korányi distance between two points of ℍ_n.
    KoranyiDist {
        /// Comma-separated coordinates (length 2n+1).
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Metric axioms scan: symmetry, triangle inequality, left invariance.
    VerifyMetric {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 2.0)]
        radius: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "verify_metric.csv")]
        out: PathBuf,
    },
    /// Euclidean-vs-Korányi comparison ratio maxima over random pairs.
    ComparisonScan {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 2.0)]
        radius: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "comparison_scan.csv")]
        out: PathBuf,
    },
    /// Lefschetz decomposition of a random polynomial form (or one from a
    /// JSON file).
    Lefschetz {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Decompose this serialized form instead of a random one.
        #[arg(long)]
        form: Option<PathBuf>,
        #[arg(long, default_value = "lefschetz.json")]
        out: PathBuf,
    },
    /// Stokes residuals under refinement with a convergence-order fit.
    StokesCheck {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3), default_value_t = 2)]
        ball_dim: u8,
        /// Comma-separated refinement levels.
        #[arg(long, default_value = "3,4,5,6")]
        levels: String,
        #[arg(long, default_value_t = 5)]
        forms: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "stokes_check.csv")]
        out: PathBuf,
    },
    /// Gauss linking number of two closed curves.
    LinkingGauss {
        #[arg(long, value_enum)]
        preset: Option<LinkPreset>,
        #[arg(long)]
        curve_a: Option<PathBuf>,
        #[arg(long)]
        curve_b: Option<PathBuf>,
        #[arg(long, default_value_t = 512)]
        segments: usize,
        #[arg(long, default_value = "linking_gauss.json")]
        out: PathBuf,
    },
    /// Analytic linking of the unit circle against its induction form.
    LinkingAnalytic {
        #[arg(long, default_value_t = 0.15)]
        tube_radius: f64,
        #[arg(long, default_value = "0.2,0.1,0.05,0.025")]
        eps: String,
        #[arg(long, default_value_t = 16384)]
        grid: usize,
        #[arg(long, default_value_t = 8)]
        mesh_level: usize,
        #[arg(long, default_value = "linking_analytic.csv")]
        out: PathBuf,
    },
    /// Build the Mayer–Vietoris linking form for 𝕊⁰ or 𝕊¹.
    MvBuild {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1), default_value_t = 1)]
        k: u8,
        #[arg(long, default_value_t = 0.15)]
        tube_radius: f64,
        #[arg(long, default_value = "mv_build.json")]
        out: PathBuf,
    },
    /// Hopf invariant of a sampled map 𝕊³ → 𝕊².
    Hopf {
        #[arg(long, default_value = "hopf_map")]
        map: String,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, value_enum, default_value_t = HopfMethod::Fibers)]
        method: HopfMethod,
        /// Also write the extracted fibers as curve CSVs next to the report.
        #[arg(long)]
        export_fibers: bool,
        #[arg(long, default_value = "hopf.json")]
        out: PathBuf,
    },
    /// Mollification defect rates of pulled-back forms for a gallery map.
    MollifyRates {
        #[arg(long, default_value = "figure_eight_polyline")]
        map: String,
        #[arg(long, default_value_t = 16384)]
        grid: usize,
        #[arg(long, default_value = "0.0246,0.0123,0.00615,0.003075,0.0015375")]
        eps: String,
        /// Comma-separated form ids among alpha, dx, dy, dt.
        #[arg(long, default_value = "alpha,dx")]
        forms: String,
        #[arg(long, default_value_t = 20_000)]
        node_budget: usize,
        #[arg(long, default_value = "mollify_rates.csv")]
        out: PathBuf,
    },
    /// Hölder exponent fit for a gallery map under a metric.
    HolderFit {
        #[arg(long, default_value = "identity_H1")]
        map: String,
        #[arg(long, value_enum, default_value_t = MetricArg::Koranyi)]
        metric: MetricArg,
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 48)]
        grid: usize,
        #[arg(long, default_value = "holder_fit.json")]
        out: PathBuf,
    },
    /// The no-embedding predicate 2γ + θ(k-1) - k > 0.
    GromovRegion {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        theta: f64,
        /// Also write the full grid table over k ∈ {1,2,3}.
        #[arg(long)]
        grid: bool,
        #[arg(long, default_value = "gromov_region.csv")]
        out: Option<PathBuf>,
    },
    /// List the gallery maps.
    GalleryList {
        #[arg(long, default_value = "gallery.json")]
        out: PathBuf,
    },
}

fn parse_coords(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

fn parse_eps(text: &str) -> Result<Vec<f64>, Error> {
    parse_coords(text)
}

fn threads(cli_threads: Option<usize>) -> usize {
    cli_threads.unwrap_or_else(heislab_core::par::default_threads)
}

fn named_form(id: &str) -> Result<DifferentialForm, Error> {
    match id {
        "alpha" => Ok(contact_form(1)),
        "dx" => Ok(DifferentialForm::dx(3, 0)),
        "dy" => Ok(DifferentialForm::dx(3, 1)),
        "dt" => Ok(DifferentialForm::dx(3, 2)),
        other => Err(Error::InvalidArgument(format!("unknown form id '{other}'"))),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let nthreads = threads(cli.threads);
    match cli.command {
        Command::KoranyiDist { p, q, out } => {
            let pc = parse_coords(&p)?;
            let qc = parse_coords(&q)?;
            if pc.len() % 2 == 0 || pc.len() < 3 {
                return Err(Error::InvalidArgument(
                    "points need 2n+1 coordinates".to_string(),
                ));
            }
            let n = (pc.len() - 1) / 2;
            let hp = HeisenbergPoint::new(n, pc.clone())?;
            let hq = HeisenbergPoint::new(n, qc.clone())?;
            let d = koranyi_dist(&hp, &hq)?;
            println!("{}", num(d));
            if let Some(out) = out {
                let mut run = Run::new("koranyi-dist", json!({"p": p, "q": q}));
                run.write(
                    &out,
                    &serde_json::to_string_pretty(&json!({"p": pc, "q": qc, "distance": d}))?,
                )?;
                run.finish()?;
            }
            Ok(())
        }
        Command::VerifyMetric { samples, radius, seed, out } => {
            let mut rng = seeded(seed);
            let mut sym: f64 = 0.0;
            let mut tri: f64 = 0.0;
            let mut inv: f64 = 0.0;
            for _ in 0..samples {
                let p = HeisenbergPoint::new(1, cube_point(&mut rng, 3, radius))?;
                let q = HeisenbergPoint::new(1, cube_point(&mut rng, 3, radius))?;
                let r = HeisenbergPoint::new(1, cube_point(&mut rng, 3, radius))?;
                let g = HeisenbergPoint::new(1, cube_point(&mut rng, 3, radius))?;
                let dpq = koranyi_dist(&p, &q)?;
                sym = sym.max((dpq - koranyi_dist(&q, &p)?).abs());
                tri = tri.max(koranyi_dist(&p, &r)? - dpq - koranyi_dist(&q, &r)?);
                let dg = koranyi_dist(&group_mul(&g, &p)?, &group_mul(&g, &q)?)?;
                inv = inv.max((dg - dpq).abs());
            }
            let mut body = String::from("check,max_violation\n");
            body.push_str(&format!("symmetry,{}\n", num(sym)));
            body.push_str(&format!("triangle,{}\n", num(tri.max(0.0))));
            body.push_str(&format!("left_invariance,{}\n", num(inv)));
            println!("symmetry {} triangle {} left-invariance {}", num(sym), num(tri), num(inv));
            let mut run = Run::new(
                "verify-metric",
                json!({"samples": samples, "radius": radius, "seed": seed}),
            );
            run.write(&out, &body)?;
            run.finish()?;
            Ok(())
        }
        Command::ComparisonScan { samples, radius, seed, out } => {
            let mut body = String::from("samples,max_euclid_ratio,max_koranyi_ratio\n");
            for count in [samples / 4, samples / 2, samples] {
                if count == 0 {
                    continue;
                }
                let scan = comparison_ratio_scan_h(1, count, radius, seed, nthreads)?;
                body.push_str(&format!(
                    "{},{},{}\n",
                    count,
                    num(scan.max_euclid_ratio),
                    num(scan.max_koranyi_ratio)
                ));
            }
            let scan = comparison_ratio_scan_h(1, samples, radius, seed, nthreads)?;
            println!(
                "max |p-q|/((|p|+|q|+1) d_H) = {}\nmax d_H/((√|p|+√|q|+1) √|p-q|) = {}",
                num(scan.max_euclid_ratio),
                num(scan.max_koranyi_ratio)
            );
            let mut run = Run::new(
                "comparison-scan",
                json!({"samples": samples, "radius": radius, "seed": seed}),
            );
            run.write(&out, &body)?;
            run.finish()?;
            Ok(())
        }
        Command::Lefschetz { n, degree, seed, form, out } => {
            let kappa = match form {
                Some(path) => form_from_json(&std::fs::read_to_string(path)?)?,
                None => heislab_core::forms::random_integer_form(2 * n + 1, degree, 2, seed),
            };
            let (beta, sigma) = lefschetz_decompose(&kappa, n)?;
            let residual = lefschetz_residual(&kappa, &beta, &sigma, n)?;
            let max_residual = if residual.is_zero_poly() {
                0.0
            } else {
                residual.max_abs_poly_coeff()
            };
            println!("degree {degree} form on ℝ^{}: max residual {}", 2 * n + 1, num(max_residual));
            let doc = json!({
                "n": n,
                "degree": degree,
                "kappa": serde_json::from_str::<serde_json::Value>(&form_to_json(&kappa)?)?,
                "beta": serde_json::from_str::<serde_json::Value>(&form_to_json(&beta)?)?,
                "sigma": serde_json::from_str::<serde_json::Value>(&form_to_json(&sigma)?)?,
                "max_residual": max_residual,
            });
            let mut run =
                Run::new("lefschetz", json!({"n": n, "degree": degree, "seed": seed}));
            run.write(&out, &serde_json::to_string_pretty(&doc)?)?;
            run.finish()?;
            Ok(())
        }
        Command::StokesCheck { ball_dim, levels, forms, seed, out } => {
            let levels: Vec<usize> = levels
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_, _>>()?;
            let dim = ball_dim as usize;
            let rule_b = simplex_quadrature(dim - 1, 4)?;
            let rule_i = simplex_quadrature(dim, 4)?;
            let id = SmoothMap::identity(dim);
            let balls: Vec<BallMesh> = levels
                .iter()
                .map(|&l| BallMesh::unit_ball(dim, l))
                .collect::<Result<_, _>>()?;
            let mut body = String::from("form,level,h,residual\n");
            let mut orders = Vec::new();
            for fi in 0..forms {
                let mut omega =
                    heislab_core::forms::random_integer_form(dim, dim - 1, 1, seed ^ fi as u64);
                // guarantee a constant part in dω
                let anchor: Vec<usize> = (1..dim).collect();
                omega.add_term(
                    anchor,
                    ScalarField::poly(Polynomial::var(dim, 0).scale((1 + fi) as f64)),
                );
                let mut seq = Vec::new();
                for (lv, ball) in levels.iter().zip(&balls) {
                    let res = stokes_residual(&id, &omega, ball, &rule_b, &rule_i)?;
                    body.push_str(&format!(
                        "{fi},{lv},{},{}\n",
                        num(ball.max_edge()),
                        num(res.abs())
                    ));
                    seq.push((ball.max_edge(), res.abs()));
                }
                let xs: Vec<f64> = seq.iter().map(|(h, _)| h.ln()).collect();
                let ys: Vec<f64> = seq.iter().map(|(_, r)| r.max(1e-300).ln()).collect();
                orders.push(heislab_core::linalg::line_fit(&xs, &ys).0);
            }
            for (fi, order) in orders.iter().enumerate() {
                println!("form {fi}: order {}", num(*order));
            }
            let mut run = Run::new(
                "stokes-check",
                json!({"ball_dim": dim, "levels": levels, "forms": forms, "seed": seed}),
            );
            run.write(&out, &body)?;
            run.finish()?;
            Ok(())
        }
        Command::LinkingGauss { preset, curve_a, curve_b, segments, out } => {
            let (a, b, label) = match (preset, curve_a, curve_b) {
                (Some(LinkPreset::Unlink), _, _) => {
                    let (a, b) = presets::unlink(segments);
                    (a, b, "unlink".to_string())
                }
                (Some(LinkPreset::Hopf), _, _) => {
                    let (a, b) = presets::hopf_link(segments);
                    (a, b, "hopf".to_string())
                }
                (Some(LinkPreset::Torus24), _, _) => {
                    let (a, b) = presets::torus_link_2_4(segments);
                    (a, b, "torus24".to_string())
                }
                (None, Some(pa), Some(pb)) => {
                    let a = PlCurve::from_csv(&std::fs::read_to_string(&pa)?)?;
                    let b = PlCurve::from_csv(&std::fs::read_to_string(&pb)?)?;
                    (a, b, format!("{}:{}", pa.display(), pb.display()))
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "provide --preset or both --curve-a and --curve-b".to_string(),
                    ))
                }
            };
            let lk = gauss_linking_threads(&a, &b, nthreads)?;
            println!("{}", num(lk));
            let mut run = Run::new(
                "linking-gauss",
                json!({"input": label, "segments": segments}),
            );
            run.write(
                &out,
                &serde_json::to_string_pretty(&json!({"input": label, "linking": lk}))?,
            )?;
            run.finish()?;
            Ok(())
        }
        Command::LinkingAnalytic { tube_radius, eps, grid, mesh_level, out } => {
            let eps = parse_eps(&eps)?;
            let phi = SphereEmbedding::One {
                eval: Arc::new(|s: f64| vec![s.cos(), s.sin(), 0.0]),
                samples: 2048,
            };
            let form = mv_induction_build(&phi, tube_radius)?;
            let base = sample_parametric(&gallery::unit_circle_r3(), grid)?;
            let mesh = SphereMesh::unit_sphere(1, mesh_level)?;
            let res = analytic_linking(
                LinkingMapInput::SampledCircle(&base),
                &form.omega,
                Some(&form.eta),
                &mesh,
                &eps,
            )?;
            let mut body = String::from("eps,value,defect\n");
            for (i, (e, v)) in res.sweep.iter().enumerate() {
                let defect =
                    if i == 0 { 0.0 } else { res.cauchy_defects[i - 1] };
                body.push_str(&format!("{},{},{}\n", num(*e), num(*v), num(defect)));
            }
            println!(
                "limit {} (normalized by dipole charge: {}), converged: {}",
                num(res.value),
                num(res.value / form.base_charge),
                res.converged
            );
            let mut run = Run::new(
                "linking-analytic",
                json!({"tube_radius": tube_radius, "eps": eps, "grid": grid, "mesh_level": mesh_level}),
            );
            run.write(&out, &body)?;
            run.finish()?;
            Ok(())
        }
        Command::MvBuild { k, tube_radius, out } => {
            let (form, integral) = if k == 0 {
                let form = mv_induction_build(
                    &SphereEmbedding::Zero {
                        minus: vec![-1.0, 0.0, 0.0],
                        plus: vec![1.0, 0.0, 0.0],
                    },
                    tube_radius,
                )?;
                let charge = form.base_charge;
                (form, charge)
            } else {
                let phi = SphereEmbedding::One {
                    eval: Arc::new(|s: f64| vec![s.cos(), s.sin(), 0.0]),
                    samples: 2048,
                };
                let form = mv_induction_build(&phi, tube_radius)?;
                let map = gallery::circle_map_to_ambient(&gallery::unit_circle_r3())?;
                let mesh = SphereMesh::unit_sphere(1, 8)?;
                let rule = simplex_quadrature(1, 4)?;
                let v = integrate_pullback(&map, &form.omega, &mesh, &rule)?;
                (form, v)
            };
            println!(
                "level {} base charge {} integral {}",
                form.level,
                num(form.base_charge),
                num(integral)
            );
            let doc = json!({
                "level": form.level,
                "base_charge": form.base_charge,
                "support_gap": form.support_gap,
                "integral": integral,
            });
            let mut run =
                Run::new("mv-build", json!({"k": k, "tube_radius": tube_radius}));
            run.write(&out, &serde_json::to_string_pretty(&doc)?)?;
            run.finish()?;
            Ok(())
        }
        Command::Hopf { map, level, method, export_fibers, out } => {
            if map != "hopf_map" && map != "hopf_null" {
                return Err(Error::InvalidArgument(format!(
                    "unknown sphere map '{map}' (try hopf_map or hopf_null)"
                )));
            }
            let mesh = SphereMesh::unit_sphere(3, level)?;
            let h = gallery::hopf_smooth_map();
            let null = map == "hopf_null";
            let sample = sample_sphere_map(&mesh, |x| {
                let mut y = h.eval(x);
                if null {
                    y = vec![0.35 * y[0], 0.35 * y[1], 1.0];
                }
                let n: f64 = y.iter().map(|c| c * c).sum::<f64>().sqrt();
                for c in &mut y {
                    *c /= n;
                }
                y
            })?;
            let unit = |p: [f64; 3]| -> Vec<f64> {
                let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                vec![p[0] / n, p[1] / n, p[2] / n]
            };
            let (p, q) = if null {
                (unit([0.1, 0.0, -1.0]), unit([0.0, 0.2, -1.0]))
            } else {
                (unit([0.05, 0.02, 1.0]), unit([0.03, -0.04, -1.0]))
            };
            let fibers_value = match method {
                HopfMethod::Forms => None,
                _ => Some(hopf_via_fibers(&sample, &p, &q)?.value),
            };
            let forms_value = match method {
                HopfMethod::Fibers => None,
                _ => {
                    let eta = unit_area_form_s2();
                    let omega = calibrated_primitive(&h, &eta, 11)?;
                    Some(hopf_via_forms(&h, &eta, &omega, &mesh)?)
                }
            };
            let value = fibers_value.or(forms_value).unwrap_or(0.0);
            println!("hopf invariant {}", num(value));
            let doc = json!({
                "map": map,
                "p": p,
                "q": q,
                "value": value,
                "fibers_value": fibers_value,
                "forms_value": forms_value,
                "mesh_level": level,
            });
            let mut run = Run::new("hopf", json!({"map": map, "level": level}));
            run.write(&out, &serde_json::to_string_pretty(&doc)?)?;
            if export_fibers {
                for (target, tag) in [(&p, "p"), (&q, "q")] {
                    let fibers =
                        heislab_core::hopf::extract_fiber_robust(&sample, target, 20)?;
                    for (i, fiber) in fibers.iter().enumerate() {
                        let mut name = out.file_stem().unwrap_or_default().to_os_string();
                        name.push(format!("-fiber-{tag}{i}.csv"));
                        run.write(&out.with_file_name(name), &fiber.to_csv())?;
                    }
                }
            }
            run.finish()?;
            Ok(())
        }
        Command::MollifyRates { map, grid, eps, forms, node_budget, out } => {
            let eps = parse_eps(&eps)?;
            let gallery_map = gallery::lookup(&map)?;
            let base = sample_parametric(&gallery_map, grid)?;
            let form_list: Vec<(String, DifferentialForm)> = forms
                .split(',')
                .map(|id| Ok((id.trim().to_string(), named_form(id.trim())?)))
                .collect::<Result<_, Error>>()?;
            let tables = contact_defect_rates(&base, &eps, &form_list, node_budget)?;
            let mut body = String::from("eps,defect,form_id\n");
            for t in &tables {
                for (e, d) in &t.rows {
                    body.push_str(&format!("{},{},{}\n", num(*e), num(*d), t.form_id));
                }
            }
            for t in &tables {
                println!("{}: slope {}", t.form_id, num(t.slope));
            }
            let mut run = Run::new(
                "mollify-rates",
                json!({"map": map, "grid": grid, "eps": eps, "forms": forms, "node_budget": node_budget}),
            );
            run.write(&out, &body)?;
            run.finish()?;
            Ok(())
        }
        Command::HolderFit { map, metric, pairs, seed, grid, out } => {
            let tag = match metric {
                MetricArg::Koranyi => MetricTag::Koranyi,
                MetricArg::Euclidean => MetricTag::Euclidean,
            };
            let gallery_map = gallery::lookup(&map)?;
            let base = sample_parametric(&gallery_map, grid)?;
            let fit = holder_fit(&base, tag, pairs, seed)?;
            println!("gamma {} C {} residual {}", num(fit.exponent), num(fit.constant), num(fit.residual));
            let doc = json!({
                "gamma": fit.exponent,
                "C": fit.constant,
                "metric": fit.metric,
                "residual": fit.residual,
            });
            let mut run = Run::new(
                "holder-fit",
                json!({"map": map, "pairs": pairs, "seed": seed, "grid": grid}),
            );
            run.write(&out, &serde_json::to_string_pretty(&doc)?)?;
            run.finish()?;
            Ok(())
        }
        Command::GromovRegion { k, gamma, theta, grid, out } => {
            let inside = gromov_region(k, gamma, theta)?;
            let margin = gromov_margin(k, gamma, theta);
            println!("{} {}", inside, num(margin));
            if grid {
                let mut body = String::from("k,gamma,theta,inside,margin\n");
                for kk in 1..=3usize {
                    for gi in 0..10 {
                        let g = 0.55 + 0.05 * gi as f64;
                        for ti in 0..10 {
                            let th = 0.1 + 0.1 * ti as f64;
                            body.push_str(&format!(
                                "{kk},{},{},{},{}\n",
                                num(g),
                                num(th),
                                gromov_region(kk, g, th)?,
                                num(gromov_margin(kk, g, th))
                            ));
                        }
                    }
                }
                if let Some(out) = out {
                    let mut run = Run::new(
                        "gromov-region",
                        json!({"k": k, "gamma": gamma, "theta": theta, "grid": true}),
                    );
                    run.write(&out, &body)?;
                    run.finish()?;
                }
            }
            Ok(())
        }
        Command::GalleryList { out } => {
            let entries: Vec<serde_json::Value> = gallery::registry()
                .iter()
                .map(|m| {
                    json!({
                        "name": m.name,
                        "domain": format!("{:?}", m.domain),
                        "out_dim": m.out_dim,
                        "tags": m.tags.iter().map(|(t, v)| json!({"metric": t, "exponent": v})).collect::<Vec<_>>(),
                    })
                })
                .collect();
            for e in &entries {
                println!("{}", e["name"].as_str().unwrap_or("?"));
            }
            let mut run = Run::new("gallery-list", json!({}));
            run.write(&out, &serde_json::to_string_pretty(&json!(entries))?)?;
            run.finish()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version go to stdout with success
            if e.use_stderr() {
                eprintln!(
                    "{}",
                    json!({"error": e.to_string(), "kind": "usage"})
                );
                return ExitCode::from(2);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({"error": e.to_string(), "kind": error_kind(&e)}));
            ExitCode::FAILURE
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::DegenerateInput(_) => "degenerate_input",
        Error::PerturbAndRetry(_) => "perturb_and_retry",
        Error::Unsupported(_) => "unsupported",
        Error::Io(_) => "io",
        Error::Parse(_) => "parse",
        Error::Json(_) => "json",
    }
}
