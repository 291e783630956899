use std::time::Instant;

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::fixtures::{bundled_lattices, bundled_media, bundled_models, load_medium, load_model};
use super::{CheckRecord, Report, RunConfig};
use crate::error::Result;
use crate::lattice::{decompose, factorization_residual, verify, LatticeInput};
use crate::layered::{cross_oracle, reflection_ode, trace_check, LayeredMedium};
use crate::scattering::verify_eigen;
use crate::schur::identities::{
    determinant_residual, point_residuals, sign_flip_swaps, star_residual, zero_free_min,
};
use crate::schur::{
    schur_algorithm_1d, series_max_diff, taylor_from_rational, taylor_from_weights,
    univariate_rational, SchurData, SchurModel, DEFAULT_MAX_STEPS,
};
use crate::torus::{
    counterexample, counterexample_reference, gram, lambda_profile, log_density_integral,
    poisson_check, star_orthogonality, szego_integral, szego_log_w, MeasureWeight, TorusGrid,
    TorusLine,
};

type Named<T> = Vec<(String, T)>;

struct Inputs {
    models: Named<SchurData>,
    media: Named<LayeredMedium>,
    lattices: Named<LatticeInput>,
    load_errors: Vec<CheckRecord>,
}

impl Inputs {
    fn load(config: &RunConfig) -> Inputs {
        let mut load_errors = Vec::new();
        let models = match &config.models {
            None => bundled_models(),
            Some(paths) => paths
                .iter()
                .filter_map(|p| match load_model(p) {
                    Ok(d) => Some((p.clone(), d)),
                    Err(e) => {
                        load_errors.push(CheckRecord::failed(format!("input.model[{p}]"), e));
                        None
                    }
                })
                .collect(),
        };
        let media = match &config.media {
            None => bundled_media(),
            Some(paths) => paths
                .iter()
                .filter_map(|p| match load_medium(p) {
                    Ok(m) => Some((p.clone(), m)),
                    Err(e) => {
                        load_errors.push(CheckRecord::failed(format!("input.medium[{p}]"), e));
                        None
                    }
                })
                .collect(),
        };
        Inputs {
            models,
            media,
            lattices: bundled_lattices(),
            load_errors,
        }
    }
}

/// Independent stream per check so results do not depend on execution order.
fn rng(config: &RunConfig, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(config.seed);
    r.set_stream(stream);
    r
}

/// Runs a computation producing records for `names`; an error fails them all.
fn run_many<F>(config: &RunConfig, names: &[String], f: F) -> Vec<CheckRecord>
where
    F: FnOnce() -> Result<Vec<CheckRecord>>,
{
    let start = Instant::now();
    let mut out = match f() {
        Ok(records) => records,
        Err(e) => names
            .iter()
            .map(|n| CheckRecord::failed(n.clone(), &e))
            .collect(),
    };
    for (rec, name) in out.iter_mut().zip(names) {
        rec.name = name.clone();
    }
    if config.timing {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        out.iter_mut().for_each(|r| r.runtime_ms = Some(ms));
    }
    out
}

fn run_one<F>(config: &RunConfig, name: String, f: F) -> Vec<CheckRecord>
where
    F: FnOnce() -> Result<CheckRecord>,
{
    run_many(config, &[name], || Ok(vec![f()?]))
}

fn positive(name: &str, value: f64) -> CheckRecord {
    let mut r = CheckRecord::bounded(name, value, 0.0);
    r.passed = value > 0.0;
    r
}

fn below(name: &str, value: f64, bound: f64) -> CheckRecord {
    let mut r = CheckRecord::bounded(name, value, bound);
    r.passed = value < bound;
    r
}

fn exceeds(name: &str, value: f64, threshold: f64) -> CheckRecord {
    let mut r = CheckRecord::bounded(name, value, threshold);
    r.passed = value > threshold;
    r
}

fn eigen_checks(config: &RunConfig) -> Vec<CheckRecord> {
    let n = config.eigen_max;
    run_one(config, "scattering.eigen".into(), || {
        let failures = (0..=n)
            .flat_map(|p| (0..=n).map(move |q| (p, q)))
            .filter(|&(p, q)| !verify_eigen(p, q))
            .count();
        Ok(CheckRecord::bounded("", failures as f64, 0.0)
            .with_detail(format!("{} pairs, exact", (n + 1) * (n + 1))))
    })
}

/// Largest pointwise residual over the torus grid and every level.
fn pointwise_max(model: &SchurModel, grid: &TorusGrid) -> Result<f64> {
    let m = model.top_level();
    let values = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let z = grid.node(i);
            let mut worst: f64 = 0.0;
            for n in 0..=m {
                worst = worst.max(point_residuals(model, n, &z)?.max());
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(values.into_iter().fold(0.0, f64::max))
}

fn random_polydisk_point<R: Rng>(rng: &mut R, d: usize) -> Vec<Complex64> {
    (0..d)
        .map(|_| {
            let rad: f64 = rng.gen::<f64>().sqrt();
            Complex64::from_polar(rad, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect()
}

fn round_trip(data: &SchurData) -> Result<f64> {
    let model = SchurModel::new(data.clone())?;
    let (num, den) = univariate_rational(model.quad(model.top_level())?)?;
    let got = schur_algorithm_1d(&num, &den, DEFAULT_MAX_STEPS)?;
    let zero = Complex64::new(0.0, 0.0);
    let len = got.len().max(data.r().len());
    Ok((0..len)
        .map(|j| {
            let a = got.get(j).copied().unwrap_or(zero);
            let b = data.r().get(j).copied().unwrap_or(zero);
            (a - b).norm()
        })
        .fold(0.0, f64::max))
}

fn schur_checks(config: &RunConfig, name: &str, data: &SchurData, index: u64) -> Vec<CheckRecord> {
    let tol = &config.tolerances;
    let mut out = Vec::new();
    out.extend(run_many(
        config,
        &[
            format!("schur.determinant[{name}]"),
            format!("schur.star[{name}]"),
        ],
        || {
            let model = SchurModel::new(data.clone())?;
            let mut det: f64 = 0.0;
            let mut star: f64 = 0.0;
            for q in model.quads() {
                det = det.max(determinant_residual(data, q)?);
                star = star.max(star_residual(data, q)?);
            }
            Ok(vec![
                CheckRecord::bounded("", det, tol.coefficient),
                CheckRecord::bounded("", star, tol.coefficient),
            ])
        },
    ));
    out.extend(run_one(config, format!("schur.sign_flip[{name}]"), || {
        Ok(CheckRecord::flag("", sign_flip_swaps(data)?))
    }));
    out.extend(run_one(config, format!("schur.pointwise[{name}]"), || {
        let model = SchurModel::new(data.clone())?;
        let grid = TorusGrid::new(data.dim(), config.identity_grid)?;
        Ok(
            CheckRecord::bounded("", pointwise_max(&model, &grid)?, tol.pointwise).with_detail(
                format!(
                    "real part, transmission, tail, recombination on {}^{} nodes",
                    config.identity_grid,
                    data.dim()
                ),
            ),
        )
    }));
    out.extend(run_one(config, format!("schur.zero_free[{name}]"), || {
        let model = SchurModel::new(data.clone())?;
        let grid = TorusGrid::new(data.dim(), config.identity_grid)?;
        let mut r = rng(config, 100 + index);
        let mut points: Vec<Vec<Complex64>> = (0..grid.len()).map(|i| grid.node(i)).collect();
        points.extend((0..1000).map(|_| random_polydisk_point(&mut r, data.dim())));
        let mut min = f64::INFINITY;
        for n in 0..=model.top_level() {
            min = min.min(zero_free_min(&model, n, points.iter().map(Vec::as_slice))?);
        }
        Ok(positive("", min))
    }));
    if data.dim() == 1 {
        out.extend(run_one(config, format!("schur.round_trip[{name}]"), || {
            Ok(CheckRecord::bounded("", round_trip(data)?, tol.round_trip))
        }));
    }
    out
}

fn taylor_checks(config: &RunConfig, name: &str, data: &SchurData) -> Vec<CheckRecord> {
    run_one(config, format!("taylor[{name}]"), || {
        let model = SchurModel::new(data.clone())?;
        let deg = config.taylor_degree;
        let w = taylor_from_weights(data, deg)?;
        let r = taylor_from_rational(model.quad(model.top_level())?, deg)?;
        Ok(
            CheckRecord::bounded("", series_max_diff(&w, &r), config.tolerances.taylor)
                .with_detail(format!(
                    "{} monomials up to degree {deg}",
                    r.len().max(w.len())
                )),
        )
    })
}

fn gram_checks(config: &RunConfig, name: &str, data: &SchurData) -> Vec<CheckRecord> {
    let tol = &config.tolerances;
    // coarse d = 3 grids get the relaxed tier for every integral, mass included
    let (n, t, mass_tol) = if data.dim() <= 2 {
        (config.gram_grid, tol.gram, tol.mass)
    } else {
        (config.grid_for(data.dim()), tol.gram_d3, tol.gram_d3)
    };
    run_many(
        config,
        &[
            format!("gram.off_diagonal[{name}]"),
            format!("gram.diagonal[{name}]"),
            format!("gram.star_orthogonality[{name}]"),
            format!("measure.mass[{name}]"),
        ],
        || {
            let grid = TorusGrid::new(data.dim(), n)?;
            let g = gram(data, &grid, data.top_level())?;
            let so = star_orthogonality(data, &grid)?;
            let mass = MeasureWeight::top(data)?.mass(&grid)?;
            Ok(vec![
                CheckRecord::bounded("", g.max_off_diagonal(), t),
                CheckRecord::bounded("", g.max_diagonal_error(), t),
                CheckRecord::bounded("", so, t),
                CheckRecord::close("", mass, 1.0, mass_tol),
            ])
        },
    )
}

fn szego_checks(config: &RunConfig, name: &str, data: &SchurData) -> Vec<CheckRecord> {
    let tol = if data.dim() <= 2 {
        config.tolerances.szego
    } else {
        config.tolerances.szego_d3
    };
    let n = config.grid_for(data.dim());
    let mut out = run_many(
        config,
        &[
            format!("szego.integral[{name}]"),
            format!("szego.log_w[{name}]"),
            format!("szego.outer[{name}]"),
        ],
        || {
            let grid = TorusGrid::new(data.dim(), n)?;
            let s = szego_integral(data, &grid)?;
            let w = szego_log_w(data, &grid)?;
            let note = format!("N = {n}");
            let warn = |r: CheckRecord, flag: bool| {
                if flag {
                    r.with_detail(format!("{note}; near-singular parameters"))
                } else {
                    r.with_detail(note.clone())
                }
            };
            Ok(vec![
                warn(
                    CheckRecord::close("", s.value, s.reference, tol),
                    s.near_singular,
                ),
                warn(
                    CheckRecord::close("", w.value, w.reference, tol),
                    w.near_singular,
                ),
                warn(CheckRecord::close("", w.outer, 0.0, tol), w.near_singular),
            ])
        },
    );
    if !data.is_trivial() {
        out.extend(run_one(config, format!("szego.monotone[{name}]"), || {
            let grid = TorusGrid::new(data.dim(), n)?;
            let (values, inc) = lambda_profile(data, &grid, &config.lambda_eps)?;
            let text: Vec<String> = values.iter().map(|v| format!("{v:.6e}")).collect();
            Ok(CheckRecord::flag("", inc).with_detail(format!("Lambda = [{}]", text.join(", "))))
        }));
    }
    out
}

fn birkhoff_checks(config: &RunConfig, name: &str, data: &SchurData) -> Vec<CheckRecord> {
    if data.dim() != config.birkhoff_eta.len() || config.l_schedule.is_empty() {
        return Vec::new();
    }
    run_many(
        config,
        &[
            format!("birkhoff.error[{name}]"),
            format!("birkhoff.trend[{name}]"),
        ],
        || {
            let model = SchurModel::new(data.clone())?;
            let line = TorusLine::new(config.birkhoff_eta.clone())?;
            let step = line.default_step(data.top_level());
            let reference = -data.log_norm_sum();
            let errors = config
                .l_schedule
                .iter()
                .map(|&l| {
                    let avg = line.try_line_average(
                        |z| Ok(-(1.0 - model.eval(z)?.norm_sqr()).ln()),
                        l,
                        step,
                    )?;
                    Ok((avg - reference).abs())
                })
                .collect::<Result<Vec<f64>>>()?;
            let k = errors.len();
            let trend = k >= 3 && errors[k - 3..].windows(2).all(|w| w[1] <= w[0]);
            let text: Vec<String> = errors.iter().map(|e| format!("{e:.3e}")).collect();
            let detail = format!("errors over L schedule: [{}]", text.join(", "));
            Ok(vec![
                CheckRecord::bounded("", errors[k - 1], config.tolerances.birkhoff)
                    .with_detail(detail.clone()),
                CheckRecord::flag("", trend).with_detail(detail),
            ])
        },
    )
}

/// `(0.5, 0.3i, -0.2 + 0.1i, 0.25, …)` truncated to `d` coordinates.
fn poisson_point(d: usize) -> Vec<Complex64> {
    let base = [
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, 0.3),
        Complex64::new(-0.2, 0.1),
    ];
    (0..d)
        .map(|j| base.get(j).copied().unwrap_or(Complex64::new(0.25, 0.0)))
        .collect()
}

fn poisson_checks(config: &RunConfig, name: &str, data: &SchurData) -> Vec<CheckRecord> {
    run_one(config, format!("poisson[{name}]"), || {
        let n = if data.dim() <= 2 {
            config.poisson_grid
        } else {
            config.grid_for(data.dim())
        };
        let grid = TorusGrid::new(data.dim(), n)?;
        let z = poisson_point(data.dim());
        let p = poisson_check(data, &grid, &z)?;
        Ok(CheckRecord::close(
            "",
            p.rhs,
            p.lhs,
            config.tolerances.poisson,
        ))
    })
}

fn counterexample_checks(config: &RunConfig) -> Vec<CheckRecord> {
    run_many(
        config,
        &["counterexample.value".into(), "counterexample.gap".into()],
        || {
            let grid = TorusGrid::new(2, config.counterexample_grid)?;
            let v = log_density_integral(&grid, counterexample)?;
            let gap = (v - 0.75f64.ln()).abs();
            Ok(vec![
                CheckRecord::close(
                    "",
                    v,
                    counterexample_reference(),
                    config.tolerances.counterexample,
                ),
                exceeds("", gap, config.tolerances.counterexample_gap),
            ])
        },
    )
}

fn lattice_checks(
    config: &RunConfig,
    name: &str,
    input: &LatticeInput,
    index: u64,
) -> Vec<CheckRecord> {
    run_many(
        config,
        &[
            format!("lattice.exact[{name}]"),
            format!("lattice.factorization[{name}]"),
        ],
        || {
            let d = decompose(input)?;
            let a: Vec<String> =
                d.a.iter()
                    .map(|row| {
                        row.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
            let q: Vec<String> = d.q.iter().map(|x| x.to_string()).collect();
            let detail = format!("A = [{}], q = [{}]", a.join("; "), q.join(", "));
            let mut r = rng(config, 300 + index);
            let res = factorization_residual(&d, input, config.factorization_samples, &mut r);
            Ok(vec![
                CheckRecord::flag("", verify(&d, input)).with_detail(detail),
                CheckRecord::bounded("", res, config.tolerances.factorization),
            ])
        },
    )
}

fn layered_checks(
    config: &RunConfig,
    name: &str,
    m: &LayeredMedium,
    index: u64,
) -> Vec<CheckRecord> {
    let tol = &config.tolerances;
    let mut out = run_many(
        config,
        &[
            format!("layered.cross_oracle[{name}]"),
            format!("layered.energy[{name}]"),
            format!("layered.reversal[{name}]"),
            format!("layered.b_independence[{name}]"),
        ],
        || {
            let mut r = rng(config, 400 + index);
            let omegas: Vec<f64> = (0..config.cross_oracle_samples)
                .map(|_| r.gen_range(-config.omega_max..config.omega_max))
                .filter(|w| *w != 0.0)
                .collect();
            let c = cross_oracle(m, &omegas)?;
            let rev = m.reversed();
            let shifted = m.with_b(m.b() + 1.3)?;
            let mut reversal: f64 = 0.0;
            let mut b_shift: f64 = 0.0;
            for &w in &omegas {
                let base = reflection_ode(m, w)?.norm();
                reversal = reversal.max((reflection_ode(&rev, w)?.norm() - base).abs());
                b_shift = b_shift.max((reflection_ode(&shifted, w)?.norm() - base).abs());
            }
            Ok(vec![
                CheckRecord::bounded("", c.max_modulus_diff, tol.cross_oracle).with_detail(
                    format!(
                        "{} frequencies; max complex difference {:.3e}",
                        omegas.len(),
                        c.max_complex_diff
                    ),
                ),
                below("", c.max_modulus, 1.0),
                CheckRecord::bounded("", reversal, tol.cross_oracle),
                CheckRecord::bounded("", b_shift, tol.cross_oracle),
            ])
        },
    );
    if m.interfaces() == 1 {
        out.extend(run_one(config, format!("layered.trace[{name}]"), || {
            let t = trace_check(m, &config.l_schedule)?;
            Ok(CheckRecord::bounded("", t.max_error(), tol.trace_constant)
                .with_detail("constant |R|: every L"))
        }));
    } else {
        out.extend(run_many(
            config,
            &[
                format!("layered.trace[{name}]"),
                format!("layered.trace_trend[{name}]"),
            ],
            || {
                let t = trace_check(m, &config.l_schedule)?;
                let last = t.rows.last().map_or(f64::NAN, |r| r.abs_error);
                let text: Vec<String> = t
                    .rows
                    .iter()
                    .map(|r| format!("{:.3e}", r.abs_error))
                    .collect();
                let detail = format!("errors over L schedule: [{}]", text.join(", "));
                Ok(vec![
                    CheckRecord::bounded("", last, tol.trace).with_detail(detail.clone()),
                    CheckRecord::flag("", t.non_increasing_tail(2)).with_detail(detail),
                ])
            },
        ));
    }
    out
}

type Group<'a> = Box<dyn Fn() -> Vec<CheckRecord> + Send + Sync + 'a>;

/// Runs every verification in a fixed order and aggregates the outcome.
///
/// Order: scattering eigen sweep, Schur identity suite, Taylor cross-oracle,
/// Gram matrices, Szegő integrals and monotonicity, Birkhoff line averages,
/// Poisson check, counterexample, lattice round-trip, layered media.
pub fn run_verify_all(config: &RunConfig) -> Report {
    let inputs = Inputs::load(config);
    let c = config;
    let mut groups: Vec<Group<'_>> = Vec::new();
    groups.push(Box::new(move || eigen_checks(c)));
    for (i, (name, data)) in inputs.models.iter().enumerate() {
        groups.push(Box::new(move || schur_checks(c, name, data, i as u64)));
    }
    for (name, data) in &inputs.models {
        groups.push(Box::new(move || taylor_checks(c, name, data)));
    }
    for (name, data) in &inputs.models {
        groups.push(Box::new(move || gram_checks(c, name, data)));
    }
    for (name, data) in &inputs.models {
        groups.push(Box::new(move || szego_checks(c, name, data)));
    }
    for (name, data) in &inputs.models {
        groups.push(Box::new(move || birkhoff_checks(c, name, data)));
    }
    for (name, data) in &inputs.models {
        groups.push(Box::new(move || poisson_checks(c, name, data)));
    }
    groups.push(Box::new(move || counterexample_checks(c)));
    for (i, (name, input)) in inputs.lattices.iter().enumerate() {
        groups.push(Box::new(move || lattice_checks(c, name, input, i as u64)));
    }
    for (i, (name, m)) in inputs.media.iter().enumerate() {
        groups.push(Box::new(move || layered_checks(c, name, m, i as u64)));
    }
    let results: Vec<Vec<CheckRecord>> = if config.parallel {
        groups.par_iter().map(|g| g()).collect()
    } else {
        groups.iter().map(|g| g()).collect()
    };
    let mut checks = inputs.load_errors.clone();
    checks.extend(results.into_iter().flatten());
    Report::new(checks)
}
