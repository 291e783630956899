use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schur_torus::torus::{
    counterexample, counterexample_reference, gram, lambda_profile, log_density_integral,
    poisson_check, star_orthogonality, szego_integral, szego_log_w, MeasureWeight,
};
use schur_torus::verify::bundled_model;
use schur_torus::{Complex64, SchurData, SchurModel, TorusGrid, TorusLine};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_data(rng: &mut impl Rng, dim: usize, m: usize, rmax: f64) -> SchurData {
    let mut r = vec![c(0.0, 0.0)];
    for _ in 0..m {
        r.push(Complex64::from_polar(
            rng.gen_range(0.0..rmax),
            rng.gen_range(0.0..std::f64::consts::TAU),
        ));
    }
    let nu = (0..m).map(|_| rng.gen_range(1..=dim)).collect();
    SchurData::new(dim, r, nu).unwrap()
}

#[test]
fn trapezoid_basics() {
    for dim in 1..=3 {
        let grid = TorusGrid::new(dim, 8).unwrap();
        assert!((grid.integrate(|_| 1.0).unwrap() - 1.0).abs() < 1e-15);
        let m = grid.integrate_complex(|z| z[0]).unwrap();
        assert!(m.norm() < 1e-15);
    }
    let grid = TorusGrid::new(1, 2).unwrap();
    assert!(grid.integrate_complex(|z| z[0]).unwrap().norm() < 1e-15);
    assert!(TorusGrid::new(2, 1).is_err());
    assert!(grid.try_integrate(|_| Ok(f64::NAN)).is_err());
}

#[test]
fn szego_single_parameter() {
    let data = SchurData::new(1, vec![c(0.0, 0.0), c(0.5, 0.0)], vec![1]).unwrap();
    let grid = TorusGrid::new(1, 64).unwrap();
    let s = szego_integral(&data, &grid).unwrap();
    assert!((s.value - 0.75f64.ln()).abs() <= 1e-10);
    assert!((s.reference - 0.75f64.ln()).abs() < 1e-15);
    let w = szego_log_w(&data, &grid).unwrap();
    assert!((w.value - 0.75f64.ln()).abs() <= 1e-10);
}

#[test]
fn szego_two_variables() {
    let data = SchurData::new(2, vec![c(0.0, 0.0), c(0.3, 0.0), c(0.0, 0.4)], vec![1, 2]).unwrap();
    let grid = TorusGrid::new(2, 64).unwrap();
    let expected = 0.91f64.ln() + 0.84f64.ln();
    assert!((szego_integral(&data, &grid).unwrap().value - expected).abs() <= 1e-8);
    let w = szego_log_w(&data, &grid).unwrap();
    assert!((w.value - expected).abs() <= 1e-8);
    assert!(w.outer.abs() <= 1e-8);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let data = random_data(&mut rng, 2, 4, 0.6);
    let grid = TorusGrid::new(2, 128).unwrap();
    let w = szego_log_w(&data, &grid).unwrap();
    assert!((w.value - data.log_norm_sum()).abs() <= 1e-8);
    assert!((szego_integral(&data, &grid).unwrap().value - data.log_norm_sum()).abs() <= 1e-8);
}

#[test]
fn szego_trivial_and_near_singular() {
    let grid = TorusGrid::new(2, 16).unwrap();
    let zero = SchurData::trivial(2).unwrap();
    assert_eq!(szego_integral(&zero, &grid).unwrap().value, 0.0);
    assert!(szego_log_w(&zero, &grid).unwrap().value.abs() < 1e-15);
    let hot = SchurData::new(1, vec![c(0.0, 0.0), c(0.97, 0.0)], vec![1]).unwrap();
    assert!(
        szego_integral(&hot, &TorusGrid::new(1, 64).unwrap())
            .unwrap()
            .near_singular
    );
}

#[test]
fn counterexample_integral() {
    let grid = TorusGrid::new(2, 256).unwrap();
    let v = log_density_integral(&grid, counterexample).unwrap();
    let reference = -(112.0 - 64.0 * 3f64.sqrt()).ln();
    assert!((counterexample_reference() - reference).abs() < 1e-15);
    assert!((v - reference).abs() <= 1e-6);
    assert!((v - 0.75f64.ln()).abs() > 0.14);
}

#[test]
fn gram_matrix_of_fixture() {
    let data = bundled_model("d2").unwrap();
    let grid = TorusGrid::new(2, 64).unwrap();
    let g = gram(&data, &grid, data.top_level()).unwrap();
    assert!((g.matrix[0][0] - c(1.0, 0.0)).norm() < 1e-8);
    assert!(g.max_off_diagonal() < 1e-8);
    assert!(g.max_diagonal_error() < 1e-8);
    for (j, want) in g.reference.iter().enumerate() {
        assert!((want - data.norm_product(j)).abs() < 1e-15);
    }
    assert!(star_orthogonality(&data, &grid).unwrap() < 1e-8);
    let mass = MeasureWeight::top(&data).unwrap().mass(&grid).unwrap();
    assert!((mass - 1.0).abs() < 1e-10);
}

#[test]
fn gram_of_random_data_converges() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let data = random_data(&mut rng, 2, 4, 0.5);
    let grid = TorusGrid::new(2, 96).unwrap();
    let g = gram(&data, &grid, 4).unwrap();
    assert!(g.max_off_diagonal() < 1e-8 && g.max_diagonal_error() < 1e-8);
}

#[test]
fn poisson_reproduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let data = random_data(&mut rng, 2, 4, 0.5);
    let grid = TorusGrid::new(2, 128).unwrap();
    let origin = poisson_check(&data, &grid, &[c(0.0, 0.0); 2]).unwrap();
    assert!((origin.lhs - c(1.0, 0.0)).norm() < 1e-10);
    assert!((origin.rhs - c(1.0, 0.0)).norm() < 1e-10);
    let p = poisson_check(&data, &grid, &[c(0.5, 0.0), c(0.0, 0.3)]).unwrap();
    assert!(p.error() <= 1e-8);

    let zero = SchurData::trivial(2).unwrap();
    let p = poisson_check(
        &zero,
        &TorusGrid::new(2, 64).unwrap(),
        &[c(0.1, 0.4), c(-0.6, 0.2)],
    )
    .unwrap();
    assert!((p.lhs - c(1.0, 0.0)).norm() < 1e-12);
    assert!((p.rhs - c(1.0, 0.0)).norm() < 1e-8);
}

#[test]
fn lambda_is_increasing() {
    let grid = TorusGrid::new(2, 64).unwrap();
    let data = bundled_model("d2").unwrap();
    let (values, increasing) = lambda_profile(&data, &grid, &[0.2, 0.4, 0.6, 0.8, 0.95]).unwrap();
    assert!(increasing);
    assert!(values.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn line_averages() {
    let line = TorusLine::new(vec![1.0]).unwrap();
    assert!((line.line_average(|_| 2.5, 100.0, 0.1).unwrap() - 2.5).abs() < 1e-14);
    // ∫_{-L}^{L} cos ω dω / 2L = sin L / L
    for l in [10.0, 100.0, 1000.0] {
        let avg = line.line_average(|z| z[0].re, l, 0.01).unwrap();
        assert!((avg - f64::sin(l) / l).abs() < 1e-6);
        assert!(avg.abs() <= 1.0 / l + 1e-6);
    }
    assert!(TorusLine::new(vec![1.0, 0.0]).is_err());
}

#[test]
fn birkhoff_average_approaches_szego_sum() {
    let data = bundled_model("d2").unwrap();
    let model = SchurModel::new(data.clone()).unwrap();
    let line = TorusLine::new(vec![1.0, 2f64.sqrt()]).unwrap();
    let step = line.default_step(data.top_level());
    let reference = -data.log_norm_sum();
    let err = |l: f64| {
        let avg = line
            .try_line_average(|z| Ok(-(1.0 - model.eval(z)?.norm_sqr()).ln()), l, step)
            .unwrap();
        (avg - reference).abs()
    };
    let errors: Vec<f64> = [1000.0, 2000.0, 4000.0].into_iter().map(err).collect();
    assert!(errors[2] <= 5e-3);
    assert!(errors[1] <= errors[0] && errors[2] <= errors[1]);
}
