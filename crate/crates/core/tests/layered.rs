use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schur_torus::layered::{
    cross_oracle, medium_to_schur, reflection_ode, reflection_schur, sweep, trace_check,
    LayeredMedium, ReflectionSource,
};
use schur_torus::Complex64;

fn random_medium(rng: &mut impl Rng, d: usize) -> LayeredMedium {
    let mut y = Vec::with_capacity(d);
    let mut pos = 0.0;
    for _ in 0..d {
        pos += rng.gen_range(0.3..2.0);
        y.push(pos);
    }
    let b = pos + rng.gen_range(0.1..1.0);
    let a = (0..=d).map(|_| rng.gen_range(0.2..5.0)).collect();
    LayeredMedium::new(b, y, a).unwrap()
}

fn omegas(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| rng.gen_range(0.01..100.0) * if rng.gen() { 1.0 } else { -1.0 })
        .collect()
}

#[test]
fn single_interface() {
    let m = LayeredMedium::new(2.0, vec![1.0], vec![1.0, 3.0]).unwrap();
    let (data, line) = medium_to_schur(&m).unwrap();
    assert_eq!(
        data.r(),
        &[Complex64::new(0.0, 0.0), Complex64::new(-0.5, 0.0)]
    );
    assert_eq!(line.eta(), &[1.0]);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for w in omegas(&mut rng, 200) {
        assert!((reflection_ode(&m, w).unwrap().norm() - 0.5).abs() < 1e-14);
        assert!((reflection_schur(&m, w).unwrap().norm() - 0.5).abs() < 1e-14);
    }
    let t = trace_check(&m, &[250.0, 500.0, 1000.0, 2000.0, 4000.0]).unwrap();
    for row in &t.rows {
        assert!((row.average - 0.75f64.ln()).abs() <= 1e-10);
    }
}

#[test]
fn matched_impedances_do_not_reflect() {
    let m = LayeredMedium::new(4.0, vec![1.0, 2.5], vec![1.7; 3]).unwrap();
    let (data, _) = medium_to_schur(&m).unwrap();
    assert!(data.r().iter().all(|r| *r == Complex64::new(0.0, 0.0)));
    for w in [0.3, 5.0, -40.0] {
        assert!(reflection_ode(&m, w).unwrap().norm() < 1e-15);
        assert!(reflection_schur(&m, w).unwrap().norm() < 1e-15);
    }
    for row in trace_check(&m, &[100.0, 200.0]).unwrap().rows {
        assert!(row.average.abs() < 1e-15 && row.reference == 0.0);
    }
}

#[test]
fn random_media_cross_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for d in [1, 2, 3, 3, 3, 4] {
        let m = random_medium(&mut rng, d);
        let (data, _) = medium_to_schur(&m).unwrap();
        assert!(data.max_modulus() < 1.0);
        let w = omegas(&mut rng, 1000);
        let c = cross_oracle(&m, &w).unwrap();
        assert!(c.max_modulus_diff <= 1e-10, "{:e}", c.max_modulus_diff);
        assert!(c.max_complex_diff <= 1e-10);
        assert!(c.max_modulus < 1.0);
    }
}

#[test]
fn reversal_and_right_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let m = random_medium(&mut rng, 3);
    let rev = m.reversed();
    let moved = m.with_b(m.b() + 2.7).unwrap();
    for w in omegas(&mut rng, 300) {
        let base = reflection_ode(&m, w).unwrap().norm();
        assert!((reflection_ode(&rev, w).unwrap().norm() - base).abs() < 1e-12);
        assert!(
            (reflection_ode(&moved, w).unwrap() - reflection_ode(&m, w).unwrap()).norm() < 1e-12
        );
    }
}

#[test]
fn three_interface_trace_trend() {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let m = LayeredMedium::new(
        5.0,
        vec![1.0, 1.0 + s2, 1.0 + s2 + s3],
        vec![1.0, 2.0, 0.8, 1.5],
    )
    .unwrap();
    let t = trace_check(&m, &[250.0, 500.0, 1000.0, 2000.0, 4000.0]).unwrap();
    let expected: f64 = [(1.0, 2.0), (2.0, 0.8), (0.8, 1.5)]
        .iter()
        .map(|(a, b): &(f64, f64)| (1.0 - ((a - b) / (a + b)).powi(2)).ln())
        .sum();
    assert!((t.rows[0].reference - expected).abs() < 1e-15);
    assert!(t.rows.last().unwrap().abs_error <= 1e-2);
    assert!(t.non_increasing_tail(2));
}

#[test]
fn sweep_grid_and_sources() {
    let m = LayeredMedium::new(3.0, vec![1.0, 2.2], vec![1.0, 2.0, 0.5]).unwrap();
    let a = sweep(&m, 50.0, 128, ReflectionSource::Ode).unwrap();
    let b = sweep(&m, 50.0, 128, ReflectionSource::Schur).unwrap();
    assert_eq!(a.omegas.len(), 128);
    assert_eq!(a.omegas, b.omegas);
    assert!((a.omegas[127] - 50.0).abs() < 1e-12);
    for (x, y) in a.values.iter().zip(&b.values) {
        assert!((x - y).norm() < 1e-10);
    }
}

#[test]
fn invalid_media() {
    assert!(LayeredMedium::new(1.0, vec![0.5, 0.4], vec![1.0; 3]).is_err());
    assert!(LayeredMedium::new(1.0, vec![1.5], vec![1.0, 2.0]).is_err());
    assert!(LayeredMedium::new(2.0, vec![1.0], vec![1.0, -2.0]).is_err());
    assert!(LayeredMedium::new(2.0, vec![1.0], vec![1.0]).is_err());
    assert!(LayeredMedium::from_json("{\"b\": 1, \"y\": [2], \"a\": [1, 1]}").is_err());
}
