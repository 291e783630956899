use proptest::prelude::*;
use schur_torus::{Complex64, Monomial, TorusPoly};

const DIM: usize = 2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// Small integer coefficients keep ring arithmetic exact in f64.
fn poly() -> impl Strategy<Value = TorusPoly> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, DIM), -3i32..=3, -3i32..=3),
        0..6,
    )
    .prop_map(|terms| {
        TorusPoly::from_terms(
            DIM,
            terms
                .into_iter()
                .map(|(e, re, im)| (Monomial::new(e), c(re.into(), im.into()))),
        )
        .unwrap()
    })
}

fn disk_point() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((0.0..=1.0f64, 0.0..std::f64::consts::TAU), DIM).prop_map(|v| {
        v.into_iter()
            .map(|(r, t)| Complex64::from_polar(r, t))
            .collect()
    })
}

fn torus_point() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(0.0..std::f64::consts::TAU, DIM).prop_map(|v| {
        v.into_iter()
            .map(|t| Complex64::from_polar(1.0, t))
            .collect()
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
        prop_assert_eq!(
            p.add(&q).unwrap().add(&r).unwrap(),
            p.add(&q.add(&r).unwrap()).unwrap()
        );
    }

    #[test]
    fn additive_identity_and_inverse(p in poly()) {
        prop_assert_eq!(p.add(&TorusPoly::zero(DIM)).unwrap(), p.clone());
        prop_assert!(p.add(&p.neg()).unwrap().is_zero());
        prop_assert!(p.sub(&p).unwrap().is_zero());
    }

    #[test]
    fn multiplication_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        prop_assert_eq!(
            p.mul(&q).unwrap().mul(&r).unwrap(),
            p.mul(&q.mul(&r).unwrap()).unwrap()
        );
        prop_assert_eq!(
            p.mul(&q.add(&r).unwrap()).unwrap(),
            p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap()
        );
        prop_assert_eq!(p.mul(&TorusPoly::one(DIM)).unwrap(), p.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly(), q in poly(), z in disk_point()) {
        let (pz, qz) = (p.eval(&z).unwrap(), q.eval(&z).unwrap());
        prop_assert!(close(p.add(&q).unwrap().eval(&z).unwrap(), pz + qz));
        prop_assert!(close(p.mul(&q).unwrap().eval(&z).unwrap(), pz * qz));
    }

    #[test]
    fn star_preserves_modulus_on_the_torus(p in poly(), extra in prop::collection::vec(0u32..3, DIM), z in torus_point()) {
        let bound: Vec<u32> = p
            .multidegree()
            .exponents()
            .iter()
            .zip(&extra)
            .map(|(d, e)| d + e)
            .collect();
        let s = p.star(&Monomial::new(bound)).unwrap();
        let (a, b) = (p.eval(&z).unwrap().norm(), s.eval(&z).unwrap().norm());
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a));
    }

    #[test]
    fn star_is_an_involution(p in poly(), extra in prop::collection::vec(0u32..3, DIM)) {
        let bound: Vec<u32> = p
            .multidegree()
            .exponents()
            .iter()
            .zip(&extra)
            .map(|(d, e)| d + e)
            .collect();
        let bound = Monomial::new(bound);
        prop_assert_eq!(p.star(&bound).unwrap().star(&bound).unwrap(), p);
    }
}

#[test]
fn spot_values() {
    let z1 = TorusPoly::var(DIM, 0);
    let z2 = TorusPoly::var(DIM, 1);
    let one = TorusPoly::one(DIM);
    assert!(z1.add(&z1.neg()).unwrap().is_zero());

    let sum = one.add(&z1).unwrap().add(&z2).unwrap();
    for m in [
        Monomial::one(DIM),
        Monomial::var(DIM, 0),
        Monomial::var(DIM, 1),
    ] {
        assert_eq!(sum.coeff(&m), c(1.0, 0.0));
    }
    assert_eq!(sum.len(), 3);

    let z1z2 = z1.mul(&z2).unwrap();
    assert_eq!(z1z2.coeff(&Monomial::new(vec![1, 1])), c(1.0, 0.0));
    assert_eq!(
        z1z2.eval(&[c(0.0, 1.0), c(0.0, 1.0)]).unwrap(),
        c(-1.0, 0.0)
    );

    let diff = one.add(&z1).unwrap().mul(&one.sub(&z1).unwrap()).unwrap();
    let expected = TorusPoly::from_terms(
        DIM,
        [
            (Monomial::one(DIM), c(1.0, 0.0)),
            (Monomial::new(vec![2, 0]), c(-1.0, 0.0)),
        ],
    )
    .unwrap();
    assert_eq!(diff, expected);

    let seven = TorusPoly::constant(DIM, c(7.0, 0.0));
    assert_eq!(
        seven.eval(&[c(0.2, -0.9), c(-0.5, 0.1)]).unwrap(),
        c(7.0, 0.0)
    );

    let bound = Monomial::new(vec![2, 1]);
    assert_eq!(
        one.star(&bound).unwrap(),
        TorusPoly::monomial(bound, c(1.0, 0.0))
    );
}

#[test]
fn dimension_errors() {
    let p = TorusPoly::var(2, 0);
    let q = TorusPoly::var(3, 0);
    assert!(p.add(&q).is_err());
    assert!(p.mul(&q).is_err());
    assert!(p.eval(&[c(0.0, 0.0)]).is_err());
    assert!(p.star(&Monomial::new(vec![0, 0])).is_err());
}
