use num_bigint::BigInt;
use num_rational::BigRational;
use poncelet::exactalg::*;
use poncelet::series::CayleySeries;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn report(id: ExampleId, trials: usize) -> DiscriminantReport {
    verify_discriminant_example(id, trials).unwrap()
}

#[test]
fn cayley_numerators_exact() {
    for id in [ExampleId::C1, ExampleId::C2, ExampleId::C5] {
        let r = report(id, 20);
        assert!(r.passed, "{r:?}");
        r.check().unwrap();
    }
    // series numerators against the printed ones
    assert_eq!(report(ExampleId::C1, 5).numerator_ratio.as_deref(), Some("-1"));
    assert_eq!(report(ExampleId::C2, 5).numerator_ratio.as_deref(), Some("1"));
    assert_eq!(report(ExampleId::C5, 5).numerator_ratio.as_deref(), Some("1"));
}

#[test]
fn hankel_numerators_up_to_constant() {
    for id in [ExampleId::C3, ExampleId::C4] {
        let r = report(id, 10);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.stable_ratio.as_deref(), Some("1"));
    }
}

#[test]
fn group_examples_constants() {
    let want = [
        (ExampleId::P2, "4"),
        (ExampleId::P3, "-19683"),
        (ExampleId::P4, "-268435456"),
        (ExampleId::P5, "298023223876953125"),
    ];
    for (id, ratio) in want {
        let r = report(id, 20);
        assert_eq!(r.stable_ratio.as_deref(), Some(ratio), "{id:?}");
        // the printed forms omit these constants
        assert!(!r.passed);
        assert!(r.check().is_err());
    }
}

#[test]
fn p2_in_every_variable() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let (x, y) = random_point(&mut rng);
        // p₂ is symmetric, so the x- and y-discriminants are the z one at the other pairs
        let z = q(13, 17);
        for (u, v) in [(&x, &y), (&y, &z), (&x, &z)] {
            let d = discriminant(&group_polynomial(ExampleId::P2, u, v)).unwrap();
            assert_eq!(d, q(16, 1) * u * v);
        }
    }
}

#[test]
fn grid_identity() {
    for id in [
        ExampleId::C1,
        ExampleId::C2,
        ExampleId::C5,
        ExampleId::P2,
        ExampleId::P3,
        ExampleId::P4,
        ExampleId::P5,
    ] {
        let d = printed_discriminant(id).total_degree() as usize;
        assert_eq!(grid_identity_check(id).unwrap(), (d + 1) * (d + 1));
    }
}

#[test]
fn homogeneous_factors() {
    for id in ExampleId::ALL {
        let r = homogenized_separability_check(id, 10).unwrap();
        assert!(!r.factors.is_empty());
    }
    let r = homogenized_separability_check(ExampleId::C4, 5).unwrap();
    assert!(r.factors.iter().any(|(_, d)| *d == 6));
    let r = homogenized_separability_check(ExampleId::C1, 5).unwrap();
    assert!(r.factors.iter().any(|(n, d)| n == "a^2 - ab + b^2" && *d == 2));
}

#[test]
fn exact_series_matches_float() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let (a, b) = random_point(&mut rng);
        let lam = q(1, 3) * &b;
        let ex = ExactSeries::new(&a, &b, 6);
        let (af, bf, lf) = (to_f(&a), to_f(&b), to_f(&lam));
        let fl = CayleySeries::new(af, bf, lf, 6).unwrap();
        let root = (af * bf * lf).sqrt();
        let mu = lam.recip();
        for k in 0..=6 {
            let check = |exact: &RationalPoly, float: f64| {
                let v = to_f(&exact.eval(&mu)) * root;
                assert!(
                    (v - float).abs() <= 1e-10 * float.abs().max(1.0),
                    "k={k}: {v} vs {float}"
                );
            };
            check(&ex.g[k], fl.b.coeff(k));
            check(&ex.c[k], fl.c.coeff(k));
            check(&ex.d[k], fl.d.coeff(k));
        }
    }
}

fn to_f(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_against_roots(
        f in proptest::collection::vec(-9i64..=9, 5),
        roots in proptest::collection::vec((-9i64..=9, 1i64..=5), 1..4),
        lc in 1i64..=4,
    ) {
        prop_assume!(f[4] != 0);
        let fp = RationalPoly::from_ints(&f);
        let mut g = RationalPoly::constant(q(lc, 1));
        for (n, d) in &roots {
            g = g.mul(&RationalPoly::linear(-q(*n, *d)));
        }
        // Res(f, g) = (−1)^{mn} lc(g)^m ∏ f(rᵢ)
        let m = 4;
        let n = roots.len();
        let mut want = num_traits::pow::Pow::pow(&q(lc, 1), m as u32);
        for (num, den) in &roots {
            want *= fp.eval(&q(*num, *den));
        }
        if (m * n) % 2 == 1 {
            want = -want;
        }
        prop_assert_eq!(resultant(&fp, &g).unwrap(), want);
    }

    #[test]
    fn quadratic_discriminant(p in -50i64..50, c in -50i64..50) {
        let f = RationalPoly::from_ints(&[c, p, 1]);
        prop_assert_eq!(discriminant(&f).unwrap(), q(p * p - 4 * c, 1));
    }
}
