use poncelet::cayley::{find_caustics, Flavor};
use poncelet::extremal::*;
use poncelet::ConfocalFamily;
use proptest::prelude::*;

fn fam(a: f64, b: f64) -> ConfocalFamily {
    ConfocalFamily::new(a, b).unwrap()
}

#[test]
fn zolotarev_three() {
    let r = verify_zolotarev_n3(&fam(2.0, 1.0)).unwrap();
    assert!((r.params.alpha - 3.0).abs() < 1e-10);
    assert!((r.params.beta - (4.0 * 3f64.sqrt() / 3.0 + 1.0)).abs() < 1e-10);
    assert!((r.params.beta - r.beta_geometric).abs() < 1e-10);
    assert!((r.params.beta - r.beta_closed).abs() < 1e-10);
    assert!((r.params.beta - r.beta_from_y).abs() < 1e-10);
    assert!(r.y_relation_residual.abs() < 1e-10);
    assert!(r.alpha_from_y_residual.abs() < 1e-10);
    assert!(r.identity_residual.abs() < 1e-9);
    assert!(r.deviation < 1e-6, "{r:?}");
    assert!((r.leading - 1.0).abs() < 1e-8);
    assert!(r.second_coeff_residual.abs() < 1e-8);
    // the printed identity and the printed closed forms for β are off
    assert!((r.printed_identity_residual - (68.0 - 48.0 * 3f64.sqrt())).abs() < 1e-9);
    assert!((r.beta_closed_printed - r.params.beta - 2.0).abs() < 1e-10);
    assert!(r.check().is_err());
}

#[test]
fn zolotarev_other_ratios() {
    for (a, b) in [(3.0, 1.0), (1.5, 1.0), (5.0, 2.0)] {
        let r = verify_zolotarev_n3(&fam(a, b)).unwrap();
        assert!(r.deviation < 1e-6 && r.identity_residual.abs() < 1e-8, "{r:?}");
        assert!((r.params.beta - r.beta_geometric).abs() < 1e-9);
    }
}

#[test]
fn zolotarev_deviation() {
    let p = zolotarev_endpoints(4, 0.8).unwrap();
    let z = p.polynomial().unwrap();
    assert!((z.leading() - 1.0).abs() < 1e-8);
    let max = (0..=400)
        .map(|i| -1.0 + 2.0 * i as f64 / 400.0)
        .map(|x| z.eval(x).abs())
        .fold(0.0, f64::max);
    assert!((max - p.l_n).abs() < 1e-9 * p.l_n.max(1.0));
}

#[test]
fn akhiezer_four() {
    let r = verify_akhiezer_n4(&fam(2.0, 1.0), AkhiezerCase::E).unwrap();
    r.check().unwrap();
    assert!(r.canonical_deviation < 1e-6);
    let r = verify_akhiezer_n4(&fam(3.0, 1.0), AkhiezerCase::H).unwrap();
    r.check().unwrap();
    assert!(r.printed_deviation.unwrap() > 0.1);
    assert!(matches!(
        verify_akhiezer_n4(&fam(2.0, 1.0), AkhiezerCase::H),
        Err(poncelet::Error::CaseHInadmissible { .. })
    ));
}

#[test]
fn general_akhiezer_properties() {
    for (n, m, k) in [(5, 3, 0.7f64.sqrt()), (5, 1, 0.5f64.sqrt()), (6, 2, 0.9f64.sqrt())] {
        let p = AkhiezerParams::new(n, m, k).unwrap();
        let ta = p.polynomial().unwrap();
        let c = ta.coeffs();
        assert!((c[n] - 1.0).abs() < 1e-8, "n={n} m={m}: {c:?}");
        assert!((c[n - 1] + n as f64 * p.tau1_coeff).abs() < 1e-8);
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        assert!((ta.eval(p.alpha) - sign * p.l).abs() < 1e-8 * p.l.max(1.0));
        assert!((p.eval(p.beta).unwrap() - sign * p.l).abs() < 1e-10 * p.l.max(1.0));
        for i in 0..=200 {
            let x = -1.0 + (p.alpha + 1.0) * i as f64 / 200.0;
            assert!(ta.eval(x).abs() <= p.l * (1.0 + 1e-8));
        }
    }
}

#[test]
fn akhiezer_pn_four() {
    let r = verify_akhiezer_pn(&fam(2.0, 1.0), 2.0 / 3.0, 4, 1, AkhiezerCase::E).unwrap();
    r.check().unwrap();
    assert!((r.params.modulus.kappa.powi(2) - 0.75).abs() < 1e-10);
    assert!(r.t_relation_residual.unwrap().abs() < 1e-10);
    let r = verify_akhiezer_pn(&fam(3.0, 1.0), 1.5, 4, 1, AkhiezerCase::H).unwrap();
    r.check().unwrap();
    assert!((r.params.modulus.kappa.powi(2) - 0.75).abs() < 1e-10);
    assert!(r.t_relation_residual.unwrap().abs() < 1e-10);
}

#[test]
fn akhiezer_pn_five() {
    let f = fam(2.0, 1.0);
    let s = find_caustics(&f, 5, Flavor::Periodic).unwrap();
    for c in s {
        let l = c.winding.1 / 2;
        let r = verify_akhiezer_pn(&f, c.lambda0.lambda0, 5, l, AkhiezerCase::E).unwrap();
        r.check().unwrap();
        // λ₀ = a(1 − sn²(mK/5))
        let p = &r.params;
        let sn = jacobi_sn_cn_dn(p.m as f64 * p.modulus.k / 5.0, p.modulus.kappa)
            .unwrap()
            .0;
        assert!((2.0 * (1.0 - sn * sn) - c.lambda0.lambda0).abs() < 1e-10);
    }
}

#[test]
fn quintic_modulus_relation() {
    let t = quintic_modulus_table();
    for p in 0..=16 {
        for q in 0..=8 {
            assert_eq!(t[p][q], t[16 - p][8 - q]);
        }
    }
    for kappa in [0.3, 0.6, 0.9] {
        let m = EllipticModulus::new(kappa).unwrap();
        let y = jacobi_sn_cn_dn(m.k / 5.0, kappa).unwrap().0;
        assert!(quintic_modulus_eval(y * y, kappa * kappa).abs() < 1e-8);
    }
}

#[test]
fn double_angle_two_ways() {
    for kappa in [0.2, 0.5, 0.8, 0.95] {
        let m = EllipticModulus::new(kappa).unwrap();
        let (y, c, d) = jacobi_sn_cn_dn(m.k / 5.0, kappa).unwrap();
        let k2 = kappa * kappa;
        let by_addition = 2.0 * y * c * d / (1.0 - k2 * y.powi(4));
        let (_, c3, d3) = jacobi_sn_cn_dn(3.0 * m.k / 5.0, kappa).unwrap();
        let by_reflection = c3 / d3;
        assert!((by_addition - by_reflection).abs() < 1e-10);
        let y2 = y * y;
        // the squared form needs the denominator squared
        let squared = 4.0 * y2 * (1.0 - y2) * (1.0 - k2 * y2) / (1.0 - k2 * y2 * y2).powi(2);
        assert!((squared - by_reflection.powi(2)).abs() < 1e-10);
    }
}

#[test]
fn nome_consistency() {
    let m = EllipticModulus::new(0.5).unwrap();
    assert!(m.k_consistency() < 1e-13);
    assert!(m.nome_q > 0.0 && m.nome_q < 1.0);
    assert!((m.nome_q - (-std::f64::consts::PI * m.k_prime / m.k).exp()).abs() < 1e-16);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn jacobi_identities(u in -20.0f64..20.0, kappa in 0.001f64..0.999) {
        let (s, c, d) = jacobi_sn_cn_dn(u, kappa).unwrap();
        prop_assert!((s * s + c * c - 1.0).abs() < 1e-12);
        prop_assert!((kappa * kappa * s * s + d * d - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn theta_quotient_is_sn(u in -5.0f64..5.0, kappa in 0.05f64..0.95) {
        let m = EllipticModulus::new(kappa).unwrap();
        let t = theta_functions(u, &m);
        let sn = jacobi_sn_cn_dn(u, kappa).unwrap().0;
        prop_assert!((sn - t.h / (kappa.sqrt() * t.theta)).abs() < 1e-10);
        let neg = theta_functions(-u, &m);
        prop_assert!((t.h + neg.h).abs() < 1e-14);
        prop_assert!((t.theta - neg.theta).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_is_cosine(n in 0usize..30, x in -1.0f64..1.0) {
        prop_assert!((chebyshev_t(n, x) - (n as f64 * x.acos()).cos()).abs() < 1e-12);
    }

    #[test]
    fn symmetric_equioscillation(alpha in 0.05f64..0.95) {
        let (_, l) = akhiezer_symmetric(2, alpha, 0.0).unwrap();
        let max = (0..=2000)
            .map(|i| alpha + (1.0 - alpha) * i as f64 / 2000.0)
            .map(|x| akhiezer_symmetric(2, alpha, x).unwrap().0.abs())
            .fold(0.0, f64::max);
        prop_assert!((max - l).abs() < 1e-10);
    }
}
