use num_complex::Complex64;
use proptest::prelude::*;

use ntdesk_core::pretentious::{self, EtaProof, MultiplicativeFunction as Mf};
use ntdesk_core::progressions::CharacterTable;
use ntdesk_core::Error;

const TAU: f64 = std::f64::consts::TAU;

fn disk() -> impl Strategy<Value = Complex64> {
    prop_oneof![
        1 => Just(Complex64::new(0.0, 0.0)),
        2 => (0.0..TAU).prop_map(|a| Complex64::from_polar(1.0, a)),
        7 => (0.0f64..=1.0, 0.0..TAU).prop_map(|(r, a)| Complex64::from_polar(r, a)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4000))]

    #[test]
    fn eta_triangle(w in disk(), y in disk(), z in disk()) {
        prop_assert!(pretentious::eta_triangle_check(w, y, z).unwrap());
    }

    #[test]
    fn eta_proof_links(w in disk(), y in disk(), z in disk()) {
        let Some(pf) = EtaProof::new(w, y, z).unwrap() else {
            prop_assert!(pretentious::eta(w, y).unwrap() <= 2.0);
            return Ok(());
        };
        let tol = 1e-12;
        prop_assert!(pf.a.abs() <= 1.0 + tol && pf.c.abs() <= 1.0 + tol);
        prop_assert!(pf.b * pf.b <= 1.0 - pf.a * pf.a + tol);
        prop_assert!(pf.d * pf.d <= 1.0 - pf.c * pf.c + tol);
        // w ȳ = (a + bi)(c + di)
        let prod = Complex64::new(pf.a, pf.b) * Complex64::new(pf.c, pf.d);
        prop_assert!((prod - w * y.conj()).norm() < 1e-12);
        prop_assert!(pf.cross_term_links(tol).iter().all(|&ok| ok), "{:?}", pf);
        prop_assert!(pf.linear_link(tol));
        prop_assert!(pf.conclusion(tol));
    }

    #[test]
    fn eta_is_symmetric_and_bounded(w in disk(), y in disk()) {
        let a = pretentious::eta(w, y).unwrap();
        prop_assert!((a - pretentious::eta(y, w).unwrap()).abs() < 1e-15);
        prop_assert!(a <= 2f64.sqrt() + 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distance_triangle_and_symmetry(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), x in 100u64..20_000) {
        let (f, g, h) = (Mf::random_unimodular(a), Mf::random_unimodular(b), Mf::random_unimodular(c));
        let d = |u: &Mf, v: &Mf| pretentious::distance(u, v, x).unwrap().value;
        prop_assert!(d(&f, &h) <= d(&f, &g) + d(&g, &h) + 1e-9);
        prop_assert!((d(&f, &g) - d(&g, &f)).abs() < 1e-12);
        prop_assert!(d(&f, &f) < 1e-7);
    }

    #[test]
    fn distance_grows_with_x(seed in any::<u64>(), x in 2u64..50_000, step in 1u64..5_000) {
        let f = Mf::random_unimodular(seed);
        let one = Mf::one();
        let lo = pretentious::distance(&f, &one, x).unwrap().value;
        let hi = pretentious::distance(&f, &one, x + step).unwrap().value;
        prop_assert!(hi + 1e-12 >= lo);
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>(), m in 1u64..5_000, n in 1u64..5_000) {
        use num_integer::Integer;
        let f = Mf::random_unimodular(seed);
        let fm = pretentious::mf_eval(&f, m).unwrap();
        let fn_ = pretentious::mf_eval(&f, n).unwrap();
        let fmn = pretentious::mf_eval(&f, m * n).unwrap();
        // the random functions are completely multiplicative
        prop_assert!((fm * fn_ - fmn).norm() < 1e-9);
        if m.gcd(&n) == 1 {
            let mu = Mf::mobius();
            let lhs = pretentious::mf_eval(&mu, m).unwrap() * pretentious::mf_eval(&mu, n).unwrap();
            prop_assert_eq!(lhs, pretentious::mf_eval(&mu, m * n).unwrap());
        }
        prop_assert!(fmn.norm() <= 1.0 + 1e-12);
    }
}

#[test]
fn unbounded_functions_are_kept_out_of_distances() {
    for f in [Mf::divisor_count(), Mf::divisor_sum(), Mf::divisor_count().squared()] {
        assert!(matches!(pretentious::distance(&f, &Mf::one(), 100), Err(Error::Argument { .. })));
        assert!(matches!(pretentious::halasz_ratio(&f, 1000, 0.0), Err(Error::Argument { .. })));
        assert!(pretentious::distance_min_t(&f, 1000, 1.0, 0.5).is_err());
    }
}

#[test]
fn mean_value_examples() {
    let mu = pretentious::mean_value(&Mf::mobius(), 1_000_000).unwrap();
    assert!(mu.norm() <= 1e-3);
    let nit = pretentious::mean_value(&Mf::nit(1.0), 10_000).unwrap();
    assert!((nit.norm() - 0.5f64.sqrt()).abs() <= 0.02);
    let chi = CharacterTable::new(4).unwrap().character(1);
    let m = pretentious::mean_value(&Mf::character(chi), 1001).unwrap();
    assert!((m.re - 1.0 / 1001.0).abs() < 1e-15);
}

#[test]
fn mean_value_by_least_factor_matches_direct_sum() {
    let f = Mf::random_unimodular(5);
    let direct: Complex64 = (1..=20_000u64).map(|n| pretentious::mf_eval(&f, n).unwrap()).sum();
    let mean = pretentious::mean_value(&f, 20_000).unwrap();
    assert!((mean - direct / 20_000.0).norm() < 1e-12);
    // τ: (1/N) Σ τ(n) = (1/N) Σ_d ⌊N/d⌋
    let n = 5_000u64;
    let tau: u64 = (1..=n).map(|d| n / d).sum();
    let mean = pretentious::mean_value(&Mf::divisor_count(), n).unwrap();
    assert!((mean.re - tau as f64 / n as f64).abs() < 1e-9);
}

#[test]
fn nit_mean_within_bound() {
    for t in [-10.0, -3.0, -1.0, 0.0, 0.5, 1.0, 7.5, 10.0] {
        for n in [10_000u64, 100_000] {
            let r = pretentious::nit_mean_check(t, n).unwrap();
            assert!(r.gap <= 0.05, "t={t} N={n}: {r:?}");
            assert!(r.gap <= r.bound, "t={t} N={n}: {r:?}");
        }
    }
}

#[test]
fn grid_minimum_examples() {
    let m = pretentious::distance_min_t(&Mf::nit(0.5), 10_000, 2.0, 0.01).unwrap();
    assert!((m.t_min - 0.5).abs() <= 0.01, "{m:?}");
    assert_eq!(pretentious::distance_min_t(&Mf::one(), 10_000, 2.0, 0.01).unwrap().t_min, 0.0);
}

#[test]
fn halasz_on_characters_and_random_functions_stays_bounded() {
    let chi = CharacterTable::new(4).unwrap().character(1);
    for f in [Mf::character(chi), Mf::random_unimodular(1)] {
        let r = pretentious::halasz_ratio(&f, 10_000, 0.0).unwrap();
        assert!(r.ratio > 0.1 && r.ratio < 10.0, "{}: {r:?}", f.name());
    }
}
