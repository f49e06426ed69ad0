use num_integer::Integer;

use ntdesk_core::counting;
use ntdesk_core::progressions::{self, CharacterKind, CharacterTable};
use ntdesk_core::sieve;

fn phi(q: u64) -> usize {
    (1..=q).filter(|&a| a.gcd(&q) == 1).count()
}

#[test]
fn orthogonality_and_structure_to_five_hundred() {
    for q in 1..=500u64 {
        let t = CharacterTable::new(q).unwrap();
        assert_eq!(t.len(), phi(q), "q = {q}");
        assert!(t.orthogonality_exact(), "q = {q}");
        assert!(t.orthogonality_residual() <= 1e-10, "q = {q}");
        assert_eq!((0..t.len()).filter(|&i| t.kind(i) == CharacterKind::Principal).count(), 1);
    }
}

#[test]
fn characters_are_completely_multiplicative() {
    for q in [3u64, 8, 12, 15, 16, 45, 97, 100, 128, 210] {
        let t = CharacterTable::new(q).unwrap();
        for chi in t.characters() {
            for m in 1..q {
                for n in 1..q {
                    let lhs = chi.value(m) * chi.value(n);
                    assert!((lhs - chi.value(m * n)).norm() < 1e-12, "q={q} m={m} n={n}");
                }
            }
        }
    }
}

#[test]
fn class_counts_partition_pi() {
    let pis = counting::prime_counts(&[1_000_000]).unwrap()[0];
    for q in 1..=100u64 {
        let classes = progressions::pi_ap_classes(1_000_000, q).unwrap();
        let dividing = sieve::primes_between(2, q).unwrap().iter().filter(|&&p| q % p == 0).count() as u64;
        let reduced: u64 = (0..q).filter(|&a| a.gcd(&q) == 1).map(|a| classes[a as usize]).sum();
        assert_eq!(reduced + dividing, pis, "q = {q}");
    }
}

#[test]
fn residues_mod_ten_balance_at_ten_million() {
    let counts: Vec<u64> = [1i64, 3, 7, 9].iter().map(|&a| progressions::pi_ap(10_000_000, 10, a).unwrap()).collect();
    let (lo, hi) = (*counts.iter().min().unwrap() as f64, *counts.iter().max().unwrap() as f64);
    assert!(hi / lo <= 1.1 && lo / hi >= 0.9, "{counts:?}");
}

#[test]
fn linnik_sweep_to_one_thousand() {
    let primes = sieve::primes_between(2, 10_000_000).unwrap();
    let mut worst = (0.0f64, 0u64, 0u64);
    for q in 2..=1_000u64 {
        let all = progressions::least_primes_all(q).unwrap();
        assert_eq!(all.len(), phi(q));
        for (a, lp) in all {
            // the least prime in the class, found by an independent scan
            let expect = *primes.iter().find(|&&p| p % q == a).unwrap();
            assert_eq!(lp.p, expect, "q={q} a={a}");
            if let Some(e) = lp.linnik_exponent {
                assert!(e <= 6.0, "q={q} a={a} exponent {e}");
                if e > worst.0 {
                    worst = (e, q, a);
                }
            }
        }
    }
    println!("largest log p / log q: {:.4} at q={}, a={}", worst.0, worst.1, worst.2);
}

#[test]
fn least_prime_examples() {
    assert_eq!(progressions::least_prime_ap(101, 2).unwrap().p, 2);
    assert_eq!(progressions::least_prime_ap(101, 6).unwrap().p, 107);
    assert!(progressions::least_prime_ap(10, 5).is_err());
}

#[test]
fn l_one_and_mu_chi() {
    let t = CharacterTable::new(4).unwrap();
    let chi = t.characters().find(|c| !c.is_principal()).unwrap();
    let l = progressions::l_one(&chi, 10_000_000).unwrap();
    assert!((l.value.re - std::f64::consts::FRAC_PI_4).abs() <= l.tail_bound + 1e-12);
    assert!(progressions::l_one(&t.character(t.principal_index()), 1000).is_err());
    let m = progressions::mu_chi_mean(&chi, 1_000_000).unwrap();
    assert!(m.norm() <= 1e-2);
}

#[test]
fn equidistribution_stops_on_the_target() {
    let s = progressions::equidist_stats(101, 100).unwrap();
    let classes = progressions::pi_ap_classes(s.x_reached, 101).unwrap();
    let reduced: u64 = classes.iter().enumerate().filter(|&(a, _)| a != 0).map(|(_, &c)| c).sum();
    assert_eq!(reduced, 100 * 100);
    assert!(sieve::is_prime(s.x_reached));
}
