use std::ops::ControlFlow;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ntdesk_core::counting;
use ntdesk_core::sieve::{self, PrimeTable};

/// Trial division, independent of every table in the crate.
fn oracle_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn oracle_mobius(n: u64) -> i8 {
    let f = oracle_factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn batched(lo: u64, hi: u64, segment: usize) -> Vec<u64> {
    let mut out = Vec::new();
    sieve::for_each_prime_batch(lo, hi, segment, |b| {
        out.extend_from_slice(b);
        ControlFlow::Continue(())
    });
    out
}

#[test]
fn segment_size_does_not_change_the_primes_to_ten_million() {
    let reference = sieve::simple_sieve(10_000_000);
    for segment in [1 << 10, 1 << 15, 3 << 17, 1 << 20] {
        let table = PrimeTable::with_segment_size(10_000_000, segment).unwrap();
        assert_eq!(table.primes(), &reference[..], "segment {segment}");
    }
}

#[test]
fn table_primes_are_prime_by_trial_division() {
    let table = PrimeTable::build(200_000).unwrap();
    let primes = table.primes();
    assert!(primes.windows(2).all(|w| w[0] < w[1]));
    for &p in primes {
        assert!(primes.iter().take_while(|&&q| q * q <= p).all(|&q| p % q != 0), "{p}");
    }
}

#[test]
fn least_factor_is_a_prime_divisor() {
    let table = sieve::base_table();
    let bound = table.least_factor_bound().min(1 << 20);
    for n in 2..=bound {
        let p = table.least_factor(n).unwrap();
        assert_eq!(n % p, 0);
        assert!(table.is_prime(p));
        assert_eq!(p, oracle_factor(n)[0].0);
    }
}

#[test]
fn factorization_reconstructs_every_n_to_a_million() {
    for n in 2..=1_000_000u64 {
        let f = sieve::factorize(n).unwrap();
        assert_eq!(f.product(), n as u128, "{n}");
        assert!(f.factors().iter().all(|&(p, _)| sieve::is_prime(p)));
    }
}

#[test]
fn mobius_matches_trial_division_on_random_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=100_000_000u64);
        let lo = n.saturating_sub(3).max(1);
        let window = sieve::mobius_range(lo, n).unwrap();
        for (i, &m) in window.iter().enumerate() {
            assert_eq!(m, oracle_mobius(lo + i as u64), "n = {}", lo + i as u64);
        }
    }
}

#[test]
fn snapshot_invariants_and_rh_form() {
    let xs: Vec<u64> = (2..=9).map(|k| 10u64.pow(k)).chain([4, 5, 127, 128, 1024, 3125]).collect();
    for s in counting::count_snapshots(&xs).unwrap() {
        let x = s.x as f64;
        assert!(s.theta <= s.psi + 1e-9);
        assert!(s.psi - s.theta <= 3.0 * x.sqrt());
        assert!(s.mertens.unsigned_abs() <= s.x);
        let lambda = sieve::mangoldt(s.x).unwrap();
        assert!((s.psi - s.psi_star - 0.5 * lambda).abs() < 1e-9);
        if s.x >= 100 {
            assert!((s.theta - x).abs() <= x.sqrt() * x.ln().powi(2), "x = {}", s.x);
        }
        if (1_000..=1_000_000).contains(&s.x) {
            assert!((s.mertens.unsigned_abs() as f64) / x < 0.01);
        }
    }
}

#[test]
fn theta_and_psi_at_one_hundred_by_hand() {
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
    let theta: f64 = primes.iter().map(|&p| (p as f64).ln()).sum();
    let powers = [4u64, 8, 16, 32, 64, 9, 27, 81, 25, 49];
    let extra: f64 = powers.iter().map(|&q| (oracle_factor(q)[0].0 as f64).ln()).sum();
    let s = counting::count_snapshot(100).unwrap();
    assert!((s.theta - theta).abs() < 1e-9);
    assert!((s.psi - theta - extra).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn batches_are_segment_invariant(lo in 0u64..2_000_000, len in 0u64..300_000, shift in 7u32..19) {
        let hi = lo + len;
        let a = batched(lo, hi, 1 << shift);
        let b = batched(lo, hi, sieve::DEFAULT_SEGMENT_BYTES);
        prop_assert_eq!(&a, &b);
        prop_assert!(a.iter().all(|&p| p >= lo && p <= hi));
    }

    #[test]
    fn factorization_matches_trial_division(n in 2u64..1_000_000_000_000) {
        let f = sieve::factorize(n).unwrap();
        prop_assert_eq!(f.factors().to_vec(), oracle_factor(n));
    }

    #[test]
    fn mobius_window_matches_factorization(lo in 1u64..50_000_000, len in 0u64..2_000) {
        let w = sieve::mobius_range(lo, lo + len).unwrap();
        for (i, &m) in w.iter().enumerate().step_by(37) {
            prop_assert_eq!(m, sieve::factorize(lo + i as u64).unwrap().mobius());
        }
    }

    #[test]
    fn mangoldt_is_log_p_on_prime_powers(p_idx in 0usize..1000, k in 1u32..3) {
        let p = sieve::simple_sieve(8000)[p_idx];
        let n = p.pow(k);
        prop_assert!((sieve::mangoldt(n).unwrap() - (p as f64).ln()).abs() < 1e-12);
        prop_assert_eq!(sieve::mangoldt(n * 6 + 6).unwrap() == 0.0, oracle_factor(n * 6 + 6).len() > 1);
    }
}
