//! Dirichlet characters and primes in arithmetic progressions.
//!
//! The character group mod q is built from discrete logarithms: every
//! reduced residue n is written as a vector of exponents over generators of
//! the cyclic factors of (Z/qZ)^× (a primitive root for each odd prime power,
//! −1 and 5 for 2^k with k ≥ 3, −1 for 4). A character is a vector of
//! frequencies c, and χ(n) = exp(2πi Σ c_j·ind_j(n)/ord_j). Values are kept
//! as exact root-of-unity indices modulo the group exponent, so the
//! orthogonality relations can be checked without rounding.

use std::ops::ControlFlow;
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::sieve::{self, check_upper, for_each_arith_block, for_each_prime_batch, DEFAULT_SEGMENT_BYTES};
use crate::sum::ComplexSum;

pub const MAX_MODULUS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterKind {
    Principal,
    Real,
    Complex,
}

/// One cyclic factor of (Z/qZ)^×: residues mod `modulus` mapped to their
/// discrete log with respect to a fixed generator of order `order`.
#[derive(Debug, Clone)]
struct CyclicFactor {
    modulus: u64,
    order: u64,
    dlog: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

/// The full group of Dirichlet characters mod q (primitive and induced alike).
#[derive(Debug, Clone)]
pub struct CharacterTable {
    q: u64,
    factors: Vec<CyclicFactor>,
    exponent: u64,
    /// frequency vectors, mixed radix over the factor orders
    characters: Vec<Vec<u64>>,
    kinds: Vec<CharacterKind>,
    roots: Arc<[Complex64]>,
}

/// A single character with its values cached for one period.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    q: u64,
    index: usize,
    kind: CharacterKind,
    values: Arc<[Complex64]>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn kind(&self) -> CharacterKind {
        self.kind
    }

    pub fn is_principal(&self) -> bool {
        self.kind == CharacterKind::Principal
    }

    pub fn is_real(&self) -> bool {
        self.kind != CharacterKind::Complex
    }

    pub fn value(&self, n: u64) -> Complex64 {
        self.values[(n % self.q) as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn primitive_root_mod_prime(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let divisors: Vec<u64> = sieve::factorize(p - 1)
        .expect("p − 1 is small")
        .factors()
        .iter()
        .map(|&(r, _)| r)
        .collect();
    (2..p)
        .find(|&g| divisors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root")
}

fn cyclic_table(modulus: u64, generator: u64, order: u64) -> CyclicFactor {
    let mut dlog = vec![NO_LOG; modulus as usize];
    let mut cur = 1 % modulus;
    for k in 0..order {
        dlog[cur as usize] = k as u32;
        cur = cur * generator % modulus;
    }
    CyclicFactor { modulus, order, dlog }
}

impl CharacterTable {
    pub fn new(q: u64) -> Result<Self> {
        const OP: &str = "character_table";
        if !(1..=MAX_MODULUS).contains(&q) {
            return Err(Error::range(OP, format!("q = {q} outside [1, {MAX_MODULUS}]")));
        }
        let mut factors = Vec::new();
        for &(p, e) in sieve::factorize(q)?.factors() {
            let m = p.pow(e);
            if p == 2 {
                match e {
                    // trivial group, kept so even residues get no log
                    1 => factors.push(CyclicFactor { modulus: 2, order: 1, dlog: vec![NO_LOG, 0] }),
                    2 => factors.push(cyclic_table(4, 3, 2)),
                    _ => {
                        // (Z/2^eZ)^× = ⟨−1⟩ × ⟨5⟩; split the log of n into the two coordinates.
                        let half = m / 4;
                        let mut sign = vec![NO_LOG; m as usize];
                        let mut five = vec![NO_LOG; m as usize];
                        let mut cur = 1u64;
                        for b in 0..half {
                            sign[cur as usize] = 0;
                            five[cur as usize] = b as u32;
                            let neg = m - cur;
                            sign[neg as usize] = 1;
                            five[neg as usize] = b as u32;
                            cur = cur * 5 % m;
                        }
                        factors.push(CyclicFactor { modulus: m, order: 2, dlog: sign });
                        factors.push(CyclicFactor { modulus: m, order: half, dlog: five });
                    }
                }
            } else {
                let mut g = primitive_root_mod_prime(p);
                if e > 1 && pow_mod(g, p - 1, p * p) == 1 {
                    g += p;
                }
                factors.push(cyclic_table(m, g, m / p * (p - 1)));
            }
        }
        let exponent = factors.iter().fold(1u64, |l, f| l.lcm(&f.order));
        let phi: u64 = factors.iter().map(|f| f.order).product();
        let mut characters = Vec::with_capacity(phi as usize);
        let mut kinds = Vec::with_capacity(phi as usize);
        let mut c = vec![0u64; factors.len()];
        for _ in 0..phi {
            let principal = c.iter().all(|&v| v == 0);
            let real = c.iter().zip(&factors).all(|(&v, f)| (2 * v) % f.order == 0);
            kinds.push(if principal {
                CharacterKind::Principal
            } else if real {
                CharacterKind::Real
            } else {
                CharacterKind::Complex
            });
            characters.push(c.clone());
            for (v, f) in c.iter_mut().zip(&factors) {
                *v += 1;
                if *v < f.order {
                    break;
                }
                *v = 0;
            }
        }
        let roots: Arc<[Complex64]> = (0..exponent)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / exponent as f64))
            .collect();
        let table = Self { q, factors, exponent, characters, kinds, roots };
        table.check_structure()?;
        Ok(table)
    }

    fn check_structure(&self) -> Result<()> {
        const OP: &str = "character_table";
        let phi = (1..=self.q).filter(|&n| n.gcd(&self.q) == 1).count();
        let principal = self.kinds.iter().filter(|&&k| k == CharacterKind::Principal).count();
        if self.characters.len() != phi || principal != 1 {
            return Err(Error::invariant(OP, format!("{} characters, {principal} principal, φ(q) = {phi}", self.characters.len())));
        }
        for n in 0..self.q {
            let coprime = n.gcd(&self.q) == 1;
            let logged = self.factors.iter().all(|f| f.dlog[(n % f.modulus) as usize] != NO_LOG);
            if coprime != logged {
                return Err(Error::invariant(OP, format!("discrete log table incomplete at {n} mod {}", self.q)));
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Number of characters, φ(q).
    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// Exponent of the group: every value is an `exponent`-th root of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn kind(&self, index: usize) -> CharacterKind {
        self.kinds[index]
    }

    pub fn principal_index(&self) -> usize {
        0
    }

    /// χ_index(n) as k with χ(n) = e^{2πik/exponent}; `None` when gcd(n, q) > 1.
    pub fn root_index(&self, index: usize, n: u64) -> Option<u64> {
        let c = &self.characters[index];
        let mut k = 0u64;
        for (f, &cj) in self.factors.iter().zip(c) {
            let l = f.dlog[(n % f.modulus) as usize];
            if l == NO_LOG {
                return None;
            }
            k = (k + cj * l as u64 % f.order * (self.exponent / f.order)) % self.exponent;
        }
        Some(k)
    }

    pub fn value(&self, index: usize, n: u64) -> Complex64 {
        match self.root_index(index, n) {
            Some(k) => self.roots[k as usize],
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn character(&self, index: usize) -> DirichletCharacter {
        let values: Arc<[Complex64]> = (0..self.q).map(|n| self.value(index, n)).collect();
        DirichletCharacter { q: self.q, index, kind: self.kinds[index], values }
    }

    pub fn characters(&self) -> impl Iterator<Item = DirichletCharacter> + '_ {
        (0..self.len()).map(|i| self.character(i))
    }

    /// Both orthogonality relations, decided exactly on root-of-unity indices.
    ///
    /// A multiset of `exponent`-th roots sums to zero exactly when it is a
    /// union of equal copies of a nontrivial subgroup; that is what the
    /// histogram test below checks. Each relation must vanish where the
    /// theory says it does and equal φ(q) elsewhere.
    pub fn orthogonality_exact(&self) -> bool {
        let phi = self.len() as u64;
        let reduced: Vec<u64> = (0..self.q).filter(|&n| n.gcd(&self.q) == 1).collect();
        for i in 0..self.len() {
            let idx = reduced.iter().map(|&n| self.root_index(i, n).expect("reduced residue"));
            let ok = if i == self.principal_index() {
                idx.clone().all(|k| k == 0) && reduced.len() as u64 == phi
            } else {
                sums_to_zero(idx, self.exponent)
            };
            if !ok {
                return false;
            }
        }
        for &n in &reduced {
            let idx = (0..self.len()).map(|i| self.root_index(i, n).expect("reduced residue"));
            let ok = if n % self.q == 1 % self.q {
                idx.clone().all(|k| k == 0)
            } else {
                sums_to_zero(idx, self.exponent)
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Largest |Σ_n χ(n)| over nonprincipal χ and |Σ_χ χ(n)| over n ≢ 1, in floating point.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, chi) in self.characters().enumerate() {
            if i == self.principal_index() {
                continue;
            }
            let mut s = ComplexSum::new();
            chi.values().iter().for_each(|&v| s.add(v));
            worst = worst.max(s.value().norm());
        }
        for n in 2..self.q {
            if n.gcd(&self.q) != 1 {
                continue;
            }
            let mut s = ComplexSum::new();
            (0..self.len()).for_each(|i| s.add(self.value(i, n)));
            worst = worst.max(s.value().norm());
        }
        worst
    }
}

/// True when the multiset {e^{2πik/l}} is a union of equal copies of a
/// subgroup of order d > 1, which makes its sum exactly zero.
fn sums_to_zero(indices: impl Iterator<Item = u64>, l: u64) -> bool {
    let mut hist = vec![0u64; l as usize];
    for k in indices {
        hist[k as usize] += 1;
    }
    let support: Vec<usize> = (0..hist.len()).filter(|&k| hist[k] > 0).collect();
    let d = support.len() as u64;
    if d < 2 || l % d != 0 {
        return false;
    }
    let step = (l / d) as usize;
    let count = hist[support[0]];
    support.iter().enumerate().all(|(j, &k)| k == j * step && hist[k] == count)
}

fn reduced_residue(op: &'static str, q: u64, a: i64) -> Result<u64> {
    if q == 0 {
        return Err(Error::argument(op, "modulus must be positive"));
    }
    let r = a.rem_euclid(q as i64) as u64;
    if r.gcd(&q) != 1 {
        return Err(Error::argument(op, format!("gcd({a}, {q}) > 1")));
    }
    Ok(r)
}

/// #{p ≤ x : p ≡ a (mod q)}.
pub fn pi_ap(x: u64, q: u64, a: i64) -> Result<u64> {
    let r = reduced_residue("pi_ap", q, a)?;
    Ok(pi_ap_classes(x, q)?[r as usize])
}

/// Prime counts up to x in every residue class mod q (index = residue).
pub fn pi_ap_classes(x: u64, q: u64) -> Result<Vec<u64>> {
    const OP: &str = "pi_ap";
    if q == 0 {
        return Err(Error::argument(OP, "modulus must be positive"));
    }
    check_upper(OP, x)?;
    let mut counts = vec![0u64; q as usize];
    for_each_prime_batch(2, x, DEFAULT_SEGMENT_BYTES, |batch| {
        for &p in batch {
            counts[(p % q) as usize] += 1;
        }
        ControlFlow::Continue(())
    });
    Ok(counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Equidistribution {
    /// the prime at which the reduced classes first hold target·φ(q) primes
    pub x_reached: u64,
    pub min_count: u64,
    pub max_count: u64,
}

/// Walks the primes until the reduced classes mod q hold target·φ(q) primes
/// in total (primes dividing q are not counted), then reports the smallest
/// and largest class counts at that point.
pub fn equidist_stats(q: u64, target_avg: u64) -> Result<Equidistribution> {
    const OP: &str = "equidist_stats";
    if !(2..=10_000).contains(&q) || target_avg == 0 {
        return Err(Error::range(OP, format!("need 2 ≤ q ≤ 10^4 and a positive target, got q={q} target={target_avg}")));
    }
    let reduced: Vec<usize> = (0..q).filter(|&a| a.gcd(&q) == 1).map(|a| a as usize).collect();
    let goal = target_avg * reduced.len() as u64;
    let cap = sieve::sieve_max();
    let mut counts = vec![0u64; q as usize];
    let mut total = 0u64;
    let mut reached = None;
    for_each_prime_batch(2, cap, DEFAULT_SEGMENT_BYTES, |batch| {
        for &p in batch {
            let r = (p % q) as usize;
            if q % p != 0 {
                counts[r] += 1;
                total += 1;
                if total == goal {
                    reached = Some(p);
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    });
    let x_reached = reached.ok_or_else(|| Error::Resource {
        op: OP,
        detail: format!("target not reached below the sieve cap {cap}"),
    })?;
    let (min_count, max_count) = reduced
        .iter()
        .map(|&r| counts[r])
        .fold((u64::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
    Ok(Equidistribution { x_reached, min_count, max_count })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LOne {
    pub value: Complex64,
    /// |L(1, χ) − partial sum| ≤ q/N by partial summation
    pub tail_bound: f64,
    /// For real χ with N ≥ 1000q: whether value − tail_bound > 0.
    pub positive_certified: Option<bool>,
}

/// Σ_{n≤N} χ(n)/n for nonprincipal χ.
pub fn l_one(chi: &DirichletCharacter, n: u64) -> Result<LOne> {
    const OP: &str = "l_one";
    if chi.is_principal() {
        return Err(Error::argument(OP, "the series diverges at s = 1 for the principal character"));
    }
    let q = chi.modulus();
    if n < q {
        return Err(Error::range(OP, format!("N = {n} is below q = {q}")));
    }
    let mut s = ComplexSum::new();
    for m in 1..=n {
        let v = chi.values[(m % q) as usize];
        if v.re != 0.0 || v.im != 0.0 {
            s.add(v / m as f64);
        }
    }
    let value = s.value();
    let tail_bound = q as f64 / n as f64;
    let positive_certified = (chi.is_real() && n >= 1000 * q).then(|| value.re - tail_bound > 0.0);
    Ok(LOne { value, tail_bound, positive_certified })
}

/// (1/N) Σ_{n≤N} μ(n)χ(n).
pub fn mu_chi_mean(chi: &DirichletCharacter, n: u64) -> Result<Complex64> {
    const OP: &str = "mu_chi_mean";
    if n == 0 {
        return Err(Error::range(OP, "N must be positive"));
    }
    check_upper(OP, n)?;
    let q = chi.modulus();
    let mut s = ComplexSum::new();
    for_each_arith_block(1, n, DEFAULT_SEGMENT_BYTES, |start, mu, _| {
        for (i, &m) in mu.iter().enumerate() {
            if m != 0 {
                s.add(chi.values[((start + i as u64) % q) as usize] * m as f64);
            }
        }
        ControlFlow::Continue(())
    });
    Ok(s.value() / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeastPrime {
    pub p: u64,
    /// log p / log q, reported for q ≥ 3
    pub linnik_exponent: Option<f64>,
}

fn least_prime_result(p: u64, q: u64) -> LeastPrime {
    let linnik_exponent = (q >= 3).then(|| (p as f64).ln() / (q as f64).ln());
    LeastPrime { p, linnik_exponent }
}

/// Least prime p ≡ a (mod q).
pub fn least_prime_ap(q: u64, a: i64) -> Result<LeastPrime> {
    const OP: &str = "least_prime_ap";
    if q < 2 {
        return Err(Error::argument(OP, format!("q = {q} must be at least 2")));
    }
    let r = reduced_residue(OP, q, a)?;
    let cap = sieve::sieve_max();
    let mut found = None;
    for_each_prime_batch(2, cap, DEFAULT_SEGMENT_BYTES, |batch| {
        match batch.iter().find(|&&p| p % q == r) {
            Some(&p) => {
                found = Some(p);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    found
        .map(|p| least_prime_result(p, q))
        .ok_or_else(|| Error::Resource { op: OP, detail: format!("no prime ≡ {r} (mod {q}) below the sieve cap {cap}") })
}

/// Least primes in every reduced class mod q, from one walk: (a, result) pairs by residue.
pub fn least_primes_all(q: u64) -> Result<Vec<(u64, LeastPrime)>> {
    const OP: &str = "least_prime_ap";
    if q < 2 {
        return Err(Error::argument(OP, format!("q = {q} must be at least 2")));
    }
    let mut least = vec![0u64; q as usize];
    let mut missing = (0..q).filter(|&a| a.gcd(&q) == 1).count();
    let cap = sieve::sieve_max();
    for_each_prime_batch(2, cap, DEFAULT_SEGMENT_BYTES, |batch| {
        for &p in batch {
            let r = (p % q) as usize;
            if least[r] == 0 && (r as u64).gcd(&q) == 1 {
                least[r] = p;
                missing -= 1;
                if missing == 0 {
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    });
    if missing > 0 {
        return Err(Error::Resource { op: OP, detail: format!("{missing} classes mod {q} have no prime below {cap}") });
    }
    Ok((0..q)
        .filter(|&a| a.gcd(&q) == 1)
        .map(|a| (a, least_prime_result(least[a as usize], q)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_four_and_three() {
        let t = CharacterTable::new(4).unwrap();
        assert_eq!(t.len(), 2);
        let chi = t.characters().find(|c| !c.is_principal()).unwrap();
        assert!((chi.value(3) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(chi.value(6), Complex64::new(0.0, 0.0));
        assert_eq!(chi.kind(), CharacterKind::Real);
        let t = CharacterTable::new(3).unwrap();
        let chi = t.characters().find(|c| !c.is_principal()).unwrap();
        assert!((chi.value(2).re + 1.0).abs() < 1e-15);
    }

    #[test]
    fn trivial_modulus() {
        let t = CharacterTable::new(1).unwrap();
        assert_eq!(t.len(), 1);
        let chi = t.character(0);
        assert!(chi.is_principal());
        for n in 0..20 {
            assert_eq!(chi.value(n), Complex64::new(1.0, 0.0));
        }
        assert!(CharacterTable::new(0).is_err());
        assert!(CharacterTable::new(MAX_MODULUS + 1).is_err());
    }

    #[test]
    fn kinds_mod_eight_and_five() {
        // (Z/8Z)^× is Klein four: all four characters real
        let t = CharacterTable::new(8).unwrap();
        assert_eq!(t.len(), 4);
        assert!((0..4).all(|i| t.kind(i) != CharacterKind::Complex));
        // (Z/5Z)^× is cyclic of order 4: two complex characters
        let t = CharacterTable::new(5).unwrap();
        assert_eq!((0..4).filter(|&i| t.kind(i) == CharacterKind::Complex).count(), 2);
    }

    #[test]
    fn orthogonality_small_moduli() {
        for q in [1, 2, 3, 4, 8, 9, 12, 16, 24, 32, 45, 60, 64, 97, 100] {
            let t = CharacterTable::new(q).unwrap();
            assert!(t.orthogonality_exact(), "q = {q}");
            assert!(t.orthogonality_residual() < 1e-10, "q = {q}");
        }
    }

    #[test]
    fn zero_sum_detector() {
        assert!(sums_to_zero([0, 2].into_iter(), 4));
        assert!(sums_to_zero([0, 1, 2, 3, 0, 1, 2, 3].into_iter(), 4));
        assert!(!sums_to_zero([0, 1].into_iter(), 4));
        assert!(!sums_to_zero([0, 0].into_iter(), 4));
        assert!(!sums_to_zero([0, 2, 2].into_iter(), 4));
    }

    #[test]
    fn pi_ap_examples() {
        assert_eq!(pi_ap(100, 4, 1).unwrap(), 11);
        assert_eq!(pi_ap(100, 4, 3).unwrap(), 13);
        assert_eq!(pi_ap(10, 2, 1).unwrap(), 3);
        assert_eq!(pi_ap(100, 4, -1).unwrap(), 13);
        assert!(matches!(pi_ap(100, 4, 2), Err(Error::Argument { .. })));
    }

    #[test]
    fn least_prime_examples() {
        assert_eq!(least_prime_ap(3, 2).unwrap().p, 2);
        assert_eq!(least_prime_ap(4, 1).unwrap().p, 5);
        // 2 ≡ 2 (mod 101) already; the next class up starts at 103
        assert_eq!(least_prime_ap(101, 2).unwrap().p, 2);
        let r = least_prime_ap(101, 6).unwrap();
        assert_eq!(r.p, 107);
        assert!((r.linnik_exponent.unwrap() - 107f64.ln() / 101f64.ln()).abs() < 1e-15);
        assert!(least_prime_ap(4, 2).is_err());
        let all = least_primes_all(10).unwrap();
        let ps: Vec<u64> = all.iter().map(|(_, r)| r.p).collect();
        assert_eq!(ps, vec![11, 3, 7, 19]);
    }

    #[test]
    fn l_one_rejects_principal() {
        let t = CharacterTable::new(5).unwrap();
        assert!(l_one(&t.character(0), 100).is_err());
    }

    #[test]
    fn mu_chi_mean_at_one() {
        let t = CharacterTable::new(5).unwrap();
        for chi in t.characters() {
            assert_eq!(mu_chi_mean(&chi, 1).unwrap(), chi.value(1));
        }
    }
}
