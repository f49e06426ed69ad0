//! Segmented sieve of Eratosthenes and the [`PrimeTable`] built on it.
//!
//! Everything here is exact 64-bit integer arithmetic. The sieve stores odd
//! numbers only, one byte per candidate, and walks the range in segments of
//! `segment_size` bytes so the working set stays in cache. Output is
//! independent of the segment size.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use num_integer::Roots;

use crate::error::{Error, Result};

/// Largest sieve limit accepted unless overridden by [`SIEVE_MAX_ENV`].
pub const DEFAULT_MAX_LIMIT: u64 = 10_000_000_000;
/// Environment variable that overrides the sieve limit cap.
pub const SIEVE_MAX_ENV: &str = "NTDESK_SIEVE_MAX";
/// Largest integer `factorize` accepts (trial division by primes ≤ 10^6).
pub const DEFAULT_FACTOR_MAX: u64 = 1_000_000_000_000;
/// Bytes of sieve per segment (256 KiB, covering 512 Ki integers).
pub const DEFAULT_SEGMENT_BYTES: usize = 1 << 18;
/// The least-prime-factor table covers `n ≤ min(limit, LEAST_FACTOR_BOUND)`.
pub const LEAST_FACTOR_BOUND: u64 = 1 << 21;

/// Current sieve cap, honouring [`SIEVE_MAX_ENV`].
pub fn sieve_max() -> u64 {
    std::env::var(SIEVE_MAX_ENV)
        .ok()
        .and_then(|v| parse_count(&v))
        .unwrap_or(DEFAULT_MAX_LIMIT)
}

/// Parses integers written either plainly or as `1e9` / `10^9`.
pub fn parse_count(text: &str) -> Option<u64> {
    let t = text.trim().replace('_', "");
    if let Ok(v) = t.parse::<u64>() {
        return Some(v);
    }
    let (mantissa, exp) = t.split_once(['e', 'E']).or_else(|| {
        t.split_once('^').and_then(|(b, e)| (b == "10").then_some(("1", e)))
    })?;
    let m: u64 = mantissa.parse().ok()?;
    let e: u32 = exp.parse().ok()?;
    m.checked_mul(10u64.checked_pow(e)?)
}

pub(crate) fn check_upper(op: &'static str, n: u64) -> Result<()> {
    let max = sieve_max();
    if n > max {
        return Err(Error::range(op, format!("{n} exceeds the sieve cap {max} (set {SIEVE_MAX_ENV} to raise it)")));
    }
    Ok(())
}

/// Plain (unsegmented) sieve; used for base primes and as a cross-check.
pub fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(prime_count_estimate(limit));
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            if let Some(sq) = i.checked_mul(i) {
                let mut j = sq;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
    }
    primes
}

fn prime_count_estimate(limit: u64) -> usize {
    if limit < 10 {
        return 4;
    }
    let x = limit as f64;
    (1.26 * x / x.ln()) as usize + 16
}

/// Calls `visit` with the primes of `[lo, hi]` in ascending batches (one per
/// segment). The visitor may stop the walk early with `ControlFlow::Break`.
pub fn for_each_prime_batch<F>(lo: u64, hi: u64, segment_size: usize, mut visit: F)
where
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    if hi < 2 || lo > hi {
        return;
    }
    let segment_size = segment_size.max(64);
    let base: Vec<u64> = simple_sieve(hi.sqrt()).into_iter().skip(1).collect();
    let mut batch = Vec::with_capacity(segment_size);
    if lo <= 2 {
        batch.push(2);
    }
    // Odd candidates only: byte i of a segment starting at odd `start` is start + 2i.
    let mut start = lo.max(3) | 1;
    let mut flags = vec![0u8; segment_size];
    let mut next: Vec<u64> = base
        .iter()
        .map(|&p| {
            let first = (p * p).max(start.div_ceil(p) * p);
            if first % 2 == 0 { first + p } else { first }
        })
        .collect();
    while start <= hi {
        let span = (((hi - start) / 2) + 1).min(segment_size as u64) as usize;
        let end = start + 2 * (span as u64 - 1);
        flags[..span].fill(1);
        for (k, &p) in base.iter().enumerate() {
            if p * p > end {
                break;
            }
            let mut m = next[k];
            let step = 2 * p;
            while m <= end {
                flags[((m - start) / 2) as usize] = 0;
                m += step;
            }
            next[k] = m;
        }
        for (i, &f) in flags[..span].iter().enumerate() {
            if f != 0 {
                let n = start + 2 * i as u64;
                if n > 1 {
                    batch.push(n);
                }
            }
        }
        if !batch.is_empty() {
            if visit(&batch).is_break() {
                return;
            }
            batch.clear();
        }
        start = end + 2;
    }
    if !batch.is_empty() {
        let _ = visit(&batch);
    }
}

/// Calls `visit(first_n, mu, prime)` for consecutive blocks of `[lo, hi]`,
/// where `mu[i] = μ(first_n + i)` and `prime[i]` flags primality. One pass of
/// this walk is enough for π, θ and M together.
pub fn for_each_arith_block<F>(lo: u64, hi: u64, block: usize, mut visit: F)
where
    F: FnMut(u64, &[i8], &[bool]) -> ControlFlow<()>,
{
    if lo == 0 || lo > hi {
        return;
    }
    let block = block.max(64);
    let base = simple_sieve(hi.sqrt());
    let mut mu = vec![0i8; block];
    let mut prod = vec![0u64; block];
    let mut prime = vec![false; block];
    let mut start = lo;
    loop {
        let len = ((hi - start + 1).min(block as u64)) as usize;
        let end = start + len as u64 - 1;
        mu[..len].fill(1);
        prod[..len].fill(1);
        prime[..len].fill(true);
        if start == 1 {
            prime[0] = false;
        }
        for &p in &base {
            if p * p > end {
                break;
            }
            let mut m = start.div_ceil(p) * p;
            while m <= end {
                let i = (m - start) as usize;
                mu[i] = -mu[i];
                prod[i] *= p;
                if m != p {
                    prime[i] = false;
                }
                m += p;
            }
            let sq = p * p;
            let mut m = start.div_ceil(sq) * sq;
            while m <= end {
                mu[(m - start) as usize] = 0;
                m += sq;
            }
        }
        for i in 0..len {
            // one prime factor above √end remains when the small ones don't multiply out to n
            if mu[i] != 0 && prod[i] != start + i as u64 {
                mu[i] = -mu[i];
            }
        }
        if visit(start, &mu[..len], &prime[..len]).is_break() || end == hi {
            return;
        }
        start = end + 1;
    }
}

/// Calls `visit(first_n, mu)` with μ(n) for consecutive blocks of `[lo, hi]`.
pub fn for_each_mobius_block<F>(lo: u64, hi: u64, block: usize, mut visit: F)
where
    F: FnMut(u64, &[i8]) -> ControlFlow<()>,
{
    for_each_arith_block(lo, hi, block, |start, mu, _| visit(start, mu));
}

/// μ(n) for every n in `[lo, hi]`.
pub fn mobius_range(lo: u64, hi: u64) -> Result<Vec<i8>> {
    const OP: &str = "mobius_range";
    if lo < 1 || lo > hi {
        return Err(Error::range(OP, format!("need 1 ≤ lo ≤ hi, got lo={lo} hi={hi}")));
    }
    check_upper(OP, hi)?;
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    for_each_mobius_block(lo, hi, DEFAULT_SEGMENT_BYTES, |_, block| {
        out.extend_from_slice(block);
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Complete factorization of a positive integer, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    /// Product of p^e, in u128 so that an inconsistent factor list cannot wrap.
    pub fn product(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, &(p, e)| acc * (p as u128).pow(e))
    }

    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Λ(n): log p when n = p^m, else 0.
    pub fn mangoldt(&self) -> f64 {
        match self.factors.as_slice() {
            [(p, _)] => (*p as f64).ln(),
            _ => 0.0,
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Immutable table of the primes up to `limit`, plus least prime factors for
/// small n. Safe to share between threads.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    least_factor: Vec<u32>,
    segment_size: usize,
}

impl PrimeTable {
    pub fn build(limit: u64) -> Result<Self> {
        Self::with_segment_size(limit, DEFAULT_SEGMENT_BYTES)
    }

    pub fn with_segment_size(limit: u64, segment_size: usize) -> Result<Self> {
        const OP: &str = "build_table";
        if limit < 2 {
            return Err(Error::range(OP, format!("limit {limit} is below 2")));
        }
        check_upper(OP, limit)?;
        let mut primes = Vec::with_capacity(prime_count_estimate(limit));
        for_each_prime_batch(2, limit, segment_size, |batch| {
            primes.extend_from_slice(batch);
            ControlFlow::Continue(())
        });
        let lf_bound = limit.min(LEAST_FACTOR_BOUND) as usize;
        let mut least_factor = vec![0u32; lf_bound + 1];
        for &p in &primes {
            let p = p as usize;
            if p > lf_bound {
                break;
            }
            let mut m = p;
            while m <= lf_bound {
                if least_factor[m] == 0 {
                    least_factor[m] = p as u32;
                }
                m += p;
            }
        }
        Ok(Self { limit, primes, least_factor, segment_size })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn segment_size(&self) -> usize {
        self.segment_size
    }

    /// Largest n covered by [`PrimeTable::least_factor`].
    pub fn least_factor_bound(&self) -> u64 {
        self.least_factor.len() as u64 - 1
    }

    pub fn least_factor(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.least_factor_bound() {
            return None;
        }
        Some(self.least_factor[n as usize] as u64)
    }

    /// π(x) for x ≤ limit.
    pub fn pi(&self, x: u64) -> u64 {
        debug_assert!(x <= self.limit, "pi({x}) beyond table limit {}", self.limit);
        self.primes.partition_point(|&p| p <= x) as u64
    }

    /// Primality for n ≤ limit²: table lookup, or trial division above the limit.
    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.limit {
            return self.primes.binary_search(&n).is_ok();
        }
        debug_assert!((n as u128) <= (self.limit as u128).pow(2));
        for &p in &self.primes {
            if p * p > n {
                break;
            }
            if n % p == 0 {
                return false;
            }
        }
        true
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        const OP: &str = "factorize";
        if n == 0 {
            return Err(Error::range(OP, "n must be positive"));
        }
        if n > DEFAULT_FACTOR_MAX || (n as u128) > (self.limit as u128).pow(2) {
            let bound = DEFAULT_FACTOR_MAX.min(self.limit.saturating_mul(self.limit));
            return Err(Error::range(OP, format!("{n} exceeds the trial-division bound {bound}")));
        }
        let mut factors = Vec::new();
        let mut m = n;
        while m > 1 && m <= self.least_factor_bound() {
            let p = self.least_factor[m as usize] as u64;
            push_factor(&mut factors, p);
            m /= p;
        }
        if m > 1 {
            for &p in &self.primes {
                if p * p > m {
                    break;
                }
                while m % p == 0 {
                    push_factor(&mut factors, p);
                    m /= p;
                }
            }
            if m > 1 {
                push_factor(&mut factors, m);
            }
        }
        Ok(Factorization { n, factors })
    }

    pub fn mobius(&self, n: u64) -> Result<i8> {
        Ok(self.factorize(n)?.mobius())
    }

    pub fn mangoldt(&self, n: u64) -> Result<f64> {
        Ok(self.factorize(n)?.mangoldt())
    }
}

fn push_factor(factors: &mut Vec<(u64, u32)>, p: u64) {
    match factors.last_mut() {
        Some((q, e)) if *q == p => *e += 1,
        _ => factors.push((p, 1)),
    }
}

/// Shared table of the primes up to 10^6, enough to factor anything up to 10^12.
pub fn base_table() -> &'static PrimeTable {
    static TABLE: OnceLock<PrimeTable> = OnceLock::new();
    TABLE.get_or_init(|| PrimeTable::build(1_000_000).expect("10^6 is within every cap"))
}

pub fn factorize(n: u64) -> Result<Factorization> {
    base_table().factorize(n)
}

pub fn mangoldt(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::range("mangoldt", "n must be positive"));
    }
    base_table().mangoldt(n)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && n <= DEFAULT_FACTOR_MAX && base_table().is_prime(n)
}

/// Primes in `[lo, hi]` as a vector.
pub fn primes_between(lo: u64, hi: u64) -> Result<Vec<u64>> {
    check_upper("primes_between", hi)?;
    let mut out = Vec::new();
    for_each_prime_batch(lo, hi, DEFAULT_SEGMENT_BYTES, |b| {
        out.extend_from_slice(b);
        ControlFlow::Continue(())
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let t = PrimeTable::build(100).unwrap();
        assert_eq!(t.pi(10), 4);
        assert_eq!(t.pi(100), 25);
        assert_eq!(&t.primes()[..4], &[2, 3, 5, 7]);
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert!(matches!(PrimeTable::build(1), Err(Error::Range { .. })));
        assert!(matches!(PrimeTable::build(DEFAULT_MAX_LIMIT + 1), Err(Error::Range { .. })));
    }

    #[test]
    fn table_counts_from_the_literature() {
        assert_eq!(PrimeTable::build(1000).unwrap().primes().len(), 168);
        assert_eq!(PrimeTable::build(1_000_000).unwrap().primes().len(), 78498);
    }

    #[test]
    fn mobius_examples() {
        let mu = mobius_range(1, 30).unwrap();
        assert_eq!(mu[0], 1);
        assert_eq!(mu[3], 0);
        assert_eq!(mu[29], -1);
        assert!(mobius_range(5, 4).is_err());
        assert!(mobius_range(0, 4).is_err());
    }

    #[test]
    fn mangoldt_examples() {
        assert!((mangoldt(8).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(mangoldt(6).unwrap(), 0.0);
        assert!((mangoldt(7).unwrap() - 7f64.ln()).abs() < 1e-15);
        assert_eq!(mangoldt(1).unwrap(), 0.0);
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(676567).unwrap();
        assert_eq!(f.factors(), &[(619, 1), (1093, 1)]);
        assert_eq!(f.to_string(), "619·1093");
        assert!(factorize(676589).unwrap().is_prime());
        assert_eq!(factorize(2520).unwrap().factors(), &[(2, 3), (3, 2), (5, 1), (7, 1)]);
        assert!(factorize(1).unwrap().factors().is_empty());
        assert!(factorize(DEFAULT_FACTOR_MAX + 1).is_err());
        // 999983² is the largest square of a table prime
        assert_eq!(factorize(999_983 * 999_983).unwrap().factors(), &[(999_983, 2)]);
    }

    #[test]
    fn parse_count_forms() {
        assert_eq!(parse_count("1e9"), Some(1_000_000_000));
        assert_eq!(parse_count("10^6"), Some(1_000_000));
        assert_eq!(parse_count("2_000"), Some(2000));
        assert_eq!(parse_count("x"), None);
    }

    #[test]
    fn batches_respect_lower_bound() {
        let v = primes_between(90, 110).unwrap();
        assert_eq!(v, vec![97, 101, 103, 107, 109]);
        assert_eq!(primes_between(2, 2).unwrap(), vec![2]);
        assert_eq!(primes_between(3, 3).unwrap(), vec![3]);
        assert!(primes_between(24, 28).unwrap().is_empty());
    }
}
