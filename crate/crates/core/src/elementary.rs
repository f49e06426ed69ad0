//! Chebyshev–Erdős style elementary estimates.
//!
//! The central binomial coefficient and its prime valuations, the
//! factorial–Möbius product for lcm(1..x) and its truncation, Stirling-type
//! bounds for log N!, Bertrand's postulate, the Eratosthenes sieve bound,
//! and the two "error is O(x)" functional equations (Selberg's formula and
//! its Möbius analogue).

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::sieve::{self, for_each_prime_batch, mobius_range, primes_between, DEFAULT_SEGMENT_BYTES};
use crate::sum::KahanSum;

const LOG_TOL: f64 = 1e-9;

fn require_prime(op: &'static str, p: u64) -> Result<()> {
    if !sieve::is_prime(p) {
        return Err(Error::argument(op, format!("{p} is not prime")));
    }
    Ok(())
}

/// Σ_{k≥1} ⌊N/p^k⌋, the exponent of p in N!, for p ≥ 2.
fn legendre_valuation(p: u64, n: u64) -> u64 {
    let mut e = 0;
    let mut m = n;
    while m >= p {
        m /= p;
        e += m;
    }
    e
}

/// Exponent of the prime `p` in N!.
pub fn factorial_valuation(p: u64, n: u64) -> Result<u64> {
    require_prime("factorial_valuation", p)?;
    Ok(legendre_valuation(p, n))
}

/// Exponent of the prime `p` in C(2n, n): Σ_k (⌊2n/p^k⌋ − 2⌊n/p^k⌋).
pub fn kummer_exponent(p: u64, n: u64) -> Result<u32> {
    require_prime("kummer_exponent", p)?;
    Ok(kummer(p, n))
}

fn kummer(p: u64, n: u64) -> u32 {
    let mut e = 0;
    let mut pk = p;
    while pk <= 2 * n {
        e += (2 * n / pk - 2 * (n / pk)) as u32;
        match pk.checked_mul(p) {
            Some(v) => pk = v,
            None => break,
        }
    }
    e
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialReport {
    pub n: u64,
    /// log C(2n, n)
    pub central_log: f64,
    /// Σ log p over n < p ≤ 2n
    pub prime_block_log: f64,
    /// max p^{e_p} over the primes dividing C(2n, n)
    pub max_prime_power: u64,
}

/// Checks Π_{n<p≤2n} p ≤ C(2n,n) ≤ 2^{2n} and p^{e_p} ≤ 2n.
pub fn binom_prime_bounds(n: u64) -> Result<BinomialReport> {
    const OP: &str = "binom_prime_bounds";
    if !(1..=10_000_000).contains(&n) {
        return Err(Error::range(OP, format!("n = {n} outside [1, 10^7]")));
    }
    let central_log = (1..=n)
        .map(|k| (((n + k) as f64) / k as f64).ln())
        .collect::<KahanSum>()
        .value();
    let mut block = KahanSum::new();
    let mut max_prime_power = 1;
    for p in primes_between(2, 2 * n)? {
        if p > n {
            block.add((p as f64).ln());
        }
        let e = kummer(p, n);
        if e > 0 {
            max_prime_power = max_prime_power.max(p.pow(e));
        }
    }
    let report = BinomialReport {
        n,
        central_log,
        prime_block_log: block.value(),
        max_prime_power,
    };
    let upper = 2.0 * n as f64 * std::f64::consts::LN_2;
    if report.prime_block_log > report.central_log * (1.0 + LOG_TOL)
        || report.central_log > upper * (1.0 + LOG_TOL)
        || report.max_prime_power > 2 * n
    {
        return Err(Error::invariant(OP, format!("{report:?}")));
    }
    Ok(report)
}

/// log m! for every m ≤ limit, by compensated prefix sums.
fn log_factorials(limit: u64) -> Vec<f64> {
    let mut out = Vec::with_capacity(limit as usize + 1);
    let mut s = KahanSum::new();
    out.push(0.0);
    for m in 1..=limit {
        s.add((m as f64).ln());
        out.push(s.value());
    }
    out
}

/// Both sides of lcm(1..x) = Π_{n≤x} ⌊x/n⌋!^{μ(n)} in log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcmIdentity {
    pub x: u64,
    /// Σ_{p^e ≤ x} log p = log lcm(1..x)
    pub lhs_log: f64,
    /// Σ_{n≤x} μ(n) log ⌊x/n⌋!
    pub rhs_log: f64,
    /// Exact big-integer verdict, computed for x ≤ 200.
    pub exact_match: Option<bool>,
}

pub const LCM_EXACT_MAX: u64 = 200;

pub fn lcm_identity_check(x: u64) -> Result<LcmIdentity> {
    const OP: &str = "lcm_identity_check";
    if !(2..=1_000_000).contains(&x) {
        return Err(Error::range(OP, format!("x = {x} outside [2, 10^6]")));
    }
    let mut lhs = KahanSum::new();
    for p in primes_between(2, x)? {
        let lp = (p as f64).ln();
        let mut pk = p;
        while pk <= x {
            lhs.add(lp);
            pk *= p;
        }
    }
    let lf = log_factorials(x);
    let mu = mobius_range(1, x)?;
    let mut rhs = KahanSum::new();
    for (i, &m) in mu.iter().enumerate() {
        if m != 0 {
            rhs.add(m as f64 * lf[(x / (i as u64 + 1)) as usize]);
        }
    }
    let exact_match = (x <= LCM_EXACT_MAX).then(|| lcm_identity_exact(x).map(|e| e.holds())).transpose()?;
    let out = LcmIdentity { x, lhs_log: lhs.value(), rhs_log: rhs.value(), exact_match };
    if (out.lhs_log - out.rhs_log).abs() > 1e-6 * out.lhs_log.max(1.0) || exact_match == Some(false) {
        return Err(Error::invariant(OP, format!("{out:?}")));
    }
    Ok(out)
}

/// Exact form of the identity: lcm(1..x) and the two halves of the
/// factorial product (μ = +1 factorials over μ = −1 factorials).
#[derive(Debug, Clone, PartialEq)]
pub struct ExactIdentity {
    pub lcm: BigUint,
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl ExactIdentity {
    pub fn holds(&self) -> bool {
        &self.lcm * &self.denominator == self.numerator
    }
}

pub fn lcm_identity_exact(x: u64) -> Result<ExactIdentity> {
    const OP: &str = "lcm_identity_exact";
    if !(1..=LCM_EXACT_MAX).contains(&x) {
        return Err(Error::range(OP, format!("x = {x} outside [1, {LCM_EXACT_MAX}]")));
    }
    let mut lcm = BigUint::one();
    for p in primes_between(2, x)? {
        let mut pk = p;
        while pk * p <= x {
            pk *= p;
        }
        lcm *= pk;
    }
    let factorial = |m: u64| (1..=m).fold(BigUint::one(), |acc, k| acc * k);
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    for (i, &m) in mobius_range(1, x)?.iter().enumerate() {
        let f = factorial(x / (i as u64 + 1));
        match m {
            1 => numerator *= f,
            -1 => denominator *= f,
            _ => {}
        }
    }
    Ok(ExactIdentity { lcm, numerator, denominator })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedIdentity {
    pub x: u64,
    pub n: u64,
    /// Σ_{n≤N} μ(n) log ⌊x/n⌋!
    pub log_value: f64,
    /// (p, exponent of p in Π_{n≤N} ⌊x/n⌋!^{μ(n)}) for each queried prime
    pub exponents: Vec<(u64, i64)>,
}

/// The product Π_{n≤N} ⌊x/n⌋!^{μ(n)} for x > N², with the exponents of the
/// queried large primes. Every prime p ∈ [x/(N+1), x] should appear exactly once.
pub fn truncated_identity(x: u64, n: u64, query_primes: &[u64]) -> Result<TruncatedIdentity> {
    const OP: &str = "truncated_identity";
    if n == 0 || (x as u128) <= (n as u128).pow(2) {
        return Err(Error::Precondition { op: OP, detail: format!("need x > N² with N ≥ 1, got x={x} N={n}") });
    }
    if x > 10_000_000 {
        return Err(Error::range(OP, format!("x = {x} exceeds 10^7")));
    }
    let mu = mobius_range(1, n)?;
    let mut exponents = Vec::with_capacity(query_primes.len());
    for &p in query_primes {
        require_prime(OP, p)?;
        if p.saturating_mul(p) <= x {
            return Err(Error::argument(OP, format!("queried prime {p} is not above √{x}")));
        }
        let e: i64 = mu
            .iter()
            .enumerate()
            .map(|(i, &m)| m as i64 * legendre_valuation(p, x / (i as u64 + 1)) as i64)
            .sum();
        exponents.push((p, e));
    }
    let lf = log_factorials(x);
    let log_value = mu
        .iter()
        .enumerate()
        .filter(|(_, &m)| m != 0)
        .map(|(i, &m)| m as f64 * lf[(x / (i as u64 + 1)) as usize])
        .collect::<KahanSum>()
        .value();
    Ok(TruncatedIdentity { x, n, log_value, exponents })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogFactorial {
    pub exact: f64,
    pub estimate: f64,
}

impl LogFactorial {
    pub fn gap(&self) -> f64 {
        self.exact - self.estimate
    }
}

/// log N! against N(log N − 1) + 1; the gap is at most log N.
pub fn log_factorial_estimate(n: u64) -> Result<LogFactorial> {
    const OP: &str = "log_factorial_estimate";
    if !(2..=1_000_000_000).contains(&n) {
        return Err(Error::range(OP, format!("N = {n} outside [2, 10^9]")));
    }
    let exact = (2..=n).map(|k| (k as f64).ln()).collect::<KahanSum>().value();
    let nf = n as f64;
    let out = LogFactorial { exact, estimate: nf * (nf.ln() - 1.0) + 1.0 };
    if out.gap().abs() > nf.ln() {
        return Err(Error::invariant(OP, format!("{out:?}")));
    }
    Ok(out)
}

/// Least prime p with n < p < 2n.
pub fn bertrand_check(n: u64) -> Result<u64> {
    const OP: &str = "bertrand_check";
    if n < 2 {
        return Err(Error::range(OP, format!("n = {n} is below 2")));
    }
    sieve::check_upper(OP, 2 * n)?;
    let mut found = None;
    for_each_prime_batch(n + 1, 2 * n - 1, DEFAULT_SEGMENT_BYTES, |batch| {
        found = batch.first().copied();
        ControlFlow::Break(())
    });
    found.ok_or_else(|| Error::invariant(OP, format!("no prime in ({n}, {})", 2 * n)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EratosthenesBound {
    /// #{n ≤ x : no prime ≤ y divides n}
    pub rough_count: u64,
    /// x·Π_{p≤y}(1 − 1/p) + 2^{π(y)−1}
    pub bound: f64,
    /// π(x) − π(y)
    pub primes_above_y: u64,
}

pub fn eratosthenes_bound(x: u64, y: u64) -> Result<EratosthenesBound> {
    const OP: &str = "eratosthenes_bound";
    if y < 2 || y > x {
        return Err(Error::range(OP, format!("need 2 ≤ y ≤ x, got x={x} y={y}")));
    }
    if x > 100_000_000 {
        return Err(Error::range(OP, format!("x = {x} exceeds 10^8")));
    }
    let small = primes_between(2, y)?;
    if small.len() > 40 {
        return Err(Error::range(OP, format!("π(y) = {} exceeds 40", small.len())));
    }
    let mut rough = vec![true; x as usize + 1];
    rough[0] = false;
    for &p in &small {
        for m in (p as usize..=x as usize).step_by(p as usize) {
            rough[m] = false;
        }
    }
    let rough_count = rough.iter().filter(|&&r| r).count() as u64;
    let density: f64 = small.iter().map(|&p| 1.0 - 1.0 / p as f64).product();
    let bound = x as f64 * density + 2f64.powi(small.len() as i32 - 1);
    let pi_x = primes_between(2, x)?.len() as u64;
    let out = EratosthenesBound { rough_count, bound, primes_above_y: pi_x - small.len() as u64 };
    if out.rough_count as f64 > out.bound || out.primes_above_y > out.rough_count {
        return Err(Error::invariant(OP, format!("{out:?}")));
    }
    Ok(out)
}

/// Primes ≤ x with running θ, for the O(x) functional equations.
struct ThetaTable {
    primes: Vec<u64>,
    logs: Vec<f64>,
    prefix: Vec<f64>,
}

impl ThetaTable {
    fn new(x: u64) -> Result<Self> {
        let primes = primes_between(2, x)?;
        let logs: Vec<f64> = primes.iter().map(|&p| (p as f64).ln()).collect();
        let mut s = KahanSum::new();
        let mut prefix = Vec::with_capacity(primes.len() + 1);
        prefix.push(0.0);
        for &l in &logs {
            s.add(l);
            prefix.push(s.value());
        }
        Ok(Self { primes, logs, prefix })
    }

    fn theta(&self, t: f64) -> f64 {
        self.prefix[self.primes.partition_point(|&p| (p as f64) <= t)]
    }
}

fn check_functional_range(op: &'static str, x: u64) -> Result<()> {
    if !(10..=10_000_000).contains(&x) {
        return Err(Error::range(op, format!("x = {x} outside [10, 10^7]")));
    }
    Ok(())
}

/// (log x·θ(x) + Σ_{pq≤x} log p log q − 2x log x) / x, ordered pairs (p, q).
pub fn selberg_error(x: u64) -> Result<f64> {
    check_functional_range("selberg_error", x)?;
    let t = ThetaTable::new(x)?;
    let xf = x as f64;
    let lx = xf.ln();
    let mut pairs = KahanSum::new();
    for (&p, &lp) in t.primes.iter().zip(&t.logs) {
        if 2 * p > x {
            break;
        }
        pairs.add(lp * t.theta((x / p) as f64));
    }
    let lhs = lx * t.theta(xf) + pairs.value();
    Ok((lhs - 2.0 * xf * lx) / x as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalKind {
    /// E(t) = θ(t) − t
    ThetaError,
    /// M(t) = Σ_{n≤t} μ(n)
    Mertens,
}

/// (E(x) log x + Σ_{p≤x} E(x/p) log p) / x for E = θ(t) − t or E = M.
pub fn functional_error(x: u64, which: FunctionalKind) -> Result<f64> {
    check_functional_range("functional_error", x)?;
    let t = ThetaTable::new(x)?;
    let xf = x as f64;
    let mut s = KahanSum::new();
    match which {
        FunctionalKind::ThetaError => {
            let e = |u: f64| t.theta(u) - u;
            s.add(e(xf) * xf.ln());
            for (&p, &lp) in t.primes.iter().zip(&t.logs) {
                s.add(e(xf / p as f64) * lp);
            }
        }
        FunctionalKind::Mertens => {
            let mut m = Vec::with_capacity(x as usize + 1);
            m.push(0i64);
            let mut acc = 0i64;
            for v in mobius_range(1, x)? {
                acc += v as i64;
                m.push(acc);
            }
            s.add(m[x as usize] as f64 * xf.ln());
            for (&p, &lp) in t.primes.iter().zip(&t.logs) {
                s.add(m[(x / p) as usize] as f64 * lp);
            }
        }
    }
    Ok(s.value() / xf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small() {
        let r = binom_prime_bounds(5).unwrap();
        assert!((r.central_log - 252f64.ln()).abs() < 1e-12);
        assert!((r.prime_block_log - 7f64.ln()).abs() < 1e-12);
        assert_eq!(r.max_prime_power, 9);
        let r = binom_prime_bounds(1).unwrap();
        assert!((r.central_log - 2f64.ln()).abs() < 1e-15);
        assert!((r.prime_block_log - 2f64.ln()).abs() < 1e-15);
        assert!(binom_prime_bounds(0).is_err());
        assert!(binom_prime_bounds(10_000).unwrap().max_prime_power <= 20_000);
    }

    #[test]
    fn kummer_examples() {
        // 252 = 2²·3²·7
        assert_eq!(kummer_exponent(2, 5).unwrap(), 2);
        assert_eq!(kummer_exponent(3, 5).unwrap(), 2);
        assert_eq!(kummer_exponent(7, 5).unwrap(), 1);
        assert_eq!(kummer_exponent(11, 5).unwrap(), 0);
        assert!(matches!(kummer_exponent(4, 5), Err(Error::Argument { .. })));
    }

    #[test]
    fn factorial_valuation_examples() {
        assert_eq!(factorial_valuation(2, 10).unwrap(), 8);
        assert_eq!(factorial_valuation(11, 10).unwrap(), 0);
        assert_eq!(factorial_valuation(3, 9).unwrap(), 4);
        assert!(factorial_valuation(9, 9).is_err());
    }

    #[test]
    fn lcm_identity_small() {
        let e = lcm_identity_exact(10).unwrap();
        assert_eq!(e.lcm, BigUint::from(2520u32));
        assert_eq!(&e.numerator / &e.denominator, BigUint::from(2520u32));
        assert!(e.holds());
        let e = lcm_identity_exact(2).unwrap();
        assert_eq!(e.lcm, BigUint::from(2u32));
        assert!(e.holds());
        let c = lcm_identity_check(10_000).unwrap();
        assert_eq!(c.exact_match, None);
        assert!((c.lhs_log - c.rhs_log).abs() <= 1e-6 * c.lhs_log);
    }

    #[test]
    fn truncated_examples() {
        let t = truncated_identity(100, 2, &[37, 71]).unwrap();
        assert_eq!(t.exponents, vec![(37, 1), (71, 1)]);
        let t = truncated_identity(100, 1, &[97]).unwrap();
        assert_eq!(t.exponents, vec![(97, 1)]);
        assert!(matches!(truncated_identity(100, 10, &[]), Err(Error::Precondition { .. })));
        assert!(matches!(truncated_identity(100, 2, &[7]), Err(Error::Argument { .. })));
    }

    #[test]
    fn log_factorial_examples() {
        let r = log_factorial_estimate(2).unwrap();
        assert!((r.exact - 2f64.ln()).abs() < 1e-15);
        assert!((r.estimate - (2.0 * (2f64.ln() - 1.0) + 1.0)).abs() < 1e-15);
        let r = log_factorial_estimate(10).unwrap();
        assert!((r.exact - 3_628_800f64.ln()).abs() < 1e-12);
        assert!((r.exact - 15.104).abs() < 1e-3);
        assert!(log_factorial_estimate(1_000_000).unwrap().gap().abs() <= 1e6f64.ln());
    }

    #[test]
    fn bertrand_examples() {
        assert_eq!(bertrand_check(2).unwrap(), 3);
        assert_eq!(bertrand_check(10).unwrap(), 11);
        let p = bertrand_check(1_000_000).unwrap();
        assert!(p > 1_000_000 && p < 2_000_000);
        assert!(bertrand_check(1).is_err());
    }

    #[test]
    fn eratosthenes_examples() {
        let r = eratosthenes_bound(100, 2).unwrap();
        assert_eq!(r.rough_count, 50);
        assert_eq!(r.bound, 51.0);
        // direct enumeration oracle
        let oracle = (1..=100u64).filter(|n| n % 2 != 0 && n % 3 != 0 && n % 5 != 0).count() as u64;
        let r = eratosthenes_bound(100, 5).unwrap();
        assert_eq!(r.rough_count, oracle);
        assert!((r.bound - (100.0 * 0.5 * (2.0 / 3.0) * 0.8 + 4.0)).abs() < 1e-12);
        assert!(eratosthenes_bound(1_000_000, 30).is_ok());
        assert!(eratosthenes_bound(10, 20).is_err());
        assert!(eratosthenes_bound(10_000, 200).is_err());
    }

    #[test]
    fn functional_small_x_is_finite() {
        assert!(selberg_error(10).unwrap().is_finite());
        assert!(functional_error(10, FunctionalKind::Mertens).unwrap().is_finite());
        assert!(functional_error(10, FunctionalKind::ThetaError).unwrap().is_finite());
        assert!(selberg_error(9).is_err());
    }

    #[test]
    fn selberg_matches_literal_double_sum() {
        let x = 3000u64;
        let primes = primes_between(2, x).unwrap();
        let mut lhs = 0.0;
        for &p in &primes {
            lhs += (x as f64).ln() * (p as f64).ln();
            for &q in &primes {
                if p * q <= x {
                    lhs += (p as f64).ln() * (q as f64).ln();
                }
            }
        }
        let want = (lhs - 2.0 * x as f64 * (x as f64).ln()) / x as f64;
        assert!((selberg_error(x).unwrap() - want).abs() < 1e-9);
    }
}
