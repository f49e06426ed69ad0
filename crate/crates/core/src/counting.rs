//! Prime-counting functions and the classical predictions for them.

use std::ops::ControlFlow;

use num_integer::Roots;

use crate::error::{Error, Result};
use crate::quad;
use crate::sieve::{self, check_upper, for_each_arith_block, for_each_prime_batch, DEFAULT_SEGMENT_BYTES};
use crate::sum::KahanSum;

/// Legendre's constant in x/(log x − A).
pub const LEGENDRE_A: f64 = 1.08366;

/// Prime counts available to Gauss for his comparison with Legendre's
/// formula. They differ from the true counts; `historical_legendre_rows`
/// reports both.
pub const HISTORICAL_COUNTS: [(u64, u64); 6] = [
    (500_000, 41_556),
    (1_000_000, 78_501),
    (1_500_000, 114_112),
    (2_000_000, 148_883),
    (2_500_000, 183_016),
    (3_000_000, 216_745),
];

/// π, θ, ψ, ψ* and M at one point, all from the same sieve walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountSnapshot {
    pub x: u64,
    pub pi: u64,
    pub theta: f64,
    pub psi: f64,
    pub psi_star: f64,
    pub mertens: i64,
}

/// Snapshots at every requested point, computed in one pass up to the largest.
pub fn count_snapshots(xs: &[u64]) -> Result<Vec<CountSnapshot>> {
    const OP: &str = "count_snapshot";
    if let Some(&bad) = xs.iter().find(|&&x| x < 2) {
        return Err(Error::range(OP, format!("x = {bad} is below 2")));
    }
    let Some(&hi) = xs.iter().max() else {
        return Ok(Vec::new());
    };
    check_upper(OP, hi)?;
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by_key(|&i| xs[i]);

    let mut out = vec![None; xs.len()];
    let mut next = 0;
    let mut pi = 0u64;
    let mut theta = KahanSum::new();
    let mut mertens = 0i64;
    for_each_arith_block(1, hi, DEFAULT_SEGMENT_BYTES, |start, mu, prime| {
        for (i, (&m, &is_p)) in mu.iter().zip(prime).enumerate() {
            let n = start + i as u64;
            mertens += m as i64;
            if is_p {
                pi += 1;
                theta.add((n as f64).ln());
            }
            while next < order.len() && xs[order[next]] == n {
                out[order[next]] = Some((pi, theta.value(), mertens));
                next += 1;
            }
        }
        ControlFlow::Continue(())
    });

    let base = sieve::simple_sieve(hi.sqrt());
    Ok(xs
        .iter()
        .zip(out)
        .map(|(&x, found)| {
            let (pi, theta, mertens) = found.expect("every checkpoint lies on the walk");
            let psi = theta + prime_power_excess(x, &base);
            let psi_star = psi - 0.5 * sieve::mangoldt(x).unwrap_or_else(|_| mangoldt_by(&base, x));
            CountSnapshot { x, pi, theta, psi, psi_star, mertens }
        })
        .collect())
}

pub fn count_snapshot(x: u64) -> Result<CountSnapshot> {
    Ok(count_snapshots(&[x])?[0])
}

/// ψ(x) − θ(x): Σ log p over prime powers p^k ≤ x with k ≥ 2.
fn prime_power_excess(x: u64, base: &[u64]) -> f64 {
    let mut s = KahanSum::new();
    for &p in base {
        if p * p > x {
            break;
        }
        let lp = (p as f64).ln();
        let mut pk = p * p;
        loop {
            s.add(lp);
            match pk.checked_mul(p) {
                Some(v) if v <= x => pk = v,
                _ => break,
            }
        }
    }
    s.value()
}

fn mangoldt_by(base: &[u64], x: u64) -> f64 {
    for &p in base {
        if p * p > x {
            break;
        }
        if x % p == 0 {
            let mut m = x;
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
    }
    (x as f64).ln()
}

/// ψ*(x) for real x ≥ 1: ψ(⌊x⌋), less half of Λ(x) when x is an integer prime power.
pub fn psi_star(x: f64) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(Error::domain("psi_star", format!("x = {x} must be ≥ 1")));
    }
    let n = x.floor() as u64;
    if n < 2 {
        return Ok(0.0);
    }
    let snap = count_snapshot(n)?;
    Ok(if (n as f64) == x { snap.psi_star } else { snap.psi })
}

/// π(x) at each requested point, from one walk of the odd-only sieve.
pub fn prime_counts(xs: &[u64]) -> Result<Vec<u64>> {
    let Some(&hi) = xs.iter().max() else {
        return Ok(Vec::new());
    };
    check_upper("prime_counts", hi)?;
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by_key(|&i| xs[i]);
    let mut counts = vec![0u64; xs.len()];
    let mut next = 0;
    let mut pi = 0u64;
    for_each_prime_batch(2, hi, DEFAULT_SEGMENT_BYTES, |batch| {
        for &p in batch {
            while next < order.len() && xs[order[next]] < p {
                counts[order[next]] = pi;
                next += 1;
            }
            pi += 1;
        }
        ControlFlow::Continue(())
    });
    for &i in &order[next..] {
        counts[i] = pi;
    }
    Ok(counts)
}

/// Principal value li(x) = PV ∫₀ˣ dt / log t.
///
/// With t = eᵘ the integral becomes PV ∫_{-∞}^{L} eᵘ/u du, L = log x. The
/// window (−L, L) around the pole is folded onto (0, L), where the two sides
/// combine to the smooth 2·sinh(u)/u, and what is left of the left half-line
/// is −E₁(L). Both pieces go through adaptive Gauss–Kronrod.
///
/// This is the convention under which round(li(x)) − π(x) gives the classical
/// overcounts; Gauss's ∫₂ˣ is smaller by li(2) ≈ 1.04516.
pub fn li(x: f64) -> Result<f64> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::domain("li", format!("x = {x} must be ≥ 2")));
    }
    let l = x.ln();
    let shi = quad::integrate(
        |u: f64| if u == 0.0 { 2.0 } else { 2.0 * u.sinh() / u },
        0.0,
        l,
        1e-9,
        1e-16,
    );
    // E₁(L) = ∫_L^∞ e^{-v}/v dv; the integrand is below 1e-30 past L + 70.
    let e1 = quad::integrate(|v: f64| (-v).exp() / v, l, l + 70.0, 1e-15, 1e-15);
    Ok(shi.value - e1.value)
}

/// Gauss's Li(x) = ∫₂ˣ dt / log t.
pub fn gauss_li(x: f64) -> Result<f64> {
    Ok(li(x)? - li(2.0)?)
}

/// Legendre's x / (log x − A).
pub fn legendre_approx(x: f64, a: f64) -> Result<f64> {
    let l = x.ln();
    if !(l > a) {
        return Err(Error::domain("legendre_approx", format!("log x = {l} must exceed A = {a}")));
    }
    Ok(x / (l - a))
}

/// Σ_{p≤N} (log p)/p.
pub fn mertens_logsum(n: u64) -> Result<f64> {
    Ok(mertens_logsums(&[n])?[0])
}

/// [`mertens_logsum`] at several points from one sieve walk.
pub fn mertens_logsums(ns: &[u64]) -> Result<Vec<f64>> {
    const OP: &str = "mertens_logsum";
    if let Some(&bad) = ns.iter().find(|&&n| n < 2) {
        return Err(Error::range(OP, format!("N = {bad} is below 2")));
    }
    let Some(&hi) = ns.iter().max() else {
        return Ok(Vec::new());
    };
    check_upper(OP, hi)?;
    let mut order: Vec<usize> = (0..ns.len()).collect();
    order.sort_by_key(|&i| ns[i]);
    let mut out = vec![0.0; ns.len()];
    let mut next = 0;
    let mut s = KahanSum::new();
    for_each_prime_batch(2, hi, DEFAULT_SEGMENT_BYTES, |batch| {
        for &p in batch {
            while next < order.len() && ns[order[next]] < p {
                out[order[next]] = s.value();
                next += 1;
            }
            let pf = p as f64;
            s.add(pf.ln() / pf);
        }
        ControlFlow::Continue(())
    });
    for &i in &order[next..] {
        out[i] = s.value();
    }
    Ok(out)
}

/// One row of the Gauss/Legendre comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub x: u64,
    pub pi: u64,
    /// round(li(x)) − π(x)
    pub li_overcount: i64,
    /// x/(log x − A) − π(x)
    pub legendre_error: f64,
}

impl ComparisonRow {
    pub const HEADER: [&'static str; 4] = ["x", "pi", "li_overcount", "legendre_error"];
}

pub fn comparison_table(xs: &[u64]) -> Result<Vec<ComparisonRow>> {
    if let Some(&bad) = xs.iter().find(|&&x| x < 3) {
        return Err(Error::range("comparison_table", format!("x = {bad} is below 3")));
    }
    let pis = prime_counts(xs)?;
    xs.iter()
        .zip(pis)
        .map(|(&x, pi)| {
            let xf = x as f64;
            Ok(ComparisonRow {
                x,
                pi,
                li_overcount: li(xf)?.round() as i64 - pi as i64,
                legendre_error: legendre_approx(xf, LEGENDRE_A)? - pi as f64,
            })
        })
        .collect()
}

/// Legendre's formula against Gauss's historical counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistoricalRow {
    pub x: u64,
    pub pi_historical: u64,
    pub pi_actual: u64,
    /// x/(log x − A) − historical π
    pub legendre_error: f64,
}

pub fn historical_legendre_rows() -> Result<Vec<HistoricalRow>> {
    let xs: Vec<u64> = HISTORICAL_COUNTS.iter().map(|&(x, _)| x).collect();
    let actual = prime_counts(&xs)?;
    HISTORICAL_COUNTS
        .iter()
        .zip(actual)
        .map(|(&(x, pi_historical), pi_actual)| {
            Ok(HistoricalRow {
                x,
                pi_historical,
                pi_actual,
                legendre_error: legendre_approx(x as f64, LEGENDRE_A)? - pi_historical as f64,
            })
        })
        .collect()
}
