//! Multiplicative functions given by their values at prime powers, partial
//! mean values, the distance 𝔻(f, g; x), the scalar inequality behind its
//! triangle inequality, and the Halász correspondence
//! |F(σ+it)| ≍ log x · exp(−𝔻(f, n^{it}; x)²) at σ = 1 + 1/log x.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::progressions::DirichletCharacter;
use crate::quad;
use crate::sieve::{self, for_each_prime_batch, DEFAULT_SEGMENT_BYTES};
use crate::sum::{ComplexSum, KahanSum};
use crate::zeta::{self, ComplexPoint};

/// (p, k) ↦ f(p^k).
pub type PrimePowerRule = Arc<dyn Fn(u64, u32) -> Complex64 + Send + Sync>;

/// Slack allowed on |f(p^k)| ≤ 1 for user-supplied rules.
const DISK_SLACK: f64 = 1e-12;

#[derive(Clone)]
enum Kind {
    One,
    Mobius,
    Nit(f64),
    Character(DirichletCharacter),
    DivisorCount,
    DivisorSum,
    Custom { rule: PrimePowerRule, bounded: bool },
}

/// A multiplicative function, f(1) = 1, fixed by its prime-power values.
#[derive(Clone)]
pub struct MultiplicativeFunction {
    name: String,
    kind: Kind,
}

impl fmt::Debug for MultiplicativeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplicativeFunction").field("name", &self.name).field("bounded", &self.is_bounded()).finish()
    }
}

impl MultiplicativeFunction {
    pub fn one() -> Self {
        Self { name: "1".into(), kind: Kind::One }
    }

    pub fn mobius() -> Self {
        Self { name: "mu".into(), kind: Kind::Mobius }
    }

    /// n ↦ n^{it}.
    pub fn nit(t: f64) -> Self {
        Self { name: format!("n^({t}i)"), kind: Kind::Nit(t) }
    }

    pub fn character(chi: DirichletCharacter) -> Self {
        Self { name: format!("chi[{}]#{}", chi.modulus(), chi.index()), kind: Kind::Character(chi) }
    }

    /// τ(n), unbounded.
    pub fn divisor_count() -> Self {
        Self { name: "tau".into(), kind: Kind::DivisorCount }
    }

    /// σ(n), unbounded.
    pub fn divisor_sum() -> Self {
        Self { name: "sigma".into(), kind: Kind::DivisorSum }
    }

    /// A disk-valued function from a prime-power rule. Values outside the
    /// closed unit disk are reported as domain errors when met.
    pub fn custom<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(u64, u32) -> Complex64 + Send + Sync + 'static,
    {
        Self { name: name.into(), kind: Kind::Custom { rule: Arc::new(rule), bounded: true } }
    }

    /// A function with no bound on its values; excluded from distances.
    pub fn custom_unbounded<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(u64, u32) -> Complex64 + Send + Sync + 'static,
    {
        Self { name: name.into(), kind: Kind::Custom { rule: Arc::new(rule), bounded: false } }
    }

    /// Completely multiplicative with f(p) = e^{iθ_p}, θ_p drawn from a hash of
    /// (seed, p). Same seed, same function.
    pub fn random_unimodular(seed: u64) -> Self {
        Self::custom(format!("random#{seed}"), move |p, k| {
            let theta = std::f64::consts::TAU * unit_hash(seed, p);
            Complex64::from_polar(1.0, theta * k as f64)
        })
    }

    /// n ↦ f(n)², again multiplicative.
    pub fn squared(&self) -> Self {
        match &self.kind {
            Kind::One => Self::one(),
            Kind::Nit(t) => Self { name: format!("({})^2", self.name), kind: Kind::Nit(2.0 * t) },
            _ => {
                let base = self.clone();
                let rule = move |p: u64, k: u32| {
                    let v = base.raw_value(p, k);
                    v * v
                };
                let kind = Kind::Custom { rule: Arc::new(rule), bounded: self.is_bounded() };
                Self { name: format!("({})^2", self.name), kind }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Whether every value lies in the closed unit disk.
    pub fn is_bounded(&self) -> bool {
        match &self.kind {
            Kind::DivisorCount | Kind::DivisorSum => false,
            Kind::Custom { bounded, .. } => *bounded,
            _ => true,
        }
    }

    fn raw_value(&self, p: u64, k: u32) -> Complex64 {
        match &self.kind {
            Kind::One => Complex64::new(1.0, 0.0),
            Kind::Mobius => Complex64::new(if k == 1 { -1.0 } else { 0.0 }, 0.0),
            Kind::Nit(t) => Complex64::from_polar(1.0, t * k as f64 * (p as f64).ln()),
            Kind::Character(chi) => {
                let v = chi.value(p);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..k {
                    acc *= v;
                }
                acc
            }
            Kind::DivisorCount => Complex64::new(f64::from(k) + 1.0, 0.0),
            Kind::DivisorSum => {
                let pf = p as f64;
                Complex64::new((pf.powi(k as i32 + 1) - 1.0) / (pf - 1.0), 0.0)
            }
            Kind::Custom { rule, .. } => rule(p, k),
        }
    }

    /// f(p^k), with k ≥ 1.
    pub fn prime_power_value(&self, p: u64, k: u32) -> Result<Complex64> {
        let v = self.raw_value(p, k);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::domain("prime_power_value", format!("{}({p}^{k}) is not finite", self.name)));
        }
        if self.is_bounded() && v.norm() > 1.0 + DISK_SLACK {
            return Err(Error::domain("prime_power_value", format!("|{}({p}^{k})| = {} exceeds 1", self.name, v.norm())));
        }
        Ok(v)
    }
}

/// splitmix64 finalizer of (seed, p), scaled to [0, 1).
fn unit_hash(seed: u64, p: u64) -> f64 {
    let mut z = seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

/// f(n) as the product of f(p^k) over the factorization of n.
pub fn mf_eval(f: &MultiplicativeFunction, n: u64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::range("mf_eval", "n must be positive"));
    }
    match &f.kind {
        Kind::One => return Ok(Complex64::new(1.0, 0.0)),
        Kind::Nit(t) => return Ok(Complex64::from_polar(1.0, t * (n as f64).ln())),
        Kind::Character(chi) => return Ok(chi.value(n)),
        _ => {}
    }
    let fac = sieve::factorize(n)?;
    let mut acc = Complex64::new(1.0, 0.0);
    for &(p, k) in fac.factors() {
        acc *= f.prime_power_value(p, k)?;
    }
    Ok(acc)
}

/// Largest N accepted by [`mean_value`].
pub const MEAN_VALUE_MAX: u64 = 100_000_000;

/// (1/N) Σ_{n≤N} f(n).
pub fn mean_value(f: &MultiplicativeFunction, n_max: u64) -> Result<Complex64> {
    const OP: &str = "mean_value";
    if n_max == 0 || n_max > MEAN_VALUE_MAX {
        return Err(Error::range(OP, format!("N = {n_max} outside [1, {MEAN_VALUE_MAX}]")));
    }
    let mut acc = ComplexSum::new();
    match &f.kind {
        Kind::One => return Ok(Complex64::new(1.0, 0.0)),
        Kind::Mobius => {
            let mut m: i64 = 0;
            sieve::for_each_mobius_block(1, n_max, DEFAULT_SEGMENT_BYTES, |_, mu| {
                m += mu.iter().map(|&v| i64::from(v)).sum::<i64>();
                ControlFlow::Continue(())
            });
            return Ok(Complex64::new(m as f64 / n_max as f64, 0.0));
        }
        Kind::Nit(t) => {
            for n in 1..=n_max {
                acc.add(Complex64::from_polar(1.0, t * (n as f64).ln()));
            }
        }
        Kind::Character(chi) => {
            for n in 1..=n_max {
                acc.add(chi.value(n));
            }
        }
        _ => {
            for v in values_by_least_factor(f, n_max)? {
                acc.add(v);
            }
        }
    }
    Ok(acc.value() / n_max as f64)
}

/// f(1..=N) through a least-prime-factor table: f(n) = f(p^k)·f(n/p^k).
fn values_by_least_factor(f: &MultiplicativeFunction, n_max: u64) -> Result<Vec<Complex64>> {
    let n = n_max as usize;
    let mut lpf = vec![0u32; n + 1];
    for i in 2..=n {
        if lpf[i] == 0 {
            let mut j = i;
            while j <= n {
                if lpf[j] == 0 {
                    lpf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let mut vals = vec![Complex64::new(0.0, 0.0); n + 1];
    if n >= 1 {
        vals[1] = Complex64::new(1.0, 0.0);
    }
    for i in 2..=n {
        let p = lpf[i] as usize;
        let mut rest = i / p;
        let mut k = 1u32;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        vals[i] = f.prime_power_value(p as u64, k)? * vals[rest];
    }
    vals.remove(0);
    Ok(vals)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NitMean {
    pub computed: Complex64,
    pub predicted: Complex64,
    pub gap: f64,
    /// 5(1 + |t|)/N
    pub bound: f64,
}

/// (1/N) Σ_{n≤N} n^{it} against N^{it}/(1+it).
pub fn nit_mean_check(t: f64, n_max: u64) -> Result<NitMean> {
    if n_max < 10 {
        return Err(Error::range("nit_mean_check", format!("N = {n_max} is below 10")));
    }
    let computed = mean_value(&MultiplicativeFunction::nit(t), n_max)?;
    let nf = n_max as f64;
    let predicted = Complex64::from_polar(1.0, t * nf.ln()) / Complex64::new(1.0, t);
    Ok(NitMean { computed, predicted, gap: (computed - predicted).norm(), bound: 5.0 * (1.0 + t.abs()) / nf })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PretentiousDistance {
    pub f: String,
    pub g: String,
    pub x: u64,
    pub value: f64,
    /// Σ_{p≤x} (1 − Re f(p)ḡ(p))/p
    pub value_sq: f64,
}

fn require_bounded(op: &'static str, f: &MultiplicativeFunction) -> Result<()> {
    if f.is_bounded() {
        Ok(())
    } else {
        Err(Error::argument(op, format!("{} is not bounded by 1", f.name)))
    }
}

/// 𝔻(f, g; x).
pub fn distance(f: &MultiplicativeFunction, g: &MultiplicativeFunction, x: u64) -> Result<PretentiousDistance> {
    const OP: &str = "distance";
    require_bounded(OP, f)?;
    require_bounded(OP, g)?;
    if x < 2 {
        return Err(Error::range(OP, format!("x = {x} is below 2")));
    }
    sieve::check_upper(OP, x)?;
    let mut acc = KahanSum::new();
    let mut failure = None;
    for_each_prime_batch(2, x, DEFAULT_SEGMENT_BYTES, |batch| {
        for &p in batch {
            match (f.prime_power_value(p, 1), g.prime_power_value(p, 1)) {
                (Ok(a), Ok(b)) => acc.add((1.0 - (a * b.conj()).re) / p as f64),
                (Err(e), _) | (_, Err(e)) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    });
    if let Some(e) = failure {
        return Err(e);
    }
    // each term is ≥ 0 exactly; only rounding can push the sum below zero
    let value_sq = acc.value().max(0.0);
    Ok(PretentiousDistance { f: f.name.clone(), g: g.name.clone(), x, value: value_sq.sqrt(), value_sq })
}

fn in_disk(op: &'static str, w: Complex64) -> Result<()> {
    if !(w.norm() <= 1.0 + DISK_SLACK) {
        return Err(Error::argument(op, format!("{w} lies outside the closed unit disk")));
    }
    Ok(())
}

/// η(w, y) = √(1 − Re(w ȳ)).
pub fn eta(w: Complex64, y: Complex64) -> Result<f64> {
    in_disk("eta", w)?;
    in_disk("eta", y)?;
    Ok((1.0 - (w * y.conj()).re).max(0.0).sqrt())
}

/// η(w, y) ≤ η(w, z) + η(z, y), up to 10⁻¹².
pub fn eta_triangle_check(w: Complex64, y: Complex64, z: Complex64) -> Result<bool> {
    Ok(eta(w, y)? <= eta(w, z)? + eta(z, y)? + 1e-12)
}

/// The intermediate quantities of the standard proof of the η inequality.
///
/// With r = |z|, write w z̄ = r(a + bi) and z ȳ = r(c + di); then
/// w ȳ = (a + bi)(c + di), |a|,|c| ≤ 1 and b² ≤ 1 − a², d² ≤ 1 − c².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaProof {
    pub r: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl EtaProof {
    /// None when z = 0, where the inequality reads η(w, y) ≤ 2.
    pub fn new(w: Complex64, y: Complex64, z: Complex64) -> Result<Option<Self>> {
        for v in [w, y, z] {
            in_disk("EtaProof::new", v)?;
        }
        let r = z.norm();
        if r == 0.0 {
            return Ok(None);
        }
        let u = w * z.conj() / r;
        let v = z * y.conj() / r;
        Ok(Some(Self { r, a: u.re, b: u.im, c: v.re, d: v.im }))
    }

    /// The chain 2√(1−ra)√(1−rc) ≥ √(1−r²a²)√(1−r²c²) ≥ √(1−a²)√(1−c²) ≥ bd,
    /// each link with slack `tol`.
    pub fn cross_term_links(&self, tol: f64) -> [bool; 3] {
        let Self { r, a, b, c, d } = *self;
        let s = |v: f64| v.max(0.0).sqrt();
        let l0 = 2.0 * s(1.0 - r * a) * s(1.0 - r * c);
        let l1 = s(1.0 - r * r * a * a) * s(1.0 - r * r * c * c);
        let l2 = s(1.0 - a * a) * s(1.0 - c * c);
        [l0 + tol >= l1, l1 + tol >= l2, l2 + tol >= b * d]
    }

    /// (1 − ra) + (1 − rc) ≥ 1 − ac.
    pub fn linear_link(&self, tol: f64) -> bool {
        let Self { r, a, c, .. } = *self;
        (1.0 - r * a) + (1.0 - r * c) + tol >= 1.0 - a * c
    }

    /// (√(1−ra) + √(1−rc))² ≥ 1 − (ac − bd) = η(w, y)².
    pub fn conclusion(&self, tol: f64) -> bool {
        let Self { r, a, b, c, d } = *self;
        let lhs = ((1.0 - r * a).max(0.0).sqrt() + (1.0 - r * c).max(0.0).sqrt()).powi(2);
        lhs + tol >= 1.0 - (a * c - b * d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalaszRatio {
    pub sigma: f64,
    /// |F(σ+it)|
    pub series_mag: f64,
    /// log x · exp(−𝔻(f, n^{it}; x)²)
    pub pretentious_mag: f64,
    pub ratio: f64,
    /// |F − Σ_{n≤x⁴} f(n) n^{−s}| ≤ x^{4(1−σ)}/(σ−1) = e^{−4} log x
    pub cutoff_tail: f64,
    /// error bound on the evaluation of F itself
    pub evaluation_error: f64,
}

const SERIES_TERMS: u64 = 1_000_000;
/// Euler products for rules without a closed form run over p ≤ this.
pub const EULER_PRIME_CUTOFF: u64 = 10_000_000;

/// F(s) = Σ f(n) n^{−s} for Re(s) > 1 together with an error bound.
pub fn dirichlet_series(f: &MultiplicativeFunction, s: ComplexPoint) -> Result<(Complex64, f64)> {
    const OP: &str = "dirichlet_series";
    require_bounded(OP, f)?;
    if !(s.sigma > 1.0) {
        return Err(Error::domain(OP, format!("Re(s) = {} must exceed 1", s.sigma)));
    }
    match &f.kind {
        Kind::One => {
            let z = zeta::zeta_eval(s, SERIES_TERMS)?;
            Ok((z.value, z.tail_bound))
        }
        Kind::Mobius => {
            let z = zeta::zeta_eval(s, SERIES_TERMS)?;
            let inv = 1.0 / z.value;
            let err = z.tail_bound / (z.value.norm() * (z.value.norm() - z.tail_bound).max(f64::MIN_POSITIVE));
            Ok((inv, err))
        }
        Kind::Nit(a) => {
            let z = zeta::zeta_eval(ComplexPoint::new(s.sigma, s.t - a), SERIES_TERMS)?;
            Ok((z.value, z.tail_bound))
        }
        Kind::Character(chi) if chi.is_principal() => {
            let z = zeta::zeta_eval(s, SERIES_TERMS)?;
            let w = s.to_complex();
            let mut factor = Complex64::new(1.0, 0.0);
            let q = chi.modulus();
            if q > 1 {
                for &(p, _) in sieve::factorize(q)?.factors() {
                    factor *= Complex64::new(1.0, 0.0) - (-w * (p as f64).ln()).exp();
                }
            }
            Ok((z.value * factor, z.tail_bound * factor.norm()))
        }
        Kind::Character(chi) => {
            let w = s.to_complex();
            let mut acc = ComplexSum::new();
            for n in 1..=SERIES_TERMS {
                let v = chi.value(n);
                if v.re != 0.0 || v.im != 0.0 {
                    acc.add(v * (-w * (n as f64).ln()).exp());
                }
            }
            // |Σ_{n≤M} χ(n)| ≤ q, then partial summation
            let q = chi.modulus() as f64;
            let nf = SERIES_TERMS as f64;
            Ok((acc.value(), q * nf.powf(-s.sigma) * (1.0 + w.norm() / s.sigma)))
        }
        _ => euler_product(f, s),
    }
}

/// Π_{p≤P} Σ_k f(p^k) p^{−ks}. The omitted primes change log F by at most
/// Σ_{p>P} p^{−σ}/(1 − p^{−σ}), bounded via ∫_P^∞ du/(u^σ log u) = E₁((σ−1) log P).
fn euler_product(f: &MultiplicativeFunction, s: ComplexPoint) -> Result<(Complex64, f64)> {
    const OP: &str = "euler_product";
    let w = s.to_complex();
    let mut log_f = ComplexSum::new();
    let mut failure = None;
    for_each_prime_batch(2, EULER_PRIME_CUTOFF, DEFAULT_SEGMENT_BYTES, |batch| {
        for &p in batch {
            let base = (-w * (p as f64).ln()).exp();
            let mut local = Complex64::new(1.0, 0.0);
            let mut pk = base;
            let mut k = 1u32;
            while pk.norm() > 1e-18 && k <= 64 {
                match f.prime_power_value(p, k) {
                    Ok(v) => local += v * pk,
                    Err(e) => {
                        failure = Some(e);
                        return ControlFlow::Break(());
                    }
                }
                pk *= base;
                k += 1;
            }
            if local.norm() == 0.0 {
                failure = Some(Error::domain(OP, format!("local factor at p = {p} vanishes")));
                return ControlFlow::Break(());
            }
            log_f.add(local.ln());
        }
        ControlFlow::Continue(())
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let value = log_f.value().exp();
    let lp = (EULER_PRIME_CUTOFF as f64).ln();
    let delta = s.sigma - 1.0;
    let tail = quad::integrate(|u: f64| (-delta * u).exp() / u, lp, lp + 60.0 / delta, 1e-12, 1e-10).value;
    // |log(1 + ε)| ≤ 2|ε| for |ε| ≤ 1/2 covers the local factors beyond the first term
    let log_err = 2.0 * tail * 1.01;
    Ok((value, value.norm() * log_err.exp_m1()))
}

/// |F(σ+it)| against log x · exp(−𝔻(f, n^{it}; x)²), σ = 1 + 1/log x.
pub fn halasz_ratio(f: &MultiplicativeFunction, x: u64, t: f64) -> Result<HalaszRatio> {
    const OP: &str = "halasz_ratio";
    require_bounded(OP, f)?;
    if x < 100 {
        return Err(Error::range(OP, format!("x = {x} is below 100")));
    }
    if !(t.abs() <= 100.0) {
        return Err(Error::range(OP, format!("|t| = {} exceeds 100", t.abs())));
    }
    let lx = (x as f64).ln();
    let sigma = 1.0 + 1.0 / lx;
    let (value, evaluation_error) = dirichlet_series(f, ComplexPoint::new(sigma, t))?;
    let d = distance(f, &MultiplicativeFunction::nit(t), x)?;
    let pretentious_mag = lx * (-d.value_sq).exp();
    let series_mag = value.norm();
    Ok(HalaszRatio {
        sigma,
        series_mag,
        pretentious_mag,
        ratio: series_mag / pretentious_mag,
        cutoff_tail: (-4.0f64).exp() * lx,
        evaluation_error,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceMinimum {
    pub t_min: f64,
    pub d_min: f64,
}

/// Minimizes 𝔻(f, n^{it}; x) over the grid t = k·step, |t| ≤ T; ties go to
/// the smallest t.
pub fn distance_min_t(f: &MultiplicativeFunction, x: u64, t_max: f64, step: f64) -> Result<DistanceMinimum> {
    const OP: &str = "distance_min_t";
    require_bounded(OP, f)?;
    if !(step > 0.0) || !(t_max >= step) {
        return Err(Error::argument(OP, format!("need step > 0 and T ≥ step, got T={t_max} step={step}")));
    }
    if x < 2 {
        return Err(Error::range(OP, format!("x = {x} is below 2")));
    }
    let kmax = (t_max / step + 1e-9).floor() as i64;
    if kmax > 1_000_000 {
        return Err(Error::range(OP, format!("{} grid points is too many", 2 * kmax + 1)));
    }
    let primes = sieve::primes_between(2, x)?;
    let fp: Vec<Complex64> = primes.iter().map(|&p| f.prime_power_value(p, 1)).collect::<Result<_>>()?;
    let logs: Vec<f64> = primes.iter().map(|&p| (p as f64).ln()).collect();
    let mut best = DistanceMinimum { t_min: f64::NAN, d_min: f64::INFINITY };
    for k in -kmax..=kmax {
        let t = k as f64 * step;
        let mut acc = KahanSum::new();
        for ((&p, &v), &lp) in primes.iter().zip(&fp).zip(&logs) {
            // Re f(p)·p^{−it}
            let (sn, cs) = (t * lp).sin_cos();
            acc.add((1.0 - (v.re * cs + v.im * sn)) / p as f64);
        }
        let d = acc.value().max(0.0).sqrt();
        if d < best.d_min {
            best = DistanceMinimum { t_min: t, d_min: d };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::progressions::CharacterTable;

    fn chi4() -> DirichletCharacter {
        let table = CharacterTable::new(4).unwrap();
        let chi = table.characters().find(|c| !c.is_principal()).unwrap();
        chi
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(mf_eval(&MultiplicativeFunction::mobius(), 30).unwrap(), Complex64::new(-1.0, 0.0));
        let v = mf_eval(&MultiplicativeFunction::nit(1.0), 10).unwrap();
        assert!((v - Complex64::new(10f64.ln().cos(), 10f64.ln().sin())).norm() < 1e-15);
        let f = MultiplicativeFunction::character(chi4());
        assert_eq!(mf_eval(&f, 6).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(mf_eval(&MultiplicativeFunction::divisor_count(), 12).unwrap().re, 6.0);
        assert_eq!(mf_eval(&MultiplicativeFunction::divisor_sum(), 12).unwrap().re, 28.0);
        assert!(mf_eval(&MultiplicativeFunction::one(), 0).is_err());
    }

    #[test]
    fn custom_rule_leaving_the_disk_is_rejected() {
        let f = MultiplicativeFunction::custom("two", |_, _| Complex64::new(2.0, 0.0));
        assert!(matches!(mf_eval(&f, 3), Err(Error::Domain { .. })));
    }

    #[test]
    fn least_factor_table_agrees_with_factorization() {
        let f = MultiplicativeFunction::random_unimodular(7).squared();
        let vals = values_by_least_factor(&f, 2000).unwrap();
        for n in 1..=2000u64 {
            assert!((vals[n as usize - 1] - mf_eval(&f, n).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn mean_values() {
        assert_eq!(mean_value(&MultiplicativeFunction::one(), 12345).unwrap(), Complex64::new(1.0, 0.0));
        // M(1000) = 2
        assert!((mean_value(&MultiplicativeFunction::mobius(), 1000).unwrap().re - 0.002).abs() < 1e-15);
        let tau = mean_value(&MultiplicativeFunction::divisor_count(), 10).unwrap().re;
        assert!((tau - 2.7).abs() < 1e-12);
    }

    #[test]
    fn nit_mean_at_zero_and_conjugation() {
        let z = nit_mean_check(0.0, 1000).unwrap();
        assert!(z.gap <= 1e-3);
        let a = nit_mean_check(1.0, 10_000).unwrap();
        let b = nit_mean_check(-1.0, 10_000).unwrap();
        assert!(a.gap <= 0.05);
        assert!((a.computed - b.computed.conj()).norm() < 1e-12);
        assert!(nit_mean_check(1.0, 9).is_err());
    }

    #[test]
    fn distance_examples() {
        let d = distance(&MultiplicativeFunction::mobius(), &MultiplicativeFunction::one(), 10).unwrap();
        let expect = 2.0 * (0.5 + 1.0 / 3.0 + 0.2 + 1.0 / 7.0);
        assert!((d.value_sq - expect).abs() < 1e-14);
        let mu = MultiplicativeFunction::mobius();
        assert_eq!(distance(&mu, &mu, 10_000).unwrap().value, 0.0);
        let tau = MultiplicativeFunction::divisor_count();
        assert!(matches!(distance(&tau, &mu, 100), Err(Error::Argument { .. })));
    }

    #[test]
    fn eta_examples() {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(eta(one, one).unwrap(), 0.0);
        assert!((eta(one, -one).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!((eta(one, i).unwrap() - 1.0).abs() < 1e-15);
        assert!(eta_triangle_check(one, -one, i).unwrap());
        assert!(eta(Complex64::new(1.0, 1.0), one).is_err());
    }

    #[test]
    fn halasz_rejects_bad_input() {
        assert!(halasz_ratio(&MultiplicativeFunction::divisor_count(), 1000, 0.0).is_err());
        assert!(halasz_ratio(&MultiplicativeFunction::one(), 99, 0.0).is_err());
        assert!(halasz_ratio(&MultiplicativeFunction::one(), 1000, 101.0).is_err());
    }

    #[test]
    fn character_series_at_two() {
        // L(2, χ₄) is Catalan's constant
        let f = MultiplicativeFunction::character(chi4());
        let (v, err) = dirichlet_series(&f, ComplexPoint::real(2.0)).unwrap();
        assert!((v.re - 0.915_965_594_177_219).abs() <= err + 1e-12);
    }

    #[test]
    fn euler_product_matches_closed_form() {
        // μ² has F(s) = ζ(s)/ζ(2s); at s = 2 that is 15/π²
        let f = MultiplicativeFunction::mobius().squared();
        let (v, err) = dirichlet_series(&f, ComplexPoint::real(2.0)).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((v.re - 15.0 / pi2).abs() <= err + 1e-9, "{v} {err}");
    }

    #[test]
    fn grid_minimum_ties_go_left() {
        let m = distance_min_t(&MultiplicativeFunction::one(), 1000, 1.0, 0.25).unwrap();
        assert_eq!(m.t_min, 0.0);
        assert!(distance_min_t(&MultiplicativeFunction::one(), 1000, 0.1, 0.25).is_err());
    }
}
