//! The `ntdesk` command line: one subcommand per area of the library, each
//! printing a table in csv, markdown, or plain form.

pub mod chernac;
pub mod output;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ntdesk_core::pretentious::{self, MultiplicativeFunction};
use ntdesk_core::progressions::{self, CharacterKind, CharacterTable};
use ntdesk_core::zeta::{self, ComplexPoint};
use ntdesk_core::{counting, elementary, sieve};

pub use output::{Cell, Format, Table};

/// Where the bundled table of zeta zeros lives in a source checkout.
pub const DEFAULT_ZEROS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/zeros_10000.txt");

#[derive(Debug, Parser)]
#[command(name = "ntdesk", version, about = "Prime counting, zeta, and pretentious checks at desk scale")]
pub struct Cli {
    /// Output format; auto prints a single row as key=value and anything longer as csv
    #[arg(long, global = true, value_enum, default_value_t = Format::Auto)]
    pub format: Format,
    /// Table of zeta zero ordinates, one per line
    #[arg(long, global = true)]
    pub zeros: Option<PathBuf>,
    /// Upper limit for commands that sweep a range (accepts 1e9, 10^9)
    #[arg(long, global = true, value_parser = parse::count)]
    pub max: Option<u64>,
    /// Seed for sampled sweeps
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primes, Möbius values, von Mangoldt values and factorizations
    #[command(subcommand)]
    Sieve(SieveCmd),
    /// π, θ, ψ, ψ* and M at each x
    Count {
        #[arg(required = true, value_parser = parse::count)]
        xs: Vec<u64>,
    },
    /// π(x) against li(x) and Legendre's formula at powers of ten up to --max, or Legendre against the historical counts
    Tables {
        #[arg(long)]
        historical: bool,
        /// explicit points instead of powers of ten
        #[arg(long, value_delimiter = ',', value_parser = parse::count)]
        points: Vec<u64>,
    },
    /// Σ_{p≤N} log p / p against log N
    Mertens {
        #[arg(value_parser = parse::count)]
        ns: Vec<u64>,
        /// also sample this many N log-uniformly in [2, --max] using --seed
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Chebyshev-style bounds: the π(x) log x / x band and the binomial machinery
    #[command(subcommand)]
    Chebyshev(ChebyshevCmd),
    /// lcm(1..x) against the alternating factorial product, optionally truncated at N
    LcmIdentity(LcmArgs),
    /// (log x·θ(x) + Σ_{pq≤x} log p log q − 2x log x)/x
    Selberg {
        #[arg(required = true, value_parser = parse::count)]
        xs: Vec<u64>,
    },
    /// The θ-error or Mertens functional equation, divided by x
    Functional {
        #[arg(long, value_enum, default_value_t = Which::ThetaError)]
        which: Which,
        #[arg(required = true, value_parser = parse::count)]
        xs: Vec<u64>,
    },
    /// Multiplicative functions: values, means, and distances
    #[command(subcommand)]
    Distance(DistanceCmd),
    /// η(w, y) = √(1 − Re w ȳ), the triangle inequality through --via, or a seeded sweep
    Eta(EtaArgs),
    /// |F(σ+it)| against log x·exp(−𝔻(f, n^{it}; x)²) at σ = 1 + 1/log x
    Halasz {
        #[arg(value_parser = parse::function)]
        f: MultiplicativeFunction,
        #[arg(value_parser = parse::count)]
        x: u64,
        #[arg(default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
    },
    /// ζ(s), −ζ′/ζ(s), or the Euler product at s = σ + it
    Zeta(ZetaArgs),
    /// Truncated Perron integral of z^s/s (or z^s/s² with --log-kernel)
    Perron {
        z: f64,
        #[arg(long, default_value_t = 1.5)]
        sigma: f64,
        #[arg(long = "t-max", default_value_t = 400.0)]
        t_max: f64,
        #[arg(long)]
        log_kernel: bool,
    },
    /// x − Σ_{γ≤T} 2Re(x^ρ/ρ) − log 2π against ψ*(x)
    Explicit {
        #[arg(required = true)]
        xs: Vec<f64>,
        /// use the first this many zeros (default: all)
        #[arg(long)]
        count: Option<usize>,
        /// cut off at this ordinate instead
        #[arg(long = "t-max")]
        t_max: Option<f64>,
    },
    /// Ordered Goldbach representations by enumeration and by the circle identity
    Goldbach {
        #[arg(required = true, value_parser = parse::count)]
        ns: Vec<u64>,
    },
    /// |(ζ′/ζ + 1/(s−1))^{(k)}| against k!·2^k·(1+t)
    Prh {
        k: u32,
        sigma: f64,
        #[arg(default_value_t = 0.0)]
        t: f64,
        #[arg(long, default_value = "1e6", value_parser = parse::count)]
        terms: u64,
    },
    /// The Dirichlet characters mod q, as exponents k of e^{2πik/m}
    Chars { #[arg(value_parser = parse::count)] q: u64 },
    /// π(x; q, a), or every class when a is omitted
    PiAp {
        #[arg(value_parser = parse::count)]
        x: u64,
        #[arg(value_parser = parse::count)]
        q: u64,
        #[arg(allow_hyphen_values = true)]
        a: Option<i64>,
    },
    /// Smallest and largest class count when the mean first reaches the target
    Equidist {
        #[arg(value_parser = parse::count)]
        q: u64,
        #[arg(value_parser = parse::count)]
        target: u64,
    },
    /// Σ_{n≤N} χ(n)/n, or (1/N) Σ μ(n)χ(n) with --mu
    Lone {
        #[arg(value_parser = parse::count)]
        q: u64,
        index: usize,
        #[arg(value_parser = parse::count)]
        n: u64,
        #[arg(long)]
        mu: bool,
    },
    /// Least prime ≡ a (mod q), or for every reduced class
    LeastPrime {
        #[arg(value_parser = parse::count)]
        q: u64,
        #[arg(allow_hyphen_values = true)]
        a: Option<i64>,
    },
    /// A page of factorizations for [base, base + 1000), multiples of 2, 3, 5 omitted
    Chernac {
        #[arg(value_parser = parse::count)]
        base: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SieveCmd {
    /// Primes in [lo, hi]
    Primes {
        #[arg(value_parser = parse::count)]
        lo: u64,
        #[arg(value_parser = parse::count)]
        hi: u64,
    },
    /// μ(n) for n in [lo, hi]
    Mobius {
        #[arg(value_parser = parse::count)]
        lo: u64,
        #[arg(value_parser = parse::count)]
        hi: u64,
    },
    /// Λ(n)
    Mangoldt {
        #[arg(required = true, value_parser = parse::count)]
        ns: Vec<u64>,
    },
    /// Complete factorizations
    Factor {
        #[arg(required = true, value_parser = parse::count)]
        ns: Vec<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChebyshevCmd {
    /// π(x) log x / x in (log 2, log 4) and |θ(x) − x| ≤ √x log² x at powers of ten to --max (default 1e7)
    Band,
    /// Π_{n<p≤2n} p ≤ C(2n, n) ≤ 4^n and p^{e_p} ≤ 2n
    Binomial { #[arg(value_parser = parse::count)] n: u64 },
    /// Exponent of p in C(2n, n)
    Kummer {
        #[arg(value_parser = parse::count)]
        p: u64,
        #[arg(value_parser = parse::count)]
        n: u64,
    },
    /// Exponent of p in N!
    Valuation {
        #[arg(value_parser = parse::count)]
        p: u64,
        #[arg(value_parser = parse::count)]
        n: u64,
    },
    /// log N! against N(log N − 1) + 1
    LogFactorial { #[arg(value_parser = parse::count)] n: u64 },
    /// Least prime in (n, 2n)
    Bertrand { #[arg(value_parser = parse::count)] n: u64 },
    /// Integers ≤ x free of primes ≤ y against x·Π(1 − 1/p) + 2^{π(y)−1}
    Eratosthenes {
        #[arg(value_parser = parse::count)]
        x: u64,
        #[arg(value_parser = parse::count)]
        y: u64,
    },
}

#[derive(Debug, Args)]
pub struct LcmArgs {
    #[arg(value_parser = parse::count)]
    x: u64,
    /// truncate the product at N (needs x > N²) and report large-prime exponents
    #[arg(long, value_parser = parse::count)]
    truncate: Option<u64>,
    /// primes to report with --truncate (default: up to 50 seeded picks from [x/(N+1), x])
    #[arg(long, value_delimiter = ',', value_parser = parse::count)]
    primes: Vec<u64>,
    /// print the exact integers (x ≤ 200)
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Which {
    ThetaError,
    Mertens,
}

#[derive(Debug, Subcommand)]
pub enum DistanceCmd {
    /// f(n)
    Eval {
        #[arg(value_parser = parse::function)]
        f: MultiplicativeFunction,
        #[arg(required = true, value_parser = parse::count)]
        ns: Vec<u64>,
    },
    /// (1/N) Σ_{n≤N} f(n)
    Mean {
        #[arg(value_parser = parse::function)]
        f: MultiplicativeFunction,
        #[arg(value_parser = parse::count)]
        n: u64,
    },
    /// (1/N) Σ n^{it} against N^{it}/(1+it)
    NitMean {
        #[arg(allow_hyphen_values = true)]
        t: f64,
        #[arg(value_parser = parse::count)]
        n: u64,
    },
    /// 𝔻(f, g; x)
    Between {
        #[arg(value_parser = parse::function)]
        f: MultiplicativeFunction,
        #[arg(value_parser = parse::function)]
        g: MultiplicativeFunction,
        #[arg(value_parser = parse::count)]
        x: u64,
    },
    /// The grid minimizer of 𝔻(f, n^{it}; x) over |t| ≤ T
    MinT {
        #[arg(value_parser = parse::function)]
        f: MultiplicativeFunction,
        #[arg(value_parser = parse::count)]
        x: u64,
        #[arg(long = "t-max", default_value_t = 2.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
}

#[derive(Debug, Args)]
pub struct EtaArgs {
    #[arg(value_parser = parse::complex, allow_hyphen_values = true, required_unless_present = "sweep")]
    w: Option<Complex64>,
    #[arg(value_parser = parse::complex, allow_hyphen_values = true, required_unless_present = "sweep")]
    y: Option<Complex64>,
    /// check η(w, y) ≤ η(w, z) + η(z, y)
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    via: Option<Complex64>,
    /// check the triangle inequality on this many seeded random disk triples
    #[arg(long, conflicts_with_all = ["w", "y", "via"])]
    sweep: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    sigma: f64,
    #[arg(default_value_t = 0.0, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value = "1e6", value_parser = parse::count)]
    terms: u64,
    /// −ζ′/ζ(s) = Σ Λ(n) n^{−s} instead
    #[arg(long, conflicts_with = "euler")]
    log_deriv: bool,
    /// compare with the Euler product over p ≤ this cutoff
    #[arg(long, value_parser = parse::count)]
    euler: Option<u64>,
}

/// Why a command did not produce output.
#[derive(Debug)]
enum Failure {
    Library(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Library(e.to_string())
    }
}

type Outcome = Result<Table, Failure>;

fn row(cells: Vec<Cell>) -> Vec<Cell> {
    cells
}

macro_rules! cells {
    ($($v:expr),* $(,)?) => { row(vec![$(Cell::from($v)),*]) };
}

/// Parses `args` (program name first) and runs the command, writing results to
/// `out` and diagnostics to `err`. Returns the process exit code: 0 on
/// success, 2 for usage errors, 1 when the library rejects the request.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    match execute(&cli) {
        Ok(table) => match write_table(&cli, &table, out) {
            Ok(()) => 0,
            // a closed pipe (head, grep -m) is the reader's choice, not a failure
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
            Err(e) => {
                let _ = writeln!(err, "error: writing output: {e}");
                1
            }
        },
        Err(Failure::Library(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

/// Chernac pages read as "offset : factorization" in plain form, like the printed tables.
fn write_table(cli: &Cli, table: &Table, out: &mut dyn Write) -> std::io::Result<()> {
    match (&cli.command, cli.format) {
        (Command::Chernac { .. }, Format::Plain) => {
            for r in &table.rows {
                writeln!(out, "{} : {}", r[0].render(), r[2].render())?;
            }
            Ok(())
        }
        _ => table.write(cli.format, out),
    }
}

fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Sieve(cmd) => sieve_cmd(cmd),
        Command::Count { xs } => count(xs),
        Command::Tables { historical, points } => tables(*historical, points, cli.max),
        Command::Mertens { ns, samples } => mertens(ns, *samples, cli.max, cli.seed),
        Command::Chebyshev(cmd) => chebyshev(cmd, cli.max),
        Command::LcmIdentity(args) => lcm_identity(args, cli.seed),
        Command::Selberg { xs } => {
            let mut t = Table::new(["x", "selberg_error"]);
            for &x in xs {
                t.push(cells![x, elementary::selberg_error(x)?]);
            }
            Ok(t)
        }
        Command::Functional { which, xs } => {
            let kind = match which {
                Which::ThetaError => elementary::FunctionalKind::ThetaError,
                Which::Mertens => elementary::FunctionalKind::Mertens,
            };
            let mut t = Table::new(["x", "value"]);
            for &x in xs {
                t.push(cells![x, elementary::functional_error(x, kind)?]);
            }
            Ok(t)
        }
        Command::Distance(cmd) => distance(cmd),
        Command::Eta(args) => eta(args, cli.seed),
        Command::Halasz { f, x, t } => {
            let r = pretentious::halasz_ratio(f, *x, *t)?;
            let mut out = Table::new(["f", "x", "t", "sigma", "series_mag", "pretentious_mag", "ratio", "evaluation_error", "cutoff_tail"]);
            out.push(cells![f.name(), *x, *t, r.sigma, r.series_mag, r.pretentious_mag, r.ratio, r.evaluation_error, r.cutoff_tail]);
            Ok(out)
        }
        Command::Zeta(args) => zeta_cmd(args),
        Command::Perron { z, sigma, t_max, log_kernel } => {
            let v = if *log_kernel {
                zeta::perron_log_kernel(*z, *sigma, *t_max)?
            } else {
                zeta::perron_indicator(*z, *sigma, *t_max)?
            };
            let mut t = Table::new(["z", "sigma", "t_max", "value", "limit", "truncation_bound", "quadrature_error"]);
            t.push(cells![*z, *sigma, *t_max, v.value, v.indicator, v.truncation_bound, v.quadrature_error]);
            Ok(t)
        }
        Command::Explicit { xs, count, t_max } => explicit(cli, xs, *count, *t_max),
        Command::Goldbach { ns } => {
            let mut t = Table::new(["n", "direct", "circle"]);
            for &n in ns {
                let g = zeta::goldbach_check(n)?;
                t.push(cells![n, g.direct, g.circle]);
            }
            Ok(t)
        }
        Command::Prh { k, sigma, t, terms } => {
            let r = zeta::prh_bound_check(*k, ComplexPoint::new(*sigma, *t), *terms)?;
            let mut out = Table::new(["k", "sigma", "t", "magnitude", "budget", "ratio", "tail_estimate"]);
            out.push(cells![*k, *sigma, *t, r.magnitude, r.budget, r.ratio, r.tail_estimate]);
            Ok(out)
        }
        Command::Chars { q } => chars(*q),
        Command::PiAp { x, q, a } => {
            let mut t = Table::new(["x", "q", "a", "count"]);
            match a {
                Some(a) => t.push(cells![*x, *q, *a, progressions::pi_ap(*x, *q, *a)?]),
                None => {
                    for (a, c) in progressions::pi_ap_classes(*x, *q)?.into_iter().enumerate() {
                        t.push(cells![*x, *q, a, c]);
                    }
                }
            }
            Ok(t)
        }
        Command::Equidist { q, target } => {
            let s = progressions::equidist_stats(*q, *target)?;
            let mut t = Table::new(["q", "target", "x_reached", "min_count", "max_count"]);
            t.push(cells![*q, *target, s.x_reached, s.min_count, s.max_count]);
            Ok(t)
        }
        Command::Lone { q, index, n, mu } => lone(*q, *index, *n, *mu),
        Command::LeastPrime { q, a } => {
            let mut t = Table::new(["q", "a", "p", "linnik_exponent"]);
            let push = |t: &mut Table, a: u64, lp: progressions::LeastPrime| {
                let e = lp.linnik_exponent.map_or(Cell::from(""), Cell::from);
                t.push(vec![Cell::from(*q), Cell::from(a), Cell::from(lp.p), e]);
            };
            match a {
                Some(a) => {
                    let lp = progressions::least_prime_ap(*q, *a)?;
                    push(&mut t, a.rem_euclid(*q as i64) as u64, lp);
                }
                None => {
                    for (a, lp) in progressions::least_primes_all(*q)? {
                        push(&mut t, a, lp);
                    }
                }
            }
            Ok(t)
        }
        Command::Chernac { base } => {
            let mut t = Table::new(["offset", "n", "factorization"]);
            for l in chernac::chernac_page(*base)? {
                t.push(cells![l.offset, l.n, l.right()]);
            }
            Ok(t)
        }
    }
}

fn sieve_cmd(cmd: &SieveCmd) -> Outcome {
    match cmd {
        SieveCmd::Primes { lo, hi } => {
            let mut t = Table::new(["p"]);
            for p in sieve::primes_between(*lo, *hi)? {
                t.push(cells![p]);
            }
            Ok(t)
        }
        SieveCmd::Mobius { lo, hi } => {
            let mut t = Table::new(["n", "mu"]);
            for (i, m) in sieve::mobius_range(*lo, *hi)?.into_iter().enumerate() {
                t.push(cells![lo + i as u64, m]);
            }
            Ok(t)
        }
        SieveCmd::Mangoldt { ns } => {
            let mut t = Table::new(["n", "mangoldt"]);
            for &n in ns {
                t.push(cells![n, sieve::mangoldt(n)?]);
            }
            Ok(t)
        }
        SieveCmd::Factor { ns } => {
            let mut t = Table::new(["n", "factorization", "prime"]);
            for &n in ns {
                let f = sieve::factorize(n)?;
                t.push(cells![n, f.to_string(), f.is_prime()]);
            }
            Ok(t)
        }
    }
}

fn count(xs: &[u64]) -> Outcome {
    let mut t = Table::new(["x", "pi", "theta", "psi", "psi_star", "mertens"]);
    for s in counting::count_snapshots(xs)? {
        t.push(cells![s.x, s.pi, s.theta, s.psi, s.psi_star, s.mertens]);
    }
    Ok(t)
}

fn powers_of_ten(max: u64) -> Vec<u64> {
    (3..=19).map(|k| 10u64.pow(k)).take_while(|&x| x <= max).collect()
}

fn tables(historical: bool, points: &[u64], max: Option<u64>) -> Outcome {
    if historical {
        let mut t = Table::new(["x", "pi_historical", "pi_actual", "legendre_error"]);
        for r in counting::historical_legendre_rows()? {
            t.push(cells![r.x, r.pi_historical, r.pi_actual, r.legendre_error]);
        }
        return Ok(t);
    }
    let xs = if points.is_empty() { powers_of_ten(max.unwrap_or(10_000_000)) } else { points.to_vec() };
    let mut t = Table::new(counting::ComparisonRow::HEADER);
    for r in counting::comparison_table(&xs)? {
        t.push(cells![r.x, r.pi, r.li_overcount, r.legendre_error]);
    }
    Ok(t)
}

fn mertens(ns: &[u64], samples: usize, max: Option<u64>, seed: u64) -> Outcome {
    let mut points = ns.to_vec();
    let top = max.unwrap_or(100_000_000).max(2) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        points.push(rng.gen_range(2f64.ln()..=top.ln()).exp().round().clamp(2.0, top) as u64);
    }
    let mut t = Table::new(["n", "sum", "log_n", "gap"]);
    for (&n, s) in points.iter().zip(counting::mertens_logsums(&points)?) {
        let l = (n as f64).ln();
        t.push(cells![n, s, l, s - l]);
    }
    Ok(t)
}

fn chebyshev(cmd: &ChebyshevCmd, max: Option<u64>) -> Outcome {
    match cmd {
        ChebyshevCmd::Band => {
            let xs = powers_of_ten(max.unwrap_or(10_000_000));
            let (lo, hi) = (2f64.ln(), 4f64.ln());
            let mut t = Table::new(["x", "pi", "ratio", "in_band", "theta_gap", "rh_budget"]);
            for s in counting::count_snapshots(&xs)? {
                let x = s.x as f64;
                let r = s.pi as f64 * x.ln() / x;
                t.push(cells![s.x, s.pi, r, r > lo && r < hi, (s.theta - x).abs(), x.sqrt() * x.ln().powi(2)]);
            }
            Ok(t)
        }
        ChebyshevCmd::Binomial { n } => {
            let r = elementary::binom_prime_bounds(*n)?;
            let mut t = Table::new(["n", "prime_block_log", "central_log", "upper_log", "max_prime_power"]);
            t.push(cells![r.n, r.prime_block_log, r.central_log, 2.0 * *n as f64 * 2f64.ln(), r.max_prime_power]);
            Ok(t)
        }
        ChebyshevCmd::Kummer { p, n } => {
            let mut t = Table::new(["p", "n", "exponent"]);
            t.push(cells![*p, *n, elementary::kummer_exponent(*p, *n)?]);
            Ok(t)
        }
        ChebyshevCmd::Valuation { p, n } => {
            let mut t = Table::new(["p", "n", "exponent"]);
            t.push(cells![*p, *n, elementary::factorial_valuation(*p, *n)?]);
            Ok(t)
        }
        ChebyshevCmd::LogFactorial { n } => {
            let r = elementary::log_factorial_estimate(*n)?;
            let mut t = Table::new(["n", "exact", "estimate", "gap"]);
            t.push(cells![*n, r.exact, r.estimate, r.gap()]);
            Ok(t)
        }
        ChebyshevCmd::Bertrand { n } => {
            let mut t = Table::new(["n", "p"]);
            t.push(cells![*n, elementary::bertrand_check(*n)?]);
            Ok(t)
        }
        ChebyshevCmd::Eratosthenes { x, y } => {
            let r = elementary::eratosthenes_bound(*x, *y)?;
            let mut t = Table::new(["x", "y", "rough_count", "bound", "primes_above_y"]);
            t.push(cells![*x, *y, r.rough_count, r.bound, r.primes_above_y]);
            Ok(t)
        }
    }
}

fn lcm_identity(args: &LcmArgs, seed: u64) -> Outcome {
    let x = args.x;
    if let Some(n) = args.truncate {
        let primes = if args.primes.is_empty() {
            let lo = x / (n + 1) + 1;
            let mut ps = sieve::primes_between(lo, x)?;
            ps.retain(|&p| p.saturating_mul(p) > x);
            if ps.len() > 50 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut picks: Vec<u64> = rand::seq::index::sample(&mut rng, ps.len(), 50).into_iter().map(|i| ps[i]).collect();
                picks.sort_unstable();
                picks
            } else {
                ps
            }
        } else {
            args.primes.clone()
        };
        let r = elementary::truncated_identity(x, n, &primes)?;
        let mut t = Table::new(["x", "n", "log_value", "p", "exponent"]);
        for (p, e) in r.exponents {
            t.push(cells![x, n, r.log_value, p, e]);
        }
        return Ok(t);
    }
    if args.exact {
        let e = elementary::lcm_identity_exact(x)?;
        let mut t = Table::new(["x", "lcm", "numerator", "denominator", "holds"]);
        t.push(cells![x, e.lcm.to_string(), e.numerator.to_string(), e.denominator.to_string(), e.holds()]);
        return Ok(t);
    }
    let r = elementary::lcm_identity_check(x)?;
    let exact = r.exact_match.map_or(Cell::from(""), Cell::from);
    let mut t = Table::new(["x", "lhs_log", "rhs_log", "exact_match"]);
    t.push(vec![Cell::from(x), Cell::from(r.lhs_log), Cell::from(r.rhs_log), exact]);
    Ok(t)
}

fn distance(cmd: &DistanceCmd) -> Outcome {
    match cmd {
        DistanceCmd::Eval { f, ns } => {
            let mut t = Table::new(["f", "n", "re", "im"]);
            for &n in ns {
                let v = pretentious::mf_eval(f, n)?;
                t.push(cells![f.name(), n, v.re, v.im]);
            }
            Ok(t)
        }
        DistanceCmd::Mean { f, n } => {
            let v = pretentious::mean_value(f, *n)?;
            let mut t = Table::new(["f", "n", "re", "im", "abs"]);
            t.push(cells![f.name(), *n, v.re, v.im, v.norm()]);
            Ok(t)
        }
        DistanceCmd::NitMean { t: tt, n } => {
            let r = pretentious::nit_mean_check(*tt, *n)?;
            let mut t = Table::new(["t", "n", "computed_re", "computed_im", "predicted_re", "predicted_im", "gap", "bound"]);
            t.push(cells![*tt, *n, r.computed.re, r.computed.im, r.predicted.re, r.predicted.im, r.gap, r.bound]);
            Ok(t)
        }
        DistanceCmd::Between { f, g, x } => {
            let d = pretentious::distance(f, g, *x)?;
            let mut t = Table::new(["f", "g", "x", "distance", "distance_sq"]);
            t.push(cells![d.f, d.g, d.x, d.value, d.value_sq]);
            Ok(t)
        }
        DistanceCmd::MinT { f, x, t_max, step } => {
            let m = pretentious::distance_min_t(f, *x, *t_max, *step)?;
            let mut t = Table::new(["f", "x", "t_max", "step", "t_min", "d_min"]);
            t.push(cells![f.name(), *x, *t_max, *step, m.t_min, m.d_min]);
            Ok(t)
        }
    }
}

fn random_disk_point(rng: &mut ChaCha8Rng) -> Complex64 {
    let tau = std::f64::consts::TAU;
    match rng.gen_range(0..10) {
        0 => Complex64::new(0.0, 0.0),
        1 | 2 => Complex64::from_polar(1.0, rng.gen_range(0.0..tau)),
        _ => Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..tau)),
    }
}

fn eta(args: &EtaArgs, seed: u64) -> Outcome {
    if let Some(n) = args.sweep {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = 0u64;
        for _ in 0..n {
            let (w, y, z) = (random_disk_point(&mut rng), random_disk_point(&mut rng), random_disk_point(&mut rng));
            if !pretentious::eta_triangle_check(w, y, z)? {
                failures += 1;
            }
        }
        let mut t = Table::new(["triples", "seed", "failures"]);
        t.push(cells![n, seed, failures]);
        return Ok(t);
    }
    let (w, y) = (args.w.expect("required by clap"), args.y.expect("required by clap"));
    let d = pretentious::eta(w, y)?;
    match args.via {
        Some(z) => {
            let mut t = Table::new(["eta_wy", "eta_wz", "eta_zy", "holds"]);
            t.push(cells![d, pretentious::eta(w, z)?, pretentious::eta(z, y)?, pretentious::eta_triangle_check(w, y, z)?]);
            Ok(t)
        }
        None => {
            let mut t = Table::new(["eta"]);
            t.push(cells![d]);
            Ok(t)
        }
    }
}

fn zeta_cmd(args: &ZetaArgs) -> Outcome {
    let s = ComplexPoint::new(args.sigma, args.t);
    if let Some(cutoff) = args.euler {
        let c = zeta::euler_product_check(s, cutoff)?;
        let mut t = Table::new(["sigma", "t", "series_re", "series_im", "product_re", "product_im", "gap"]);
        t.push(cells![args.sigma, args.t, c.series.re, c.series.im, c.product.re, c.product.im, c.gap]);
        return Ok(t);
    }
    let v = if args.log_deriv { zeta::log_deriv_eval(s, args.terms)? } else { zeta::zeta_eval(s, args.terms)? };
    let mut t = Table::new(["sigma", "t", "re", "im", "tail_bound"]);
    t.push(cells![args.sigma, args.t, v.value.re, v.value.im, v.tail_bound]);
    Ok(t)
}

fn explicit(cli: &Cli, xs: &[f64], count: Option<usize>, t_max: Option<f64>) -> Outcome {
    let path = cli.zeros.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_ZEROS));
    let mut zeros = zeta::load_zeros(&path)?;
    if let Some(c) = count {
        zeros = zeros.truncated(c);
    }
    let top = match (t_max, zeros.max_ordinate()) {
        (Some(t), _) => t,
        (None, Some(t)) => t,
        (None, None) => return Err(Failure::Library(format!("explicit_psi: {} holds no zeros", path.display()))),
    };
    let mut t = Table::new(["x", "t_max", "zeros_used", "approx", "truth", "error"]);
    for &x in xs {
        let e = zeta::explicit_psi(x, &zeros, top)?;
        t.push(cells![x, top, e.zeros_used, e.approx, e.truth, e.error]);
    }
    Ok(t)
}

fn chars(q: u64) -> Outcome {
    let table = CharacterTable::new(q)?;
    let m = table.exponent();
    let mut t = Table::new(["index", "kind", "exponent", "roots"]);
    for i in 0..table.len() {
        let kind = match table.kind(i) {
            CharacterKind::Principal => "principal",
            CharacterKind::Real => "real",
            CharacterKind::Complex => "complex",
        };
        let roots: Vec<String> = (1..=q.max(1)).map(|n| table.root_index(i, n % q.max(1)).map_or("-".into(), |k| k.to_string())).collect();
        t.push(cells![i, kind, m, roots.join(" ")]);
    }
    Ok(t)
}

fn lone(q: u64, index: usize, n: u64, mu: bool) -> Outcome {
    let table = CharacterTable::new(q)?;
    if index >= table.len() {
        return Err(Failure::Library(format!("lone: index {index} ≥ φ({q}) = {}", table.len())));
    }
    let chi = table.character(index);
    if mu {
        let v = progressions::mu_chi_mean(&chi, n)?;
        let mut t = Table::new(["q", "index", "n", "re", "im", "abs"]);
        t.push(cells![q, index, n, v.re, v.im, v.norm()]);
        return Ok(t);
    }
    let l = progressions::l_one(&chi, n)?;
    let certified = l.positive_certified.map_or(Cell::from(""), Cell::from);
    let mut t = Table::new(["q", "index", "n", "re", "im", "tail_bound", "positive_certified"]);
    t.push(vec![q.into(), index.into(), n.into(), l.value.re.into(), l.value.im.into(), l.tail_bound.into(), certified]);
    Ok(t)
}
