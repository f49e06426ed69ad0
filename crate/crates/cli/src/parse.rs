//! Value parsers for the argument grammar.

use num_complex::Complex64;

use ntdesk_core::pretentious::MultiplicativeFunction;
use ntdesk_core::progressions::CharacterTable;
use ntdesk_core::sieve;

/// Integers written plainly, as `1e9`, or as `10^9`.
pub fn count(text: &str) -> Result<u64, String> {
    sieve::parse_count(text).ok_or_else(|| format!("not a nonnegative integer: {text:?}"))
}

/// `re` or `re,im`.
pub fn complex(text: &str) -> Result<Complex64, String> {
    let bad = || format!("expected re or re,im: {text:?}");
    match text.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?)),
        None => Ok(Complex64::new(text.trim().parse().map_err(|_| bad())?, 0.0)),
    }
}

/// Multiplicative functions: `1`, `mu`, `tau`, `sigma`, `nit:T`, `chi:Q:I`,
/// `random:SEED`, each optionally followed by `^2`.
pub fn function(text: &str) -> Result<MultiplicativeFunction, String> {
    if let Some(base) = text.strip_suffix("^2") {
        return function(base).map(|f| f.squared());
    }
    let bad = |why: &str| format!("{why} in function spec {text:?} (try 1, mu, tau, sigma, nit:T, chi:Q:I, random:SEED)");
    let mut parts = text.split(':');
    let head = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(bad("wrong number of parameters")) };
    match head {
        "1" | "one" => arity(0).map(|_| MultiplicativeFunction::one()),
        "mu" => arity(0).map(|_| MultiplicativeFunction::mobius()),
        "tau" => arity(0).map(|_| MultiplicativeFunction::divisor_count()),
        "sigma" => arity(0).map(|_| MultiplicativeFunction::divisor_sum()),
        "nit" => {
            arity(1)?;
            let t: f64 = args[0].parse().map_err(|_| bad("bad t"))?;
            Ok(MultiplicativeFunction::nit(t))
        }
        "random" => {
            arity(1)?;
            Ok(MultiplicativeFunction::random_unimodular(count(args[0]).map_err(|_| bad("bad seed"))?))
        }
        "chi" => {
            arity(2)?;
            let q = count(args[0]).map_err(|_| bad("bad modulus"))?;
            let i = count(args[1]).map_err(|_| bad("bad index"))? as usize;
            let table = CharacterTable::new(q).map_err(|e| e.to_string())?;
            if i >= table.len() {
                return Err(bad(&format!("index {i} ≥ φ({q}) = {}", table.len())));
            }
            Ok(MultiplicativeFunction::character(table.character(i)))
        }
        _ => Err(bad("unknown function")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_specs() {
        assert_eq!(function("mu").unwrap().name(), "mu");
        assert!(!function("tau").unwrap().is_bounded());
        assert_eq!(function("nit:0.5").unwrap().name(), "n^(0.5i)");
        assert!(function("mu^2").unwrap().is_bounded());
        assert!(function("chi:4:1").is_ok());
        assert!(function("chi:4:2").is_err());
        assert!(function("nit").is_err());
        assert!(function("zeta").is_err());
    }

    #[test]
    fn complex_specs() {
        assert_eq!(complex("0,1").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(complex("-1").unwrap(), Complex64::new(-1.0, 0.0));
        assert!(complex("i").is_err());
    }
}
