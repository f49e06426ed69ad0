//! A page of a factor table in the manner of Chernac's: one chiliad per page,
//! multiples of 2, 3 and 5 left out.

use ntdesk_core::sieve;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Unit,
    Prime,
    /// e.g. "619·1093" or "7^2·11·13"
    Composite(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernacLine {
    /// n − base
    pub offset: u64,
    pub n: u64,
    pub entry: Entry,
}

impl ChernacLine {
    pub fn right(&self) -> String {
        match &self.entry {
            Entry::Unit => "unit".into(),
            Entry::Prime => "prime".into(),
            Entry::Composite(f) => f.clone(),
        }
    }
}

pub const PAGE: u64 = 1000;

/// Every n in [base, base + 1000) prime to 30, with its factorization.
pub fn chernac_page(base: u64) -> Result<Vec<ChernacLine>, String> {
    if base % PAGE != 0 {
        return Err(format!("chernac: base {base} is not a multiple of {PAGE}"));
    }
    let top = base.checked_add(PAGE - 1).ok_or("chernac: base overflows")?;
    if top > sieve::DEFAULT_FACTOR_MAX {
        return Err(format!("chernac: page end {top} exceeds the factorization bound {}", sieve::DEFAULT_FACTOR_MAX));
    }
    let mut lines = Vec::new();
    for n in base.max(1)..=top {
        if n % 2 == 0 || n % 3 == 0 || n % 5 == 0 {
            continue;
        }
        let entry = if n == 1 {
            Entry::Unit
        } else {
            let f = sieve::factorize(n).map_err(|e| e.to_string())?;
            if f.is_prime() {
                Entry::Prime
            } else {
                Entry::Composite(f.to_string())
            }
        };
        lines.push(ChernacLine { offset: n - base, n, entry });
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn page_677() {
        let page = chernac_page(676_000).unwrap();
        let find = |o: u64| page.iter().find(|l| l.offset == o).unwrap().right();
        assert_eq!(find(567), "619·1093");
        assert_eq!(find(589), "prime");
        let expect = (676_000..677_000u64).filter(|n| n % 2 != 0 && n % 3 != 0 && n % 5 != 0).count();
        assert_eq!(page.len(), expect);
    }

    #[test]
    fn first_page_starts_with_the_unit() {
        let page = chernac_page(0).unwrap();
        assert_eq!(page[0], ChernacLine { offset: 1, n: 1, entry: Entry::Unit });
        assert_eq!(page[1].entry, Entry::Prime);
        assert!(chernac_page(1234).is_err());
    }
}
