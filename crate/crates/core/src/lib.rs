//! Desk-scale computational checks of classical and "pretentious" analytic
//! number theory: sieving, prime counting, the Chebyshev–Erdős machinery,
//! ζ(s) and Perron's formula to the right of the 1-line, the explicit formula
//! from a table of zeros, Dirichlet characters, and distances between
//! multiplicative functions.

pub mod counting;
pub mod elementary;
pub mod error;
pub mod frozen;
pub mod pretentious;
pub mod progressions;
pub mod quad;
pub mod sieve;
pub mod sum;
pub mod zeta;

pub use error::{Error, Result};
