//! Empirical constants for statements that only claim "bounded by a multiple
//! of x" or "≍". Each was measured once on the grid named beside it and is
//! kept with headroom; the regression tests hold the code to them.

/// |selberg_error(x)|, x ∈ {10³..10⁶}; measured ≤ 3.67.
pub const SELBERG_ERROR_BOUND: f64 = 4.5;

/// |functional_error(x, ThetaError)|, x ∈ {10³..10⁶}; measured ≤ 2.36.
pub const THETA_FUNCTIONAL_BOUND: f64 = 3.0;

/// |functional_error(x, Mertens)|, x ∈ {10³..10⁶}; measured ≤ 0.017.
pub const MERTENS_FUNCTIONAL_BOUND: f64 = 0.05;

/// Halász ratio band for f = 1, t = 0, x = 10⁴; measured 1.064.
pub const HALASZ_BAND_ONE: (f64, f64) = (0.8, 1.35);

/// Halász ratio band for f = μ, t = 0, x = 10⁴; measured 1.590.
pub const HALASZ_BAND_MOBIUS: (f64, f64) = (1.2, 2.0);

/// Halász ratio band for f = n^{i}, t = 1, x = 10⁴; measured 1.064.
pub const HALASZ_BAND_NIT: (f64, f64) = (0.8, 1.35);

/// Lower bound on min_{|t|≤2} 𝔻(μ, n^{it}; 10⁴); measured 1.485.
pub const MOBIUS_DMIN_FLOOR: f64 = 1.25;

/// |explicit_psi(100) − ψ*(100)| with the first 100 zeros; measured 0.375.
pub const EXPLICIT_PSI_100_TOLERANCE: f64 = 1.0;

/// |(1/N) Σ_{n≤N} μ(n)χ₄(n)| at N = 10⁶; measured 4.2·10⁻⁴.
pub const MU_CHI4_MEAN_BOUND: f64 = 1e-3;
