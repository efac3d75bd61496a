//! Reference literals the verification pipeline compares against, kept as
//! decimal strings so every comparison is exact.

/// Lower bounds for `1 + A(n, p)` over all residues `n`, for the tabulated primes.
pub const EULER_FACTOR_BOUNDS: [(u64, &str); 15] = [
    (3, "0.9375"),
    (5, "0.99609375"),
    (7, "0.72916666"),
    (11, "0.9999"),
    (13, "0.93098958"),
    (17, "0.99998474"),
    (19, "0.98225308"),
    (23, "0.99999573"),
    (29, "0.99999837"),
    (31, "0.99303333"),
    (37, "0.99387538"),
    (41, "0.9999996"),
    (193, "0.99982076"),
    (197, "0.99999999"),
    (199, "0.99983815"),
];

/// Largest prime in the per-prime Euler-factor table.
pub const EULER_TABLE_MAX_P: u64 = 199;

/// Primes handled separately through the modulus `3·7·13·19`.
pub const EXCLUDED_SMALL_PRIMES: [u64; 4] = [3, 7, 13, 19];

/// Upper end (exclusive) of the small-prime block and start of the midrange block.
pub const MIDRANGE_START: u64 = 200;
/// End (exclusive) of the midrange block and start of the tail.
pub const MIDRANGE_END: u64 = 1_000_000;
/// Exponent on the telescoping tail product.
pub const TAIL_EXPONENT: u32 = 17;

pub const SMALL_PRIME_PRODUCT_BOUND: &str = "0.96976071";
pub const MIDRANGE_PRODUCT_BOUND: &str = "0.99351588";
pub const TAIL_PRODUCT_BOUND: &str = "0.999983";
pub const SERIES_CONSTANT_BOUND: &str = "0.96345628";

/// `3 · 7 · 13 · 19`.
pub const POWER_MODULUS: u64 = 5187;
pub const POWER_MODULUS_ORDER: u64 = 36;
pub const THETA_MAX_VALUE: &str = "18.00001822";
pub const S_CONSTANT_BOUND: &str = "0.00019278";
pub const SINGULAR_SUM_BOUND: &str = "3.71280584";
/// Smallest number of powers of two for which the averaged bound is stated.
pub const SINGULAR_SUM_MIN_K: u32 = 45;

pub const R1_COEFFICIENT: &str = "3.09441331";
pub const R3_INTERMEDIATE: &str = "221.73322593";
pub const R3_COEFFICIENT: &str = "1773.86580744";

pub const DEFAULT_LAMBDA: &str = "0.87045114";
pub const DEFAULT_ETA: &str = "1e-9";
pub const DEFAULT_F_MOMENT: &str = "305.8869";
pub const DEFAULT_CUBE_MOMENT: &str = "12.677988";

/// Number of powers of two the threshold solver should recover.
pub const EXPECTED_MIN_K: u32 = 48;

/// Tolerance for reconstructing the rounded published coefficients.
pub const RECONSTRUCTION_TOLERANCE: &str = "5e-5";

pub fn euler_factor_bound(p: u64) -> Option<&'static str> {
    EULER_FACTOR_BOUNDS
        .iter()
        .find(|(q, _)| *q == p)
        .map(|(_, b)| *b)
}
