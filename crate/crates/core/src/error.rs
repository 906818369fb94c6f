//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Moduli list rejected at construction (empty, or some `n_i < 2`).
    #[error("invalid moduli: {0}")]
    InvalidModuli(String),

    /// A degree vector of the wrong length for the ambient rank.
    #[error("invalid degree: expected length {expected}, got {got}")]
    InvalidDegree { expected: usize, got: usize },

    /// Color index outside `1..=k`.
    #[error("invalid color {color}: rank is {rank}")]
    InvalidColor { color: usize, rank: usize },

    /// Edge digit outside `0..n_i`.
    #[error("invalid digit {digit} for color {color} with modulus {modulus}")]
    InvalidDigit { color: usize, digit: u64, modulus: u64 },

    /// Path value outside `[0, weight)`.
    #[error("path value out of range: {0}")]
    InvalidValue(String),

    /// Factorization split not dominated by the path degree.
    #[error("invalid split: {0}")]
    InvalidSplit(String),

    /// Edge order inconsistent with the path degree.
    #[error("invalid color order: {0}")]
    InvalidOrder(String),

    /// Skew paths whose endpoints do not match.
    #[error("paths are not composable: source {left_source} != range {right_range}")]
    NotComposable { left_source: String, right_range: String },

    /// A sum of partial maps with overlapping domains or images.
    #[error("not a partial isometry: {0}")]
    NotPartialIsometry(String),

    /// An affine map violating the integrality invariants.
    #[error("invalid affine map: {0}")]
    InvalidAffineMap(String),

    /// A generator set for the isometry relations that is empty or contains
    /// an entry below 2.
    #[error("invalid generator set: {0}")]
    InvalidGeneratorSet(String),

    /// Differentials that do not square to zero.
    #[error("not a complex: {0}")]
    NotAComplex(String),

    /// A denominator with a prime factor outside the localized ring.
    #[error("denominator {0} is not invertible in the localization")]
    NotInvertible(String),

    /// Matrix dimensions inconsistent with the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An invariant-factor list without the divisibility chain.
    #[error("not an invariant-factor chain: {0}")]
    NotInvariantChain(String),

    /// Conjectured K-groups requested for a rank outside the hypothesis.
    #[error("out of hypothesis: requires k >= 2, got k = {0}")]
    OutOfHypothesis(usize),
}
