//! Exact K-theoretic machinery: integer and localized linear algebra,
//! the rank-k Koszul complex of the `Z^k`-action on `K_0 = Z[1/N]`, its
//! cohomology page with a closed-form cross-check, the stabilized
//! K-groups as a direct limit, and the conjectured K-group assembler.

pub mod abelian;
pub mod localized;
pub mod matrix;
pub mod snf;
pub mod spectral;
pub mod wedge;

pub use abelian::AbelianGroup;
pub use localized::{LocalizedMatrix, LocalizedRing, LocalizedScalar};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithNormalForm};
pub use spectral::{
    build_d1, closed_form_e2, cohomology, conjecture_groups, e2_page, numerology_check,
    stabilized_k_groups, ConjecturedKTheory, CyclicDirectLimit, Parity, SpectralPage,
    StabilizedKGroups, UNRESOLVED_CAVEAT,
};
pub use wedge::{binomial, wedge_append, WedgeBasis};
