//! Exact combinatorics and K-theory of products of odometers.
//!
//! A product of odometers is the single-vertex k-graph whose degree-`e_i`
//! edges are the digits `0..n_i` of one odometer wheel, together with the
//! add-with-carry action of `Z`. Everything in this crate is computed in
//! exact arbitrary-precision arithmetic:
//!
//! * [`kgraph`] — paths of the k-graph, composition, unique factorization,
//!   the odometer action and its restriction (carry) cocycle.
//! * [`skew`] — the skew product over `Z^k` with the lifted action and the
//!   free translation action on base points.
//! * [`qs`] — the isometry relations of the algebra generated by `u` and
//!   `{s_n}` realized as affine partial bijections of `Z`, with exact
//!   equality of orthogonal sums of monomials.
//! * [`ktheory`] — Smith normal form over `Z` and `Z[1/N]`, the rank-k
//!   Koszul complex of the induced `Z^k`-action on `K_0 = Z[1/N]`, its
//!   cohomology (the second page of the associated spectral sequence) and
//!   the closed forms it is checked against, the stabilized K-groups as a
//!   direct limit, and the conjectured K-group assembler.
//!
//! The [`report`] module holds the pass/fail report structure shared by
//! the verification entry points and the CLI.

pub mod error;
pub mod kgraph;
pub mod ktheory;
pub mod qs;
pub mod report;
pub mod skew;

pub use error::Error;
pub use kgraph::{Degree, GroupElement, OdometerSpec, PathWord};
pub use report::{Report, Section, Status};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
