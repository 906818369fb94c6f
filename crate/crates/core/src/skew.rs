//! The skew product of the k-graph over `Z^k`.
//!
//! Objects are points of `Z^k`; a morphism is a path together with the
//! base point of its range, and the source sits at `base + d(path)`. The
//! odometer action lifts without touching base points, and `Z^k` acts
//! freely by translating them.

use num_bigint::BigInt;

use crate::kgraph::{Degree, GroupElement, OdometerSpec, PathWord};
use crate::{Error, Result};

/// A vertex `(v, z)` of the skew product, identified with `z` in `Z^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewVertex(Vec<BigInt>);

impl SkewVertex {
    pub fn new(z: Vec<BigInt>) -> Self {
        SkewVertex(z)
    }

    pub fn origin(k: usize) -> Self {
        SkewVertex(vec![BigInt::ZERO; k])
    }

    pub fn from_i64(z: &[i64]) -> Self {
        SkewVertex(z.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The vertex shifted by a degree, i.e. `z + p`.
    pub fn shift_by_degree(&self, p: &Degree) -> SkewVertex {
        assert_eq!(self.len(), p.len(), "rank mismatch");
        SkewVertex(
            self.0.iter().zip(p.entries()).map(|(z, &e)| z + BigInt::from(e)).collect(),
        )
    }

    /// The vertex translated by `w`, i.e. `z + w`.
    pub fn translate(&self, w: &[BigInt]) -> SkewVertex {
        assert_eq!(self.len(), w.len(), "rank mismatch");
        SkewVertex(self.0.iter().zip(w).map(|(z, t)| z + t).collect())
    }
}

impl std::fmt::Display for SkewVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, z) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{z}")?;
        }
        write!(f, ")")
    }
}

/// A morphism `(mu, z)` of the skew product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewPath {
    pub path: PathWord,
    pub base: SkewVertex,
}

impl SkewPath {
    pub fn new(path: PathWord, base: SkewVertex) -> Self {
        assert_eq!(path.degree().len(), base.len(), "rank mismatch");
        SkewPath { path, base }
    }
}

impl std::fmt::Display for SkewPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} at {})", self.path, self.base)
    }
}

/// Range and source: `r(mu, z) = z` and `s(mu, z) = z + d(mu)`.
pub fn endpoints(sp: &SkewPath) -> (SkewVertex, SkewVertex) {
    (sp.base.clone(), sp.base.shift_by_degree(sp.path.degree()))
}

/// `(mu, z) . (nu, z + d(mu)) = (mu nu, z)`; errors when the endpoints
/// do not line up.
pub fn compose(spec: &OdometerSpec, a: &SkewPath, b: &SkewPath) -> Result<SkewPath> {
    let source_a = a.base.shift_by_degree(a.path.degree());
    if source_a != b.base {
        return Err(Error::NotComposable {
            left_source: source_a.to_string(),
            right_range: b.base.to_string(),
        });
    }
    Ok(SkewPath { path: spec.compose(&a.path, &b.path), base: a.base.clone() })
}

/// Unique factorization lifted to the skew product: the left factor keeps
/// the base, the right factor starts at `base + a`.
pub fn factorize(
    spec: &OdometerSpec,
    sp: &SkewPath,
    a: &Degree,
) -> Result<(SkewPath, SkewPath)> {
    let (alpha, beta) = spec.factorize(&sp.path, a)?;
    let mid = sp.base.shift_by_degree(a);
    Ok((SkewPath { path: alpha, base: sp.base.clone() }, SkewPath { path: beta, base: mid }))
}

/// The lifted action `g . (mu, z) = (g . mu, z)` with restriction `g|_mu`,
/// independent of the base point.
pub fn act(spec: &OdometerSpec, g: &GroupElement, sp: &SkewPath) -> (SkewPath, GroupElement) {
    let (path, rest) = spec.act(g, &sp.path);
    (SkewPath { path, base: sp.base.clone() }, rest)
}

/// The free translation action of `Z^k` on base points.
pub fn translate(z: &[BigInt], sp: &SkewPath) -> SkewPath {
    SkewPath { path: sp.path.clone(), base: sp.base.translate(z) }
}
