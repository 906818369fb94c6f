//! The localization `Z[1/N]` and exact linear algebra over it.
//!
//! `Z[1/N]` is a principal ideal domain whose units are, up to sign, the
//! products of primes dividing `N`. Scalars are kept in the canonical
//! form `num / N^exp` with the exponent minimal; matrices are cleared to
//! integer matrices by unit scaling, handed to the integer Smith normal
//! form, and the resulting divisors are stripped of every prime dividing
//! `N`. What survives is coprime to `N` and classifies cokernels of
//! `Z[1/N]`-matrices.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::kgraph::OdometerSpec;
use crate::{Error, Result};

/// `Z[1/N]` together with the prime factorization of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedRing {
    n: BigUint,
    primes: Vec<u64>,
}

fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl LocalizedRing {
    /// `Z[1/n]` for a machine-sized `n >= 1`, factored by trial division.
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "localization at 0 is not a ring of fractions");
        LocalizedRing { n: BigUint::from(n), primes: prime_factors_u64(n) }
    }

    /// `Z[1/N]` with `N` the product of the spec's moduli; the primes of
    /// `N` are the union of the primes of the individual moduli.
    pub fn from_spec(spec: &OdometerSpec) -> Self {
        let mut primes: Vec<u64> =
            spec.moduli().iter().flat_map(|&m| prime_factors_u64(m)).collect();
        primes.sort_unstable();
        primes.dedup();
        LocalizedRing { n: spec.total_modulus(), primes }
    }

    /// The inverted element `N`.
    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Removes from `d` every prime factor dividing `N`; the result is the
    /// unit-free part of `d`, coprime to `N`.
    pub fn strip_units(&self, d: &BigUint) -> BigUint {
        if d.is_zero() {
            return d.clone();
        }
        let mut d = d.clone();
        for &p in &self.primes {
            let p = BigUint::from(p);
            while (&d % &p).is_zero() {
                d /= &p;
            }
        }
        d
    }

    /// True when `d` is a unit of `Z[1/N]`.
    pub fn is_unit(&self, d: &BigUint) -> bool {
        !d.is_zero() && self.strip_units(d).is_one()
    }
}

impl std::fmt::Display for LocalizedRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z[1/{}]", self.n)
    }
}

/// An element `num / N^exp` of `Z[1/N]`, with `exp` minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalizedScalar {
    num: BigInt,
    exp: u32,
}

impl LocalizedScalar {
    pub fn zero() -> Self {
        LocalizedScalar { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        LocalizedScalar { num: BigInt::one(), exp: 0 }
    }

    pub fn integer(n: BigInt) -> Self {
        LocalizedScalar { num: n, exp: 0 }
    }

    /// `num / den`, requiring every prime of `den` to divide `N`.
    pub fn fraction(ring: &LocalizedRing, num: BigInt, den: &BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotInvertible("0".into()));
        }
        // Find e with den | N^e by peeling common factors.
        let mut rem = den.clone();
        let mut exp = 0u32;
        while !rem.is_one() {
            let g = rem.gcd(&ring.n);
            if g.is_one() {
                return Err(Error::NotInvertible(den.to_string()));
            }
            rem /= &g;
            exp += 1;
        }
        let scale = ring.n.pow(exp) / den;
        let scalar = LocalizedScalar { num: num * BigInt::from(scale), exp };
        Ok(scalar.normalized(ring))
    }

    fn normalized(mut self, ring: &LocalizedRing) -> Self {
        if self.num.is_zero() {
            self.exp = 0;
            return self;
        }
        let n = BigInt::from(ring.n.clone());
        while self.exp > 0 {
            let (q, r) = self.num.div_rem(&n);
            if !r.is_zero() {
                break;
            }
            self.num = q;
            self.exp -= 1;
        }
        self
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, ring: &LocalizedRing, other: &Self) -> Self {
        let exp = self.exp.max(other.exp);
        let n = BigInt::from(ring.n.clone());
        let a = &self.num * n.pow(exp - self.exp);
        let b = &other.num * n.pow(exp - other.exp);
        LocalizedScalar { num: a + b, exp }.normalized(ring)
    }

    pub fn sub(&self, ring: &LocalizedRing, other: &Self) -> Self {
        self.add(ring, &other.neg())
    }

    pub fn neg(&self) -> Self {
        LocalizedScalar { num: -self.num.clone(), exp: self.exp }
    }

    pub fn mul(&self, ring: &LocalizedRing, other: &Self) -> Self {
        LocalizedScalar { num: &self.num * &other.num, exp: self.exp + other.exp }
            .normalized(ring)
    }

    /// Rendered against its ring, e.g. `-5/6^2`.
    pub fn describe(&self, ring: &LocalizedRing) -> String {
        match self.exp {
            0 => format!("{}", self.num),
            1 => format!("{}/{}", self.num, ring.n),
            e => format!("{}/{}^{}", self.num, ring.n, e),
        }
    }
}

/// The `Z^k`-action on `K_0 = Z[1/N]`: `z` acts by multiplication with
/// `prod n_i^{-z_i}`.
pub fn action_on_k0(
    spec: &OdometerSpec,
    z: &[i64],
    x: &LocalizedScalar,
) -> Result<LocalizedScalar> {
    if z.len() != spec.rank() {
        return Err(Error::InvalidDegree { expected: spec.rank(), got: z.len() });
    }
    let ring = LocalizedRing::from_spec(spec);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (&n, &e) in spec.moduli().iter().zip(z) {
        let pow = BigUint::from(n).pow(e.unsigned_abs().try_into().expect("exponent fits u32"));
        if e >= 0 {
            den *= pow;
        } else {
            num *= pow;
        }
    }
    let factor = LocalizedScalar::fraction(&ring, BigInt::from(num), &den)?;
    Ok(x.mul(&ring, &factor))
}

/// A dense matrix over `Z[1/N]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LocalizedScalar>,
}

impl LocalizedMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LocalizedMatrix { rows, cols, data: vec![LocalizedScalar::zero(); rows * cols] }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> LocalizedScalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        LocalizedMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LocalizedScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LocalizedScalar) {
        self.data[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LocalizedScalar::is_zero)
    }

    pub fn mul(&self, ring: &LocalizedRing, other: &LocalizedMatrix) -> LocalizedMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        LocalizedMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = LocalizedScalar::zero();
            for l in 0..self.cols {
                let a = self.get(i, l);
                let b = other.get(l, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(ring, &a.mul(ring, b));
                }
            }
            acc
        })
    }

    /// Scales the whole matrix by the unit `N^e` with `e` the maximal
    /// exponent present, producing an integer matrix with the same kernel
    /// and the same image up to units.
    pub fn clear_denominators(&self, ring: &LocalizedRing) -> IntMatrix {
        let e = self.data.iter().map(|s| s.exp).max().unwrap_or(0);
        let n = BigInt::from(ring.n.clone());
        IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            let s = self.get(i, j);
            &s.num * n.pow(e - s.exp)
        })
    }
}

/// Elementary divisors of a `Z[1/N]`-matrix: clear denominators, take the
/// integer Smith normal form, and strip the primes of `N` from each
/// divisor. The results are coprime to `N` (units become 1) and classify
/// the cokernel as a `Z[1/N]`-module.
pub fn localized_divisors(ring: &LocalizedRing, m: &LocalizedMatrix) -> Vec<BigUint> {
    let cleared = m.clear_denominators(ring);
    smith_normal_form(&cleared).divisors.iter().map(|d| ring.strip_units(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: u64) -> LocalizedRing {
        LocalizedRing::new(n)
    }

    fn frac(r: &LocalizedRing, num: i64, den: u64) -> LocalizedScalar {
        LocalizedScalar::fraction(r, BigInt::from(num), &BigUint::from(den)).unwrap()
    }

    #[test]
    fn ring_factors_and_units() {
        let r = ring(21);
        assert_eq!(r.primes(), &[3, 7]);
        assert_eq!(r.strip_units(&BigUint::from(2u32)), BigUint::from(2u32));
        assert_eq!(r.strip_units(&BigUint::from(63u32)), BigUint::one());
        assert!(r.is_unit(&BigUint::from(9u32)));
        assert!(!r.is_unit(&BigUint::from(6u32)));

        let spec = OdometerSpec::new(vec![4, 6]).unwrap();
        let r = LocalizedRing::from_spec(&spec);
        assert_eq!(r.n(), &BigUint::from(24u32));
        assert_eq!(r.primes(), &[2, 3]);
    }

    #[test]
    fn scalar_canonical_form() {
        let r = ring(6);
        // 2/6 and 1/3 are the same element, canonically (2, 1).
        let a = frac(&r, 2, 6);
        let b = frac(&r, 1, 3);
        assert_eq!(a, b);
        assert_eq!(a.numerator(), &BigInt::from(2));
        assert_eq!(a.exponent(), 1);

        // 12/6 collapses to the integer 2.
        let c = frac(&r, 12, 6);
        assert_eq!(c, LocalizedScalar::integer(BigInt::from(2)));

        // Denominators with foreign primes are rejected.
        assert!(LocalizedScalar::fraction(&r, BigInt::one(), &BigUint::from(5u32)).is_err());
    }

    #[test]
    fn scalar_arithmetic() {
        let r = ring(6);
        let third = frac(&r, 1, 3);
        let half = frac(&r, 1, 2);
        assert_eq!(third.add(&r, &half), frac(&r, 5, 6));
        assert_eq!(third.mul(&r, &half), frac(&r, 1, 6));
        assert_eq!(half.sub(&r, &half), LocalizedScalar::zero());
        assert_eq!(frac(&r, -2, 3).describe(&r), "-4/6");
    }

    #[test]
    fn action_examples() {
        let spec = OdometerSpec::new(vec![2, 3]).unwrap();
        let r = LocalizedRing::from_spec(&spec);
        let sixth = frac(&r, 1, 6);

        let moved = action_on_k0(&spec, &[1, 0], &sixth).unwrap();
        assert_eq!(moved, frac(&r, 1, 12));

        assert_eq!(action_on_k0(&spec, &[0, 0], &sixth).unwrap(), sixth);

        let back = action_on_k0(&spec, &[-1, -1], &sixth).unwrap();
        assert_eq!(back, LocalizedScalar::one());
    }

    #[test]
    fn action_is_a_group_action() {
        let spec = OdometerSpec::new(vec![3, 7]).unwrap();
        let r = LocalizedRing::from_spec(&spec);
        let x = frac(&r, 5, 21);
        let z = [2i64, -1];
        let w = [-3i64, 2];
        let zw: Vec<i64> = z.iter().zip(&w).map(|(a, b)| a + b).collect();
        let one_step = action_on_k0(&spec, &zw, &x).unwrap();
        let two_step =
            action_on_k0(&spec, &z, &action_on_k0(&spec, &w, &x).unwrap()).unwrap();
        assert_eq!(one_step, two_step);
    }

    #[test]
    fn localized_divisor_examples() {
        // N = 21, the column (-2/3, -6/7): divisor 2 after stripping.
        let r = ring(21);
        let m = LocalizedMatrix::from_fn(2, 1, |i, _| {
            if i == 0 {
                frac(&r, -2, 3)
            } else {
                frac(&r, -6, 7)
            }
        });
        assert_eq!(localized_divisors(&r, &m), vec![BigUint::from(2u32)]);

        // N = 6, the 1x1 matrix [12]: 12 is a unit times 1.
        let r = ring(6);
        let m = LocalizedMatrix::from_fn(1, 1, |_, _| LocalizedScalar::integer(BigInt::from(12)));
        assert_eq!(localized_divisors(&r, &m), vec![BigUint::one()]);

        // Identity: all divisors 1.
        let r = ring(10);
        let id = LocalizedMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                LocalizedScalar::one()
            } else {
                LocalizedScalar::zero()
            }
        });
        assert_eq!(localized_divisors(&r, &id), vec![BigUint::one(); 3]);
    }

    #[test]
    fn clearing_scales_by_a_unit() {
        let r = ring(6);
        let m = LocalizedMatrix::from_fn(1, 2, |_, j| {
            if j == 0 {
                frac(&r, 1, 2)
            } else {
                frac(&r, 5, 36)
            }
        });
        let cleared = m.clear_denominators(&r);
        // Common scale 6^2: (1/2, 5/36) -> (18, 5).
        assert_eq!(cleared, IntMatrix::from_rows(&[&[18, 5]]));
    }
}
