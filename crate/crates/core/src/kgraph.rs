//! The standard product of odometers as a single-vertex k-graph.
//!
//! Fix moduli `n_1, ..., n_k`, all at least 2. The k-graph has one vertex
//! and, for each color `i`, edges `x^i_0, ..., x^i_{n_i - 1}` of degree
//! `e_i`. A path of degree `p` is encoded as a single integer in
//! `[0, n_1^{p_1} ... n_k^{p_k})`; composition is
//!
//! ```text
//! value(mu nu) = value(mu) + value(nu) * weight(d(mu)),
//! ```
//!
//! which for a pair of single edges reduces to the standard commutation
//! rule `s + t*n_i = t' + s'*n_j`. Under this encoding unique factorization
//! is integer div/mod and the additive group `Z` acts by add-with-carry:
//! `g` sends the path of value `v` to the one of value `(v + g) mod W`,
//! and the restriction cocycle `g|_mu` is the carry `floor((v + g) / W)`.
//!
//! All arithmetic is arbitrary precision; weights grow exponentially in
//! the degree.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::report::{Report, RngInfo};
use crate::{Error, Result};

/// The acting group is `Z`; restrictions (carries) live here too.
pub type GroupElement = BigInt;

/// A multidegree, i.e. an element of `N^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn new(entries: Vec<u32>) -> Self {
        Degree(entries)
    }

    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    /// The standard basis vector `e_color` (1-based color).
    pub fn basis(k: usize, color: usize) -> Result<Self> {
        if color == 0 || color > k {
            return Err(Error::InvalidColor { color, rank: k });
        }
        let mut v = vec![0; k];
        v[color - 1] = 1;
        Ok(Degree(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Degree) -> Degree {
        assert_eq!(self.len(), other.len(), "degree rank mismatch");
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, when defined.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if self.len() != other.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Degree)
    }

    /// Componentwise `<=`.
    pub fn leq(&self, other: &Degree) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A morphism of the k-graph: its degree plus its mixed-radix value.
///
/// Constructed only through [`OdometerSpec`], which guarantees
/// `value < weight(degree)` (and hence `value = 0` for the vertex).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    degree: Degree,
    value: BigUint,
}

impl PathWord {
    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn is_vertex(&self) -> bool {
        self.degree.is_zero()
    }
}

impl std::fmt::Display for PathWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.degree, self.value)
    }
}

/// The moduli `(n_1, ..., n_k)` of a standard product of odometers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdometerSpec {
    moduli: Vec<u64>,
}

impl OdometerSpec {
    /// Requires a nonempty finite list with every `n_i >= 2`.
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidModuli("moduli list is empty".into()));
        }
        if let Some(&bad) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidModuli(format!("modulus {bad} is below 2")));
        }
        Ok(OdometerSpec { moduli })
    }

    /// The rank `k`.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// The modulus `n_color` (1-based color).
    pub fn modulus(&self, color: usize) -> Result<u64> {
        if color == 0 || color > self.rank() {
            return Err(Error::InvalidColor { color, rank: self.rank() });
        }
        Ok(self.moduli[color - 1])
    }

    /// `N = n_1 ... n_k`, the inverted element of the K-theory localization.
    pub fn total_modulus(&self) -> BigUint {
        self.moduli.iter().map(|&n| BigUint::from(n)).product()
    }

    /// `gcd { n_i - 1 }`, the torsion order of the conjectured K-groups.
    pub fn g_lambda(&self) -> u64 {
        self.moduli.iter().map(|&n| n - 1).fold(0, |a, b| a.gcd(&b))
    }

    /// The number of paths of degree `p`, i.e. `prod n_i^{p_i}`.
    pub fn weight(&self, p: &Degree) -> Result<BigUint> {
        if p.len() != self.rank() {
            return Err(Error::InvalidDegree { expected: self.rank(), got: p.len() });
        }
        let mut w = BigUint::one();
        for (&n, &e) in self.moduli.iter().zip(p.entries()) {
            w *= BigUint::from(n).pow(e);
        }
        Ok(w)
    }

    /// The unique vertex.
    pub fn vertex(&self) -> PathWord {
        PathWord { degree: Degree::zero(self.rank()), value: BigUint::zero() }
    }

    /// The edge `x^color_digit`.
    pub fn edge(&self, color: usize, digit: u64) -> Result<PathWord> {
        let n = self.modulus(color)?;
        if digit >= n {
            return Err(Error::InvalidDigit { color, digit, modulus: n });
        }
        Ok(PathWord { degree: Degree::basis(self.rank(), color)?, value: BigUint::from(digit) })
    }

    /// A path from its degree and value, validated against the weight.
    pub fn path(&self, degree: Degree, value: BigUint) -> Result<PathWord> {
        let w = self.weight(&degree)?;
        if value >= w {
            return Err(Error::InvalidValue(format!(
                "value {value} is not below weight {w} of degree {degree}"
            )));
        }
        Ok(PathWord { degree, value })
    }

    /// Enumerates all paths of degree `p` in value order.
    pub fn paths_of_degree(&self, p: &Degree) -> Result<impl Iterator<Item = PathWord> + '_> {
        let w = self
            .weight(p)?
            .to_u64()
            .ok_or_else(|| Error::InvalidValue("degree too large to enumerate".into()))?;
        let p = p.clone();
        Ok((0..w).map(move |v| PathWord { degree: p.clone(), value: BigUint::from(v) }))
    }

    /// Composition `mu nu`. Always defined: there is a single vertex.
    pub fn compose(&self, mu: &PathWord, nu: &PathWord) -> PathWord {
        let w_mu = self.weight(mu.degree()).expect("path from this spec");
        PathWord {
            degree: mu.degree().add(nu.degree()),
            value: mu.value() + nu.value() * w_mu,
        }
    }

    /// The unique pair `(alpha, beta)` with `d(alpha) = a` and
    /// `mu = alpha beta`.
    pub fn factorize(&self, mu: &PathWord, a: &Degree) -> Result<(PathWord, PathWord)> {
        if !a.leq(mu.degree()) {
            return Err(Error::InvalidSplit(format!(
                "split {a} is not dominated by degree {}",
                mu.degree()
            )));
        }
        let w_a = self.weight(a)?;
        let (quot, rem) = mu.value().div_rem(&w_a);
        let alpha = PathWord { degree: a.clone(), value: rem };
        let beta = PathWord {
            degree: mu.degree().checked_sub(a).expect("checked above"),
            value: quot,
        };
        Ok((alpha, beta))
    }

    /// Splits `mu` into single edges along `order`, which must list each
    /// color `i` exactly `d_i(mu)` times. Composing the edges back in the
    /// same order returns `mu`.
    pub fn digits(&self, mu: &PathWord, order: &[usize]) -> Result<Vec<(usize, u64)>> {
        let mut counts = vec![0u32; self.rank()];
        for &c in order {
            if c == 0 || c > self.rank() {
                return Err(Error::InvalidColor { color: c, rank: self.rank() });
            }
            counts[c - 1] += 1;
        }
        if counts != mu.degree().entries() {
            return Err(Error::InvalidOrder(format!(
                "order has color counts ({}) but the path has degree {}",
                counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
                mu.degree()
            )));
        }
        let mut rest = mu.clone();
        let mut out = Vec::with_capacity(order.len());
        for &c in order {
            let (edge, tail) = self.factorize(&rest, &Degree::basis(self.rank(), c)?)?;
            out.push((c, edge.value().to_u64().expect("digit below modulus")));
            rest = tail;
        }
        Ok(out)
    }

    /// The odometer action: returns `(g . mu, g|_mu)`.
    ///
    /// `g . mu` has value `(value + g) mod W` with the Euclidean remainder
    /// in `[0, W)`, and the restriction is the carry `floor((value + g)/W)`.
    pub fn act(&self, g: &GroupElement, mu: &PathWord) -> (PathWord, GroupElement) {
        let w = BigInt::from(self.weight(mu.degree()).expect("path from this spec"));
        let shifted = BigInt::from(mu.value().clone()) + g;
        let (carry, rem) = shifted.div_mod_floor(&w);
        let value = rem.to_biguint().expect("floor remainder is nonnegative");
        (PathWord { degree: mu.degree().clone(), value }, carry)
    }

    /// Samples the seven self-similarity conditions on random data.
    ///
    /// Degrees are capped componentwise (default cap 3 via
    /// [`OdometerSpec::check_axioms`]); `g, h` are drawn from
    /// `[-W, W]` where `W` is the weight of the composite degree, so
    /// multi-carry cases are exercised. Failures are report entries with a
    /// counterexample, not errors.
    pub fn check_axioms_with_cap(&self, samples: u64, seed: u64, degree_cap: u32) -> Report {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut report = Report::with_rng(RngInfo::chacha12(seed));

        // One slot per condition; first counterexample wins.
        let mut failures: [Option<String>; 7] = Default::default();

        for _ in 0..samples {
            let mu = self.sample_path(&mut rng, degree_cap);
            let nu = self.sample_path(&mut rng, degree_cap);
            let w = BigInt::from(
                self.weight(&mu.degree().add(nu.degree())).expect("sampled degree"),
            );
            let g = sample_int_in(&mut rng, &w);
            let h = sample_int_in(&mut rng, &w);

            let (g_mu, g_rest_mu) = self.act(&g, &mu);

            // (1) the action preserves degrees
            if g_mu.degree() != mu.degree() {
                note(&mut failures, 0, || format!("g={g}, mu={mu}"));
            }
            // (2) sources and ranges are equivariant (single vertex)
            if self.act(&g, &self.vertex()).0 != self.vertex() {
                note(&mut failures, 1, || format!("g={g}"));
            }
            // (3) g.(mu nu) = (g.mu)(g|_mu . nu)
            let lhs = self.act(&g, &self.compose(&mu, &nu)).0;
            let rhs = self.compose(&g_mu, &self.act(&g_rest_mu, &nu).0);
            if lhs != rhs {
                note(&mut failures, 2, || format!("g={g}, mu={mu}, nu={nu}"));
            }
            // (4) g|_v = g
            if self.act(&g, &self.vertex()).1 != g {
                note(&mut failures, 3, || format!("g={g}"));
            }
            // (5) g|_(mu nu) = (g|_mu)|_nu
            let rest_composite = self.act(&g, &self.compose(&mu, &nu)).1;
            let rest_iterated = self.act(&g_rest_mu, &nu).1;
            if rest_composite != rest_iterated {
                note(&mut failures, 4, || format!("g={g}, mu={mu}, nu={nu}"));
            }
            // (6) the identity acts trivially with trivial restriction
            let (zero_mu, zero_rest) = self.act(&BigInt::zero(), &mu);
            if zero_mu != mu || !zero_rest.is_zero() {
                note(&mut failures, 5, || format!("mu={mu}"));
            }
            // (7) (gh)|_mu = g|_(h.mu) h|_mu, and the action composes
            let (h_mu, h_rest) = self.act(&h, &mu);
            let (gh_mu, gh_rest) = self.act(&(&g + &h), &mu);
            let (g_h_mu, g_rest_at) = self.act(&g, &h_mu);
            if gh_rest != &g_rest_at + &h_rest || gh_mu != g_h_mu {
                note(&mut failures, 6, || format!("g={g}, h={h}, mu={mu}"));
            }
        }

        let names = [
            "degree preservation",
            "vertex equivariance",
            "composition rule",
            "vertex restriction",
            "cocycle multiplicativity",
            "identity element",
            "cocycle chain rule",
        ];
        for (idx, name) in names.iter().enumerate() {
            report.check(
                format!("axiom ({}) {}", idx + 1, name),
                format!("{samples} samples, degree cap {degree_cap}"),
                failures[idx].clone(),
            );
        }
        report
    }

    /// [`check_axioms_with_cap`](Self::check_axioms_with_cap) with the
    /// default componentwise degree cap of 3.
    pub fn check_axioms(&self, samples: u64, seed: u64) -> Report {
        self.check_axioms_with_cap(samples, seed, 3)
    }

    fn sample_path(&self, rng: &mut ChaCha12Rng, degree_cap: u32) -> PathWord {
        let degree =
            Degree::new((0..self.rank()).map(|_| rng.random_range(0..=degree_cap)).collect());
        let w = self.weight(&degree).expect("sampled degree");
        PathWord { degree, value: sample_uint_below(rng, &w) }
    }
}

fn note(failures: &mut [Option<String>; 7], idx: usize, cx: impl FnOnce() -> String) {
    if failures[idx].is_none() {
        failures[idx] = Some(cx());
    }
}

/// Uniform `BigUint` in `[0, bound)` by rejection on the top chunk.
pub(crate) fn sample_uint_below(rng: &mut ChaCha12Rng, bound: &BigUint) -> BigUint {
    if bound.is_one() || bound.is_zero() {
        return BigUint::zero();
    }
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    loop {
        let mut digits = vec![0u32; words];
        for d in digits.iter_mut() {
            *d = rng.random();
        }
        // Mask the top word down to the bit length of the bound.
        let top_bits = bits - 32 * (words as u64 - 1);
        if top_bits < 32 {
            digits[words - 1] &= (1u32 << top_bits) - 1;
        }
        let candidate = BigUint::new(digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Uniform `BigInt` in `[-bound, bound]`.
pub(crate) fn sample_int_in(rng: &mut ChaCha12Rng, bound: &BigInt) -> BigInt {
    let span = BigUint::from(2u32) * bound.magnitude() + BigUint::one();
    BigInt::from(sample_uint_below(rng, &span)) - bound
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(moduli: &[u64]) -> OdometerSpec {
        OdometerSpec::new(moduli.to_vec()).unwrap()
    }

    fn path(s: &OdometerSpec, degree: &[u32], value: u64) -> PathWord {
        s.path(Degree::new(degree.to_vec()), BigUint::from(value)).unwrap()
    }

    /// Independent oracle: derives the degree-(1,1) composition table of a
    /// rank-2 spec from the commutation rule `s + t*n_1 = t' + s'*n_2`
    /// alone, with paths written as formal edge pairs.
    fn commutation_table(n1: u64, n2: u64) -> Vec<((u64, u64), (u64, u64))> {
        let mut pairs = Vec::new();
        for s in 0..n1 {
            for t in 0..n2 {
                let c = s + t * n1;
                let mut matched = None;
                for tp in 0..n2 {
                    for sp in 0..n1 {
                        if c == tp + sp * n2 {
                            assert!(matched.is_none(), "rule must match uniquely");
                            matched = Some((tp, sp));
                        }
                    }
                }
                pairs.push(((s, t), matched.expect("rule always matches")));
            }
        }
        pairs
    }

    #[test]
    fn constructor_rejects_bad_moduli() {
        assert!(OdometerSpec::new(vec![]).is_err());
        assert!(OdometerSpec::new(vec![2, 1]).is_err());
        assert!(OdometerSpec::new(vec![0]).is_err());
        assert!(OdometerSpec::new(vec![2, 3]).is_ok());
    }

    #[test]
    fn weight_examples() {
        let s = spec(&[2, 3]);
        assert_eq!(s.weight(&Degree::new(vec![1, 1])).unwrap(), BigUint::from(6u32));
        assert_eq!(s.weight(&Degree::new(vec![0, 0])).unwrap(), BigUint::one());
        let s = spec(&[3, 7]);
        assert_eq!(s.weight(&Degree::new(vec![2, 1])).unwrap(), BigUint::from(63u32));
        assert!(matches!(
            s.weight(&Degree::new(vec![1])),
            Err(Error::InvalidDegree { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn edge_examples() {
        let s = spec(&[2, 3]);
        let e = s.edge(1, 1).unwrap();
        assert_eq!(e.degree().entries(), &[1, 0]);
        assert_eq!(e.value(), &BigUint::one());
        let e = s.edge(2, 2).unwrap();
        assert_eq!(e.degree().entries(), &[0, 1]);
        assert_eq!(e.value(), &BigUint::from(2u32));
        let s = spec(&[5]);
        let e = s.edge(1, 0).unwrap();
        assert_eq!(e.degree().entries(), &[1]);
        assert!(e.value().is_zero());
        assert!(matches!(s.edge(1, 5), Err(Error::InvalidDigit { .. })));
        assert!(matches!(s.edge(2, 0), Err(Error::InvalidColor { .. })));
    }

    #[test]
    fn compose_matches_commutation_rule() {
        let s = spec(&[2, 3]);
        let a = s.compose(&s.edge(1, 1).unwrap(), &s.edge(2, 2).unwrap());
        assert_eq!(a, path(&s, &[1, 1], 5));
        let b = s.compose(&s.edge(2, 2).unwrap(), &s.edge(1, 1).unwrap());
        assert_eq!(b, path(&s, &[1, 1], 5));

        // Full table from the independent oracle: x^1_s x^2_t = x^2_t' x^1_s'.
        for ((fs, ft), (tp, sp)) in commutation_table(2, 3) {
            let lhs = s.compose(&s.edge(1, fs).unwrap(), &s.edge(2, ft).unwrap());
            let rhs = s.compose(&s.edge(2, tp).unwrap(), &s.edge(1, sp).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn compose_with_vertex_is_identity() {
        let s = spec(&[2, 3]);
        let mu = path(&s, &[2, 1], 7);
        assert_eq!(s.compose(&mu, &s.vertex()), mu);
        assert_eq!(s.compose(&s.vertex(), &mu), mu);
    }

    #[test]
    fn factorize_examples() {
        let s = spec(&[2, 3]);
        let mu = path(&s, &[1, 1], 5);
        let (a, b) = s.factorize(&mu, &Degree::basis(2, 1).unwrap()).unwrap();
        assert_eq!(a, s.edge(1, 1).unwrap());
        assert_eq!(b, s.edge(2, 2).unwrap());

        let (a, b) = s.factorize(&mu, &Degree::basis(2, 2).unwrap()).unwrap();
        assert_eq!(a, s.edge(2, 2).unwrap());
        assert_eq!(b, s.edge(1, 1).unwrap());

        let (a, b) = s.factorize(&mu, &Degree::zero(2)).unwrap();
        assert_eq!(a, s.vertex());
        assert_eq!(b, mu);

        assert!(matches!(
            s.factorize(&mu, &Degree::new(vec![2, 0])),
            Err(Error::InvalidSplit(_))
        ));
    }

    #[test]
    fn digits_examples() {
        let s = spec(&[2, 3]);
        let mu = path(&s, &[1, 1], 5);
        assert_eq!(s.digits(&mu, &[1, 2]).unwrap(), vec![(1, 1), (2, 2)]);
        assert_eq!(s.digits(&mu, &[2, 1]).unwrap(), vec![(2, 2), (1, 1)]);
        assert_eq!(s.digits(&s.vertex(), &[]).unwrap(), vec![]);
        assert!(matches!(s.digits(&mu, &[1, 1]), Err(Error::InvalidOrder(_))));

        // Recomposition returns mu for every admissible order.
        for order in [[1usize, 2], [2, 1]] {
            let ds = s.digits(&mu, &order).unwrap();
            let recomposed = ds
                .iter()
                .fold(s.vertex(), |acc, &(c, d)| s.compose(&acc, &s.edge(c, d).unwrap()));
            assert_eq!(recomposed, mu);
        }
    }

    #[test]
    fn act_examples() {
        let s = spec(&[2, 3]);
        let mu = path(&s, &[1, 1], 5);
        let (shifted, rest) = s.act(&BigInt::one(), &mu);
        assert_eq!(shifted, path(&s, &[1, 1], 0));
        assert_eq!(rest, BigInt::one());

        let (same, rest) = s.act(&BigInt::zero(), &mu);
        assert_eq!(same, mu);
        assert!(rest.is_zero());

        let zero = path(&s, &[1, 1], 0);
        let (back, rest) = s.act(&BigInt::from(-1), &zero);
        assert_eq!(back, path(&s, &[1, 1], 5));
        assert_eq!(rest, BigInt::from(-1));
    }

    #[test]
    fn act_single_edge_matches_definition() {
        // 1 . x^i_s = x^i_{(s+1) mod n_i}, with carry exactly at s = n_i - 1.
        for &n in &[2u64, 3, 5, 9] {
            let s = spec(&[n]);
            for digit in 0..n {
                let (e, rest) = s.act(&BigInt::one(), &s.edge(1, digit).unwrap());
                assert_eq!(e, s.edge(1, (digit + 1) % n).unwrap());
                let expected = if digit == n - 1 { BigInt::one() } else { BigInt::zero() };
                assert_eq!(rest, expected);
            }
        }
    }

    #[test]
    fn hand_carry_chain_rule() {
        // spec (2,), g = h = 1, mu = x_1: (g+h)|_mu = g|_(h.mu) + h|_mu.
        let s = spec(&[2]);
        let mu = s.edge(1, 1).unwrap();
        let (h_mu, h_rest) = s.act(&BigInt::one(), &mu);
        assert_eq!(h_mu, s.edge(1, 0).unwrap());
        assert_eq!(h_rest, BigInt::one());
        let (_, g_rest) = s.act(&BigInt::one(), &h_mu);
        assert!(g_rest.is_zero());
        let (_, gh_rest) = s.act(&BigInt::from(2), &mu);
        assert_eq!(gh_rest, &g_rest + &h_rest);
    }

    #[test]
    fn check_axioms_passes() {
        for moduli in [&[2u64, 3][..], &[2], &[4, 6], &[2, 3, 5]] {
            let report = spec(moduli).check_axioms(500, 42);
            assert!(report.passed(), "axioms failed for {moduli:?}:\n{report}");
            assert_eq!(report.sections.len(), 7);
        }
    }

    #[test]
    fn g_lambda_examples() {
        assert_eq!(spec(&[3, 7]).g_lambda(), 2);
        assert_eq!(spec(&[2, 9]).g_lambda(), 1);
        assert_eq!(spec(&[5, 9, 13]).g_lambda(), 4);
        assert_eq!(spec(&[6]).g_lambda(), 5);
    }

    #[test]
    fn g_lambda_coprime_to_total_modulus() {
        for moduli in [&[2u64, 3][..], &[3, 7], &[5, 9, 13], &[4, 6], &[17]] {
            let s = spec(moduli);
            let g = BigUint::from(s.g_lambda().max(1));
            assert!(g.gcd(&s.total_modulus()).is_one());
        }
    }

    #[test]
    fn action_permutes_each_degree_level() {
        let s = spec(&[2, 3]);
        let p = Degree::new(vec![1, 2]);
        let w = s.weight(&p).unwrap().to_u64().unwrap();
        for g in [-3i64, 1, 7, 18, -200] {
            let g = BigInt::from(g);
            let mut seen = vec![false; w as usize];
            for mu in s.paths_of_degree(&p).unwrap() {
                let v = s.act(&g, &mu).0.value().to_u64().unwrap() as usize;
                assert!(!seen[v], "collision under g = {g}");
                seen[v] = true;
            }
            assert!(seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn sample_uint_below_is_in_range() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let bound = BigUint::from(1_000_000_007u64) * BigUint::from(97u64);
        for _ in 0..200 {
            assert!(sample_uint_below(&mut rng, &bound) < bound);
        }
    }
}
