//! Affine partial bijections of `Z` modeling words in the isometries
//! `{s_n}` and the unitary `u`.
//!
//! The canonical action on basis labels sends `u` to `x -> x + 1` and
//! `s_n` to `x -> n*x`; adjoints invert on the image. Every monomial in
//! the generators is then an injective affine map `x -> slope*x + offset`
//! whose domain is a residue class (or the empty map), so operator
//! identities between orthogonal sums of monomials reduce to exact
//! identities of partial functions. Composition of residue-class domains
//! is a linear congruence, solved by gcd; equality of sums is decided by
//! refining all domains to a common modulus. No approximation anywhere.
//!
//! Leftmost letters of a word act last, as operators do.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::kgraph::{OdometerSpec, PathWord};
use crate::report::Report;
use crate::{Error, Result};

/// The residue class `{ x in Z : x = residue (mod modulus) }`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    modulus: BigUint,
    residue: BigUint,
}

impl ResidueClass {
    /// Normalizes the residue into `[0, modulus)`.
    pub fn new(modulus: BigUint, residue: BigInt) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::InvalidAffineMap("residue class with modulus 0".into()));
        }
        let m = BigInt::from(modulus.clone());
        let r = residue.mod_floor(&m).to_biguint().expect("floor remainder");
        Ok(ResidueClass { modulus, residue: r })
    }

    /// All of `Z`.
    pub fn integers() -> Self {
        ResidueClass { modulus: BigUint::one(), residue: BigUint::zero() }
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        let m = BigInt::from(self.modulus.clone());
        x.mod_floor(&m) == BigInt::from(self.residue.clone())
    }

    /// Classes are disjoint exactly when their residues differ modulo the
    /// gcd of the moduli.
    pub fn is_disjoint(&self, other: &ResidueClass) -> bool {
        let g = self.modulus.gcd(&other.modulus);
        self.residue.mod_floor(&g) != other.residue.mod_floor(&g)
    }
}

impl std::fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.modulus.is_one() {
            write!(f, "Z")
        } else {
            write!(f, "{} mod {}", self.residue, self.modulus)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct AffinePiece {
    slope: BigRational,
    offset: BigRational,
    domain: ResidueClass,
}

/// An injective affine partial map of `Z`, or the empty map.
///
/// Invariants of the nonempty case: the slope is positive,
/// `slope * modulus(domain)` is a positive integer (so the image is again
/// a residue class) and `slope * residue + offset` is an integer (so the
/// domain lands in `Z`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePartialMap {
    piece: Option<AffinePiece>,
}

impl AffinePartialMap {
    pub fn empty() -> Self {
        AffinePartialMap { piece: None }
    }

    /// The identity on all of `Z`.
    pub fn identity() -> Self {
        Self::translation(&BigInt::zero())
    }

    /// `u^z`, i.e. `x -> x + z` on all of `Z`.
    pub fn translation(z: &BigInt) -> Self {
        AffinePartialMap {
            piece: Some(AffinePiece {
                slope: BigRational::one(),
                offset: BigRational::from_integer(z.clone()),
                domain: ResidueClass::integers(),
            }),
        }
    }

    /// `s_n`, i.e. `x -> n*x` on all of `Z`.
    pub fn scaling(n: u64) -> Self {
        AffinePartialMap {
            piece: Some(AffinePiece {
                slope: BigRational::from_integer(BigInt::from(n)),
                offset: BigRational::zero(),
                domain: ResidueClass::integers(),
            }),
        }
    }

    pub fn new(slope: BigRational, offset: BigRational, domain: ResidueClass) -> Result<Self> {
        if !slope.is_positive() {
            return Err(Error::InvalidAffineMap(format!("slope {slope} is not positive")));
        }
        let m = BigRational::from_integer(BigInt::from(domain.modulus().clone()));
        if !(&slope * &m).is_integer() {
            return Err(Error::InvalidAffineMap(format!(
                "slope {slope} times modulus {} is not an integer",
                domain.modulus()
            )));
        }
        let r = BigRational::from_integer(BigInt::from(domain.residue().clone()));
        if !(&slope * &r + &offset).is_integer() {
            return Err(Error::InvalidAffineMap(format!(
                "map does not send {} into Z",
                domain
            )));
        }
        Ok(AffinePartialMap { piece: Some(AffinePiece { slope, offset, domain }) })
    }

    pub fn is_empty(&self) -> bool {
        self.piece.is_none()
    }

    pub fn slope(&self) -> Option<&BigRational> {
        self.piece.as_ref().map(|p| &p.slope)
    }

    pub fn offset(&self) -> Option<&BigRational> {
        self.piece.as_ref().map(|p| &p.offset)
    }

    pub fn domain(&self) -> Option<&ResidueClass> {
        self.piece.as_ref().map(|p| &p.domain)
    }

    /// The image, again a residue class: modulus `slope * d`, residue
    /// `slope * r + offset`.
    pub fn image(&self) -> Option<ResidueClass> {
        let p = self.piece.as_ref()?;
        let m = (&p.slope * BigRational::from_integer(BigInt::from(p.domain.modulus().clone())))
            .to_integer()
            .to_biguint()
            .expect("positive slope times positive modulus");
        let r = (&p.slope * BigRational::from_integer(BigInt::from(p.domain.residue().clone()))
            + &p.offset)
            .to_integer();
        Some(ResidueClass::new(m, r).expect("modulus positive"))
    }

    /// Evaluates at `x`, or `None` when `x` is outside the domain.
    pub fn apply(&self, x: &BigInt) -> Option<BigInt> {
        let p = self.piece.as_ref()?;
        if !p.domain.contains(x) {
            return None;
        }
        Some((&p.slope * BigRational::from_integer(x.clone()) + &p.offset).to_integer())
    }

    /// The composite `self . g` (apply `g` first), with domain
    /// `g^{-1}(dom(self) ∩ im(g))`. Exact; returns the empty map when the
    /// domains miss each other.
    pub fn compose(&self, g: &AffinePartialMap) -> AffinePartialMap {
        let (Some(f), Some(gp)) = (self.piece.as_ref(), g.piece.as_ref()) else {
            return AffinePartialMap::empty();
        };
        // Parametrize dom(g) as r + d*t; g lands on rho + m*t with
        // m = slope_g * d and rho = slope_g * r + offset_g (the exact
        // value, not reduced mod m, or the solution set below shifts).
        // Meeting dom(self) = r' mod d' means solving
        // m*t = r' - rho  (mod d').
        let d = BigInt::from(gp.domain.modulus().clone());
        let r = BigInt::from(gp.domain.residue().clone());
        let m = (&gp.slope * BigRational::from_integer(d.clone())).to_integer();
        let rho = (&gp.slope * BigRational::from_integer(r.clone()) + &gp.offset).to_integer();
        let d_f = BigInt::from(f.domain.modulus().clone());
        let r_f = BigInt::from(f.domain.residue().clone());

        let ext = m.extended_gcd(&d_f);
        let gcd = ext.gcd.clone();
        let target = &r_f - &rho;
        if !target.mod_floor(&gcd).is_zero() {
            return AffinePartialMap::empty();
        }
        let reduced_mod = (&d_f / &gcd).to_biguint().expect("positive");
        let t0 = if reduced_mod.is_one() {
            BigInt::zero()
        } else {
            let rm = BigInt::from(reduced_mod.clone());
            // ext.x is the Bezout coefficient of m: m*x = gcd (mod d_f).
            ((&target / &gcd) * ext.x).mod_floor(&rm)
        };

        let new_modulus = gp.domain.modulus() * &reduced_mod;
        let new_residue = &r + &d * &t0;
        let domain = ResidueClass::new(new_modulus, new_residue).expect("positive modulus");

        let slope = &f.slope * &gp.slope;
        let offset = &f.slope * &gp.offset + &f.offset;
        AffinePartialMap::new(slope, offset, domain)
            .expect("composite of valid affine maps is valid")
    }

    /// The inverse partial map; involutive.
    pub fn adjoint(&self) -> AffinePartialMap {
        let Some(p) = self.piece.as_ref() else {
            return AffinePartialMap::empty();
        };
        let image = self.image().expect("nonempty map has an image");
        let slope = p.slope.recip();
        let offset = -(&p.offset / &p.slope);
        AffinePartialMap::new(slope, offset, image).expect("inverse of a valid map is valid")
    }
}

impl std::fmt::Display for AffinePartialMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.piece {
            None => write!(f, "0"),
            Some(p) => write!(f, "x -> {}x + {} on {}", p.slope, p.offset, p.domain),
        }
    }
}

/// A letter of a word in the generators and their adjoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    U,
    UStar,
    S(u64),
    SStar(u64),
}

/// A word in the generators; the leftmost letter acts last.
pub type Word = Vec<Letter>;

/// The canonical model of a single letter.
pub fn eval_letter(letter: Letter) -> AffinePartialMap {
    match letter {
        Letter::U => AffinePartialMap::translation(&BigInt::one()),
        Letter::UStar => AffinePartialMap::translation(&BigInt::from(-1)),
        Letter::S(n) => AffinePartialMap::scaling(n),
        Letter::SStar(n) => AffinePartialMap::scaling(n).adjoint(),
    }
}

/// Evaluates a word by composing letters so that the leftmost acts last.
pub fn eval_word(word: &[Letter]) -> AffinePartialMap {
    word.iter()
        .fold(AffinePartialMap::identity(), |acc, &l| acc.compose(&eval_letter(l)))
}

/// The formal adjoint of a word: reverse and star each letter.
pub fn word_adjoint(word: &[Letter]) -> Word {
    word.iter()
        .rev()
        .map(|&l| match l {
            Letter::U => Letter::UStar,
            Letter::UStar => Letter::U,
            Letter::S(n) => Letter::SStar(n),
            Letter::SStar(n) => Letter::S(n),
        })
        .collect()
}

/// A finite orthogonal sum of affine partial maps: the summands must have
/// pairwise disjoint domains and pairwise disjoint images, so the sum is
/// again a partial bijection of `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSum {
    summands: Vec<AffinePartialMap>,
}

impl MapSum {
    /// Drops empty summands and rejects overlapping ones.
    pub fn new(summands: Vec<AffinePartialMap>) -> Result<Self> {
        let summands: Vec<_> = summands.into_iter().filter(|m| !m.is_empty()).collect();
        for i in 0..summands.len() {
            for j in i + 1..summands.len() {
                let di = summands[i].domain().expect("nonempty");
                let dj = summands[j].domain().expect("nonempty");
                if !di.is_disjoint(dj) {
                    return Err(Error::NotPartialIsometry(format!(
                        "domains {di} and {dj} overlap"
                    )));
                }
                let ii = summands[i].image().expect("nonempty");
                let ij = summands[j].image().expect("nonempty");
                if !ii.is_disjoint(&ij) {
                    return Err(Error::NotPartialIsometry(format!(
                        "images {ii} and {ij} overlap"
                    )));
                }
            }
        }
        Ok(MapSum { summands })
    }

    pub fn singleton(map: AffinePartialMap) -> Self {
        MapSum { summands: if map.is_empty() { vec![] } else { vec![map] } }
    }

    pub fn identity() -> Self {
        MapSum::singleton(AffinePartialMap::identity())
    }

    pub fn summands(&self) -> &[AffinePartialMap] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Refines every domain to the least common modulus and lists, per
    /// residue, the affine piece acting there.
    fn refined(&self, modulus: &BigUint) -> BTreeMap<BigUint, (BigRational, BigRational)> {
        let mut table = BTreeMap::new();
        for m in &self.summands {
            let p = m.piece.as_ref().expect("nonempty");
            let d = p.domain.modulus();
            let steps = modulus / d;
            let steps = num_traits::ToPrimitive::to_u64(&steps).expect("refinement fits u64");
            for j in 0..steps {
                let rep = p.domain.residue() + d * BigUint::from(j);
                let prior = table.insert(rep, (p.slope.clone(), p.offset.clone()));
                debug_assert!(prior.is_none(), "disjointness enforced at construction");
            }
        }
        table
    }

    /// Exact equality as partial functions on `Z`.
    pub fn sum_equal(&self, other: &MapSum) -> bool {
        let mut l = BigUint::one();
        for m in self.summands.iter().chain(&other.summands) {
            l = l.lcm(m.domain().expect("nonempty").modulus());
        }
        self.refined(&l) == other.refined(&l)
    }
}

/// Validates and normalizes a generator set: nonempty, every entry at
/// least 2, returned sorted without duplicates.
fn normalize_generator_set(s: &[u64]) -> Result<Vec<u64>> {
    if s.is_empty() {
        return Err(Error::InvalidGeneratorSet("empty set".into()));
    }
    if let Some(&bad) = s.iter().find(|&&n| n < 2) {
        return Err(Error::InvalidGeneratorSet(format!("{bad} is below 2")));
    }
    let mut out = s.to_vec();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Checks the three defining relations of the isometry presentation in the
/// canonical model, for every pair from `s`:
/// (1) `s_n s_m = s_m s_n`, (2) `s_n u = u^n s_n`, and (3) the images of
/// `u^i s_n` for `0 <= i < n` are exactly the residue classes mod `n`,
/// which partition `Z` and make the range projections sum to the identity.
pub fn verify_qs_relations(s: &[u64]) -> Result<Report> {
    let s = normalize_generator_set(s)?;
    let mut report = Report::new();

    let mut commute_cx = None;
    for &n in &s {
        for &m in &s {
            let lhs = eval_word(&[Letter::S(n), Letter::S(m)]);
            let rhs = eval_word(&[Letter::S(m), Letter::S(n)]);
            if !MapSum::singleton(lhs).sum_equal(&MapSum::singleton(rhs)) && commute_cx.is_none()
            {
                commute_cx = Some(format!("n={n}, m={m}"));
            }
        }
    }
    report.check(
        "relation (1) commuting isometries",
        format!("all ordered pairs from {{{}}}", join(&s)),
        commute_cx,
    );

    let mut shift_cx = None;
    for &n in &s {
        let lhs = eval_word(&[Letter::S(n), Letter::U]);
        let mut word = vec![Letter::U; n as usize];
        word.push(Letter::S(n));
        let rhs = eval_word(&word);
        if !MapSum::singleton(lhs).sum_equal(&MapSum::singleton(rhs)) && shift_cx.is_none() {
            shift_cx = Some(format!("n={n}"));
        }
    }
    report.check(
        "relation (2) shift intertwining",
        format!("s_n u = u^n s_n for n in {{{}}}", join(&s)),
        shift_cx,
    );

    let mut unit_cx = None;
    for &n in &s {
        let mut projections = Vec::new();
        for i in 0..n {
            let isometry = AffinePartialMap::translation(&BigInt::from(i))
                .compose(&AffinePartialMap::scaling(n));
            let expected = ResidueClass::new(BigUint::from(n), BigInt::from(i)).unwrap();
            if isometry.image() != Some(expected) {
                unit_cx.get_or_insert_with(|| format!("n={n}, i={i}: unexpected range"));
            }
            projections.push(isometry.compose(&isometry.adjoint()));
        }
        match MapSum::new(projections) {
            Ok(sum) => {
                if !sum.sum_equal(&MapSum::identity()) {
                    unit_cx.get_or_insert_with(|| format!("n={n}: projections do not sum to 1"));
                }
            }
            Err(e) => {
                unit_cx.get_or_insert_with(|| format!("n={n}: {e}"));
            }
        }
    }
    report.check(
        "relation (3) range projections resolve the identity",
        format!("ranges of u^i s_n partition Z for n in {{{}}}", join(&s)),
        unit_cx,
    );

    Ok(report)
}

/// Checks that `s_n* u^z s_n` is the empty map exactly when `n` does not
/// divide `z`, and equals `u^{z/n}` otherwise.
pub fn verify_lemma46(n: u64, z: i64) -> Result<Report> {
    if n < 2 {
        return Err(Error::InvalidGeneratorSet(format!("{n} is below 2")));
    }
    let mut report = Report::new();
    let composite = AffinePartialMap::scaling(n)
        .adjoint()
        .compose(&AffinePartialMap::translation(&BigInt::from(z)))
        .compose(&AffinePartialMap::scaling(n));
    let divisible = z.rem_euclid(n as i64) == 0;
    let cx = if divisible {
        let expected = AffinePartialMap::translation(&BigInt::from(z / n as i64));
        (composite != expected).then(|| format!("n={n}, z={z}: expected u^{}", z / n as i64))
    } else {
        (!composite.is_empty()).then(|| format!("n={n}, z={z}: expected the zero map"))
    };
    report.check(
        "compressed powers of the unitary",
        format!("s_{n}* u^{z} s_{n} is {}", if divisible { "a power of u" } else { "zero" }),
        cx,
    );
    Ok(report)
}

/// Checks `s_n* s_m = sum over l in nZ ∩ mZ, 0 <= l < nm` of
/// `u^{l/n} s_m s_n* u^{-l/m}`, with exactly `gcd(n, m)` nonempty
/// summands with pairwise disjoint domains and images.
pub fn verify_prop47(n: u64, m: u64) -> Result<Report> {
    if n < 2 || m < 2 {
        return Err(Error::InvalidGeneratorSet(format!("{} is below 2", n.min(m))));
    }
    let mut report = Report::new();
    let lhs = MapSum::singleton(
        AffinePartialMap::scaling(n).adjoint().compose(&AffinePartialMap::scaling(m)),
    );

    let lcm = n.lcm(&m);
    let mut summands = Vec::new();
    for l in (0..n * m).step_by(lcm as usize) {
        let piece = AffinePartialMap::translation(&BigInt::from(l / n))
            .compose(&AffinePartialMap::scaling(m))
            .compose(&AffinePartialMap::scaling(n).adjoint())
            .compose(&AffinePartialMap::translation(&-BigInt::from(l / m)));
        summands.push(piece);
    }

    match MapSum::new(summands) {
        Ok(rhs) => {
            let expected = n.gcd(&m) as usize;
            report.check(
                "summand count",
                format!("gcd({n},{m}) = {expected} nonempty orthogonal summands"),
                (rhs.len() != expected)
                    .then(|| format!("got {} nonempty summands", rhs.len())),
            );
            report.check(
                "adjoint exchange identity",
                format!("s_{n}* s_{m} equals the orthogonal sum"),
                (!lhs.sum_equal(&rhs)).then(|| format!("n={n}, m={m}")),
            );
        }
        Err(e) => {
            report.fail(
                "adjoint exchange identity",
                format!("s_{n}* s_{m}"),
                format!("summands not orthogonal: {e}"),
            );
        }
    }
    Ok(report)
}

/// The path `mu` as an affine map: `x -> weight(d(mu)) * x + value(mu)`.
///
/// Multiplicative: composing paths composes the maps.
pub fn kgraph_generator(spec: &OdometerSpec, mu: &PathWord) -> AffinePartialMap {
    let w = spec.weight(mu.degree()).expect("path from this spec");
    AffinePartialMap::new(
        BigRational::from_integer(BigInt::from(w)),
        BigRational::from_integer(BigInt::from(mu.value().clone())),
        ResidueClass::integers(),
    )
    .expect("weights are positive")
}

/// Checks the covariance relation `u^g T_mu = T_{g.mu} u^{g|_mu}` in the
/// affine model, with the action and restriction computed by the k-graph.
pub fn verify_covariance(spec: &OdometerSpec, g: &BigInt, mu: &PathWord) -> Report {
    let mut report = Report::new();
    let lhs = AffinePartialMap::translation(g).compose(&kgraph_generator(spec, mu));
    let (moved, rest) = spec.act(g, mu);
    let rhs = kgraph_generator(spec, &moved).compose(&AffinePartialMap::translation(&rest));
    report.check(
        "covariance",
        format!("g = {g}, mu = {mu}"),
        (lhs != rhs).then(|| format!("lhs {lhs} != rhs {rhs}")),
    );
    report
}

/// Cross-checks the two presentations on the canonical model.
///
/// With `s` enumerated increasingly as the moduli of a rank-`|s|` spec:
/// the edge images `u^digit s_{n_color}` must satisfy the single-vertex
/// k-graph relations (range resolutions, the commutation squares and the
/// shift rule), the path images `T_{edge(i, 0)}` together with `u` must
/// satisfy the three isometry relations, and the two translations must
/// fix every generator.
pub fn verify_dictionary(s: &[u64]) -> Result<Report> {
    let s = normalize_generator_set(s)?;
    let spec = OdometerSpec::new(s.clone())?;
    let k = spec.rank();
    let mut report = Report::new();

    // pi sends the edge x^i_digit to u^digit s_{n_i}.
    let pi_edge = |color: usize, digit: u64| -> AffinePartialMap {
        AffinePartialMap::translation(&BigInt::from(digit))
            .compose(&eval_letter(Letter::S(s[color - 1])))
    };

    let mut resolve_cx = None;
    for color in 1..=k {
        let n = s[color - 1];
        let projections: Vec<_> =
            (0..n).map(|d| pi_edge(color, d).compose(&pi_edge(color, d).adjoint())).collect();
        match MapSum::new(projections) {
            Ok(sum) if sum.sum_equal(&MapSum::identity()) => {}
            _ => {
                resolve_cx.get_or_insert_with(|| format!("color {color}"));
            }
        }
    }
    report.check(
        "edge images resolve the identity",
        "sum over digits of T T* per color",
        resolve_cx,
    );

    let mut square_cx = None;
    for i in 1..=k {
        for j in i + 1..=k {
            let (ni, nj) = (s[i - 1], s[j - 1]);
            for fs in 0..ni {
                for ft in 0..nj {
                    let c = fs + ft * ni;
                    let (tp, sp) = (c % nj, c / nj);
                    let lhs = pi_edge(i, fs).compose(&pi_edge(j, ft));
                    let rhs = pi_edge(j, tp).compose(&pi_edge(i, sp));
                    if lhs != rhs {
                        square_cx.get_or_insert_with(|| {
                            format!("colors ({i},{j}), digits ({fs},{ft})")
                        });
                    }
                }
            }
        }
    }
    report.check(
        "edge images satisfy the commutation squares",
        "s + t*n_i = t' + s'*n_j exchanges match",
        square_cx,
    );

    let mut shift_cx = None;
    for color in 1..=k {
        let n = s[color - 1];
        for digit in 0..n {
            let lhs = AffinePartialMap::translation(&BigInt::one()).compose(&pi_edge(color, digit));
            let rhs = if digit < n - 1 {
                pi_edge(color, digit + 1)
            } else {
                pi_edge(color, 0).compose(&AffinePartialMap::translation(&BigInt::one()))
            };
            if lhs != rhs {
                shift_cx.get_or_insert_with(|| format!("color {color}, digit {digit}"));
            }
        }
    }
    report.check(
        "edge images satisfy the shift rule",
        "u T_{x_s} is T_{x_{s+1}}, wrapping to T_{x_0} u",
        shift_cx,
    );

    // rho sends s_{n_i} to T_{edge(i, 0)} and u to the translation by 1.
    let rho_s = |color: usize| kgraph_generator(&spec, &spec.edge(color, 0).expect("valid edge"));
    let rho_u = AffinePartialMap::translation(&BigInt::one());

    let mut rho_cx = None;
    for i in 1..=k {
        for j in 1..=k {
            if rho_s(i).compose(&rho_s(j)) != rho_s(j).compose(&rho_s(i)) {
                rho_cx.get_or_insert_with(|| format!("(1) colors ({i},{j})"));
            }
        }
        let n = s[i - 1];
        let mut u_pow = AffinePartialMap::identity();
        for _ in 0..n {
            u_pow = u_pow.compose(&rho_u);
        }
        if rho_s(i).compose(&rho_u) != u_pow.compose(&rho_s(i)) {
            rho_cx.get_or_insert_with(|| format!("(2) color {i}"));
        }
        let projections: Vec<_> = (0..n)
            .map(|d| {
                let iso = AffinePartialMap::translation(&BigInt::from(d)).compose(&rho_s(i));
                iso.compose(&iso.adjoint())
            })
            .collect();
        match MapSum::new(projections) {
            Ok(sum) if sum.sum_equal(&MapSum::identity()) => {}
            _ => {
                rho_cx.get_or_insert_with(|| format!("(3) color {i}"));
            }
        }
    }
    report.check(
        "path images satisfy the isometry relations",
        "images of s_n and u under the reverse translation",
        rho_cx,
    );

    let mut fix_cx = None;
    for color in 1..=k {
        let n = s[color - 1];
        for digit in 0..n {
            // rho(pi(t_{x_digit})) = u^digit T_{edge(color, 0)}.
            let round = AffinePartialMap::translation(&BigInt::from(digit)).compose(&rho_s(color));
            let original = kgraph_generator(&spec, &spec.edge(color, digit).expect("valid edge"));
            if round != original {
                fix_cx.get_or_insert_with(|| format!("rho.pi at color {color}, digit {digit}"));
            }
        }
        // pi(rho(s_{n_color})) = u^0 s_{n_color}.
        if pi_edge(color, 0) != eval_letter(Letter::S(n)) {
            fix_cx.get_or_insert_with(|| format!("pi.rho at color {color}"));
        }
    }
    report.check("round trips fix the generators", "rho.pi and pi.rho", fix_cx);

    Ok(report)
}

fn join(s: &[u64]) -> String {
    s.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgraph::Degree;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn class(modulus: u64, residue: i64) -> ResidueClass {
        ResidueClass::new(BigUint::from(modulus), BigInt::from(residue)).unwrap()
    }

    #[test]
    fn eval_letter_examples() {
        let u = eval_letter(Letter::U);
        assert_eq!(u.slope().unwrap(), &rational(1, 1));
        assert_eq!(u.offset().unwrap(), &rational(1, 1));
        assert_eq!(u.domain().unwrap(), &ResidueClass::integers());

        let s3 = eval_letter(Letter::S(3));
        assert_eq!(s3.slope().unwrap(), &rational(3, 1));
        assert_eq!(s3.offset().unwrap(), &rational(0, 1));
        assert_eq!(s3.domain().unwrap(), &ResidueClass::integers());

        let s3s = eval_letter(Letter::SStar(3));
        assert_eq!(s3s.slope().unwrap(), &rational(1, 3));
        assert_eq!(s3s.offset().unwrap(), &rational(0, 1));
        assert_eq!(s3s.domain().unwrap(), &class(3, 0));
    }

    #[test]
    fn compose_examples() {
        // s_2* u s_2 = 0: 2x + 1 is never even.
        let m = eval_word(&[Letter::SStar(2), Letter::U, Letter::S(2)]);
        assert!(m.is_empty());

        // s_2* u^2 s_2 = u.
        let m = eval_word(&[Letter::SStar(2), Letter::U, Letter::U, Letter::S(2)]);
        assert_eq!(m, eval_letter(Letter::U));

        // Composition with the empty map absorbs.
        let f = eval_letter(Letter::S(5));
        assert!(f.compose(&AffinePartialMap::empty()).is_empty());
        assert!(AffinePartialMap::empty().compose(&f).is_empty());
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(eval_letter(Letter::S(3)).adjoint(), eval_letter(Letter::SStar(3)));

        let m = eval_word(&[Letter::U, Letter::S(2), Letter::SStar(6)]);
        assert_eq!(m.adjoint().adjoint(), m);

        // adjoint of x -> 2x + 3 is x -> (x - 3)/2 on the odd class.
        let m = eval_word(&[Letter::U, Letter::U, Letter::U, Letter::S(2)]);
        let adj = m.adjoint();
        assert_eq!(adj.slope().unwrap(), &rational(1, 2));
        assert_eq!(adj.offset().unwrap(), &rational(-3, 2));
        assert_eq!(adj.domain().unwrap(), &class(2, 1));
        assert_eq!(adj.apply(&BigInt::from(7)), Some(BigInt::from(2)));
        assert_eq!(adj.apply(&BigInt::from(8)), None);
    }

    #[test]
    fn eval_word_examples() {
        assert!(eval_word(&[Letter::SStar(2), Letter::U, Letter::S(2)]).is_empty());
        assert_eq!(eval_word(&[]), AffinePartialMap::identity());

        let m = eval_word(&[Letter::U, Letter::S(2)]);
        assert_eq!(m.slope().unwrap(), &rational(2, 1));
        assert_eq!(m.offset().unwrap(), &rational(1, 1));
        assert_eq!(m.domain().unwrap(), &ResidueClass::integers());
    }

    #[test]
    fn translation_matches_letter_powers() {
        for z in -6i64..=6 {
            let word: Word = if z >= 0 {
                vec![Letter::U; z as usize]
            } else {
                vec![Letter::UStar; (-z) as usize]
            };
            assert_eq!(eval_word(&word), AffinePartialMap::translation(&BigInt::from(z)));
        }
    }

    #[test]
    fn sum_equal_examples() {
        let a = MapSum::singleton(eval_word(&[Letter::S(2), Letter::S(3)]));
        let b = MapSum::singleton(eval_word(&[Letter::S(3), Letter::S(2)]));
        assert!(a.sum_equal(&b));

        let a = MapSum::singleton(eval_word(&[Letter::U, Letter::S(2)]));
        let b = MapSum::singleton(eval_word(&[Letter::S(2), Letter::U]));
        assert!(!a.sum_equal(&b));

        let a = MapSum::singleton(eval_word(&[Letter::S(2), Letter::U]));
        let b = MapSum::singleton(eval_word(&[Letter::U, Letter::U, Letter::S(2)]));
        assert!(a.sum_equal(&b));
    }

    #[test]
    fn map_sum_rejects_overlaps() {
        let overlap = MapSum::new(vec![AffinePartialMap::identity(), AffinePartialMap::identity()]);
        assert!(matches!(overlap, Err(Error::NotPartialIsometry(_))));
    }

    #[test]
    fn relations_hold_in_the_model() {
        for s in [&[2u64, 3][..], &[4, 6], &[2, 3, 5], &[12]] {
            let report = verify_qs_relations(s).unwrap();
            assert!(report.passed(), "relations failed for {s:?}:\n{report}");
        }
        assert!(verify_qs_relations(&[]).is_err());
        assert!(verify_qs_relations(&[1, 2]).is_err());
    }

    #[test]
    fn relation_three_ranges_partition() {
        // For n = 3 the ranges are exactly 3Z, 3Z+1, 3Z+2.
        for i in 0..3u64 {
            let iso = AffinePartialMap::translation(&BigInt::from(i))
                .compose(&AffinePartialMap::scaling(3));
            assert_eq!(iso.image().unwrap(), class(3, i as i64));
        }
    }

    #[test]
    fn lemma46_examples() {
        assert!(verify_lemma46(2, 1).unwrap().passed());
        assert!(verify_lemma46(3, -4).unwrap().passed());
        assert!(verify_lemma46(3, 6).unwrap().passed());

        // Direct checks of the two branches.
        let m = eval_word(&[Letter::SStar(2), Letter::U, Letter::S(2)]);
        assert!(m.is_empty());
        let mut word = vec![Letter::SStar(3)];
        word.extend(vec![Letter::U; 6]);
        word.push(Letter::S(3));
        assert_eq!(eval_word(&word), AffinePartialMap::translation(&BigInt::from(2)));
    }

    #[test]
    fn prop47_examples() {
        // n = 2, m = 3: single summand, x -> 3x/2 on the even class.
        let report = verify_prop47(2, 3).unwrap();
        assert!(report.passed(), "{report}");
        let lhs = eval_letter(Letter::SStar(2)).compose(&eval_letter(Letter::S(3)));
        assert_eq!(lhs.slope().unwrap(), &rational(3, 2));
        assert_eq!(lhs.domain().unwrap(), &class(2, 0));

        // n = m = 2: two summands assembling the identity.
        let report = verify_prop47(2, 2).unwrap();
        assert!(report.passed(), "{report}");
        let lhs = eval_letter(Letter::SStar(2)).compose(&eval_letter(Letter::S(2)));
        assert_eq!(lhs, AffinePartialMap::identity());

        // Non-coprime pair.
        assert!(verify_prop47(4, 6).unwrap().passed());
    }

    #[test]
    fn kgraph_generator_examples() {
        let spec = OdometerSpec::new(vec![2, 3]).unwrap();
        let m = kgraph_generator(&spec, &spec.edge(2, 2).unwrap());
        assert_eq!(m.slope().unwrap(), &rational(3, 1));
        assert_eq!(m.offset().unwrap(), &rational(2, 1));

        assert_eq!(kgraph_generator(&spec, &spec.vertex()), AffinePartialMap::identity());

        let mu = spec.path(Degree::new(vec![1, 1]), BigUint::from(5u32)).unwrap();
        let m = kgraph_generator(&spec, &mu);
        assert_eq!(m.slope().unwrap(), &rational(6, 1));
        assert_eq!(m.offset().unwrap(), &rational(5, 1));
    }

    #[test]
    fn kgraph_generator_is_multiplicative() {
        let spec = OdometerSpec::new(vec![2, 3]).unwrap();
        let a = spec.edge(1, 1).unwrap();
        let b = spec.edge(2, 2).unwrap();
        let ab = spec.compose(&a, &b);
        assert_eq!(
            kgraph_generator(&spec, &ab),
            kgraph_generator(&spec, &a).compose(&kgraph_generator(&spec, &b))
        );
    }

    #[test]
    fn covariance_examples() {
        let spec = OdometerSpec::new(vec![2, 3]).unwrap();
        let mu = spec.path(Degree::new(vec![1, 1]), BigUint::from(5u32)).unwrap();
        assert!(verify_covariance(&spec, &BigInt::one(), &mu).passed());
        assert!(verify_covariance(&spec, &BigInt::zero(), &mu).passed());

        let spec = OdometerSpec::new(vec![2]).unwrap();
        let mu = spec.edge(1, 0).unwrap();
        assert!(verify_covariance(&spec, &BigInt::from(3), &mu).passed());
        // Both sides are x -> 2x + 3 here.
        let lhs =
            AffinePartialMap::translation(&BigInt::from(3)).compose(&kgraph_generator(&spec, &mu));
        assert_eq!(lhs.slope().unwrap(), &rational(2, 1));
        assert_eq!(lhs.offset().unwrap(), &rational(3, 1));
    }

    #[test]
    fn dictionary_examples() {
        for s in [&[2u64, 3][..], &[3, 7], &[2, 3, 5]] {
            let report = verify_dictionary(s).unwrap();
            assert!(report.passed(), "dictionary failed for {s:?}:\n{report}");
        }

        // pi(t_{x^1_1}) = u s_2 is x -> 2x + 1 and rho.pi fixes it.
        let m = eval_word(&[Letter::U, Letter::S(2)]);
        let spec = OdometerSpec::new(vec![2, 3]).unwrap();
        assert_eq!(m, kgraph_generator(&spec, &spec.edge(1, 1).unwrap()));

        // Wrap case of the shift rule for n = 2, s = 1.
        let lhs = eval_word(&[Letter::U, Letter::U, Letter::S(2)]);
        let rhs = eval_word(&[Letter::S(2), Letter::U]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_semigroup_identity_on_samples() {
        let words: [&[Letter]; 5] = [
            &[Letter::S(2), Letter::U, Letter::SStar(3)],
            &[Letter::SStar(2), Letter::U, Letter::S(2)],
            &[Letter::U, Letter::U, Letter::S(4), Letter::SStar(6)],
            &[Letter::SStar(5)],
            &[],
        ];
        for w in words {
            let www: Word = w
                .iter()
                .copied()
                .chain(word_adjoint(w))
                .chain(w.iter().copied())
                .collect();
            assert_eq!(eval_word(&www), eval_word(w), "w w* w != w for {w:?}");
        }
    }
}
