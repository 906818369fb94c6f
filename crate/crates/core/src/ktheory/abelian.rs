//! Finitely generated abelian groups in invariant-factor form.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t` with `d_1 | d_2 | ... | d_t` and
/// every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigUint>) -> Result<Self> {
        for d in &invariant_factors {
            if d.is_zero() || d.is_one() {
                return Err(Error::NotInvariantChain(format!("factor {d} is below 2")));
            }
        }
        for pair in invariant_factors.windows(2) {
            if !pair[1].mod_floor(&pair[0]).is_zero() {
                return Err(Error::NotInvariantChain(format!(
                    "{} does not divide {}",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(AbelianGroup { free_rank, invariant_factors })
    }

    /// Builds from raw elementary divisors, dropping unit factors.
    pub fn from_divisors(free_rank: usize, divisors: &[BigUint]) -> Result<Self> {
        Self::new(free_rank, divisors.iter().filter(|d| !d.is_one()).cloned().collect())
    }

    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, invariant_factors: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, invariant_factors: Vec::new() }
    }

    /// `(Z/d)^copies`, the trivial group when `d <= 1`.
    pub fn cyclic_power(d: u64, copies: usize) -> Self {
        if d <= 1 {
            AbelianGroup::trivial()
        } else {
            AbelianGroup { free_rank: 0, invariant_factors: vec![BigUint::from(d); copies] }
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn torsion_order(&self) -> BigUint {
        self.invariant_factors.iter().product()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let run = self.invariant_factors[i..].iter().take_while(|e| *e == d).count();
            if run == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

// The wire form is {"free_rank": n, "torsion": [d1, ...]} with factors as
// plain numbers whenever they fit u64, decimal strings otherwise.
impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Factor {
            Small(u64),
            Big(String),
        }
        let torsion: Vec<Factor> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_u64().map_or_else(|| Factor::Big(d.to_string()), Factor::Small))
            .collect();
        let mut s = serializer.serialize_struct("AbelianGroup", 2)?;
        s.serialize_field("free_rank", &self.free_rank)?;
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Factor {
            Small(u64),
            Big(String),
        }
        #[derive(Deserialize)]
        struct Wire {
            free_rank: usize,
            torsion: Vec<Factor>,
        }
        let wire = Wire::deserialize(deserializer)?;
        let factors = wire
            .torsion
            .into_iter()
            .map(|f| match f {
                Factor::Small(d) => Ok(BigUint::from(d)),
                Factor::Big(s) => {
                    s.parse::<BigUint>().map_err(|e| D::Error::custom(e.to_string()))
                }
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        AbelianGroup::new(wire.free_rank, factors).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_is_validated() {
        assert!(AbelianGroup::new(0, vec![BigUint::from(2u32), BigUint::from(6u32)]).is_ok());
        assert!(AbelianGroup::new(0, vec![BigUint::from(4u32), BigUint::from(6u32)]).is_err());
        assert!(AbelianGroup::new(0, vec![BigUint::one()]).is_err());
        assert!(AbelianGroup::new(0, vec![BigUint::zero()]).is_err());
    }

    #[test]
    fn from_divisors_drops_units() {
        let g = AbelianGroup::from_divisors(
            1,
            &[BigUint::one(), BigUint::one(), BigUint::from(3u32)],
        )
        .unwrap();
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.invariant_factors(), &[BigUint::from(3u32)]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        assert_eq!(AbelianGroup::free(4).to_string(), "Z^4");
        assert_eq!(AbelianGroup::cyclic_power(2, 1).to_string(), "Z/2");
        assert_eq!(AbelianGroup::cyclic_power(3, 2).to_string(), "(Z/3)^2");
        assert_eq!(AbelianGroup::cyclic_power(1, 5).to_string(), "0");
        let mixed = AbelianGroup::new(
            2,
            vec![BigUint::from(2u32), BigUint::from(2u32), BigUint::from(12u32)],
        )
        .unwrap();
        assert_eq!(mixed.to_string(), "Z^2 ⊕ (Z/2)^2 ⊕ Z/12");
    }

    #[test]
    fn serde_round_trip() {
        let g = AbelianGroup::new(3, vec![BigUint::from(2u32), BigUint::from(4u32)]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"free_rank":3,"torsion":[2,4]}"#);
        let back: AbelianGroup = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }
}
