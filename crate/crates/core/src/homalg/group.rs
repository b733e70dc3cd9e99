use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::serde_int::JsonInt;

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`
/// with `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            invariant_factors: Vec::new(),
            free_rank: rank,
        }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = ±1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_orders([n.into()], 0)
    }

    /// Normalizes an arbitrary list of cyclic orders. Zeros count as free
    /// summands, units are dropped, signs are ignored.
    pub fn from_orders(orders: impl IntoIterator<Item = BigInt>, extra_free: usize) -> Self {
        let mut free_rank = extra_free;
        let mut torsion = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                torsion.push(o);
            }
        }
        // Pairwise (gcd, lcm) sweeps turn any list into a divisibility chain.
        let n = torsion.len();
        for i in 0..n {
            for j in i + 1..n {
                let g = torsion[i].gcd(&torsion[j]);
                let l = torsion[i].lcm(&torsion[j]);
                torsion[i] = g;
                torsion[j] = l;
            }
        }
        torsion.retain(|d| !d.is_one());
        FinAbGroup {
            invariant_factors: torsion,
            free_rank,
        }
    }

    /// Validating constructor for already-normalized data.
    pub fn new(invariant_factors: Vec<BigInt>, free_rank: usize) -> Result<Self> {
        for d in &invariant_factors {
            if d < &BigInt::from(2) {
                return Err(Error::Invalid(format!("invariant factor {d} must be >= 2")));
            }
        }
        for w in invariant_factors.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::Invalid(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(FinAbGroup {
            invariant_factors,
            free_rank,
        })
    }

    /// Cokernel of `m: Z^cols -> Z^rows`, i.e. `Z^rows / (column span)`.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        let diag = snf.diagonal();
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        Self::from_orders(diag.into_iter().filter(|d| !d.is_zero()), m.rows() - rank)
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, or `None` if it has a free part.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn torsion(&self) -> FinAbGroup {
        FinAbGroup {
            invariant_factors: self.invariant_factors.clone(),
            free_rank: 0,
        }
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        Self::from_orders(
            self.invariant_factors
                .iter()
                .chain(&other.invariant_factors)
                .cloned(),
            self.free_rank + other.free_rank,
        )
    }

    /// Parses the [`Display`](fmt::Display) form, e.g. `"Z^2 + Z/2 + Z/6"` or `"0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::trivial());
        }
        let mut orders = Vec::new();
        let mut free = 0usize;
        for term in text.split('+').map(str::trim) {
            if term == "Z" {
                free += 1;
            } else if let Some(exp) = term.strip_prefix("Z^") {
                free += exp
                    .parse::<usize>()
                    .map_err(|_| Error::Invalid(format!("bad group term {term:?}")))?;
            } else if let Some(n) = term.strip_prefix("Z/") {
                let n: BigInt = n
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad group term {term:?}")))?;
                orders.push(n);
            } else {
                return Err(Error::Invalid(format!("bad group term {term:?}")));
            }
        }
        let g = Self::from_orders(orders.clone(), free);
        if g.invariant_factors.len() != orders.len() || orders.iter().zip(&g.invariant_factors).any(|(a, b)| a != b) {
            return Err(Error::Invalid(format!("{text:?} is not in invariant-factor form")));
        }
        Ok(g)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    free_rank: usize,
    invariant_factors: Vec<JsonInt>,
}

impl Serialize for FinAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupRepr {
            free_rank: self.free_rank,
            invariant_factors: self.invariant_factors.iter().cloned().map(JsonInt).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GroupRepr::deserialize(d)?;
        FinAbGroup::new(r.invariant_factors.into_iter().map(|x| x.0).collect(), r.free_rank)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalization() {
        let g = FinAbGroup::from_orders(big(&[2, 3]), 0);
        assert_eq!(g.invariant_factors(), big(&[6]).as_slice());
        let g = FinAbGroup::from_orders(big(&[4, 6, 1, -1, 0]), 0);
        assert_eq!(g.invariant_factors(), big(&[2, 12]).as_slice());
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.order(), None);
        assert_eq!(g.torsion_order(), BigInt::from(24));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(FinAbGroup::cyclic(3).to_string(), "Z/3");
        assert_eq!(FinAbGroup::cyclic(0).to_string(), "Z");
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
        let g = FinAbGroup::from_orders(big(&[2, 2]), 2);
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/2");
        assert_eq!(FinAbGroup::parse("Z^2 + Z/2 + Z/2").unwrap(), g);
        assert!(FinAbGroup::parse("Z/2 + Z/3").is_err());
        assert!(FinAbGroup::parse("Q").is_err());
    }

    #[test]
    fn validating_constructor() {
        assert!(FinAbGroup::new(big(&[2, 4]), 0).is_ok());
        assert!(FinAbGroup::new(big(&[2, 3]), 0).is_err());
        assert!(FinAbGroup::new(big(&[1]), 0).is_err());
        let json = serde_json::to_string(&FinAbGroup::new(big(&[2, 4]), 1).unwrap()).unwrap();
        assert_eq!(json, r#"{"free_rank":1,"invariant_factors":[2,4]}"#);
        let back: FinAbGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_string(), "Z + Z/2 + Z/4");
    }

    #[test]
    fn cokernel_of_multiplication() {
        let m = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]).unwrap();
        assert_eq!(FinAbGroup::cokernel(&m), FinAbGroup::cyclic(6));
        assert_eq!(FinAbGroup::cokernel(&IntMatrix::zeros(2, 1)), FinAbGroup::free(2));
    }
}
