use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::FinAbGroup;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::serde_int::{self, JsonInt};

/// A bounded cochain complex of free lattices `Z^{r_i}` with integer-matrix
/// differentials `d^i: Z^{r_i} -> Z^{r_{i+1}}` (matrices of shape
/// `r_{i+1} x r_i`, acting on column vectors).
///
/// Construction checks the shapes and `d^{i+1} d^i = 0`, so every value of
/// this type is a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZComplex {
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
}

impl ZComplex {
    pub fn new(lo: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Invalid("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::Shape(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[k + 1], ranks[k]) {
                return Err(Error::Shape(format!(
                    "d^{} is {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.rows(),
                    d.cols(),
                    ranks[k + 1],
                    ranks[k]
                )));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !(&diffs[k + 1] * &diffs[k]).is_zero() {
                return Err(Error::NotAComplex { degree: lo + k as i64 });
            }
        }
        Ok(ZComplex { lo, ranks, diffs })
    }

    pub fn zero() -> Self {
        ZComplex {
            lo: 0,
            ranks: vec![0],
            diffs: Vec::new(),
        }
    }

    /// `Z^rank` placed in a single degree.
    pub fn concentrated(degree: i64, rank: usize) -> Self {
        ZComplex {
            lo: degree,
            ranks: vec![rank],
            diffs: Vec::new(),
        }
    }

    /// `Z^{cols} --m--> Z^{rows}` in degrees `degree, degree + 1`.
    pub fn two_term(degree: i64, m: IntMatrix) -> Self {
        ZComplex {
            lo: degree,
            ranks: vec![m.cols(), m.rows()],
            diffs: vec![m],
        }
    }

    /// `[Z --n--> Z]` in degrees `-1, 0`, a free resolution of `Z/n` in degree 0.
    pub fn cyclic_resolution(n: impl Into<BigInt>) -> Self {
        Self::two_term(-1, IntMatrix::scalar(1, n))
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn rank(&self, i: i64) -> usize {
        self.index(i).map_or(0, |k| self.ranks[k])
    }

    /// `d^i`, with the zero matrix of the right shape outside the stored range.
    pub fn differential(&self, i: i64) -> IntMatrix {
        match self.index(i) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => IntMatrix::zeros(self.rank(i + 1), self.rank(i)),
        }
    }

    fn index(&self, i: i64) -> Option<usize> {
        (self.lo..=self.hi()).contains(&i).then(|| (i - self.lo) as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// `H^i = ker d^i / im d^{i-1}`; trivial outside the degree range.
    ///
    /// `ker d^i` is a saturated sublattice, so the torsion of `H^i` is read off
    /// the non-unit Smith invariants of `d^{i-1}`.
    pub fn cohomology(&self, i: i64) -> FinAbGroup {
        let n = self.rank(i);
        if n == 0 {
            return FinAbGroup::trivial();
        }
        let rank_out = self.differential(i).rank();
        let incoming = smith_normal_form(&self.differential(i - 1)).diagonal();
        let rank_in = incoming.iter().filter(|d| !d.is_zero()).count();
        FinAbGroup::from_orders(
            incoming.into_iter().filter(|d| !d.is_zero()),
            n - rank_out - rank_in,
        )
    }

    /// Nontrivial cohomology groups in increasing degree.
    pub fn cohomology_all(&self) -> Vec<(i64, FinAbGroup)> {
        self.degrees()
            .map(|i| (i, self.cohomology(i)))
            .filter(|(_, g)| !g.is_trivial())
            .collect()
    }

    /// `C[k]`, with `C[k]^i = C^{i+k}` and differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> ZComplex {
        let diffs = if k.rem_euclid(2) == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(IntMatrix::neg).collect()
        };
        ZComplex {
            lo: self.lo - k,
            ranks: self.ranks.clone(),
            diffs,
        }
    }

    pub fn direct_sum(&self, other: &ZComplex) -> ZComplex {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let ranks = (lo..=hi).map(|i| self.rank(i) + other.rank(i)).collect();
        let diffs = (lo..hi)
            .map(|i| self.differential(i).block_diag(&other.differential(i)))
            .collect();
        ZComplex { lo, ranks, diffs }
    }

    /// `C ⊗^L Z/j`, realized as the cone of `j: C -> C`.
    ///
    /// The cone has `T^i = C^{i+1} ⊕ C^i` and `d(a, b) = (-d a, j a + d b)`;
    /// it equals the total complex of `C ⊗ [Z --j--> Z]` with the two-term
    /// complex in degrees `-1, 0`.
    pub fn derived_mod(&self, j: i64) -> Result<ZComplex> {
        if j < 1 {
            return Err(Error::ZeroModulus(j));
        }
        if self.is_zero() {
            return Ok(ZComplex::zero());
        }
        let jj = BigInt::from(j);
        let lo = self.lo - 1;
        let hi = self.hi();
        let ranks: Vec<usize> = (lo..=hi).map(|i| self.rank(i + 1) + self.rank(i)).collect();
        let diffs = (lo..hi)
            .map(|i| {
                let (a, b, c) = (self.rank(i + 1), self.rank(i), self.rank(i + 2));
                let mut m = IntMatrix::zeros(c + a, a + b);
                m.set_block(0, 0, &self.differential(i + 1).neg());
                m.set_block(c, 0, &IntMatrix::scalar(a, jj.clone()));
                m.set_block(c, a, &self.differential(i));
                m
            })
            .collect();
        ZComplex::new(lo, ranks, diffs)
    }

    /// `χ×(C) = ∏ |H^i(C)|^{(-1)^i}`.
    pub fn euler_mult(&self) -> Result<BigRational> {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in self.degrees() {
            let h = self.cohomology(i);
            let Some(order) = h.order() else {
                return Err(Error::NonTorsion {
                    degree: i,
                    rank: h.free_rank(),
                });
            };
            if i.rem_euclid(2) == 0 {
                num *= order;
            } else {
                den *= order;
            }
        }
        Ok(BigRational::new(num, den))
    }

    /// `Σ (-1)^i rank C^i`.
    pub fn euler_rank(&self) -> i64 {
        self.degrees()
            .map(|i| {
                let r = self.rank(i) as i64;
                if i.rem_euclid(2) == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }

    /// Largest absolute value among all differential entries.
    pub fn max_abs_entry(&self) -> BigInt {
        self.diffs
            .iter()
            .map(IntMatrix::max_abs_entry)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// `j^e` as an exact rational; negative exponents give reciprocals.
pub fn rational_power(j: i64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(j));
    if e >= 0 {
        Pow::pow(base, e as u64)
    } else {
        Pow::pow(base.recip(), e.unsigned_abs())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultAddReport {
    #[serde(with = "serde_int::rational")]
    pub lhs: BigRational,
    #[serde(with = "serde_int::rational")]
    pub rhs: BigRational,
    pub equal: bool,
}

/// Compares `χ×(C ⊗^L Z/j)` (cone + Smith form) with `j^{Σ(-1)^i rank C^i}`.
pub fn lemma_multadd_check(c: &ZComplex, j: i64) -> Result<MultAddReport> {
    let lhs = c.derived_mod(j)?.euler_mult()?;
    let rhs = rational_power(j, c.euler_rank());
    Ok(MultAddReport {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Random complex over `degrees` consecutive degrees starting at `lo`, ranks
/// in `0..=max_rank`, differential entries in `[-bound, bound]`.
///
/// Each later differential is a small random combination of the left-kernel
/// rows of the previous one, retried until its entries fit the bound; if no
/// draw fits it is set to zero.
pub fn random_complex<R: Rng + ?Sized>(
    rng: &mut R,
    lo: i64,
    degrees: usize,
    max_rank: usize,
    bound: i64,
) -> ZComplex {
    let ranks: Vec<usize> = (0..degrees).map(|_| rng.random_range(0..=max_rank)).collect();
    let mut diffs: Vec<IntMatrix> = Vec::with_capacity(degrees.saturating_sub(1));
    let bound_big = BigInt::from(bound);
    for k in 0..degrees.saturating_sub(1) {
        let (src, dst) = (ranks[k], ranks[k + 1]);
        let d = match diffs.last() {
            None => random_matrix(rng, dst, src, bound),
            Some(prev) => {
                let kernel = left_kernel(prev);
                let mut chosen = IntMatrix::zeros(dst, src);
                if kernel.rows() > 0 {
                    for _ in 0..50 {
                        let mix = random_matrix(rng, dst, kernel.rows(), 1);
                        let cand = &mix * &kernel;
                        if cand.max_abs_entry() <= bound_big {
                            chosen = cand;
                            break;
                        }
                    }
                }
                chosen
            }
        };
        diffs.push(d);
    }
    ZComplex::new(lo, ranks, diffs).expect("random construction yields a complex")
}

fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.random_range(-bound..=bound)))
        .collect();
    IntMatrix::from_vec(rows, cols, entries).expect("entry count matches")
}

/// Rows spanning `{ y : y m = 0 }` over Z.
fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let n = m.rows();
    let rows: Vec<Vec<BigInt>> = (r..n).map(|i| snf.u.row(i).to_vec()).collect();
    IntMatrix::from_rows_with_cols(&rows, n).expect("rows of U have length n")
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    degrees: [i64; 2],
    #[serde(default)]
    ranks: BTreeMap<String, usize>,
    #[serde(default)]
    diffs: BTreeMap<String, Vec<Vec<JsonInt>>>,
}

impl Serialize for ZComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let ranks = self.degrees().map(|i| (i.to_string(), self.rank(i))).collect();
        let diffs = self
            .degrees()
            .take(self.diffs.len())
            .map(|i| {
                let rows = self
                    .differential(i)
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(JsonInt).collect())
                    .collect();
                (i.to_string(), rows)
            })
            .collect();
        ComplexRepr {
            degrees: [self.lo, self.hi()],
            ranks,
            diffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ComplexRepr::deserialize(d)?;
        let [lo, hi] = repr.degrees;
        if hi < lo {
            return Err(D::Error::custom(format!("empty degree range [{lo}, {hi}]")));
        }
        let mut ranks = BTreeMap::new();
        for (k, r) in repr.ranks {
            let deg: i64 = k.trim().parse().map_err(D::Error::custom)?;
            if !(lo..=hi).contains(&deg) {
                return Err(D::Error::custom(format!("rank given for degree {deg} outside [{lo}, {hi}]")));
            }
            ranks.insert(deg, r);
        }
        let rank = |i: i64| ranks.get(&i).copied().unwrap_or(0);
        let mut diffs: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        for (k, rows) in repr.diffs {
            let deg: i64 = k.trim().parse().map_err(D::Error::custom)?;
            if !(lo..hi).contains(&deg) {
                return Err(D::Error::custom(format!("differential d^{deg} outside [{lo}, {hi})")));
            }
            let rows: Vec<Vec<BigInt>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x.0).collect())
                .collect();
            let m = if rows.is_empty() {
                IntMatrix::zeros(0, rank(deg))
            } else {
                IntMatrix::from_rows_with_cols(&rows, rank(deg)).map_err(D::Error::custom)?
            };
            diffs.insert(deg, m);
        }
        let diff_list = (lo..hi)
            .map(|i| diffs.remove(&i).unwrap_or_else(|| IntMatrix::zeros(rank(i + 1), rank(i))))
            .collect();
        ZComplex::new(lo, (lo..=hi).map(rank).collect(), diff_list).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cohomology_examples() {
        let c = ZComplex::two_term(0, m(&[vec![2]]));
        assert_eq!(c.cohomology(0), FinAbGroup::trivial());
        assert_eq!(c.cohomology(1), FinAbGroup::cyclic(2));

        let c = ZComplex::two_term(0, m(&[vec![0]]));
        assert_eq!(c.cohomology(0), FinAbGroup::free(1));

        let c = ZComplex::two_term(0, m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(c.cohomology(1), FinAbGroup::cyclic(6));
        assert_eq!(c.cohomology(7), FinAbGroup::trivial());
        assert_eq!(c.cohomology(-1), FinAbGroup::trivial());
    }

    #[test]
    fn construction_rejects_non_complexes() {
        let d0 = m(&[vec![1]]);
        let d1 = m(&[vec![1]]);
        assert_eq!(
            ZComplex::new(0, vec![1, 1, 1], vec![d0, d1]),
            Err(Error::NotAComplex { degree: 0 })
        );
        assert!(matches!(
            ZComplex::new(0, vec![1, 2], vec![m(&[vec![1]])]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn derived_mod_examples() {
        let c = ZComplex::concentrated(0, 1).derived_mod(5).unwrap();
        assert_eq!(c.cohomology_all(), vec![(0, FinAbGroup::cyclic(5))]);

        // Tor_1(Z/2, Z/4) = Z/2 in degree -1
        let c = ZComplex::cyclic_resolution(2).derived_mod(4).unwrap();
        assert_eq!(
            c.cohomology_all(),
            vec![(-1, FinAbGroup::cyclic(2)), (0, FinAbGroup::cyclic(2))]
        );

        assert!(ZComplex::zero().derived_mod(3).unwrap().is_zero());
        assert_eq!(ZComplex::zero().derived_mod(0), Err(Error::ZeroModulus(0)));
    }

    #[test]
    fn euler_characteristics() {
        // H^0 = Z/6, H^1 = Z/2
        let c = ZComplex::two_term(0, m(&[vec![6]]))
            .shift(1)
            .direct_sum(&ZComplex::two_term(0, m(&[vec![2]])));
        assert_eq!(c.cohomology(0), FinAbGroup::cyclic(6));
        assert_eq!(c.cohomology(1), FinAbGroup::cyclic(2));
        assert_eq!(c.euler_mult().unwrap(), q(3, 1));

        assert_eq!(ZComplex::zero().euler_mult().unwrap(), q(1, 1));
        assert_eq!(ZComplex::cyclic_resolution(BigInt::from(3).pow(4u32)).euler_mult().unwrap(), q(81, 1));
        assert_eq!(
            ZComplex::concentrated(0, 1).euler_mult(),
            Err(Error::NonTorsion { degree: 0, rank: 1 })
        );

        assert_eq!(ZComplex::concentrated(0, 1).euler_rank(), 1);
        assert_eq!(ZComplex::two_term(0, m(&[vec![2]])).euler_rank(), 0);
        assert_eq!(ZComplex::concentrated(2, 3).euler_rank(), 3);
    }

    #[test]
    fn lemma_examples() {
        let r = lemma_multadd_check(&ZComplex::concentrated(0, 1), 7).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.equal), (q(7, 1), q(7, 1), true));

        let r = lemma_multadd_check(&ZComplex::cyclic_resolution(5), 3).unwrap();
        assert_eq!((r.lhs.clone(), r.equal), (q(1, 1), true));

        let c = ZComplex::new(0, vec![1, 1], vec![IntMatrix::zeros(1, 1)]).unwrap();
        let r = lemma_multadd_check(&c, 4).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.equal), (q(1, 1), q(1, 1), true));
    }

    #[test]
    fn json_shape() {
        let c = ZComplex::two_term(0, m(&[vec![2]]));
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"degrees":[0,1],"ranks":{"0":1,"1":1},"diffs":{"0":[[2]]}}"#);
        let back: ZComplex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);

        // Missing diffs are zero; zero-row matrices keep their column count.
        let c: ZComplex = serde_json::from_str(r#"{"degrees":[-1,1],"ranks":{"-1":2,"1":1}}"#).unwrap();
        assert_eq!(c.differential(-1).shape(), (0, 2));
        assert_eq!(c.cohomology(-1), FinAbGroup::free(2));

        let bad = r#"{"degrees":[0,2],"ranks":{"0":1,"1":1,"2":1},"diffs":{"0":[[1]],"1":[[1]]}}"#;
        assert!(serde_json::from_str::<ZComplex>(bad).is_err());
    }

    #[test]
    fn random_complexes_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let c = random_complex(&mut rng, -1, 3, 4, 9);
            assert!(c.max_abs_entry() <= BigInt::from(9));
            assert_eq!(c.degrees(), -1..=1);
        }
    }
}
