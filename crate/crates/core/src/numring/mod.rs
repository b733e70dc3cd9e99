//! Monogenic number rings `O_F = Z[x]/(f)`.
//!
//! Elements are integer coordinate vectors in the power basis
//! `1, θ, ..., θ^{d-1}`, so ideals and their quotients become integer matrices
//! and Smith forms. The different is the principal ideal `(f'(θ))`; that
//! `Z[θ]` is the full ring of integers is asserted by the caller, not checked.

pub mod poly;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homalg::{FinAbGroup, IntMatrix};
use crate::serde_int;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberRing {
    poly: Vec<BigInt>,
    disc: BigInt,
    label: Option<String>,
}

/// On-disk ring description: `{"poly": [c0, ..., c_{d-1}, 1], "label": "Q(i)"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    #[serde(with = "serde_int::bigint_vec")]
    pub poly: Vec<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl NumberRing {
    /// Validates `f` (monic, degree >= 1, irreducible) and records its discriminant.
    pub fn new(poly: Vec<BigInt>, label: Option<String>) -> Result<Self> {
        let poly = poly::trim(poly);
        let deg = poly::degree(&poly).ok_or(Error::ConstantPolynomial)?;
        if deg == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !poly[deg].is_one() {
            return Err(Error::NonMonic);
        }
        poly::check_irreducible(&poly)?;
        let disc = poly::discriminant(&poly);
        debug_assert!(!disc.is_zero());
        Ok(NumberRing { poly, disc, label })
    }

    pub fn from_coeffs(coeffs: &[i64], label: &str) -> Result<Self> {
        Self::new(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            Some(label.to_string()),
        )
    }

    pub fn from_spec(spec: RingSpec) -> Result<Self> {
        Self::new(spec.poly, spec.label)
    }

    pub fn to_spec(&self) -> RingSpec {
        RingSpec {
            poly: self.poly.clone(),
            label: self.label.clone(),
        }
    }

    /// `Z` as `Z[x]/(x)`.
    pub fn integers() -> Self {
        Self::from_coeffs(&[0, 1], "Q").expect("x is irreducible")
    }

    pub fn gaussian() -> Self {
        Self::from_coeffs(&[1, 0, 1], "Q(i)").expect("x^2+1 is irreducible")
    }

    /// The monogenic test fields used throughout: `Q`, `Q(i)`, `Q(√2)`,
    /// `Q(∛2)`, `Q(ζ_5)` and the cubic field of discriminant -23.
    pub fn catalogue() -> Vec<NumberRing> {
        [
            (&[0, 1][..], "Q"),
            (&[1, 0, 1], "Q(i)"),
            (&[-2, 0, 1], "Q(sqrt 2)"),
            (&[-2, 0, 0, 1], "Q(cbrt 2)"),
            (&[1, 1, 1, 1, 1], "Q(zeta_5)"),
            (&[-1, -1, 0, 1], "x^3-x-1"),
        ]
        .into_iter()
        .map(|(c, l)| Self::from_coeffs(c, l).expect("catalogue polynomials are irreducible"))
        .collect()
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_integers(&self) -> bool {
        self.degree() == 1
    }

    /// The integer `j` as a ring element.
    pub fn scalar(&self, j: impl Into<BigInt>) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.degree()];
        v[0] = j.into();
        v
    }

    /// `f'(θ)` in the power basis; generates the different.
    pub fn different_generator(&self) -> Vec<BigInt> {
        poly::derivative(&self.poly)
    }

    /// `θ · v`, reducing `θ^d = -(c_0 + ... + c_{d-1} θ^{d-1})`.
    fn times_theta(&self, v: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        let top = v[d - 1].clone();
        (0..d)
            .map(|i| {
                let shifted = if i == 0 { BigInt::zero() } else { v[i - 1].clone() };
                shifted - &top * &self.poly[i]
            })
            .collect()
    }

    fn check_element(&self, a: &[BigInt]) -> Result<()> {
        if a.len() != self.degree() {
            return Err(Error::ElementLength {
                expected: self.degree(),
                got: a.len(),
            });
        }
        Ok(())
    }

    /// Matrix of `x ↦ a·x` on the power basis; column `k` holds `a·θ^k`.
    pub fn mul_matrix(&self, a: &[BigInt]) -> Result<IntMatrix> {
        self.check_element(a)?;
        let d = self.degree();
        let mut m = IntMatrix::zeros(d, d);
        let mut col = a.to_vec();
        for k in 0..d {
            for (r, v) in col.iter().enumerate() {
                m[(r, k)] = v.clone();
            }
            if k + 1 < d {
                col = self.times_theta(&col);
            }
        }
        Ok(m)
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check_element(b)?;
        let m = self.mul_matrix(a)?;
        let col = IntMatrix::from_vec(b.len(), 1, b.to_vec())?;
        Ok((&m * &col).entries().to_vec())
    }

    /// `|N(a)| = |det(mul_matrix(a))|`.
    pub fn norm_abs(&self, a: &[BigInt]) -> Result<BigInt> {
        Ok(self.mul_matrix(a)?.determinant()?.abs())
    }
}

impl Serialize for NumberRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NumberRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        NumberRing::from_spec(RingSpec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Monic `f` with coefficients lowest-degree first.
pub fn make_ring(f: Vec<BigInt>) -> Result<NumberRing> {
    NumberRing::new(f, None)
}

/// `|O_F / D_F| = |N(f'(θ))| = |disc f|`.
pub fn different_norm(r: &NumberRing) -> BigInt {
    r.disc.abs()
}

/// `O_F / (a_1, ..., a_k, j)` from the Smith form of the stacked
/// multiplication matrices.
pub fn quotient_group(r: &NumberRing, elems: &[Vec<BigInt>], j: i64) -> Result<FinAbGroup> {
    let d = r.degree();
    let mut gens = IntMatrix::scalar(d, j);
    for a in elems {
        gens = gens.hstack(&r.mul_matrix(a)?)?;
    }
    let g = FinAbGroup::cokernel(&gens);
    if !g.is_finite() {
        return Err(Error::InfiniteQuotient);
    }
    Ok(g)
}

/// `[D_F^{-1} : j O_F] = |disc f| · j^{deg f}`.
pub fn fractional_index(r: &NumberRing, j: u64) -> Result<BigInt> {
    if j == 0 {
        return Err(Error::ZeroModulus(0));
    }
    Ok(different_norm(r) * Pow::pow(BigInt::from(j), r.degree()))
}

/// Group structure of `D_F^{-1} / j O_F`.
///
/// Multiplication by `f'(θ)` maps `D_F^{-1}` isomorphically onto `O_F` and
/// `j O_F` onto `(j f'(θ))`, so the quotient is `O_F / (j f'(θ))`.
pub fn fractional_quotient(r: &NumberRing, j: u64) -> Result<FinAbGroup> {
    if j == 0 {
        return Err(Error::ZeroModulus(0));
    }
    let gen: Vec<BigInt> = r
        .different_generator()
        .into_iter()
        .map(|c| c * BigInt::from(j))
        .collect();
    quotient_group(r, &[gen], 0)
}

impl From<NumberRing> for RingSpec {
    fn from(r: NumberRing) -> Self {
        r.to_spec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn elem(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn make_ring_examples() {
        let z = NumberRing::integers();
        assert_eq!(z.disc(), &BigInt::from(1));
        assert_eq!(NumberRing::gaussian().disc(), &BigInt::from(-4));
        let c = make_ring(elem(&[-1, -1, 0, 1])).unwrap();
        assert_eq!(c.disc(), &BigInt::from(-23));
    }

    #[test]
    fn make_ring_errors() {
        assert_eq!(make_ring(elem(&[1, 2])), Err(Error::NonMonic));
        assert_eq!(make_ring(elem(&[5])), Err(Error::ConstantPolynomial));
        assert!(matches!(make_ring(elem(&[-4, 0, 1])), Err(Error::Reducible(_))));
    }

    #[test]
    fn different_norms() {
        assert_eq!(different_norm(&NumberRing::integers()), BigInt::from(1));
        assert_eq!(different_norm(&NumberRing::gaussian()), BigInt::from(4));
        for r in NumberRing::catalogue() {
            let n = r.norm_abs(&r.different_generator()).unwrap();
            assert_eq!(n, different_norm(&r), "{:?}", r.label());
        }
    }

    #[test]
    fn multiplication_matrix_of_2i() {
        let r = NumberRing::gaussian();
        let m = r.mul_matrix(&elem(&[0, 2])).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![0i64, -2], vec![2, 0]]).unwrap());
        // θ^2 = -1
        assert_eq!(r.mul(&elem(&[0, 1]), &elem(&[0, 1])).unwrap(), elem(&[-1, 0]));
    }

    #[test]
    fn quotient_examples() {
        let r = NumberRing::gaussian();
        let z2 = FinAbGroup::from_orders([BigInt::from(2), BigInt::from(2)], 0);
        assert_eq!(quotient_group(&r, &[elem(&[2, 0])], 0).unwrap(), z2);
        assert_eq!(quotient_group(&r, &[r.different_generator()], 0).unwrap(), z2);
        assert_eq!(
            quotient_group(&NumberRing::integers(), &[], 5).unwrap(),
            FinAbGroup::cyclic(5)
        );
        assert_eq!(quotient_group(&r, &[], 0), Err(Error::InfiniteQuotient));
        assert_eq!(quotient_group(&r, &[elem(&[0, 0])], 0), Err(Error::InfiniteQuotient));
        assert!(matches!(
            quotient_group(&r, &[elem(&[1])], 0),
            Err(Error::ElementLength { .. })
        ));
        // (1 + i) has norm 2
        assert_eq!(quotient_group(&r, &[elem(&[1, 1])], 0).unwrap(), FinAbGroup::cyclic(2));
    }

    #[test]
    fn fractional_indices() {
        assert_eq!(fractional_index(&NumberRing::integers(), 4).unwrap(), BigInt::from(4));
        assert_eq!(fractional_index(&NumberRing::gaussian(), 3).unwrap(), BigInt::from(36));
        for r in NumberRing::catalogue() {
            assert_eq!(fractional_index(&r, 1).unwrap(), different_norm(&r));
            for j in 1..=6u64 {
                let g = fractional_quotient(&r, j).unwrap();
                assert_eq!(g.order().unwrap(), fractional_index(&r, j).unwrap());
            }
        }
        assert_eq!(fractional_index(&NumberRing::integers(), 0), Err(Error::ZeroModulus(0)));
    }

    #[test]
    fn rational_integer_case_reduces() {
        let z = NumberRing::integers();
        for j in 1..=12i64 {
            assert_eq!(quotient_group(&z, &[], j).unwrap(), FinAbGroup::cyclic(j));
            assert_eq!(
                fractional_quotient(&z, j as u64).unwrap(),
                FinAbGroup::cyclic(j)
            );
        }
    }

    #[test]
    fn ring_spec_json() {
        let r: NumberRing = serde_json::from_str(r#"{"poly": [1, 0, 1], "label": "Q(i)"}"#).unwrap();
        assert_eq!(r, NumberRing::gaussian());
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"poly":[1,0,1],"label":"Q(i)"}"#);
        assert!(serde_json::from_str::<NumberRing>(r#"{"poly": [2, 1, 2]}"#).is_err());
        assert_eq!(r.degree().to_i64(), Some(2));
    }
}
