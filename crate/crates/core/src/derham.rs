//! Cotangent-complex exterior powers and Hodge-truncated derived de Rham
//! data for monogenic number rings and prime fields.
//!
//! For `O_F = Z[x]/(f)` the cotangent complex is `[O·f --f'(θ)--> O·dx]`
//! (homological degrees 1, 0). Its derived exterior powers are divided-power
//! Koszul complexes which, both lattices having rank one, collapse to
//! `[O --f'(θ)--> O]` in homological degrees `i, i-1`.

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hodge::{sign, HodgeDiamond};
use crate::homalg::{FinAbGroup, IntMatrix, ZComplex};
use crate::numring::{self, NumberRing};
use crate::serde_int;

/// `LΛ^i L_{O_F/Z}`: free of rank `[F:Q]` in degree 0 when `i = 0`,
/// otherwise the single group `O_F/(f'(θ))` in homological degree `i - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaPower {
    pub i: u32,
    pub homological_degree: i64,
    pub group: FinAbGroup,
}

/// Strictly perfect model of `LΛ^i L_{O_F/Z}` in cohomological grading.
pub fn lambda_power_complex(r: &NumberRing, i: u32) -> ZComplex {
    if i == 0 {
        return ZComplex::concentrated(0, r.degree());
    }
    let m = r
        .mul_matrix(&r.different_generator())
        .expect("f'(θ) has ring degree coordinates");
    ZComplex::two_term(-i64::from(i), m)
}

pub fn lambda_power(r: &NumberRing, i: u32) -> LambdaPower {
    if i == 0 {
        return LambdaPower {
            i,
            homological_degree: 0,
            group: FinAbGroup::free(r.degree()),
        };
    }
    let c = lambda_power_complex(r, i);
    let deg = i64::from(i) - 1;
    debug_assert!(c.cohomology(-i64::from(i)).is_trivial());
    LambdaPower {
        i,
        homological_degree: deg,
        group: c.cohomology(-deg),
    }
}

/// `Σ_{i<k, j} (-1)^{i+j} h^{ij}`, the rational Euler characteristic of
/// `RΓ(X, LΩ^{<k})`; zero for `k <= 0`.
pub fn lomega_rank(h: &HodgeDiamond, k: i64) -> i64 {
    (0..k.min(h.dim() as i64 + 1))
        .map(|i| sign(i) * h.omega_euler(i))
        .sum()
}

/// `LΩ^{<2}_{O_F/Z}` as an explicit complex of lattices in degrees 0, 1:
///
/// `O_F ⊕ O_F·f  --(d, f'(θ))-->  O_F·dθ`, with `d(θ^k) = k θ^{k-1} dθ`.
///
/// The second summand realizes the relation `f'(θ) dθ = 0`, so `H^1` is
/// `Ω_{O_F/Z} / d(O_F)` and `H^0` is the lattice of closed functions.
pub fn lomega_two_term(r: &NumberRing) -> ZComplex {
    let d = r.degree();
    let mut deriv = IntMatrix::zeros(d, d);
    for k in 1..d {
        deriv[(k - 1, k)] = BigInt::from(k);
    }
    let rel = r
        .mul_matrix(&r.different_generator())
        .expect("f'(θ) has ring degree coordinates");
    let m = deriv.hstack(&rel).expect("both blocks have d rows");
    ZComplex::two_term(0, m)
}

/// Cohomology of `LΩ^{<n}_{O_F/Z}`, exact where it is determined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeRhamSummary {
    pub n: i64,
    pub h0_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h0_torsion: Option<FinAbGroup>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1: Option<FinAbGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_int")]
    pub h1_order: Option<BigInt>,
    /// Orders of `H^1` of the Hodge graded pieces `LΛ^i L[-i]`, `1 <= i < n`.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_int_vec")]
    pub graded_orders: Option<Vec<BigInt>>,
}

impl DeRhamSummary {
    fn exact(n: i64, c: &ZComplex) -> Self {
        let h0 = c.cohomology(0);
        let h1 = c.cohomology(1);
        DeRhamSummary {
            n,
            h0_rank: h0.free_rank(),
            h0_torsion: Some(h0.torsion()),
            h1_order: h1.order(),
            h1: Some(h1),
            graded_orders: None,
        }
    }
}

/// For `n <= 2` the complex is built and its cohomology computed; for larger
/// `n` only the rank of `H^0` and the orders of the graded pieces are reported.
pub fn derham_summary(r: &NumberRing, n: i64) -> DeRhamSummary {
    match n {
        i64::MIN..=0 => DeRhamSummary::exact(n, &ZComplex::zero()),
        1 => DeRhamSummary::exact(n, &ZComplex::concentrated(0, r.degree())),
        2 => DeRhamSummary::exact(n, &lomega_two_term(r)),
        _ => {
            let order = numring::different_norm(r);
            DeRhamSummary {
                n,
                h0_rank: r.degree(),
                h0_torsion: None,
                h1: None,
                h1_order: None,
                graded_orders: Some(vec![order; (n - 1) as usize]),
            }
        }
    }
}

/// Strictly perfect model of the Hodge graded piece `LΛ^i L_{F_p/Z}[-i]`.
///
/// `L_{F_p/Z} ≃ (p)/(p^2)[1]`, so `LΛ^i L ≃ Γ^i(F_p)[i] = F_p[i]`; the
/// resolution `[Z --p--> Z]` of `F_p` is shifted accordingly.
pub fn fp_graded_piece(p: u64, i: u32) -> ZComplex {
    ZComplex::cyclic_resolution(p)
        .shift(i64::from(i))
        .shift(-i64::from(i))
}

/// `χ×(LΩ^{<n}_{F_p/Z})`, the product of `χ×` over the `n` Hodge graded pieces.
pub fn fp_lomega_euler(p: u64, n: i64) -> Result<BigInt> {
    if !numring::poly::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut total = BigInt::from(1);
    for i in 0..n.max(0) as u32 {
        let chi = fp_graded_piece(p, i).euler_mult()?;
        assert!(chi.is_integer(), "F_p piece has cohomology in degree 0 only");
        total *= chi.to_integer();
    }
    Ok(total)
}

/// `p^n`, the closed form of [`fp_lomega_euler`].
pub fn fp_lomega_closed(p: u64, n: i64) -> BigInt {
    Pow::pow(BigInt::from(p), n.max(0) as u64)
}

mod opt_int {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(x) => serde_int::bigint::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<BigInt>, D::Error> {
        Ok(Option::<serde_int::JsonInt>::deserialize(d)?.map(|x| x.0))
    }
}

mod opt_int_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(x) => serde_int::bigint_vec::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Vec<BigInt>>, D::Error> {
        Ok(Option::<Vec<serde_int::JsonInt>>::deserialize(d)?
            .map(|v| v.into_iter().map(|x| x.0).collect()))
    }
}
