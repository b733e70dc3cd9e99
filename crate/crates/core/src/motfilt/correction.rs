use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::derham::{lambda_power_complex, lomega_rank};
use crate::error::Result;
use crate::hodge::{sign, HodgeDiamond};
use crate::homalg::{rational_power, ZComplex};
use crate::numring::NumberRing;
use crate::serde_int;

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C∞(X, n) = ∏_{i<n, j} (n-1-i)!^{(-1)^{i+j} h^{ij}}`.
pub fn c_infinity(h: &HodgeDiamond, n: i64) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n.min(h.dim() as i64 + 1) {
        let f = factorial((n - 1 - i) as u64);
        for j in 0..=h.dim() as i64 {
            let e = h.h(i, j);
            if e == 0 {
                continue;
            }
            let p: BigInt = Pow::pow(&f, e);
            if sign(i + j) > 0 {
                num *= p;
            } else {
                den *= p;
            }
        }
    }
    BigRational::new(num, den)
}

/// `χ(X/F_q, O_X, n) = Σ_{i<=n, j} (-1)^{i+j} (n-i) h^{ij}`; zero for `n <= 0`.
pub fn milne_exponent(h: &HodgeDiamond, n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    (0..=n.min(h.dim() as i64))
        .map(|i| (n - i) * sign(i) * h.omega_euler(i))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CinfReport {
    pub n: i64,
    #[serde(with = "serde_int::rational")]
    pub product_side: BigRational,
    #[serde(with = "serde_int::rational")]
    pub closed_form: BigRational,
    pub equal: bool,
}

/// Lattice model of `RΓ(X, LΛ^i)[-i]` with the rational cohomology of the
/// diamond: `Z^{h^{ik}}` in degree `i + k`, zero differentials.
fn diamond_piece(h: &HodgeDiamond, i: i64) -> ZComplex {
    let d = h.dim() as i64;
    let ranks: Vec<usize> = (0..=d).map(|k| h.h(i, k) as usize).collect();
    let diffs = ranks
        .windows(2)
        .map(|w| crate::homalg::IntMatrix::zeros(w[1], w[0]))
        .collect();
    ZComplex::new(i, ranks, diffs).expect("zero differentials")
}

/// `∏_{j=1}^{n} χ×(gr_i ⊗^L Z/j [-1])` over the Hodge graded pieces
/// `i < n - j`, each evaluated through the cone and Smith forms.
fn product_side(n: i64, piece: impl Fn(i64) -> ZComplex) -> Result<BigRational> {
    let mut total = BigRational::one();
    for j in 1..=n {
        for i in 0..n - j {
            let c = piece(i).derived_mod(j)?.shift(-1);
            total *= c.euler_mult()?;
        }
    }
    Ok(total)
}

/// Assembles `χ×(Z¹(X, n))` from the Hodge and `Z`-filtrations on a lattice
/// model built from the diamond, and compares with `C∞(X, n)^{-1}`.
pub fn verify_cinf_fiber_seq(h: &HodgeDiamond, n: i64) -> Result<CinfReport> {
    let prod = product_side(n, |i| diamond_piece(h, i))?;
    debug_assert_eq!(
        prod,
        (1..n).fold(BigRational::one(), |acc, j| acc * rational_power(j, -lomega_rank(h, n - j)))
    );
    let closed = c_infinity(h, n).recip();
    Ok(CinfReport {
        n,
        equal: prod == closed,
        product_side: prod,
        closed_form: closed,
    })
}

/// As [`verify_cinf_fiber_seq`] for `Spec O_F`, using the actual Koszul
/// models of `LΛ^i L_{O_F/Z}` (torsion included) as graded pieces.
pub fn verify_cinf_for_ring(r: &NumberRing, n: i64) -> Result<CinfReport> {
    let prod = product_side(n, |i| lambda_power_complex(r, i as u32).shift(-i))?;
    let closed = c_infinity(&HodgeDiamond::spec_ring(r.degree() as u64), n).recip();
    Ok(CinfReport {
        n,
        equal: prod == closed,
        product_side: prod,
        closed_form: closed,
    })
}
