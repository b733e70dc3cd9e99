//! Integer polynomials as coefficient vectors `[c_0, c_1, ..., c_d]`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::homalg::IntMatrix;

pub fn degree(f: &[BigInt]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn trim(mut f: Vec<BigInt>) -> Vec<BigInt> {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

pub fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (Some(m), Some(n)) = (degree(f), degree(g)) else {
        return BigInt::zero();
    };
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for r in 0..n {
        for (k, c) in f[..=m].iter().rev().enumerate() {
            s[(r, r + k)] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g[..=n].iter().rev().enumerate() {
            s[(n + r, r + k)] = c.clone();
        }
    }
    s.determinant().expect("Sylvester matrix is square")
}

/// `disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f)`.
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let d = degree(f).unwrap_or(0);
    let res = resultant(f, &derivative(f));
    let lc = &f[d];
    let v = res / lc;
    if (d * d.saturating_sub(1) / 2) % 2 == 1 {
        -v
    } else {
        v
    }
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn positive_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(BigInt::from(k));
            if k * k != n {
                out.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    Some(out)
}

/// Integer root of a monic polynomial, if any. `None` in the outer option
/// means the constant term was too large to enumerate its divisors.
fn integer_root(f: &[BigInt]) -> Option<Option<BigInt>> {
    if f[0].is_zero() {
        return Some(Some(BigInt::zero()));
    }
    let divs = positive_divisors(&f[0])?;
    Some(
        divs.into_iter()
            .flat_map(|d| [d.clone(), -d])
            .find(|r| eval(f, r).is_zero()),
    )
}

/// Monic quartic splitting as a product of two integer quadratics.
fn quadratic_split(f: &[BigInt]) -> Option<Option<(BigInt, BigInt, BigInt, BigInt)>> {
    let (c0, c1, c2, c3) = (&f[0], &f[1], &f[2], &f[3]);
    let divs = positive_divisors(c0)?;
    for b in divs.into_iter().flat_map(|d| [d.clone(), -d]) {
        let d = c0 / &b;
        let candidates: Vec<BigInt> = if d != b {
            let num = c1 - &b * c3;
            let den = &d - &b;
            if !num.is_multiple_of(&den) {
                continue;
            }
            vec![num / den]
        } else {
            if *c1 != &b * c3 {
                continue;
            }
            // a + c = c3, ac = c2 - 2b
            let disc = c3 * c3 - BigInt::from(4) * (c2 - BigInt::from(2) * &b);
            if disc.is_negative() {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s != disc || !(c3 + &s).is_even() {
                continue;
            }
            vec![(c3 + &s) / 2]
        };
        for a in candidates {
            let c = c3 - &a;
            if &b + &d + &a * &c == *c2 && &a * &d + &b * &c == *c1 {
                return Some(Some((a, b, c, d)));
            }
        }
    }
    Some(None)
}

/// Exact test for degree at most 4, mod-p factorization patterns above that.
pub fn check_irreducible(f: &[BigInt]) -> Result<()> {
    let d = degree(f).ok_or(Error::ConstantPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if d == 1 {
        return Ok(());
    }
    let root = integer_root(f);
    if let Some(Some(r)) = &root {
        return Err(Error::Reducible(format!("x = {r} is a root")));
    }
    if d <= 3 && root.is_some() {
        return Ok(());
    }
    if d == 4 && root.is_some() {
        if let Some(split) = quadratic_split(f) {
            return match split {
                Some((a, b, c, e)) => Err(Error::Reducible(format!(
                    "(x^2 + {a}x + {b})(x^2 + {c}x + {e})"
                ))),
                None => Ok(()),
            };
        }
    }
    if modp_certifies_irreducible(f) {
        Ok(())
    } else {
        Err(Error::IrreducibilityUnknown(d))
    }
}

/// Intersects the possible factor degrees over Q implied by factorizations
/// modulo small primes of good reduction. Certifies irreducibility when only
/// the trivial splittings `{0, d}` remain.
fn modp_certifies_irreducible(f: &[BigInt]) -> bool {
    let d = degree(f).expect("nonconstant");
    let disc = discriminant(f);
    let mut possible: BTreeSet<usize> = (0..=d).collect();
    for p in (2u64..2000).filter(|&p| is_prime(p)) {
        let pb = BigInt::from(p);
        if disc.is_multiple_of(&pb) || f[d].is_multiple_of(&pb) {
            continue;
        }
        let fp: Vec<u64> = f
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced mod p"))
            .collect();
        let mut sums = BTreeSet::from([0usize]);
        for k in factor_degrees_mod_p(&fp, p) {
            let next: Vec<usize> = sums.iter().map(|s| s + k).collect();
            sums.extend(next);
        }
        possible.retain(|k| sums.contains(k));
        if possible.len() == 2 {
            return true;
        }
    }
    false
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

// ---- polynomials over F_p, coefficient vectors lowest first ----

fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = fp_trim(b.to_vec());
    let mut r = fp_trim(a.to_vec());
    let db = b.len() - 1;
    let inv = fp_inv(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let coef = r[r.len() - 1] * inv % p;
        for (k, bk) in b.iter().enumerate() {
            let idx = shift + k;
            r[idx] = (r[idx] + p - coef * bk % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_rem(&out, m, p)
}

fn fp_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = fp_mulmod(&result, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or(0);
            let y = b.get(k).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(out)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = fp_trim(a.to_vec());
    let mut b = fp_trim(b.to_vec());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn fp_div(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = fp_trim(b.to_vec());
    let mut r = fp_trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() <= db {
        return Vec::new();
    }
    let mut q = vec![0u64; r.len() - db];
    let inv = fp_inv(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let coef = r[r.len() - 1] * inv % p;
        q[shift] = coef;
        for (k, bk) in b.iter().enumerate() {
            let idx = shift + k;
            r[idx] = (r[idx] + p - coef * bk % p) % p;
        }
        r = fp_trim(r);
    }
    q
}

/// Degrees of the irreducible factors of a squarefree polynomial over F_p,
/// by distinct-degree factorization.
pub(crate) fn factor_degrees_mod_p(f: &[u64], p: u64) -> Vec<usize> {
    let mut f = fp_trim(f.to_vec());
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut k = 1usize;
    while f.len() > 1 && 2 * k < f.len() {
        h = fp_powmod(&h, p, &f, p);
        let g = fp_gcd(&f, &fp_sub(&h, &x, p), p);
        let gd = g.len() - 1;
        if gd > 0 {
            out.extend(std::iter::repeat_n(k, gd / k));
            f = fp_div(&f, &g, p);
            h = fp_rem(&h, &f, p);
        }
        k += 1;
    }
    if f.len() > 1 {
        out.push(f.len() - 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&poly(&[0, 1])), BigInt::from(1));
        assert_eq!(discriminant(&poly(&[1, 0, 1])), BigInt::from(-4));
        assert_eq!(discriminant(&poly(&[-2, 0, 1])), BigInt::from(8));
        assert_eq!(discriminant(&poly(&[-1, -1, 0, 1])), BigInt::from(-23));
        assert_eq!(discriminant(&poly(&[-2, 0, 0, 1])), BigInt::from(-108));
        assert_eq!(discriminant(&poly(&[1, 1, 1, 1, 1])), BigInt::from(125));
    }

    #[test]
    fn cubic_discriminant_formula() {
        // x^3 + a x + b: -4a^3 - 27b^2
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                let expected = -4 * a.pow(3) - 27 * b * b;
                assert_eq!(discriminant(&poly(&[b, a, 0, 1])), BigInt::from(expected));
            }
        }
    }

    #[test]
    fn irreducibility() {
        assert!(check_irreducible(&poly(&[0, 1])).is_ok());
        assert!(check_irreducible(&poly(&[1, 0, 1])).is_ok());
        assert!(matches!(check_irreducible(&poly(&[-1, 0, 1])), Err(Error::Reducible(_))));
        assert!(matches!(check_irreducible(&poly(&[0, 0, 1])), Err(Error::Reducible(_))));
        assert!(check_irreducible(&poly(&[-1, -1, 0, 1])).is_ok());
        assert!(check_irreducible(&poly(&[1, 1, 1, 1, 1])).is_ok());
        // x^4 + 1 is reducible mod every prime yet irreducible over Q
        assert!(check_irreducible(&poly(&[1, 0, 0, 0, 1])).is_ok());
        // (x^2 + 1)(x^2 + 2)
        assert!(matches!(check_irreducible(&poly(&[2, 0, 3, 0, 1])), Err(Error::Reducible(_))));
        // (x^2 + x + 1)^2
        assert!(matches!(check_irreducible(&poly(&[1, 2, 3, 2, 1])), Err(Error::Reducible(_))));
        // x^5 - x - 1 is irreducible
        assert!(check_irreducible(&poly(&[-1, -1, 0, 0, 0, 1])).is_ok());
        // x^6 + 3 x^3 + 3 (Eisenstein at 3)
        assert!(check_irreducible(&poly(&[3, 0, 0, 3, 0, 0, 1])).is_ok());
        // (x^3 + 2)(x^3 + 3) has no rational root; mod p patterns always allow 3
        assert!(matches!(
            check_irreducible(&poly(&[6, 0, 0, 5, 0, 0, 1])),
            Err(Error::IrreducibilityUnknown(6))
        ));
        // (x - 2)(x^4 + x + 1) has a rational root
        assert!(matches!(
            check_irreducible(&poly(&[-2, -1, 1, 0, -2, 1])),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn distinct_degree() {
        // x^2 + 1 over F_3 is irreducible; over F_5 it splits
        let mut d = factor_degrees_mod_p(&[1, 0, 1], 3);
        d.sort();
        assert_eq!(d, vec![2]);
        let mut d = factor_degrees_mod_p(&[1, 0, 1], 5);
        d.sort();
        assert_eq!(d, vec![1, 1]);
    }
}
