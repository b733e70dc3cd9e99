//! Fixed-point decimal evaluation of `r · π^{h/2} · (log q)^l` to many digits.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};

fn scale(prec: u32) -> BigInt {
    Pow::pow(BigInt::from(10), prec)
}

/// `Σ_k (±1)^k (a/b)^{2k+1} / (2k+1)`, scaled by `s`: atan when
/// `alternating`, atanh otherwise. Needs `|a/b| < 1`.
fn arc_series(a: &BigInt, b: &BigInt, s: &BigInt, alternating: bool) -> BigInt {
    let a2 = a * a;
    let b2 = b * b;
    let mut term = s * a / b;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if alternating && k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        term = term * &a2 / &b2;
        k += 1;
    }
    sum
}

pub fn pi_fixed(prec: u32) -> BigInt {
    let s = scale(prec);
    let one = BigInt::from(1);
    16 * arc_series(&one, &BigInt::from(5), &s, true) - 4 * arc_series(&one, &BigInt::from(239), &s, true)
}

/// `ln q` scaled by `10^prec`, for `q >= 1`.
pub fn ln_fixed(q: u64, prec: u32) -> BigInt {
    let s = scale(prec);
    if q <= 1 {
        return BigInt::zero();
    }
    let k = 63 - q.leading_zeros();
    let ln2 = 2 * arc_series(&BigInt::from(1), &BigInt::from(3), &s, false);
    let base = BigInt::from(1u64 << k);
    let qq = BigInt::from(q);
    let frac = 2 * arc_series(&(&qq - &base), &(&qq + &base), &s, false);
    ln2 * k + frac
}

fn approx_log10(x: &BigInt) -> f64 {
    let bits = x.bits() as f64;
    bits * std::f64::consts::LOG10_2
}

/// `coeff · π^{half_pi_power/2} · (ln q)^{logq_power}` in scientific notation
/// with `digits` significant digits, e.g. `-1.2345e-3`.
pub fn render(coeff: &BigRational, half_pi_power: i64, logq_power: i64, q: u64, digits: u32) -> String {
    if coeff.is_zero() {
        return "0".to_string();
    }
    let mut est = approx_log10(coeff.numer()) - approx_log10(coeff.denom());
    est += half_pi_power as f64 * 0.25;
    if logq_power != 0 && q >= 2 {
        est += logq_power as f64 * (q as f64).ln().log10();
    }
    let prec = digits + 20 + (-est).max(0.0).ceil() as u32;
    let s = scale(prec);

    let mut x = s.clone();
    if half_pi_power != 0 {
        let sqrt_pi: BigInt = (pi_fixed(prec) * &s).sqrt();
        for _ in 0..half_pi_power.unsigned_abs() {
            x = if half_pi_power > 0 { x * &sqrt_pi / &s } else { x * &s / &sqrt_pi };
        }
    }
    if logq_power != 0 {
        let l = ln_fixed(q, prec);
        for _ in 0..logq_power.unsigned_abs() {
            x = if logq_power > 0 { x * &l / &s } else { x * &s / &l };
        }
    }
    x = x * coeff.numer().abs() / coeff.denom();
    let negative = coeff.numer().sign() == Sign::Minus;

    let text = x.to_string();
    let len = text.len() as u32;
    let mut exponent = len as i64 - 1 - prec as i64;
    let mantissa = if len > digits {
        let drop: BigInt = Pow::pow(BigInt::from(10), len - digits);
        let rounded = (&x + &drop / BigInt::from(2)) / &drop;
        let r = rounded.to_string();
        if r.len() as u32 > digits {
            exponent += 1;
            r[..digits as usize].to_string()
        } else {
            r
        }
    } else {
        format!("{text:0<width$}", width = digits as usize)
    };
    let (head, tail) = mantissa.split_at(1);
    let sign = if negative { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{exponent}")
    } else {
        format!("{sign}{head}.{tail}e{exponent}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn constants() {
        assert_eq!(
            render(&r(1, 1), 2, 0, 0, 50),
            "3.1415926535897932384626433832795028841971693993751e0"
        );
        assert_eq!(
            render(&r(1, 1), 0, 1, 2, 40),
            "6.931471805599453094172321214581765680755e-1"
        );
        assert_eq!(
            render(&r(1, 1), 0, 1, 10, 30),
            "2.30258509299404568401799145468e0"
        );
        assert_eq!(
            render(&r(1, 1), 1, 0, 0, 30),
            "1.77245385090551602729816748334e0"
        );
    }

    #[test]
    fn scaling_and_sign() {
        assert_eq!(render(&r(-3, 2), 0, 0, 0, 5), "-1.5000e0");
        assert_eq!(render(&r(1, 3000), 0, 0, 0, 4), "3.333e-4");
        assert_eq!(render(&r(99999, 1), 0, 0, 0, 3), "1.00e5");
        let tiny = render(&r(1, 1), -40, -3, 5, 20);
        let v: f64 = tiny.parse().unwrap();
        let expected = std::f64::consts::PI.powi(-20) / 5f64.ln().powi(3);
        assert!((v / expected - 1.0).abs() < 1e-12);
    }
}
