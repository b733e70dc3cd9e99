//! Zeta functions of curves over finite fields, their special values, and
//! archimedean Γ-factors.

mod curve;
mod special;

pub use curve::{count_weierstrass_points, CurveSpec, CurveZeta, WeierstrassModel, ROOT_TOL};
pub use special::{
    bloch_conductor_fq, gamma_r_leading, special_value, special_value_numeric_gap, verify_thm_fe, Conductor,
    FeReport, GammaLeading, SpecialValue, SymbolicReal,
};

/// `q = p^k` with `p` prime, `k >= 1`.
pub fn prime_power_base(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..)
        .take_while(|d| d * d <= q)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}
