//! Symbolic descriptors for `gr^j_Z gr^n_F` of THH, TP, TC⁻ and Σ²TC⁺.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::derham;
use crate::error::{Error, Result};
use crate::homalg::{FinAbGroup, ZComplex};
use crate::numring::NumberRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theory {
    #[serde(rename = "THH")]
    Thh,
    #[serde(rename = "TP")]
    Tp,
    #[serde(rename = "TCminus")]
    TcMinus,
    #[serde(rename = "TCplus")]
    TcPlus,
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "THH" | "thh" => Ok(Theory::Thh),
            "TP" | "tp" => Ok(Theory::Tp),
            "TCminus" | "TC-" | "tcminus" => Ok(Theory::TcMinus),
            "TCplus" | "TC+" | "tcplus" => Ok(Theory::TcPlus),
            other => Err(Error::Invalid(format!("unknown theory {other:?}"))),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Thh => "THH",
            Theory::Tp => "TP",
            Theory::TcMinus => "TCminus",
            Theory::TcPlus => "TCplus",
        })
    }
}

/// The complex `E` in `E ⊗^L Z/j [shift]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expression {
    /// `LΛ^power L_{A/Z}`
    LambdaPower { power: i64 },
    /// `LΩ̂_{A/Z}`, Hodge-completed
    HodgeCompleted,
    /// `LΩ̂^{≥level}_{A/Z}`
    HodgeCompletedAbove { level: i64 },
    /// `LΩ^{<level}_{A/Z}`
    Truncated { level: i64 },
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::LambdaPower { power } => write!(f, "LΛ^{power} L"),
            Expression::HodgeCompleted => write!(f, "LΩ̂"),
            Expression::HodgeCompletedAbove { level } => write!(f, "LΩ̂^{{≥{level}}}"),
            Expression::Truncated { level } => write!(f, "LΩ^{{<{level}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedPiece {
    pub theory: Theory,
    pub n: i64,
    pub j: u64,
    pub epsilon: u64,
    pub expression: Expression,
    /// Homological shift `[k]`.
    pub shift: i64,
}

pub fn graded_piece(theory: Theory, n: i64, j: u64) -> GradedPiece {
    let epsilon = j.min(1);
    let eps = epsilon as i64;
    let jj = j as i64;
    let (expression, shift) = match theory {
        Theory::Thh => (Expression::LambdaPower { power: n - jj }, n + jj - eps),
        Theory::Tp => (Expression::HodgeCompleted, 2 * n - eps),
        Theory::TcMinus => (Expression::HodgeCompletedAbove { level: n - jj }, 2 * n - eps),
        Theory::TcPlus => (Expression::Truncated { level: n - jj }, 2 * n - eps),
    };
    GradedPiece {
        theory,
        n,
        j,
        epsilon,
        expression,
        shift,
    }
}

/// One nonzero homotopy group `π_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyGroup {
    pub degree: i64,
    pub group: FinAbGroup,
}

impl GradedPiece {
    /// Strictly perfect model over a monogenic number ring, where one exists:
    /// THH pieces always, Σ²TC⁺ pieces while the truncation level is at most 2.
    /// TP and TC⁻ pieces involve the Hodge completion and stay symbolic.
    pub fn model(&self, r: &NumberRing) -> Result<ZComplex> {
        let base = match self.expression {
            Expression::LambdaPower { power } if power < 0 => ZComplex::zero(),
            Expression::LambdaPower { power } => derham::lambda_power_complex(r, power as u32),
            Expression::Truncated { level } if level <= 0 => ZComplex::zero(),
            Expression::Truncated { level: 1 } => ZComplex::concentrated(0, r.degree()),
            Expression::Truncated { level: 2 } => derham::lomega_two_term(r),
            Expression::Truncated { level } => {
                return Err(Error::Invalid(format!(
                    "LΩ^{{<{level}}} is only determined up to extensions; no exact model"
                )))
            }
            Expression::HodgeCompleted | Expression::HodgeCompletedAbove { .. } => {
                return Err(Error::Invalid(format!(
                    "{} pieces are symbolic only (Hodge-completed)",
                    self.theory
                )))
            }
        };
        let reduced = if self.j == 0 {
            base
        } else {
            base.derived_mod(self.j as i64)?
        };
        Ok(reduced.shift(self.shift))
    }

    /// Homotopy groups `π_k = H^{-k}` of [`GradedPiece::model`].
    pub fn evaluate(&self, r: &NumberRing) -> Result<Vec<HomotopyGroup>> {
        let c = self.model(r)?;
        let mut out: Vec<HomotopyGroup> = c
            .cohomology_all()
            .into_iter()
            .map(|(i, group)| HomotopyGroup { degree: -i, group })
            .collect();
        out.sort_by_key(|g| g.degree);
        Ok(out)
    }
}

impl fmt::Display for GradedPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expression)?;
        if self.j > 0 {
            write!(f, " ⊗ Z/{}", self.j)?;
        }
        write!(f, " [{}]", self.shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motfilt::thh_z_homotopy;

    #[test]
    fn descriptor_examples() {
        let p = graded_piece(Theory::Thh, 5, 0);
        assert_eq!(p.expression, Expression::LambdaPower { power: 5 });
        assert_eq!((p.shift, p.epsilon), (5, 0));
        assert_eq!(p.to_string(), "LΛ^5 L [5]");

        let p = graded_piece(Theory::TcPlus, 7, 2);
        assert_eq!(p.expression, Expression::Truncated { level: 5 });
        assert_eq!(p.shift, 13);
        assert_eq!(p.to_string(), "LΩ^{<5} ⊗ Z/2 [13]");

        let p = graded_piece(Theory::Tp, 3, 0);
        assert_eq!((p.expression, p.shift), (Expression::HodgeCompleted, 6));
        assert_eq!(p.to_string(), "LΩ̂ [6]");

        let p = graded_piece(Theory::TcMinus, 4, 3);
        assert_eq!(p.expression, Expression::HodgeCompletedAbove { level: 1 });
        assert_eq!(p.shift, 7);
    }

    #[test]
    fn diagonal_piece_is_bokstedt() {
        let z = NumberRing::integers();
        for n in 1..=12i64 {
            let p = graded_piece(Theory::Thh, n, n as u64);
            assert_eq!(p.expression, Expression::LambdaPower { power: 0 });
            let groups = p.evaluate(&z).unwrap();
            if n == 1 {
                // Z ⊗ Z/1 = 0, as is π_1 THH(Z)
                assert!(groups.is_empty() && thh_z_homotopy(1).is_trivial());
                continue;
            }
            assert_eq!(groups.len(), 1);
            assert_eq!(groups[0].degree, 2 * n - 1);
            assert_eq!(groups[0].group, thh_z_homotopy(2 * n - 1));
        }
    }

    #[test]
    fn thh_pieces_over_gaussian() {
        let r = NumberRing::gaussian();
        // gr^0 gr^2: LΛ^2 L [2] = O/(2i) in homological degree 1 + 2
        let g = graded_piece(Theory::Thh, 2, 0).evaluate(&r).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].degree, 3);
        assert_eq!(g[0].group.order(), Some(4.into()));

        // j > n pieces vanish
        assert!(graded_piece(Theory::Thh, 2, 3).evaluate(&r).unwrap().is_empty());
    }

    #[test]
    fn symbolic_only_pieces() {
        let r = NumberRing::gaussian();
        assert!(graded_piece(Theory::Tp, 2, 1).evaluate(&r).is_err());
        assert!(graded_piece(Theory::TcMinus, 2, 1).evaluate(&r).is_err());
        assert!(graded_piece(Theory::TcPlus, 6, 1).evaluate(&r).is_err());
        assert!(graded_piece(Theory::TcPlus, 3, 1).evaluate(&r).is_ok());
        assert!(graded_piece(Theory::TcPlus, 3, 3).evaluate(&r).unwrap().is_empty());
    }

    #[test]
    fn theory_names() {
        for t in [Theory::Thh, Theory::Tp, Theory::TcMinus, Theory::TcPlus] {
            assert_eq!(t.to_string().parse::<Theory>().unwrap(), t);
        }
        assert_eq!("TC+".parse::<Theory>().unwrap(), Theory::TcPlus);
        assert!("HH".parse::<Theory>().is_err());
    }
}
