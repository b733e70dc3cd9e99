use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Where the Hodge numbers live: the generic fiber of a flat scheme over `Z`,
/// or a smooth proper variety over `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiamondContext {
    GenericFiberOverQ,
    OverFq { q: u64 },
}

/// Hodge numbers `h[i][j] = dim H^j(X, Ω^i)` of a smooth proper variety of
/// dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HodgeDiamond {
    d: usize,
    h: Vec<Vec<u64>>,
    context: DiamondContext,
}

impl HodgeDiamond {
    pub fn new(d: usize, h: Vec<Vec<u64>>, context: DiamondContext) -> Result<Self> {
        if h.len() != d + 1 || h.iter().any(|row| row.len() != d + 1) {
            return Err(Error::InvalidDiamond(format!(
                "expected a {}x{} matrix",
                d + 1,
                d + 1
            )));
        }
        if let DiamondContext::OverFq { q } = context {
            if crate::zeta::prime_power_base(q).is_none() {
                return Err(Error::NotPrimePower(q));
            }
        }
        Ok(HodgeDiamond { d, h, context })
    }

    /// As [`HodgeDiamond::new`], additionally requiring `h[i][j] = h[d-i][d-j]`.
    pub fn new_serre_dual(d: usize, h: Vec<Vec<u64>>, context: DiamondContext) -> Result<Self> {
        let hd = Self::new(d, h, context)?;
        if !hd.is_serre_symmetric() {
            return Err(Error::InvalidDiamond("not Serre-symmetric".into()));
        }
        Ok(hd)
    }

    /// `Spec O_F` for a number field of degree `degree`: `h^{00} = [F:Q]`.
    pub fn spec_ring(degree: u64) -> Self {
        HodgeDiamond {
            d: 0,
            h: vec![vec![degree]],
            context: DiamondContext::GenericFiberOverQ,
        }
    }

    pub fn point_over_fq(q: u64) -> Self {
        HodgeDiamond {
            d: 0,
            h: vec![vec![1]],
            context: DiamondContext::OverFq { q },
        }
    }

    /// Smooth proper curve of genus `g` (dimension 1) in the given context.
    pub fn curve(g: u64, context: DiamondContext) -> Self {
        HodgeDiamond {
            d: 1,
            h: vec![vec![1, g], vec![g, 1]],
            context,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn context(&self) -> DiamondContext {
        self.context
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.h
    }

    /// `h^{ij}`, zero outside `[0, d]^2`.
    pub fn h(&self, i: i64, j: i64) -> u64 {
        if i < 0 || j < 0 {
            return 0;
        }
        self.h
            .get(i as usize)
            .and_then(|row| row.get(j as usize))
            .copied()
            .unwrap_or(0)
    }

    /// `Σ_j (-1)^j h^{ij}`, the Euler characteristic of `Ω^i`.
    pub fn omega_euler(&self, i: i64) -> i64 {
        (0..=self.d as i64)
            .map(|j| sign(j) * self.h(i, j) as i64)
            .sum()
    }

    /// `Σ (-1)^{i+j} h^{ij}`; for a curve of genus `g` this is `2 - 2g`.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.d as i64).map(|i| sign(i) * self.omega_euler(i)).sum()
    }

    pub fn is_serre_symmetric(&self) -> bool {
        let d = self.d;
        (0..=d).all(|i| (0..=d).all(|j| self.h[i][j] == self.h[d - i][d - j]))
    }

    /// Random diamond with `d <= max_dim` and entries in `0..=max_entry`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_dim: usize, max_entry: u64) -> Self {
        let d = rng.random_range(0..=max_dim);
        let h = (0..=d)
            .map(|_| (0..=d).map(|_| rng.random_range(0..=max_entry)).collect())
            .collect();
        HodgeDiamond {
            d,
            h,
            context: DiamondContext::GenericFiberOverQ,
        }
    }
}

pub(crate) fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Serialize, Deserialize)]
struct DiamondRepr {
    d: usize,
    h: Vec<Vec<u64>>,
    context: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    serre_dual: bool,
}

impl Serialize for HodgeDiamond {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (context, q) = match self.context {
            DiamondContext::GenericFiberOverQ => ("generic_fiber_over_Q", None),
            DiamondContext::OverFq { q } => ("over_Fq", Some(q)),
        };
        DiamondRepr {
            d: self.d,
            h: self.h.clone(),
            context: context.to_string(),
            q,
            serre_dual: false,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HodgeDiamond {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = DiamondRepr::deserialize(d)?;
        let context = match (r.context.as_str(), r.q) {
            ("generic_fiber_over_Q", None) => DiamondContext::GenericFiberOverQ,
            ("generic_fiber_over_Q", Some(_)) => {
                return Err(D::Error::custom("q is only meaningful for over_Fq"))
            }
            ("over_Fq", Some(q)) => DiamondContext::OverFq { q },
            ("over_Fq", None) => return Err(D::Error::custom("over_Fq requires q")),
            (other, _) => return Err(D::Error::custom(format!("unknown context {other:?}"))),
        };
        let built = if r.serre_dual {
            HodgeDiamond::new_serre_dual(r.d, r.h, context)
        } else {
            HodgeDiamond::new(r.d, r.h, context)
        };
        built.map_err(D::Error::custom)
    }
}
