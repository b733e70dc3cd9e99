use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::homalg::FinAbGroup;
use crate::numring::{self, NumberRing};
use crate::serde_int;

/// `π_i THH(Z)`: `Z` for `i = 0`, `Z/n` for `i = 2n - 1 > 0`, zero otherwise.
pub fn thh_z_homotopy(i: i64) -> FinAbGroup {
    match i {
        0 => FinAbGroup::free(1),
        i if i > 0 && i % 2 == 1 => FinAbGroup::cyclic((i + 1) / 2),
        _ => FinAbGroup::trivial(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThhHomotopy {
    pub degree: i64,
    /// `None` when the group is infinite (degree 0).
    #[serde(default, with = "opt_order")]
    pub order: Option<BigInt>,
    pub group: FinAbGroup,
}

/// `π_i THH(O_F)`: free of rank `[F:Q]` in degree 0, `D_F^{-1}/j O_F` in
/// degree `2j - 1`, zero in positive even and negative degrees.
pub fn thh_of_homotopy(r: &NumberRing, i: i64) -> ThhHomotopy {
    let group = match i {
        0 => FinAbGroup::free(r.degree()),
        i if i > 0 && i % 2 == 1 => {
            let j = ((i + 1) / 2) as u64;
            let g = numring::fractional_quotient(r, j).expect("j >= 1");
            debug_assert_eq!(g.order(), numring::fractional_index(r, j).ok());
            g
        }
        _ => FinAbGroup::trivial(),
    };
    ThhHomotopy {
        degree: i,
        order: group.order(),
        group,
    }
}

mod opt_order {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => serde_int::bigint::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<serde_int::JsonInt>::deserialize(d)?.map(|x| x.0))
    }
}
