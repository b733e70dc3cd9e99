pub mod derham;
pub mod error;
pub mod hodge;
pub mod homalg;
pub mod motfilt;
pub mod numeric;
pub mod numring;
pub mod selftest;
pub mod serde_int;
pub mod zeta;

pub use error::{Error, Result};
pub use hodge::{DiamondContext, HodgeDiamond};
pub use homalg::{FinAbGroup, IntMatrix, ZComplex};
pub use numring::NumberRing;
