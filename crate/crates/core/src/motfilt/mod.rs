//! Homotopy of THH for `Z` and monogenic number rings, graded pieces of the
//! motivic bifiltration, and the correcting factors `C∞` and `q^χ`.

mod correction;
mod graded;
mod thh;

pub use crate::hodge::{DiamondContext, HodgeDiamond};
pub use correction::{c_infinity, milne_exponent, verify_cinf_fiber_seq, verify_cinf_for_ring, CinfReport};
pub use graded::{graded_piece, Expression, GradedPiece, HomotopyGroup, Theory};
pub use thh::{thh_of_homotopy, thh_z_homotopy, ThhHomotopy};
