//! Exact homological algebra over the integers.
//!
//! Grading is cohomological throughout. Homotopy-style statements translate
//! via `π_i = H^{-i}`.

mod complex;
mod group;
mod matrix;
mod snf;

pub use complex::{lemma_multadd_check, random_complex, rational_power, MultAddReport, ZComplex};
pub use group::FinAbGroup;
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};

use num_rational::BigRational;

use crate::error::Result;

pub fn cohomology(c: &ZComplex, i: i64) -> FinAbGroup {
    c.cohomology(i)
}

pub fn derived_mod(c: &ZComplex, j: i64) -> Result<ZComplex> {
    c.derived_mod(j)
}

pub fn euler_mult(c: &ZComplex) -> Result<BigRational> {
    c.euler_mult()
}

pub fn euler_rank(c: &ZComplex) -> i64 {
    c.euler_rank()
}
