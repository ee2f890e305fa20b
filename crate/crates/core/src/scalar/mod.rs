//! Exact arithmetic for invariant values: cyclotomic numbers times a
//! tracked integer power of the total quantum dimension D = √|A|.

mod cyclotomic;
mod exact;

pub use cyclotomic::{cyclotomic_polynomial, totient, CyclotomicNumber};
pub use exact::{ArithOp, DSquared, ExactScalar, ScalarError};

/// e^{2πi·numerator/denominator} in canonical form.
pub fn make_root(numerator: i64, denominator: u64) -> CyclotomicNumber {
    CyclotomicNumber::root(numerator, denominator)
}
