//! Coefficient scalars.
//!
//! Everything in this crate is computed over the integers. The integer type
//! is a parameter so that the same code runs on machine words for speed and on
//! [`num_bigint::BigInt`] when coefficients may grow.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, ToBigInt};
use num_traits::{FromPrimitive, Signed};

/// An exact integer scalar usable as a Laurent coefficient.
pub trait Coeff:
    Signed + Clone + Ord + Hash + Debug + Display + FromPrimitive + ToBigInt + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer literal out of range for coefficient type")
    }

    fn to_big(&self) -> BigInt {
        self.to_bigint().expect("integer coefficients always convert to BigInt")
    }
}

impl<T> Coeff for T where
    T: Signed + Clone + Ord + Hash + Debug + Display + FromPrimitive + ToBigInt + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_conversion() {
        assert_eq!(<i64 as Coeff>::from_int(-7), -7);
        assert_eq!(<BigInt as Coeff>::from_int(3), BigInt::from(3));
        assert_eq!(Coeff::to_big(&-5i128), BigInt::from(-5));
    }
}
