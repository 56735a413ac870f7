//! Exact scalar types.
//!
//! Every construction in this crate is a solution of linear equations with
//! rational data, so the core is generic over an exact ordered field. Floating
//! point types are deliberately not admitted: genericity checks compare values
//! for equality and a single rounding error would change the topology.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

/// An exact ordered field with floor.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + FromStr + Num + Signed + Send + Sync + 'static
{
    /// The rational `numer / denom`. Panics if `denom == 0`.
    fn ratio(numer: i64, denom: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    /// Largest integer not exceeding `self`.
    fn floor(&self) -> Self;

    /// Smallest integer not below `self`.
    fn ceil(&self) -> Self {
        -(-self.clone()).floor()
    }

    /// `Some(n)` when `self` is the integer `n` and fits in an `i64`.
    fn to_int(&self) -> Option<i64>;

    fn is_integer(&self) -> bool {
        self.floor() == *self
    }

    /// Largest integer not exceeding `self`, as an `i64`.
    fn floor_int(&self) -> i64 {
        self.floor().to_int().expect("floor out of i64 range")
    }

    /// Representative modulo 1, in `[0, 1)`.
    fn mod_one(&self) -> Self {
        self.clone() - self.floor()
    }

    fn half(&self) -> Self {
        self.clone() / Self::from_int(2)
    }

    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()).half()
    }
}

macro_rules! impl_scalar_for_ratio {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn ratio(numer: i64, denom: i64) -> Self {
                Ratio::new(<$int>::from(numer), <$int>::from(denom))
            }

            fn floor(&self) -> Self {
                Ratio::floor(self)
            }

            fn to_int(&self) -> Option<i64> {
                if self.is_integer() {
                    self.numer().to_i64()
                } else {
                    None
                }
            }

            fn is_integer(&self) -> bool {
                Ratio::is_integer(self)
            }
        }
    };
}

impl_scalar_for_ratio!(i64);
impl_scalar_for_ratio!(i128);
impl_scalar_for_ratio!(BigInt);

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::ratio(n, d)
    }

    #[test]
    fn floor_and_mod_one_of_negatives() {
        assert_eq!(q(-1, 3).floor(), q(-1, 1));
        assert_eq!(q(-1, 3).mod_one(), q(2, 3));
        assert_eq!(q(7, 2).floor_int(), 3);
    }

    #[test]
    fn integer_detection() {
        assert_eq!(q(6, 3).to_int(), Some(2));
        assert_eq!(q(5, 3).to_int(), None);
        assert!(Ratio::<i64>::ratio(4, 2).is_integer());
    }

    #[test]
    fn parses_fraction_strings() {
        let x: BigRational = "3/4".parse().unwrap();
        assert_eq!(x, q(3, 4));
        assert!("1/0".parse::<BigRational>().is_err());
        assert_eq!(q(3, 4).to_string(), "3/4");
    }
}
