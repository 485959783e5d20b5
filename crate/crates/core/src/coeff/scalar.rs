use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// Exact base field for coefficients.
///
/// Every algebraic identity in this crate is decided by exact zero tests,
/// so implementors must have exact arithmetic. Provided for `Ratio<BigInt>`
/// (the default, see [`crate::Rat`]) and for fixed-width ratios such as
/// `Ratio<i64>`, which are fast but may overflow on large computations.
pub trait Scalar:
    Clone + Debug + Display + Eq + Hash + Num + Signed + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn recip_checked(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Integer power, negative exponents invert. `None` for `0^-k`.
    fn powi(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.recip_checked()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b.clone();
            }
            b = b.clone() * b;
            e >>= 1;
        }
        Some(acc)
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Debug + Display + Integer + Hash + Signed + FromPrimitive + Send + Sync + 'static,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer literal out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use crate::Rat;

    #[test]
    fn powers_and_inverse() {
        let two = Rat::from_int(2);
        assert_eq!(two.powi(3), Some(Rat::from_int(8)));
        assert_eq!(two.powi(-2), Some(Rat::new(1.into(), 4.into())));
        assert_eq!(Rat::zero().powi(-1), None);
        assert_eq!(Rat::zero().powi(0), Some(Rat::one()));
    }

    #[test]
    fn fixed_width_ratio_is_a_scalar() {
        let x: Ratio<i64> = Scalar::from_int(3);
        assert_eq!(x.powi(-1), Some(Ratio::new(1, 3)));
    }
}
