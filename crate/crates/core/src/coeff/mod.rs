//! Exact coefficient arithmetic: rational functions in the deformation
//! parameters `p` and `q` over an exact base field.

mod gcd;
mod laurent;
mod ratfunc;
mod scalar;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};
use thiserror::Error;

pub use laurent::{Exponents, LaurentPoly};
pub use ratfunc::{qnum, RatFunc};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("expression is singular at p = {p}, q = {q}")]
    SingularEvaluation { p: String, q: String },
}

/// How a coefficient is written in front of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermPrefix {
    pub negative: bool,
    /// `None` when the magnitude is one and can be omitted.
    pub body: Option<String>,
}

/// Coefficient field of a free algebra.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self;
    fn inv(&self) -> Option<Self>;
    fn term_prefix(&self) -> TermPrefix;
}

impl<S: Scalar> Coeff for RatFunc<S> {
    fn from_int(v: i64) -> Self {
        RatFunc::from_int(v)
    }

    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self).ok()
    }

    fn term_prefix(&self) -> TermPrefix {
        if self.is_laurent() {
            if let Some(((a, b), c)) = self.numer().as_monomial() {
                let negative = c.is_negative();
                let magnitude = RatFunc::monomial(c.abs(), a, b);
                let body = if magnitude.is_one() { None } else { Some(magnitude.to_string()) };
                return TermPrefix { negative, body };
            }
            return TermPrefix { negative: false, body: Some(format!("({self})")) };
        }
        TermPrefix { negative: false, body: Some(self.to_string()) }
    }
}

impl<T> Coeff for Ratio<T>
where
    T: Clone + Debug + Display + Integer + std::hash::Hash + Signed + FromPrimitive + Send + Sync + 'static,
{
    fn from_int(v: i64) -> Self {
        <Self as Scalar>::from_int(v)
    }

    fn inv(&self) -> Option<Self> {
        self.recip_checked()
    }

    fn term_prefix(&self) -> TermPrefix {
        let negative = self.is_negative();
        let abs = self.abs();
        TermPrefix { negative, body: if abs.is_one() { None } else { Some(abs.to_string()) } }
    }
}
