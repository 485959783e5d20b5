use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::scalar::Scalar;
use super::CoeffError;

/// Rational function `num / den` in `p` and `q`.
///
/// Values are kept in lowest terms: the denominator is a genuine polynomial
/// with minimal exponents `(0, 0)` and leading coefficient one, and every
/// monomial factor lives in the numerator. Equality is nevertheless decided by
/// cross-multiplication, so it does not depend on that normalisation.
#[derive(Clone, Debug)]
pub struct RatFunc<S> {
    num: LaurentPoly<S>,
    den: LaurentPoly<S>,
}

impl<S: Scalar> RatFunc<S> {
    /// Builds `num / den` in lowest terms.
    pub fn new(num: LaurentPoly<S>, den: LaurentPoly<S>) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::ZeroInverse);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly<S>, den: LaurentPoly<S>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.num_terms() > 1 {
            let g = num.gcd(&den);
            if g.num_terms() > 1 {
                let n = num.div_exact(&g).expect("gcd divides numerator");
                let d = den.div_exact(&g).expect("gcd divides denominator");
                return Self::assemble(n, d);
            }
        }
        Self::assemble(num, den)
    }

    /// Moves monomial factors into the numerator and makes the denominator
    /// monic; `num` and `den` must already be coprime.
    fn assemble(num: LaurentPoly<S>, den: LaurentPoly<S>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (da, db) = den.min_exponents();
        let mut n = num.shift(-da, -db);
        let mut d = den.shift(-da, -db);
        let lc = d.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !lc.is_one() {
            let inv = S::one() / lc;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_laurent(num: LaurentPoly<S>) -> Self {
        RatFunc { num, den: LaurentPoly::one() }
    }

    pub fn constant(c: S) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn monomial(c: S, a: i32, b: i32) -> Self {
        Self::from_laurent(LaurentPoly::monomial(c, a, b))
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(S::from_int(v))
    }

    pub fn p() -> Self {
        Self::from_laurent(LaurentPoly::p())
    }

    pub fn q() -> Self {
        Self::from_laurent(LaurentPoly::q())
    }

    pub fn numer(&self) -> &LaurentPoly<S> {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly<S> {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value, if free of `p` and `q`.
    pub fn as_constant(&self) -> Option<S> {
        if self.is_laurent() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.num.is_zero() {
            return Err(CoeffError::ZeroInverse);
        }
        Ok(Self::assemble(self.den.clone(), self.num.clone()))
    }

    /// Integer power; negative exponents require a nonzero value.
    pub fn powi(&self, e: i64) -> Result<Self, CoeffError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact value at `(p0, q0)`.
    pub fn eval(&self, p0: &S, q0: &S) -> Result<S, CoeffError> {
        let singular = || CoeffError::SingularEvaluation { p: p0.to_string(), q: q0.to_string() };
        let n = self.num.eval(p0, q0).ok_or_else(singular)?;
        let d = self.den.eval(p0, q0).ok_or_else(singular)?;
        if d.is_zero() {
            return Err(singular());
        }
        Ok(n / d)
    }

    /// [`eval`](Self::eval) restricted to admissible parameters: `p0, q0`
    /// nonzero and `p0 q0 != 1, -1`.
    pub fn eval_admissible(&self, p0: &S, q0: &S) -> Result<S, CoeffError> {
        let pq = p0.clone() * q0.clone();
        if p0.is_zero() || q0.is_zero() || pq.is_one() || (-pq).is_one() {
            return Err(CoeffError::SingularEvaluation { p: p0.to_string(), q: q0.to_string() });
        }
        self.eval(p0, q0)
    }

    /// Substitute rational functions for `p` and `q`.
    pub fn substitute(&self, p_val: &Self, q_val: &Self) -> Result<Self, CoeffError> {
        let sub = |l: &LaurentPoly<S>| -> Result<Self, CoeffError> {
            let mut acc = Self::zero();
            for (&(a, b), c) in l.terms() {
                let t = &(&p_val.powi(a as i64)? * &q_val.powi(b as i64)?) * &Self::constant(c.clone());
                acc = &acc + &t;
            }
            Ok(acc)
        };
        let n = sub(&self.num)?;
        let d = sub(&self.den)?;
        if d.is_zero() {
            return Err(CoeffError::SingularEvaluation { p: p_val.to_string(), q: q_val.to_string() });
        }
        Ok(&n / &d)
    }

    /// Structural identity of the stored (normalised) representation.
    pub fn same_representation(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }

    /// True for a nonzero monomial with negative coefficient and unit denominator.
    pub fn is_negative_monomial(&self) -> bool {
        self.is_laurent() && self.num.as_monomial().is_some_and(|(_, c)| c.is_negative())
    }
}

/// `<n>_t = 1 + t + ... + t^(n-1)`.
pub fn qnum<S: Scalar>(n: u32, t: &RatFunc<S>) -> RatFunc<S> {
    let mut acc = RatFunc::zero();
    let mut pow = RatFunc::one();
    for _ in 0..n {
        acc = &acc + &pow;
        pow = &pow * t;
    }
    acc
}

impl<S: Scalar> PartialEq for RatFunc<S> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<S: Scalar> Zero for RatFunc<S> {
    fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<S: Scalar> One for RatFunc<S> {
    fn one() -> Self {
        RatFunc { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }
}

/// GCD in the Laurent ring; one when either side is a monomial.
fn common<S: Scalar>(a: &LaurentPoly<S>, b: &LaurentPoly<S>) -> Option<LaurentPoly<S>> {
    if a.num_terms() <= 1 || b.num_terms() <= 1 {
        return None;
    }
    let g = a.gcd(b);
    (g.num_terms() > 1).then_some(g)
}

fn exact<S: Scalar>(a: &LaurentPoly<S>, g: &Option<LaurentPoly<S>>) -> LaurentPoly<S> {
    match g {
        Some(g) => a.div_exact(g).expect("exact division by a common factor"),
        None => a.clone(),
    }
}

// Both operands are in lowest terms, so only the denominators' common
// factor can survive into the sum.
impl<'a, S: Scalar> Add<&'a RatFunc<S>> for &'a RatFunc<S> {
    type Output = RatFunc<S>;
    fn add(self, rhs: &'a RatFunc<S>) -> RatFunc<S> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den && self.is_laurent() {
            return RatFunc { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        let g = common(&self.den, &rhs.den);
        let (b1, d1) = (exact(&self.den, &g), exact(&rhs.den, &g));
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        if t.is_zero() {
            return RatFunc::zero();
        }
        let g2 = g.as_ref().and_then(|g| common(&t, g));
        RatFunc::assemble(exact(&t, &g2), &b1 * &exact(&rhs.den, &g2))
    }
}

impl<'a, S: Scalar> Sub<&'a RatFunc<S>> for &'a RatFunc<S> {
    type Output = RatFunc<S>;
    fn sub(self, rhs: &'a RatFunc<S>) -> RatFunc<S> {
        self + &(-rhs)
    }
}

impl<'a, S: Scalar> Mul<&'a RatFunc<S>> for &'a RatFunc<S> {
    type Output = RatFunc<S>;
    fn mul(self, rhs: &'a RatFunc<S>) -> RatFunc<S> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_laurent() && rhs.is_laurent() {
            return RatFunc { num: &self.num * &rhs.num, den: LaurentPoly::one() };
        }
        let g1 = common(&self.num, &rhs.den);
        let g2 = common(&rhs.num, &self.den);
        let num = &exact(&self.num, &g1) * &exact(&rhs.num, &g2);
        let den = &exact(&self.den, &g2) * &exact(&rhs.den, &g1);
        RatFunc::assemble(num, den)
    }
}

/// Panics on division by zero; use [`RatFunc::inv`] for a checked inverse.
impl<'a, S: Scalar> Div<&'a RatFunc<S>> for &'a RatFunc<S> {
    type Output = RatFunc<S>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a RatFunc<S>) -> RatFunc<S> {
        let inv = rhs.inv().expect("division by zero rational function");
        self * &inv
    }
}

impl<S: Scalar> Neg for &RatFunc<S> {
    type Output = RatFunc<S>;
    fn neg(self) -> RatFunc<S> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl<S: Scalar> Neg for RatFunc<S> {
    type Output = RatFunc<S>;
    fn neg(self) -> RatFunc<S> {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for RatFunc<S> {
            type Output = RatFunc<S>;
            fn $m(self, rhs: RatFunc<S>) -> RatFunc<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl<S: Scalar> fmt::Display for RatFunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            return write!(f, "{}", self.num);
        }
        let wrap = |l: &LaurentPoly<S>| {
            if l.num_terms() > 1 || l.as_monomial().is_some_and(|(_, c)| c.is_negative()) {
                format!("({l})")
            } else {
                l.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rat, RatFunc};

    fn p() -> RatFunc {
        RatFunc::p()
    }
    fn q() -> RatFunc {
        RatFunc::q()
    }
    fn int(v: i64) -> RatFunc {
        RatFunc::from_int(v)
    }
    fn qinv() -> RatFunc {
        q().inv().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert!((&p() + &(-p())).is_zero());
        assert_eq!((&p() + &qinv()).to_string(), "p + q^-1");
        let one_minus_pq = &int(1) - &(&p() * &q());
        let a = &int(1) / &one_minus_pq;
        let b = &(-(&p() * &q())) / &one_minus_pq;
        assert_eq!(&a + &b, int(1));
        assert!((&a + &b).same_representation(&int(1)));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!((&p() * &qinv()).to_string(), "p*q^-1");
        let lhs = &(&p() - &qinv()) * &(&q() * &p().inv().unwrap());
        let rhs = &q() - &p().inv().unwrap();
        assert_eq!(lhs, rhs);
        let one_pq = &int(1) + &(&p() * &q());
        let ratio = &(&int(1) - &(&p() * &q())) / &one_pq;
        assert!((&ratio * &one_pq).same_representation(&(&int(1) - &(&p() * &q()))));
    }

    #[test]
    fn inverse_examples() {
        let pq = &p() * &q();
        assert!(pq.inv().unwrap().same_representation(&RatFunc::monomial(Rat::from_int(1), -1, -1)));
        let s = &p() + &qinv();
        assert_eq!(&s.inv().unwrap() * &s, int(1));
        assert_eq!(int(0).inv(), Err(CoeffError::ZeroInverse));
    }

    #[test]
    fn evaluation_examples() {
        let r = |a: i64, b: i64| Rat::new(a.into(), b.into());
        assert_eq!((&p() * &qinv()).eval(&r(2, 1), &r(3, 1)), Ok(r(2, 3)));
        let f = &int(1) / &(&int(1) - &(&p() * &q()));
        assert!(matches!(f.eval(&r(1, 1), &r(1, 1)), Err(CoeffError::SingularEvaluation { .. })));
        assert!(matches!(int(2).eval_admissible(&r(1, 1), &r(-1, 1)), Err(CoeffError::SingularEvaluation { .. })));
        assert_eq!((&p() - &qinv()).eval(&r(3, 1), &r(1, 3)), Ok(r(0, 1)));
    }

    #[test]
    fn qnum_examples() {
        let pq = &p() * &q();
        assert!(qnum(0, &pq).is_zero());
        assert_eq!(qnum(1, &pq), int(1));
        let three = qnum(3, &pq);
        assert_eq!(&three * &(&int(1) - &pq), &int(1) - &pq.powi(3).unwrap());
        assert_eq!(three.to_string(), "p^2*q^2 + p*q + 1");
    }

    #[test]
    fn lowest_terms_cancel_common_factors() {
        let pq = &p() * &q();
        let f = &(&int(1) - &pq.powi(2).unwrap()) / &(&int(1) - &pq);
        assert!(f.is_laurent());
        assert_eq!(f.to_string(), "p*q + 1");
        let g = &(&p() * &p()) / &(&(&p() * &p()) + &p());
        assert_eq!(g.to_string(), "p/(p + 1)");
    }

    #[test]
    fn substitution_q_equals_p() {
        let f = &(&p() * &qinv()) + &(&p() - &qinv());
        let g = f.substitute(&p(), &p()).unwrap();
        assert_eq!(g, &int(1) + &(&p() - &p().inv().unwrap()));
    }
}
