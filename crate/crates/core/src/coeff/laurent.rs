use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::{BiPoly, UPoly};
use super::scalar::Scalar;

/// Exponent pair `(a, b)` of the monomial `p^a q^b`.
pub type Exponents = (i32, i32);

/// Laurent polynomial in the deformation parameters `p` and `q`.
///
/// Terms are kept in a `BTreeMap` keyed by exponent pair, so iteration is
/// lexicographic on `(a, b)` and zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly<S> {
    terms: BTreeMap<Exponents, S>,
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn monomial(c: S, a: i32, b: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(S::from_int(v))
    }

    pub fn p() -> Self {
        Self::monomial(S::one(), 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(S::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, S)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Exponents, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: Exponents) -> S {
        self.terms.get(&e).cloned().unwrap_or_else(S::zero)
    }

    /// The single term, if this is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(Exponents, &S)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// Constant value if this polynomial has no `p` or `q` dependence.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Highest term in lexicographic exponent order.
    pub fn leading(&self) -> Option<(Exponents, &S)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v.clone() * c.clone())).collect(),
        }
    }

    /// Multiply by `p^da q^db`.
    pub fn shift(&self, da: i32, db: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&(a, b), v)| ((a + da, b + db), v.clone())).collect(),
        }
    }

    /// Componentwise minimum exponents; `(0, 0)` for zero.
    pub fn min_exponents(&self) -> Exponents {
        let mut it = self.terms.keys();
        match it.next() {
            None => (0, 0),
            Some(&first) => it.fold(first, |(ma, mb), &(a, b)| (ma.min(a), mb.min(b))),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `q := p^k * q^0`-style monomial maps: `p^a q^b -> p^(ma*a + mb*b) q^(na*a + nb*b)`.
    pub fn map_exponents(&self, f: impl Fn(Exponents) -> Exponents) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    /// Exact value at `(p0, q0)`; `None` if a negative power of zero is needed.
    pub fn eval(&self, p0: &S, q0: &S) -> Option<S> {
        let mut acc = S::zero();
        for (&(a, b), c) in &self.terms {
            acc = acc + c.clone() * p0.powi(a as i64)? * q0.powi(b as i64)?;
        }
        Some(acc)
    }

    /// Requires nonnegative exponents.
    pub(crate) fn to_bipoly(&self) -> BiPoly<S> {
        let (ma, mb) = self.min_exponents();
        assert!(ma >= 0 && mb >= 0, "to_bipoly needs a genuine polynomial");
        let deg_p = self.terms.keys().map(|e| e.0).max().unwrap_or(-1);
        let mut rows: Vec<Vec<S>> = vec![Vec::new(); (deg_p + 1) as usize];
        for (&(a, b), c) in &self.terms {
            let row = &mut rows[a as usize];
            if row.len() <= b as usize {
                row.resize(b as usize + 1, S::zero());
            }
            row[b as usize] = c.clone();
        }
        let mut out: Vec<UPoly<S>> = rows.into_iter().map(|r| {
            let mut u = UPoly(r);
            while u.0.last().is_some_and(|c| c.is_zero()) {
                u.0.pop();
            }
            u
        }).collect();
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        BiPoly(out)
    }

    pub(crate) fn from_bipoly(b: &BiPoly<S>) -> Self {
        let mut out = Self::zero();
        for (i, row) in b.0.iter().enumerate() {
            for (j, c) in row.0.iter().enumerate() {
                out.add_term((i as i32, j as i32), c.clone());
            }
        }
        out
    }

    /// Exact quotient in the Laurent ring, if it exists.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (na, nb) = self.min_exponents();
        let (da, db) = d.min_exponents();
        let n = self.shift(-na, -nb).to_bipoly();
        let dd = d.shift(-da, -db).to_bipoly();
        let q = n.div_exact(&dd)?;
        Some(Self::from_bipoly(&q).shift(na - da, nb - db))
    }

    /// GCD in the Laurent ring, normalised to nonnegative exponents with
    /// minimal exponents `(0, 0)`.
    pub fn gcd(&self, other: &Self) -> Self {
        let norm = |x: &Self| {
            let (a, b) = x.min_exponents();
            x.shift(-a, -b).to_bipoly()
        };
        Self::from_bipoly(&norm(self).gcd(&norm(other)))
    }

    fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: &S, a: i32, b: i32, leading: bool) -> fmt::Result {
        let neg = c.is_negative();
        let abs = c.abs();
        if leading {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || (a == 0 && b == 0) {
            factors.push(abs.to_string());
        }
        for (sym, e) in [("p", a), ("q", b)] {
            match e {
                0 => {}
                1 => factors.push(sym.to_string()),
                _ => factors.push(format!("{sym}^{e}")),
            }
        }
        write!(f, "{}", factors.join("*"))
    }
}

impl<S: Scalar> Zero for LaurentPoly<S> {
    fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> One for LaurentPoly<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<'a, S: Scalar> Add<&'a LaurentPoly<S>> for &'a LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn add(self, rhs: &'a LaurentPoly<S>) -> LaurentPoly<S> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a, S: Scalar> Sub<&'a LaurentPoly<S>> for &'a LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn sub(self, rhs: &'a LaurentPoly<S>) -> LaurentPoly<S> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a, S: Scalar> Mul<&'a LaurentPoly<S>> for &'a LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn mul(self, rhs: &'a LaurentPoly<S>) -> LaurentPoly<S> {
        let mut out = LaurentPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn neg(self) -> LaurentPoly<S> {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for LaurentPoly<S> {
            type Output = LaurentPoly<S>;
            fn $m(self, rhs: LaurentPoly<S>) -> LaurentPoly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<S: Scalar> Neg for LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn neg(self) -> LaurentPoly<S> {
        -&self
    }
}

/// Terms print from the lexicographically highest exponent pair down.
impl<S: Scalar> fmt::Display for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            Self::fmt_monomial(f, c, a, b, i == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    type L = LaurentPoly<Rat>;

    #[test]
    fn printing_is_descending_lex() {
        let x = &L::p() + &L::monomial(Rat::from_int(1), 0, -1);
        assert_eq!(x.to_string(), "p + q^-1");
        let y = L::monomial(Rat::from_int(-3), 2, -1);
        assert_eq!(y.to_string(), "-3*p^2*q^-1");
        assert_eq!(L::from_int(-1).to_string(), "-1");
        let half = L::constant(Rat::new(1.into(), 2.into())) * L::q();
        assert_eq!(half.to_string(), "1/2*q");
    }

    #[test]
    fn exact_division_handles_monomial_shifts() {
        // (p - q^-1) * (1 + p q) = p + p^2 q - q^-1 - p
        let a = &L::p() - &L::monomial(Rat::from_int(1), 0, -1);
        let b = &L::one() + &L::monomial(Rat::from_int(1), 1, 1);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(L::p().div_exact(&a), None);
    }

    #[test]
    fn eval_rejects_negative_power_of_zero() {
        let x = L::monomial(Rat::from_int(1), -1, 0);
        assert_eq!(x.eval(&Rat::from_int(0), &Rat::from_int(1)), None);
        assert_eq!(x.eval(&Rat::from_int(4), &Rat::from_int(1)), Some(Rat::new(1.into(), 4.into())));
    }
}
