use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::Coeff;

use super::{Parity, Presentation, Word};

/// Noncommutative polynomial: finite sum of coefficient times word.
///
/// No zero coefficients are stored. Storage order is the plain
/// lexicographic order of `Word`; the presentation's monomial order is only
/// consulted for leading terms and printing.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, C::one())
    }

    pub fn generator(g: usize) -> Self {
        Self::word(Word::letter(g))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, C)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in it {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly<C>, c: &C) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v.clone() * c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, C)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    /// Constant value if every term is the unit word.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn pop_first(&mut self) -> Option<(Word, C)> {
        self.terms.pop_first()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(w, v)| (w.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// `Some(d)` when every word has length `d`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Word::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.terms.keys().filter_map(Word::max_letter).max()
    }

    pub fn map_coeffs<D: Coeff, E>(&self, mut f: impl FnMut(&C) -> Result<D, E>) -> Result<Poly<D>, E> {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn map_words(&self, mut f: impl FnMut(&Word) -> Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    /// Common parity of all words, `None` if mixed or zero.
    pub fn parity(&self, pres: &Presentation<C>) -> Option<Parity> {
        let mut it = self.terms.keys().map(|w| pres.word_parity(w));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn display<'a>(&'a self, pres: &'a Presentation<C>) -> PolyDisplay<'a, C> {
        PolyDisplay { poly: self, pres, max_terms: None }
    }
}

impl<'a, C: Coeff> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Coeff> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

/// Concatenation product; no rewriting.
impl<'a, C: Coeff> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// Prints a polynomial with generator names, leading term first.
pub struct PolyDisplay<'a, C: Coeff> {
    poly: &'a Poly<C>,
    pres: &'a Presentation<C>,
    max_terms: Option<usize>,
}

impl<C: Coeff> PolyDisplay<'_, C> {
    /// Elide terms beyond `n`.
    pub fn truncate(mut self, n: usize) -> Self {
        self.max_terms = Some(n);
        self
    }
}

impl<C: Coeff> fmt::Display for PolyDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Word, &C)> = self.poly.terms().collect();
        terms.sort_by(|a, b| self.pres.order().compare(b.0, a.0));
        let shown = self.max_terms.unwrap_or(usize::MAX).min(terms.len());
        for (i, (w, c)) in terms[..shown].iter().enumerate() {
            let prefix = c.term_prefix();
            let word = (!w.is_empty()).then(|| self.pres.word_string(w));
            let body = match (prefix.body, word) {
                (Some(b), Some(w)) => format!("{b} * {w}"),
                (Some(b), None) => b,
                (None, Some(w)) if i == 0 && prefix.negative => format!("1 * {w}"),
                (None, Some(w)) => w,
                (None, None) => "1".to_string(),
            };
            match (i, prefix.negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        if shown < terms.len() {
            write!(f, " + ... ({} more terms)", terms.len() - shown)?;
        }
        Ok(())
    }
}
