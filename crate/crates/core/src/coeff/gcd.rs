//! Polynomial GCD over `S[p, q]`, used to bring rational functions to lowest terms.
//!
//! Bivariate polynomials are handled recursively as polynomials in `p` whose
//! coefficients are univariate polynomials in `q`; the GCD is computed with the
//! subresultant pseudo-remainder sequence.

use super::scalar::Scalar;

/// Dense univariate polynomial, coefficients from low to high degree. Never
/// has trailing zeros; the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UPoly<S>(pub Vec<S>);

impl<S: Scalar> UPoly<S> {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&S> {
        self.0.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let out = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(S::zero);
                let b = other.0.get(i).cloned().unwrap_or_else(S::zero);
                a + b
            })
            .collect();
        UPoly(out).trimmed()
    }

    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly(out).trimmed()
    }

    pub fn scale(&self, c: &S) -> Self {
        UPoly(self.0.iter().map(|a| a.clone() * c.clone()).collect()).trimmed()
    }

    /// Euclidean division over the field `S`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lc().expect("division by zero polynomial").clone();
        let dd = d.0.len() - 1;
        let mut r = self.clone();
        if r.0.len() <= dd {
            return (Self::zero(), r);
        }
        let mut q = vec![S::zero(); r.0.len() - dd];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let f = r.0[rd].clone() / dl.clone();
            let shift = rd - dd;
            for (j, c) in d.0.iter().enumerate() {
                r.0[shift + j] = r.0[shift + j].clone() - f.clone() * c.clone();
            }
            q[shift] = f;
            r = r.trimmed();
        }
        (UPoly(q).trimmed(), r)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = UPoly(vec![S::one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(l) => {
                let inv = S::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

/// Polynomial in `p` with coefficients in `S[q]`: entry `i` multiplies `p^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BiPoly<S>(pub Vec<UPoly<S>>);

impl<S: Scalar> BiPoly<S> {
    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lc(&self) -> &UPoly<S> {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = UPoly::zero();
        let out = (0..n)
            .map(|i| {
                let a = self.0.get(i).unwrap_or(&zero);
                let b = other.0.get(i).unwrap_or(&zero);
                a.sub(b)
            })
            .collect();
        BiPoly(out).trimmed()
    }

    fn mul_coeff(&self, c: &UPoly<S>) -> Self {
        BiPoly(self.0.iter().map(|a| a.mul(c)).collect()).trimmed()
    }

    fn shift(&self, k: usize) -> Self {
        let mut out = vec![UPoly::zero(); k];
        out.extend(self.0.iter().cloned());
        BiPoly(out)
    }

    fn content(&self) -> UPoly<S> {
        self.0
            .iter()
            .fold(UPoly::zero(), |g, c| if g.is_zero() { c.monic() } else { g.gcd(c) })
    }

    fn div_coeff_exact(&self, c: &UPoly<S>) -> Self {
        BiPoly(
            self.0
                .iter()
                .map(|a| {
                    let (q, r) = a.divrem(c);
                    debug_assert!(r.is_zero(), "inexact coefficient division");
                    q
                })
                .collect(),
        )
        .trimmed()
    }

    /// Divided by its content in `S[q]`, and scaled so the leading scalar is one.
    fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        let pp = self.div_coeff_exact(&c);
        let lead = pp.lc().lc().cloned().expect("nonzero leading coefficient");
        let unit = UPoly(vec![S::one() / lead]);
        pp.mul_coeff(&unit)
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) self mod d` with respect to `p`.
    fn prem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-division by zero");
        let dl = d.lc().clone();
        let mut r = self.clone();
        let mut e = (self.degree().unwrap_or(0) + 1).saturating_sub(dd);
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.lc().clone();
            r = r.mul_coeff(&dl).sub(&d.mul_coeff(&rl).shift(rd - dd));
            e -= 1;
        }
        for _ in 0..e {
            r = r.mul_coeff(&dl);
        }
        r
    }

    /// Greatest common divisor, up to a unit of `S`, by the subresultant
    /// remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g_content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let mut g = UPoly(vec![S::one()]);
        let mut h = UPoly(vec![S::one()]);
        loop {
            let delta = a.degree().unwrap_or(0) - b.degree().unwrap_or(0);
            let r = a.prem(&b);
            if r.is_zero() {
                break;
            }
            if r.degree() == Some(0) {
                return BiPoly(vec![g_content]);
            }
            a = b;
            b = r.div_coeff_exact(&g.mul(&h.pow(delta)));
            g = a.lc().clone();
            h = if delta == 0 {
                h
            } else {
                let (q, rem) = g.pow(delta).divrem(&h.pow(delta - 1));
                debug_assert!(rem.is_zero(), "inexact subresultant step");
                q
            };
        }
        b.primitive_part().mul_coeff(&g_content)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let dl = d.lc().clone();
        let mut r = self.clone();
        let mut q = vec![UPoly::zero(); self.0.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                return None;
            }
            let (c, rem) = r.lc().divrem(&dl);
            if !rem.is_zero() {
                return None;
            }
            let shift = rd - dd;
            r = r.sub(&d.mul_coeff(&c).shift(shift));
            q[shift] = c;
        }
        Some(BiPoly(q).trimmed())
    }
}
