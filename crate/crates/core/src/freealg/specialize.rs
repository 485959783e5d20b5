use crate::coeff::{CoeffError, RatFunc, Scalar};

use super::{AlgebraError, Poly, Presentation, RewriteRule};

/// Partial substitution for the parameters `p` and `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment<S: Scalar> {
    pub p: Option<RatFunc<S>>,
    pub q: Option<RatFunc<S>>,
}

impl<S: Scalar> Assignment<S> {
    pub fn new(p: Option<RatFunc<S>>, q: Option<RatFunc<S>>) -> Self {
        Assignment { p, q }
    }

    /// The one-parameter degeneration `q := p`.
    pub fn q_to_p() -> Self {
        Assignment { p: None, q: Some(RatFunc::p()) }
    }

    pub fn apply(&self, c: &RatFunc<S>) -> Result<RatFunc<S>, CoeffError> {
        let p = self.p.clone().unwrap_or_else(RatFunc::p);
        let q = self.q.clone().unwrap_or_else(RatFunc::q);
        c.substitute(&p, &q)
    }
}

impl<S: Scalar> Poly<RatFunc<S>> {
    pub fn specialize(&self, a: &Assignment<S>) -> Result<Self, AlgebraError> {
        Ok(self.map_coeffs(|c| a.apply(c))?)
    }

    /// Exact value at a rational point; the result has scalar coefficients.
    pub fn evaluate(&self, p0: &S, q0: &S) -> Result<Poly<S>, CoeffError>
    where
        S: crate::coeff::Coeff,
    {
        self.map_coeffs(|c| c.eval(p0, q0))
    }
}

impl<S: Scalar> Presentation<RatFunc<S>> {
    /// Substitute the parameters in every rule. The leading coefficient of
    /// each defining relation must survive the substitution.
    pub fn specialize(&self, a: &Assignment<S>) -> Result<Self, AlgebraError> {
        for r in self.relations() {
            if let Some((w, lc)) = self.leading_term(r) {
                let ok = a.apply(lc).map(|v| !num_traits::Zero::is_zero(&v)).unwrap_or(false);
                if !ok {
                    return Err(AlgebraError::SingularSpecialization(self.word_string(w)));
                }
            }
        }
        let mut relations = Vec::with_capacity(self.rules().len());
        for rule in self.rules() {
            let rhs = rule
                .rhs
                .specialize(a)
                .map_err(|_| AlgebraError::SingularSpecialization(self.word_string(&rule.lhs)))?;
            relations.push(RewriteRule { lhs: rule.lhs.clone(), rhs }.as_relation());
        }
        let mut out = Presentation::build(
            format!("{}|specialized", self.label()),
            self.generators().to_vec(),
            self.order().clone(),
            relations,
            self.inverses().to_vec(),
            self.limits(),
        )?;
        out.set_completed(self.completed());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{Generator, MonomialOrder, Word};
    use crate::RatFunc;
    use num_traits::One;

    fn rf(s: &str) -> RatFunc {
        crate::cli::parse_coeff(s).unwrap()
    }

    #[test]
    fn q_to_p_on_a_relation() {
        // beta*gamma + p q^-1 gamma*beta - (p - q^-1) delta*alpha over letters 0..4
        let w = |v: &[usize]| Word::from_letters(v.iter().copied());
        let r = Poly::from_terms([
            (w(&[2, 3]), RatFunc::one()),
            (w(&[3, 2]), rf("p*q^-1")),
            (w(&[1, 0]), -rf("p - q^-1")),
        ]);
        let s = r.specialize(&Assignment::q_to_p()).unwrap();
        let expect = Poly::from_terms([
            (w(&[2, 3]), RatFunc::one()),
            (w(&[3, 2]), RatFunc::one()),
            (w(&[1, 0]), -rf("p - p^-1")),
        ]);
        assert_eq!(s, expect);
    }

    #[test]
    fn full_assignment_gives_a_number() {
        let a = Assignment::new(Some(RatFunc::one()), Some(RatFunc::one()));
        assert_eq!(a.apply(&rf("p + q^-1")).unwrap(), RatFunc::from_int(2));
    }

    #[test]
    fn vanishing_leading_coefficient_is_rejected() {
        let g = vec![Generator::even("x"), Generator::even("y")];
        let yx = Word::from_letters([1, 0]);
        let xy = Word::from_letters([0, 1]);
        let r = Poly::from_terms([(yx, rf("p - q")), (xy, RatFunc::one())]);
        let pres = Presentation::new("t", g, MonomialOrder::deglex(), vec![r]).unwrap();
        let err = pres.specialize(&Assignment::q_to_p()).unwrap_err();
        assert!(matches!(err, AlgebraError::SingularSpecialization(_)));
    }
}
