use crate::coeff::Coeff;

use super::{AlgebraError, Generator, Limits, MonomialOrder, Poly, Presentation, Word};

/// Which generators are made invertible, as `(g, g_inverse)` index pairs
/// into the full alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Localization {
    pub pairs: Vec<(usize, usize)>,
}

impl Localization {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Localization { pairs }
    }

    fn inverse(&self, g: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| if a == g { Some(b) } else if b == g { Some(a) } else { None })
    }

    /// Delete adjacent `g g^-1` and `g^-1 g` pairs.
    pub fn cancel(&self, w: &Word) -> Word {
        let mut out: Vec<usize> = Vec::with_capacity(w.len());
        for g in w.letters() {
            match out.last() {
                Some(&h) if self.inverse(h) == Some(g) => {
                    out.pop();
                }
                _ => out.push(g),
            }
        }
        Word::from_letters(out)
    }

    pub fn cancel_poly<C: Coeff>(&self, p: &Poly<C>) -> Poly<C> {
        p.map_words(|w| self.cancel(w))
    }

    /// `g^-1 r g^-1` with free cancellation.
    fn conjugate<C: Coeff>(&self, r: &Poly<C>, ginv: usize) -> Poly<C> {
        let s = Poly::generator(ginv);
        self.cancel_poly(&(&(&s * r) * &s))
    }

    /// Cancellation relations plus, for every base relation, its conjugates
    /// by the inverses of each nonempty set of invertible letters it uses.
    pub fn relations<C: Coeff>(&self, base: &[Poly<C>]) -> Vec<Poly<C>> {
        let mut out = Vec::new();
        for &(g, ginv) in &self.pairs {
            let one = Poly::one();
            out.push(&Poly::word(Word::from_letters([g, ginv])) - &one);
            out.push(&Poly::word(Word::from_letters([ginv, g])) - &one);
        }
        for r in base {
            out.push(r.clone());
            let used: Vec<(usize, usize)> =
                self.pairs.iter().copied().filter(|&(g, _)| r.terms().any(|(w, _)| w.letters().any(|l| l == g))).collect();
            for mask in 1..(1usize << used.len()) {
                let mut c = r.clone();
                for (k, &(_, ginv)) in used.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        c = self.conjugate(&c, ginv);
                    }
                }
                out.push(c);
            }
        }
        out
    }
}

impl<C: Coeff> Presentation<C> {
    /// Adjoin inverses: conjugated relations, inter-reduction, then bounded
    /// completion of any unresolved overlaps.
    pub fn localized(
        label: impl Into<String>,
        generators: Vec<Generator>,
        order: MonomialOrder,
        base: Vec<Poly<C>>,
        inverses: &Localization,
        limits: Limits,
    ) -> Result<Self, AlgebraError> {
        let relations = inverses.relations(&base);
        let pres = Presentation::build(label.into(), generators, order, relations, inverses.pairs.clone(), limits)?;
        pres.complete()
    }
}
