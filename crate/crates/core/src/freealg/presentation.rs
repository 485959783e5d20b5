use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;

use super::{AlgebraError, MonomialOrder, Poly, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn plus(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A generator; its position in the presentation is its order index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
}

impl Generator {
    pub fn new(name: impl Into<String>, parity: Parity) -> Self {
        Generator { name: name.into(), parity }
    }

    pub fn even(name: impl Into<String>) -> Self {
        Self::new(name, Parity::Even)
    }

    pub fn odd(name: impl Into<String>) -> Self {
        Self::new(name, Parity::Odd)
    }
}

/// Oriented relation `lhs -> rhs`; every word of `rhs` is smaller than `lhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule<C> {
    pub lhs: Word,
    pub rhs: Poly<C>,
}

impl<C: Coeff> RewriteRule<C> {
    pub fn as_relation(&self) -> Poly<C> {
        &Poly::word(self.lhs.clone()) - &self.rhs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Longest word tolerated during reduction.
    pub max_word_len: usize,
    /// Largest rule count completion may reach.
    pub max_rules: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_word_len: 64, max_rules: 64 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionStrategy {
    /// Right-to-left accumulation with a shared cache of word normal forms.
    Memoized,
    /// Always rewrite the leftmost redex.
    Leftmost,
    /// Always rewrite the rightmost redex.
    Rightmost,
}

/// Finitely presented graded algebra: ordered generators plus an
/// inter-reduced rewrite system.
pub struct Presentation<C: Coeff> {
    label: String,
    generators: Vec<Generator>,
    order: MonomialOrder,
    relations: Vec<Poly<C>>,
    inverses: Vec<(usize, usize)>,
    rules: Vec<RewriteRule<C>>,
    completed: usize,
    limits: Limits,
    by_last: Vec<Vec<usize>>,
    /// Words with more odd letters than this are zero; see [`Presentation::odd_bound`].
    odd_bound: Option<usize>,
    cache: RwLock<HashMap<Word, Poly<C>>>,
}

impl<C: Coeff> Clone for Presentation<C> {
    fn clone(&self) -> Self {
        Presentation {
            label: self.label.clone(),
            generators: self.generators.clone(),
            order: self.order.clone(),
            relations: self.relations.clone(),
            inverses: self.inverses.clone(),
            rules: self.rules.clone(),
            completed: self.completed,
            limits: self.limits,
            by_last: self.by_last.clone(),
            odd_bound: self.odd_bound,
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl<C: Coeff> fmt::Debug for Presentation<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("label", &self.label)
            .field("generators", &self.generators)
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl<C: Coeff> Presentation<C> {
    /// Free algebra on the given generators.
    pub fn free(label: impl Into<String>, generators: Vec<Generator>) -> Result<Self, AlgebraError> {
        Self::new(label, generators, MonomialOrder::deglex(), Vec::new())
    }

    pub fn new(
        label: impl Into<String>,
        generators: Vec<Generator>,
        order: MonomialOrder,
        relations: Vec<Poly<C>>,
    ) -> Result<Self, AlgebraError> {
        Self::build(label.into(), generators, order, relations, Vec::new(), Limits::default())
    }

    pub(crate) fn build(
        label: String,
        generators: Vec<Generator>,
        order: MonomialOrder,
        relations: Vec<Poly<C>>,
        inverses: Vec<(usize, usize)>,
        limits: Limits,
    ) -> Result<Self, AlgebraError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(AlgebraError::DuplicateGenerator(g.name.clone()));
            }
        }
        if generators.len() > u8::MAX as usize {
            return Err(AlgebraError::Source("too many generators".into()));
        }
        if !order.fits(generators.len()) {
            return Err(AlgebraError::Source(format!(
                "monomial order weights must list one entry per generator ({})",
                generators.len()
            )));
        }
        let mut pres = Presentation {
            label,
            generators,
            order,
            relations: Vec::new(),
            inverses,
            rules: Vec::new(),
            completed: 0,
            limits,
            by_last: Vec::new(),
            odd_bound: None,
            cache: RwLock::new(HashMap::new()),
        };
        for r in &relations {
            pres.check_letters(r)?;
        }
        pres.rules = pres.autoreduce(relations.clone())?;
        pres.relations = relations;
        pres.index_rules();
        Ok(pres)
    }

    /// Same generators and order with extra relations appended.
    pub fn with_relations(&self, extra: Vec<Poly<C>>) -> Result<Self, AlgebraError> {
        let mut relations = self.relations.clone();
        relations.extend(extra);
        Self::build(
            self.label.clone(),
            self.generators.clone(),
            self.order.clone(),
            relations,
            self.inverses.clone(),
            self.limits,
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub(crate) fn set_completed(&mut self, n: usize) {
        self.completed = n;
    }

    fn index_rules(&mut self) {
        let mut by_last = vec![Vec::new(); self.generators.len()];
        for (i, r) in self.rules.iter().enumerate() {
            if let Some(&g) = r.lhs.as_slice().last() {
                by_last[g as usize].push(i);
            }
        }
        self.by_last = by_last;
        self.odd_bound = self.find_odd_bound();
        self.cache = RwLock::new(HashMap::new());
    }

    /// Number of odd generators, when the rules show that every odd generator
    /// squares to zero and every pair of letters involving an odd one commutes
    /// up to a nonzero scalar. Then any word with more odd letters can be
    /// rearranged, up to a unit, to contain a square of an odd generator, so it
    /// is zero.
    fn find_odd_bound(&self) -> Option<usize> {
        let odd: Vec<usize> = (0..self.generators.len()).filter(|&g| self.generators[g].parity == Parity::Odd).collect();
        if odd.is_empty() {
            return None;
        }
        let rule_for = |w: &Word| self.rules.iter().find(|r| &r.lhs == w);
        let squares_vanish = odd.iter().all(|&o| {
            let w = Word::from_letters([o, o]);
            rule_for(&w).is_some_and(|r| r.rhs.is_zero())
        });
        let swaps = |x: usize, y: usize| {
            let (xy, yx) = (Word::from_letters([x, y]), Word::from_letters([y, x]));
            let ok = |r: &RewriteRule<C>, other: &Word| {
                let mut t = r.rhs.terms();
                matches!((t.next(), t.next()), (Some((w, _)), None) if w == other)
            };
            match (rule_for(&xy), rule_for(&yx)) {
                (Some(r), _) => ok(r, &yx),
                (None, Some(r)) => ok(r, &xy),
                (None, None) => false,
            }
        };
        let commuting = odd.iter().all(|&o| (0..self.generators.len()).filter(|&g| g != o).all(|g| swaps(o, g)));
        (squares_vanish && commuting).then_some(odd.len())
    }

    fn odd_count(&self, w: &Word) -> usize {
        w.letters().filter(|&g| self.generators[g].parity == Parity::Odd).count()
    }

    /// True when `w` is known to be zero because of too many odd letters.
    fn vanishes(&self, w: &Word) -> bool {
        self.odd_bound.is_some_and(|b| self.odd_count(w) > b)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// The generator named `name`, as a polynomial.
    pub fn gen(&self, name: &str) -> Result<Poly<C>, AlgebraError> {
        self.generator_index(name)
            .map(Poly::generator)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn rules(&self) -> &[RewriteRule<C>] {
        &self.rules
    }

    /// Defining relations as supplied, before orientation.
    pub fn relations(&self) -> &[Poly<C>] {
        &self.relations
    }

    pub fn inverses(&self) -> &[(usize, usize)] {
        &self.inverses
    }

    pub fn inverse_of(&self, g: usize) -> Option<usize> {
        self.inverses.iter().find_map(|&(a, b)| (a == g).then_some(b).or((b == g).then_some(a)))
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Number of relations added by bounded completion.
    pub fn completed(&self) -> usize {
        self.completed
    }

    pub fn word_parity(&self, w: &Word) -> super::Parity {
        Parity::from_bit(w.letters().map(|g| self.generators[g].parity.bit()).sum())
    }

    pub fn word_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().map(|g| self.generators[g].name.as_str()).collect::<Vec<_>>().join("*")
    }

    pub fn check_letters(&self, p: &Poly<C>) -> Result<(), AlgebraError> {
        match p.max_letter() {
            Some(m) if m >= self.generators.len() => Err(AlgebraError::GeneratorMismatch {
                presentation: self.label.clone(),
                index: m,
                available: self.generators.len(),
            }),
            _ => Ok(()),
        }
    }

    /// Concatenation product over this presentation's alphabet, unreduced.
    pub fn free_mul(&self, a: &Poly<C>, b: &Poly<C>) -> Result<Poly<C>, AlgebraError> {
        self.check_letters(a)?;
        self.check_letters(b)?;
        Ok(a * b)
    }

    /// Product followed by reduction.
    pub fn mul(&self, a: &Poly<C>, b: &Poly<C>) -> Result<Poly<C>, AlgebraError> {
        self.normal_form(&self.free_mul(a, b)?)
    }

    /// Leading word and coefficient under the monomial order.
    pub fn leading_term<'a>(&self, p: &'a Poly<C>) -> Option<(&'a Word, &'a C)> {
        p.terms().max_by(|a, b| self.order.compare(a.0, b.0))
    }

    /// Turn a relation `r = 0` into a rule whose left side is its leading word.
    pub fn orient(&self, relation: &Poly<C>) -> Result<RewriteRule<C>, AlgebraError> {
        self.check_letters(relation)?;
        orient_with(&self.order, relation)
    }

    fn autoreduce(&self, relations: Vec<Poly<C>>) -> Result<Vec<RewriteRule<C>>, AlgebraError> {
        let mut rules: Vec<RewriteRule<C>> = Vec::new();
        let mut pending: std::collections::VecDeque<Poly<C>> = relations.into();
        let mut steps = 0usize;
        while let Some(r) = pending.pop_front() {
            steps += 1;
            if steps > 64 * (self.limits.max_rules + 16) {
                return Err(AlgebraError::CompletionLimit { presentation: self.label.clone(), cap: self.limits.max_rules });
            }
            let r = reduce_naive(&rules, &r, ReductionStrategy::Leftmost, self.limits.max_word_len, &self.label, |_| false)?;
            if r.is_zero() {
                continue;
            }
            let rule = orient_with(&self.order, &r)?;
            let mut kept = Vec::with_capacity(rules.len() + 1);
            for old in rules.drain(..) {
                if old.lhs.contains(&rule.lhs) {
                    pending.push_back(old.as_relation());
                } else {
                    kept.push(old);
                }
            }
            kept.push(rule);
            rules = kept;
        }
        for i in 0..rules.len() {
            let rhs = reduce_naive(&rules, &rules[i].rhs, ReductionStrategy::Leftmost, self.limits.max_word_len, &self.label, |_| false)?;
            rules[i].rhs = rhs;
        }
        rules.sort_by(|a, b| self.order.compare(&a.lhs, &b.lhs));
        Ok(rules)
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        !self.vanishes(w) && !self.rules.iter().any(|r| w.contains(&r.lhs))
    }

    /// All irreducible words, grouped by length `0..=max_len`.
    pub fn irreducible_words(&self, max_len: usize) -> Vec<Vec<Word>> {
        let mut levels = vec![vec![Word::empty()]];
        for _ in 0..max_len {
            let prev = levels.last().expect("nonempty");
            let mut next = Vec::new();
            for w in prev {
                for g in 0..self.ngens() {
                    let mut v = w.clone();
                    v.push(g);
                    if !self.by_last[g].iter().any(|&i| v.ends_with(&self.rules[i].lhs)) {
                        next.push(v);
                    }
                }
            }
            levels.push(next);
        }
        levels
    }

    /// Normal form modulo the two-sided ideal of relations.
    pub fn normal_form(&self, p: &Poly<C>) -> Result<Poly<C>, AlgebraError> {
        self.normal_form_with(p, ReductionStrategy::Memoized)
    }

    pub fn normal_form_with(&self, p: &Poly<C>, strategy: ReductionStrategy) -> Result<Poly<C>, AlgebraError> {
        self.check_letters(p)?;
        match strategy {
            ReductionStrategy::Memoized => {
                let mut out = Poly::zero();
                for (w, c) in p.terms() {
                    out.add_scaled(&self.nf_word(w)?, c);
                }
                Ok(out)
            }
            s => reduce_naive(&self.rules, p, s, self.limits.max_word_len, &self.label, |w| self.vanishes(w)),
        }
    }

    fn degree_error(&self, len: usize) -> AlgebraError {
        AlgebraError::DegreeBound { presentation: self.label.clone(), len, cap: self.limits.max_word_len }
    }

    fn nf_word(&self, w: &Word) -> Result<Poly<C>, AlgebraError> {
        if w.len() > self.limits.max_word_len {
            return Err(self.degree_error(w.len()));
        }
        if self.vanishes(w) {
            return Ok(Poly::zero());
        }
        if let Some(hit) = self.cache.read().expect("cache lock").get(w) {
            return Ok(hit.clone());
        }
        let result = match w.as_slice().split_last() {
            None => Poly::one(),
            Some((&last, init)) => {
                let head = self.nf_word(&Word::from(init.to_vec()))?;
                let mut out = Poly::zero();
                for (u, c) in head.terms() {
                    out.add_scaled(&self.nf_append(u, last as usize)?, c);
                }
                out
            }
        };
        self.cache.write().expect("cache lock").insert(w.clone(), result.clone());
        Ok(result)
    }

    /// Normal form of `u * g` for an irreducible `u`.
    fn nf_append(&self, u: &Word, g: usize) -> Result<Poly<C>, AlgebraError> {
        let mut v = u.clone();
        v.push(g);
        for &i in &self.by_last[g] {
            let rule = &self.rules[i];
            if v.ends_with(&rule.lhs) {
                let head = v.slice(0, v.len() - rule.lhs.len());
                let mut out = Poly::zero();
                for (rw, rc) in rule.rhs.terms() {
                    out.add_scaled(&self.nf_word(&head.concat(rw))?, rc);
                }
                return Ok(out);
            }
        }
        Ok(Poly::word(v))
    }

    /// Substitute polynomials for generators: `images[g]` replaces letter `g`.
    /// The result lives over whatever alphabet the images use; unreduced.
    pub fn substitute(p: &Poly<C>, images: &[Poly<C>]) -> Poly<C> {
        let mut out = Poly::zero();
        for (w, c) in p.terms() {
            let mut acc = Poly::constant(c.clone());
            for g in w.letters() {
                acc = &acc * &images[g];
            }
            out = &out + &acc;
        }
        out
    }

    /// Map a polynomial over `other` into this presentation by generator name.
    pub fn lift(&self, p: &Poly<C>, other: &Presentation<C>) -> Result<Poly<C>, AlgebraError> {
        other.check_letters(p)?;
        let map: Vec<Option<usize>> =
            other.generators.iter().map(|g| self.generator_index(&g.name)).collect();
        let mut out = Poly::zero();
        for (w, c) in p.terms() {
            let letters: Result<Vec<usize>, AlgebraError> = w
                .letters()
                .map(|g| map[g].ok_or_else(|| AlgebraError::UnknownGenerator(other.generators[g].name.clone())))
                .collect();
            out.add_term(Word::from_letters(letters?), c.clone());
        }
        Ok(out)
    }

    /// Rule-by-rule equality: same generator names and order, same left
    /// sides, equal right sides.
    pub fn same_rules(&self, other: &Presentation<C>) -> bool {
        self.generators == other.generators
            && self.rules.len() == other.rules.len()
            && self.rules.iter().zip(&other.rules).all(|(a, b)| a.lhs == b.lhs && a.rhs == b.rhs)
    }
}

pub(crate) fn orient_with<C: Coeff>(order: &MonomialOrder, relation: &Poly<C>) -> Result<RewriteRule<C>, AlgebraError> {
    let (lead, lc) = relation
        .terms()
        .max_by(|a, b| order.compare(a.0, b.0))
        .ok_or(AlgebraError::ZeroRelation)?;
    if lead.is_empty() {
        return Err(AlgebraError::InconsistentRelations);
    }
    let inv = lc.inv().ok_or_else(|| AlgebraError::NonOrientable(format!("leading coefficient {lc} is not invertible")))?;
    let mut rhs = Poly::zero();
    for (w, c) in relation.terms() {
        if w != lead {
            rhs.add_term(w.clone(), -(c.clone() * inv.clone()));
        }
    }
    Ok(RewriteRule { lhs: lead.clone(), rhs })
}

fn find_redex<C: Coeff>(rules: &[RewriteRule<C>], w: &Word, strategy: ReductionStrategy) -> Option<(usize, usize)> {
    // (rule, start, end)
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, r) in rules.iter().enumerate() {
        for pos in w.occurrences(&r.lhs) {
            let end = pos + r.lhs.len();
            let better = match best {
                None => true,
                Some((_, bs, be)) => match strategy {
                    ReductionStrategy::Rightmost => end > be,
                    _ => pos < bs,
                },
            };
            if better {
                best = Some((i, pos, end));
            }
        }
    }
    best.map(|(i, pos, _)| (i, pos))
}

pub(crate) fn reduce_naive<C: Coeff>(
    rules: &[RewriteRule<C>],
    p: &Poly<C>,
    strategy: ReductionStrategy,
    cap: usize,
    label: &str,
    vanishes: impl Fn(&Word) -> bool,
) -> Result<Poly<C>, AlgebraError> {
    let mut pending = p.clone();
    let mut out = Poly::zero();
    while let Some((w, c)) = pending.pop_first() {
        if vanishes(&w) {
            continue;
        }
        if w.len() > cap {
            return Err(AlgebraError::DegreeBound { presentation: label.to_string(), len: w.len(), cap });
        }
        match find_redex(rules, &w, strategy) {
            None => out.add_term(w, c),
            Some((i, pos)) => {
                let r = &rules[i];
                let head = w.slice(0, pos);
                let tail = w.slice(pos + r.lhs.len(), w.len());
                for (rw, rc) in r.rhs.terms() {
                    pending.add_term(head.concat(rw).concat(&tail), rc.clone() * c.clone());
                }
            }
        }
    }
    Ok(out)
}


#[cfg(test)]
mod odd_bound_tests {
    use super::*;
    use crate::freealg::presets::preset;

    #[test]
    fn bound_is_the_number_of_odd_generators() {
        // gamma*beta has a two-term right-hand side
        assert_eq!(preset("gr2").unwrap().odd_bound, None);
        assert_eq!(preset("gr11").unwrap().odd_bound, Some(2));
        assert_eq!(preset("gr11_localized").unwrap().odd_bound, Some(2));
        let free = Presentation::<crate::RatFunc>::free("f", vec![Generator::odd("x")]).unwrap();
        assert_eq!(free.odd_bound, None);
    }

    #[test]
    fn localized_reduction_terminates_rightmost_first() {
        let p = preset("gr11_localized").unwrap();
        let w = Poly::word(Word::from_letters([4, 2, 2]));
        let a = p.normal_form_with(&w, ReductionStrategy::Rightmost).unwrap();
        assert_eq!(a, p.normal_form_with(&w, ReductionStrategy::Leftmost).unwrap());
        assert_eq!(a, p.normal_form(&w).unwrap());
    }
}
