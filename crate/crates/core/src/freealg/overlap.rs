use std::time::Instant;

use crate::coeff::Coeff;
use crate::verify::{Check, Report};

use super::{AlgebraError, Poly, Presentation, Word};

/// One ambiguity of the rewrite system and its two reductions.
#[derive(Clone, Debug)]
pub struct Overlap<C> {
    pub word: Word,
    /// Index of the rule applied first on the left path.
    pub first_rule: usize,
    /// Index of the rule applied first on the right path.
    pub second_rule: usize,
    pub left: Result<Poly<C>, AlgebraError>,
    pub right: Result<Poly<C>, AlgebraError>,
}

impl<C: Coeff> Overlap<C> {
    pub fn resolves(&self) -> bool {
        matches!((&self.left, &self.right), (Ok(a), Ok(b)) if a == b)
    }

    pub fn discrepancy(&self) -> Option<Poly<C>> {
        match (&self.left, &self.right) {
            (Ok(a), Ok(b)) if a != b => Some(a - b),
            _ => None,
        }
    }
}

impl<C: Coeff> Presentation<C> {
    /// Every overlap and inclusion ambiguity between rule left sides.
    pub fn overlaps(&self) -> Vec<Overlap<C>> {
        let rules = self.rules();
        let mut out = Vec::new();
        for (i, ri) in rules.iter().enumerate() {
            for (j, rj) in rules.iter().enumerate() {
                let (li, lj) = (ri.lhs.len(), rj.lhs.len());
                // suffix of lhs_i equals prefix of lhs_j
                for k in 1..li.min(lj) {
                    if ri.lhs.as_slice()[li - k..] != rj.lhs.as_slice()[..k] {
                        continue;
                    }
                    let tail = rj.lhs.slice(k, lj);
                    let head = ri.lhs.slice(0, li - k);
                    let word = ri.lhs.concat(&tail);
                    let left = &ri.rhs * &Poly::word(tail);
                    let right = &Poly::word(head) * &rj.rhs;
                    out.push(Overlap {
                        word,
                        first_rule: i,
                        second_rule: j,
                        left: self.normal_form(&left),
                        right: self.normal_form(&right),
                    });
                }
                // lhs_j strictly inside lhs_i
                if i != j && lj <= li {
                    for pos in ri.lhs.occurrences(&rj.lhs) {
                        let head = Poly::word(ri.lhs.slice(0, pos));
                        let tail = Poly::word(ri.lhs.slice(pos + lj, li));
                        let right = &(&head * &rj.rhs) * &tail;
                        out.push(Overlap {
                            word: ri.lhs.clone(),
                            first_rule: i,
                            second_rule: j,
                            left: self.normal_form(&ri.rhs),
                            right: self.normal_form(&right),
                        });
                    }
                }
            }
        }
        out
    }

    /// Local confluence report: one check per ambiguity.
    pub fn overlap_check(&self) -> Report {
        let start = Instant::now();
        let mut report = Report::new(format!("confluence:{}", self.label()));
        for ov in self.overlaps() {
            let name = format!(
                "{}: overlap {} (rules {} / {})",
                self.label(),
                self.word_string(&ov.word),
                ov.first_rule,
                ov.second_rule
            );
            let check = if ov.resolves() {
                Check::pass(name, "diamond condition")
            } else {
                let residual = match (&ov.left, &ov.right) {
                    (Ok(a), Ok(b)) => (a - b).display(self).truncate(32).to_string(),
                    (Err(e), _) | (_, Err(e)) => e.to_string(),
                };
                Check::fail(name, "diamond condition", residual)
            };
            report.push(check);
        }
        if report.checks.is_empty() {
            report.push(Check::pass(format!("{}: no overlap ambiguities", self.label()), "diamond condition"));
        }
        if self.completed() > 0 {
            report.push(Check::pass(
                format!("{}: completion added {} relation(s)", self.label(), self.completed()),
                "bounded completion",
            ));
        }
        report.finish(start);
        report
    }

    /// Add unresolved overlap discrepancies as relations until the system is
    /// locally confluent or the rule cap is reached.
    pub fn complete(&self) -> Result<Presentation<C>, AlgebraError> {
        let mut current = self.clone();
        let mut added = self.completed();
        loop {
            let mut new = Vec::new();
            for ov in current.overlaps() {
                if ov.resolves() {
                    continue;
                }
                match ov.discrepancy() {
                    Some(d) => new.push(d),
                    None => {
                        let err = ov.left.err().or(ov.right.err()).expect("unresolved overlap without error");
                        return Err(err);
                    }
                }
            }
            if new.is_empty() {
                current.set_completed(added);
                return Ok(current);
            }
            added += new.len();
            if current.rules().len() + new.len() > current.limits().max_rules {
                return Err(AlgebraError::CompletionLimit {
                    presentation: current.label().to_string(),
                    cap: current.limits().max_rules,
                });
            }
            current = current.with_relations(new)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{Generator, MonomialOrder};
    use crate::Rat;

    fn pres(gens: &[&str], rels: Vec<Poly<Rat>>) -> Presentation<Rat> {
        let g = gens.iter().map(|n| Generator::even(*n)).collect();
        Presentation::new("t", g, MonomialOrder::deglex(), rels).unwrap()
    }

    fn w(v: &[usize]) -> Poly<Rat> {
        Poly::word(Word::from_letters(v.iter().copied()))
    }

    #[test]
    fn idempotent_square_resolves() {
        let p = pres(&["x"], vec![&w(&[0, 0]) - &w(&[0])]);
        let report = p.overlap_check();
        assert!(report.passed());
        assert_eq!(report.checks.len(), 1);
    }

    #[test]
    fn mutual_inverses_resolve() {
        let one = Poly::<Rat>::one();
        let p = pres(&["x", "y"], vec![&w(&[0, 1]) - &one, &w(&[1, 0]) - &one]);
        let report = p.overlap_check();
        assert!(report.passed());
        // xyx and yxy
        assert_eq!(report.checks.len(), 2);
    }

    #[test]
    fn completion_repairs_a_missing_rule() {
        // xy -> x and yz -> y disagree on xyz: xz versus x
        let rels = vec![&w(&[0, 1]) - &w(&[0]), &w(&[1, 2]) - &w(&[1])];
        let p = pres(&["x", "y", "z"], rels);
        assert!(!p.overlap_check().passed());
        let done = p.complete().unwrap();
        assert!(done.overlap_check().passed());
        assert_eq!(done.completed(), 1);
        assert_eq!(done.normal_form(&w(&[0, 2, 2])).unwrap(), w(&[0]));
    }
}
