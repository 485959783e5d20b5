use std::collections::BTreeMap;

use crate::coeff::Coeff;

use super::{AlgebraError, Generator, MonomialOrder, Parity, Poly, Presentation, Word};

/// Parity pattern of a 2x2 matrix of fresh entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryParity {
    /// Every entry odd.
    AllOdd,
    /// Diagonal entries odd, off-diagonal entries even.
    DiagOdd,
}

/// How a matrix entry is moved past a plane coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// Sign `(-1)^{|entry| |coordinate|}`.
    Koszul,
    /// Entries and coordinates commute.
    Commuting,
}

/// A 2x2 matrix of fresh generators. The entry alphabet is ordered
/// diagonal first: `a11 < a22 < a12 < a21`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryMatrix {
    names: [[String; 2]; 2],
    parity: EntryParity,
}

impl EntryMatrix {
    pub fn new(names: [[&str; 2]; 2], parity: EntryParity) -> Self {
        EntryMatrix { names: names.map(|row| row.map(str::to_string)), parity }
    }

    pub fn parity_of(&self, i: usize, j: usize) -> Parity {
        match (self.parity, i == j) {
            (EntryParity::AllOdd, _) | (EntryParity::DiagOdd, true) => Parity::Odd,
            (EntryParity::DiagOdd, false) => Parity::Even,
        }
    }

    /// Generator index of entry `(i, j)` in [`generators`](Self::generators).
    pub fn index(&self, i: usize, j: usize) -> usize {
        match (i, j) {
            (0, 0) => 0,
            (1, 1) => 1,
            (0, 1) => 2,
            _ => 3,
        }
    }

    pub fn generators(&self) -> Vec<Generator> {
        [(0, 0), (1, 1), (0, 1), (1, 0)]
            .iter()
            .map(|&(i, j)| Generator::new(self.names[i][j].clone(), self.parity_of(i, j)))
            .collect()
    }

    pub fn free_algebra<C: Coeff>(&self, label: &str) -> Result<Presentation<C>, AlgebraError> {
        Presentation::new(label, self.generators(), MonomialOrder::deglex(), Vec::new())
    }
}

/// Relations among the entries of `E` forced by requiring that the
/// transformed coordinates `t_i = sum_j E_ij u_j` of `source` satisfy the
/// relations of `target`.
///
/// Coordinates are moved to the right of all entries with the sign given by
/// `convention`; the coordinate words are then reduced in `source` and the
/// entry coefficient of every irreducible coordinate word must vanish.
pub fn derive_relations<C: Coeff>(
    source: &Presentation<C>,
    target: &Presentation<C>,
    entries: &EntryMatrix,
    convention: Convention,
) -> Result<Vec<Poly<C>>, AlgebraError> {
    if source.ngens() != 2 || target.ngens() != 2 {
        return Err(AlgebraError::Source("planes must have two coordinates".into()));
    }
    let sign_of = |i: usize, j: usize, coord: usize| -> bool {
        convention == Convention::Koszul
            && entries.parity_of(i, j) == Parity::Odd
            && source.generators()[coord].parity == Parity::Odd
    };
    let mut relations = Vec::new();
    for rel in target.relations() {
        // coordinate word in source -> polynomial in the entries
        let mut collected: BTreeMap<Word, Poly<C>> = BTreeMap::new();
        for (tw, tc) in rel.terms() {
            let k = tw.len();
            for choice in 0..(1usize << k) {
                let js: Vec<usize> = (0..k).map(|a| (choice >> a) & 1).collect();
                let is: Vec<usize> = tw.letters().collect();
                // coordinate a moves past the entries b > a
                let mut negative = false;
                for a in 0..k {
                    for b in a + 1..k {
                        if sign_of(is[b], js[b], js[a]) {
                            negative = !negative;
                        }
                    }
                }
                let entry_word = Word::from_letters((0..k).map(|a| entries.index(is[a], js[a])));
                let coord = source.normal_form(&Poly::word(Word::from_letters(js.iter().copied())))?;
                let c = if negative { -tc.clone() } else { tc.clone() };
                for (cw, cc) in coord.terms() {
                    collected
                        .entry(cw.clone())
                        .or_insert_with(Poly::zero)
                        .add_term(entry_word.clone(), c.clone() * cc.clone());
                }
            }
        }
        for (_, r) in collected {
            if r.is_zero() {
                continue;
            }
            if r.terms().any(|(w, _)| w.is_empty()) {
                return Err(AlgebraError::InconsistentConvention);
            }
            relations.push(r);
        }
    }
    Ok(relations)
}

/// Relations from both endomorphisms `a -> b` and `b -> a`.
pub fn derive_endomorphism_relations<C: Coeff>(
    a: &Presentation<C>,
    b: &Presentation<C>,
    entries: &EntryMatrix,
    convention: Convention,
) -> Result<Vec<Poly<C>>, AlgebraError> {
    let mut out = derive_relations(a, b, entries, convention)?;
    out.extend(derive_relations(b, a, entries, convention)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatFunc;
    use num_traits::One;

    fn plane(gens: Vec<Generator>, rels: Vec<Poly<RatFunc>>) -> Presentation<RatFunc> {
        Presentation::new("plane", gens, MonomialOrder::deglex(), rels).unwrap()
    }

    #[test]
    fn commuting_plane_to_itself_gives_quadratic_relations() {
        let w = |v: &[usize]| Word::from_letters(v.iter().copied());
        // xy - 2 yx
        let r = Poly::from_terms([(w(&[0, 1]), RatFunc::one()), (w(&[1, 0]), RatFunc::from_int(-2))]);
        let pl = plane(vec![Generator::even("x"), Generator::even("y")], vec![r]);
        let e = EntryMatrix::new([["a", "b"], ["c", "d"]], EntryParity::AllOdd);
        let rels = derive_relations(&pl, &pl, &e, Convention::Commuting).unwrap();
        assert!(!rels.is_empty());
        assert!(rels.iter().all(|r| r.homogeneous_degree() == Some(2)));
    }

    #[test]
    fn grassmann_squares_from_a_fermionic_target() {
        let w = |v: &[usize]| Word::from_letters(v.iter().copied());
        let src = plane(vec![Generator::even("x"), Generator::even("y")], vec![]);
        let sq = |g: usize| Poly::<RatFunc>::word(w(&[g, g]));
        let tgt = plane(vec![Generator::odd("u"), Generator::odd("v")], vec![sq(0), sq(1)]);
        let e = EntryMatrix::new([["a", "b"], ["c", "d"]], EntryParity::AllOdd);
        let rels = derive_relations(&src, &tgt, &e, Convention::Koszul).unwrap();
        // free source plane: every product of two entries of one row
        assert_eq!(rels.len(), 8);
        let aa = Poly::word(w(&[0, 0]));
        assert!(rels.contains(&aa));
    }
}
