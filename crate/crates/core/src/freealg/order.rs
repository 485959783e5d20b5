use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Word;

/// Monomial order on words: tiers of integer generator weights compared in
/// turn, then word length, then lexicographic order of generator indices.
///
/// With no tiers this is the degree-lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    tiers: Vec<Vec<i64>>,
}

impl MonomialOrder {
    pub fn deglex() -> Self {
        MonomialOrder { tiers: Vec::new() }
    }

    pub fn weighted(tiers: Vec<Vec<i64>>) -> Self {
        MonomialOrder { tiers }
    }

    pub fn tiers(&self) -> &[Vec<i64>] {
        &self.tiers
    }

    /// Checks that every tier assigns a weight to each of `n` generators.
    pub fn fits(&self, n: usize) -> bool {
        self.tiers.iter().all(|t| t.len() == n)
    }

    fn weight(tier: &[i64], w: &Word) -> i64 {
        w.letters().map(|g| tier[g]).sum()
    }

    pub fn compare(&self, a: &Word, b: &Word) -> Ordering {
        for tier in &self.tiers {
            match Self::weight(tier, a).cmp(&Self::weight(tier, b)) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        a.len().cmp(&b.len()).then_with(|| a.as_slice().cmp(b.as_slice()))
    }

    /// Restrict to a sub-alphabet given by old indices, in the new order.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        MonomialOrder { tiers: self.tiers.iter().map(|t| keep.iter().map(|&g| t[g]).collect()).collect() }
    }
}
