use std::fmt;

/// Word over generator indices; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(vec![g as u8])
    }

    pub fn from_letters<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Word(it.into_iter().map(|g| g as u8).collect())
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().map(|&g| g as usize)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn push(&mut self, g: usize) {
        self.0.push(g as u8);
    }

    /// Start positions of every occurrence of `pat`.
    pub fn occurrences<'a>(&'a self, pat: &'a Word) -> impl Iterator<Item = usize> + 'a {
        let n = pat.len();
        (0..=self.len().saturating_sub(n))
            .filter(move |&i| n <= self.len() && self.0[i..i + n] == pat.0[..])
    }

    pub fn contains(&self, pat: &Word) -> bool {
        self.occurrences(pat).next().is_some()
    }

    pub fn ends_with(&self, pat: &Word) -> bool {
        self.0.ends_with(&pat.0)
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.0.iter().max().map(|&g| g as usize)
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| format!("g{g}")).collect();
        write!(f, "{}", if parts.is_empty() { "1".to_string() } else { parts.join("*") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occurrences_overlap() {
        let w = Word::from_letters([1, 1, 1]);
        let pat = Word::from_letters([1, 1]);
        assert_eq!(w.occurrences(&pat).collect::<Vec<_>>(), vec![0, 1]);
        assert!(!pat.contains(&w));
    }

    #[test]
    fn concat_and_slice() {
        let a = Word::from_letters([0, 2]);
        let b = Word::from_letters([3]);
        let ab = a.concat(&b);
        assert_eq!(ab.slice(1, 3), Word::from_letters([2, 3]));
        assert!(ab.ends_with(&b));
        assert_eq!(ab.max_letter(), Some(3));
        assert_eq!(Word::empty().to_string(), "1");
    }
}
