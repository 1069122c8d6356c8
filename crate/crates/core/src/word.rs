use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A word in interned generator indices.
///
/// Words are ordered by length first and then lexicographically on the
/// indices, which is the term order used for every canonical form in the
/// crate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[u16; 6]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(i: u16) -> Self {
        Word(SmallVec::from_slice(&[i]))
    }

    pub fn from_slice(s: &[u16]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::from_slice(&self.0[start..end])
    }

    /// All words of length `len` over `n` letters, in ascending order.
    pub fn all_of_length(n: u16, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for w in &out {
                for i in 0..n {
                    let mut x = w.0.clone();
                    x.push(i);
                    next.push(Word(x));
                }
            }
            out = next;
        }
        out
    }

    /// All words of length at most `max_len`, ascending.
    pub fn all_up_to(n: u16, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|l| Word::all_of_length(n, l)).collect()
    }

    /// Positions where `pat` occurs as a contiguous subword.
    pub fn occurrences(&self, pat: &[u16]) -> Vec<usize> {
        if pat.is_empty() || pat.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pat.len())
            .filter(|&i| &self.0[i..i + pat.len()] == pat)
            .collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_then_lex() {
        let a = Word::from_slice(&[3]);
        let b = Word::from_slice(&[0, 0]);
        let c = Word::from_slice(&[0, 1]);
        assert!(a < b && b < c);
        assert!(Word::empty() < a);
    }

    #[test]
    fn enumerate() {
        assert_eq!(Word::all_up_to(2, 3).len(), 1 + 2 + 4 + 8);
        assert_eq!(Word::from_slice(&[1, 0, 1, 0]).occurrences(&[1, 0]), vec![0, 2]);
    }
}
