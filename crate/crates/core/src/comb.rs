//! Finite linear combinations with [`Scalar`] coefficients.

use std::collections::BTreeMap;

use crate::linear::{add_term, SparseVec};
use crate::scalar::Scalar;
use crate::word::Word;

/// A canonical linear combination: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Comb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + std::fmt::Debug> std::fmt::Debug for Comb<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, c.to_string())))
            .finish()
    }
}

impl<K: Ord> Default for Comb<K> {
    fn default() -> Self {
        Comb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Comb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn from_sparse(terms: SparseVec<K>) -> Self {
        Self::from_terms(terms)
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        add_term(&mut self.terms, k, c);
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            add_term(&mut self.terms, k.clone(), c * x);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, x) in &other.terms {
            add_term(&mut self.terms, k.clone(), x.clone());
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, x) in &other.terms {
            add_term(&mut out.terms, k.clone(), -x);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Comb {
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Comb {
            terms: self.terms.iter().map(|(k, x)| (k.clone(), -x)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Option<&Scalar> {
        self.terms.get(k)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.terms.keys()
    }

    pub fn terms(&self) -> &SparseVec<K> {
        &self.terms
    }

    pub fn into_terms(self) -> SparseVec<K> {
        self.terms
    }

    pub fn leading(&self) -> Option<(&K, &Scalar)> {
        self.terms.last_key_value()
    }

    pub fn map_coeffs<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<Self, E> {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), f(x)?);
        }
        Ok(out)
    }
}

impl Comb<Word> {
    /// Scalar multiple of the empty word.
    pub fn constant(c: Scalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn word(w: Word, c: Scalar) -> Self {
        Self::term(w, c)
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    /// Largest word length present, or `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            Some(l) => lens.all(|m| m == l),
            None => true,
        }
    }

    /// The coefficient of the empty word, if it is the only term.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }
}

impl Comb<(Word, Word)> {
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, a2), x) in &self.terms {
            for ((b1, b2), y) in &other.terms {
                out.add_term((a1.concat(b1), a2.concat(b2)), x * y);
            }
        }
        out
    }
}
