//! Explicit certificates that the coproduct of each relation lies in
//! `I ⊗ F + F ⊗ (F·S) + F ⊗ (F·S'·F)`, where `S` is a finite closure set, `I`
//! the two-sided ideal it generates, and `S'` the members whose certificates
//! were found earlier.
//!
//! A relation whose coproduct has this shape is killed by every twisted action
//! built from a map vanishing on `S`, so a certificate is the precondition for
//! checking the map on relations alone. For the `S'` terms this goes by
//! induction along the certification order: once `s` acts as zero,
//! `φ(a s b) = a·(s·φ(b)) = 0`.

use std::collections::{BTreeSet, HashSet};

use super::{FreeElement, GeneratorSet, TensorElement};
use crate::error::{Error, Result};
use crate::linear::Echelon;
use crate::scalar::Scalar;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Placement {
    /// `(prefix · s · suffix) ⊗ other`
    Left { prefix: Word, suffix: Word, other: Word },
    /// `other ⊗ (prefix · s · suffix)`; a non-empty suffix needs `s`
    /// certified earlier.
    Right { other: Word, prefix: Word, suffix: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateTerm {
    /// Index into the closure set.
    pub member: usize,
    pub placement: Placement,
    pub coeff: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoidealCertificate {
    pub relation: usize,
    pub terms: Vec<CertificateTerm>,
}

/// Search limits for [`GeneratorSet::coideal_certificate`].
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub rounds: usize,
    pub max_candidates: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            rounds: 3,
            max_candidates: 20_000,
        }
    }
}

fn expand(member: &FreeElement, placement: &Placement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (m, c) in member.iter() {
        let key = match placement {
            Placement::Left { prefix, suffix, other } => (prefix.concat(m).concat(suffix), other.clone()),
            Placement::Right { other, prefix, suffix } => (other.clone(), prefix.concat(m).concat(suffix)),
        };
        out.add_term(key, c.clone());
    }
    out
}

impl CertificateTerm {
    pub fn expand(&self, closure: &[FreeElement]) -> TensorElement {
        expand(&closure[self.member], &self.placement).scale(&self.coeff)
    }
}

impl CoidealCertificate {
    /// Closure members used with a non-empty right suffix.
    pub fn suffix_members(&self) -> BTreeSet<usize> {
        self.terms
            .iter()
            .filter(|t| matches!(&t.placement, Placement::Right { suffix, .. } if !suffix.is_empty()))
            .map(|t| t.member)
            .collect()
    }

    /// Recompute the combination and compare it with the coproduct of the
    /// relation.
    pub fn verify(&self, gens: &GeneratorSet, relations: &[FreeElement], closure: &[FreeElement]) -> bool {
        let mut sum = TensorElement::zero();
        for t in &self.terms {
            sum.add_assign(&t.expand(closure));
        }
        sum == gens.coproduct(&relations[self.relation])
    }
}

impl GeneratorSet {
    /// Certificates for every relation, in the order they were found, or the
    /// first relation for which none was found.
    pub fn coideal_certificate(
        &self,
        relations: &[FreeElement],
        closure: &[FreeElement],
    ) -> Result<Vec<CoidealCertificate>> {
        self.coideal_certificate_with(relations, closure, SearchLimits::default())
    }

    pub fn coideal_certificate_with(
        &self,
        relations: &[FreeElement],
        closure: &[FreeElement],
        limits: SearchLimits,
    ) -> Result<Vec<CoidealCertificate>> {
        let supports: Vec<Vec<Word>> = closure
            .iter()
            .map(|c| {
                let set: BTreeSet<Word> = c.keys().filter(|w| !w.is_empty()).cloned().collect();
                set.into_iter().collect()
            })
            .collect();
        let mut trusted = vec![false; closure.len()];
        let mut pending: Vec<usize> = (0..relations.len()).collect();
        let mut out = Vec::new();
        loop {
            let before = pending.len();
            let mut rest = Vec::new();
            for i in pending {
                match self.certify_one(i, &relations[i], closure, &supports, &trusted, limits) {
                    Some(cert) => {
                        for (m, c) in closure.iter().enumerate() {
                            if *c == relations[i] {
                                trusted[m] = true;
                            }
                        }
                        out.push(cert);
                    }
                    None => rest.push(i),
                }
            }
            pending = rest;
            if pending.is_empty() {
                return Ok(out);
            }
            if pending.len() == before {
                let i = pending[0];
                return Err(Error::NoCertificate {
                    index: i,
                    relation: self.render(&relations[i]),
                });
            }
        }
    }

    fn certify_one(
        &self,
        index: usize,
        relation: &FreeElement,
        closure: &[FreeElement],
        supports: &[Vec<Word>],
        trusted: &[bool],
        limits: SearchLimits,
    ) -> Option<CoidealCertificate> {
        let target = self.coproduct(relation);
        if target.is_zero() {
            return Some(CoidealCertificate {
                relation: index,
                terms: Vec::new(),
            });
        }
        let mut echelon: Echelon<(Word, Word)> = Echelon::new();
        let mut candidates: Vec<(usize, Placement)> = Vec::new();
        let mut seen: HashSet<(usize, Placement)> = HashSet::new();
        let mut visited: HashSet<(Word, Word)> = target.keys().cloned().collect();
        let mut frontier: Vec<(Word, Word)> = target.keys().cloned().collect();

        for _ in 0..limits.rounds {
            let mut next = Vec::new();
            for (l, w) in &frontier {
                for (member, words) in supports.iter().enumerate() {
                    for m in words {
                        let mut found = Vec::new();
                        for p in l.occurrences(m.letters()) {
                            found.push(Placement::Left {
                                prefix: l.slice(0, p),
                                suffix: l.slice(p + m.len(), l.len()),
                                other: w.clone(),
                            });
                        }
                        for p in w.occurrences(m.letters()) {
                            let end = p + m.len();
                            if end == w.len() || trusted[member] {
                                found.push(Placement::Right {
                                    other: l.clone(),
                                    prefix: w.slice(0, p),
                                    suffix: w.slice(end, w.len()),
                                });
                            }
                        }
                        for placement in found {
                            let key = (member, placement);
                            if !seen.insert(key.clone()) {
                                continue;
                            }
                            let v = expand(&closure[member], &key.1);
                            for k in v.keys() {
                                if visited.insert(k.clone()) {
                                    next.push(k.clone());
                                }
                            }
                            // a candidate with a non-invertible leading coefficient is skipped
                            if echelon.insert(v.into_terms(), candidates.len()).is_err() {
                                continue;
                            }
                            candidates.push(key);
                            if candidates.len() >= limits.max_candidates {
                                return self.extract(index, &echelon, &target, &candidates);
                            }
                        }
                    }
                }
            }
            if let Some(cert) = self.extract(index, &echelon, &target, &candidates) {
                return Some(cert);
            }
            if next.is_empty() {
                return None;
            }
            frontier = next;
        }
        None
    }

    fn extract(
        &self,
        index: usize,
        echelon: &Echelon<(Word, Word)>,
        target: &TensorElement,
        candidates: &[(usize, Placement)],
    ) -> Option<CoidealCertificate> {
        let (rem, combo) = echelon.reduce(target.terms().clone());
        if !rem.is_empty() {
            return None;
        }
        Some(CoidealCertificate {
            relation: index,
            terms: combo
                .into_iter()
                .map(|(tag, coeff)| CertificateTerm {
                    member: candidates[tag].0,
                    placement: candidates[tag].1.clone(),
                    coeff,
                })
                .collect(),
        })
    }
}
