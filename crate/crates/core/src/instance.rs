//! The shipped instances behind one interface, and seeded random samples for
//! the generic engine checks.

use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adjoint::{AdjointInstance, CartanData};
use crate::cell::{ActionTable, CPoly, CellAlgebra};
use crate::error::Result;
use crate::free::GeneratorSet;
use crate::frt::FrtInstance;
use crate::phi::{PhiMap, RelationSet, TwistedAction};
use crate::scalar::Scalar;
use crate::sl2::Sl2Instance;
use crate::word::Word;

#[derive(Debug, Clone)]
pub enum Instance {
    Sl2(Sl2Instance),
    Frt(FrtInstance),
    Adjoint(AdjointInstance),
}

impl Instance {
    pub fn sl2() -> Result<Self> {
        Ok(Instance::Sl2(Sl2Instance::load()?))
    }

    pub fn frt(n: usize) -> Result<Self> {
        Ok(Instance::Frt(FrtInstance::load(n)?))
    }

    pub fn adjoint(kind: &str) -> Result<Self> {
        Ok(Instance::Adjoint(AdjointInstance::load(CartanData::from_type(kind)?)?))
    }

    /// Every shipped instance: sl2, FRT at N = 2, 3, adjoint A1, A2.
    pub fn all() -> Result<Vec<Self>> {
        Ok(vec![
            Self::sl2()?,
            Self::frt(2)?,
            Self::frt(3)?,
            Self::adjoint("A1")?,
            Self::adjoint("A2")?,
        ])
    }

    pub fn name(&self) -> String {
        match self {
            Instance::Sl2(_) => "sl2".into(),
            Instance::Frt(f) => format!("frt-A-N{}", f.n),
            Instance::Adjoint(a) => format!("adjoint-{}", a.cartan.name),
        }
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        match self {
            Instance::Sl2(i) => &i.gens,
            Instance::Frt(i) => &i.gens,
            Instance::Adjoint(i) => &i.gens,
        }
    }

    pub fn cell(&self) -> &Arc<CellAlgebra> {
        match self {
            Instance::Sl2(i) => &i.cell,
            Instance::Frt(i) => &i.cell,
            Instance::Adjoint(i) => &i.cell,
        }
    }

    pub fn table(&self) -> &Arc<ActionTable> {
        match self {
            Instance::Sl2(i) => &i.table,
            Instance::Frt(i) => &i.table,
            Instance::Adjoint(i) => &i.table,
        }
    }

    pub fn relations(&self) -> &RelationSet {
        match self {
            Instance::Sl2(i) => &i.relations,
            Instance::Frt(i) => &i.relations,
            Instance::Adjoint(i) => &i.relations,
        }
    }

    /// The twisting map with its formal parameters.
    pub fn phi(&self) -> &Arc<PhiMap> {
        match self {
            Instance::Sl2(i) => &i.phi,
            Instance::Frt(i) => &i.phi,
            Instance::Adjoint(i) => &i.phi,
        }
    }

    pub fn twisted(&self) -> TwistedAction {
        TwistedAction::new(self.phi().clone())
    }

    /// Normal words of the module algebra up to a degree, as probes.
    pub fn probes(&self, max_degree: usize) -> Vec<CPoly> {
        let cell = self.cell();
        let one = Scalar::one(cell.ctx());
        (0..=max_degree)
            .flat_map(|d| cell.normal_words(d))
            .map(|w| CPoly::word(w, one.clone()))
            .collect()
    }
}

/// Seeded sampler of words and module-algebra elements.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn word(&mut self, letters: u16, max_len: usize) -> Word {
        let len = self.rng.random_range(0..=max_len);
        let v: Vec<u16> = (0..len).map(|_| self.rng.random_range(0..letters)).collect();
        Word::from_slice(&v)
    }

    fn coeff(&mut self, cell: &CellAlgebra) -> Scalar {
        let ctx = cell.ctx();
        match self.rng.random_range(0..6) {
            0 => Scalar::one(ctx),
            1 => Scalar::integer(ctx, -1),
            2 => Scalar::integer(ctx, 2),
            3 => Scalar::q_pow(ctx, 1),
            4 => Scalar::q_pow(ctx, -1),
            _ => Scalar::qnum(ctx, 2),
        }
    }

    /// One or two normal words of degree at most `max_degree` with small
    /// coefficients.
    pub fn element(&mut self, cell: &CellAlgebra, max_degree: usize) -> CPoly {
        let terms = self.rng.random_range(1..=2);
        let mut out = CPoly::zero();
        for _ in 0..terms {
            let d = self.rng.random_range(0..=max_degree);
            let words = cell.normal_words(d);
            let w = words[self.rng.random_range(0..words.len())].clone();
            let c = self.coeff(cell);
            out.add_term(w, c);
        }
        if out.is_zero() {
            cell.one()
        } else {
            out
        }
    }

    pub fn leibniz(&mut self, inst: &Instance, count: usize, max_len: usize, max_degree: usize) -> Vec<(Word, CPoly, CPoly)> {
        let n = inst.gens().len() as u16;
        (0..count)
            .map(|_| {
                let w = self.word(n, max_len);
                let f = self.element(inst.cell(), max_degree);
                let g = self.element(inst.cell(), max_degree);
                (w, f, g)
            })
            .collect()
    }

    pub fn module_law(&mut self, inst: &Instance, count: usize, max_len: usize, max_degree: usize) -> Vec<(Word, Word, CPoly)> {
        let n = inst.gens().len() as u16;
        (0..count)
            .map(|_| {
                let x = self.word(n, max_len);
                let y = self.word(n, max_len);
                (x, y, self.element(inst.cell(), max_degree))
            })
            .collect()
    }

    pub fn word_element(&mut self, inst: &Instance, count: usize, max_len: usize, max_degree: usize) -> Vec<(Word, CPoly)> {
        let n = inst.gens().len() as u16;
        (0..count)
            .map(|_| (self.word(n, max_len), self.element(inst.cell(), max_degree)))
            .collect()
    }
}
