use std::collections::VecDeque;
use std::sync::Arc;

use super::TwistedAction;
use crate::cell::{CPoly, CellAlgebra};
use crate::error::{Error, Result};
use crate::free::{FreeElement, GeneratorSet};
use crate::linear::{Echelon, Matrix};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::word::Word;

/// The span of `1` under the twisted action, with the matrices of the
/// generators on a reduced echelon basis.
///
/// Basis vectors are sorted by ascending leading monomial and normalized to
/// leading coefficient 1. Matrices act on coordinate columns: column `j` of
/// a generator's matrix holds the coordinates of its action on basis vector
/// `j`.
#[derive(Debug, Clone)]
pub struct CyclicSubmodule {
    cell: Arc<CellAlgebra>,
    gens: Arc<GeneratorSet>,
    basis: Vec<CPoly>,
    pivots: Vec<Word>,
    matrices: Vec<Matrix>,
}

#[derive(Debug, Clone)]
pub enum Closure {
    Finite(CyclicSubmodule),
    /// The cutoff was exceeded; `found` independent vectors were seen.
    Infinite { found: usize, partial: Vec<CPoly> },
}

impl Closure {
    pub fn finite(self) -> Option<CyclicSubmodule> {
        match self {
            Closure::Finite(m) => Some(m),
            Closure::Infinite { .. } => None,
        }
    }
}

/// Breadth-first closure of `{1}` under the generator actions.
pub fn build_cyclic_submodule(action: &TwistedAction, dim_cutoff: usize) -> Result<Closure> {
    let gens = action.gens().clone();
    let cell = action.cell().clone();
    let mut echelon: Echelon<Word> = Echelon::new();
    let mut queue = VecDeque::new();
    let mut found = Vec::new();
    let one = cell.one();
    echelon.insert(one.terms().clone(), 0)?;
    found.push(one.clone());
    queue.push_back(one);
    while let Some(v) = queue.pop_front() {
        for x in 0..gens.len() as u16 {
            let w = action.act_gen(x, &v)?;
            if w.is_zero() {
                continue;
            }
            // keep coefficients from compounding along the orbit
            let w = match w.leading().map(|(_, c)| c.inv()) {
                Some(Ok(c)) => w.scale(&c),
                _ => w,
            };
            if echelon.insert(w.terms().clone(), found.len())? {
                found.push(w.clone());
                if found.len() > dim_cutoff {
                    return Ok(Closure::Infinite {
                        found: found.len(),
                        partial: found,
                    });
                }
                queue.push_back(w);
            }
        }
    }
    let rows = echelon.reduced_rows();
    let pivots: Vec<Word> = rows.iter().map(|(p, _)| p.clone()).collect();
    let basis: Vec<CPoly> = rows.into_iter().map(|(_, r)| CPoly::from_sparse(r)).collect();
    let mut module = CyclicSubmodule {
        cell,
        gens: gens.clone(),
        basis,
        pivots,
        matrices: Vec::new(),
    };
    let ctx = gens.ctx().clone();
    let d = module.basis.len();
    for x in 0..gens.len() as u16 {
        let mut m = Matrix::zeros(&ctx, d, d);
        for j in 0..d {
            let image = action.act_gen(x, &module.basis[j])?;
            let coords = module.coordinates(&image).ok_or_else(|| {
                Error::Load(format!(
                    "image of basis vector {j} under {} left the span",
                    gens.name(x)
                ))
            })?;
            for (i, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        module.matrices.push(m);
    }
    Ok(Closure::Finite(module))
}

impl CyclicSubmodule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CPoly] {
        &self.basis
    }

    pub fn cell(&self) -> &Arc<CellAlgebra> {
        &self.cell
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis.iter().map(|b| self.cell.render(b)).collect()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, name: &str) -> Result<&Matrix> {
        Ok(&self.matrices[self.gens.index_of(name)? as usize])
    }

    /// Coordinates in the basis, or `None` outside the span.
    pub fn coordinates(&self, f: &CPoly) -> Option<Vec<Scalar>> {
        let ctx = self.gens.ctx();
        let coords: Vec<Scalar> = self
            .pivots
            .iter()
            .map(|p| f.coeff(p).cloned().unwrap_or_else(|| Scalar::zero(ctx)))
            .collect();
        let mut rebuilt = CPoly::zero();
        for (c, b) in coords.iter().zip(&self.basis) {
            rebuilt.add_scaled(c, b);
        }
        (rebuilt == *f).then_some(coords)
    }

    /// Matrix of a free-algebra element: words multiply left to right.
    pub fn element_matrix(&self, x: &FreeElement) -> Matrix {
        let ctx = self.gens.ctx();
        let d = self.dim();
        let mut out = Matrix::zeros(ctx, d, d);
        for (w, c) in x.iter() {
            let mut m = Matrix::identity(ctx, d);
            for &l in w.letters() {
                m = m.mul(&self.matrices[l as usize]);
            }
            out = out.add(&m.scale(c));
        }
        out
    }

    pub fn check_relations(&self, relations: &[FreeElement]) -> VerificationReport {
        let mut report = VerificationReport::new("rep-relations");
        for (i, r) in relations.iter().enumerate() {
            let m = self.element_matrix(r);
            report.record(
                format!("rep-relations[{i}]"),
                format!("matrix of {} is zero", self.gens.render(r)),
                if m.is_zero() { Ok(()) } else { Err(format!("{m:?}")) },
            );
        }
        report
    }

    /// The column of the unit vector (the first basis vector) under `x`.
    pub fn action_on_unit(&self, x: &FreeElement) -> Vec<Scalar> {
        let m = self.element_matrix(x);
        (0..self.dim()).map(|i| m.get(i, 0).clone()).collect()
    }
}
