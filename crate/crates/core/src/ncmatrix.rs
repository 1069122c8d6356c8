//! Matrices with entries in a cell algebra. Products keep the order of the
//! factors, so `(AB)_{ik} = Σ_j A_{ij} B_{jk}` with `A_{ij}` on the left.

use crate::cell::{CPoly, CellAlgebra};
use crate::error::{Error, Result};
use crate::linear::Matrix;
use crate::rmatrix::{digits, label, undigits};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CPoly>,
}

impl NcMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        NcMatrix {
            rows,
            cols,
            data: vec![CPoly::zero(); rows * cols],
        }
    }

    pub fn identity(cell: &CellAlgebra, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, cell.one());
        }
        m
    }

    pub fn from_scalar(cell: &CellAlgebra, m: &Matrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let x = m.get(r, c);
                if !x.is_zero() {
                    out.set(r, c, cell.constant(x.clone()));
                }
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CPoly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: CPoly) {
        self.data[r * self.cols + c] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CPoly::is_zero)
    }

    pub fn mul(&self, other: &NcMatrix, cell: &CellAlgebra) -> Result<NcMatrix> {
        if self.cols != other.rows {
            return Err(Error::Usage("matrix shape mismatch".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let p = cell.mul(a, b)?;
                    out.data[i * other.cols + j].add_assign(&p);
                }
            }
        }
        Ok(out)
    }

    /// Product of several matrices, left to right.
    pub fn product(cell: &CellAlgebra, factors: &[&NcMatrix]) -> Result<NcMatrix> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::Usage("empty product".into()))?;
        let mut acc = (*first).clone();
        for f in rest {
            acc = acc.mul(f, cell)?;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &NcMatrix) -> NcMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        NcMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn sub(&self, other: &NcMatrix) -> NcMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        NcMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn neg(&self) -> NcMatrix {
        NcMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(CPoly::neg).collect(),
        }
    }

    /// Place an `N^k`-square matrix on the given legs of `V^{⊗total}`.
    pub fn embed(&self, n: usize, legs: &[usize], total: usize) -> NcMatrix {
        let k = legs.len();
        let size = n.pow(total as u32);
        let mut out = Self::zeros(size, size);
        let rest: Vec<usize> = (1..=total).filter(|l| !legs.contains(l)).collect();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if x.is_zero() {
                    continue;
                }
                let rd = digits(r, n, k);
                let cd = digits(c, n, k);
                for o in 0..n.pow(rest.len() as u32) {
                    let od = digits(o, n, rest.len());
                    let mut row = vec![0; total];
                    let mut col = vec![0; total];
                    for (i, &l) in legs.iter().enumerate() {
                        row[l - 1] = rd[i];
                        col[l - 1] = cd[i];
                    }
                    for (i, &l) in rest.iter().enumerate() {
                        row[l - 1] = od[i];
                        col[l - 1] = od[i];
                    }
                    out.set(undigits(&row, n), undigits(&col, n), x.clone());
                }
            }
        }
        out
    }

    fn unit_diagonal(&self, cell: &CellAlgebra) -> bool {
        (0..self.rows).all(|i| *self.get(i, i) == cell.one())
    }

    fn below_zero(&self) -> bool {
        (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c).is_zero()))
    }

    fn above_zero(&self) -> bool {
        (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c).is_zero()))
    }

    pub fn is_unipotent(&self, cell: &CellAlgebra) -> bool {
        self.rows == self.cols && self.unit_diagonal(cell) && (self.below_zero() || self.above_zero())
    }

    /// `(1 + 𝒩)⁻¹ = Σ_{k<N} (-𝒩)^k` for triangular `1 + 𝒩` with unit
    /// diagonal.
    pub fn invert_unipotent(&self, cell: &CellAlgebra) -> Result<NcMatrix> {
        if !self.is_unipotent(cell) {
            return Err(Error::Usage("matrix is not unipotent".into()));
        }
        let n = self.rows;
        let id = Self::identity(cell, n);
        let minus_nil = id.sub(self);
        let mut power = id.clone();
        let mut sum = id;
        for _ in 1..n {
            power = power.mul(&minus_nil, cell)?;
            sum = sum.add(&power);
        }
        Ok(sum)
    }

    /// `Ok` if equal, otherwise the first differing entry with tensor labels.
    pub fn compare(&self, other: &NcMatrix, cell: &CellAlgebra, n: usize, legs: usize) -> Result<(), String> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let (a, b) = (self.get(r, c), other.get(r, c));
                if a != b {
                    return Err(format!(
                        "first differing entry at row {} col {}: lhs {}, rhs {}",
                        label(r, n, legs),
                        label(c, n, legs),
                        cell.render(a),
                        cell.render(b)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn render(&self, cell: &CellAlgebra) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| cell.render(self.get(r, c))).collect())
            .collect()
    }
}
