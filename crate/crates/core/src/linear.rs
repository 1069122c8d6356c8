//! Sparse exact linear algebra over [`Scalar`] and small dense matrices.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Ctx, Scalar, ScalarError};

/// Sparse vector: basis key to nonzero coefficient.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub(crate) fn add_term<K: Ord>(v: &mut SparseVec<K>, k: K, c: Scalar) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match v.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = &*e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// `v += c * w`.
pub(crate) fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Scalar, w: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        add_term(v, k.clone(), c * x);
    }
}

pub(crate) fn scaled<K: Ord + Clone>(v: &SparseVec<K>, c: &Scalar) -> SparseVec<K> {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (k.clone(), x * c)).collect()
}

struct Row<K> {
    vec: SparseVec<K>,
    combo: SparseVec<usize>,
}

/// Incremental row echelon form.
///
/// Every inserted vector carries a tag; reducing a vector also reports the
/// linear combination of tagged inputs that was subtracted, so a zero
/// remainder doubles as a membership certificate. The pivot of a row is its
/// largest key and is normalized to 1.
pub struct Echelon<K> {
    rows: BTreeMap<K, Row<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows. Returns the remainder (supported on
    /// non-pivot keys) and the combination `c` of tagged inputs with
    /// `v = remainder + sum c_t input_t`.
    pub fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut rem = SparseVec::new();
        let mut combo = SparseVec::new();
        while let Some((k, c)) = v.pop_last() {
            if let Some(row) = self.rows.get(&k) {
                for (k2, x) in &row.vec {
                    if *k2 != k {
                        add_term(&mut v, k2.clone(), -&(&c * x));
                    }
                }
                axpy(&mut combo, &c, &row.combo);
            } else {
                rem.insert(k, c);
            }
        }
        (rem, combo)
    }

    /// Insert a tagged vector; returns whether it was independent. Fails when
    /// the leading coefficient of the remainder cannot be inverted.
    pub fn insert(&mut self, v: SparseVec<K>, tag: usize) -> Result<bool, ScalarError> {
        let (rem, combo) = self.reduce(v);
        let Some((pivot, lead)) = rem.last_key_value() else {
            return Ok(false);
        };
        let pivot = pivot.clone();
        let inv = lead.inv()?;
        let mut own = SparseVec::new();
        own.insert(tag, Scalar::one(lead.ctx()));
        axpy(&mut own, &-&Scalar::one(lead.ctx()), &combo);
        self.rows.insert(
            pivot,
            Row {
                vec: scaled(&rem, &inv),
                combo: scaled(&own, &inv),
            },
        );
        Ok(true)
    }

    /// Fully reduced rows, ascending by pivot, each with pivot coefficient 1.
    pub fn reduced_rows(&self) -> Vec<(K, SparseVec<K>)> {
        let mut done: Vec<(K, SparseVec<K>)> = Vec::new();
        let mut index: BTreeMap<K, usize> = BTreeMap::new();
        for (pivot, row) in &self.rows {
            let mut v = row.vec.clone();
            let keys: Vec<K> = v.keys().filter(|k| *k != pivot).cloned().collect();
            for k in keys.into_iter().rev() {
                if let Some(&j) = index.get(&k) {
                    if let Some(c) = v.get(&k).cloned() {
                        axpy(&mut v, &-&c, &done[j].1);
                    }
                }
            }
            index.insert(pivot.clone(), done.len());
            done.push((pivot.clone(), v));
        }
        done
    }
}

/// Dense square-or-rectangular matrix over [`Scalar`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ctx: Ctx,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(ctx: &Ctx, rows: usize, cols: usize) -> Self {
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![Scalar::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ctx));
        }
        m
    }

    pub fn from_rows(ctx: &Ctx, rows: Vec<Vec<Scalar>>) -> Result<Self, ScalarError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ScalarError::Usage("ragged matrix".into()));
        }
        Ok(Matrix {
            ctx: ctx.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.cols.max(1)).map(<[Scalar]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-&Scalar::one(&self.ctx)))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.ctx, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix, ScalarError> {
        if self.rows != self.cols {
            return Err(ScalarError::Usage("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(&self.ctx, n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(ScalarError::NotInvertible)?;
            if piv != col {
                for c in 0..n {
                    a.data.swap(piv * n + c, col * n + c);
                    inv.data.swap(piv * n + c, col * n + c);
                }
            }
            let p = a.get(col, col).inv()?;
            for c in 0..n {
                let x = a.get(col, c) * &p;
                a.set(col, c, x);
                let y = inv.get(col, c) * &p;
                inv.set(col, c, y);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let x = a.get(r, c) - &(&f * a.get(col, c));
                    a.set(r, c, x);
                    let y = inv.get(r, c) - &(&f * inv.get(col, c));
                    inv.set(r, c, y);
                }
            }
        }
        Ok(inv)
    }

    /// Position and value of the first entry (row-major) where `self` and
    /// `other` differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize, Scalar, Scalar)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) != other.get(r, c) {
                    return Some((r, c, self.get(r, c).clone(), other.get(r, c).clone()));
                }
            }
        }
        None
    }

    /// The same matrix with every entry moved into `to`.
    pub fn transport(&self, to: &Ctx) -> Result<Matrix, ScalarError> {
        Ok(Matrix {
            ctx: to.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.transport(to)).collect::<Result<_, _>>()?,
        })
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Result<Scalar, ScalarError>) -> Result<Matrix, ScalarError> {
        Ok(Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ParameterContext;

    fn ctx() -> Ctx {
        ParameterContext::new(&[]).unwrap()
    }

    fn v(ctx: &Ctx, xs: &[(u32, i64)]) -> SparseVec<u32> {
        xs.iter().map(|&(k, c)| (k, Scalar::integer(ctx, c))).collect()
    }

    #[test]
    fn echelon_membership_certificate() {
        let c = ctx();
        let mut e = Echelon::new();
        assert!(e.insert(v(&c, &[(0, 1), (1, 1)]), 0).unwrap());
        assert!(e.insert(v(&c, &[(1, 1), (2, 1)]), 1).unwrap());
        assert!(!e.insert(v(&c, &[(0, 1), (2, -1)]), 2).unwrap());
        let target = v(&c, &[(0, 2), (1, 5), (2, 3)]);
        let (rem, combo) = e.reduce(target);
        assert!(rem.is_empty());
        assert_eq!(combo.get(&0), Some(&Scalar::integer(&c, 2)));
        assert_eq!(combo.get(&1), Some(&Scalar::integer(&c, 3)));
    }

    #[test]
    fn reduced_rows_have_no_foreign_pivots() {
        let c = ctx();
        let mut e = Echelon::new();
        e.insert(v(&c, &[(0, 1), (1, 2), (2, 3)]), 0).unwrap();
        e.insert(v(&c, &[(0, 1), (1, 1)]), 1).unwrap();
        e.insert(v(&c, &[(0, 4)]), 2).unwrap();
        let rows = e.reduced_rows();
        assert_eq!(rows.len(), 3);
        for (p, r) in &rows {
            assert_eq!(r.len(), 1);
            assert!(r[p].is_one());
        }
    }

    #[test]
    fn inverse_of_triangular() {
        let c = ctx();
        let q = Scalar::q_pow(&c, 1);
        let m = Matrix::from_rows(&c, vec![vec![q.clone(), Scalar::zero(&c)], vec![Scalar::q_diff(&c), Scalar::one(&c)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&c, 2));
        assert_eq!(inv.mul(&m), Matrix::identity(&c, 2));
    }
}
