//! Sparse matrices with Laurent polynomial entries, stored by column.
//!
//! Entry `(row, col)` is the coefficient of basis element `row` in the image
//! of basis element `col`.

use std::collections::BTreeMap;

use crate::ring::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<BTreeMap<usize, LaurentPoly>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![BTreeMap::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&LaurentPoly> {
        self.cols[col].get(&row)
    }

    pub fn set(&mut self, row: usize, col: usize, p: LaurentPoly) {
        assert!(row < self.rows, "row {row} out of range");
        if p.is_zero() {
            self.cols[col].remove(&row);
        } else {
            self.cols[col].insert(row, p);
        }
    }

    pub fn add_at(&mut self, row: usize, col: usize, p: &LaurentPoly) {
        assert!(row < self.rows, "row {row} out of range");
        if p.is_zero() {
            return;
        }
        let entry = self.cols[col].entry(row).or_default();
        *entry += p;
        if entry.is_zero() {
            self.cols[col].remove(&row);
        }
    }

    /// Nonzero entries of one column, by increasing row.
    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.cols[col].iter().map(|(&r, p)| (r, p))
    }

    /// All nonzero entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(&r, p)| (r, c, p)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols(), self.nrows());
        for (r, c, p) in self.entries() {
            t.set(c, r, p.clone());
        }
        t
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut out = Self::zeros(self.rows, self.ncols());
        for (r, c, p) in self.entries() {
            out.set(r, c, f(p));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()), "shape mismatch");
        let mut out = self.clone();
        for (r, c, p) in other.entries() {
            out.add_at(r, c, p);
        }
        out
    }

    /// `self * other`, with `twist` applied to the entries of `other` first.
    /// The twist is the identity for equivariant left factors and the U/V swap
    /// for skew ones.
    pub fn mul_twisted(&self, other: &Self, twist: bool) -> Self {
        assert_eq!(self.ncols(), other.nrows(), "shape mismatch");
        let mut out = Self::zeros(self.rows, other.ncols());
        for (c, col) in other.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
            for (&z, b) in col {
                let b = if twist { b.swap_uv() } else { b.clone() };
                for (&r, a) in &self.cols[z] {
                    let e = acc.entry(r).or_default();
                    *e += &(a * &b);
                }
            }
            acc.retain(|_, p| !p.is_zero());
            out.cols[c] = acc;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_twisted(other, false)
    }

    /// Kronecker product: entry `((i1, i2), (j1, j2))` is `a[i1][j1] * b[i2][j2]`,
    /// with pair `(i1, i2)` flattened to `i1 * b.nrows() + i2`.
    pub fn kron(a: &Self, b: &Self) -> Self {
        let (br, bc) = (b.nrows(), b.ncols());
        let mut out = Self::zeros(a.nrows() * br, a.ncols() * bc);
        for (i1, j1, p) in a.entries() {
            for (i2, j2, q) in b.entries() {
                out.set(i1 * br + i2, j1 * bc + j2, p * q);
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        assert_eq!(v.len(), self.ncols());
        let mut out = vec![LaurentPoly::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (&r, p) in &self.cols[c] {
                out[r] += &(p * x);
            }
        }
        out
    }

    /// Reorders rows and columns: new index `k` holds old index `perm[k]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut row_inv = vec![0; row_perm.len()];
        for (k, &old) in row_perm.iter().enumerate() {
            row_inv[old] = k;
        }
        let mut out = Self::zeros(self.rows, self.ncols());
        for (new_c, &old_c) in col_perm.iter().enumerate() {
            for (&r, p) in &self.cols[old_c] {
                out.set(row_inv[r], new_c, p.clone());
            }
        }
        out
    }
}
