//! Dense linear algebra over F2.
//!
//! Vectors are packed 64 bits to a word. [`Echelon`] keeps a fully reduced
//! row basis and is used for ranks, span membership, kernels and solving.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut r = Self::zeros(len);
        r.set(i, true);
        r
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut r = Self::zeros(len);
        for i in idx {
            r.toggle(i);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from(0)
    }

    /// First set bit at position `>= start`.
    pub fn first_one_from(&self, start: usize) -> Option<usize> {
        if start >= self.len {
            return None;
        }
        let mut w = start / 64;
        let mut word = self.words[w] & (!0u64 << (start % 64));
        loop {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + t)
            })
        })
    }

    /// Copy of the bits in `range`, as a row of its own.
    pub fn slice(&self, range: std::ops::Range<usize>) -> BitRow {
        BitRow::from_indices(
            range.len(),
            self.ones().filter(|i| range.contains(i)).map(|i| i - range.start),
        )
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &BitRow) -> BitRow {
        let mut r = BitRow::zeros(self.len + other.len);
        for i in self.ones() {
            r.set(i, true);
        }
        for i in other.ones() {
            r.set(self.len + i, true);
        }
        r
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Reduced row-echelon basis of a subspace of `F2^len`.
///
/// Each stored row has its pivot as leading bit and no other stored row has a
/// one in that column. Rows may carry a companion "tag" row that records the
/// combination of inserted vectors producing them.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<BitRow>,
    tags: Vec<BitRow>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new(), tags: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; len] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.len
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    /// Reduces `v` in place against the basis; returns the accumulated tag.
    fn reduce_tagged(&self, v: &mut BitRow, tag: &mut Option<BitRow>) {
        let mut pos = 0;
        while let Some(i) = v.first_one_from(pos) {
            if let Some(r) = self.pivot_row[i] {
                v.xor_assign(&self.rows[r]);
                if let Some(t) = tag.as_mut() {
                    t.xor_assign(&self.tags[r]);
                }
            }
            pos = i + 1;
        }
    }

    /// Normal form of `v` modulo the span.
    pub fn reduce(&self, v: &BitRow) -> BitRow {
        let mut v = v.clone();
        self.reduce_tagged(&mut v, &mut None);
        v
    }

    pub fn contains(&self, v: &BitRow) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns true if the rank grew.
    pub fn insert(&mut self, v: BitRow) -> bool {
        let tag = BitRow::zeros(0);
        self.insert_tagged(v, tag).is_none()
    }

    /// Inserts `v` with a tag. If `v` is already in the span, returns the
    /// combined tag of the dependency (`tag` plus the tags of the rows that
    /// cancel `v`); otherwise stores it and returns `None`.
    pub fn insert_tagged(&mut self, mut v: BitRow, tag: BitRow) -> Option<BitRow> {
        assert_eq!(v.len(), self.len);
        let tracked = !tag.is_empty() || self.tags.first().is_some_and(|t| !t.is_empty());
        let mut t = if tracked { Some(tag) } else { None };
        self.reduce_tagged(&mut v, &mut t);
        let Some(p) = v.first_one() else {
            return Some(t.unwrap_or_else(|| BitRow::zeros(0)));
        };
        // keep the basis fully reduced
        for (r, row) in self.rows.iter_mut().enumerate() {
            if row.get(p) {
                row.xor_assign(&v);
                if let Some(tv) = t.as_ref() {
                    self.tags[r].xor_assign(tv);
                }
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.pivots.push(p);
        self.rows.push(v);
        self.tags.push(t.unwrap_or_else(|| BitRow::zeros(0)));
        None
    }
}

/// Rank of the span of `vectors`.
pub fn rank<'a>(len: usize, vectors: impl IntoIterator<Item = &'a BitRow>) -> usize {
    let mut e = Echelon::new(len);
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Basis of the kernel of the linear map sending the `i`-th standard basis
/// vector to `images[i]` (all of length `target_len`).
pub fn kernel(images: &[BitRow], target_len: usize) -> Vec<BitRow> {
    let n = images.len();
    let mut e = Echelon::new(target_len);
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        if let Some(dep) = e.insert_tagged(img.clone(), BitRow::unit(n, i)) {
            out.push(dep);
        }
    }
    out
}

/// A linear system `A x = b` over F2, assembled one equation at a time.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    vars: usize,
    echelon: Echelon,
    inconsistent: bool,
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        LinearSystem { vars, echelon: Echelon::new(vars + 1), inconsistent: false }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Adds the equation `sum_{j in lhs} x_j = rhs`.
    pub fn add_equation(&mut self, lhs: impl IntoIterator<Item = usize>, rhs: bool) {
        if self.inconsistent {
            return;
        }
        let mut row = BitRow::from_indices(self.vars + 1, lhs);
        row.set(self.vars, rhs);
        let reduced = self.echelon.reduce(&row);
        if reduced.first_one() == Some(self.vars) {
            self.inconsistent = true;
            return;
        }
        self.echelon.insert(reduced);
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    fn back_substitute(&self, free_values: &BitRow) -> BitRow {
        // the basis is fully reduced, so every pivot variable is determined by
        // the right-hand side and the free variables alone
        let mut x = free_values.clone();
        for (row, &p) in self.echelon.rows.iter().zip(&self.echelon.pivots) {
            let mut val = row.get(self.vars);
            for j in row.ones() {
                if j != p && j < self.vars && x.get(j) {
                    val = !val;
                }
            }
            x.set(p, val);
        }
        x
    }

    /// A particular solution with every free variable set to zero.
    pub fn solve(&self) -> Option<BitRow> {
        if self.inconsistent {
            return None;
        }
        Some(self.back_substitute(&BitRow::zeros(self.vars)))
    }

    fn free_vars(&self) -> Vec<usize> {
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.vars];
            for &p in &self.echelon.pivots {
                v[p] = true;
            }
            v
        };
        (0..self.vars).filter(|&j| !is_pivot[j]).collect()
    }

    /// Basis of the solution space of the associated homogeneous system.
    pub fn nullspace(&self) -> Vec<BitRow> {
        let zero_rhs = {
            let mut s = self.clone();
            for row in s.echelon.rows.iter_mut() {
                row.set(s.vars, false);
            }
            s
        };
        self.free_vars()
            .into_iter()
            .map(|f| zero_rhs.back_substitute(&BitRow::unit(self.vars, f)))
            .collect()
    }
}
