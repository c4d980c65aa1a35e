//! The Alexander-grading-zero subcomplex over `F2[Û]`, its homology, the
//! involutive mapping cone, and the correction terms read off from them.
//!
//! Every homogeneous map here has entries that are powers of `Û` fixed by the
//! gradings, so matrices are stored as presence bits (one `BitRow` per
//! column). A vector in the grading `r` piece `{Û^m x : gr(x) - 2m = r}` is
//! likewise a set of generators, since each generator contributes at most
//! one element to the piece.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitRow, Echelon};
use crate::iota::IotaComplex;
use crate::ring::Monomial;

/// A free complex over `F2[Û]` with an optional grading-preserving
/// endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UTowerComplex {
    names: Vec<String>,
    gradings: Vec<i32>,
    /// Column `x` holds the generators `y` with a `Û^k y` term in `∂x`.
    diff: Vec<BitRow>,
    endo: Option<Vec<BitRow>>,
}

impl UTowerComplex {
    pub fn new(names: Vec<String>, gradings: Vec<i32>, diff: Vec<BitRow>, endo: Option<Vec<BitRow>>) -> Result<Self> {
        let n = gradings.len();
        if names.len() != n || diff.len() != n || diff.iter().any(|c| c.len() != n) {
            return Err(Error::Shape("tower complex: inconsistent sizes".into()));
        }
        if let Some(e) = &endo {
            if e.len() != n || e.iter().any(|c| c.len() != n) {
                return Err(Error::Shape("tower complex: endomorphism has the wrong size".into()));
            }
        }
        let t = UTowerComplex { names, gradings, diff, endo };
        for x in 0..n {
            for y in t.diff[x].ones() {
                let k2 = t.gradings[y] - t.gradings[x] + 1;
                if k2 < 0 || k2 % 2 != 0 {
                    return Err(Error::NotHomogeneous(format!("differential {} -> {}", t.names[x], t.names[y])));
                }
            }
            if let Some(e) = &t.endo {
                for y in e[x].ones() {
                    let k2 = t.gradings[y] - t.gradings[x];
                    if k2 < 0 || k2 % 2 != 0 {
                        return Err(Error::NotHomogeneous(format!("endomorphism {} -> {}", t.names[x], t.names[y])));
                    }
                }
            }
        }
        if !compose(&t.diff, &t.diff).iter().all(BitRow::is_zero) {
            return Err(Error::Shape("tower complex: d^2 != 0".into()));
        }
        if let Some(e) = &t.endo {
            if compose(&t.diff, e) != compose(e, &t.diff) {
                return Err(Error::NotChainMap("endomorphism does not commute with the differential".into()));
            }
        }
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        self.gradings.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gradings(&self) -> &[i32] {
        &self.gradings
    }

    pub fn diff(&self) -> &[BitRow] {
        &self.diff
    }

    pub fn endo(&self) -> Option<&[BitRow]> {
        self.endo.as_deref()
    }

    /// The exponent `k` of the `Û^k` entry of `∂` from `x` to `y`.
    pub fn diff_exponent(&self, x: usize, y: usize) -> u32 {
        ((self.gradings[y] - self.gradings[x] + 1) / 2) as u32
    }

    /// Renumbers generators: new index `k` is old index `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> UTowerComplex {
        let mut inv = vec![0; perm.len()];
        for (k, &old) in perm.iter().enumerate() {
            inv[old] = k;
        }
        let remap = |cols: &[BitRow]| -> Vec<BitRow> {
            perm.iter().map(|&old| BitRow::from_indices(perm.len(), cols[old].ones().map(|y| inv[y]))).collect()
        };
        UTowerComplex {
            names: perm.iter().map(|&k| self.names[k].clone()).collect(),
            gradings: perm.iter().map(|&k| self.gradings[k]).collect(),
            diff: remap(&self.diff),
            endo: self.endo.as_ref().map(|e| remap(e)),
        }
    }
}

/// `a ∘ b` on column bitsets.
fn compose(a: &[BitRow], b: &[BitRow]) -> Vec<BitRow> {
    b.iter()
        .map(|col| {
            let mut out = BitRow::zeros(a.first().map_or(0, BitRow::len));
            for z in col.ones() {
                out.xor_assign(&a[z]);
            }
            out
        })
        .collect()
}

/// The subcomplex of `UⁱVʲx` with `i, j ≥ 0` and Alexander grading zero, with
/// the restriction of `ι`.
pub fn a_zero_minus(ic: &IotaComplex) -> UTowerComplex {
    let basis = ic.basis();
    let n = basis.len();
    let shift: Vec<Monomial> = basis
        .iter()
        .map(|b| {
            let a = b.alexander();
            Monomial::new(a.max(0), (-a).max(0))
        })
        .collect();
    let restrict = |matrix: &crate::matrix::SparseMatrix, skew: bool| -> Vec<BitRow> {
        (0..n)
            .map(|x| {
                let sx = if skew { shift[x].swap() } else { shift[x] };
                let mut col = BitRow::zeros(n);
                for (y, p) in matrix.column(x) {
                    for &m in p.terms() {
                        let q = sx * m;
                        let (du, dv) = (q.u - shift[y].u, q.v - shift[y].v);
                        assert!(du == dv && du >= 0, "entry {x} -> {y} does not restrict to a power of UV");
                        col.toggle(y);
                    }
                }
                col
            })
            .collect()
    };
    let names = basis.iter().map(|b| b.name.clone()).collect();
    let gradings = basis.iter().zip(&shift).map(|(b, s)| b.gr_u - 2 * s.u).collect();
    let diff = restrict(ic.complex().diff(), false);
    let endo = restrict(&ic.iota().matrix, true);
    UTowerComplex::new(names, gradings, diff, Some(endo)).expect("restriction of an iota-complex")
}

/// Homology over `F2[Û]`: gradings of free generators and `(grading, order)`
/// of torsion summands `F2[Û]/Û^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyDecomp {
    pub free: Vec<i32>,
    pub torsion: Vec<(i32, u32)>,
}

impl HomologyDecomp {
    /// F2-dimension of homology in grading `r`.
    pub fn dim_at(&self, r: i32) -> usize {
        let free = self.free.iter().filter(|&&g| r <= g && (g - r) % 2 == 0).count();
        let torsion = self
            .torsion
            .iter()
            .filter(|&&(g, k)| r <= g && (g - r) % 2 == 0 && (g - r) / 2 < k as i32)
            .count();
        free + torsion
    }

    pub fn max_torsion_order(&self) -> u32 {
        self.torsion.iter().map(|&(_, k)| k).max().unwrap_or(0)
    }
}

/// Graded Smith normal form. Each step takes an entry of smallest exponent
/// (earliest column, then earliest row, on ties), clears its row with column
/// operations and its column with row operations, and splits the pair off.
///
/// Splitting is valid because after clearing, `∂x = Û^k y` and nothing else
/// hits `y`; `∂² = 0` then forces `∂y = 0` and removes `x` from every other
/// boundary.
pub fn homology_snf(t: &UTowerComplex) -> HomologyDecomp {
    let n = t.rank();
    let mut cols: Vec<BitRow> = t.diff.clone();
    let mut rows: Vec<BitRow> = vec![BitRow::zeros(n); n];
    for (x, col) in cols.iter().enumerate() {
        for y in col.ones() {
            rows[y].set(x, true);
        }
    }
    let mut alive = vec![true; n];
    let mut torsion = Vec::new();
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (x, col) in cols.iter().enumerate() {
            for y in col.ones() {
                let k = t.diff_exponent(x, y);
                if best.is_none_or(|(bk, _, _)| k < bk) {
                    best = Some((k, x, y));
                }
            }
        }
        let Some((k, x, y)) = best else { break };
        // columns x' with an entry in row y: x' += Û^(k'-k) x
        let others: Vec<usize> = rows[y].ones().filter(|&c| c != x).collect();
        let pivot_col = cols[x].clone();
        for xp in others {
            for z in pivot_col.ones() {
                rows[z].toggle(xp);
            }
            cols[xp].xor_assign(&pivot_col);
        }
        // Row y is now {x}, so clearing column x with row operations touches
        // nothing else. The basis changes also alter row x and column y, which
        // are zero once the pair is split off; drop whatever is stored there.
        for z in cols[x].ones().collect::<Vec<_>>() {
            rows[z].set(x, false);
        }
        cols[x] = BitRow::zeros(n);
        for w in rows[x].ones().collect::<Vec<_>>() {
            cols[w].set(x, false);
        }
        rows[x] = BitRow::zeros(n);
        for z in cols[y].ones().collect::<Vec<_>>() {
            rows[z].set(y, false);
        }
        cols[y] = BitRow::zeros(n);
        for w in rows[y].ones().collect::<Vec<_>>() {
            cols[w].set(y, false);
        }
        rows[y] = BitRow::zeros(n);
        alive[x] = false;
        alive[y] = false;
        if k > 0 {
            torsion.push((t.gradings[y], k));
        }
    }
    let mut free: Vec<i32> = (0..n).filter(|&i| alive[i]).map(|i| t.gradings[i]).collect();
    free.sort_unstable_by(|a, b| b.cmp(a));
    torsion.sort_unstable_by(|a, b| b.cmp(a));
    HomologyDecomp { free, torsion }
}

fn piece(t: &UTowerComplex, r: i32) -> impl Iterator<Item = usize> + '_ {
    (0..t.rank()).filter(move |&x| t.gradings[x] >= r && (t.gradings[x] - r).rem_euclid(2) == 0)
}

/// F2-dimension of the homology of the grading `r` piece, by direct rank
/// computation.
pub fn graded_homology_dim(t: &UTowerComplex, r: i32) -> usize {
    let here: Vec<usize> = piece(t, r).collect();
    let rank_out = gf2::rank(t.rank(), here.iter().map(|&x| &t.diff[x]));
    let rank_in = gf2::rank(t.rank(), piece(t, r + 1).map(|x| &t.diff[x]));
    here.len() - rank_out - rank_in
}

/// The cone of `Q(1 + ι₀)`: domain copy `x` at `gr + 1`, then the `Q` copy
/// `Qx` at `gr`.
pub fn involutive_cone(t: &UTowerComplex) -> Result<UTowerComplex> {
    let endo = t.endo.as_ref().ok_or_else(|| Error::Invariant("the cone needs an involution".into()))?;
    let n = t.rank();
    let mut names: Vec<String> = t.names.clone();
    names.extend(t.names.iter().map(|s| format!("Q{s}")));
    let mut gradings: Vec<i32> = t.gradings.iter().map(|g| g + 1).collect();
    gradings.extend(&t.gradings);
    let mut diff = Vec::with_capacity(2 * n);
    for (x, e) in endo.iter().enumerate() {
        let mut one_plus = e.clone();
        one_plus.toggle(x);
        diff.push(t.diff[x].concat(&one_plus));
    }
    for x in 0..n {
        diff.push(BitRow::zeros(n).concat(&t.diff[x]));
    }
    UTowerComplex::new(names, gradings, diff, None)
}

/// `(d, d̄, d̲)` and the matching `V`-values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub d: i32,
    pub d_bar: i32,
    pub d_under: i32,
    #[serde(rename = "V0")]
    pub v0: i32,
    #[serde(rename = "V0_bar")]
    pub v0_bar: i32,
    #[serde(rename = "V0_under")]
    pub v0_under: i32,
}

impl InvariantReport {
    pub fn from_d(d: i32, d_bar: i32, d_under: i32) -> Result<Self> {
        let half = |x: i32, what: &str| {
            if x % 2 != 0 {
                Err(Error::Invariant(format!("{what} = {x} is odd")))
            } else {
                Ok(-x / 2)
            }
        };
        Ok(InvariantReport {
            d,
            d_bar,
            d_under,
            v0: half(d, "d")?,
            v0_bar: half(d_bar, "d_bar")?,
            v0_under: half(d_under, "d_under")?,
        })
    }

    /// `(V̄₀, V₀, V̲₀)`
    pub fn v_triple(&self) -> (i32, i32, i32) {
        (self.v0_bar, self.v0, self.v0_under)
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "V0_bar   {}", self.v0_bar)?;
        writeln!(f, "V0       {}", self.v0)?;
        writeln!(f, "V0_under {}", self.v0_under)?;
        writeln!(f, "d_bar    {}", self.d_bar)?;
        writeln!(f, "d        {}", self.d)?;
        write!(f, "d_under  {}", self.d_under)
    }
}

/// Reads `d` off the homology of `t` and `d̄`, `d̲` off the homology of the
/// cone. A class survives to the localization exactly when it generates a
/// free summand.
pub fn involutive_invariants(t: &UTowerComplex) -> Result<InvariantReport> {
    let h = homology_snf(t);
    let d = *h.free.iter().max().ok_or_else(|| Error::Invariant("homology has no free part".into()))?;
    let cone = homology_snf(&involutive_cone(t)?);
    let top = |parity: i32| cone.free.iter().copied().filter(|g| (g - parity).rem_euclid(2) == 0).max();
    let d_bar = top(d).ok_or_else(|| Error::Invariant("cone has no free summand of the parity of d".into()))?;
    let d_under = top(d + 1).ok_or_else(|| Error::Invariant("cone has no free summand of the parity of d + 1".into()))? - 1;
    InvariantReport::from_d(d, d_bar, d_under)
}

/// `(d, d̄, d̲)` computed from the element-wise criteria, without any normal
/// form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub d: i32,
    pub d_bar: i32,
    pub d_under: i32,
}

struct Oracle<'a> {
    t: &'a UTowerComplex,
    endo: &'a [BitRow],
    /// Boundaries of all generators of each parity. A cycle `v` in grading
    /// `r` is torsion iff `Û^N v` bounds for some `N`; for large `N` the piece
    /// of grading `r - 2N + 1` contains every generator of parity `r + 1`,
    /// so this is membership in the span of their boundaries.
    torsion: [Echelon; 2],
}

impl<'a> Oracle<'a> {
    fn new(t: &'a UTowerComplex) -> Result<Self> {
        let endo = t.endo.as_deref().ok_or_else(|| Error::Invariant("the oracle needs an involution".into()))?;
        let n = t.rank();
        let mut torsion = [Echelon::new(n), Echelon::new(n)];
        for x in 0..n {
            torsion[t.gradings[x].rem_euclid(2) as usize].insert(t.diff[x].clone());
        }
        Ok(Oracle { t, endo, torsion })
    }

    /// A boundary of a grading `r + 1` generator lands in parity `r`.
    fn nontorsion(&self, v: &BitRow, r: i32) -> bool {
        !self.torsion[(r + 1).rem_euclid(2) as usize].contains(v)
    }

    fn one_plus_iota(&self, x: usize) -> BitRow {
        let mut v = self.endo[x].clone();
        v.toggle(x);
        v
    }

    fn range(&self) -> Vec<i32> {
        let max = self.t.gradings.iter().copied().max().unwrap_or(0);
        let min = self.t.gradings.iter().copied().min().unwrap_or(0);
        let low = min - 2 * self.t.rank() as i32 - 4;
        (low..=max + 1).rev().collect()
    }

    /// Some nontorsion cycle in grading `r`.
    fn has_free_cycle(&self, r: i32) -> bool {
        let gens: Vec<usize> = piece(self.t, r).collect();
        let images: Vec<BitRow> = gens.iter().map(|&x| self.t.diff[x].clone()).collect();
        gf2::kernel(&images, self.t.rank())
            .iter()
            .any(|k| self.nontorsion(&BitRow::from_indices(self.t.rank(), k.ones().map(|i| gens[i])), r))
    }

    /// Criterion for `d̲`: a nontorsion cycle `v` in grading `r` with
    /// `(1 + ι)v = ∂w`.
    fn lower_witness(&self, r: i32) -> bool {
        let n = self.t.rank();
        let vs: Vec<usize> = piece(self.t, r).collect();
        let ws: Vec<usize> = piece(self.t, r + 1).collect();
        let zero = BitRow::zeros(n);
        let images: Vec<BitRow> = vs
            .iter()
            .map(|&x| self.t.diff[x].concat(&self.one_plus_iota(x)))
            .chain(ws.iter().map(|&x| zero.concat(&self.t.diff[x])))
            .collect();
        gf2::kernel(&images, 2 * n).iter().any(|k| {
            let v = BitRow::from_indices(n, k.ones().filter(|&i| i < vs.len()).map(|i| vs[i]));
            self.nontorsion(&v, r)
        })
    }

    /// Triples `(x, y, z)` with `x ≠ 0` in grading `s`, `∂y = (1+ι)x`,
    /// `∂z = Û^m x` and `Û^m y + (1+ι)z` nontorsion.
    fn upper_witness_x(&self, s: i32, m: u32) -> bool {
        let n = self.t.rank();
        let xs: Vec<usize> = piece(self.t, s).collect();
        let ys: Vec<usize> = piece(self.t, s + 1).collect();
        let zs: Vec<usize> = piece(self.t, s + 1 - 2 * m as i32).collect();
        if xs.is_empty() {
            return false;
        }
        let zero = BitRow::zeros(n);
        // equations: ∂y + (1+ι)x = 0 and ∂z + x = 0, in generator coordinates
        let images: Vec<BitRow> = xs
            .iter()
            .map(|&x| self.one_plus_iota(x).concat(&BitRow::unit(n, x)))
            .chain(ys.iter().map(|&y| self.t.diff[y].concat(&zero)))
            .chain(zs.iter().map(|&z| zero.concat(&self.t.diff[z])))
            .collect();
        let kernel = gf2::kernel(&images, 2 * n);
        let (nx, ny) = (xs.len(), ys.len());
        let has_x = kernel.iter().any(|k| k.ones().any(|i| i < nx));
        let has_free = kernel.iter().any(|k| {
            let mut l = BitRow::zeros(n);
            for i in k.ones() {
                if i >= nx && i < nx + ny {
                    l.toggle(ys[i - nx]);
                } else if i >= nx + ny {
                    l.xor_assign(&self.one_plus_iota(zs[i - nx - ny]));
                }
            }
            self.nontorsion(&l, s + 1 - 2 * m as i32)
        });
        // the good triples are the complement of two subspaces of the kernel
        has_x && has_free
    }

    /// Triples `(0, y, z)` with `y ≠ 0` in grading `r`.
    fn upper_witness_y(&self, r: i32, m: u32) -> bool {
        let n = self.t.rank();
        let ys: Vec<usize> = piece(self.t, r).collect();
        let zs: Vec<usize> = piece(self.t, r - 2 * m as i32).collect();
        if ys.is_empty() {
            return false;
        }
        let zero = BitRow::zeros(n);
        // ∂y = 0 and ∂z = 0 separately
        let images: Vec<BitRow> = ys
            .iter()
            .map(|&y| self.t.diff[y].concat(&zero))
            .chain(zs.iter().map(|&z| zero.concat(&self.t.diff[z])))
            .collect();
        let kernel = gf2::kernel(&images, 2 * n);
        let ny = ys.len();
        let has_y = kernel.iter().any(|k| k.ones().any(|i| i < ny));
        let has_free = kernel.iter().any(|k| {
            let mut l = BitRow::zeros(n);
            for i in k.ones() {
                if i < ny {
                    l.toggle(ys[i]);
                } else {
                    l.xor_assign(&self.one_plus_iota(zs[i - ny]));
                }
            }
            self.nontorsion(&l, r - 2 * m as i32)
        });
        has_y && has_free
    }

    /// Enlarging `m` only enlarges the piece `z` lives in (in generator
    /// coordinates the equations do not depend on `m`), so checking `m_cap`
    /// covers every smaller `m`.
    fn d_bar(&self, m_cap: u32) -> Option<i32> {
        self.range()
            .into_par_iter()
            .find_first(|&t| self.upper_witness_y(t, m_cap) || self.upper_witness_x(t - 1, m_cap))
    }
}

/// `(d, d̄, d̲)` from the element-wise criteria for the two involutive
/// correction terms. Fails if raising `m_cap` by one changes `d̄`.
pub fn lemma_criteria_oracle(t: &UTowerComplex, m_cap: u32) -> Result<OracleReport> {
    let oracle = Oracle::new(t)?;
    let range = oracle.range();
    let missing = |what: &str| Error::Invariant(format!("no grading satisfies the criterion for {what}"));
    let d = range.par_iter().copied().find_first(|&r| oracle.has_free_cycle(r)).ok_or_else(|| missing("d"))?;
    let d_under = range.par_iter().copied().find_first(|&r| oracle.lower_witness(r)).ok_or_else(|| missing("d_under"))?;
    let d_bar = oracle.d_bar(m_cap).ok_or_else(|| missing("d_bar"))?;
    if oracle.d_bar(m_cap + 1) != Some(d_bar) {
        return Err(Error::OracleCap(m_cap));
    }
    Ok(OracleReport { d, d_bar, d_under })
}

/// One more than the largest torsion order.
pub fn default_m_cap(t: &UTowerComplex) -> u32 {
    homology_snf(t).max_torsion_order() + 1
}

/// The two value patterns an L-space knot or thin knot must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionPattern {
    /// all three nonnegative and `0 ≤ V̲₀ - V̄₀ ≤ 1`
    pub pattern1: bool,
    /// `V̄₀ ≤ 0` and `V₀ = V̲₀ = 0`
    pub pattern2: bool,
    pub consistent_with_thin_or_lspace: bool,
}

pub fn obstruction_pattern(r: &InvariantReport) -> ObstructionPattern {
    let (bar, v, under) = r.v_triple();
    let pattern1 = bar >= 0 && v >= 0 && under >= 0 && (0..=1).contains(&(under - bar));
    let pattern2 = bar <= 0 && v == 0 && under == 0;
    ObstructionPattern { pattern1, pattern2, consistent_with_thin_or_lspace: pattern1 || pattern2 }
}
