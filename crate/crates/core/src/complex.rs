//! Free bigraded chain complexes over `F2[U, V, U^-1, V^-1]` and the maps
//! between them.
//!
//! A homogeneous map between bigraded free modules has, for every pair of
//! basis elements, at most one admissible monomial: the gradings force both
//! exponents. Everything below that reduces to linear algebra over F2
//! (slice homology, homotopy existence, spaces of chain maps) relies on this.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{self, BitRow, Echelon, LinearSystem};
use crate::matrix::SparseMatrix;
use crate::ring::{LaurentPoly, Monomial};

/// A generator with its two gradings. `U` lowers `gr_u` by two, `V` lowers
/// `gr_v` by two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub gr_u: i32,
    pub gr_v: i32,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, gr_u: i32, gr_v: i32) -> Self {
        BasisElement { name: name.into(), gr_u, gr_v }
    }

    /// `(gr_u - gr_v) / 2`; only meaningful when the gradings have equal parity.
    pub fn alexander(&self) -> i32 {
        (self.gr_u - self.gr_v).div_euclid(2)
    }

    pub fn has_integral_alexander(&self) -> bool {
        (self.gr_u - self.gr_v).rem_euclid(2) == 0
    }
}

/// Whether a map commutes with the ring action or exchanges `U` and `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Equivariant,
    Skew,
}

impl Variance {
    pub fn compose(self, other: Variance) -> Variance {
        if self == other {
            Variance::Equivariant
        } else {
            Variance::Skew
        }
    }
}

/// The unique monomial an entry from `x` to `y` may carry, if any.
pub fn forced_monomial(
    x: &BasisElement,
    y: &BasisElement,
    variance: Variance,
    bidegree: (i32, i32),
) -> Option<Monomial> {
    let (sx_u, sx_v) = match variance {
        Variance::Equivariant => (x.gr_u, x.gr_v),
        Variance::Skew => (x.gr_v, x.gr_u),
    };
    let du = y.gr_u - sx_u - bidegree.0;
    let dv = y.gr_v - sx_v - bidegree.1;
    if du.rem_euclid(2) != 0 || dv.rem_euclid(2) != 0 {
        return None;
    }
    Some(Monomial::new(du / 2, dv / 2))
}

/// A location in a matrix together with what is wrong there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryIssue {
    pub from: usize,
    pub to: usize,
    pub detail: String,
}

impl fmt::Display for EntryIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry {} -> {}: {}", self.from, self.to, self.detail)
    }
}

/// A module map given by its matrix, variance and bidegree.
///
/// For a skew map the matrix still records `F(x) = sum M[y][x] y`; the swap is
/// applied to scalars passing through `F` during composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub matrix: SparseMatrix,
    pub variance: Variance,
    pub bidegree: (i32, i32),
}

impl Morphism {
    pub fn new(matrix: SparseMatrix, variance: Variance, bidegree: (i32, i32)) -> Self {
        Morphism { matrix, variance, bidegree }
    }

    pub fn identity(n: usize) -> Self {
        Morphism::new(SparseMatrix::identity(n), Variance::Equivariant, (0, 0))
    }

    pub fn zero(target: usize, source: usize, variance: Variance, bidegree: (i32, i32)) -> Self {
        Morphism::new(SparseMatrix::zeros(target, source), variance, bidegree)
    }

    pub fn source_rank(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_filtered(&self) -> bool {
        self.matrix.entries().all(|(_, _, p)| p.is_filtered())
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Morphism) -> Morphism {
        let skew = self.variance == Variance::Skew;
        let (a, b) = self.bidegree;
        let (c, d) = rhs.bidegree;
        let bidegree = if skew { (a + d, b + c) } else { (a + c, b + d) };
        Morphism {
            matrix: self.matrix.mul_twisted(&rhs.matrix, skew),
            variance: self.variance.compose(rhs.variance),
            bidegree,
        }
    }

    /// Sum of two maps of the same type.
    pub fn plus(&self, rhs: &Morphism) -> Morphism {
        assert_eq!(self.variance, rhs.variance, "adding maps of different variance");
        assert_eq!(self.bidegree, rhs.bidegree, "adding maps of different bidegree");
        Morphism { matrix: self.matrix.add(&rhs.matrix), ..self.clone() }
    }

    /// `F | G` on tensor products, `(F|G)(x⊗y) = F(x) ⊗ G(y)`.
    ///
    /// Both factors must have the same variance. For two skew maps a scalar
    /// crossing the left factor is swapped, and the same swap happens when it
    /// crosses the right one, so the result is well defined over the ring.
    pub fn tensor(f: &Morphism, g: &Morphism) -> Morphism {
        assert_eq!(f.variance, g.variance, "tensor of maps with different variance");
        Morphism {
            matrix: SparseMatrix::kron(&f.matrix, &g.matrix),
            variance: f.variance,
            bidegree: (f.bidegree.0 + g.bidegree.0, f.bidegree.1 + g.bidegree.1),
        }
    }

    /// The dual map between dual complexes.
    pub fn dual(&self) -> Morphism {
        match self.variance {
            Variance::Equivariant => Morphism { matrix: self.matrix.transpose(), ..self.clone() },
            Variance::Skew => Morphism {
                matrix: self.matrix.transpose().map(LaurentPoly::swap_uv),
                variance: Variance::Skew,
                bidegree: (self.bidegree.1, self.bidegree.0),
            },
        }
    }

    /// Entries whose polynomial is not the grading-forced monomial.
    pub fn homogeneity_issues(
        &self,
        source: &[BasisElement],
        target: &[BasisElement],
    ) -> Vec<EntryIssue> {
        let mut issues = Vec::new();
        for (y, x, p) in self.matrix.entries() {
            let forced = forced_monomial(&source[x], &target[y], self.variance, self.bidegree);
            if p.as_monomial().is_none() || p.as_monomial() != forced {
                let expected = forced.map_or("no admissible monomial".to_string(), |m| m.to_string());
                issues.push(EntryIssue {
                    from: x,
                    to: y,
                    detail: format!(
                        "{} -> {} carries {p}, gradings allow {expected}",
                        source[x].name, target[y].name
                    ),
                });
            }
        }
        issues
    }

    /// Human-readable listing `x -> m y + ...`, one source per line.
    pub fn describe(&self, source: &[BasisElement], target: &[BasisElement]) -> String {
        let mut out = String::new();
        for (x, src) in source.iter().enumerate().take(self.source_rank()) {
            let terms: Vec<String> = self
                .matrix
                .column(x)
                .map(|(y, p)| match p.as_monomial() {
                    Some(Monomial::ONE) => target[y].name.clone(),
                    Some(m) => format!("{m} {}", target[y].name),
                    None => format!("({p}) {}", target[y].name),
                })
                .collect();
            if !terms.is_empty() {
                out.push_str(&format!("{} -> {}\n", src.name, terms.join(" + ")));
            }
        }
        out
    }
}

/// Outcome of [`FreeComplex::verify`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexReport {
    pub parity: Vec<String>,
    pub homogeneity: Vec<EntryIssue>,
    pub d_squared: Vec<EntryIssue>,
    pub filtration: Vec<EntryIssue>,
}

impl ComplexReport {
    pub fn passes(&self) -> bool {
        self.parity.is_empty()
            && self.homogeneity.is_empty()
            && self.d_squared.is_empty()
            && self.filtration.is_empty()
    }

    pub fn homogeneity_ok(&self) -> bool {
        self.parity.is_empty() && self.homogeneity.is_empty()
    }
}

impl fmt::Display for ComplexReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        writeln!(f, "gradings:     {}", verdict(self.parity.is_empty()))?;
        for p in &self.parity {
            writeln!(f, "  {p}")?;
        }
        writeln!(f, "homogeneity:  {}", verdict(self.homogeneity.is_empty()))?;
        for i in &self.homogeneity {
            writeln!(f, "  {i}")?;
        }
        writeln!(f, "d^2 = 0:      {}", verdict(self.d_squared.is_empty()))?;
        for i in &self.d_squared {
            writeln!(f, "  {i}")?;
        }
        writeln!(f, "filtered:     {}", verdict(self.filtration.is_empty()))?;
        for i in &self.filtration {
            writeln!(f, "  {i}")?;
        }
        Ok(())
    }
}

/// A finitely generated free complex over the Laurent ring with a chosen
/// basis. `diff` has entry `[y][x]` equal to the coefficient of `y` in `∂x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    basis: Vec<BasisElement>,
    diff: SparseMatrix,
    filtered: bool,
}

impl FreeComplex {
    pub fn new(basis: Vec<BasisElement>, diff: SparseMatrix, filtered: bool) -> Result<Self> {
        if diff.nrows() != basis.len() || diff.ncols() != basis.len() {
            return Err(Error::Shape(format!(
                "differential is {}x{} but there are {} generators",
                diff.nrows(),
                diff.ncols(),
                basis.len()
            )));
        }
        Ok(FreeComplex { basis, diff, filtered })
    }

    /// The zero complex.
    pub fn empty() -> Self {
        FreeComplex { basis: Vec::new(), diff: SparseMatrix::zeros(0, 0), filtered: true }
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn diff(&self) -> &SparseMatrix {
        &self.diff
    }

    pub fn filtered(&self) -> bool {
        self.filtered
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// The differential as a morphism of bidegree `(-1, -1)`.
    pub fn differential(&self) -> Morphism {
        Morphism::new(self.diff.clone(), Variance::Equivariant, (-1, -1))
    }

    /// Checks gradings, homogeneity, `∂² = 0` and (when flagged) filtration.
    pub fn verify(&self) -> ComplexReport {
        let mut report = ComplexReport::default();
        for b in &self.basis {
            if !b.has_integral_alexander() {
                report
                    .parity
                    .push(format!("{}: gr_u = {} and gr_v = {} differ in parity", b.name, b.gr_u, b.gr_v));
            }
        }
        report.homogeneity = self.differential().homogeneity_issues(&self.basis, &self.basis);
        let d2 = self.diff.mul(&self.diff);
        report.d_squared = d2
            .entries()
            .map(|(y, x, p)| EntryIssue {
                from: x,
                to: y,
                detail: format!("∂²({}) has coefficient {p} on {}", self.basis[x].name, self.basis[y].name),
            })
            .collect();
        if self.filtered {
            report.filtration = self
                .diff
                .entries()
                .filter(|(_, _, p)| !p.is_filtered())
                .map(|(y, x, p)| EntryIssue {
                    from: x,
                    to: y,
                    detail: format!("negative exponent in {p}"),
                })
                .collect();
        }
        report
    }

    /// `C1 ⊗ C2` with basis pairs `(x1, x2)` at index `i1 * rank2 + i2`.
    pub fn tensor(&self, other: &FreeComplex) -> FreeComplex {
        let basis = self
            .basis
            .iter()
            .flat_map(|a| {
                other.basis.iter().map(move |b| {
                    BasisElement::new(format!("({},{})", a.name, b.name), a.gr_u + b.gr_u, a.gr_v + b.gr_v)
                })
            })
            .collect();
        let id1 = SparseMatrix::identity(self.rank());
        let id2 = SparseMatrix::identity(other.rank());
        let diff = SparseMatrix::kron(&self.diff, &id2).add(&SparseMatrix::kron(&id1, &other.diff));
        FreeComplex { basis, diff, filtered: self.filtered && other.filtered }
    }

    /// `Hom(C, R)` in the dual basis; gradings are negated.
    pub fn dual(&self) -> FreeComplex {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement::new(dual_name(&b.name), -b.gr_u, -b.gr_v))
            .collect();
        FreeComplex { basis, diff: self.diff.transpose(), filtered: self.filtered }
    }

    /// The same complex with the roles of `U` and `V` exchanged.
    pub fn skew(&self) -> FreeComplex {
        let basis = self.basis.iter().map(|b| BasisElement::new(b.name.clone(), b.gr_v, b.gr_u)).collect();
        FreeComplex { basis, diff: self.diff.map(LaurentPoly::swap_uv), filtered: self.filtered }
    }

    /// Equal gradings and differential, ignoring generator names.
    pub fn same_up_to_renaming(&self, other: &FreeComplex) -> bool {
        self.rank() == other.rank()
            && self.diff == other.diff
            && self.basis.iter().zip(&other.basis).all(|(a, b)| (a.gr_u, a.gr_v) == (b.gr_u, b.gr_v))
    }

    /// Whether `f` (from `self` to `target`) commutes with the differentials.
    pub fn is_chain_map(&self, target: &FreeComplex, f: &Morphism) -> bool {
        let lhs = target.differential().compose(f);
        let rhs = f.compose(&self.differential());
        lhs.matrix == rhs.matrix
    }
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// The finite F2-vector space spanned by the monomial multiples `U^i V^j x`
/// with fixed Alexander grading and fixed `gr_u`. Each generator contributes
/// at most one element.
#[derive(Clone, Debug)]
pub struct Slice {
    pub alexander: i32,
    pub gr_u: i32,
    pub elems: Vec<(usize, Monomial)>,
    position: HashMap<usize, usize>,
}

impl Slice {
    pub fn new(basis: &[BasisElement], alexander: i32, gr_u: i32) -> Self {
        let mut elems = Vec::new();
        let mut position = HashMap::new();
        for (k, x) in basis.iter().enumerate() {
            let shift = x.gr_u - gr_u;
            if shift.rem_euclid(2) != 0 || !x.has_integral_alexander() {
                continue;
            }
            let i = shift / 2;
            let j = alexander - x.alexander() + i;
            position.insert(k, elems.len());
            elems.push((k, Monomial::new(i, j)));
        }
        Slice { alexander, gr_u, elems, position }
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    /// Images of the slice elements of `self` under `m`, as vectors in `target`.
    pub fn images(&self, m: &SparseMatrix, target: &Slice) -> Vec<BitRow> {
        self.elems
            .iter()
            .map(|&(x, mono)| {
                let mut v = BitRow::zeros(target.dim());
                for (y, p) in m.column(x) {
                    if let Some(&pos) = target.position.get(&y) {
                        if p.mul_monomial(mono).contains(target.elems[pos].1) {
                            v.toggle(pos);
                        }
                    }
                }
                v
            })
            .collect()
    }
}

/// Cycles and boundaries of one slice of a complex.
struct SliceHomology {
    cycles: Vec<BitRow>,
    boundaries: Echelon,
    dim: usize,
}

impl SliceHomology {
    fn compute(c: &FreeComplex, alexander: i32, gr_u: i32) -> (Slice, SliceHomology) {
        let here = Slice::new(&c.basis, alexander, gr_u);
        let below = Slice::new(&c.basis, alexander, gr_u - 1);
        let above = Slice::new(&c.basis, alexander, gr_u + 1);
        let cycles = gf2::kernel(&here.images(&c.diff, &below), below.dim());
        let mut boundaries = Echelon::new(here.dim());
        for v in above.images(&c.diff, &here) {
            boundaries.insert(v);
        }
        let dim = cycles.len() - boundaries.rank();
        (here, SliceHomology { cycles, boundaries, dim })
    }

    /// A cycle whose class is nonzero, if there is one.
    fn nonzero_class(&self) -> Option<&BitRow> {
        self.cycles.iter().find(|z| !self.boundaries.contains(z))
    }
}

/// F2-dimension of the homology of the `(alexander, gr_u)` slice.
pub fn slice_homology_dim(c: &FreeComplex, alexander: i32, gr_u: i32) -> usize {
    SliceHomology::compute(c, alexander, gr_u).1.dim
}

/// Result of [`homology_is_r`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyCheck {
    pub holds: bool,
    /// Homology dimensions of the `(A = 0, gr_u = 0)` and `(A = 0, gr_u = 1)` slices.
    pub dims: (usize, usize),
}

/// Decides whether `H_*(C) ≅ R` with the free generator in even bigrading.
///
/// `U` and `V` are units, so `V` identifies the slice `(A, m)` with `(A + 1, m)`
/// and `UV` identifies `(A, m)` with `(A, m - 2)`: two slices determine the
/// homology up to parity.
pub fn homology_is_r(c: &FreeComplex) -> HomologyCheck {
    let dims = (slice_homology_dim(c, 0, 0), slice_homology_dim(c, 0, 1));
    HomologyCheck { holds: dims == (1, 0), dims }
}

/// Whether an equivariant, grading-preserving chain map is nonzero on the
/// generator of the even slice homology. For complexes with homology `R` this
/// is the same as being an isomorphism on homology.
pub fn homology_class_map(source: &FreeComplex, target: &FreeComplex, f: &Morphism) -> Result<bool> {
    if f.variance != Variance::Equivariant || f.bidegree != (0, 0) {
        return Err(Error::Mismatch("expected an equivariant map of bidegree (0, 0)".into()));
    }
    if f.source_rank() != source.rank() || f.target_rank() != target.rank() {
        return Err(Error::Shape("map does not fit the given complexes".into()));
    }
    if !source.is_chain_map(target, f) {
        return Err(Error::NotChainMap("map does not commute with the differentials".into()));
    }
    let (src_slice, src_h) = SliceHomology::compute(source, 0, 0);
    let Some(generator) = src_h.nonzero_class() else {
        return Ok(false);
    };
    let (tgt_slice, tgt_h) = SliceHomology::compute(target, 0, 0);
    let images = src_slice.images(&f.matrix, &tgt_slice);
    let mut image = BitRow::zeros(tgt_slice.dim());
    for k in generator.ones() {
        image.xor_assign(&images[k]);
    }
    Ok(!tgt_h.boundaries.contains(&image))
}

/// Which homotopies are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomotopyConstraints {
    pub variance: Variance,
    pub filtered: bool,
}

impl HomotopyConstraints {
    /// Filtered, equivariant.
    pub const EQUIVARIANT: HomotopyConstraints =
        HomotopyConstraints { variance: Variance::Equivariant, filtered: true };
    /// Skew-filtered, skew-equivariant.
    pub const SKEW: HomotopyConstraints = HomotopyConstraints { variance: Variance::Skew, filtered: true };
}

/// The unknown entries of a homogeneous map between two complexes.
struct MapUnknowns {
    /// `(target index, source index, forced monomial)`
    entries: Vec<(usize, usize, Monomial)>,
    variance: Variance,
    bidegree: (i32, i32),
}

impl MapUnknowns {
    fn new(source: &FreeComplex, target: &FreeComplex, variance: Variance, bidegree: (i32, i32), filtered: bool) -> Self {
        let mut entries = Vec::new();
        for (x, xe) in source.basis.iter().enumerate() {
            for (y, ye) in target.basis.iter().enumerate() {
                if let Some(m) = forced_monomial(xe, ye, variance, bidegree) {
                    if !filtered || m.is_filtered() {
                        entries.push((y, x, m));
                    }
                }
            }
        }
        MapUnknowns { entries, variance, bidegree }
    }

    /// Equations of `∂_target X + X ∂_source = rhs`, keyed by matrix position.
    fn system(&self, source: &FreeComplex, target: &FreeComplex, rhs: Option<&SparseMatrix>) -> LinearSystem {
        // rows of ∂_source: for each x, the w with ∂w containing x
        let mut preimages: Vec<Vec<usize>> = vec![Vec::new(); source.rank()];
        for (x, w, _) in source.diff.entries() {
            preimages[x].push(w);
        }
        let mut equations: BTreeMap<(usize, usize), (Vec<usize>, bool)> = BTreeMap::new();
        for (u, &(z, x, _)) in self.entries.iter().enumerate() {
            for (y, _) in target.diff.column(z) {
                equations.entry((y, x)).or_default().0.push(u);
            }
            for &w in &preimages[x] {
                equations.entry((z, w)).or_default().0.push(u);
            }
        }
        if let Some(rhs) = rhs {
            for (y, x, _) in rhs.entries() {
                equations.entry((y, x)).or_default().1 = true;
            }
        }
        let mut system = LinearSystem::new(self.entries.len());
        for (_, (lhs, value)) in equations {
            system.add_equation(lhs, value);
            if !system.is_consistent() {
                break;
            }
        }
        system
    }

    fn morphism(&self, target: usize, source: usize, bits: &BitRow) -> Morphism {
        let mut m = SparseMatrix::zeros(target, source);
        for u in bits.ones() {
            let (y, x, mono) = self.entries[u];
            m.set(y, x, mono.into());
        }
        Morphism::new(m, self.variance, self.bidegree)
    }
}

fn check_map(source: &FreeComplex, target: &FreeComplex, f: &Morphism, what: &str) -> Result<()> {
    if f.source_rank() != source.rank() || f.target_rank() != target.rank() {
        return Err(Error::Shape(format!("{what} does not fit the given complexes")));
    }
    let issues = f.homogeneity_issues(&source.basis, &target.basis);
    if let Some(i) = issues.first() {
        return Err(Error::NotHomogeneous(format!("{what}: {i}")));
    }
    if !source.is_chain_map(target, f) {
        return Err(Error::NotChainMap(format!("{what} does not commute with the differentials")));
    }
    Ok(())
}

/// Looks for `H` with `∂H + H∂ = f + g`.
///
/// `H` has bidegree one more than `f` in each grading and the requested
/// variance; with `filtered` set every entry of `H` has nonnegative exponents.
/// Returns `Ok(None)` when no such `H` exists.
pub fn homotopy_solve(
    source: &FreeComplex,
    target: &FreeComplex,
    f: &Morphism,
    g: &Morphism,
    constraints: HomotopyConstraints,
) -> Result<Option<Morphism>> {
    if f.variance != g.variance || f.variance != constraints.variance {
        return Err(Error::Mismatch("variance of f, g and the constraints must agree".into()));
    }
    if f.bidegree != g.bidegree {
        return Err(Error::Mismatch(format!("bidegrees {:?} and {:?} differ", f.bidegree, g.bidegree)));
    }
    check_map(source, target, f, "f")?;
    check_map(source, target, g, "g")?;
    let rhs = f.plus(g);
    let bidegree = (f.bidegree.0 + 1, f.bidegree.1 + 1);
    if rhs.is_zero() {
        return Ok(Some(Morphism::zero(target.rank(), source.rank(), f.variance, bidegree)));
    }
    let unknowns = MapUnknowns::new(source, target, constraints.variance, bidegree, constraints.filtered);
    let system = unknowns.system(source, target, Some(&rhs.matrix));
    let Some(bits) = system.solve() else {
        return Ok(None);
    };
    let h = unknowns.morphism(target.rank(), source.rank(), &bits);
    let check = target.differential().compose(&h).plus(&h.compose(&source.differential()));
    assert_eq!(check.matrix, rhs.matrix, "homotopy failed the substitution check");
    Ok(Some(h))
}

/// Basis of the F2-space of equivariant, grading-preserving chain maps
/// `source -> target` (filtered when asked).
pub fn chain_map_space(source: &FreeComplex, target: &FreeComplex, filtered: bool) -> Vec<Morphism> {
    let unknowns = MapUnknowns::new(source, target, Variance::Equivariant, (0, 0), filtered);
    let system = unknowns.system(source, target, None);
    system
        .nullspace()
        .iter()
        .map(|bits| unknowns.morphism(target.rank(), source.rank(), bits))
        .collect()
}
