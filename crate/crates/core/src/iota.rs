//! Complexes with a skew homotopy involution, their products and duals, and
//! local equivalence between them.

use std::fmt;

use crate::complex::{
    chain_map_space, homology_class_map, homology_is_r, homotopy_solve, BasisElement, ComplexReport, FreeComplex,
    HomologyCheck, HomotopyConstraints, Morphism, Variance,
};
use crate::error::{Error, Result};
use crate::gf2::{BitRow, Echelon};
use crate::matrix::SparseMatrix;
use crate::ring::{LaurentPoly, Monomial, Var};

/// `Φ`: the differential differentiated in `U`.
pub fn build_phi(c: &FreeComplex) -> Morphism {
    Morphism::new(c.diff().map(|p| p.derivative(Var::U)), Variance::Equivariant, (1, -1))
}

/// `Ψ`: the differential differentiated in `V`.
pub fn build_psi(c: &FreeComplex) -> Morphism {
    Morphism::new(c.diff().map(|p| p.derivative(Var::V)), Variance::Equivariant, (-1, 1))
}

/// The homotopy `H` with `Φ² = ∂H + H∂`: write `∂ = Σ P_n U^n` and take
/// `Σ C(n, 2) P_n U^(n-2)`.
pub fn phi_squared_homotopy(c: &FreeComplex) -> Morphism {
    let h = c.diff().map(|p| {
        let kept = p.filter_terms(|m| matches!(m.u.rem_euclid(4), 2 | 3));
        kept.mul_monomial(Monomial::new(-2, 0))
    });
    Morphism::new(h, Variance::Equivariant, (3, -1))
}

/// The analogous homotopy for `Ψ²`, obtained through the skew complex.
pub fn psi_squared_homotopy(c: &FreeComplex) -> Morphism {
    let h = phi_squared_homotopy(&c.skew());
    Morphism::new(h.matrix.map(LaurentPoly::swap_uv), Variance::Equivariant, (-1, 3))
}

/// One numbered condition of the definition and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub number: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: Vec<String>,
}

/// Outcome of [`verify_iota_complex`]. Condition 6 is absent when only the
/// structural conditions were checked or an earlier condition failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaReport {
    pub conditions: Vec<Condition>,
    pub homology: HomologyCheck,
    /// The homotopy witnessing `ι² ≃ id + ΦΨ`, when found.
    pub homotopy: Option<Morphism>,
}

impl IotaReport {
    pub fn passes(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Condition> {
        self.conditions.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for IotaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conditions {
            writeln!(f, "({}) {:<44} {}", c.number, c.name, if c.passed { "pass" } else { "FAIL" })?;
            for d in &c.detail {
                writeln!(f, "    {d}")?;
            }
        }
        Ok(())
    }
}

fn condition(number: u8, name: &'static str, detail: Vec<String>) -> Condition {
    Condition { number, name, passed: detail.is_empty(), detail }
}

fn structural_report(c: &FreeComplex, iota: &Morphism) -> IotaReport {
    let report: ComplexReport = c.verify();
    let mut conditions = vec![
        condition(1, "chain complex (d^2 = 0)", report.d_squared.iter().map(|i| i.to_string()).collect()),
        condition(2, "differential filtered", report.filtration.iter().map(|i| i.to_string()).collect()),
        condition(
            3,
            "gradings and homogeneity",
            report.parity.iter().cloned().chain(report.homogeneity.iter().map(|i| i.to_string())).collect(),
        ),
    ];
    let homology = if report.homogeneity_ok() {
        homology_is_r(c)
    } else {
        HomologyCheck { holds: false, dims: (0, 0) }
    };
    let mut h_detail = Vec::new();
    if !report.homogeneity_ok() {
        h_detail.push("not checked: gradings are inconsistent".to_string());
    } else if !homology.holds {
        h_detail.push(format!("slice homology dimensions {:?}, expected (1, 0)", homology.dims));
    }
    conditions.push(condition(4, "homology isomorphic to R", h_detail));

    let mut i_detail = Vec::new();
    if iota.source_rank() != c.rank() || iota.target_rank() != c.rank() {
        i_detail.push(format!(
            "iota is {}x{}, complex has {} generators",
            iota.target_rank(),
            iota.source_rank(),
            c.rank()
        ));
    } else if iota.variance != Variance::Skew || iota.bidegree != (0, 0) {
        i_detail.push("iota must be skew of bidegree (0, 0)".to_string());
    } else {
        i_detail.extend(iota.homogeneity_issues(c.basis(), c.basis()).iter().map(|i| format!("not skew-graded: {i}")));
        i_detail.extend(
            iota.matrix
                .entries()
                .filter(|(_, _, p)| !p.is_filtered())
                .map(|(y, x, p)| format!("not skew-filtered: entry {x} -> {y} is {p}")),
        );
        if i_detail.is_empty() && !c.is_chain_map(c, iota) {
            i_detail.push("iota does not commute with the differential".to_string());
        }
    }
    conditions.push(condition(5, "iota skew-graded, skew-filtered chain map", i_detail));
    IotaReport { conditions, homology, homotopy: None }
}

/// Checks every condition of the definition, including `ι² ≃ id + ΦΨ` through
/// a filtered equivariant homotopy.
pub fn verify_iota_complex(c: &FreeComplex, iota: &Morphism) -> IotaReport {
    let mut report = structural_report(c, iota);
    if !report.passes() {
        return report;
    }
    let iota2 = iota.compose(iota);
    let rhs = Morphism::identity(c.rank()).plus(&build_phi(c).compose(&build_psi(c)));
    let detail = match homotopy_solve(c, c, &iota2, &rhs, HomotopyConstraints::EQUIVARIANT) {
        Ok(Some(h)) => {
            report.homotopy = Some(h);
            Vec::new()
        }
        Ok(None) => vec!["no filtered equivariant homotopy exists".to_string()],
        Err(e) => vec![e.to_string()],
    };
    report.conditions.push(condition(6, "iota^2 homotopic to id + Phi Psi", detail));
    report
}

/// A free complex together with its involution.
///
/// Construction checks conditions 1 through 5 and the homology; condition 6
/// needs a homotopy solve whose size grows with the square of the rank, so it
/// is left to [`IotaComplex::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaComplex {
    complex: FreeComplex,
    iota: Morphism,
}

impl IotaComplex {
    pub fn new(complex: FreeComplex, iota: Morphism) -> Result<Self> {
        let report = structural_report(&complex, &iota);
        if let Some(c) = report.first_failure() {
            return Err(Error::NotIotaComplex(format!(
                "condition ({}) {}: {}",
                c.number,
                c.name,
                c.detail.first().map(String::as_str).unwrap_or("")
            )));
        }
        Ok(IotaComplex { complex, iota })
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn iota(&self) -> &Morphism {
        &self.iota
    }

    pub fn basis(&self) -> &[BasisElement] {
        self.complex.basis()
    }

    pub fn rank(&self) -> usize {
        self.complex.rank()
    }

    pub fn verify(&self) -> IotaReport {
        verify_iota_complex(&self.complex, &self.iota)
    }

    pub fn phi(&self) -> Morphism {
        build_phi(&self.complex)
    }

    pub fn psi(&self) -> Morphism {
        build_psi(&self.complex)
    }

    /// The identity complex: one generator, no differential, `ι = id`.
    pub fn unit() -> Self {
        let c = FreeComplex::new(vec![BasisElement::new("x0", 0, 0)], SparseMatrix::zeros(1, 1), true)
            .expect("one generator");
        IotaComplex { complex: c, iota: skew_identity(1) }
    }

    /// Same complex and involution, ignoring generator names.
    pub fn same_up_to_renaming(&self, other: &IotaComplex) -> bool {
        self.complex.same_up_to_renaming(&other.complex) && self.iota == other.iota
    }
}

fn skew_identity(n: usize) -> Morphism {
    Morphism::new(SparseMatrix::identity(n), Variance::Skew, (0, 0))
}

/// The two product formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `ι₁|ι₂ + Φ₁ι₁|Ψ₂ι₂`
    First,
    /// `ι₁|ι₂ + Ψ₁ι₁|Φ₂ι₂`
    Second,
}

/// The tensor product with the involution of the chosen variant.
pub fn product(a: &IotaComplex, b: &IotaComplex, variant: Variant) -> Result<IotaComplex> {
    let (left, right) = match variant {
        Variant::First => (a.phi(), b.psi()),
        Variant::Second => (a.psi(), b.phi()),
    };
    let main = Morphism::tensor(&a.iota, &b.iota);
    let correction = Morphism::tensor(&left.compose(&a.iota), &right.compose(&b.iota));
    IotaComplex::new(a.complex.tensor(&b.complex), main.plus(&correction))
}

/// `C^∨` with the dual involution. On matrices the dual of a skew map is the
/// transpose with `U` and `V` exchanged in every entry.
pub fn dual_iota(ic: &IotaComplex) -> IotaComplex {
    IotaComplex { complex: ic.complex.dual(), iota: ic.iota.dual() }
}

/// `id|id + Ψ₁|Φ₂`, a map between the two product variants (in either direction).
pub fn product_equivalence(a: &IotaComplex, b: &IotaComplex) -> Morphism {
    let id = Morphism::identity(a.rank() * b.rank());
    id.plus(&Morphism::tensor(&a.psi(), &b.phi()))
}

/// Cotrace and trace maps between the identity complex and `C ⊗ C^∨`.
#[derive(Clone, Debug)]
pub struct InverseWitnesses {
    /// `C ×₁ C^∨`
    pub product: IotaComplex,
    /// `1 ↦ Σ x ⊗ x^∨`
    pub cotrace: Morphism,
    /// `x ⊗ y^∨ ↦ y^∨(x)`
    pub trace: Morphism,
    pub report: InverseReport,
}

/// What [`inverse_witnesses`] checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseReport {
    pub chain_maps: bool,
    pub composite_is_identity: bool,
    pub cotrace_on_homology: bool,
    pub trace_on_homology: bool,
    pub cotrace_intertwines: Option<Morphism>,
    pub trace_intertwines: Option<Morphism>,
}

impl InverseReport {
    pub fn passes(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.chain_maps {
            Some("trace or cotrace is not a chain map")
        } else if !self.composite_is_identity {
            Some("trace after cotrace is not the identity")
        } else if !self.cotrace_on_homology {
            Some("cotrace vanishes on homology")
        } else if !self.trace_on_homology {
            Some("trace vanishes on homology")
        } else if self.cotrace_intertwines.is_none() {
            Some("cotrace does not intertwine the involutions")
        } else if self.trace_intertwines.is_none() {
            Some("trace does not intertwine the involutions")
        } else {
            None
        }
    }
}

/// Builds the cotrace `F` and trace `G` exhibiting `C^∨` as an inverse of
/// `C`, and checks them.
pub fn inverse_witnesses(ic: &IotaComplex) -> Result<InverseWitnesses> {
    let n = ic.rank();
    let dual = dual_iota(ic);
    let product = product(ic, &dual, Variant::First)?;
    let unit = IotaComplex::unit();
    let (f, g) = trace_cotrace(n);

    let (e, t) = (unit.complex(), product.complex());
    let chain_maps = e.is_chain_map(t, &f) && t.is_chain_map(e, &g);
    let composite_is_identity = g.compose(&f).matrix == SparseMatrix::identity(1);
    let (mut cotrace_on_homology, mut trace_on_homology) = (false, false);
    let (mut cotrace_intertwines, mut trace_intertwines) = (None, None);
    if chain_maps {
        cotrace_on_homology = homology_class_map(e, t, &f)?;
        trace_on_homology = homology_class_map(t, e, &g)?;
        cotrace_intertwines = intertwining_homotopy(&unit, &product, &f)?;
        trace_intertwines = intertwining_homotopy(&product, &unit, &g)?;
    }
    let report = InverseReport {
        chain_maps,
        composite_is_identity,
        cotrace_on_homology,
        trace_on_homology,
        cotrace_intertwines,
        trace_intertwines,
    };
    Ok(InverseWitnesses { product, cotrace: f, trace: g, report })
}

/// Cotrace and trace for a rank `n` complex, in the tensor basis of `C ⊗ C^∨`.
pub fn trace_cotrace(n: usize) -> (Morphism, Morphism) {
    let mut f = SparseMatrix::zeros(n * n, 1);
    let mut g = SparseMatrix::zeros(1, n * n);
    for i in 0..n {
        f.set(i * n + i, 0, LaurentPoly::one());
        g.set(0, i * n + i, LaurentPoly::one());
    }
    (
        Morphism::new(f, Variance::Equivariant, (0, 0)),
        Morphism::new(g, Variance::Equivariant, (0, 0)),
    )
}

/// A skew homotopy between `ι_target ∘ f` and `f ∘ ι_source`, if one exists.
pub fn intertwining_homotopy(source: &IotaComplex, target: &IotaComplex, f: &Morphism) -> Result<Option<Morphism>> {
    let lhs = target.iota.compose(f);
    let rhs = f.compose(&source.iota);
    homotopy_solve(&source.complex, &target.complex, &lhs, &rhs, HomotopyConstraints::SKEW)
}

/// Outcome of [`verify_local_equivalence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEquivalenceReport {
    pub maps_valid: Result<()>,
    pub forward_on_homology: bool,
    pub backward_on_homology: bool,
    pub forward_intertwines: Option<Morphism>,
    pub backward_intertwines: Option<Morphism>,
}

impl LocalEquivalenceReport {
    pub fn passes(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<String> {
        if let Err(e) = &self.maps_valid {
            Some(e.to_string())
        } else if !self.forward_on_homology {
            Some("F is zero on homology".into())
        } else if !self.backward_on_homology {
            Some("G is zero on homology".into())
        } else if self.forward_intertwines.is_none() {
            Some("F does not intertwine the involutions".into())
        } else if self.backward_intertwines.is_none() {
            Some("G does not intertwine the involutions".into())
        } else {
            None
        }
    }
}

fn check_local_map(source: &IotaComplex, target: &IotaComplex, f: &Morphism, name: &str) -> Result<()> {
    if f.variance != Variance::Equivariant || f.bidegree != (0, 0) {
        return Err(Error::Mismatch(format!("{name} must be equivariant and grading preserving")));
    }
    if f.source_rank() != source.rank() || f.target_rank() != target.rank() {
        return Err(Error::Shape(format!("{name} does not fit the given complexes")));
    }
    if let Some(i) = f.homogeneity_issues(source.basis(), target.basis()).first() {
        return Err(Error::NotHomogeneous(format!("{name}: {i}")));
    }
    if !f.is_filtered() {
        return Err(Error::Mismatch(format!("{name} is not filtered")));
    }
    if !source.complex.is_chain_map(&target.complex, f) {
        return Err(Error::NotChainMap(format!("{name} does not commute with the differentials")));
    }
    Ok(())
}

/// Checks that `F: C₁ → C₂` and `G: C₂ → C₁` form a local equivalence.
pub fn verify_local_equivalence(
    a: &IotaComplex,
    b: &IotaComplex,
    f: &Morphism,
    g: &Morphism,
) -> Result<LocalEquivalenceReport> {
    let maps_valid = check_local_map(a, b, f, "F").and_then(|_| check_local_map(b, a, g, "G"));
    let mut report = LocalEquivalenceReport {
        maps_valid: maps_valid.clone(),
        forward_on_homology: false,
        backward_on_homology: false,
        forward_intertwines: None,
        backward_intertwines: None,
    };
    if maps_valid.is_err() {
        return Ok(report);
    }
    report.forward_on_homology = homology_class_map(&a.complex, &b.complex, f)?;
    report.backward_on_homology = homology_class_map(&b.complex, &a.complex, g)?;
    if report.forward_on_homology && report.backward_on_homology {
        report.forward_intertwines = intertwining_homotopy(a, b, f)?;
        if report.forward_intertwines.is_some() {
            report.backward_intertwines = intertwining_homotopy(b, a, g)?;
        }
    }
    Ok(report)
}

/// Default bound on the dimension of a chain-map space to enumerate.
pub const DEFAULT_CAP: usize = 24;

/// Searches for a map `source → target` that is an isomorphism on homology and
/// intertwines the involutions.
///
/// The induced map on the generator of homology is linear in `F`, so it is
/// computed once per basis map and then updated along a Gray code.
fn search_direction(source: &IotaComplex, target: &IotaComplex, cap: usize) -> Result<Option<Morphism>> {
    let space = chain_map_space(&source.complex, &target.complex, true);
    if space.len() > cap {
        return Err(Error::CapExceeded { dim: space.len(), cap });
    }
    let probes = homology_probes(source, target, &space)?;
    let mut current = Morphism::zero(target.rank(), source.rank(), Variance::Equivariant, (0, 0));
    let mut image = probes.zero.clone();
    let total: u64 = 1u64 << space.len();
    for step in 1..total {
        let k = step.trailing_zeros() as usize;
        current = current.plus(&space[k]);
        image.xor_assign(&probes.images[k]);
        if probes.boundaries.contains(&image) {
            continue;
        }
        if intertwining_homotopy(source, target, &current)?.is_some() {
            return Ok(Some(current));
        }
    }
    Ok(None)
}

struct HomologyProbes {
    images: Vec<BitRow>,
    zero: BitRow,
    boundaries: Echelon,
}

/// Images of a fixed homology generator of `source` under each basis map,
/// in the even slice of `target`, together with that slice's boundaries.
fn homology_probes(source: &IotaComplex, target: &IotaComplex, space: &[Morphism]) -> Result<HomologyProbes> {
    use crate::complex::Slice;
    let (s, t) = (&source.complex, &target.complex);
    let here = Slice::new(s.basis(), 0, 0);
    let below = Slice::new(s.basis(), 0, -1);
    let above = Slice::new(s.basis(), 0, 1);
    let cycles = crate::gf2::kernel(&here.images(s.diff(), &below), below.dim());
    let mut src_b = Echelon::new(here.dim());
    for v in above.images(s.diff(), &here) {
        src_b.insert(v);
    }
    let generator = cycles
        .into_iter()
        .find(|z| !src_b.contains(z))
        .ok_or_else(|| Error::NotIotaComplex("source has no homology generator".into()))?;

    let there = Slice::new(t.basis(), 0, 0);
    let mut boundaries = Echelon::new(there.dim());
    for v in Slice::new(t.basis(), 0, 1).images(t.diff(), &there) {
        boundaries.insert(v);
    }
    let images = space
        .iter()
        .map(|f| {
            let cols = here.images(&f.matrix, &there);
            let mut v = BitRow::zeros(there.dim());
            for k in generator.ones() {
                v.xor_assign(&cols[k]);
            }
            v
        })
        .collect();
    Ok(HomologyProbes { images, zero: BitRow::zeros(there.dim()), boundaries })
}

/// Outcome of [`search_local_equivalence`] when the search completes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Equivalent { forward: Morphism, backward: Morphism },
    /// Every candidate in one direction was rejected.
    NotEquivalent { failed_direction: Direction },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Exhaustive search for a local equivalence. Each direction is searched
/// separately since the conditions on `F` and `G` do not interact.
pub fn search_local_equivalence(a: &IotaComplex, b: &IotaComplex, cap: usize) -> Result<SearchOutcome> {
    let Some(forward) = search_direction(a, b, cap)? else {
        return Ok(SearchOutcome::NotEquivalent { failed_direction: Direction::Forward });
    };
    let Some(backward) = search_direction(b, a, cap)? else {
        return Ok(SearchOutcome::NotEquivalent { failed_direction: Direction::Backward });
    };
    Ok(SearchOutcome::Equivalent { forward, backward })
}
