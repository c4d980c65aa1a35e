mod common;

use proptest::prelude::*;

use iotak_core::complex::{homology_is_r, homotopy_solve, HomotopyConstraints, Slice};
use iotak_core::gf2::BitRow;
use iotak_core::invariants::{
    a_zero_minus, default_m_cap, graded_homology_dim, homology_snf, involutive_invariants, lemma_criteria_oracle,
    UTowerComplex,
};
use iotak_core::iota::{
    build_phi, build_psi, dual_iota, intertwining_homotopy, inverse_witnesses, phi_squared_homotopy, product,
    psi_squared_homotopy, IotaComplex, Variant,
};
use iotak_core::models::{mirror, staircase_complex, torus_knot, torus_staircase, unknot_complex, Staircase};
use iotak_core::{LaurentPoly, Monomial, Morphism, SparseMatrix, Variance};

fn staircase() -> impl Strategy<Value = Staircase> {
    prop::collection::vec(1u32..=3, 0..=3).prop_map(|u| {
        let v = u.iter().rev().copied().collect();
        Staircase::new(u, v).unwrap()
    })
}

fn knot() -> impl Strategy<Value = IotaComplex> {
    (staircase(), any::<bool>()).prop_map(|(s, m)| {
        let c = staircase_complex(&s);
        if m {
            mirror(&c)
        } else {
            c
        }
    })
}

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::First), Just(Variant::Second)]
}

/// A knot or a product of two.
fn complex() -> impl Strategy<Value = IotaComplex> {
    prop_oneof![
        knot(),
        (knot(), knot(), variant()).prop_map(|(a, b, v)| product(&a, &b, v).unwrap()),
    ]
}

fn residual(c: &iotak_core::FreeComplex, h: &Morphism) -> SparseMatrix {
    let d = c.differential();
    d.compose(h).plus(&h.compose(&d)).matrix
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructions_stay_clean(a in complex(), b in knot()) {
        let (ca, cb) = (a.complex(), b.complex());
        for c in [ca.tensor(cb), ca.dual(), ca.skew()] {
            prop_assert!(c.verify().passes());
        }
        prop_assert!(homology_is_r(&ca.tensor(cb)).holds);
        prop_assert!(ca.dual().dual().same_up_to_renaming(ca));
        prop_assert!(ca.skew().skew().same_up_to_renaming(ca));
    }

    #[test]
    fn slices_translate(ic in complex(), a in -3i32..=3, m in -4i32..=4) {
        let c = ic.complex();
        let basis = c.basis();
        let images = |alex, gr| Slice::new(basis, alex, gr).images(c.diff(), &Slice::new(basis, alex, gr - 1));
        let here = images(a, m);
        prop_assert_eq!(&here, &images(a + 1, m));
        prop_assert_eq!(&here, &images(a, m - 2));
        let s = Slice::new(basis, a, m);
        let v = Slice::new(basis, a + 1, m);
        let u = Slice::new(basis, a, m - 2);
        for ((x, mx), ((y, my), (z, mz))) in s.elems.iter().zip(v.elems.iter().zip(&u.elems)) {
            prop_assert_eq!((x, *mx * Monomial::new(0, 1)), (y, *my));
            prop_assert_eq!((x, *mx * Monomial::U_HAT), (z, *mz));
        }
    }

    #[test]
    fn derivative_identities(ic in complex()) {
        let c = ic.complex();
        let d = c.differential();
        let (phi, psi) = (build_phi(c), build_psi(c));
        prop_assert!(d.compose(&phi).plus(&phi.compose(&d)).is_zero());
        prop_assert!(d.compose(&psi).plus(&psi.compose(&d)).is_zero());
        prop_assert_eq!(phi.compose(&phi).matrix, residual(c, &phi_squared_homotopy(c)));
        prop_assert_eq!(psi.compose(&psi).matrix, residual(c, &psi_squared_homotopy(c)));
        prop_assert!(phi_squared_homotopy(c).is_filtered());
        let h = homotopy_solve(c, c, &phi.compose(&psi), &psi.compose(&phi), HomotopyConstraints::EQUIVARIANT)
            .unwrap();
        prop_assert!(h.is_some());
    }

    #[test]
    fn involution_axioms(ic in complex()) {
        let report = ic.verify();
        prop_assert!(report.passes(), "{}", report);
        let h = report.homotopy.unwrap();
        prop_assert!(h.is_filtered());
        prop_assert_eq!(h.variance, Variance::Equivariant);
        prop_assert!(h.homogeneity_issues(ic.basis(), ic.basis()).is_empty());
        let c = ic.complex();
        let iota2 = ic.iota().compose(ic.iota());
        let rhs = Morphism::identity(ic.rank()).plus(&ic.phi().compose(&ic.psi()));
        prop_assert_eq!(residual(c, &h), iota2.plus(&rhs).matrix);
        let iota4 = iota2.compose(&iota2);
        let id = Morphism::identity(ic.rank());
        prop_assert!(homotopy_solve(c, c, &iota4, &id, HomotopyConstraints::EQUIVARIANT).unwrap().is_some());
        prop_assert!(dual_iota(&ic).verify().passes());
    }

    #[test]
    fn products_commute(a in knot(), b in knot()) {
        let ab = product(&a, &b, Variant::First).unwrap();
        let ba = product(&b, &a, Variant::Second).unwrap();
        // (x, y) ↦ (y, x)
        let (n1, n2) = (a.rank(), b.rank());
        let mut swap = SparseMatrix::zeros(n1 * n2, n1 * n2);
        for i in 0..n1 {
            for j in 0..n2 {
                swap.set(j * n1 + i, i * n2 + j, LaurentPoly::one());
            }
        }
        let f = Morphism::new(swap, Variance::Equivariant, (0, 0));
        prop_assert!(ab.complex().is_chain_map(ba.complex(), &f));
        prop_assert!(intertwining_homotopy(&ab, &ba, &f).unwrap().is_some());
    }

    #[test]
    fn products_associate(a in knot(), b in knot(), c in knot()) {
        let left = product(&product(&a, &b, Variant::First).unwrap(), &c, Variant::First).unwrap();
        let right = product(&a, &product(&b, &c, Variant::First).unwrap(), Variant::First).unwrap();
        prop_assert!(left.complex().same_up_to_renaming(right.complex()));
        let cx = left.complex();
        prop_assert!(homotopy_solve(cx, cx, left.iota(), right.iota(), HomotopyConstraints::SKEW).unwrap().is_some());
    }

    #[test]
    fn inverses(ic in knot()) {
        let w = inverse_witnesses(&ic).unwrap();
        prop_assert!(w.report.passes(), "{:?}", w.report.first_failure());
    }

    #[test]
    fn skew_tensor_well_defined(a in knot(), b in knot(), i in -3i32..=3, j in -3i32..=3) {
        // (ι|ι)(r v) = swap(r) (ι|ι)(v)
        let f = Morphism::tensor(a.iota(), b.iota());
        let n = a.rank() * b.rank();
        let r = Monomial::new(i, j);
        let mut scalar = SparseMatrix::zeros(n, n);
        let mut swapped = SparseMatrix::zeros(n, n);
        for k in 0..n {
            scalar.set(k, k, r.into());
            swapped.set(k, k, r.swap().into());
        }
        let scalar = Morphism::new(scalar, Variance::Equivariant, (0, 0));
        let swapped = Morphism::new(swapped, Variance::Equivariant, (0, 0));
        prop_assert_eq!(f.compose(&scalar).matrix, swapped.compose(&f).matrix);
    }

    #[test]
    fn invariant_properties(a in knot(), b in knot()) {
        let p1 = product(&a, &b, Variant::First).unwrap();
        let p2 = product(&a, &b, Variant::Second).unwrap();
        let t1 = a_zero_minus(&p1);
        let r1 = involutive_invariants(&t1).unwrap();
        prop_assert_eq!(r1, involutive_invariants(&a_zero_minus(&p2)).unwrap());
        prop_assert!(r1.d_under <= r1.d && r1.d <= r1.d_bar);
        prop_assert_eq!(r1.d % 2, 0);
        let o = lemma_criteria_oracle(&t1, default_m_cap(&t1)).unwrap();
        prop_assert_eq!((o.d, o.d_bar, o.d_under), (r1.d, r1.d_bar, r1.d_under));
        let with_unit = product(&p1, &unknot_complex(), Variant::First).unwrap();
        prop_assert_eq!(involutive_invariants(&a_zero_minus(&with_unit)).unwrap(), r1);
    }

    #[test]
    fn snf_matches_ranks_and_ignores_order(ic in complex(), seed in any::<u64>()) {
        let t = a_zero_minus(&ic);
        let h = homology_snf(&t);
        let lo = t.gradings().iter().min().copied().unwrap_or(0) - 6;
        let hi = t.gradings().iter().max().copied().unwrap_or(0) + 2;
        for r in lo..=hi {
            prop_assert_eq!(h.dim_at(r), graded_homology_dim(&t, r), "grading {}", r);
        }
        let mut perm: Vec<usize> = (0..t.rank()).collect();
        let mut state = seed | 1;
        for i in (1..perm.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            perm.swap(i, (state % (i as u64 + 1)) as usize);
        }
        prop_assert_eq!(homology_snf(&t.permute(&perm)), h);
    }

    #[test]
    fn staircase_properties(s in staircase()) {
        let ic = staircase_complex(&s);
        let k = s.u_steps.len();
        let b = ic.basis();
        for m in 0..=2 * k {
            prop_assert_eq!(b[m].alexander(), -b[2 * k - m].alexander());
            prop_assert_eq!(b[2 * k - m].gr_u, b[m].gr_v);
        }
        prop_assert_eq!(ic.iota().compose(ic.iota()), Morphism::identity(ic.rank()));
        prop_assert!(ic.phi().compose(&ic.psi()).is_zero());
        prop_assert!(ic.verify().passes());
        // the even slice carries the homology
        prop_assert_eq!(homology_is_r(ic.complex()).dims, (1, 0));
    }

    #[test]
    fn torus_genus(p in 1u32..=9, q in 1u32..=9) {
        prop_assume!(num_gcd(p, q) == 1);
        let s = torus_staircase(p, q).unwrap();
        prop_assert_eq!(s.genus(), ((p - 1) * (q - 1) / 2) as i32);
        let ic = torus_knot(p, q).unwrap();
        prop_assert_eq!(ic.basis()[0].alexander(), ((p - 1) * (q - 1) / 2) as i32);
    }
}

fn num_gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

/// Split complexes `Û^k`-pairs plus free generators, conjugated by a random
/// grading-preserving triangular change of basis.
fn random_tower() -> impl Strategy<Value = UTowerComplex> {
    let pair = (-4i32..=4, 0u32..=3).prop_map(|(g, k)| (g, k));
    (prop::collection::vec(pair, 0..=5), prop::collection::vec(-4i32..=4, 1..=3), any::<u64>()).prop_map(
        |(pairs, free, seed)| {
            let mut gradings = Vec::new();
            let mut arrows = Vec::new();
            for (g, k) in pairs {
                // ∂x = Û^k y with gr(y) = g
                let y = gradings.len();
                gradings.push(g);
                gradings.push(g - 2 * k as i32 + 1);
                arrows.push((y + 1, y));
            }
            gradings.extend(free);
            let n = gradings.len();
            let mut d = vec![BitRow::zeros(n); n];
            for (x, y) in arrows {
                d[x].toggle(y);
            }
            // P = I + strictly upward entries (gr(target) > gr(source), same parity)
            let mut state = seed | 1;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            let mut p = vec![BitRow::zeros(n); n];
            for x in 0..n {
                p[x].toggle(x);
                for y in 0..n {
                    let diff = gradings[y] - gradings[x];
                    if diff > 0 && diff % 2 == 0 && next() % 3 == 0 {
                        p[x].toggle(y);
                    }
                }
            }
            let p_inv = invert(&p);
            let conj = compose(&compose(&p, &d), &p_inv);
            let names = (0..n).map(|i| format!("g{i}")).collect();
            UTowerComplex::new(names, gradings, conj, None).unwrap()
        },
    )
}

fn compose(a: &[BitRow], b: &[BitRow]) -> Vec<BitRow> {
    b.iter()
        .map(|col| {
            let mut out = BitRow::zeros(a.len());
            for z in col.ones() {
                out.xor_assign(&a[z]);
            }
            out
        })
        .collect()
}

/// Inverse of a unipotent matrix `I + N` as `Σ N^k`.
fn invert(p: &[BitRow]) -> Vec<BitRow> {
    let n = p.len();
    let id: Vec<BitRow> = (0..n).map(|i| BitRow::unit(n, i)).collect();
    let nil: Vec<BitRow> = p
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut c = c.clone();
            c.toggle(i);
            c
        })
        .collect();
    let mut acc = id.clone();
    let mut power = id;
    for _ in 0..n {
        power = compose(&nil, &power);
        for (a, b) in acc.iter_mut().zip(&power) {
            a.xor_assign(b);
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_on_random_towers(t in random_tower()) {
        let h = homology_snf(&t);
        for r in -14..=6 {
            prop_assert_eq!(h.dim_at(r), graded_homology_dim(&t, r), "grading {}", r);
        }
    }
}
