#![allow(dead_code)]

use iotak_core::iota::{product, IotaComplex, Variant};
use iotak_core::models::{mirror, torus_knot, unknot_complex};

pub fn t(p: u32, q: u32) -> IotaComplex {
    torus_knot(p, q).unwrap()
}

pub fn m(p: u32, q: u32) -> IotaComplex {
    mirror(&t(p, q))
}

pub fn sum(parts: &[IotaComplex], variant: Variant) -> IotaComplex {
    parts.iter().skip(1).fold(parts[0].clone(), |acc, k| product(&acc, k, variant).unwrap())
}

/// Staircases of the torus knots used throughout, then their mirrors.
pub fn base() -> Vec<(String, IotaComplex)> {
    let pairs = [(2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
    let mut out: Vec<(String, IotaComplex)> = pairs.iter().map(|&(p, q)| (format!("T({p},{q})"), t(p, q))).collect();
    out.extend(pairs.iter().map(|&(p, q)| (format!("-T({p},{q})"), m(p, q))));
    out
}

/// Unknot, base complexes, and all pairwise products of base complexes.
pub fn corpus() -> Vec<(String, IotaComplex)> {
    let base = base();
    let mut out = vec![("U".to_string(), unknot_complex())];
    out.extend(base.iter().cloned());
    for i in 0..base.len() {
        for j in i..base.len() {
            let (a, b) = (&base[i], &base[j]);
            out.push((format!("{}#{}", a.0, b.0), product(&a.1, &b.1, Variant::First).unwrap()));
        }
    }
    out
}

/// Complexes used for homotopy solves; every corpus complex qualifies.
pub fn small_corpus() -> Vec<(String, IotaComplex)> {
    corpus()
}
