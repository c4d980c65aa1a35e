//! Laurent polynomials in two variables over the field with two elements.
//!
//! Coefficients are implicit: a polynomial is the set of monomials that occur
//! with coefficient one. Addition is therefore symmetric difference.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

/// The monomial `U^u V^v`. Exponents may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct Monomial {
    pub u: i32,
    pub v: i32,
}

/// Which variable a derivative is taken with respect to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    U,
    V,
}

fn checked(a: i32, b: i32) -> i32 {
    a.checked_add(b).expect("Laurent exponent overflow")
}

impl Monomial {
    pub const ONE: Monomial = Monomial { u: 0, v: 0 };
    /// `UV`, the variable of the Alexander-grading-zero part.
    pub const U_HAT: Monomial = Monomial { u: 1, v: 1 };

    pub const fn new(u: i32, v: i32) -> Self {
        Monomial { u, v }
    }

    pub fn is_filtered(&self) -> bool {
        self.u >= 0 && self.v >= 0
    }

    pub fn swap(self) -> Self {
        Monomial { u: self.v, v: self.u }
    }

    pub fn exponent(&self, var: Var) -> i32 {
        match var {
            Var::U => self.u,
            Var::V => self.v,
        }
    }

    pub fn pow(self, k: i32) -> Self {
        Monomial {
            u: self.u.checked_mul(k).expect("Laurent exponent overflow"),
            v: self.v.checked_mul(k).expect("Laurent exponent overflow"),
        }
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial { u: checked(self.u, rhs.u), v: checked(self.v, rhs.v) }
    }
}

impl From<(i32, i32)> for Monomial {
    fn from((u, v): (i32, i32)) -> Self {
        Monomial { u, v }
    }
}

impl From<Monomial> for (i32, i32) {
    fn from(m: Monomial) -> Self {
        (m.u, m.v)
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, var: &str, e: i32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u == 0 && self.v == 0 {
            return write!(f, "1");
        }
        fmt_power(f, "U", self.u)?;
        fmt_power(f, "V", self.v)
    }
}

/// An element of `F2[U, V, U^-1, V^-1]`.
///
/// Terms are kept sorted (lexicographic on `(u, v)`) and free of duplicates, so
/// structural equality is ring equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Monomial>", into = "Vec<Monomial>")]
pub struct LaurentPoly {
    terms: Vec<Monomial>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Monomial::ONE.into()
    }

    /// Builds a polynomial from any list of monomials, cancelling pairs.
    pub fn from_terms<I: IntoIterator<Item = Monomial>>(terms: I) -> Self {
        let mut terms: Vec<Monomial> = terms.into_iter().collect();
        terms.sort_unstable();
        let mut out = Vec::with_capacity(terms.len());
        let mut i = 0;
        while i < terms.len() {
            let mut j = i;
            while j < terms.len() && terms[j] == terms[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(terms[i]);
            }
            i = j;
        }
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term, if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<Monomial> {
        match self.terms.as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// True iff no term has a negative exponent.
    pub fn is_filtered(&self) -> bool {
        self.terms.iter().all(Monomial::is_filtered)
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.terms.binary_search(&m).is_ok()
    }

    /// Formal partial derivative, with integer coefficients reduced mod 2.
    pub fn derivative(&self, var: Var) -> Self {
        let shift = match var {
            Var::U => Monomial::new(-1, 0),
            Var::V => Monomial::new(0, -1),
        };
        // Odd exponents survive; shifting by the same amount keeps the order.
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|m| m.exponent(var).rem_euclid(2) == 1)
                .map(|&m| m * shift)
                .collect(),
        }
    }

    /// The ring automorphism exchanging `U` and `V`.
    pub fn swap_uv(&self) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|m| m.swap()))
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|&t| t * m).collect() }
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        LaurentPoly { terms: self.terms.iter().copied().filter(|m| keep(m)).collect() }
    }
}

impl From<Monomial> for LaurentPoly {
    fn from(m: Monomial) -> Self {
        LaurentPoly { terms: vec![m] }
    }
}

impl From<Vec<Monomial>> for LaurentPoly {
    fn from(terms: Vec<Monomial>) -> Self {
        LaurentPoly::from_terms(terms)
    }
}

impl From<LaurentPoly> for Vec<Monomial> {
    fn from(p: LaurentPoly) -> Self {
        p.terms
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        match (self.as_monomial(), rhs.as_monomial()) {
            _ if self.is_zero() || rhs.is_zero() => LaurentPoly::zero(),
            (Some(m), _) => rhs.mul_monomial(m),
            (_, Some(m)) => self.mul_monomial(m),
            _ => LaurentPoly::from_terms(
                self.terms.iter().flat_map(|&a| rhs.terms.iter().map(move |&b| a * b)),
            ),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(i32, i32)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&t| t.into()))
    }

    #[test]
    fn addition_examples() {
        let u_plus_v = p(&[(1, 0), (0, 1)]);
        assert!((&u_plus_v + &u_plus_v).is_zero());
        assert_eq!(&u_plus_v + &LaurentPoly::zero(), u_plus_v);
        assert_eq!(&p(&[(2, 1)]) + &p(&[(1, 2)]), p(&[(2, 1), (1, 2)]));
    }

    #[test]
    fn multiplication_examples() {
        let u_plus_v = p(&[(1, 0), (0, 1)]);
        assert_eq!(&u_plus_v * &u_plus_v, p(&[(2, 0), (0, 2)]));
        assert_eq!(&p(&[(1, 0)]) * &p(&[(-1, 0)]), LaurentPoly::one());
        assert_eq!(&LaurentPoly::one() * &u_plus_v, u_plus_v);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[(1, 1)]).derivative(Var::U), p(&[(0, 1)]));
        assert!(p(&[(2, 0)]).derivative(Var::U).is_zero());
        assert_eq!(p(&[(3, 2)]).derivative(Var::U), p(&[(2, 2)]));
        // negative odd exponents survive too
        assert_eq!(p(&[(-1, 0)]).derivative(Var::U), p(&[(-2, 0)]));
    }

    #[test]
    fn swap_examples() {
        assert_eq!(p(&[(2, 1)]).swap_uv(), p(&[(1, 2)]));
        assert_eq!(p(&[(1, 1)]).swap_uv(), p(&[(1, 1)]));
    }

    #[test]
    fn serializes_as_sorted_pairs() {
        let q = p(&[(1, 0), (0, 1), (-1, 3)]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[[-1,3],[0,1],[1,0]]");
        let back: LaurentPoly = serde_json::from_str("[[1,0],[-1,3],[0,1],[1,0]]").unwrap();
        assert_eq!(back, p(&[(-1, 3), (0, 1)]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(1, 0), (0, 2), (0, 0)]).to_string(), "1 + V^2 + U");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i32..5, -4i32..5), 0..6)
            .prop_map(|v| LaurentPoly::from_terms(v.into_iter().map(Monomial::from)))
    }

    proptest! {
        #[test]
        fn leibniz(a in poly(), b in poly()) {
            for var in [Var::U, Var::V] {
                let lhs = (&a * &b).derivative(var);
                let rhs = &(&a * &b.derivative(var)) + &(&a.derivative(var) * &b);
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn second_derivative_vanishes(a in poly()) {
            prop_assert!(a.derivative(Var::U).derivative(Var::U).is_zero());
            prop_assert!(a.derivative(Var::V).derivative(Var::V).is_zero());
        }

        #[test]
        fn swap_is_ring_automorphism(a in poly(), b in poly()) {
            prop_assert_eq!((&a + &b).swap_uv(), &a.swap_uv() + &b.swap_uv());
            prop_assert_eq!((&a * &b).swap_uv(), &a.swap_uv() * &b.swap_uv());
            prop_assert_eq!(a.swap_uv().swap_uv(), a);
        }

        #[test]
        fn ring_laws(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &a).is_zero());
        }
    }
}
