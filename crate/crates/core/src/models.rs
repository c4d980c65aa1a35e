//! Model complexes: the unknot, staircases with their reflection involution,
//! torus knots and mirrors.

use crate::complex::{BasisElement, FreeComplex, Morphism, Variance};
use crate::error::{Error, Result};
use crate::iota::{dual_iota, IotaComplex};
use crate::matrix::SparseMatrix;
use crate::ring::{LaurentPoly, Monomial};

/// Step lengths of a staircase: horizontal `U`-steps `a_1..a_k` and vertical
/// `V`-steps `b_1..b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub u_steps: Vec<u32>,
    pub v_steps: Vec<u32>,
}

impl Staircase {
    pub fn new(u_steps: Vec<u32>, v_steps: Vec<u32>) -> Result<Self> {
        if u_steps.len() != v_steps.len() {
            return Err(Error::Staircase(format!(
                "{} U-steps but {} V-steps",
                u_steps.len(),
                v_steps.len()
            )));
        }
        if u_steps.iter().chain(&v_steps).any(|&s| s == 0) {
            return Err(Error::Staircase("steps must be positive".into()));
        }
        let k = u_steps.len();
        if (0..k).any(|m| v_steps[m] != u_steps[k - 1 - m]) {
            return Err(Error::Staircase(format!("V-steps {v_steps:?} are not the reverse of U-steps {u_steps:?}")));
        }
        Ok(Staircase { u_steps, v_steps })
    }

    /// Sum of the `U`-steps; the Alexander grading of the top generator.
    pub fn genus(&self) -> i32 {
        self.u_steps.iter().map(|&a| a as i32).sum()
    }
}

/// The identity complex.
pub fn unknot_complex() -> IotaComplex {
    IotaComplex::unit()
}

/// Generators `x0..x_2k` with `∂x_(2m-1) = U^(a_m) x_(2m-2) + V^(b_m) x_(2m)`
/// and `ι(x_m) = x_(2k-m)`. The top generator `x0` sits at `gr_u = 0`.
pub fn staircase_complex(s: &Staircase) -> IotaComplex {
    let k = s.u_steps.len();
    let n = 2 * k + 1;
    let mut alex = vec![0i32; n];
    let mut gr_u = vec![0i32; n];
    alex[0] = s.genus();
    for m in 1..=k {
        let (a, b) = (s.u_steps[m - 1] as i32, s.v_steps[m - 1] as i32);
        alex[2 * m - 1] = alex[2 * m - 2] - a;
        gr_u[2 * m - 1] = gr_u[2 * m - 2] - 2 * a + 1;
        alex[2 * m] = alex[2 * m - 1] - b;
        gr_u[2 * m] = gr_u[2 * m - 1] - 1;
    }
    let basis = (0..n).map(|i| BasisElement::new(format!("x{i}"), gr_u[i], gr_u[i] - 2 * alex[i])).collect();
    let mut d = SparseMatrix::zeros(n, n);
    for m in 1..=k {
        let (a, b) = (s.u_steps[m - 1] as i32, s.v_steps[m - 1] as i32);
        d.set(2 * m - 2, 2 * m - 1, Monomial::new(a, 0).into());
        d.set(2 * m, 2 * m - 1, Monomial::new(0, b).into());
    }
    let mut iota = SparseMatrix::zeros(n, n);
    for i in 0..n {
        iota.set(n - 1 - i, i, LaurentPoly::one());
    }
    let complex = FreeComplex::new(basis, d, true).expect("square differential");
    IotaComplex::new(complex, Morphism::new(iota, Variance::Skew, (0, 0))).expect("staircases are iota-complexes")
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact division by `1 - t^p`.
fn divide_by_cyclotomic_factor(num: &[i64], p: usize) -> Vec<i64> {
    let len = num.len() - p;
    let mut q = vec![0i64; len];
    for i in 0..len {
        q[i] = num[i] + if i >= p { q[i - p] } else { 0 };
    }
    debug_assert!((len..num.len()).all(|i| num[i] == -(if i >= p { q[i - p] } else { 0 })));
    q
}

/// Coefficients of `(1 - t)(1 - t^pq) / ((1 - t^p)(1 - t^q))`.
pub fn torus_alexander(p: u32, q: u32) -> Vec<i64> {
    let (p, q) = (p as usize, q as usize);
    let mut num = vec![0i64; p * q + 2];
    num[0] = 1;
    num[1] -= 1;
    num[p * q] -= 1;
    num[p * q + 1] += 1;
    let half = divide_by_cyclotomic_factor(&num, p);
    let mut delta = divide_by_cyclotomic_factor(&half, q);
    while delta.last() == Some(&0) {
        delta.pop();
    }
    delta
}

/// Staircase steps read off the gaps between the exponents of the Alexander
/// polynomial.
pub fn torus_staircase(p: u32, q: u32) -> Result<Staircase> {
    if p == 0 || q == 0 || gcd(p as i64, q as i64) != 1 {
        return Err(Error::NotCoprime(p as i64, q as i64));
    }
    let delta = torus_alexander(p, q);
    let exps: Vec<(usize, i64)> = delta.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
    for (i, &(_, c)) in exps.iter().enumerate() {
        let expected = if i % 2 == 0 { 1 } else { -1 };
        if c != expected {
            return Err(Error::Staircase(format!("Alexander polynomial coefficients {delta:?} do not alternate")));
        }
    }
    let n: Vec<u32> = exps.iter().map(|&(e, _)| e as u32).collect();
    let k = n.len() / 2;
    let u_steps = (1..=k).map(|m| n[2 * m - 1] - n[2 * m - 2]).collect();
    let v_steps = (1..=k).map(|m| n[2 * m] - n[2 * m - 1]).collect();
    Staircase::new(u_steps, v_steps)
}

/// The staircase model of the `(p, q)` torus knot.
pub fn torus_knot(p: u32, q: u32) -> Result<IotaComplex> {
    Ok(staircase_complex(&torus_staircase(p, q)?))
}

/// The mirror image, realized as the dual.
pub fn mirror(ic: &IotaComplex) -> IotaComplex {
    dual_iota(ic)
}
