//! Dense univariate polynomials over the rationals, used for squarefree parts
//! of eliminants. Coefficient `k` multiplies `t^k`.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

pub(crate) type Dense = Vec<Rational>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn derivative(p: &[Rational]) -> Dense {
    trim(p.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(BigInt::from(k))).collect())
}

/// Quotient and remainder of `a / b` with `b` nonzero.
pub(crate) fn div_rem(a: &[Rational], b: &[Rational]) -> (Dense, Dense) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

pub(crate) fn gcd(a: &[Rational], b: &[Rational]) -> Dense {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

pub(crate) fn monic(p: Dense) -> Dense {
    match p.last().cloned() {
        Some(lc) => p.into_iter().map(|c| c / &lc).collect(),
        None => p,
    }
}

/// `p / gcd(p, p')`, monic.
pub(crate) fn squarefree(p: &[Rational]) -> Dense {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return monic(p);
    }
    let g = gcd(&p, &derivative(&p));
    let (q, r) = div_rem(&p, &g);
    debug_assert!(r.is_empty());
    monic(q)
}
