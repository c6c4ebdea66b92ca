//! Benchmark inputs shared by the criterion benches.

use subelliptic_core::kohn::SpecialDomain;
use subelliptic_core::rational::int;
use subelliptic_core::{Monomial, Polynomial};

pub fn monomial(e: &[u32]) -> Polynomial {
    Polynomial::term(Monomial::new(e.to_vec()), int(1))
}

/// `h = (z1^a, z2^b)`.
pub fn axis_domain(a: u32, b: u32) -> SpecialDomain {
    SpecialDomain::new(2, vec![monomial(&[a, 0]), monomial(&[0, b])]).unwrap()
}

/// Cyclic-3 style system, a standard small Groebner workload.
pub fn cyclic3() -> Vec<Polynomial> {
    let x: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(3, i)).collect();
    let e1 = &(&x[0] + &x[1]) + &x[2];
    let e2 = &(&(&x[0] * &x[1]) + &(&x[1] * &x[2])) + &(&x[2] * &x[0]);
    let e3 = &(&(&x[0] * &x[1]) * &x[2]) - &Polynomial::one(3);
    vec![e1, e2, e3]
}

/// `3 z1 z2 - z1^3, z2^2`: exercises the certified-members fallback.
pub fn mixed_domain() -> SpecialDomain {
    let h1 = &monomial(&[1, 1]).scale(&int(3)) - &monomial(&[3, 0]);
    SpecialDomain::new(2, vec![h1, monomial(&[0, 2])]).unwrap()
}
