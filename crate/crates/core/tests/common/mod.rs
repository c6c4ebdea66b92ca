#![allow(dead_code)]

use proptest::prelude::*;
use subelliptic_core::kohn::SpecialDomain;
use subelliptic_core::rational::{int, rat};
use subelliptic_core::{Monomial, Polynomial, Rational};

pub fn mono(e: &[u32]) -> Polynomial {
    Polynomial::term(Monomial::new(e.to_vec()), int(1))
}

pub fn domain(h: Vec<Polynomial>) -> SpecialDomain {
    SpecialDomain::new(h[0].nvars(), h).unwrap()
}

pub fn coefficient() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| rat(n, d)))
}

pub fn exponents(nvars: usize, max_deg: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_deg, nvars).prop_filter("total degree", move |e| e.iter().sum::<u32>() <= max_deg)
}

/// Random polynomial in `nvars` variables of total degree at most `max_deg`.
pub fn polynomial(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((exponents(nvars, max_deg), coefficient()), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(nvars, terms.into_iter().map(|(e, c)| (Monomial::new(e), c))).unwrap()
    })
}

/// Random homogeneous polynomial of the given degree, never zero.
pub fn homogeneous(nvars: usize, degree: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let monos = subelliptic_core::poly::monomials_of_degree(nvars, degree);
    prop::collection::vec((prop::sample::select(monos), coefficient()), 1..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(nvars, terms).unwrap())
        .prop_filter("nonzero", |p| !p.is_zero())
}

pub fn monomial(nvars: usize, max_deg: u32) -> impl Strategy<Value = Monomial> {
    exponents(nvars, max_deg).prop_map(Monomial::new)
}

/// Nonzero monomial vanishing at the origin.
pub fn proper_monomial(nvars: usize, max_deg: u32) -> impl Strategy<Value = Monomial> {
    monomial(nvars, max_deg).prop_filter("not constant", |m| m.degree() > 0)
}
