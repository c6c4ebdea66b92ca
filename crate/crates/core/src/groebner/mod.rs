//! Groebner bases and the ideal-theoretic decisions built on them.
//!
//! Every decision reduces to a normal form modulo the reduced Groebner basis:
//! plain membership, radical membership through one extra variable
//! (Rabinowitsch), powers, elimination and radicals of the two ideal classes
//! the Kohn engine needs.

mod buchberger;
mod radical;
mod univariate;

pub use radical::{poly_gcd, radical, squarefree_part, univariate_eliminant};

use crate::error::{Error, Result};
use crate::poly::{check_degree, Monomial, MonomialOrder, Polynomial, DEFAULT_DEGREE_CAP};
use buchberger::OrderedPoly;
use std::sync::OnceLock;

/// Reduced Groebner basis under a fixed order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    elements: Vec<OrderedPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Basis elements in canonical form, sorted by decreasing leading monomial.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements
            .iter()
            .map(|p| Polynomial::from_terms(self.nvars, p.terms.iter().cloned()).expect("basis variable count"))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|p| p.lm().clone()).collect()
    }

    /// True iff this is the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].lm().is_one()
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> Result<bool> {
        buchberger::buchberger_criterion(&self.elements, self.order, u32::MAX / 2)
    }

    fn reduce(&self, p: &Polynomial, cap: u32) -> Result<Polynomial> {
        let refs: Vec<&OrderedPoly> = self.elements.iter().collect();
        let (rem, _) = buchberger::reduce(p.terms_in_order(self.order), p.degree().unwrap_or(0), &refs, self.order, cap)?;
        Polynomial::from_terms(self.nvars, rem)
    }
}

/// A polynomial ideal given by generators, with a lazily computed reduced
/// Groebner basis.
///
/// Zero generators are dropped; an empty generator list is the zero ideal.
#[derive(Debug, Clone)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    degree_cap: u32,
    basis: OnceLock<Result<GroebnerBasis>>,
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::VariableCount { expected: nvars, found: g.nvars() });
            }
        }
        Ok(Ideal {
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            order: MonomialOrder::GrevLex,
            degree_cap: DEFAULT_DEGREE_CAP,
            basis: OnceLock::new(),
        })
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self.basis = OnceLock::new();
        self
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self.basis = OnceLock::new();
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner_basis(&self) -> Result<&GroebnerBasis> {
        self.basis
            .get_or_init(|| {
                let elements = buchberger::reduced_basis(&self.generators, self.order, self.degree_cap)?;
                let gb = GroebnerBasis { nvars: self.nvars, order: self.order, elements };
                debug_assert!(gb.satisfies_buchberger_criterion().unwrap_or(true));
                Ok(gb)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Same ideal, generated by its reduced basis.
    pub fn reduced(&self) -> Result<Ideal> {
        let gens = self.groebner_basis()?.polynomials();
        let ideal = Ideal {
            nvars: self.nvars,
            generators: gens,
            order: self.order,
            degree_cap: self.degree_cap,
            basis: OnceLock::new(),
        };
        let _ = ideal.basis.set(Ok(self.groebner_basis()?.clone()));
        Ok(ideal)
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if p.nvars() != self.nvars {
            return Err(Error::VariableCount { expected: self.nvars, found: p.nvars() });
        }
        check_degree(p, self.degree_cap)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        self.groebner_basis()?.reduce(p, self.degree_cap)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.is_unit())
    }

    /// True iff the reduced basis consists of monomials.
    pub fn is_monomial(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.elements.iter().all(|p| p.terms.len() == 1))
    }
}

impl PartialEq for Ideal {
    /// Ideal equality, decided by comparing reduced bases. Panics if either
    /// basis cannot be computed within its degree cap.
    fn eq(&self, other: &Self) -> bool {
        let a = self.reduced().expect("groebner basis").with_order(MonomialOrder::GrevLex);
        let b = other.reduced().expect("groebner basis").with_order(MonomialOrder::GrevLex);
        self.nvars == other.nvars
            && a.groebner_basis().expect("groebner basis").polynomials()
                == b.groebner_basis().expect("groebner basis").polynomials()
    }
}

/// Result of searching for the least power of `f` inside an ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerMembership {
    /// `f^m` is in the ideal and `f^(m-1)` is not.
    Member(u32),
    /// `f` is not in the radical, so no power is a member.
    NotInRadical,
    /// `f` is in the radical but no power up to the bound is a member.
    BoundExceeded,
}

pub fn groebner_basis(ideal: &Ideal) -> Result<&GroebnerBasis> {
    ideal.groebner_basis()
}

pub fn normal_form(p: &Polynomial, ideal: &Ideal) -> Result<Polynomial> {
    ideal.normal_form(p)
}

pub fn is_member(p: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.contains(p)
}

/// Decides `f` in the radical of `ideal` by testing `1` in
/// `ideal + (1 - y f)` with a fresh variable `y`.
pub fn is_radical_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.check(f)?;
    if f.is_zero() {
        return Ok(true);
    }
    if ideal.is_zero_ideal() {
        return Ok(false);
    }
    let n = ideal.nvars();
    let y = Polynomial::var(n + 1, n);
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.extend_vars(1)).collect();
    gens.push(&Polynomial::one(n + 1) - &(&y * &f.extend_vars(1)));
    let extended = Ideal::new(n + 1, gens)?.with_degree_cap(ideal.degree_cap().saturating_add(1 + f.degree().unwrap_or(0)));
    extended.is_unit()
}

/// Smallest `m <= m_max` with `f^m` in `ideal`.
pub fn min_power_in(f: &Polynomial, ideal: &Ideal, m_max: u32) -> Result<PowerMembership> {
    if m_max == 0 {
        return Err(Error::InvalidArgument("m_max must be at least 1".into()));
    }
    if !is_radical_member(f, ideal)? {
        return Ok(PowerMembership::NotInRadical);
    }
    let mut power = f.clone();
    for m in 1..=m_max {
        if m > 1 {
            power = &power * f;
        }
        if ideal.contains(&power)? {
            return Ok(PowerMembership::Member(m));
        }
    }
    Ok(PowerMembership::BoundExceeded)
}

/// Generators of `ideal` intersected with the subring in the `keep` variables,
/// expressed in the original ring.
pub fn eliminate(ideal: &Ideal, keep: &[usize]) -> Result<Ideal> {
    let n = ideal.nvars();
    if keep.is_empty() {
        return Err(Error::EmptyKeep);
    }
    if let Some(&bad) = keep.iter().find(|&&i| i >= n) {
        return Err(Error::VariableIndex { index: bad, nvars: n });
    }
    let dropped: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let kept: Vec<usize> = (0..n).filter(|i| keep.contains(i)).collect();
    // Eliminated variables come first in the permuted ring.
    let mut forward = vec![0; n];
    for (pos, &v) in dropped.iter().chain(kept.iter()).enumerate() {
        forward[v] = pos;
    }
    let mut backward = vec![0; n];
    for (v, &pos) in forward.iter().enumerate() {
        backward[pos] = v;
    }
    let permuted: Vec<Polynomial> = ideal.generators().iter().map(|g| g.remap(&forward, n)).collect();
    let elim = Ideal::new(n, permuted)?
        .with_order(MonomialOrder::Elimination(dropped.len()))
        .with_degree_cap(ideal.degree_cap());
    let split = dropped.len();
    let survivors: Vec<Polynomial> = elim
        .groebner_basis()?
        .polynomials()
        .into_iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exponents()[..split].iter().all(|&e| e == 0)))
        .map(|p| p.remap(&backward, n))
        .collect();
    Ok(Ideal::new(n, survivors)?.with_degree_cap(ideal.degree_cap()))
}

/// True iff the quotient ring is finite dimensional: every variable has a pure
/// power among the leading monomials. The unit ideal counts as
/// zero-dimensional; the zero ideal does not.
pub fn is_zero_dimensional(ideal: &Ideal) -> Result<bool> {
    let gb = ideal.groebner_basis()?;
    if gb.is_unit() {
        return Ok(true);
    }
    let mut seen = vec![false; ideal.nvars()];
    for m in gb.leading_monomials() {
        if let Some(i) = m.pure_power_var() {
            seen[i] = true;
        }
    }
    Ok(seen.iter().all(|&s| s))
}
