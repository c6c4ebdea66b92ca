//! Independent audit of a certificate against the domain it claims to cover.

use super::certificate::{history_digest, Certificate, Outcome, CERTIFICATE_VERSION};
use super::engine::{Engine, Filtration};
use super::{mixture_order, normalize, Derivation, KohnState, OrderedGenerator, SpecialDomain};
use crate::groebner::Ideal;
use crate::rational::{self, Rational};
use num_traits::Zero;
use thiserror::Error;

/// First point at which a certificate disagrees with a recomputation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: {reason}")]
pub struct ReplayError {
    pub location: String,
    pub reason: String,
}

fn fail<T>(location: impl Into<String>, reason: impl Into<String>) -> Result<T, ReplayError> {
    Err(ReplayError { location: location.into(), reason: reason.into() })
}

fn algebra<T>(location: &str, r: crate::Result<T>) -> Result<T, ReplayError> {
    r.map_err(|e| ReplayError { location: location.to_string(), reason: format!("recomputation failed: {e}") })
}

/// True iff every node of `cert` re-derives exactly from `domain`.
pub fn replay(cert: &Certificate, domain: &SpecialDomain) -> bool {
    verify(cert, domain).is_ok()
}

/// Re-evaluates every derivation node from the domain alone and reports the
/// first divergence.
pub fn verify(cert: &Certificate, domain: &SpecialDomain) -> Result<(), ReplayError> {
    if cert.version != CERTIFICATE_VERSION {
        return fail("certificate", format!("unsupported version {}", cert.version));
    }
    if cert.domain_digest != domain.digest() {
        return fail("certificate", "domain digest mismatch");
    }
    if cert.history_digest != history_digest(&cert.history) {
        return fail("certificate", "history digest mismatch");
    }
    if cert.history.is_empty() {
        return fail("certificate", "empty history");
    }
    for (i, state) in cert.history.iter().enumerate() {
        let level = i as u32 + 1;
        if state.level != level {
            return fail(format!("level {level}"), format!("recorded level {}", state.level));
        }
        let prev = if i == 0 { None } else { Some(&cert.history[i - 1]) };
        for (idx, g) in state.j.iter().enumerate() {
            check_j(domain, cert, prev, g, &format!("level {level}, J[{idx}]"))?;
        }
        check_j_tilde(domain, cert, state, level)?;
    }
    check_outcome(cert)
}

fn check_order_range(loc: &str, order: &Rational) -> Result<(), ReplayError> {
    if *order <= Rational::zero() || *order > super::base_order() {
        return fail(loc, format!("order {} outside (0, 1/8]", rational::to_string(order)));
    }
    Ok(())
}

fn check_j(
    domain: &SpecialDomain,
    cert: &Certificate,
    prev: Option<&KohnState>,
    g: &OrderedGenerator,
    loc: &str,
) -> Result<(), ReplayError> {
    check_order_range(loc, &g.order)?;
    let n = domain.nvars();
    let prev_tilde: &[OrderedGenerator] = prev.map(|p| p.j_tilde.as_slice()).unwrap_or(&[]);
    match &g.derivation {
        Derivation::Inherited { child } => {
            let Some(c) = prev_tilde.get(*child) else {
                return fail(loc, format!("inherited child {child} does not exist"));
            };
            if c.poly != g.poly || c.order != g.order {
                return fail(loc, "inherited generator differs from its source");
            }
        }
        Derivation::JacobianMix { k, h_combos, radical_children } => {
            if *k > n || h_combos.len() != *k || radical_children.len() != n - k {
                return fail(loc, "slot counts do not match k");
            }
            if h_combos.iter().any(|c| c.0.len() != domain.h().len()) {
                return fail(loc, "combination length differs from the number of h_j");
            }
            let mut children = Vec::with_capacity(radical_children.len());
            for &c in radical_children {
                match prev_tilde.get(c) {
                    Some(x) => children.push(x),
                    None => return fail(loc, format!("radical child {c} does not exist")),
                }
            }
            let polys: Vec<_> = children.iter().map(|c| &c.poly).collect();
            let det = algebra(loc, Engine::jacobian(domain, h_combos, &polys, cert.config.degree_cap))?;
            if normalize(&det) != g.poly || det.is_zero() {
                return fail(loc, "Jacobian determinant does not reproduce the polynomial");
            }
            let orders: Vec<Rational> = children.iter().map(|c| c.order.clone()).collect();
            let expected = mixture_order(*k, n, &orders);
            if expected != g.order {
                return fail(
                    loc,
                    format!("order {} but the rule gives {}", rational::to_string(&g.order), rational::to_string(&expected)),
                );
            }
        }
        Derivation::RadicalRoot { .. } => return fail(loc, "radical derivation inside J"),
    }
    Ok(())
}

fn check_j_tilde(domain: &SpecialDomain, cert: &Certificate, state: &KohnState, level: u32) -> Result<(), ReplayError> {
    let n = domain.nvars();
    let cap = cert.config.degree_cap;
    let loc0 = format!("level {level}");
    let ideal = algebra(&loc0, Ideal::new(n, state.j_polys()).map(|i| i.with_degree_cap(cap)))?;
    let filtration = Filtration::new(&state.j, n, cap);
    for (idx, g) in state.j_tilde.iter().enumerate() {
        let loc = format!("level {level}, J~[{idx}]");
        check_order_range(&loc, &g.order)?;
        let Derivation::RadicalRoot { m, source_order, support } = &g.derivation else {
            return fail(&loc, "J~ element without a radical derivation");
        };
        if *m == 0 || *m > cert.config.m_max {
            return fail(&loc, format!("power {m} outside 1..=m_max"));
        }
        let power = g.poly.pow(*m);
        if !algebra(&loc, ideal.contains(&power))? {
            return fail(&loc, format!("f^{m} is not in J"));
        }
        if *m > 1 && algebra(&loc, ideal.contains(&g.poly.pow(m - 1)))? {
            return fail(&loc, format!("f^{} already lies in J, so m = {m} is not minimal", m - 1));
        }
        if support.is_empty() || support.iter().any(|&s| s >= state.j.len()) {
            return fail(&loc, "invalid support indices");
        }
        if support.iter().any(|&s| state.j[s].order < *source_order)
            || !support.iter().any(|&s| state.j[s].order == *source_order)
        {
            return fail(&loc, "support orders do not attain the source order");
        }
        let sub = algebra(&loc, Ideal::new(n, support.iter().map(|&s| state.j[s].poly.clone()).collect()))?
            .with_degree_cap(cap);
        if !algebra(&loc, sub.contains(&power))? {
            return fail(&loc, format!("f^{m} is not generated by its support"));
        }
        match algebra(&loc, filtration.best(&power))? {
            Some((best, _)) if best == *source_order => {}
            _ => return fail(&loc, "source order is not the best order of f^m in J"),
        }
        let expected = source_order / Rational::from_integer((*m).into());
        if expected != g.order {
            return fail(
                &loc,
                format!("order {} but gamma(f^m)/m = {}", rational::to_string(&g.order), rational::to_string(&expected)),
            );
        }
    }
    Ok(())
}

fn check_outcome(cert: &Certificate) -> Result<(), ReplayError> {
    let last = cert.history.len() as u32;
    for state in &cert.history[..cert.history.len() - 1] {
        if !state.unit_witnesses().is_empty() {
            return fail("outcome", format!("level {} already had a unit witness", state.level));
        }
    }
    let final_state = cert.history.last().unwrap();
    match &cert.outcome {
        Outcome::Subelliptic { epsilon, level, witness_index, witness } => {
            if *level != last {
                return fail("outcome", "witness level is not the last recorded level");
            }
            let Some(w) = final_state.j_tilde.get(*witness_index) else {
                return fail("outcome", "witness index out of range");
            };
            if w != witness {
                return fail("outcome", "witness differs from the recorded J~ generator");
            }
            if w.poly.eval_at_origin().is_zero() {
                return fail("outcome", "witness vanishes at the origin");
            }
            let best = final_state.unit_witnesses().into_iter().map(|i| &final_state.j_tilde[i].order).max();
            if epsilon != &w.order || Some(epsilon) != best {
                return fail("outcome", "epsilon is not the best witness order");
            }
        }
        Outcome::Exhausted { levels_run } => {
            if !final_state.unit_witnesses().is_empty() {
                return fail("outcome", "exhausted run whose last level has a unit witness");
            }
            if *levels_run != last || last != cert.config.max_level {
                return fail("outcome", "exhausted run did not reach max_level");
            }
        }
    }
    Ok(())
}
