//! Independent reference procedures used only by tests.
//!
//! None of these share code paths with the Groebner kernel: membership is
//! decided by dense linear algebra, monomial questions by enumerating lattice
//! points.

use crate::poly::{monomials_of_degree, Monomial, MonomialOrder, Polynomial};
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::HashMap;

type Sparse = HashMap<Monomial, Rational>;

fn eliminate_against(rows: &[(Monomial, Sparse)], v: &mut Sparse) {
    for (pivot, row) in rows {
        let Some(c) = v.get(pivot).cloned() else { continue };
        for (m, x) in row {
            let e = v.entry(m.clone()).or_insert_with(Rational::zero);
            *e -= &c * x;
            if e.is_zero() {
                v.remove(m);
            }
        }
    }
}

/// Decides `p` in the span of `{ m * g : g in gens, deg(m * g) <= degree }`.
///
/// For homogeneous generators this is exact membership for every `p` of
/// degree at most `degree`; in general it is a sound under-approximation.
pub fn macaulay_member(p: &Polynomial, gens: &[Polynomial], degree: u32) -> bool {
    let n = p.nvars();
    let mut rows: Vec<(Monomial, Sparse)> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.degree().unwrap_or(0);
        if dg > degree {
            continue;
        }
        for d in 0..=degree - dg {
            for m in monomials_of_degree(n, d) {
                let mut v: Sparse = g.terms().iter().map(|(t, c)| (t.mul(&m), c.clone())).collect();
                eliminate_against(&rows, &mut v);
                if v.is_empty() {
                    continue;
                }
                let pivot = v.keys().max_by(|a, b| MonomialOrder::Lex.cmp(a, b)).cloned().unwrap();
                let inv = v[&pivot].recip();
                for x in v.values_mut() {
                    *x *= &inv;
                }
                // Back-substitute so that every pivot column is clean.
                for (_, row) in rows.iter_mut() {
                    let Some(c) = row.get(&pivot).cloned() else { continue };
                    for (m, x) in &v {
                        let e = row.entry(m.clone()).or_insert_with(Rational::zero);
                        *e -= &c * x;
                        if e.is_zero() {
                            row.remove(m);
                        }
                    }
                }
                rows.push((pivot, v));
            }
        }
    }
    let mut target: Sparse = p.terms().iter().cloned().collect();
    eliminate_against(&rows, &mut target);
    target.is_empty()
}

/// Monomial `f` lies in the radical of the monomial ideal generated by `gens`
/// iff the support of some generator is contained in the support of `f`.
pub fn squarefree_rule(f: &Monomial, gens: &[Monomial]) -> bool {
    gens.iter().any(|g| g.support().divides(&f.support()))
}

/// Smallest `p <= cap` with every monomial of degree `p` divisible by one of
/// `gens`, by enumerating the lattice points of each degree.
pub fn staircase_order(nvars: usize, gens: &[Monomial], cap: u32) -> Option<u32> {
    (1..=cap).find(|&p| monomials_of_degree(nvars, p).iter().all(|m| gens.iter().any(|g| g.divides(m))))
}

/// Order of vanishing at `t = 0` of `h(0, .., t, .., 0)`, `None` if identically zero.
fn axis_order(h: &Polynomial, axis: usize) -> Option<u32> {
    let mut by_power: HashMap<u32, Rational> = HashMap::new();
    for (m, c) in h.terms() {
        if (0..h.nvars()).any(|i| i != axis && m.exponent(i) > 0) {
            continue;
        }
        *by_power.entry(m.exponent(axis)).or_insert_with(Rational::zero) += c;
    }
    by_power.into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k).min()
}

/// Largest `2 * min_j ord(h_j o phi)` over the coordinate-axis lines
/// `phi(t) = t e_i`; `None` when some axis lies inside the zero set.
pub fn axis_curve_type(h: &[Polynomial]) -> Option<u32> {
    let n = h[0].nvars();
    let mut best = 0;
    for axis in 0..n {
        let ord = h.iter().filter_map(|p| axis_order(p, axis)).min()?;
        best = best.max(2 * ord);
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn macaulay_detects_simple_members() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let gens = vec![&(&x * &x) + &(&y * &y), &x * &y];
        assert!(macaulay_member(&(&x * &(&x * &x)), &gens, 4));
        assert!(!macaulay_member(&(&x * &x), &gens, 4));
        assert!(!macaulay_member(&Polynomial::constant(2, int(1)), &gens, 4));
    }

    #[test]
    fn staircase() {
        let g = [Monomial::new(vec![2, 0]), Monomial::new(vec![0, 3])];
        assert_eq!(staircase_order(2, &g, 10), Some(4));
        assert_eq!(staircase_order(2, &[Monomial::new(vec![1, 1])], 12), None);
    }
}
