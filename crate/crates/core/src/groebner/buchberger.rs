//! Buchberger's algorithm with sugar-degree pair selection and the
//! Gebauer-Moeller installation of both Buchberger criteria.

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::cmp::Ordering;

pub(crate) type Terms = Vec<(Monomial, Rational)>;

/// A polynomial with terms sorted by decreasing `order` and its sugar degree.
#[derive(Clone, Debug)]
pub(crate) struct OrderedPoly {
    pub terms: Terms,
    pub sugar: u32,
}

impl OrderedPoly {
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        let lc = self.terms[0].1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in &mut self.terms {
                *c *= &inv;
            }
        }
    }
}

fn degree_of(terms: &Terms) -> u32 {
    terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

/// `a - c * m * b`, where both inputs are sorted by decreasing `order`.
fn sub_scaled(a: &[(Monomial, Rational)], b: &[(Monomial, Rational)], m: &Monomial, c: &Rational, order: MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bj = b.iter().map(|(t, k)| (t.mul(m), k * c)).peekable();
    while i < a.len() {
        let Some((bm, _)) = bj.peek() else { break };
        match order.cmp(&a[i].0, bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (bm, bc) = bj.next().unwrap();
                out.push((bm, -bc));
            }
            Ordering::Equal => {
                let (bm, bc) = bj.next().unwrap();
                let v = &a[i].1 - bc;
                if !v.is_zero() {
                    out.push((bm, v));
                }
                i += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(bj.map(|(t, k)| (t, -k)));
    out
}

/// Full reduction of `p` by monic `basis` elements. Returns the remainder and
/// its sugar.
pub(crate) fn reduce(p: Terms, sugar: u32, basis: &[&OrderedPoly], order: MonomialOrder, cap: u32) -> Result<(Terms, u32)> {
    let mut p = p;
    let mut sugar = sugar;
    let mut rem = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (m, c) = &p[start];
        match basis.iter().find(|g| g.lm().divides(m)) {
            Some(g) => {
                let q = g.lm().quotient_of(m);
                sugar = sugar.max(g.sugar + q.degree());
                let c = c.clone();
                p = sub_scaled(&p[start + 1..], &g.terms[1..], &q, &c, order);
                start = 0;
                if let Some(d) = p.first().map(|(m, _)| m.degree()) {
                    if d > cap {
                        return Err(Error::DegreeCap { degree: d, cap });
                    }
                }
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Ok((rem, sugar))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn spoly(f: &OrderedPoly, g: &OrderedPoly, lcm: &Monomial, order: MonomialOrder) -> (Terms, u32) {
    let qf = f.lm().quotient_of(lcm);
    let qg = g.lm().quotient_of(lcm);
    let sugar = (f.sugar + qf.degree()).max(g.sugar + qg.degree());
    let a: Terms = f.terms[1..].iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
    (sub_scaled(&a, &g.terms[1..], &qg, &Rational::one(), order), sugar)
}

struct State {
    polys: Vec<OrderedPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    order: MonomialOrder,
}

impl State {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let (f, g) = (&self.polys[i], &self.polys[j]);
        let lcm = f.lm().lcm(g.lm());
        let sugar = (f.sugar + lcm.degree() - f.lm().degree()).max(g.sugar + lcm.degree() - g.lm().degree());
        Pair { i, j, lcm, sugar }
    }

    /// Gebauer-Moeller update for the new element with index `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.polys[h].lm().clone();
        let mut candidates: Vec<Pair> =
            (0..h).filter(|&g| self.active[g]).map(|g| self.pair(g, h)).collect();

        // Chain criterion among the new pairs; coprime pairs survive this step
        // so they can shadow others before being dropped by the product criterion.
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = self.polys[p.i].lm().is_coprime(&lm_h);
            let shadowed = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !shadowed {
                kept.push(p);
            }
        }
        let fresh: Vec<Pair> = kept.into_iter().filter(|p| !self.polys[p.i].lm().is_coprime(&lm_h)).collect();

        // Chain criterion against old pairs.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !lm_h.divides(&p.lcm)
                || polys[p.i].lm().lcm(&lm_h) == p.lcm
                || polys[p.j].lm().lcm(&lm_h) == p.lcm
        });
        self.pairs.extend(fresh);

        for g in 0..h {
            if self.active[g] && lm_h.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn push(&mut self, p: OrderedPoly) {
        self.polys.push(p);
        self.active.push(false);
        self.update(self.polys.len() - 1);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar
                .cmp(&q.sugar)
                .then_with(|| order.cmp(&p.lcm, &q.lcm))
                .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Computes the reduced Groebner basis of `generators` under `order`.
///
/// The result is sorted by decreasing leading monomial and every element is
/// monic, so it is the unique reduced basis of the ideal.
pub(crate) fn reduced_basis(generators: &[Polynomial], order: MonomialOrder, cap: u32) -> Result<Vec<OrderedPoly>> {
    let mut inputs: Vec<OrderedPoly> = generators
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut o = OrderedPoly { terms: p.terms_in_order(order), sugar: p.degree().unwrap_or(0) };
            o.make_monic();
            o
        })
        .collect();
    for p in &inputs {
        let d = degree_of(&p.terms);
        if d > cap {
            return Err(Error::DegreeCap { degree: d, cap });
        }
    }
    // Deterministic regardless of the caller's generator order.
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()).then_with(|| a.terms.len().cmp(&b.terms.len())));
    if inputs.iter().any(|p| p.lm().is_one()) {
        let n = inputs[0].lm().nvars();
        return Ok(vec![OrderedPoly { terms: vec![(Monomial::one(n), Rational::one())], sugar: 0 }]);
    }

    let mut st = State { polys: Vec::new(), active: Vec::new(), pairs: Vec::new(), order };
    for p in inputs {
        st.push(p);
    }
    while let Some(pair) = st.next_pair() {
        let (s, sugar) = spoly(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm, order);
        if s.is_empty() {
            continue;
        }
        if pair.lcm.degree() > cap {
            return Err(Error::DegreeCap { degree: pair.lcm.degree(), cap });
        }
        let basis: Vec<&OrderedPoly> = st.polys.iter().zip(&st.active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let (r, sugar) = reduce(s, sugar, &basis, order, cap)?;
        if r.is_empty() {
            continue;
        }
        let mut h = OrderedPoly { terms: r, sugar };
        h.make_monic();
        if h.lm().is_one() {
            let n = h.lm().nvars();
            return Ok(vec![OrderedPoly { terms: vec![(Monomial::one(n), Rational::one())], sugar: 0 }]);
        }
        st.push(h);
    }

    let active: Vec<OrderedPoly> =
        st.polys.into_iter().zip(st.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    interreduce(active, order, cap)
}

/// Minimalizes and tail-reduces a Groebner basis.
fn interreduce(basis: Vec<OrderedPoly>, order: MonomialOrder, cap: u32) -> Result<Vec<OrderedPoly>> {
    let mut minimal: Vec<OrderedPoly> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, q)| {
            l != k && q.lm().divides(p.lm()) && (q.lm() != p.lm() || l < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&OrderedPoly> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p).collect();
        let head = minimal[k].terms[0].clone();
        let (tail, sugar) = reduce(minimal[k].terms[1..].to_vec(), minimal[k].sugar, &others, order, cap)?;
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(head);
        terms.extend(tail);
        let mut p = OrderedPoly { terms, sugar };
        p.make_monic();
        reduced.push(p);
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    Ok(reduced)
}

/// True when every S-polynomial of `basis` reduces to zero.
pub(crate) fn buchberger_criterion(basis: &[OrderedPoly], order: MonomialOrder, cap: u32) -> Result<bool> {
    let refs: Vec<&OrderedPoly> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = basis[i].lm().lcm(basis[j].lm());
            let (s, sugar) = spoly(&basis[i], &basis[j], &lcm, order);
            let (r, _) = reduce(s, sugar, &refs, order, cap.saturating_mul(2))?;
            if !r.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
