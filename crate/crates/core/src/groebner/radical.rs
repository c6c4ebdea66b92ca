use super::univariate;
use super::{eliminate, is_zero_dimensional, Ideal};
use crate::error::{Error, Result};
use crate::poly::{exact_div, Monomial, MonomialOrder, Polynomial};
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Radical of a monomial or zero-dimensional ideal.
///
/// Monomial ideals take the squarefree supports of their basis. Zero-dimensional
/// ideals adjoin, for each variable, the squarefree part of the univariate
/// eliminant (Seidenberg). Anything else is rejected with
/// [`Error::RadicalUnsupported`]. The returned ideal is generated by its
/// reduced basis.
pub fn radical(ideal: &Ideal) -> Result<Ideal> {
    let n = ideal.nvars();
    if ideal.is_zero_ideal() {
        return Ok(ideal.clone());
    }
    let gb = ideal.groebner_basis()?;
    if gb.is_unit() {
        return ideal.reduced();
    }
    if ideal.is_monomial()? {
        let gens: Vec<Polynomial> = gb
            .leading_monomials()
            .into_iter()
            .map(|m| Polynomial::term(m.support(), Rational::one()))
            .collect();
        return Ideal::new(n, gens)?.with_order(ideal.order()).with_degree_cap(ideal.degree_cap()).reduced();
    }
    if is_zero_dimensional(ideal)? {
        let mut gens = gb.polynomials();
        for var in 0..n {
            let eliminant = univariate_eliminant(ideal, var)?;
            let dense = dense_in(&eliminant, var);
            let sqf = univariate::squarefree(&dense);
            gens.push(from_dense(&sqf, n, var));
        }
        return Ideal::new(n, gens)?.with_order(ideal.order()).with_degree_cap(ideal.degree_cap()).reduced();
    }
    Err(Error::RadicalUnsupported)
}

fn dense_in(p: &Polynomial, var: usize) -> Vec<Rational> {
    let deg = p.terms().iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0) as usize;
    let mut out = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        out[m.exponent(var) as usize] += c;
    }
    out
}

fn from_dense(coeffs: &[Rational], nvars: usize, var: usize) -> Polynomial {
    let terms = coeffs.iter().enumerate().map(|(k, c)| {
        let mut e = vec![0; nvars];
        e[var] = k as u32;
        (Monomial::new(e), c.clone())
    });
    Polynomial::from_terms(nvars, terms).expect("consistent variable count")
}

/// Monic generator of `ideal` intersected with `Q[z_var]`, for a
/// zero-dimensional ideal.
///
/// Finds the first linear dependency among the normal forms of
/// `1, z_var, z_var^2, ...`, which is the minimal polynomial of multiplication
/// by `z_var` on the quotient.
pub fn univariate_eliminant(ideal: &Ideal, var: usize) -> Result<Polynomial> {
    let n = ideal.nvars();
    if var >= n {
        return Err(Error::VariableIndex { index: var, nvars: n });
    }
    if !is_zero_dimensional(ideal)? {
        return Err(Error::InvalidArgument("univariate eliminant needs a zero-dimensional ideal".into()));
    }
    if ideal.is_unit()? {
        return Ok(Polynomial::one(n));
    }
    // Row-reduced normal forms, each tagged with its combination of powers.
    struct Row {
        pivot: Monomial,
        vector: HashMap<Monomial, Rational>,
        combo: Vec<Rational>,
    }
    let mut rows: Vec<Row> = Vec::new();
    let z = Polynomial::var(n, var);
    let mut power = Polynomial::one(n);
    for k in 0..=ideal.degree_cap() as usize {
        if k > 0 {
            power = &power * &z;
        }
        let nf = ideal.normal_form(&power)?;
        let mut vector: HashMap<Monomial, Rational> = nf.terms().iter().cloned().collect();
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for row in &rows {
            let Some(c) = vector.get(&row.pivot).cloned() else { continue };
            for (m, v) in &row.vector {
                let e = vector.entry(m.clone()).or_insert_with(Rational::zero);
                *e -= &c * v;
                if e.is_zero() {
                    vector.remove(m);
                }
            }
            for (i, v) in row.combo.iter().enumerate() {
                combo[i] -= &c * v;
            }
        }
        if vector.is_empty() {
            let p = from_dense(&combo, n, var);
            return Ok(p.monic());
        }
        // Normalize on a deterministic pivot: the largest monomial.
        let pivot = vector
            .keys()
            .max_by(|a, b| MonomialOrder::GrevLex.cmp(a, b))
            .cloned()
            .expect("nonempty vector");
        let inv = vector[&pivot].recip();
        for v in vector.values_mut() {
            *v *= &inv;
        }
        for v in combo.iter_mut() {
            *v *= &inv;
        }
        // Keep earlier rows free of the new pivot.
        for row in rows.iter_mut() {
            let Some(c) = row.vector.get(&pivot).cloned() else { continue };
            for (m, v) in &vector {
                let e = row.vector.entry(m.clone()).or_insert_with(Rational::zero);
                *e -= &c * v;
                if e.is_zero() {
                    row.vector.remove(m);
                }
            }
            if row.combo.len() < combo.len() {
                row.combo.resize(combo.len(), Rational::zero());
            }
            for (i, v) in combo.iter().enumerate() {
                row.combo[i] -= &c * v;
            }
        }
        rows.push(Row { pivot, vector, combo });
    }
    Err(Error::DegreeCap { degree: ideal.degree_cap() + 1, cap: ideal.degree_cap() })
}

/// Greatest common divisor of two polynomials, monic (zero if both are zero).
///
/// Computed as `f g / lcm(f, g)` where the lcm generates `(f) ∩ (g)`, obtained
/// by eliminating `t` from `(t f, (1 - t) g)`.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial, degree_cap: u32) -> Result<Polynomial> {
    if f.nvars() != g.nvars() {
        return Err(Error::VariableCount { expected: f.nvars(), found: g.nvars() });
    }
    if f.is_zero() {
        return Ok(g.monic());
    }
    if g.is_zero() {
        return Ok(f.monic());
    }
    if f.is_unit() || g.is_unit() {
        return Ok(Polynomial::one(f.nvars()));
    }
    let n = f.nvars();
    // t is variable 0 of the extended ring.
    let shift: Vec<usize> = (1..=n).collect();
    let t = Polynomial::var(n + 1, 0);
    let fe = f.remap(&shift, n + 1);
    let ge = g.remap(&shift, n + 1);
    let one = Polynomial::one(n + 1);
    let ideal = Ideal::new(n + 1, vec![&t * &fe, &(&one - &t) * &ge])?.with_degree_cap(degree_cap);
    let keep: Vec<usize> = (1..=n).collect();
    let inter = eliminate(&ideal, &keep)?;
    let lcm_ext = inter
        .groebner_basis()?
        .polynomials()
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty intersection of principal ideals".into()))?;
    let back: Vec<usize> = std::iter::once(0).chain(0..n).collect();
    let lcm = lcm_ext.remap(&back, n);
    let product = f * g;
    let gcd = exact_div(&product, &lcm)?
        .ok_or_else(|| Error::InvalidArgument("lcm does not divide the product".into()))?;
    Ok(gcd.monic())
}

/// `f / gcd(f, df/dz_1, ..., df/dz_n)`, monic.
pub fn squarefree_part(f: &Polynomial, degree_cap: u32) -> Result<Polynomial> {
    if f.is_zero() || f.is_unit() {
        return Ok(f.monic());
    }
    if f.is_monomial() {
        let (m, _) = &f.terms()[0];
        return Ok(Polynomial::term(m.support(), Rational::one()));
    }
    let mut g = f.clone();
    for i in 0..f.nvars() {
        let d = f.partial_derivative(i)?;
        if d.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &d, degree_cap)?;
        if g.is_unit() {
            break;
        }
    }
    let q = exact_div(f, &g)?.ok_or_else(|| Error::InvalidArgument("gcd does not divide".into()))?;
    Ok(q.monic())
}
