//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Monomials are dense exponent vectors; polynomials keep their terms sorted
//! by graded reverse lexicographic order so that equality is structural.

mod monomial;
mod order;
mod polynomial;

pub use monomial::{monomials_of_degree, Monomial};
pub use order::MonomialOrder;
pub use polynomial::Polynomial;

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::Zero;

/// Default cap on total degree for expansions performed by the engines.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// Fails with [`Error::DegreeCap`] when `p` has total degree above `cap`.
pub fn check_degree(p: &Polynomial, cap: u32) -> Result<()> {
    match p.degree() {
        Some(d) if d > cap => Err(Error::DegreeCap { degree: d, cap }),
        _ => Ok(()),
    }
}

/// Determinant of the Jacobian matrix `(dg_i/dz_j)` of `n` polynomials in
/// `n` variables.
///
/// Expands along rows with memoized minors indexed by column subsets, so the
/// cost is `O(2^n n)` polynomial products instead of `n!`.
pub fn jacobian_det(g: &[Polynomial]) -> Result<Polynomial> {
    let n = g.first().map(Polynomial::nvars).unwrap_or(0);
    if g.len() != n || n == 0 {
        return Err(Error::Arity { expected: n.max(1), found: g.len() });
    }
    for p in g {
        if p.nvars() != n {
            return Err(Error::VariableCount { expected: n, found: p.nvars() });
        }
    }
    let matrix: Vec<Vec<Polynomial>> = g
        .iter()
        .map(|p| (0..n).map(|j| p.partial_derivative(j)).collect::<Result<_>>())
        .collect::<Result<_>>()?;

    // minors[mask] = det of rows 0..popcount(mask) restricted to columns in mask
    let mut minors: Vec<Option<Polynomial>> = vec![None; 1 << n];
    minors[0] = Some(Polynomial::one(n));
    for row in 0..n {
        let mut next: Vec<Option<Polynomial>> = vec![None; 1 << n];
        for (mask, minor) in minors.iter().enumerate() {
            let Some(minor) = minor else { continue };
            if minor.is_zero() {
                continue;
            }
            debug_assert_eq!(mask.count_ones() as usize, row);
            for col in 0..n {
                if mask & (1 << col) != 0 || matrix[row][col].is_zero() {
                    continue;
                }
                // Sign from the number of already-used columns to the right.
                let after = (mask >> (col + 1)).count_ones();
                let mut term = &matrix[row][col] * minor;
                if after % 2 == 1 {
                    term = -&term;
                }
                let slot = &mut next[mask | (1 << col)];
                *slot = Some(match slot.take() {
                    Some(acc) => &acc + &term,
                    None => term,
                });
            }
        }
        minors = next;
    }
    Ok(minors[(1 << n) - 1].take().unwrap_or_else(|| Polynomial::zero(n)))
}

/// Exact quotient `p / d`, or `None` when `d` does not divide `p`.
pub fn exact_div(p: &Polynomial, d: &Polynomial) -> Result<Option<Polynomial>> {
    if p.nvars() != d.nvars() {
        return Err(Error::VariableCount { expected: p.nvars(), found: d.nvars() });
    }
    let Some((dm, dc)) = d.leading_term() else {
        return Ok(None);
    };
    let mut rem = p.clone();
    let mut quotient = Polynomial::zero(p.nvars());
    while let Some((m, c)) = rem.leading_term() {
        if !dm.divides(m) {
            return Ok(None);
        }
        let qm = dm.quotient_of(m);
        let qc = c / dc;
        rem = &rem - &d.mul_term(&qm, &qc);
        quotient = &quotient + &Polynomial::term(qm, qc);
    }
    Ok(Some(quotient))
}

/// Linear combination `sum c_i p_i`.
pub fn linear_combination(coeffs: &[Rational], polys: &[Polynomial]) -> Polynomial {
    let n = polys.first().map(Polynomial::nvars).unwrap_or(0);
    coeffs
        .iter()
        .zip(polys)
        .filter(|(c, _)| !c.is_zero())
        .fold(Polynomial::zero(n), |acc, (c, p)| &acc + &p.scale(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn z(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (z(2, 0), z(2, 1));
        let lhs = &(&a + &b) * &(&a - &b);
        let rhs = &(&a * &a) - &(&b * &b);
        assert_eq!(lhs, rhs);
        assert!((&lhs * &Polynomial::zero(2)).is_zero());
        let sq = &(&a * &a) * &(&b * &b);
        assert_eq!(sq, Polynomial::term(Monomial::new(vec![2, 2]), int(1)));
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        assert!(matches!(z(2, 0).checked_add(&z(3, 0)), Err(Error::VariableCount { .. })));
        assert!(z(2, 0).checked_mul(&z(1, 0)).is_err());
    }

    #[test]
    fn derivatives() {
        let p = Polynomial::term(Monomial::new(vec![2, 1]), int(1));
        assert_eq!(p.partial_derivative(0).unwrap(), Polynomial::term(Monomial::new(vec![1, 1]), int(2)));
        let q = Polynomial::term(Monomial::new(vec![0, 3]), int(1));
        assert!(q.partial_derivative(0).unwrap().is_zero());
        let r = &z(2, 0) * &z(2, 1);
        assert_eq!(r.partial_derivative(1).unwrap(), z(2, 0));
        assert!(matches!(r.partial_derivative(2), Err(Error::VariableIndex { .. })));
    }

    #[test]
    fn jacobian_examples() {
        let (a, b) = (z(2, 0), z(2, 1));
        assert!(jacobian_det(&[a.clone(), b.clone()]).unwrap().is_one());
        // det [[2 z1, 0], [0, 2 z2]] = 4 z1 z2
        let j = jacobian_det(&[&a * &a, &b * &b]).unwrap();
        assert_eq!(j, Polynomial::term(Monomial::new(vec![1, 1]), int(4)));
        // det [[2 z1, 0], [z2, z1]] = 2 z1^2
        let j = jacobian_det(&[&a * &a, &a * &b]).unwrap();
        assert_eq!(j, Polynomial::term(Monomial::new(vec![2, 0]), int(2)));
        assert!(matches!(jacobian_det(std::slice::from_ref(&a)), Err(Error::Arity { .. })));
    }

    #[test]
    fn jacobian_three_by_three_matches_cofactor_expansion() {
        let (x, y, w) = (z(3, 0), z(3, 1), z(3, 2));
        let g = [&(&x * &y) + &w, &(&y * &y) - &x, &(&x * &w) + &(&y * &w)];
        let m: Vec<Vec<Polynomial>> =
            g.iter().map(|p| (0..3).map(|j| p.partial_derivative(j).unwrap()).collect()).collect();
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1]);
        let expected = &(&(&m[0][0] * &minor(1, 2, 1, 2)) - &(&m[0][1] * &minor(1, 2, 0, 2))) + &(&m[0][2] * &minor(1, 2, 0, 1));
        assert_eq!(jacobian_det(&g).unwrap(), expected);
    }

    #[test]
    fn exact_division() {
        let (a, b) = (z(2, 0), z(2, 1));
        let p = &(&a + &b) * &(&a - &b);
        assert_eq!(exact_div(&p, &(&a + &b)).unwrap(), Some(&a - &b));
        assert_eq!(exact_div(&p, &a).unwrap(), None);
    }

    #[test]
    fn origin_value_and_degree() {
        let p = &(&z(2, 0) * &z(2, 1)).scale(&int(4)) + &Polynomial::constant(2, int(3));
        assert_eq!(p.eval_at_origin(), int(3));
        assert_eq!((&z(2, 0) * &z(2, 1)).eval_at_origin(), int(0));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Polynomial::zero(2).degree(), None);
        assert!(check_degree(&p, 1).is_err());
    }
}
