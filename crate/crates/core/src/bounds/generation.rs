use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, Monomial};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// A graded ring spanned by monomials, truncated at degree `M`:
/// `pieces[m]` lists the monomials of degree `m` (with `pieces[0] = {1}`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedMonomialRing {
    nvars: usize,
    pieces: Vec<Vec<Monomial>>,
}

fn canonical(mut piece: Vec<Monomial>) -> Vec<Monomial> {
    piece.sort_by(|a, b| a.exponents().cmp(b.exponents()));
    piece.dedup();
    piece
}

impl GradedMonomialRing {
    pub fn new(nvars: usize, pieces: Vec<Vec<Monomial>>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidArgument("a graded ring needs a degree-0 piece".into()));
        }
        for m in pieces.iter().flatten() {
            if m.nvars() != nvars {
                return Err(Error::VariableCount { expected: nvars, found: m.nvars() });
            }
        }
        let pieces: Vec<_> = pieces.into_iter().map(canonical).collect();
        if pieces[0] != vec![Monomial::one(nvars)] {
            return Err(Error::InvalidArgument("the degree-0 piece must be {1}".into()));
        }
        Ok(Self { nvars, pieces })
    }

    /// `C[t^g : g in gens]` graded by the exponent of `t`.
    pub fn numerical_semigroup(gens: &[u32], truncation: usize) -> Result<Self> {
        if gens.is_empty() || gens.contains(&0) {
            return Err(Error::InvalidArgument("semigroup generators must be positive".into()));
        }
        let mut member = vec![false; truncation + 1];
        member[0] = true;
        for m in 1..=truncation {
            member[m] = gens.iter().any(|&g| (g as usize) <= m && member[m - g as usize]);
        }
        let pieces = member
            .iter()
            .enumerate()
            .map(|(m, &inside)| if inside { vec![Monomial::new(vec![m as u32])] } else { Vec::new() })
            .collect();
        Self::new(1, pieces)
    }

    /// `C[z_1, ..., z_n]` with the standard grading.
    pub fn polynomial_ring(nvars: usize, truncation: usize) -> Result<Self> {
        let pieces = (0..=truncation).map(|m| monomials_of_degree(nvars, m as u32)).collect();
        Self::new(nvars, pieces)
    }

    /// The `d`-th Veronese subring, regraded so that `z^a` with `|a| = d m` has degree `m`.
    pub fn veronese(nvars: usize, d: u32, truncation: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("Veronese degree must be positive".into()));
        }
        let pieces = (0..=truncation).map(|m| monomials_of_degree(nvars, d * m as u32)).collect();
        Self::new(nvars, pieces)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn truncation(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, m: usize) -> &[Monomial] {
        &self.pieces[m]
    }

    /// Checks `R_a R_b ⊆ R_{a+b}` for all `a + b <= M`.
    fn check_closed(&self, sets: &[HashSet<Monomial>]) -> Result<()> {
        let top = self.truncation();
        for a in 1..=top {
            for b in a..=top - a {
                for x in &self.pieces[a] {
                    for y in &self.pieces[b] {
                        if !sets[a + b].contains(&x.mul(y)) {
                            return Err(Error::NotClosed { degree: a + b });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `monomial = factor * rest` with `deg factor = factor_degree <= D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub degree: usize,
    pub monomial: Monomial,
    pub factor_degree: usize,
    pub factor: Monomial,
    pub rest: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationCertificate {
    /// Least `D` such that `R_{<=D}` generates every piece up to the truncation.
    pub degree: usize,
    pub truncation: usize,
    /// One witness for every monomial of degree in `(D, M]`.
    pub factorizations: Vec<Factorization>,
}

/// Finds the least `D` with `R_{<=D}` generating `R_{<=M}`; the truncation
/// must reach `2D` for the answer to be trusted.
pub fn generation_degree(ring: &GradedMonomialRing) -> Result<GenerationCertificate> {
    let top = ring.truncation();
    let sets: Vec<HashSet<Monomial>> = ring.pieces.iter().map(|p| p.iter().cloned().collect()).collect();
    ring.check_closed(&sets)?;

    // A monomial of degree m > D is generated iff it is f * r with f in R_d
    // (1 <= d <= D) and r generated in degree m - d. Generated sets only grow
    // with D, so the first D that covers everything is the least one.
    for d in 0..=top {
        let mut generated: Vec<HashSet<Monomial>> = sets[..=d.min(top)].to_vec();
        let mut witnesses = Vec::new();
        let mut complete = true;
        for m in d + 1..=top {
            let mut here = HashSet::new();
            for monomial in &ring.pieces[m] {
                let witness = (1..=d).find_map(|fd| {
                    ring.pieces[fd].iter().find_map(|f| {
                        if !f.divides(monomial) {
                            return None;
                        }
                        let rest = f.quotient_of(monomial);
                        generated[m - fd].contains(&rest).then(|| (fd, f.clone(), rest))
                    })
                });
                if let Some((factor_degree, factor, rest)) = witness {
                    here.insert(monomial.clone());
                    witnesses.push(Factorization { degree: m, monomial: monomial.clone(), factor_degree, factor, rest });
                } else {
                    complete = false;
                    break;
                }
            }
            if !complete {
                break;
            }
            generated.push(here);
        }
        if complete {
            if top < 2 * d {
                return Err(Error::TruncationInsufficient { degree: d, truncation: top, needed: 2 * d });
            }
            return Ok(GenerationCertificate { degree: d, truncation: top, factorizations: witnesses });
        }
    }
    unreachable!("D = M always generates")
}

/// `(n + 2) a + b - 1`.
pub fn generation_bound(n: u64, a: u64, b: u64) -> Result<u64> {
    if a <= 1 {
        return Err(Error::InvalidArgument("a must exceed 1".into()));
    }
    Ok((n + 2) * a + b - 1)
}

/// Whether the computed generation degree respects `(n + 2) a + b - 1`.
pub fn generation_bound_check(ring: &GradedMonomialRing, n: u64, a: u64, b: u64) -> Result<bool> {
    let bound = generation_bound(n, a, b)?;
    Ok(generation_degree(ring)?.degree as u64 <= bound)
}
