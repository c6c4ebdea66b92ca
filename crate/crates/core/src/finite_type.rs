//! Finite-type order of `(h_1, ..., h_N)` at the origin, a lower estimate of
//! the D'Angelo type from monomial curves, and the relations tying them.

use crate::error::{Error, Result};
use crate::groebner::{is_zero_dimensional, Ideal};
use crate::kohn::SpecialDomain;
use crate::poly::{monomials_of_degree, Polynomial, DEFAULT_DEGREE_CAP};
use crate::rational::{self, rat, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeConfig {
    pub p_cap: u32,
    pub exponent_cap: u32,
    /// Seeded rational coefficient vectors tried per curve support, besides all ones.
    pub curve_samples: usize,
    pub seed: u64,
    pub degree_cap: u32,
}

impl Default for TypeConfig {
    fn default() -> Self {
        TypeConfig { p_cap: 32, exponent_cap: 6, curve_samples: 2, seed: 0, degree_cap: DEFAULT_DEGREE_CAP }
    }
}

/// `phi(t) = (c_1 t^{a_1}, ..., c_n t^{a_n})`; exponents of zero coordinates
/// are irrelevant and stored as zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialCurve {
    #[serde(with = "rational::serde_vec")]
    pub coefficients: Vec<Rational>,
    pub exponents: Vec<u32>,
}

impl MonomialCurve {
    /// Vanishing order of the curve itself: the least exponent of a nonzero
    /// coordinate.
    pub fn order(&self) -> Option<u32> {
        self.coefficients
            .iter()
            .zip(&self.exponents)
            .filter(|(c, _)| !c.is_zero())
            .map(|(_, &a)| a)
            .min()
    }

    /// Vanishing order at `t = 0` of `h o phi`, `None` if identically zero.
    pub fn compose_order(&self, h: &Polynomial) -> Option<u32> {
        let mut by_power: BTreeMap<u32, Rational> = BTreeMap::new();
        'terms: for (m, c) in h.terms() {
            let mut value = c.clone();
            let mut power = 0;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if self.coefficients[i].is_zero() {
                    continue 'terms;
                }
                value *= num_traits::pow(self.coefficients[i].clone(), e as usize);
                power += e * self.exponents[i];
            }
            *by_power.entry(power).or_insert_with(Rational::zero) += value;
        }
        by_power.into_iter().find(|(_, c)| !c.is_zero()).map(|(k, _)| k)
    }
}

/// Normalized touching order `2 min_j ord(h_j o phi) / ord(phi)`, or `None`
/// when every `h_j` vanishes identically on the curve.
pub fn touching_order(h: &[Polynomial], curve: &MonomialCurve) -> Result<Option<Rational>> {
    let Some(ord_phi) = curve.order() else {
        return Err(Error::InvalidArgument("the all-zero curve has no touching order".into()));
    };
    if ord_phi == 0 {
        return Err(Error::InvalidArgument("curve must pass through the origin".into()));
    }
    let min = h.iter().filter_map(|p| curve.compose_order(p)).min();
    Ok(min.map(|o| Rational::new(BigInt::from(2 * o), BigInt::from(ord_phi))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TypeEstimate {
    /// Best normalized touching order found; a lower bound for the type.
    Finite {
        #[serde(with = "rational::serde_str")]
        value: Rational,
        curve: MonomialCurve,
    },
    /// Every `h_j` vanishes on this curve, so the type is infinite.
    Infinite { curve: MonomialCurve },
}

impl TypeEstimate {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            TypeEstimate::Finite { value, .. } => Some(value),
            TypeEstimate::Infinite { .. } => None,
        }
    }
}

/// Smallest `p <= p_cap` with every monomial of degree `p` in `(h)`.
///
/// Local membership at the origin is replaced by polynomial membership, which
/// agrees with it when `(h)` is zero-dimensional; otherwise the answer is
/// `None`.
pub fn finite_type_order(domain: &SpecialDomain, p_cap: u32, degree_cap: u32) -> Result<Option<u32>> {
    if p_cap == 0 {
        return Err(Error::InvalidArgument("p_cap must be at least 1".into()));
    }
    let ideal = Ideal::new(domain.nvars(), domain.h().to_vec())?.with_degree_cap(degree_cap);
    if !is_zero_dimensional(&ideal)? {
        return Ok(None);
    }
    for p in 1..=p_cap {
        let mut all = true;
        for m in monomials_of_degree(domain.nvars(), p) {
            if !ideal.contains(&Polynomial::term(m, Rational::one()))? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

fn gcd_all(v: &[u32]) -> u32 {
    v.iter().fold(0, |g, &x| g.gcd(&x))
}

/// Lower estimate of the D'Angelo type: the largest normalized touching order
/// over monomial curves with exponents in `1..=exponent_cap`.
///
/// For every nonempty coordinate support the coefficients are all ones plus
/// `curve_samples` seeded rational vectors; the sample vectors depend only on
/// the support so enlarging `exponent_cap` only adds curves.
pub fn dangelo_type_estimate(domain: &SpecialDomain, config: &TypeConfig) -> Result<TypeEstimate> {
    if config.exponent_cap == 0 {
        return Err(Error::InvalidArgument("exponent_cap must be at least 1".into()));
    }
    let n = domain.nvars();
    let mut best: Option<(Rational, MonomialCurve)> = None;
    for mask in 1u64..(1u64 << n) {
        let support: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ mask.wrapping_mul(0xA24B_AED4_963E_E407));
        let mut coefficient_sets = vec![vec![Rational::one(); support.len()]];
        for _ in 0..config.curve_samples {
            coefficient_sets.push(
                (0..support.len())
                    .map(|_| {
                        let num: i64 = rng.random_range(1..=9) * if rng.random_bool(0.5) { 1 } else { -1 };
                        rat(num, rng.random_range(1..=5))
                    })
                    .collect(),
            );
        }
        let mut exps = vec![1u32; support.len()];
        loop {
            if gcd_all(&exps) == 1 {
                for coeffs in &coefficient_sets {
                    let mut curve = MonomialCurve { coefficients: vec![Rational::zero(); n], exponents: vec![0; n] };
                    for (k, &i) in support.iter().enumerate() {
                        curve.coefficients[i] = coeffs[k].clone();
                        curve.exponents[i] = exps[k];
                    }
                    match touching_order(domain.h(), &curve)? {
                        None => return Ok(TypeEstimate::Infinite { curve }),
                        Some(v) => {
                            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                                best = Some((v, curve));
                            }
                        }
                    }
                }
            }
            // Odometer over 1..=exponent_cap.
            let mut k = 0;
            while k < exps.len() && exps[k] == config.exponent_cap {
                exps[k] = 1;
                k += 1;
            }
            if k == exps.len() {
                break;
            }
            exps[k] += 1;
        }
    }
    let (value, curve) = best.expect("at least one curve is examined");
    Ok(TypeEstimate::Finite { value, curve })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeReport {
    /// Finite-type order, `None` meaning not of finite type up to `p_cap`.
    pub p: Option<u32>,
    pub p_cap: u32,
    pub status: String,
    pub zero_dim: bool,
    pub type_estimate: TypeEstimate,
    /// Integers `q` with `t/2 <= q <= t` and `p <= q <= (n + 2) p`.
    pub q_candidates: Vec<u32>,
    pub inequality_checks: Vec<RelationCheck>,
}

impl TypeReport {
    pub fn all_relations_hold(&self) -> bool {
        self.p.is_some() && self.inequality_checks.iter().all(|c| c.holds)
    }
}

/// Checks that some integer `q` satisfies both `q <= t <= 2q` and
/// `p <= q <= (n + 2) p` for the estimated type `t`. Returns the admissible
/// `q` and the individual checks; with `p` unknown nothing is checked.
pub fn check_relations(n: usize, p: Option<u32>, estimate: &TypeEstimate) -> (Vec<u32>, Vec<RelationCheck>) {
    let Some(p) = p else {
        return (Vec::new(), Vec::new());
    };
    let mut checks = Vec::new();
    let Some(t) = estimate.value() else {
        checks.push(RelationCheck { name: "type estimate finite".into(), holds: false });
        return (Vec::new(), checks);
    };
    checks.push(RelationCheck { name: "type estimate >= 2".into(), holds: *t >= rat(2, 1) });
    let two = Rational::from_integer(2.into());
    let lo = (t / &two).ceil().to_integer().to_u32().unwrap_or(u32::MAX);
    let hi = t.floor().to_integer().to_u32().unwrap_or(u32::MAX);
    checks.push(RelationCheck { name: "some integer q with q <= t <= 2q".into(), holds: lo <= hi });
    let skoda_hi = p.saturating_mul(n as u32 + 2);
    let q: Vec<u32> = (lo.max(p)..=hi.min(skoda_hi)).collect();
    checks.push(RelationCheck { name: "such q also satisfies p <= q <= (n+2)p".into(), holds: !q.is_empty() });
    (q, checks)
}

pub fn type_report(domain: &SpecialDomain, config: &TypeConfig) -> Result<TypeReport> {
    let ideal = Ideal::new(domain.nvars(), domain.h().to_vec())?.with_degree_cap(config.degree_cap);
    let zero_dim = is_zero_dimensional(&ideal)?;
    let p = finite_type_order(domain, config.p_cap, config.degree_cap)?;
    let type_estimate = dangelo_type_estimate(domain, config)?;
    let (q_candidates, inequality_checks) = check_relations(domain.nvars(), p, &type_estimate);
    let status = match p {
        Some(_) => "finite type".to_string(),
        None => format!("not finite type up to cap {}", config.p_cap),
    };
    Ok(TypeReport { p, p_cap: config.p_cap, status, zero_dim, type_estimate, q_candidates, inequality_checks })
}
