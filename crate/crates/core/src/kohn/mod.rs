//! Kohn's multiplier-ideal procedure specialized to special domains
//! `Re w + sum_j |h_j(z)|^2 < 0` at the origin.
//!
//! Level one collects the Jacobian determinants of `n`-tuples of combinations
//! of the `h_j`, each with subellipticity order `1/8`. Every level then takes
//! a radical, assigns each radical element `f` the order
//! `gamma(f^m) / m` for the least `m` with `f^m` in the level ideal, and feeds
//! the radical generators back into mixed Jacobians. A run stops at the first
//! level whose radical contains an element nonvanishing at the origin.

mod certificate;
mod engine;
mod replay;

pub use certificate::{Certificate, DerivationTree, Outcome};
pub use engine::{advance_level, build_j1, radical_step, run, Engine};
pub use replay::{replay, verify, ReplayError};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{self, rat, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// The `h_1, ..., h_N` of a special domain, polynomials in `z_1..z_n`
/// vanishing at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialDomain {
    nvars: usize,
    h: Vec<Polynomial>,
}

impl SpecialDomain {
    pub fn new(nvars: usize, h: Vec<Polynomial>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidDomain("at least one variable is required".into()));
        }
        if h.is_empty() {
            return Err(Error::InvalidDomain("at least one h_j is required".into()));
        }
        for (j, p) in h.iter().enumerate() {
            if p.nvars() != nvars {
                return Err(Error::VariableCount { expected: nvars, found: p.nvars() });
            }
            if !p.eval_at_origin().is_zero() {
                return Err(Error::InvalidDomain(format!("h{} must vanish at the origin", j + 1)));
            }
        }
        Ok(SpecialDomain { nvars, h })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn h(&self) -> &[Polynomial] {
        &self.h
    }

    /// SHA-256 of the canonical JSON encoding, hex encoded.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("domain serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

/// Caps and combination strategy for a run. Every field is echoed into the
/// certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KohnConfig {
    pub max_level: u32,
    pub m_max: u32,
    /// Seeded pseudo-random combinations of the `h_j` tried per slot pattern,
    /// on top of all subsets.
    pub random_combos: usize,
    pub seed: u64,
    pub generator_cap: usize,
    pub degree_cap: u32,
}

impl Default for KohnConfig {
    fn default() -> Self {
        KohnConfig {
            max_level: 8,
            m_max: 64,
            random_combos: 4,
            seed: 0,
            generator_cap: 256,
            degree_cap: crate::poly::DEFAULT_DEGREE_CAP,
        }
    }
}

/// How `J~` was obtained at a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    FullRadical,
    /// The radical was out of reach; `J~` holds individually certified members.
    CertifiedMembers,
}

/// How a generator was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Derivation {
    /// Jacobian determinant of `k` combinations of the `h_j` (coefficient rows
    /// of length `N`) followed by `n - k` generators of the previous `J~`.
    JacobianMix {
        k: usize,
        h_combos: Vec<Combo>,
        radical_children: Vec<usize>,
    },
    /// Generator `child` of the previous level's `J~`, order unchanged.
    Inherited { child: usize },
    /// Element of `J~` whose `m`-th power lies in the ideal of the support
    /// generators of `J`, each of order at least `source_order`.
    RadicalRoot {
        m: u32,
        #[serde(with = "rational::serde_str")]
        source_order: Rational,
        support: Vec<usize>,
    },
}

/// Coefficients of one linear combination of `h_1..h_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Combo(#[serde(with = "rational::serde_vec")] pub Vec<Rational>);

/// A polynomial with its subellipticity order and how it was derived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedGenerator {
    pub poly: Polynomial,
    #[serde(with = "rational::serde_str")]
    pub order: Rational,
    pub derivation: Derivation,
}

/// `J_nu` and `J~_nu` at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KohnState {
    pub level: u32,
    pub mode: Mode,
    pub j: Vec<OrderedGenerator>,
    pub j_tilde: Vec<OrderedGenerator>,
    pub warnings: Vec<String>,
}

impl KohnState {
    pub fn j_polys(&self) -> Vec<Polynomial> {
        self.j.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn j_tilde_polys(&self) -> Vec<Polynomial> {
        self.j_tilde.iter().map(|g| g.poly.clone()).collect()
    }

    /// Indices of `J~` generators that do not vanish at the origin.
    pub fn unit_witnesses(&self) -> Vec<usize> {
        (0..self.j_tilde.len()).filter(|&i| !self.j_tilde[i].poly.eval_at_origin().is_zero()).collect()
    }
}

/// The base order `1/8`.
pub fn base_order() -> Rational {
    rat(1, 8)
}

/// Order assigned to a Jacobian with `k` slots of `h`-combinations and
/// radical children of the given orders (`n - k` of them).
pub fn mixture_order(k: usize, n: usize, child_orders: &[Rational]) -> Rational {
    let half_min = child_orders.iter().min().map(|o| o / Rational::from_integer(2.into()));
    match (k, half_min) {
        (k, _) if k == n => base_order(),
        (0, Some(h)) => h,
        (_, Some(h)) => h.min(base_order()),
        (_, None) => base_order(),
    }
}

/// Canonical representative of a generator: monic, so scalar multiples agree.
pub fn normalize(p: &Polynomial) -> Polynomial {
    p.monic()
}
