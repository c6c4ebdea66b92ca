use super::{Derivation, KohnConfig, KohnState, OrderedGenerator, SpecialDomain};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    /// A `J~` generator nonzero at the origin was found at `level`.
    Subelliptic {
        #[serde(with = "rational::serde_str")]
        epsilon: Rational,
        level: u32,
        witness_index: usize,
        witness: OrderedGenerator,
    },
    /// No unit multiplier within the configured caps.
    Exhausted { levels_run: u32 },
}

/// Replayable record of a run: the outcome, the configuration, and every
/// level's generators with their derivations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub domain_digest: String,
    pub config: KohnConfig,
    pub outcome: Outcome,
    pub history: Vec<KohnState>,
    pub history_digest: String,
}

pub(crate) fn history_digest(history: &[KohnState]) -> String {
    let bytes = serde_json::to_vec(history).expect("history serializes");
    hex::encode(Sha256::digest(bytes))
}

impl Certificate {
    pub(crate) fn new(domain: &SpecialDomain, config: KohnConfig, outcome: Outcome, history: Vec<KohnState>) -> Self {
        Certificate {
            version: CERTIFICATE_VERSION,
            domain_digest: domain.digest(),
            config,
            history_digest: history_digest(&history),
            outcome,
            history,
        }
    }

    pub fn is_subelliptic(&self) -> bool {
        matches!(self.outcome, Outcome::Subelliptic { .. })
    }

    pub fn epsilon(&self) -> Option<&Rational> {
        match &self.outcome {
            Outcome::Subelliptic { epsilon, .. } => Some(epsilon),
            Outcome::Exhausted { .. } => None,
        }
    }

    pub fn level(&self) -> Option<u32> {
        match &self.outcome {
            Outcome::Subelliptic { level, .. } => Some(*level),
            Outcome::Exhausted { .. } => None,
        }
    }

    /// Every warning recorded along the run, in level order.
    pub fn warnings(&self) -> Vec<&str> {
        self.history.iter().flat_map(|s| s.warnings.iter().map(String::as_str)).collect()
    }

    /// Expands the derivation of the witness (if any) into a tree.
    pub fn witness_tree(&self) -> Option<DerivationTree> {
        match &self.outcome {
            Outcome::Subelliptic { level, witness_index, .. } => {
                Some(self.tree(*level, Side::JTilde, *witness_index))
            }
            Outcome::Exhausted { .. } => None,
        }
    }

    fn tree(&self, level: u32, side: Side, index: usize) -> DerivationTree {
        let state = &self.history[level as usize - 1];
        let g = match side {
            Side::J => &state.j[index],
            Side::JTilde => &state.j_tilde[index],
        };
        let (rule, children) = match &g.derivation {
            Derivation::JacobianMix { k, radical_children, .. } => (
                format!("jacobian k={k}"),
                radical_children.iter().map(|&c| self.tree(level - 1, Side::JTilde, c)).collect(),
            ),
            Derivation::Inherited { child } => ("inherited".to_string(), vec![self.tree(level - 1, Side::JTilde, *child)]),
            Derivation::RadicalRoot { m, support, .. } => {
                (format!("radical m={m}"), support.iter().map(|&c| self.tree(level, Side::J, c)).collect())
            }
        };
        DerivationTree { level, in_radical: side == Side::JTilde, poly: g.poly.clone(), order: g.order.clone(), rule, children }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    J,
    JTilde,
}

/// A generator with the generators it was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTree {
    pub level: u32,
    /// True for a `J~` node, false for a `J` node.
    pub in_radical: bool,
    pub poly: Polynomial,
    pub order: Rational,
    pub rule: String,
    pub children: Vec<DerivationTree>,
}

impl DerivationTree {
    /// Pre-order walk.
    pub fn nodes(&self) -> Vec<&DerivationTree> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }

    /// Indented rendering, one node per line.
    pub fn render(&self, names: Option<&[String]>) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0, names);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize, names: Option<&[String]>) {
        let poly = match names {
            Some(n) => self.poly.display_with(n).to_string(),
            None => self.poly.to_string(),
        };
        let set = if self.in_radical { "J~" } else { "J" };
        out.push_str(&format!(
            "{}{set}_{} {poly} (order {}, {})\n",
            "  ".repeat(depth),
            self.level,
            rational::to_string(&self.order),
            self.rule
        ));
        for c in &self.children {
            c.render_into(out, depth + 1, names);
        }
    }
}
