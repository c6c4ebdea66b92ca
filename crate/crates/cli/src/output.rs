//! The `--json` document. Rationals are exact strings; the extension constant
//! is an interval pair of such strings.

use crate::config::RunConfig;
use serde::{Deserialize, Serialize};
use subelliptic_core::bounds::{Factorization, MatsusakaBound, SkodaExponents};
use subelliptic_core::finite_type::TypeReport;
use subelliptic_core::Certificate;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOutput {
    pub format_version: u32,
    pub command: String,
    /// SHA-256 of the canonical form of the domain file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_report: Option<TypeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner: Option<GroebnerOutput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsOutput>,
    /// Wall-clock milliseconds; only with `--timing`, since it breaks byte-identical reruns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunOutput {
    pub fn new(command: &str) -> Self {
        RunOutput {
            format_version: FORMAT_VERSION,
            command: command.to_string(),
            input_digest: None,
            vars: None,
            config: None,
            certificate: None,
            type_report: None,
            groebner: None,
            bounds: None,
            timing_ms: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerOutput {
    pub query: String,
    pub order: String,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundsOutput {
    Matsusaka(MatsusakaBound),
    Ot {
        precision: String,
        /// `[lower, upper]`.
        interval: [String; 2],
        width: String,
        decimal: String,
    },
    Skoda(SkodaExponents),
    Generation {
        model: String,
        degree: usize,
        truncation: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        holds: Option<bool>,
        factorizations: Vec<Factorization>,
    },
}
