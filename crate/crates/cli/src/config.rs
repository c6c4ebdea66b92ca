//! Layered run configuration: built-in defaults, then `SUBELLIPTIC_<KEY>`
//! environment variables, then the domain file's `config` block, then
//! command-line flags.

use crate::dsl::{DomainConfig, CONFIG_KEYS};
use serde::{Deserialize, Serialize};
use subelliptic_core::finite_type::TypeConfig;
use subelliptic_core::KohnConfig;

pub const ENV_PREFIX: &str = "SUBELLIPTIC_";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub max_level: Option<u32>,
    pub degree_cap: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub kohn: KohnConfig,
    pub finite_type: TypeConfig,
}

pub fn env_var_name(key: &str) -> String {
    format!("{ENV_PREFIX}{}", key.to_ascii_uppercase())
}

fn narrow(key: &str, v: u64) -> Result<u32, String> {
    u32::try_from(v).map_err(|_| format!("`{key}` = {v} is out of range"))
}

fn apply(config: &mut RunConfig, key: &str, v: u64) -> Result<(), String> {
    let (k, t) = (&mut config.kohn, &mut config.finite_type);
    match key {
        "max_level" => k.max_level = narrow(key, v)?,
        "m_max" => k.m_max = narrow(key, v)?,
        "random_combos" => k.random_combos = v as usize,
        "seed" => {
            k.seed = v;
            t.seed = v;
        }
        "generator_cap" => k.generator_cap = v as usize,
        "degree_cap" => {
            k.degree_cap = narrow(key, v)?;
            t.degree_cap = k.degree_cap;
        }
        "p_cap" => t.p_cap = narrow(key, v)?,
        "exponent_cap" => t.exponent_cap = narrow(key, v)?,
        "curve_samples" => t.curve_samples = v as usize,
        _ => return Err(format!("unknown config key `{key}`")),
    }
    Ok(())
}

pub fn resolve(
    file: &DomainConfig,
    env: &dyn Fn(&str) -> Option<String>,
    overrides: &Overrides,
) -> Result<RunConfig, String> {
    let mut config = RunConfig { kohn: KohnConfig::default(), finite_type: TypeConfig::default() };
    for key in CONFIG_KEYS {
        let name = env_var_name(key);
        if let Some(raw) = env(&name) {
            let v = raw.trim().parse::<u64>().map_err(|_| format!("{name}={raw:?} is not a nonnegative integer"))?;
            apply(&mut config, key, v)?;
        }
    }
    for (key, v) in file.entries() {
        apply(&mut config, key, *v)?;
    }
    if let Some(seed) = overrides.seed {
        apply(&mut config, "seed", seed)?;
    }
    if let Some(l) = overrides.max_level {
        apply(&mut config, "max_level", l.into())?;
    }
    if let Some(c) = overrides.degree_cap {
        apply(&mut config, "degree_cap", c.into())?;
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let mut file = DomainConfig::default();
        file.set("max_level", 3).unwrap();
        file.set("p_cap", 9).unwrap();
        let env = |k: &str| match k {
            "SUBELLIPTIC_MAX_LEVEL" => Some("6".to_string()),
            "SUBELLIPTIC_SEED" => Some("11".to_string()),
            _ => None,
        };
        let c = resolve(&file, &env, &Overrides::default()).unwrap();
        assert_eq!((c.kohn.max_level, c.kohn.seed, c.finite_type.p_cap), (3, 11, 9));
        let c = resolve(&file, &env, &Overrides { seed: Some(2), max_level: Some(1), degree_cap: Some(20) }).unwrap();
        assert_eq!((c.kohn.max_level, c.kohn.seed, c.finite_type.seed, c.finite_type.degree_cap), (1, 2, 2, 20));
    }

    #[test]
    fn bad_environment_values() {
        let env = |k: &str| (k == "SUBELLIPTIC_M_MAX").then(|| "many".to_string());
        assert!(resolve(&DomainConfig::default(), &env, &Overrides::default()).is_err());
    }
}
