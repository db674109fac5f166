//! Experiment configuration: a TOML file, overridden by command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use eja::algebra::Algebra;
use eja::entropy::State;
use eja::{config::parse_algebra, random, Element};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// A named state: literal coefficients or a generator.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum StateSpec {
    Coeffs(Vec<f64>),
    Generated(Generator),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Generator {
    /// z²/tr z² for standard normal z drawn from this seed.
    Random(u64),
    /// Σ w_i ρ_i over previously defined names.
    Mixture(Vec<(f64, String)>),
    MaximallyMixed(bool),
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AxiomsSection {
    pub trials: Option<usize>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EntropySection {
    pub pairs: Option<Vec<(String, String)>>,
    pub s_grid: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SteinSection {
    pub rho: Option<String>,
    pub sigma: Option<String>,
    pub epsilon: Option<f64>,
    pub n: Option<Vec<usize>>,
    /// auto, literal or quantum.
    pub mode: Option<String>,
    pub t_grid: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EmbedSection {
    pub trials: Option<usize>,
    pub s_grid: Option<Vec<f64>>,
    /// Also write the basis images to this JSON file.
    pub export_images: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PinchSection {
    pub rho: Option<String>,
    pub sigma: Option<String>,
}

/// Everything a run depends on. Serialized (after flag overrides) to compute
/// the config hash.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algebra: Option<String>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub budget: Option<usize>,
    pub out: Option<String>,
    pub format: Option<String>,
    pub bits: Option<bool>,
    #[serde(default)]
    pub states: BTreeMap<String, StateSpec>,
    #[serde(default)]
    pub axioms: AxiomsSection,
    #[serde(default)]
    pub entropy: EntropySection,
    #[serde(default)]
    pub stein: SteinSection,
    #[serde(default)]
    pub embed: EmbedSection,
    #[serde(default)]
    pub pinch: PinchSection,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn budget(&self) -> usize {
        self.budget.unwrap_or(eja::DEFAULT_BUDGET)
    }

    pub fn bits(&self) -> bool {
        self.bits.unwrap_or(false)
    }

    pub fn algebra(&self) -> Result<Algebra, CliError> {
        let spec = self
            .algebra
            .as_deref()
            .ok_or_else(|| CliError::Parse("no algebra given (use --algebra or `algebra =` in the config)".into()))?;
        Ok(parse_algebra(spec)?)
    }

    /// sha256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    /// Resolves a state name. `rho` and `sigma` default to random states
    /// seeded from the run seed when not defined.
    pub fn state(&self, alg: &Algebra, name: &str) -> Result<State, CliError> {
        self.resolve(alg, name, 0)
    }

    fn resolve(&self, alg: &Algebra, name: &str, depth: usize) -> Result<State, CliError> {
        if depth > 32 {
            return Err(CliError::Parse(format!("state `{name}` is defined in terms of itself")));
        }
        let spec = match self.states.get(name) {
            Some(s) => s.clone(),
            None => match name {
                "rho" => StateSpec::Generated(Generator::Random(self.seed())),
                "sigma" => StateSpec::Generated(Generator::Random(self.seed().wrapping_add(1))),
                _ => return Err(CliError::Parse(format!("state `{name}` is not defined"))),
            },
        };
        match spec {
            StateSpec::Coeffs(c) => {
                let x = Element::new(alg, c)?;
                State::new(x, 1e-8).map_err(|e| CliError::Invalid(format!("state `{name}`: {e}")))
            }
            StateSpec::Generated(Generator::Random(seed)) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok(State::new_unchecked(random::random_state_element(alg, &mut rng)))
            }
            StateSpec::Generated(Generator::MaximallyMixed(_)) => Ok(State::maximally_mixed(alg)),
            StateSpec::Generated(Generator::Mixture(parts)) => {
                let total: f64 = parts.iter().map(|p| p.0).sum();
                if parts.is_empty() || parts.iter().any(|p| p.0 < 0.0) || (total - 1.0).abs() > 1e-9 {
                    return Err(CliError::Parse(format!(
                        "mixture `{name}` needs nonnegative weights summing to 1"
                    )));
                }
                let states = parts
                    .iter()
                    .map(|(_, n)| self.resolve(alg, n, depth + 1))
                    .collect::<Result<Vec<_>, _>>()?;
                let w: Vec<f64> = parts.iter().map(|p| p.0).collect();
                Ok(State::mixture(&w, &states)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_state_forms() {
        let c: ExperimentConfig = toml::from_str(
            r#"
            algebra = "classical:2"
            [states]
            p = [0.75, 0.25]
            q = { random = 4 }
            m = { mixture = [[0.5, "p"], [0.5, "q"]] }
            u = { maximally_mixed = true }
            "#,
        )
        .unwrap();
        let alg = c.algebra().unwrap();
        assert_eq!(c.state(&alg, "p").unwrap().element().coeffs(), &[0.75, 0.25]);
        let m = c.state(&alg, "m").unwrap();
        assert!((m.element().trace() - 1.0).abs() < 1e-12);
        assert_eq!(c.state(&alg, "u").unwrap().element().coeffs(), &[0.5, 0.5]);
        assert!(c.state(&alg, "nope").is_err());
    }

    #[test]
    fn rejects_unknown_keys_and_cycles() {
        assert!(toml::from_str::<ExperimentConfig>("algebr = \"spin:2\"").is_err());
        let c: ExperimentConfig = toml::from_str(
            r#"
            algebra = "classical:2"
            [states]
            a = { mixture = [[1.0, "a"]] }
            "#,
        )
        .unwrap();
        assert!(c.state(&c.algebra().unwrap(), "a").is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = ExperimentConfig::default();
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        b.seed = Some(3);
        assert_ne!(a.hash(), b.hash());
    }
}
