//! Scenario files: a strict JSON schema describing the racing pool, the
//! deadline and the run options.
//!
//! Unknown keys are rejected, every engine invariant is checked here with a
//! message naming the offending field, and defaults (intention coefficient
//! 3, velocity scale 100, sensory ratio 1, 3 experts) are applied before the
//! engine sees the pool.

use fnn_core::{build_neuron, Deadline, MirrorNeuron, NeuronConfig, RacePool, UserProfile};
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("scenario parse error: {0}")]
    Parse(String),
    #[error("invalid scenario: {0}")]
    Invalid(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    profiles: Vec<ProfileEntry>,
    #[serde(default)]
    config: ConfigSection,
    deadline: Deadline,
    #[serde(default = "default_request_type")]
    request_type: String,
    #[serde(default = "default_experts")]
    experts: usize,
    #[serde(default)]
    request_index: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileEntry {
    reaction_score: u8,
    emotion_score: u8,
    age: f64,
    #[serde(default)]
    id: Option<String>,
    #[serde(default)]
    motor_radius: Option<f64>,
    #[serde(default)]
    sensory_radius: Option<f64>,
    #[serde(default)]
    motor_velocity: Option<f64>,
    #[serde(default)]
    sensory_velocity: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct ConfigSection {
    intention_coefficient: f64,
    velocity_scale: f64,
    sensory_velocity_ratio: f64,
    quantize_360: bool,
}

impl Default for ConfigSection {
    fn default() -> Self {
        let config = NeuronConfig::default();
        Self {
            intention_coefficient: config.intention_coefficient,
            velocity_scale: config.velocity_scale,
            sensory_velocity_ratio: config.sensory_velocity_ratio,
            quantize_360: false,
        }
    }
}

fn default_request_type() -> String {
    "binary".to_owned()
}

fn default_experts() -> usize {
    3
}

/// A parsed and fully validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub pool: RacePool,
    pub deadline: Deadline,
    pub request_type: String,
    pub experts: usize,
    pub quantize_360: bool,
    pub config: NeuronConfig,
}

pub fn parse_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ScenarioError::Read { path: path.display().to_string(), source })?;
    let file: ScenarioFile =
        serde_json::from_str(&text).map_err(|e| ScenarioError::Parse(e.to_string()))?;

    if file.profiles.is_empty() {
        return Err(ScenarioError::Invalid("profiles: need at least one profile".into()));
    }
    file.deadline
        .validate()
        .map_err(|e| ScenarioError::Invalid(format!("deadline: {e}")))?;
    if file.experts < 1 {
        return Err(ScenarioError::Invalid("experts: must be at least 1".into()));
    }

    let config = NeuronConfig {
        intention_coefficient: file.config.intention_coefficient,
        velocity_scale: file.config.velocity_scale,
        sensory_velocity_ratio: file.config.sensory_velocity_ratio,
    };

    let mut nodes = Vec::with_capacity(file.profiles.len());
    for (i, entry) in file.profiles.iter().enumerate() {
        nodes.push(build_node(entry, &config, i)?);
    }

    let pool = RacePool::new(nodes, file.request_index)
        .map_err(|e| ScenarioError::Invalid(e.to_string()))?;
    Ok(Scenario {
        pool,
        deadline: file.deadline,
        request_type: file.request_type,
        experts: file.experts,
        quantize_360: file.config.quantize_360,
        config,
    })
}

/// Build one pool node: profile mapping first, then any explicit overrides.
/// The intention radius follows the effective motor radius and the sensory
/// velocity follows the effective motor velocity unless overridden itself.
fn build_node(
    entry: &ProfileEntry,
    config: &NeuronConfig,
    index: usize,
) -> Result<MirrorNeuron, ScenarioError> {
    let field = |name: &str| format!("profiles[{index}].{name}");
    for (name, value) in [
        ("motor_radius", entry.motor_radius),
        ("sensory_radius", entry.sensory_radius),
        ("motor_velocity", entry.motor_velocity),
        ("sensory_velocity", entry.sensory_velocity),
    ] {
        if let Some(v) = value {
            if !(v > 0.0) || !v.is_finite() {
                return Err(ScenarioError::Invalid(format!("{}: must be positive (got {v})", field(name))));
            }
        }
    }

    let profile = UserProfile::new(entry.reaction_score, entry.emotion_score, entry.age);
    let id = entry.id.clone().unwrap_or_else(|| format!("n{}", index + 1));
    let base = build_neuron(&profile, config, id.as_str().into())
        .map_err(|e| ScenarioError::Invalid(format!("profiles[{index}]: {e}")))?;

    let motor_radius = entry.motor_radius.unwrap_or(base.motor_radius);
    let sensory_radius = entry.sensory_radius.unwrap_or(base.sensory_radius);
    let motor_velocity = entry.motor_velocity.unwrap_or(base.motor_velocity);
    let sensory_velocity = entry
        .sensory_velocity
        .unwrap_or(config.sensory_velocity_ratio * motor_velocity);
    MirrorNeuron::new(
        base.id,
        motor_radius,
        sensory_radius,
        config.intention_coefficient * motor_radius,
        motor_velocity,
        sensory_velocity,
    )
    .map_err(|e| ScenarioError::Invalid(format!("profiles[{index}]: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_scenario(json: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(json.as_bytes()).unwrap();
        file
    }

    #[test]
    fn minimal_scenario_gets_defaults() {
        let file = write_scenario(
            r#"{"profiles": [{"reaction_score": 3, "emotion_score": 4, "age": 50}],
                "deadline": {"time": 2.0}}"#,
        );
        let scenario = parse_scenario(file.path()).unwrap();
        assert_eq!(scenario.experts, 3);
        assert_eq!(scenario.request_type, "binary");
        assert!(!scenario.quantize_360);
        let node = &scenario.pool.nodes()[0];
        assert_eq!(node.id.as_str(), "n1");
        assert_eq!(node.motor_radius, 3.0);
        assert_eq!(node.intention_radius, 9.0);
        assert_eq!(node.motor_velocity, 2.0);
    }

    #[test]
    fn zero_age_is_named_in_the_error() {
        let file = write_scenario(
            r#"{"profiles": [{"reaction_score": 3, "emotion_score": 4, "age": 0}],
                "deadline": {"time": 2.0}}"#,
        );
        let err = parse_scenario(file.path()).unwrap_err();
        assert!(matches!(&err, ScenarioError::Invalid(msg) if msg.contains("age")), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let file = write_scenario(
            r#"{"profiles": [{"reaction_score": 3, "emotion_score": 4, "age": 50}],
                "deadline": {"time": 2.0}, "surprise": 1}"#,
        );
        let err = parse_scenario(file.path()).unwrap_err();
        assert!(matches!(&err, ScenarioError::Parse(msg) if msg.contains("surprise")), "{err}");
    }

    #[test]
    fn overrides_recompute_derived_parameters() {
        let file = write_scenario(
            r#"{"profiles": [
                  {"reaction_score": 1, "emotion_score": 1, "age": 100,
                   "id": "fast", "motor_radius": 2.5, "motor_velocity": 4.0}],
                "config": {"sensory_velocity_ratio": 0.5},
                "deadline": {"distance": 7.0}}"#,
        );
        let scenario = parse_scenario(file.path()).unwrap();
        let node = &scenario.pool.nodes()[0];
        assert_eq!(node.id.as_str(), "fast");
        assert_eq!(node.motor_radius, 2.5);
        assert_eq!(node.intention_radius, 7.5);
        assert_eq!(node.motor_velocity, 4.0);
        assert_eq!(node.sensory_velocity, 2.0);
    }

    #[test]
    fn negative_override_is_rejected() {
        let file = write_scenario(
            r#"{"profiles": [{"reaction_score": 1, "emotion_score": 1, "age": 50,
                              "sensory_velocity": -1.0}],
                "deadline": {"time": 1.0}}"#,
        );
        let err = parse_scenario(file.path()).unwrap_err();
        assert!(
            matches!(&err, ScenarioError::Invalid(msg) if msg.contains("sensory_velocity")),
            "{err}"
        );
    }

    #[test]
    fn bad_deadline_and_duplicate_ids_are_rejected() {
        let file = write_scenario(
            r#"{"profiles": [{"reaction_score": 1, "emotion_score": 1, "age": 50}],
                "deadline": {"time": 0.0}}"#,
        );
        assert!(matches!(parse_scenario(file.path()), Err(ScenarioError::Invalid(_))));

        let dup = write_scenario(
            r#"{"profiles": [
                  {"reaction_score": 1, "emotion_score": 1, "age": 50, "id": "same"},
                  {"reaction_score": 2, "emotion_score": 2, "age": 40, "id": "same"}],
                "deadline": {"time": 1.0}}"#,
        );
        let err = parse_scenario(dup.path()).unwrap_err();
        assert!(matches!(&err, ScenarioError::Invalid(msg) if msg.contains("same")), "{err}");
    }
}
