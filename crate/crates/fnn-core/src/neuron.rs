//! Mirror-neuron programming and per-core kinematics.
//!
//! A user profile (two 1..5 grades and an age) programs one mirror neuron:
//! the reaction grade sets the motor-core radius, the emotion grade the
//! sensory-core radius, the intention wheel is a fixed multiple of the motor
//! core and the forward velocity falls off inversely with age. Each core
//! rolls without slipping, so its angle after time `t` is `v·t / r`; the
//! wrapped fraction of a revolution is the fuzzy binary response (0 = true,
//! toward 1 = false) and the confidence score is its complement in percent.

use crate::curves::{sample_curve, CurveError, CurveSpec, Polyline};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NeuronError {
    #[error("{field} must be a grade between 1 and 5 (got {value})")]
    InvalidScore { field: &'static str, value: u8 },
    #[error("age must be positive (got {0})")]
    InvalidAge(f64),
    #[error("{field} is out of range (got {value})")]
    InvalidConfig { field: &'static str, value: f64 },
    #[error("{field} must be positive and finite (got {value})")]
    NonPositiveParameter { field: &'static str, value: f64 },
    #[error("time must be non-negative (got {0})")]
    NegativeTime(f64),
    #[error("binary response must lie in [0, 1) (got {0})")]
    ResponseOutOfRange(f64),
}

/// The raw inputs that program a neuron.
///
/// `reaction_score` grades cognitive reaction time and `emotion_score` the
/// valence-arousal state, both on a 1..5 scale; `age` is in years.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UserProfile {
    pub reaction_score: u8,
    pub emotion_score: u8,
    pub age: f64,
}

impl UserProfile {
    pub fn new(reaction_score: u8, emotion_score: u8, age: f64) -> Self {
        Self { reaction_score, emotion_score, age }
    }
}

/// Tunable constants of the profile-to-neuron mapping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeuronConfig {
    /// Intention-wheel multiple of the motor radius; at least 1, usually 3.
    pub intention_coefficient: f64,
    /// Numerator of the velocity law `v = velocity_scale / age`.
    pub velocity_scale: f64,
    /// Sensory velocity as a multiple of the motor velocity.
    pub sensory_velocity_ratio: f64,
}

impl Default for NeuronConfig {
    fn default() -> Self {
        Self { intention_coefficient: 3.0, velocity_scale: 100.0, sensory_velocity_ratio: 1.0 }
    }
}

impl NeuronConfig {
    fn validate(&self) -> Result<(), NeuronError> {
        let checks = [
            ("intention_coefficient", self.intention_coefficient, 1.0),
            ("velocity_scale", self.velocity_scale, f64::MIN_POSITIVE),
            ("sensory_velocity_ratio", self.sensory_velocity_ratio, f64::MIN_POSITIVE),
        ];
        for (field, value, min) in checks {
            if !value.is_finite() || value < min {
                return Err(NeuronError::InvalidConfig { field, value });
            }
        }
        Ok(())
    }
}

/// Opaque node identifier; ordering is the deterministic tie-breaker
/// everywhere ranking happens.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreKind {
    Motor,
    Sensory,
}

impl CoreKind {
    pub fn label(&self) -> &'static str {
        match self {
            CoreKind::Motor => "motor",
            CoreKind::Sensory => "sensory",
        }
    }
}

/// A programmed artificial mirror neuron.
///
/// All lengths are in the same abstract length unit, velocities in length
/// per second. The intention radius always equals the intention coefficient
/// times the motor radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MirrorNeuron {
    pub id: NodeId,
    /// Motor-core radius, set by the reaction grade.
    pub motor_radius: f64,
    /// Sensory-core radius, set by the emotion grade.
    pub sensory_radius: f64,
    /// Intention-wheel radius.
    pub intention_radius: f64,
    /// Forward (feed-forward) velocity of the motor core.
    pub motor_velocity: f64,
    /// Velocity of the sensory core.
    pub sensory_velocity: f64,
}

impl MirrorNeuron {
    /// Build a neuron from explicit parameters; everything must be positive
    /// and finite.
    pub fn new(
        id: NodeId,
        motor_radius: f64,
        sensory_radius: f64,
        intention_radius: f64,
        motor_velocity: f64,
        sensory_velocity: f64,
    ) -> Result<Self, NeuronError> {
        let checks = [
            ("motor_radius", motor_radius),
            ("sensory_radius", sensory_radius),
            ("intention_radius", intention_radius),
            ("motor_velocity", motor_velocity),
            ("sensory_velocity", sensory_velocity),
        ];
        for (field, value) in checks {
            if !(value > 0.0) || !value.is_finite() {
                return Err(NeuronError::NonPositiveParameter { field, value });
            }
        }
        Ok(Self { id, motor_radius, sensory_radius, intention_radius, motor_velocity, sensory_velocity })
    }

    pub fn core_radius(&self, core: CoreKind) -> f64 {
        match core {
            CoreKind::Motor => self.motor_radius,
            CoreKind::Sensory => self.sensory_radius,
        }
    }

    pub fn core_velocity(&self, core: CoreKind) -> f64 {
        match core {
            CoreKind::Motor => self.motor_velocity,
            CoreKind::Sensory => self.sensory_velocity,
        }
    }

    /// Copy of this neuron with one core's velocity replaced.
    pub fn with_core_velocity(&self, core: CoreKind, velocity: f64) -> Self {
        let mut node = self.clone();
        match core {
            CoreKind::Motor => node.motor_velocity = velocity,
            CoreKind::Sensory => node.sensory_velocity = velocity,
        }
        node
    }

    /// Total rolled angle `v·t / r` of one core after `t` seconds.
    pub fn unwrapped_phase(&self, core: CoreKind, t: f64) -> Result<f64, NeuronError> {
        if !(t >= 0.0) {
            return Err(NeuronError::NegativeTime(t));
        }
        Ok(phase(self.core_velocity(core), self.core_radius(core), t))
    }

    /// Fuzzy binary response of one core at time `t`: the wrapped phase as a
    /// fraction of a revolution, in `[0, 1)`. 0 reads as true, toward 1 as
    /// false.
    pub fn binary_response(&self, core: CoreKind, t: f64) -> Result<f64, NeuronError> {
        Ok(response_from_phase(self.unwrapped_phase(core, t)?))
    }

    /// The three curve traces of this neuron in its local frame: the
    /// intention hypocycloid, the motor cycloid and the sensory epicycloid
    /// (a cardioid) mirrored below the axis.
    pub fn traces(&self, theta_start: f64, theta_end: f64, n: usize) -> Result<NeuronTraces, CurveError> {
        let intention_spec =
            CurveSpec::hypocycloid(self.motor_radius, self.intention_radius / self.motor_radius)?;
        let motor_spec = CurveSpec::cycloid(self.motor_radius)?;
        let sensory_spec = CurveSpec::epicycloid(self.sensory_radius, 1.0)?;

        let intention = sample_curve(&intention_spec, theta_start, theta_end, n)?;
        let motor = sample_curve(&motor_spec, theta_start, theta_end, n)?;
        let mut sensory = sample_curve(&sensory_spec, theta_start, theta_end, n)?;
        for p in &mut sensory.points {
            p.y = -p.y;
        }
        Ok(NeuronTraces { intention, motor, sensory })
    }
}

/// The three sampled component curves of one neuron.
#[derive(Debug, Clone, PartialEq)]
pub struct NeuronTraces {
    pub intention: Polyline,
    pub motor: Polyline,
    pub sensory: Polyline,
}

pub(crate) fn phase(velocity: f64, radius: f64, t: f64) -> f64 {
    velocity * t / radius
}

pub(crate) fn wrap_phase(unwrapped: f64) -> f64 {
    unwrapped.rem_euclid(TAU)
}

pub(crate) fn response_from_phase(unwrapped: f64) -> f64 {
    wrap_phase(unwrapped) / TAU
}

/// Program a mirror neuron from a profile: radii from the grades, intention
/// radius as a multiple of the motor radius, motor velocity inversely
/// proportional to age and sensory velocity as a fixed ratio of it.
pub fn build_neuron(
    profile: &UserProfile,
    config: &NeuronConfig,
    id: NodeId,
) -> Result<MirrorNeuron, NeuronError> {
    if !(1..=5).contains(&profile.reaction_score) {
        return Err(NeuronError::InvalidScore { field: "reaction_score", value: profile.reaction_score });
    }
    if !(1..=5).contains(&profile.emotion_score) {
        return Err(NeuronError::InvalidScore { field: "emotion_score", value: profile.emotion_score });
    }
    if !(profile.age > 0.0) || !profile.age.is_finite() {
        return Err(NeuronError::InvalidAge(profile.age));
    }
    config.validate()?;

    let motor_radius = f64::from(profile.reaction_score);
    let sensory_radius = f64::from(profile.emotion_score);
    let motor_velocity = config.velocity_scale / profile.age;
    MirrorNeuron::new(
        id,
        motor_radius,
        sensory_radius,
        config.intention_coefficient * motor_radius,
        motor_velocity,
        config.sensory_velocity_ratio * motor_velocity,
    )
}

/// Confidence score in percent for a binary response: `(1 − response)·100`,
/// so 0 (true) maps to 100% and responses near 1 (false) approach 0%.
pub fn confidence_score(response: f64) -> Result<f64, NeuronError> {
    if !(0.0..1.0).contains(&response) {
        return Err(NeuronError::ResponseOutOfRange(response));
    }
    Ok((1.0 - response) * 100.0)
}

/// Snap a response to the nearest of the 360 whole-degree truth values.
/// Presentation helper only; the engine keeps responses continuous.
pub fn quantize_response_360(response: f64) -> f64 {
    ((response * 360.0).round() % 360.0) / 360.0
}
