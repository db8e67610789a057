//! Deterministic engine for a functional network of racing mirror neurons.
//!
//! A mirror neuron is programmed from a user profile (reaction grade,
//! emotion grade, age) and carries three rolling-curve components: an
//! intention wheel tracing a hypocycloid, a motor core tracing a cycloid and
//! a sensory core tracing an epicycloid. Pools of neurons race toward a time
//! or distance deadline; the wrapped rolling angle of each core at the
//! deadline yields a fuzzy binary response in `[0, 1)` (0 = true), a
//! confidence score, group consensus values and finally a yes/no
//! prescription.
//!
//! Modules:
//! - [`curves`]: exact and sampled geometry of the three curve families.
//! - [`neuron`]: profile-to-neuron programming and per-core kinematics.
//! - [`race`]: deadline racing, group aggregation, prescriptions, loss.
//! - [`consensus`]: expert selection, velocity boosting and ideal-outcome
//!   prediction in motor and sensory variants.
//! - [`memorial`]: append-only persistence of race records with replay.
//!
//! Everything is pure and deterministic: identical inputs give identical
//! outputs, bit for bit, which the persistence layer relies on for replay.

pub mod consensus;
pub mod curves;
pub mod memorial;
pub mod neuron;
pub mod race;

pub use consensus::{BoostPlan, BoostedOutcome, ConsensusError, ExpertMember, ExpertNetwork, IdealResult};
pub use curves::{CurveError, CurveFamily, CurveSpec, Point2D, Polyline};
pub use memorial::{Memorial, MemorialError, MemorialStats, RaceRecord, SCHEMA_VERSION};
pub use neuron::{
    build_neuron, confidence_score, CoreKind, MirrorNeuron, NeuronConfig, NeuronError, NeuronTraces, NodeId,
    UserProfile,
};
pub use race::{Deadline, Decision, GroupResponse, NodeState, Prescription, RaceError, RaceOutcome, RacePool};
