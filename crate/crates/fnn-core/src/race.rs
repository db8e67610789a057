//! Deadline racing of a neuron pool.
//!
//! Every node in a pool rolls forward until a preset deadline, given either
//! as elapsed time or as traveled distance. The wrapped rolling angle of
//! each core at the deadline fixes the node's state; the group response is
//! the arithmetic mean of the member responses and the network prescription
//! follows the motor (executive) group response.
//!
//! Under a time deadline the motor phase is `v_m·t / r1` and the sensory
//! phase `v_s·t / r2`. Under a distance deadline the rolled arc equals the
//! traveled distance, so both phases are `d / r` and independent of the
//! velocities.

use crate::neuron::{self, CoreKind, MirrorNeuron, NodeId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RaceError {
    #[error("race pool must contain at least one node")]
    EmptyPool,
    #[error("duplicate node id {0} in race pool")]
    DuplicateNodeId(NodeId),
    #[error("request index {index} is out of bounds for a pool of {len} nodes")]
    InvalidRequestIndex { index: usize, len: usize },
    #[error("deadline magnitude must be positive (got {0})")]
    NonPositiveDeadline(f64),
    #[error("correct decision must be 0 or 1 (got {0})")]
    InvalidLabel(u8),
    #[error("predicted response must lie in [0, 1) (got {0})")]
    InvalidPrediction(f64),
}

/// Race terminator: either elapsed seconds or traveled length units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Deadline {
    Time(f64),
    Distance(f64),
}

impl Deadline {
    pub fn magnitude(&self) -> f64 {
        match self {
            Deadline::Time(t) => *t,
            Deadline::Distance(d) => *d,
        }
    }

    pub fn is_time(&self) -> bool {
        matches!(self, Deadline::Time(_))
    }

    pub fn validate(&self) -> Result<(), RaceError> {
        let m = self.magnitude();
        if !(m > 0.0) || !m.is_finite() {
            return Err(RaceError::NonPositiveDeadline(m));
        }
        Ok(())
    }
}

/// A nonempty ordered pool of competing neurons: the memorial nodes plus the
/// request node at `request_index`. Node ids are unique.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPool")]
pub struct RacePool {
    nodes: Vec<MirrorNeuron>,
    request_index: usize,
}

#[derive(Deserialize)]
struct RawPool {
    nodes: Vec<MirrorNeuron>,
    request_index: usize,
}

impl TryFrom<RawPool> for RacePool {
    type Error = RaceError;

    fn try_from(raw: RawPool) -> Result<Self, RaceError> {
        RacePool::new(raw.nodes, raw.request_index)
    }
}

impl RacePool {
    pub fn new(nodes: Vec<MirrorNeuron>, request_index: usize) -> Result<Self, RaceError> {
        if nodes.is_empty() {
            return Err(RaceError::EmptyPool);
        }
        let mut seen = BTreeSet::new();
        for node in &nodes {
            if !seen.insert(&node.id) {
                return Err(RaceError::DuplicateNodeId(node.id.clone()));
            }
        }
        if request_index >= nodes.len() {
            return Err(RaceError::InvalidRequestIndex { index: request_index, len: nodes.len() });
        }
        Ok(Self { nodes, request_index })
    }

    pub fn nodes(&self) -> &[MirrorNeuron] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn request_index(&self) -> usize {
        self.request_index
    }

    pub fn request_node(&self) -> &MirrorNeuron {
        &self.nodes[self.request_index]
    }

    pub fn node_by_id(&self, id: &NodeId) -> Option<&MirrorNeuron> {
        self.nodes.iter().find(|n| &n.id == id)
    }
}

/// State of one node at the deadline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeState {
    pub id: NodeId,
    /// Seconds raced until the deadline.
    pub elapsed: f64,
    /// Forward distance traveled, driven by the motor velocity.
    pub distance: f64,
    pub wrapped_phase_motor: f64,
    pub wrapped_phase_sensory: f64,
    pub response_motor: f64,
    pub response_sensory: f64,
    pub confidence_motor: f64,
    pub confidence_sensory: f64,
}

/// Group consensus of one core over the whole pool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupResponse {
    pub core: CoreKind,
    /// Arithmetic mean of the wrapped phases, radians.
    pub mean_wrapped_phase: f64,
    /// Arithmetic mean of the member binary responses.
    pub group_response: f64,
    pub group_confidence: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
}

/// The network's output: yes/no with a confidence percentage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prescription {
    pub decision: Decision,
    pub confidence: f64,
}

/// Everything a race produces: per-node states, both group consensuses and
/// the prescription.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RaceOutcome {
    pub deadline: Deadline,
    pub nodes: Vec<NodeState>,
    pub group_motor: GroupResponse,
    pub group_sensory: GroupResponse,
    pub prescription: Prescription,
}

/// Unwrapped rolling angle of one core at the deadline. Time deadlines give
/// `v·t / r`; distance deadlines give `d / r` regardless of velocity.
pub fn deadline_phase(node: &MirrorNeuron, core: CoreKind, deadline: &Deadline) -> f64 {
    let r = node.core_radius(core);
    match deadline {
        Deadline::Time(t) => neuron::phase(node.core_velocity(core), r, *t),
        Deadline::Distance(d) => d / r,
    }
}

/// Elapsed seconds and forward distance for one node at the deadline.
pub fn elapsed_and_distance(node: &MirrorNeuron, deadline: &Deadline) -> (f64, f64) {
    match deadline {
        Deadline::Time(t) => (*t, node.motor_velocity * t),
        Deadline::Distance(d) => (d / node.motor_velocity, *d),
    }
}

/// Full per-node state at the deadline.
pub fn node_state_at_deadline(node: &MirrorNeuron, deadline: &Deadline) -> NodeState {
    let (elapsed, distance) = elapsed_and_distance(node, deadline);
    let wrapped_motor = deadline_phase(node, CoreKind::Motor, deadline).rem_euclid(TAU);
    let wrapped_sensory = deadline_phase(node, CoreKind::Sensory, deadline).rem_euclid(TAU);
    let response_motor = wrapped_motor / TAU;
    let response_sensory = wrapped_sensory / TAU;
    NodeState {
        id: node.id.clone(),
        elapsed,
        distance,
        wrapped_phase_motor: wrapped_motor,
        wrapped_phase_sensory: wrapped_sensory,
        response_motor,
        response_sensory,
        confidence_motor: (1.0 - response_motor) * 100.0,
        confidence_sensory: (1.0 - response_sensory) * 100.0,
    }
}

/// Group consensus of one core: mean response, its confidence and the mean
/// wrapped phase over all pool members.
pub fn group_response(pool: &RacePool, deadline: &Deadline, core: CoreKind) -> GroupResponse {
    let mut phase_sum = 0.0;
    let mut response_sum = 0.0;
    for node in pool.nodes() {
        let wrapped = deadline_phase(node, core, deadline).rem_euclid(TAU);
        phase_sum += wrapped;
        response_sum += wrapped / TAU;
    }
    let n = pool.len();
    let group = response_sum / n as f64;
    GroupResponse {
        core,
        mean_wrapped_phase: phase_sum / n as f64,
        group_response: group,
        group_confidence: (1.0 - group) * 100.0,
        n,
    }
}

/// Race the pool to the deadline and derive the prescription from the motor
/// group response: yes below 0.5, no at or above it.
pub fn run_race(pool: &RacePool, deadline: &Deadline) -> RaceOutcome {
    let nodes = pool.nodes().iter().map(|n| node_state_at_deadline(n, deadline)).collect();
    let group_motor = group_response(pool, deadline, CoreKind::Motor);
    let group_sensory = group_response(pool, deadline, CoreKind::Sensory);
    let prescription = if group_motor.group_response < 0.5 {
        Prescription { decision: Decision::Yes, confidence: group_motor.group_confidence }
    } else {
        Prescription { decision: Decision::No, confidence: 100.0 - group_motor.group_confidence }
    };
    RaceOutcome { deadline: *deadline, nodes, group_motor, group_sensory, prescription }
}

/// Absolute difference between a predicted binary response and the correct
/// 0/1 decision.
pub fn decision_loss(predicted: f64, correct: u8) -> Result<f64, RaceError> {
    if correct > 1 {
        return Err(RaceError::InvalidLabel(correct));
    }
    if !(0.0..1.0).contains(&predicted) {
        return Err(RaceError::InvalidPrediction(predicted));
    }
    Ok((predicted - f64::from(correct)).abs())
}
