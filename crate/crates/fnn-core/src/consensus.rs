//! Expert selection, velocity boosting and ideal-outcome prediction.
//!
//! Each method exists in a motor (executive) and sensory (intuitive) variant
//! through the `CoreKind` parameter. Performance is always the fuzzy rule:
//! the lower the binary response at the deadline, the better the node.
//!
//! Boosting finds, per node, the smallest velocity multiplier `β ≥ 1` that
//! makes the node's wrapped phase at a time deadline land exactly on the
//! best performer's wrapped phase. Distance deadlines cannot be boosted at
//! all: the rolled arc there equals the traveled distance, so phase does not
//! depend on velocity.

use crate::neuron::{CoreKind, MirrorNeuron, NodeId};
use crate::race::{self, Deadline, GroupResponse, RacePool};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConsensusError {
    #[error("expert count m must be at least 1 (got {0})")]
    InvalidExpertCount(usize),
    #[error("boost requires a time deadline")]
    DistanceBoostUnsupported,
    #[error("node {0} has zero phase at the deadline; no boost factor exists")]
    ZeroPhase(NodeId),
    #[error("expert network has no members")]
    EmptyExpert,
    #[error("expert member {0} is not part of the pool")]
    UnknownNode(NodeId),
}

/// One ranked member of an expert network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpertMember {
    pub id: NodeId,
    pub response: f64,
    pub confidence: f64,
}

/// The top performers of one core under one deadline, best first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpertNetwork {
    pub core: CoreKind,
    pub deadline: Deadline,
    pub members: Vec<ExpertMember>,
    /// Requested selection size (the member list holds `min(m, pool size)`).
    pub m: usize,
}

/// Velocity plan for one node: multiply its core velocity by `boost_factor`
/// so that its deadline phase matches the best performer's.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostPlan {
    pub id: NodeId,
    pub boost_factor: f64,
    /// `(boost_factor − 1) · 100`.
    pub boost_percent: f64,
    pub boosted_velocity: f64,
}

/// Result of the full boost cycle: experts, plans and the group response
/// before and after applying the boosted velocities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostedOutcome {
    pub expert: ExpertNetwork,
    pub plans: Vec<BoostPlan>,
    pub pre_group: GroupResponse,
    pub post_group: GroupResponse,
}

/// Best achievable outcome under a deadline: the winner's state plus the
/// last instant (time or distance) at which it stood exactly on true.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealResult {
    pub core: CoreKind,
    pub deadline: Deadline,
    pub best_node: NodeId,
    pub best_response: f64,
    pub best_confidence: f64,
    /// Largest `t* ≤ T` (or `d* ≤ D`) where the winner's wrapped phase is 0;
    /// absent before the first completed revolution.
    pub last_truth_instant: Option<f64>,
}

/// Group response of the pool's chosen core under a time deadline.
pub fn time_response(pool: &RacePool, t: f64, core: CoreKind) -> GroupResponse {
    race::group_response(pool, &Deadline::Time(t), core)
}

/// Group response of the pool's chosen core under a distance deadline.
pub fn distance_response(pool: &RacePool, d: f64, core: CoreKind) -> GroupResponse {
    race::group_response(pool, &Deadline::Distance(d), core)
}

/// Select the `min(m, N)` best performers: ascending binary response, ties
/// broken by ascending node id.
pub fn net_compete(
    pool: &RacePool,
    deadline: &Deadline,
    core: CoreKind,
    m: usize,
) -> Result<ExpertNetwork, ConsensusError> {
    if m < 1 {
        return Err(ConsensusError::InvalidExpertCount(m));
    }
    let mut ranked: Vec<ExpertMember> = pool
        .nodes()
        .iter()
        .map(|node| {
            let response = race::deadline_phase(node, core, deadline).rem_euclid(TAU) / TAU;
            ExpertMember { id: node.id.clone(), response, confidence: (1.0 - response) * 100.0 }
        })
        .collect();
    ranked.sort_by(|a, b| a.response.total_cmp(&b.response).then_with(|| a.id.cmp(&b.id)));
    ranked.truncate(m);
    Ok(ExpertNetwork { core, deadline: *deadline, members: ranked, m })
}

/// Compute a boost plan for every pool node so that, re-raced with the
/// boosted velocities, each node's wrapped phase at the time deadline equals
/// the best performer's wrapped phase.
///
/// With the node's unwrapped phase `θ` and the best wrapped phase `φ_b`, the
/// target is the smallest `θ* = 2πn + φ_b ≥ θ` over integers `n ≥ 0`, and
/// `β = θ*/θ`. Velocities are only ever increased.
pub fn boost_request(
    pool: &RacePool,
    deadline: &Deadline,
    core: CoreKind,
    expert: &ExpertNetwork,
) -> Result<Vec<BoostPlan>, ConsensusError> {
    if !deadline.is_time() {
        return Err(ConsensusError::DistanceBoostUnsupported);
    }
    let best = expert.members.first().ok_or(ConsensusError::EmptyExpert)?;
    let best_node =
        pool.node_by_id(&best.id).ok_or_else(|| ConsensusError::UnknownNode(best.id.clone()))?;
    let best_wrapped = race::deadline_phase(best_node, core, deadline).rem_euclid(TAU);

    pool.nodes()
        .iter()
        .map(|node| {
            if node.id == best.id {
                // The reference performer keeps its velocity.
                return Ok(BoostPlan {
                    id: node.id.clone(),
                    boost_factor: 1.0,
                    boost_percent: 0.0,
                    boosted_velocity: node.core_velocity(core),
                });
            }
            let theta = race::deadline_phase(node, core, deadline);
            if theta == 0.0 {
                return Err(ConsensusError::ZeroPhase(node.id.clone()));
            }
            let wrapped = theta.rem_euclid(TAU);
            // Completed revolutions; exact because fmod is exact.
            let turns = ((theta - wrapped) / TAU).round();
            let extra = if best_wrapped >= wrapped { 0.0 } else { 1.0 };
            let target = (turns + extra) * TAU + best_wrapped;
            let beta = (target / theta).max(1.0);
            Ok(BoostPlan {
                id: node.id.clone(),
                boost_factor: beta,
                boost_percent: (beta - 1.0) * 100.0,
                boosted_velocity: beta * node.core_velocity(core),
            })
        })
        .collect()
}

/// Full boost cycle: select experts, plan boosts for every node and re-race
/// the pool with the boosted velocities to anticipate the reward.
pub fn boost_reward(
    pool: &RacePool,
    deadline: &Deadline,
    core: CoreKind,
    m: usize,
) -> Result<BoostedOutcome, ConsensusError> {
    let expert = net_compete(pool, deadline, core, m)?;
    let pre_group = race::group_response(pool, deadline, core);
    let plans = boost_request(pool, deadline, core, &expert)?;
    let boosted: Vec<MirrorNeuron> = pool
        .nodes()
        .iter()
        .zip(&plans)
        .map(|(node, plan)| node.with_core_velocity(core, plan.boosted_velocity))
        .collect();
    let boosted_pool = RacePool::new(boosted, pool.request_index())
        .expect("boost preserves node ids and request index");
    let post_group = race::group_response(&boosted_pool, deadline, core);
    Ok(BoostedOutcome { expert, plans, pre_group, post_group })
}

fn ideal(pool: &RacePool, deadline: Deadline, core: CoreKind) -> Result<IdealResult, ConsensusError> {
    let expert = net_compete(pool, &deadline, core, 1)?;
    let best = expert.members.into_iter().next().ok_or(ConsensusError::EmptyExpert)?;
    let node = pool.node_by_id(&best.id).ok_or_else(|| ConsensusError::UnknownNode(best.id.clone()))?;
    let theta = race::deadline_phase(node, core, &deadline);
    let turns = (theta / TAU).floor();
    let last_truth_instant = if turns >= 1.0 {
        let r = node.core_radius(core);
        Some(match deadline {
            // Clamp keeps the instant inside the race window against rounding.
            Deadline::Time(t) => (turns * TAU * r / node.core_velocity(core)).min(t),
            Deadline::Distance(d) => (turns * TAU * r).min(d),
        })
    } else {
        None
    };
    Ok(IdealResult {
        core,
        deadline,
        best_node: best.id,
        best_response: best.response,
        best_confidence: best.confidence,
        last_truth_instant,
    })
}

/// Best performer's state at a time deadline plus the last instant `t* ≤ T`
/// at which its wrapped phase was exactly zero.
pub fn ideal_time(pool: &RacePool, t: f64, core: CoreKind) -> Result<IdealResult, ConsensusError> {
    ideal(pool, Deadline::Time(t), core)
}

/// Distance analogue of [`ideal_time`]: the last mark `d* ≤ D` with wrapped
/// phase zero.
pub fn ideal_distance(pool: &RacePool, d: f64, core: CoreKind) -> Result<IdealResult, ConsensusError> {
    ideal(pool, Deadline::Distance(d), core)
}
