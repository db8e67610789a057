//! Fixed-width human tables for every command.
//!
//! Formatting is frozen: responses print with 4 decimals, confidences with
//! 1, angles in degrees with 2. Identical inputs give byte-identical output,
//! which the golden-file tests rely on. The optional 360-step quantization
//! only touches this presentation layer; JSON output always carries the
//! continuous values.

use fnn_core::consensus::{BoostedOutcome, ExpertNetwork, IdealResult};
use fnn_core::memorial::MemorialStats;
use fnn_core::neuron::quantize_response_360;
use fnn_core::race::{Deadline, Decision, GroupResponse, RaceOutcome};
use std::fmt::Write;

/// One displayable response: degrees, fraction and confidence, optionally
/// snapped to whole degrees.
struct Shown {
    degrees: f64,
    response: f64,
    confidence: f64,
}

fn shown(response: f64, quantize: bool) -> Shown {
    let response = if quantize { quantize_response_360(response) } else { response };
    Shown { degrees: response * 360.0, response, confidence: (1.0 - response) * 100.0 }
}

pub fn deadline_label(deadline: &Deadline) -> String {
    match deadline {
        Deadline::Time(t) => format!("time {t:.4}"),
        Deadline::Distance(d) => format!("distance {d:.4}"),
    }
}

fn id_width<'a>(ids: impl Iterator<Item = &'a str>) -> usize {
    ids.map(str::len).chain(std::iter::once("node".len())).max().unwrap_or(4)
}

pub fn outcome_table(outcome: &RaceOutcome, quantize: bool) -> String {
    let w = id_width(outcome.nodes.iter().map(|n| n.id.as_str()));
    let mut text = String::new();
    let _ = writeln!(text, "deadline: {}", deadline_label(&outcome.deadline));
    let _ = writeln!(
        text,
        "{:<w$}  {:>9}  {:>8}  {:>7}  {:>9}  {:>8}  {:>7}",
        "node", "motor_deg", "m_resp", "m_conf", "sens_deg", "s_resp", "s_conf"
    );
    for node in &outcome.nodes {
        let motor = shown(node.response_motor, quantize);
        let sensory = shown(node.response_sensory, quantize);
        let _ = writeln!(
            text,
            "{:<w$}  {:>9.2}  {:>8.4}  {:>7.1}  {:>9.2}  {:>8.4}  {:>7.1}",
            node.id.as_str(),
            motor.degrees,
            motor.response,
            motor.confidence,
            sensory.degrees,
            sensory.response,
            sensory.confidence,
        );
    }
    text.push_str(&group_line("group motor", &outcome.group_motor, quantize));
    text.push_str(&group_line("group sensory", &outcome.group_sensory, quantize));
    let decision = match outcome.prescription.decision {
        Decision::Yes => "YES",
        Decision::No => "NO",
    };
    let confidence = if quantize {
        let group = shown(outcome.group_motor.group_response, true);
        match outcome.prescription.decision {
            Decision::Yes => group.confidence,
            Decision::No => 100.0 - group.confidence,
        }
    } else {
        outcome.prescription.confidence
    };
    let _ = writeln!(text, "prescription: {decision} ({confidence:.1}%)");
    text
}

fn group_line(label: &str, group: &GroupResponse, quantize: bool) -> String {
    let s = shown(group.group_response, quantize);
    let mean_deg = if quantize { s.degrees } else { group.mean_wrapped_phase.to_degrees() };
    format!(
        "{label:<14} mean_deg {:>9.2}  response {:>8.4}  confidence {:>7.1}  n {}\n",
        mean_deg, s.response, s.confidence, group.n
    )
}

pub fn expert_table(expert: &ExpertNetwork) -> String {
    let w = id_width(expert.members.iter().map(|m| m.id.as_str()));
    let mut text = String::new();
    let _ = writeln!(
        text,
        "expert network: core {}, deadline {}, m {}",
        expert.core.label(),
        deadline_label(&expert.deadline),
        expert.m
    );
    let _ = writeln!(text, "rank  {:<w$}  {:>8}  {:>7}", "node", "response", "conf");
    for (rank, member) in expert.members.iter().enumerate() {
        let _ = writeln!(
            text,
            "{:<4}  {:<w$}  {:>8.4}  {:>7.1}",
            rank + 1,
            member.id.as_str(),
            member.response,
            member.confidence
        );
    }
    text
}

pub fn boost_table(outcome: &BoostedOutcome) -> String {
    let w = id_width(outcome.plans.iter().map(|p| p.id.as_str()));
    let best = &outcome.expert.members[0];
    let mut text = String::new();
    let _ = writeln!(
        text,
        "boost reward: core {}, deadline {}, m {}",
        outcome.expert.core.label(),
        deadline_label(&outcome.expert.deadline),
        outcome.expert.m
    );
    let _ = writeln!(
        text,
        "best performer: {} (response {:.4}, confidence {:.1}%)",
        best.id, best.response, best.confidence
    );
    for plan in &outcome.plans {
        let _ = writeln!(
            text,
            "{:<w$}  β={:.4}, +{:.2}%, boosted velocity {:.4}",
            plan.id.as_str(),
            plan.boost_factor,
            plan.boost_percent,
            plan.boosted_velocity
        );
    }
    let _ = writeln!(
        text,
        "pre-boost  group response {:.4} (confidence {:.1}%)",
        outcome.pre_group.group_response, outcome.pre_group.group_confidence
    );
    let _ = writeln!(
        text,
        "post-boost group response {:.4} (confidence {:.1}%)",
        outcome.post_group.group_response, outcome.post_group.group_confidence
    );
    text
}

pub fn ideal_table(ideal: &IdealResult) -> String {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "ideal: core {}, deadline {}",
        ideal.core.label(),
        deadline_label(&ideal.deadline)
    );
    let _ = writeln!(text, "best node: {}", ideal.best_node);
    let _ = writeln!(
        text,
        "best response: {:.4} (confidence {:.1}%)",
        ideal.best_response, ideal.best_confidence
    );
    match ideal.last_truth_instant {
        Some(instant) => {
            let _ = writeln!(text, "last truth instant: {instant:.4}");
        }
        None => text.push_str("last truth instant: none\n"),
    }
    text
}

pub fn stats_table(stats: &MemorialStats) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "records: {}", stats.record_count);
    for (request_type, count) in &stats.per_type {
        let _ = writeln!(text, "  {request_type}: {count}");
    }
    match stats.mean_loss {
        Some(loss) => {
            let _ = writeln!(text, "mean loss: {loss:.4}");
        }
        None => text.push_str("mean loss: n/a\n"),
    }
    text
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("engine types serialize");
    text.push('\n');
    text
}
